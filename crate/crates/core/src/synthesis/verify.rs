use std::collections::BTreeMap;
use std::sync::Arc;

use crate::fixtures::all_fixtures;
use crate::oracle::{
    build_catalog, composite_checks, irreducible_morphism_checks, linear_orientations, linear_quiver,
    radical_filtration, Check, LabeledMorphism, VerificationReport,
};
use crate::quiver::{classify_quiver, format_dirs, Dir, WalkEnd};

use super::{
    chain_explore, component_inventory, knit_preinjective, knit_preprojective, repeated_classes, span_member, Chain,
    SynthesisError, ThinFamily, WingCount,
};

/// A chain search on a shipped quiver.
#[derive(Clone, Debug)]
pub struct ChainCase {
    pub fixture: &'static str,
    pub from: WalkEnd,
    pub to: WalkEnd,
    pub steps: usize,
    pub radius: usize,
}

/// The chain searches run by [`verify_fixtures`].
pub fn chain_cases() -> Vec<ChainCase> {
    let up = |v: &str| WalkEnd::Vertex(v.to_string());
    vec![
        ChainCase {
            fixture: "zigzag",
            from: up("0"),
            to: WalkEnd::Tail(0),
            steps: 6,
            radius: 10,
        },
        ChainCase {
            fixture: "example2",
            from: WalkEnd::Tail(1),
            to: WalkEnd::Tail(0),
            steps: 3,
            radius: 6,
        },
        ChainCase {
            fixture: "example2",
            from: up("0"),
            to: WalkEnd::Tail(0),
            steps: 4,
            radius: 6,
        },
    ]
}

pub fn run_chain_case(case: &ChainCase) -> Result<Chain, SynthesisError> {
    let q = crate::fixtures::fixture(case.fixture).expect("shipped fixture");
    let family = ThinFamily::new(&q, case.radius)?;
    let seed = span_member(&q, case.from.clone(), case.to.clone())?;
    chain_explore(&seed, &family, case.steps)
}

/// Checks on the shipped quivers: inventory against the tail words,
/// knitting invariants, and the irreducibility conditions along the
/// linear chains found from thin seeds.
pub fn verify_fixtures() -> Result<VerificationReport, SynthesisError> {
    let mut inventory = Check::new("inventory_consistency");
    let mut mesh = Check::new("knit_mesh_additivity");
    let mut closed = Check::new("knit_closure");
    for (name, q) in all_fixtures() {
        let inv = component_inventory(&q)?;
        let c = classify_quiver(&q)?;
        let eventual: Vec<Option<Dir>> = q.tails().iter().map(|t| t.word.eventual()).collect();
        let sourced = eventual.contains(&Some(Dir::Out));
        let sinked = eventual.contains(&Some(Dir::In));
        let star = eventual.iter().all(Option::is_some);
        let wings_ok = match c.dynkin {
            crate::quiver::DynkinType::AInf => inv.quasi_wings == WingCount::Finite(0),
            crate::quiver::DynkinType::DInf => inv.quasi_wings == WingCount::Finite(1),
            crate::quiver::DynkinType::AInfInf => inv.quasi_wings == WingCount::Finite(2),
            crate::quiver::DynkinType::NotDynkin => inv.quasi_wings == WingCount::Omega,
        };
        let ok = inv.preprojective_full == !sourced
            && inv.preinjective_full == !sinked
            && inv.linear_components == !star
            && wings_ok;
        inventory.record(ok, || format!("{name}: {inv:?}"));
        for comp in [knit_preprojective(&q, 3, 6)?, knit_preinjective(&q, 3, 6)?] {
            let kind = if comp.preinjective {
                "preinjective"
            } else {
                "preprojective"
            };
            let bad = comp.mesh_violations();
            mesh.record(bad.is_empty(), || format!("{name} {kind}: {} meshes", bad.len()));
            closed.record(comp.resolved_part_is_closed(), || format!("{name} {kind}"));
        }
    }

    let mut parts = vec![("fixtures".to_string(), vec![inventory, mesh, closed])];
    for case in chain_cases() {
        let chain = run_chain_case(&case)?;
        let prefix = format!("{} from {}", case.fixture, chain.nodes[chain.seed].label);
        let items: Vec<LabeledMorphism> = chain
            .maps
            .iter()
            .enumerate()
            .map(|(i, f)| LabeledMorphism {
                label: format!("{} -> {}", chain.nodes[i].label, chain.nodes[i + 1].label),
                morphism: f.clone(),
            })
            .collect();
        let composites: Vec<LabeledMorphism> = items
            .windows(2)
            .map(|w| {
                Ok(LabeledMorphism {
                    label: format!("({}) then ({})", w[0].label, w[1].label),
                    morphism: w[1].morphism.compose(&w[0].morphism)?,
                })
            })
            .collect::<Result<_, SynthesisError>>()?;
        let mut checks = irreducible_morphism_checks(&items)?;
        checks.push(composite_checks(&composites)?);
        let mut acyclic = Check::new("chain_acyclic");
        let repeats = repeated_classes(&chain)?;
        acyclic.record(repeats.is_empty(), || {
            let labels: Vec<String> = repeats
                .iter()
                .map(|&(i, j)| format!("{} repeats {}", chain.nodes[j].label, chain.nodes[i].label))
                .collect();
            labels.join("; ")
        });
        checks.push(acyclic);
        parts.push((prefix, checks));
    }
    Ok(VerificationReport::merge(parts))
}

/// Knits every orientation of the line with `n` vertices and compares the
/// result with the brute-force catalog: same vertices by dimension vector,
/// same arrows, nothing unresolved.
pub fn knit_oracle_agreement(n: usize) -> Result<Check, SynthesisError> {
    let mut c = Check::new("knit_matches_oracle");
    for dirs in linear_orientations(n) {
        let q = Arc::new(linear_quiver(&dirs));
        let cat = build_catalog(&q)?;
        let rf = radical_filtration(&cat);
        let comp = knit_preprojective(&q, 2 * n, 1)?;
        let name = format!("A{n}[{}]", format_dirs(&dirs));
        let by_dims: BTreeMap<&[usize], usize> = (0..cat.len()).map(|i| (cat.module(i).dims(), i)).collect();
        let mut seen = vec![false; cat.len()];
        let mut index = Vec::with_capacity(comp.vertices.len());
        let mut unmatched = 0;
        for v in &comp.vertices {
            match v.dims.as_deref().and_then(|d| by_dims.get(d)) {
                Some(&i) if !seen[i] => {
                    seen[i] = true;
                    index.push(i);
                }
                _ => {
                    unmatched += 1;
                    index.push(usize::MAX);
                }
            }
        }
        let covered = seen.iter().all(|&s| s);
        c.record(unmatched == 0 && covered && comp.unresolved_count() == 0, || {
            format!(
                "{name}: {} knitted, {unmatched} unmatched, catalog {}",
                comp.vertices.len(),
                cat.len()
            )
        });
        let mut knitted: Vec<(usize, usize)> = comp.arrows.iter().map(|&(a, b)| (index[a], index[b])).collect();
        knitted.sort_unstable();
        let mut expected: Vec<(usize, usize)> = rf
            .ar_arrows()
            .into_iter()
            .flat_map(|(i, j, m)| std::iter::repeat_n((i, j), m))
            .collect();
        expected.sort_unstable();
        c.record(knitted == expected, || {
            format!(
                "{name}: {} knitted arrows, {} oracle arrows",
                knitted.len(),
                expected.len()
            )
        });
    }
    Ok(c)
}
