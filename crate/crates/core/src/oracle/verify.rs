use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::rep::{is_indecomposable, morphism_parts, presentation_status, RepMorphism};

use super::{
    almost_split_sequence_ending_at, build_catalog, certify_irreducible, certify_irreducible_by_factorization,
    linear_orientations, linear_quiver, radical_filtration, IndecomposableCatalog, OracleError, RadicalFiltration,
};

/// Catalogs up to this size also run the definitional irreducibility test.
pub const FACTORIZATION_LIMIT: usize = 5;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub instances: usize,
    pub violations: Vec<String>,
}

impl Check {
    pub fn new(name: &str) -> Check {
        Check {
            name: name.to_string(),
            ..Check::default()
        }
    }

    /// Counts one instance, keeping a witness when `ok` is false.
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.violations.push(witness());
        }
    }

    /// Adds the counts and violations of `other`, prefixing its witnesses.
    pub fn absorb(&mut self, prefix: &str, other: Check) {
        self.instances += other.instances;
        self.violations
            .extend(other.violations.into_iter().map(|v| format!("{prefix}: {v}")));
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    /// Every violation, prefixed by its check name.
    pub violations: Vec<String>,
}

impl VerificationReport {
    pub fn new(checks: Vec<Check>) -> VerificationReport {
        let violations = checks
            .iter()
            .flat_map(|c| c.violations.iter().map(move |v| format!("{}: {v}", c.name)))
            .collect();
        VerificationReport { checks, violations }
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    /// Merges checks with equal names, keeping first-seen order.
    pub fn merge(reports: Vec<(String, Vec<Check>)>) -> VerificationReport {
        let mut merged: Vec<Check> = Vec::new();
        for (prefix, checks) in reports {
            for c in checks {
                let slot = match merged.iter().position(|m| m.name == c.name) {
                    Some(i) => i,
                    None => {
                        merged.push(Check::new(&c.name));
                        merged.len() - 1
                    }
                };
                merged[slot].absorb(&prefix, c);
            }
        }
        VerificationReport::new(merged)
    }
}

/// A morphism believed irreducible, with a label for reports.
#[derive(Clone, Debug)]
pub struct LabeledMorphism {
    pub label: String,
    pub morphism: RepMorphism,
}

/// Necessary conditions on irreducible morphisms: a mono has a finitely
/// generated cokernel, finitely presented when the source is
/// indecomposable; dually for epis. Composites of irreducibles are checked
/// by [`composite_checks`].
pub fn irreducible_morphism_checks(items: &[LabeledMorphism]) -> Result<Vec<Check>, OracleError> {
    let mut mono = Check::new("irreducible_mono_cokernel");
    let mut epi = Check::new("irreducible_epi_kernel");
    for it in items {
        let f = &it.morphism;
        let parts = morphism_parts(f);
        if f.is_mono() {
            let s = presentation_status(&parts.cokernel)?;
            let need_fp = is_indecomposable(f.source())?;
            mono.record(s.fg && (!need_fp || s.fp), || {
                format!("{}: cokernel fg={} fp={}", it.label, s.fg, s.fp)
            });
        }
        if f.is_epi() {
            let s = presentation_status(&parts.kernel)?;
            let need = is_indecomposable(f.target())?;
            epi.record(s.fcg && (!need || s.fcp), || {
                format!("{}: kernel fcg={} fcp={}", it.label, s.fcg, s.fcp)
            });
        }
    }
    Ok(vec![mono, epi])
}

/// Kernels of composites of irreducibles are fcp and cokernels are fp.
pub fn composite_checks(composites: &[LabeledMorphism]) -> Result<Check, OracleError> {
    let mut c = Check::new("composite_kernel_cokernel");
    for it in composites {
        let parts = morphism_parts(&it.morphism);
        let k = presentation_status(&parts.kernel)?;
        let q = presentation_status(&parts.cokernel)?;
        c.record(k.fcp && q.fp, || {
            format!("{}: kernel fcp={} cokernel fp={}", it.label, k.fcp, q.fp)
        });
    }
    Ok(c)
}

/// Whether the directed graph on `0..n` has a cycle; returns one vertex on
/// a cycle if so.
pub fn find_cycle(n: usize, edges: &[(usize, usize)]) -> Option<usize> {
    let mut indeg = vec![0usize; n];
    for &(_, b) in edges {
        indeg[b] += 1;
    }
    let mut ready: BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut done = vec![false; n];
    while let Some(v) = ready.pop_first() {
        done[v] = true;
        for &(a, b) in edges {
            if a == v {
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    ready.insert(b);
                }
            }
        }
    }
    (0..n).find(|&v| !done[v])
}

/// All checks on one catalog.
pub fn verify_catalog(cat: &IndecomposableCatalog, rf: &RadicalFiltration) -> Result<Vec<Check>, OracleError> {
    let n = cat.line().len();
    let mut complete = Check::new("catalog_complete");
    complete.record(cat.len() == n * (n + 1) / 2, || {
        format!("{} modules for {n} vertices", cat.len())
    });
    for i in 0..cat.len() {
        let ok = is_indecomposable(cat.module(i))?;
        complete.record(ok, || format!("{} is decomposable", cat.label(i)));
        for j in 0..i {
            complete.record(cat.module(i).dims() != cat.module(j).dims(), || {
                format!("{} and {} coincide", cat.label(i), cat.label(j))
            });
        }
    }

    let projectives = cat.projectives()?;
    let injectives = cat.injectives()?;
    let mut ends = Check::new("almost_split_end_terms");
    let mut factor = Check::new("almost_split_factorization");
    let mut mesh = Check::new("mesh_additivity");
    let mut tau = Check::new("tau_bijection");
    let mut tau_image = BTreeSet::new();
    let mut sequences = Vec::new();
    for nidx in 0..cat.len() {
        if projectives.contains(&nidx) {
            continue;
        }
        let seq = almost_split_sequence_ending_at(cat, rf, nidx)?;
        let sn = presentation_status(cat.module(nidx))?;
        let sl = presentation_status(cat.module(seq.left))?;
        ends.record(sn.fp && sl.fcp && seq.is_exact(), || {
            format!(
                "{} -> {}: right fp={} left fcp={}",
                cat.label(seq.left),
                cat.label(nidx),
                sn.fp,
                sl.fcp
            )
        });
        let fails = seq.factorization_failures(cat, rf);
        factor.record(fails.is_empty(), || fails.join("; "));
        mesh.record(seq.mesh_additive(cat), || format!("mesh ending at {}", cat.label(nidx)));
        tau.record(!injectives.contains(&seq.left) && tau_image.insert(seq.left), || {
            format!(
                "tau {} = {} repeats or is injective",
                cat.label(nidx),
                cat.label(seq.left)
            )
        });
        sequences.push(seq);
    }
    let non_injective = (0..cat.len()).filter(|i| !injectives.contains(i)).count();
    tau.record(tau_image.len() == non_injective, || {
        format!("tau hits {} of {non_injective} non-injectives", tau_image.len())
    });

    // Arrow counts read from the sequence ending at the head and from the
    // one starting at the tail must both equal dim rad / rad².
    let mut symmetry = Check::new("arrow_count_symmetry");
    let mult =
        |seq: &super::AlmostSplitSequence, x: usize| seq.middle.iter().find(|&&(k, _)| k == x).map_or(0, |&(_, m)| m);
    for i in 0..cat.len() {
        for j in 0..cat.len() {
            let count = rf.arrow_count(i, j);
            if let Some(seq) = sequences.iter().find(|s| s.right == j) {
                symmetry.record(mult(seq, i) == count, || {
                    format!(
                        "{} -> {}: ending at head {} vs {count}",
                        cat.label(i),
                        cat.label(j),
                        mult(seq, i)
                    )
                });
            }
            if let Some(seq) = sequences.iter().find(|s| s.left == i) {
                symmetry.record(mult(seq, j) == count, || {
                    format!(
                        "{} -> {}: starting at tail {} vs {count}",
                        cat.label(i),
                        cat.label(j),
                        mult(seq, j)
                    )
                });
            }
        }
    }

    let arrows = rf.ar_arrows();
    let mut items = Vec::new();
    let mut certified = Check::new("irreducible_certified");
    for &(i, j, _) in &arrows {
        for f in rf.irreducible_representatives(i, j) {
            let ok = certify_irreducible(cat, rf, &f)?;
            certified.record(ok, || format!("{} -> {}", cat.label(i), cat.label(j)));
            items.push(LabeledMorphism {
                label: format!("{} -> {}", cat.label(i), cat.label(j)),
                morphism: f,
            });
        }
    }
    let mut composites = Vec::new();
    for a in &items {
        for b in &items {
            if a.morphism.target() == b.morphism.source() {
                composites.push(LabeledMorphism {
                    label: format!("({}) then ({})", a.label, b.label),
                    morphism: b.morphism.compose(&a.morphism)?,
                });
            }
        }
    }

    let mut cycle = Check::new("no_irreducible_cycle");
    let edges: Vec<(usize, usize)> = arrows.iter().map(|&(i, j, _)| (i, j)).collect();
    let found = find_cycle(cat.len(), &edges);
    cycle.record(found.is_none(), || {
        format!("cycle through {}", cat.label(found.unwrap_or(0)))
    });

    let mut checks = vec![complete, ends, factor, mesh, tau, symmetry, certified];
    checks.extend(irreducible_morphism_checks(&items)?);
    checks.push(composite_checks(&composites)?);
    checks.push(cycle);

    if n <= FACTORIZATION_LIMIT {
        let mut agree = Check::new("certify_agreement");
        for i in 0..cat.len() {
            for j in 0..cat.len() {
                let mut candidates: Vec<RepMorphism> = cat.hom(i, j).to_vec();
                if i == j {
                    candidates.push(RepMorphism::identity(cat.module(i)));
                }
                for f in candidates {
                    let a = certify_irreducible(cat, rf, &f)?;
                    let b = certify_irreducible_by_factorization(cat, &f)?;
                    agree.record(a == b, || {
                        format!("{} -> {}: rad test {a}, factorization {b}", cat.label(i), cat.label(j))
                    });
                }
            }
        }
        checks.push(agree);
    }
    Ok(checks)
}

/// Runs [`verify_catalog`] on every orientation of the line with `n`
/// vertices.
pub fn verify_oracle(n: usize) -> Result<VerificationReport, OracleError> {
    let mut parts = Vec::new();
    for dirs in linear_orientations(n) {
        let q = Arc::new(linear_quiver(&dirs));
        let cat = build_catalog(&q)?;
        let rf = radical_filtration(&cat);
        parts.push((
            format!("A{n}[{}]", crate::quiver::format_dirs(&dirs)),
            verify_catalog(&cat, &rf)?,
        ));
    }
    Ok(VerificationReport::merge(parts))
}
