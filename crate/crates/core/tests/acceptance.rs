//! The acceptance gate: one PASS/FAIL line per criterion, with timings.
//! Run with `cargo test -p quiverkit --test acceptance`.

mod common;

use std::sync::Arc;
use std::time::{Duration, Instant};

use serde_json::json;

use quiverkit::fixtures::{all_fixtures, fixture};
use quiverkit::oracle::{irreducible_morphism_checks, verify_oracle, LabeledMorphism, VerificationReport};
use quiverkit::quiver::{classify_quiver, Quiver, WalkEnd};
use quiverkit::rep::{hom_dim, is_in_rrep, is_isomorphic};
use quiverkit::synthesis::{
    chain_cases, chain_explore, component_inventory, knit_oracle_agreement, repeated_classes, run_chain_case,
    span_member, Chain, Side, ThinFamily, ThinMember,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// `M_i`: thin, supported from vertex `i` of the line up to the tail end.
/// Negative `i` index the second tail of the two-sided line.
fn m(q: &Arc<Quiver>, i: i64) -> ThinMember {
    let v = match i {
        0 => "0".to_string(),
        i if i > 0 => format!("t0.{i}"),
        i => format!("t1.{}", -i),
    };
    span_member(q, WalkEnd::Vertex(v), WalkEnd::Tail(0)).unwrap()
}

fn classification() -> Outcome {
    // (fixture, star, dynkin, sourced, sinked); None where the table is silent
    type Row = (
        &'static str,
        Option<bool>,
        Option<&'static str>,
        Option<bool>,
        Option<bool>,
    );
    let table: [Row; 7] = [
        ("ray", Some(true), Some("A_inf"), Some(true), Some(false)),
        ("zigzag", Some(false), Some("A_inf"), Some(false), Some(false)),
        ("example2", Some(false), Some("A_inf_inf"), Some(true), Some(false)),
        ("figure1-star", Some(true), None, None, None),
        ("coray", Some(true), Some("A_inf"), Some(false), Some(true)),
        ("dinf", None, Some("D_inf"), None, None),
        ("comb", Some(false), Some("not_dynkin"), None, None),
    ];
    let mut wrong = Vec::new();
    for (name, star, dynkin, sourced, sinked) in table {
        let r = classify_quiver(&fixture(name).unwrap()).unwrap();
        let ok = star.is_none_or(|s| s == r.star)
            && dynkin.is_none_or(|d| d == r.dynkin.as_str())
            && sourced.is_none_or(|s| s == r.sourced)
            && sinked.is_none_or(|s| s == r.sinked);
        if !ok {
            wrong.push(format!("{name}: {:?}", (r.star, r.dynkin, r.sourced, r.sinked)));
        }
    }
    outcome(
        wrong.is_empty(),
        if wrong.is_empty() {
            "7/7 fixtures".to_string()
        } else {
            wrong.join("; ")
        },
    )
}

fn inventory() -> Outcome {
    let row = |pp: bool, pi: bool, wings: serde_json::Value, linear: bool, sourced: bool, sinked: bool| {
        json!({
            "preprojective_full": pp,
            "preinjective_full": pi,
            "quasi_wings": wings,
            "wing_constraints": {"right_infinite": sinked, "left_infinite": sourced, "finite": sourced && sinked},
            "linear_components": linear,
        })
    };
    let table = [
        ("ray", row(false, true, json!(0), false, true, false)),
        ("coray", row(true, false, json!(0), false, false, true)),
        ("zigzag", row(true, true, json!(0), true, false, false)),
        ("example2", row(false, true, json!(2), true, true, false)),
        ("dinf", row(false, true, json!(1), false, true, false)),
        ("figure1-star", row(false, false, json!("omega"), false, true, true)),
        ("comb", row(false, false, json!("omega"), true, true, true)),
    ];
    let mut wrong = Vec::new();
    for (name, expected) in table {
        let got = serde_json::to_value(component_inventory(&fixture(name).unwrap()).unwrap()).unwrap();
        if got != expected {
            wrong.push(format!("{name}: {got}"));
        }
    }
    outcome(
        wrong.is_empty(),
        if wrong.is_empty() {
            "7/7 fixtures".to_string()
        } else {
            wrong.join("; ")
        },
    )
}

fn example1() -> Outcome {
    let q = fixture("zigzag").unwrap();
    let ms: Vec<ThinMember> = (0..=10).map(|i| m(&q, i)).collect();
    let dim = |i: usize, j: usize| hom_dim(&ms[i].rep, &ms[j].rep).unwrap();
    // Neighbours in the chain: M_{i+2} → M_i for even i, M_0 → M_1, M_i → M_{i+2} for odd i.
    let mut adjacent = vec![(0, 1)];
    for i in 0..=8 {
        adjacent.push(if i % 2 == 0 { (i + 2, i) } else { (i, i + 2) });
    }
    let mut problems = Vec::new();
    for &(a, b) in &adjacent {
        if dim(a, b) != 1 || dim(b, a) != 0 {
            problems.push(format!("Hom(M_{a},M_{b})={} back={}", dim(a, b), dim(b, a)));
        }
    }
    let mut non_adjacent_nonzero = Vec::new();
    for i in 0..=10 {
        for j in 0..=10 {
            if i != j && !adjacent.contains(&(i, j)) && !adjacent.contains(&(j, i)) && dim(i, j) != 0 {
                non_adjacent_nonzero.push(format!("M_{i}->M_{j}"));
            }
        }
    }
    let fam = ThinFamily::new(&q, 10).unwrap();
    let chain = chain_explore(&ms[0], &fam, 4).unwrap();
    let want = [
        "t0.4..t0.inf",
        "t0.2..t0.inf",
        "0..t0.inf",
        "t0.1..t0.inf",
        "t0.3..t0.inf",
    ];
    if chain.labels() != want {
        problems.push(format!("chain {:?}", chain.labels()));
    }
    if !non_adjacent_nonzero.is_empty() {
        // Position along ⋯ M_4 → M_2 → M_0 → M_1 → M_3 ⋯
        let pos = |i: usize| if i.is_multiple_of(2) { -(i as i64) } else { i as i64 };
        let path_rule = (0..=10).all(|i| (0..=10).all(|j| dim(i, j) == usize::from(pos(i) <= pos(j))));
        problems.push(format!(
            "{} non-adjacent ordered pairs have dim Hom = 1 (e.g. {}); dim Hom(M_i, M_j) = 1 exactly when a directed chain path runs from M_i to M_j: {path_rule}",
            non_adjacent_nonzero.len(),
            non_adjacent_nonzero[..3.min(non_adjacent_nonzero.len())].join(", ")
        ));
    }
    let pass = problems.is_empty();
    let detail = if pass {
        format!("chain {:?}", chain.labels())
    } else {
        format!("chain and adjacent pairs as expected except: {}", problems.join("; "))
    };
    outcome(pass, detail)
}

fn example2() -> Outcome {
    let q = fixture("example2").unwrap();
    let fam = ThinFamily::new(&q, 6).unwrap();
    let m_inf = span_member(&q, WalkEnd::Tail(1), WalkEnd::Tail(0)).unwrap();
    let mut problems = Vec::new();
    let c = chain_explore(&m_inf, &fam, 3).unwrap();
    if c.labels() != ["t0.4..t0.inf", "t0.2..t0.inf", "t1.inf..t0.inf"] || !c.closed.contains(&Side::Right) {
        problems.push(format!("from M_inf: {:?} closed {:?}", c.labels(), c.closed));
    }
    let c0 = chain_explore(&m(&q, 0), &fam, 4).unwrap();
    if c0.labels()
        != [
            "t1.2..t0.inf",
            "t1.1..t0.inf",
            "0..t0.inf",
            "t0.1..t0.inf",
            "t0.3..t0.inf",
        ]
    {
        problems.push(format!("from M_0: {:?}", c0.labels()));
    }
    let mut named: Vec<ThinMember> = (-6..=6).map(|i| m(&q, i)).collect();
    named.push(m_inf);
    let mut outside = 0;
    for x in &fam.members {
        let is_named = named.iter().any(|n| is_isomorphic(&n.rep, &x.rep).unwrap());
        outside += usize::from(!is_in_rrep(&x.rep));
        if is_in_rrep(&x.rep) == is_named {
            problems.push(format!("{} rrep={} named={is_named}", x.label, is_in_rrep(&x.rep)));
        }
    }
    let pass = problems.is_empty();
    let detail = if pass {
        format!(
            "both chains reproduced; {outside} of {} family members outside rrep, all M_i or M_inf",
            fam.len()
        )
    } else {
        problems.join("; ")
    };
    outcome(pass, detail)
}

fn knit_vs_oracle() -> Outcome {
    let mut bad = Vec::new();
    let mut instances = 0;
    for n in 2..=8 {
        let c = knit_oracle_agreement(n).unwrap();
        instances += c.instances;
        bad.extend(c.violations);
    }
    outcome(
        bad.is_empty(),
        format!("{instances} comparisons, {} violations {:?}", bad.len(), bad),
    )
}

fn report_outcome(r: &VerificationReport, names: &[&str]) -> Outcome {
    let mut instances = 0;
    let mut violations = Vec::new();
    for c in r.checks.iter().filter(|c| names.contains(&c.name.as_str())) {
        instances += c.instances;
        violations.extend(c.violations.iter().map(|v| format!("{}: {v}", c.name)));
    }
    let pass = violations.is_empty() && instances > 0;
    outcome(
        pass,
        format!(
            "{instances} instances, {} violations {:?}",
            violations.len(),
            violations
        ),
    )
}

fn chain_morphisms(chain: &Chain) -> Vec<LabeledMorphism> {
    chain
        .maps
        .iter()
        .enumerate()
        .map(|(i, f)| LabeledMorphism {
            label: format!("{} -> {}", chain.nodes[i].label, chain.nodes[i + 1].label),
            morphism: f.clone(),
        })
        .collect()
}

type Row = (usize, &'static str, Outcome, Duration, Option<Duration>);

fn timed(results: &mut Vec<Row>, n: usize, name: &'static str, budget: Option<Duration>, f: &dyn Fn() -> Outcome) {
    let t = Instant::now();
    let o = f();
    results.push((n, name, o, t.elapsed(), budget));
}

fn main() {
    let mut results: Vec<Row> = Vec::new();
    let secs = |s: u64| Some(Duration::from_secs(s));
    timed(&mut results, 1, "classification battery", secs(1), &classification);
    timed(&mut results, 2, "component inventory", secs(1), &inventory);
    timed(&mut results, 3, "Example 1 reproduction", secs(5), &example1);
    timed(&mut results, 4, "Example 2 reproduction", secs(5), &example2);
    timed(
        &mut results,
        5,
        "knitting equals the oracle, A_2..A_8",
        secs(30),
        &knit_vs_oracle,
    );

    // Criteria 6, 7 and 9 share one oracle run.
    let t = Instant::now();
    let oracle = VerificationReport::merge(
        (2..=8)
            .map(|n| (format!("A{n}"), verify_oracle(n).unwrap().checks))
            .collect(),
    );
    let oracle_time = t.elapsed();
    let chains: Vec<Chain> = chain_cases().iter().map(|c| run_chain_case(c).unwrap()).collect();
    let zigzag = &chains[0];

    results.push((
        6,
        "almost split sequences: end terms and factorization",
        report_outcome(
            &oracle,
            &[
                "almost_split_end_terms",
                "almost_split_factorization",
                "mesh_additivity",
            ],
        ),
        oracle_time,
        None,
    ));
    let t = Instant::now();
    let mut o7 = report_outcome(
        &oracle,
        &[
            "irreducible_mono_cokernel",
            "irreducible_epi_kernel",
            "irreducible_certified",
        ],
    );
    let ex1 = irreducible_morphism_checks(&chain_morphisms(zigzag)).unwrap();
    let ex1_bad: Vec<&String> = ex1.iter().flat_map(|c| &c.violations).collect();
    let ex1_n: usize = ex1.iter().map(|c| c.instances).sum();
    o7.pass &= ex1_bad.is_empty() && ex1_n == zigzag.maps.len();
    o7.detail = format!(
        "oracle {}; Example 1 chain {ex1_n} maps, {} violations",
        o7.detail,
        ex1_bad.len()
    );
    results.push((7, "irreducible monos and epis", o7, t.elapsed(), None));

    let t = Instant::now();
    let mut o9 = report_outcome(&oracle, &["no_irreducible_cycle"]);
    let mut repeats = 0;
    for c in &chains {
        repeats += repeated_classes(c).unwrap().len();
    }
    o9.pass &= repeats == 0;
    o9.detail = format!(
        "oracle {}; {} chains, {repeats} repeated classes",
        o9.detail,
        chains.len()
    );
    results.push((9, "acyclicity", o9, t.elapsed(), None));

    timed(
        &mut results,
        8,
        "property suites on random representations",
        secs(60),
        &|| {
            let mut tally = common::Tally { reps: 0, sequences: 0 };
            let mut bad = Vec::new();
            for seed in 0..200u64 {
                bad.extend(common::rep_invariants(seed, &mut tally));
            }
            let pass = bad.is_empty() && tally.reps >= 200;
            outcome(
                pass,
                format!(
                    "{} representations, {} exact sequences, {} violations {:?}",
                    tally.reps,
                    tally.sequences,
                    bad.len(),
                    bad
                ),
            )
        },
    );

    results.sort_by_key(|r| r.0);
    let mut all = true;
    for (n, name, o, took, budget) in &results {
        let in_time = budget.is_none_or(|b| *took <= b);
        let pass = o.pass && in_time;
        all &= pass;
        let budget_note = match budget {
            Some(b) if !in_time => format!(" over budget {:.0?}", b),
            _ => String::new(),
        };
        println!(
            "{} {n}. {name} ({:.2?}{budget_note}): {}",
            if pass { "PASS" } else { "FAIL" },
            took,
            o.detail
        );
    }
    let fixtures = all_fixtures().len();
    println!("{} criteria, {fixtures} fixtures", results.len());
    if !all {
        std::process::exit(1);
    }
}
