use std::sync::Arc;
use std::time::Instant;

use quiverkit::fixtures::fixture;
use quiverkit::quiver::{Quiver, WalkEnd};
use quiverkit::rep::{hom_dim, is_in_rrep};
use quiverkit::synthesis::{chain_explore, span_member, Side, ThinFamily, ThinMember};

fn up_from(q: &Arc<Quiver>, i: i64) -> ThinMember {
    let v = match i {
        0 => "0".to_string(),
        i if i > 0 => format!("t0.{i}"),
        i => format!("t1.{}", -i),
    };
    span_member(q, WalkEnd::Vertex(v), WalkEnd::Tail(0)).unwrap()
}

#[test]
fn zigzag_homs() {
    let q = fixture("zigzag").unwrap();
    let m: Vec<ThinMember> = (0..=10).map(|i| up_from(&q, i)).collect();
    for i in 0..=10usize {
        for j in 0..=10usize {
            let d = hom_dim(&m[i].rep, &m[j].rep).unwrap();
            let expected = i == j || (i < j && j % 2 == 1) || (i > j && i % 2 == 0);
            assert_eq!(d, usize::from(expected), "Hom(M_{i}, M_{j})");
        }
    }
}

#[test]
fn zigzag_chain() {
    let q = fixture("zigzag").unwrap();
    let t = Instant::now();
    let fam = ThinFamily::new(&q, 8).unwrap();
    let chain = chain_explore(&up_from(&q, 0), &fam, 4).unwrap();
    eprintln!("family {} chain {:?} in {:?}", fam.len(), chain.labels(), t.elapsed());
    assert_eq!(
        chain.labels(),
        [
            "t0.4..t0.inf",
            "t0.2..t0.inf",
            "0..t0.inf",
            "t0.1..t0.inf",
            "t0.3..t0.inf"
        ]
    );
}

#[test]
fn example2_chains() {
    let q = fixture("example2").unwrap();
    let fam = ThinFamily::new(&q, 6).unwrap();
    let inf = span_member(&q, WalkEnd::Tail(1), WalkEnd::Tail(0)).unwrap();
    let c = chain_explore(&inf, &fam, 3).unwrap();
    assert_eq!(c.labels(), ["t0.4..t0.inf", "t0.2..t0.inf", "t1.inf..t0.inf"]);
    assert_eq!(c.closed, [Side::Right]);
    let c0 = chain_explore(&up_from(&q, 0), &fam, 4).unwrap();
    assert_eq!(
        c0.labels(),
        [
            "t1.2..t0.inf",
            "t1.1..t0.inf",
            "0..t0.inf",
            "t0.1..t0.inf",
            "t0.3..t0.inf"
        ]
    );
}

#[test]
fn example2_outside_rrep_touch_the_sourced_tail() {
    let q = fixture("example2").unwrap();
    let fam = ThinFamily::new(&q, 6).unwrap();
    for m in &fam.members {
        assert_eq!(!is_in_rrep(&m.rep), m.label.contains("t0.inf"), "{}", m.label);
    }
}
