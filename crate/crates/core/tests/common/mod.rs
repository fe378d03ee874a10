#![allow(dead_code)]

use std::sync::Arc;

use proptest::prelude::*;
use quiverkit::fixtures::all_fixtures;
use quiverkit::linalg::{q as q_int, Matrix, Q};
use quiverkit::quiver::{format_dirs, ArrowSpec, CoreSpec, Dir, QuiverSpec, TailSpecJson, TailWord};
use quiverkit::quiver::{Quiver, VertexId, Window};
use quiverkit::rep::{
    direct_sum, hom_dim, hom_space, injective_at, is_finitely_generated, is_in_rrep, is_indecomposable, is_isomorphic,
    morphism_parts, presentation_status, projective_at, projective_cover, simple_presentation, top_and_radical,
    RepMorphism, StableRep, TailTag,
};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A random representation on a shipped quiver: dimensions up to 2 on a
/// window of depth up to 3, integer maps in `-1..=2`, identities past the
/// window. Sometimes a projective or injective is added as a summand so
/// that the finiteness flags are not all false.
pub fn random_rep(seed: u64) -> (&'static str, StableRep) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fixtures = all_fixtures();
    let (name, q) = fixtures[rng.gen_range(0..fixtures.len())].clone();
    let mut m = random_window_rep(&q, &mut rng);
    if rng.gen_bool(0.3) {
        let w = m.window().clone();
        let v = w.vertices()[rng.gen_range(0..w.len())];
        let extra = if rng.gen_bool(0.5) {
            projective_at(&q, v)
        } else {
            injective_at(&q, v)
        }
        .unwrap();
        m = direct_sum(&m, &extra).unwrap();
    }
    (name, m)
}

pub fn random_window_rep(q: &Arc<Quiver>, rng: &mut ChaCha8Rng) -> StableRep {
    let depths: Vec<usize> = (0..q.tails().len()).map(|_| rng.gen_range(1..=3)).collect();
    let w = Window::new(q, &depths).unwrap();
    let dims: Vec<usize> = (0..w.len()).map(|_| rng.gen_range(0..=2)).collect();
    let maps = w
        .arrows()
        .iter()
        .map(|a| {
            let (r, c) = (dims[a.to], dims[a.from]);
            let entries: Vec<i64> = (0..r * c).map(|_| rng.gen_range(-1..=2)).collect();
            Matrix::from_i64(r, c, &entries)
        })
        .collect();
    let tags = (0..q.tails().len())
        .map(|k| {
            let b = w.index_of(q.tail_vertex(k, depths[k])).unwrap();
            TailTag::from_rank(dims[b])
        })
        .collect();
    StableRep::from_window_data(q.clone(), w, dims, maps, tags).unwrap()
}

/// Dimensions on `depths` (enlarged if needed) followed by tail ranks.
pub fn profile(m: &StableRep, depths: &[usize]) -> Vec<usize> {
    let e = m.extended(depths);
    let mut out = e.dims().to_vec();
    out.extend(e.tags().iter().map(|t| t.rank()));
    out
}

fn revalidates(m: &StableRep) -> bool {
    StableRep::from_window_data(
        m.quiver_arc().clone(),
        m.window().clone(),
        m.dims().to_vec(),
        m.maps().to_vec(),
        m.tags().to_vec(),
    )
    .is_ok_and(|r| r.extended(m.window().depths()) == *m)
}

fn adds_up(left: &StableRep, middle: &StableRep, right: &StableRep) -> bool {
    let mut d = middle.window().depths().to_vec();
    d = Window::max_depths(&d, left.window().depths());
    d = Window::max_depths(&d, right.window().depths());
    let (l, m, r) = (profile(left, &d), profile(middle, &d), profile(right, &d));
    m.iter().zip(l.iter().zip(&r)).all(|(m, (l, r))| *m == l + r)
}

/// Which random representations the property checks run on.
pub struct Tally {
    pub reps: usize,
    pub sequences: usize,
}

/// All representation-level invariants on the representation drawn from
/// `seed` and a second one on the same quiver. Returns the violations.
pub fn rep_invariants(seed: u64, tally: &mut Tally) -> Vec<String> {
    let (name, m) = random_rep(seed);
    let q = m.quiver_arc().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
    let n = random_window_rep(&q, &mut rng);
    tally.reps += 2;
    let mut bad = Vec::new();
    let mut check = |ok: bool, what: &str| {
        if !ok {
            bad.push(format!("seed {seed} on {name}: {what}"));
        }
    };

    // duality
    let s = presentation_status(&m).unwrap();
    let d = m.dualize();
    let sd = presentation_status(&d).unwrap();
    check(
        sd.fg == s.fcg && sd.fp == s.fcp && sd.fcg == s.fg && sd.fcp == s.fp,
        "dual swaps the flags",
    );
    check(is_isomorphic(&d.dualize(), &m).unwrap(), "double dual is isomorphic");

    // Yoneda on every window vertex
    for &v in m.window().vertices() {
        let p = projective_at(&q, v).unwrap();
        check(
            hom_dim(&p, &m).unwrap() == m.dim(v),
            &format!("Hom(P_{}, M)", q.vertex_name(v)),
        );
    }

    // window +3
    let deeper: Vec<usize> = m.window().depths().iter().map(|d| d + 3).collect();
    let m3 = m.extended(&deeper);
    check(presentation_status(&m3).unwrap() == s, "flags under +3");
    check(is_in_rrep(&m3) == is_in_rrep(&m), "rrep under +3");
    check(
        is_indecomposable(&m3).unwrap() == is_indecomposable(&m).unwrap(),
        "indecomposable under +3",
    );
    check(
        hom_dim(&m3, &n).unwrap() == hom_dim(&m, &n).unwrap(),
        "Hom(M, N) under +3",
    );
    check(
        hom_dim(&n, &m3).unwrap() == hom_dim(&n, &m).unwrap(),
        "Hom(N, M) under +3",
    );

    // exact sequences from a random morphism
    let basis = hom_space(&m, &n).unwrap();
    let coeffs: Vec<Q> = basis.iter().map(|_| q_int(rng.gen_range(-2..=2))).collect();
    let f = if basis.is_empty() {
        RepMorphism::zero(&m, &n).unwrap()
    } else {
        RepMorphism::combination(&basis, &coeffs)
    };
    let parts = morphism_parts(&f);
    tally.sequences += 2;
    check(adds_up(&parts.kernel, &m, &parts.image), "ker + im = source");
    check(adds_up(&parts.image, &n, &parts.cokernel), "im + coker = target");
    check(
        parts.kernel_inclusion.is_mono() && parts.cokernel_projection.is_epi(),
        "canonical maps",
    );
    let through = parts
        .cokernel_projection
        .compose(&f.extended(parts.cokernel_projection.source().window().depths()));
    check(through.is_ok_and(|g| g.is_zero()), "coker kills the image");
    for r in [&parts.kernel, &parts.image, &parts.cokernel] {
        check(revalidates(r), "kernel / image / cokernel revalidate");
    }
    check(revalidates(&direct_sum(&m, &n).unwrap()), "direct sum revalidates");

    // radical and projective cover
    if let Ok(tr) = top_and_radical(&m) {
        tally.sequences += 1;
        check(adds_up(&tr.radical, &m, &tr.top), "rad + top");
    }
    if s.fg {
        let cover = projective_cover(&m).unwrap();
        let kp = morphism_parts(&cover);
        tally.sequences += 1;
        check(cover.is_epi(), "cover is onto");
        check(adds_up(&kp.kernel, cover.source(), &m), "kernel + M = cover");
        if is_finitely_generated(&kp.kernel) {
            let kk = projective_cover(&kp.kernel).unwrap();
            check(kk.is_iso(), "fg kernel of a cover is projective");
        }
    }

    // simple presentations at the core
    for v in 0..q.core_len() {
        let sp = simple_presentation(&q, VertexId::Core(v)).unwrap();
        tally.sequences += 1;
        check(sp.is_exact(), "simple presentation");
    }
    bad
}

fn arb_dirs(len: std::ops::Range<usize>) -> impl Strategy<Value = Vec<Dir>> {
    proptest::collection::vec(prop_oneof![Just(Dir::Out), Just(Dir::In)], len)
}

/// Connected acyclic core on up to four vertices (a random spanning tree
/// plus extra edges, oriented by a random ranking) with one to three tails.
pub fn arb_spec() -> impl Strategy<Value = QuiverSpec> {
    (1usize..=4)
        .prop_flat_map(|n| {
            (
                Just(n),
                proptest::collection::vec(0usize..100, n),
                proptest::collection::vec(any::<prop::sample::Index>(), n),
                proptest::collection::vec(any::<bool>(), n * n),
                proptest::collection::vec((0..n, arb_dirs(0..3), arb_dirs(1..3)), 1..=3),
            )
        })
        .prop_map(|(n, rank, parents, extra, tails)| {
            let name = |i: usize| format!("v{i}");
            let mut edges = Vec::new();
            for (i, p) in parents.iter().enumerate().skip(1) {
                edges.push((p.index(i), i));
            }
            for i in 0..n {
                for j in i + 1..n {
                    if extra[i * n + j] && !edges.contains(&(i, j)) {
                        edges.push((i, j));
                    }
                }
            }
            let arrows = edges
                .iter()
                .enumerate()
                .map(|(e, &(a, b))| {
                    let (from, to) = if (rank[a], a) < (rank[b], b) { (a, b) } else { (b, a) };
                    ArrowSpec {
                        id: format!("a{e}"),
                        from: name(from),
                        to: name(to),
                    }
                })
                .collect();
            let tails = tails
                .into_iter()
                .map(|(at, pre, per)| {
                    let w = TailWord::new(pre, per).unwrap().normalized();
                    TailSpecJson {
                        attach: name(at),
                        preperiod: format_dirs(w.pre()),
                        period: format_dirs(w.period()),
                    }
                })
                .collect();
            QuiverSpec {
                core: CoreSpec {
                    vertices: (0..n).map(name).collect(),
                    arrows,
                },
                tails,
            }
        })
}
