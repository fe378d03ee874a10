use std::collections::VecDeque;
use std::sync::Arc;

use serde::Serialize;

use crate::linalg::{span_dim, Matrix};
use crate::quiver::{make_walk, Quiver, WalkEnd, WalkSpec, Window};
use crate::rep::{
    hom_space, is_in_rrep, is_indecomposable, is_isomorphic, morphism_parts, presentation_status, walk_rep,
    RepMorphism, StableRep,
};

use super::SynthesisError;

/// A thin representation with a readable name.
#[derive(Clone, Debug)]
pub struct ThinMember {
    pub label: String,
    pub rep: StableRep,
}

/// Thin representations `M(w)` for the simple walks `w` between any two
/// ends: core vertices, tail vertices up to `radius`, and the tails
/// themselves (written `t{k}.inf`).
#[derive(Clone, Debug)]
pub struct ThinFamily {
    pub members: Vec<ThinMember>,
}

fn end_label(e: &WalkEnd) -> String {
    match e {
        WalkEnd::Vertex(v) => v.clone(),
        WalkEnd::Tail(k) => format!("t{k}.inf"),
    }
}

/// Label of the span between two ends, e.g. `t0.4..t0.inf`.
pub fn span_label(from: &WalkEnd, to: &WalkEnd) -> String {
    let (a, b) = (end_label(from), end_label(to));
    if a == b {
        a
    } else {
        format!("{a}..{b}")
    }
}

impl ThinFamily {
    pub fn new(q: &Arc<Quiver>, radius: usize) -> Result<ThinFamily, SynthesisError> {
        let w = Window::new(q, &vec![radius.max(1); q.tails().len()])?;
        let mut ends: Vec<WalkEnd> = w
            .vertices()
            .iter()
            .map(|&v| WalkEnd::Vertex(q.vertex_name(v)))
            .collect();
        ends.extend((0..q.tails().len()).map(WalkEnd::Tail));
        let mut members = Vec::new();
        for (i, a) in ends.iter().enumerate() {
            for b in &ends[i..] {
                let spec = WalkSpec::Span {
                    from: a.clone(),
                    to: b.clone(),
                };
                let Ok(walk) = make_walk(q, &spec) else { continue };
                if !walk.is_simple() {
                    continue;
                }
                members.push(ThinMember {
                    label: span_label(a, b),
                    rep: walk_rep(q, &walk)?,
                });
            }
        }
        Ok(ThinFamily { members })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn find(&self, label: &str) -> Option<&ThinMember> {
        self.members.iter().find(|m| m.label == label)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

/// A linear piece `N_0 → N_1 → ... → N_k` of the Auslander-Reiten quiver.
#[derive(Clone, Debug)]
pub struct Chain {
    pub nodes: Vec<ThinMember>,
    /// `maps[i]: nodes[i] → nodes[i+1]`
    pub maps: Vec<RepMorphism>,
    /// Index of the seed in `nodes`.
    pub seed: usize,
    /// Sides on which the search found no neighbor.
    pub closed: Vec<Side>,
}

impl Chain {
    pub fn labels(&self) -> Vec<&str> {
        self.nodes.iter().map(|n| n.label.as_str()).collect()
    }
}

/// Necessary conditions for `f: X → Y` to be irreducible, given that it
/// spans a one-dimensional hom space and nothing comes back: a mono with
/// finitely presented cokernel or an epi with finitely co-presented kernel.
fn passes_local_test(f: &RepMorphism) -> Result<bool, SynthesisError> {
    let parts = morphism_parts(f);
    if f.is_mono() && presentation_status(&parts.cokernel)?.fp {
        return Ok(true);
    }
    Ok(f.is_epi() && presentation_status(&parts.kernel)?.fcp)
}

/// Whether `f: X → Y` factors through some member not isomorphic to either
/// end. Such an `f` lies in `rad²` and cannot be irreducible.
fn factors_through_family(f: &RepMorphism, family: &ThinFamily, skip: &[usize]) -> Result<bool, SynthesisError> {
    for (k, m) in family.members.iter().enumerate() {
        if skip.contains(&k) {
            continue;
        }
        let hs = hom_space(f.source(), &m.rep)?;
        if hs.is_empty() {
            continue;
        }
        let gs = hom_space(&m.rep, f.target())?;
        let mut products = Vec::new();
        for g in &gs {
            for h in &hs {
                let p = g.compose(h)?;
                if !p.is_zero() {
                    products.push(p);
                }
            }
        }
        if products.is_empty() {
            continue;
        }
        let depths = products.iter().fold(f.source().window().depths().to_vec(), |d, p| {
            Window::max_depths(&d, p.source().window().depths())
        });
        let mut span: Vec<Matrix> = products.iter().map(|p| p.extended(&depths).flatten()).collect();
        let before = span_dim(&span);
        span.push(f.extended(&depths).flatten());
        if span_dim(&span) == before {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Members isomorphic to `m`.
fn same_class(family: &ThinFamily, m: &StableRep) -> Result<Vec<usize>, SynthesisError> {
    let mut out = Vec::new();
    for (k, x) in family.members.iter().enumerate() {
        if is_isomorphic(&x.rep, m)? {
            out.push(k);
        }
    }
    Ok(out)
}

/// The unique neighbor of `end` on `side`, if any.
fn neighbor(
    end: &StableRep,
    side: Side,
    family: &ThinFamily,
    used: &[StableRep],
) -> Result<Option<(usize, RepMorphism)>, SynthesisError> {
    let mut candidates = Vec::new();
    'members: for (k, m) in family.members.iter().enumerate() {
        let (from, to) = match side {
            Side::Left => (&m.rep, end),
            Side::Right => (end, &m.rep),
        };
        let forward = hom_space(from, to)?;
        if forward.len() != 1 || !hom_space(to, from)?.is_empty() {
            continue;
        }
        for u in used {
            if is_isomorphic(u, &m.rep)? {
                continue 'members;
            }
        }
        let f = forward.into_iter().next().expect("one basis element");
        if passes_local_test(&f)? {
            candidates.push((k, f));
        }
    }
    let mut kept = Vec::new();
    for (k, f) in candidates {
        let mut skip = same_class(family, end)?;
        skip.extend(same_class(family, &family.members[k].rep)?);
        if !factors_through_family(&f, family, &skip)? {
            kept.push((k, f));
        }
    }
    match kept.len() {
        0 => Ok(None),
        1 => Ok(kept.pop()),
        _ => Err(SynthesisError::Ambiguous {
            side,
            candidates: kept.iter().map(|(k, _)| family.members[*k].label.clone()).collect(),
        }),
    }
}

/// Grows a chain of irreducible morphisms around `seed` inside the thin
/// family. Each step extends one end, alternating left then right; a side
/// with no neighbor is closed and later steps go to the other side. A step
/// spent on a side that turns out closed still counts.
///
/// A member qualifies as a neighbor when the hom space toward the chain is
/// one-dimensional, nothing goes back, the map is a mono with finitely
/// presented cokernel or an epi with finitely co-presented kernel, and the
/// map does not factor through another member. Two qualifying members on
/// one side is reported as an error.
pub fn chain_explore(seed: &ThinMember, family: &ThinFamily, steps: usize) -> Result<Chain, SynthesisError> {
    if is_in_rrep(&seed.rep) {
        return Err(SynthesisError::SeedInRrep);
    }
    if !is_indecomposable(&seed.rep)? {
        return Err(SynthesisError::NotIndecomposable);
    }
    let mut nodes: VecDeque<ThinMember> = VecDeque::from([seed.clone()]);
    let mut maps: VecDeque<RepMorphism> = VecDeque::new();
    let mut seed_at = 0;
    let mut closed = Vec::new();
    let mut side = Side::Left;
    for _ in 0..steps {
        if closed.len() == 2 {
            break;
        }
        if closed.contains(&side) {
            side = other(side);
        }
        let used: Vec<StableRep> = nodes.iter().map(|n| n.rep.clone()).collect();
        let end = match side {
            Side::Left => &nodes[0].rep,
            Side::Right => &nodes[nodes.len() - 1].rep,
        };
        match neighbor(end, side, family, &used)? {
            None => closed.push(side),
            Some((k, f)) => {
                let m = family.members[k].clone();
                match side {
                    Side::Left => {
                        nodes.push_front(m);
                        maps.push_front(f);
                        seed_at += 1;
                    }
                    Side::Right => {
                        nodes.push_back(m);
                        maps.push_back(f);
                    }
                }
            }
        }
        side = other(side);
    }
    Ok(Chain {
        nodes: nodes.into(),
        maps: maps.into(),
        seed: seed_at,
        closed,
    })
}

fn other(s: Side) -> Side {
    match s {
        Side::Left => Side::Right,
        Side::Right => Side::Left,
    }
}

/// Pairs of nodes in the chain that are isomorphic (expected none).
pub fn repeated_classes(chain: &Chain) -> Result<Vec<(usize, usize)>, SynthesisError> {
    let mut out = Vec::new();
    for i in 0..chain.nodes.len() {
        for j in i + 1..chain.nodes.len() {
            if is_isomorphic(&chain.nodes[i].rep, &chain.nodes[j].rep)? {
                out.push((i, j));
            }
        }
    }
    Ok(out)
}

/// `M(w)` for the walk between two ends, labeled like family members.
pub fn span_member(q: &Arc<Quiver>, from: WalkEnd, to: WalkEnd) -> Result<ThinMember, SynthesisError> {
    let label = span_label(&from, &to);
    let walk = make_walk(q, &WalkSpec::Span { from, to })?;
    Ok(ThinMember {
        label,
        rep: walk_rep(q, &walk)?,
    })
}
