use serde::Serialize;

use crate::linalg::Matrix;
use crate::quiver::{Dir, VertexId, Window};

use super::construct::projectives_on_common;
use super::{direct_sum_all, is_isomorphic, morphism_parts, RepError, RepMorphism, StableRep, TailTag};

/// The four finiteness notions for a representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct StatusFlags {
    pub fg: bool,
    pub fp: bool,
    pub fcg: bool,
    pub fcp: bool,
}

/// `rad M ↪ M ↠ top M`.
#[derive(Clone, Debug)]
pub struct TopRadical {
    pub radical: StableRep,
    pub inclusion: RepMorphism,
    pub top: StableRep,
    pub projection: RepMorphism,
}

fn eventually(m: &StableRep, dir: Dir) -> bool {
    m.tags()
        .iter()
        .enumerate()
        .all(|(k, t)| *t == TailTag::Zero || m.quiver().tail(k).word.eventual() == Some(dir))
}

/// Finitely generated: every tail that stays nonzero eventually points
/// away from the core.
pub fn is_finitely_generated(m: &StableRep) -> bool {
    eventually(m, Dir::Out)
}

/// The radical (sum of images of incoming arrows) and the top.
///
/// Along a tail whose direction settles, the radical is everything once the
/// maps are identities, so both parts are stable. Along a tail that keeps
/// alternating, a nonzero stable part has a source every period and the top
/// is infinitely supported; that case is reported as an error.
pub fn top_and_radical(m: &StableRep) -> Result<TopRadical, RepError> {
    let q = m.quiver();
    let mut depths = m.window().depths().to_vec();
    for (k, t) in m.tags().iter().enumerate() {
        let word = &q.tail(k).word;
        if t.rank() > 0 && word.eventual().is_none() {
            return Err(RepError::UnstableRadical { tail: k });
        }
        depths[k] = depths[k].max(m.stab_depths()[k].max(word.pre().len()) + 2);
    }
    let m = m.extended(&depths);
    let bases = m
        .window()
        .vertices()
        .iter()
        .map(|&v| {
            let images: Vec<Matrix> = q.in_arrows(v).into_iter().map(|a| m.map(a)).collect();
            Matrix::hcat(m.dim(v), &images).column_space()
        })
        .collect::<Vec<_>>();
    let (radical, inclusion) = m.subrep(bases.clone());
    let (top, projection) = m.quotient(bases);
    Ok(TopRadical {
        radical,
        inclusion,
        top,
        projection,
    })
}

/// A projective cover `⊕ P_v → M`, one summand per basis vector of
/// `top M` lifted to `M` (vertex order, then coordinate order).
pub fn projective_cover(m: &StableRep) -> Result<RepMorphism, RepError> {
    if !is_finitely_generated(m) {
        return Err(RepError::NotFinitelyGenerated);
    }
    let tr = top_and_radical(m)?;
    let base = tr.inclusion.target().clone();
    let w = base.window().clone();
    let mut generators: Vec<(VertexId, Matrix)> = Vec::new();
    for (i, &v) in w.vertices().iter().enumerate() {
        let rad_basis = &tr.inclusion.comps()[i];
        let lifts = rad_basis.complement();
        for j in 0..lifts.cols() {
            generators.push((v, lifts.col(j)));
        }
    }
    let q = base.quiver_arc().clone();
    if generators.is_empty() {
        return RepMorphism::zero(&StableRep::zero(q), &base);
    }
    let vertices: Vec<VertexId> = generators.iter().map(|(v, _)| *v).collect();
    let ps = projectives_on_common(&q, &vertices, w.depths())?;
    let pw = ps[0].rep.window().clone();
    let target = base.extended(pw.depths());
    let source = direct_sum_all(&q, &ps.iter().map(|p| p.rep.clone()).collect::<Vec<_>>())?.extended(pw.depths());
    let comps = (0..pw.len())
        .map(|v| {
            let blocks: Vec<Matrix> = ps
                .iter()
                .zip(&generators)
                .map(|(p, (_, x))| {
                    let cols: Vec<Matrix> = p.paths[v]
                        .iter()
                        .map(|path| path.iter().fold(x.clone(), |acc, &a| &target.map(a) * &acc))
                        .collect();
                    Matrix::hcat(target.dims()[v], &cols)
                })
                .collect();
            Matrix::hcat(target.dims()[v], &blocks)
        })
        .collect();
    RepMorphism::new(&source, &target, comps)
}

fn finitely_presented(m: &StableRep) -> Result<bool, RepError> {
    if !is_finitely_generated(m) {
        return Ok(false);
    }
    let cover = projective_cover(m)?;
    Ok(is_finitely_generated(&morphism_parts(&cover).kernel))
}

/// Decides fg, fp, fcg and fcp. The co-notions are computed on the dual.
pub fn presentation_status(m: &StableRep) -> Result<StatusFlags, RepError> {
    let d = m.dualize();
    Ok(StatusFlags {
        fg: is_finitely_generated(m),
        fp: finitely_presented(m)?,
        fcg: is_finitely_generated(&d),
        fcp: finitely_presented(&d)?,
    })
}

/// Membership in the subcategory of representations built from an fp
/// subrepresentation and an fcp quotient: every tail that stays nonzero
/// must settle into one direction.
pub fn is_in_rrep(m: &StableRep) -> bool {
    m.tags()
        .iter()
        .enumerate()
        .all(|(k, t)| *t == TailTag::Zero || m.quiver().tail(k).word.eventual().is_some())
}

/// A finitely generated projective subrepresentation `L` whose quotient is
/// finitely co-presented.
#[derive(Clone, Debug)]
pub struct RrepWitness {
    pub sub: StableRep,
    pub inclusion: RepMorphism,
    pub quotient: StableRep,
    /// Per outward tail, the depth where the projective summand starts.
    pub cut_depths: Vec<Option<usize>>,
}

/// Bounded search for an rrep witness: on each tail that is eventually
/// outward and stays nonzero, try the sub supported from depth `r` on, for
/// increasing `r` within the window, and keep the first that is a sum of
/// projectives. Succeeds iff the remaining quotient is fcp.
pub fn rrep_witness(m: &StableRep) -> Result<Option<RrepWitness>, RepError> {
    let q = m.quiver_arc().clone();
    let depths: Vec<usize> = m.window().depths().iter().map(|d| d + 2).collect();
    let m = m.extended(&depths);
    let w = m.window().clone();
    let mut cuts = vec![None; q.tails().len()];
    for (k, t) in m.tags().iter().enumerate() {
        if t.rank() == 0 || q.tail(k).word.eventual() != Some(Dir::Out) {
            continue;
        }
        for r in 1..w.depth(k) {
            if let Some(()) = tail_summand_ok(&m, k, r)? {
                cuts[k] = Some(r);
                break;
            }
        }
        if cuts[k].is_none() {
            return Ok(None);
        }
    }
    let bases: Vec<Matrix> = w
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, &v)| match v {
            VertexId::Tail { tail, depth } if cuts[tail].is_some_and(|r| depth >= r) => Matrix::identity(m.dims()[i]),
            _ => Matrix::zeros(m.dims()[i], 0),
        })
        .collect();
    let (sub, inclusion) = m.subrep(bases.clone());
    let (quotient, _) = m.quotient(bases);
    if !presentation_status(&quotient)?.fcp {
        return Ok(None);
    }
    Ok(Some(RrepWitness {
        sub,
        inclusion,
        quotient,
        cut_depths: cuts,
    }))
}

/// Whether `M` restricted to depths `≥ r` of tail `k` is a subrepresentation
/// isomorphic to `P_{(k, r)}^m`.
fn tail_summand_ok(m: &StableRep, k: usize, r: usize) -> Result<Option<()>, RepError> {
    let q = m.quiver_arc().clone();
    let w = m.window();
    let inside = |v: VertexId| matches!(v, VertexId::Tail { tail, depth } if tail == k && depth >= r);
    // closed under the maps: nothing leaves the region
    for (ai, a) in w.arrows().iter().enumerate() {
        if inside(w.vertices()[a.from]) && !inside(w.vertices()[a.to]) && !m.maps()[ai].is_zero() {
            return Ok(None);
        }
    }
    let bases: Vec<Matrix> = w
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            if inside(v) {
                Matrix::identity(m.dims()[i])
            } else {
                Matrix::zeros(m.dims()[i], 0)
            }
        })
        .collect();
    let (sub, _) = m.subrep(bases);
    let rank = m.tags()[k].rank();
    let p = super::projective_at(&q, VertexId::Tail { tail: k, depth: r })?;
    let sum = direct_sum_all(&q, &vec![p; rank])?;
    let depths = Window::max_depths(sub.window().depths(), sum.window().depths());
    Ok(is_isomorphic(&sub.extended(&depths), &sum.extended(&depths))?.then_some(()))
}
