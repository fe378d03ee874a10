//! Locally finite dimensional representations in the stable-window model.
//!
//! A [`StableRep`] stores exact matrices on a finite window of the quiver.
//! Past the window every tail carries either nothing or a fixed space `k^m`
//! with identity maps, whichever way the arrows point. Everything computed
//! here (hom spaces, kernels, tops, presentation status) is exact for the
//! whole infinite representation, not just the window.

mod construct;
mod hom;
mod json;
mod morphism;
mod status;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::linalg::Matrix;
use crate::quiver::{ArrowId, Quiver, QuiverError, VertexId, Window};

pub use construct::{
    injective_at, projective_at, simple_at, simple_presentation, walk_rep, Path, Projective, SimplePresentation,
};
pub use hom::{end_algebra_rank, find_isomorphism, hom_dim, hom_space, is_indecomposable, is_isomorphic};
pub use json::RepJson;
pub use morphism::{morphism_parts, MorphismParts, RepMorphism};
pub use status::{
    is_finitely_generated, is_in_rrep, presentation_status, projective_cover, rrep_witness, top_and_radical,
    RrepWitness, StatusFlags, TopRadical,
};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("representations live on different quivers")]
    QuiverMismatch,
    #[error("{what}: expected {expected} entries, got {got}")]
    Length {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("map on {arrow}: expected {rows}x{cols}, got {got_rows}x{got_cols}")]
    MapShape {
        arrow: String,
        rows: usize,
        cols: usize,
        got_rows: usize,
        got_cols: usize,
    },
    #[error("tail {tail}: tagged zero but the boundary dimension is {dim}")]
    ZeroTag { tail: usize, dim: usize },
    #[error("tail {tail}: tagged stable({m}) but the boundary dimension is {dim}")]
    StableTag { tail: usize, m: usize, dim: usize },
    #[error("walk is not simple")]
    NotSimpleWalk,
    #[error("morphism does not commute with arrow {0}")]
    NotCommuting(String),
    #[error("morphism component at {vertex}: expected {rows}x{cols}")]
    ComponentShape { vertex: String, rows: usize, cols: usize },
    #[error("morphisms are not composable")]
    NotComposable,
    #[error("tail {tail}: the radical never stabilizes because the tail direction keeps alternating")]
    UnstableRadical { tail: usize },
    #[error("representation is not finitely generated")]
    NotFinitelyGenerated,
    #[error("no almost split sequence ends at a projective")]
    Projective,
    #[error("{path}: {message}")]
    Json { path: String, message: String },
}

/// Eventual behavior of a representation along one tail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailTag {
    Zero,
    Stable(usize),
}

impl TailTag {
    pub fn rank(self) -> usize {
        match self {
            TailTag::Zero => 0,
            TailTag::Stable(m) => m,
        }
    }

    pub fn from_rank(m: usize) -> TailTag {
        if m == 0 {
            TailTag::Zero
        } else {
            TailTag::Stable(m)
        }
    }
}

/// A representation given on a finite window plus eventual tail behavior.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableRep {
    quiver: Arc<Quiver>,
    window: Window,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
    tags: Vec<TailTag>,
    stab: Vec<usize>,
}

impl StableRep {
    /// Builds a representation from window data.
    ///
    /// `dims` follows [`Window::vertices`] and `maps` follows
    /// [`Window::arrows`]. On a stable tail, an eventually invertible run of
    /// maps is re-based to identities, and the window is enlarged to reach
    /// one past the stabilization depth.
    pub fn new(
        quiver: Arc<Quiver>,
        window: Window,
        dims: Vec<usize>,
        mut maps: Vec<Matrix>,
        tags: Vec<TailTag>,
    ) -> Result<StableRep, RepError> {
        check_shapes(&quiver, &window, &dims, &maps, &tags)?;
        for (k, &tag) in tags.iter().enumerate() {
            let m = tag.rank();
            if m == 0 {
                continue;
            }
            let depth = window.depth(k);
            let dim_at = |d: usize| {
                dims[window
                    .index_of(VertexId::Tail { tail: k, depth: d })
                    .expect("in window")]
            };
            let edge = |d: usize| {
                window
                    .arrow_index(ArrowId::Tail { tail: k, depth: d })
                    .expect("in window")
            };
            // Longest run [r, depth] of dimension m joined by invertible maps.
            let mut r = depth;
            while r > 1 && dim_at(r - 1) == m && maps[edge(r)].is_invertible() {
                r -= 1;
            }
            for d in r + 1..=depth {
                maps[edge(d)] = Matrix::identity(m);
            }
        }
        StableRep::from_window_data(quiver, window, dims, maps, tags)
    }

    /// Like [`StableRep::new`] but keeps the given coordinates. Past the
    /// window the maps are identities; the window is enlarged to reach one
    /// past the depth where that behavior starts.
    pub fn from_window_data(
        quiver: Arc<Quiver>,
        window: Window,
        dims: Vec<usize>,
        maps: Vec<Matrix>,
        tags: Vec<TailTag>,
    ) -> Result<StableRep, RepError> {
        check_shapes(&quiver, &window, &dims, &maps, &tags)?;
        let tags: Vec<TailTag> = tags.into_iter().map(|t| TailTag::from_rank(t.rank())).collect();
        let mut stab = Vec::with_capacity(tags.len());
        for (k, &tag) in tags.iter().enumerate() {
            let depth = window.depth(k);
            let dim_at = |d: usize| {
                dims[window
                    .index_of(VertexId::Tail { tail: k, depth: d })
                    .expect("in window")]
            };
            let edge = |d: usize| {
                window
                    .arrow_index(ArrowId::Tail { tail: k, depth: d })
                    .expect("in window")
            };
            let m = tag.rank();
            let boundary = dim_at(depth);
            match tag {
                TailTag::Zero if boundary != 0 => return Err(RepError::ZeroTag { tail: k, dim: boundary }),
                TailTag::Stable(m) if boundary != m => {
                    return Err(RepError::StableTag {
                        tail: k,
                        m,
                        dim: boundary,
                    })
                }
                _ => {}
            }
            let mut s = depth;
            while s > 1 && dim_at(s - 1) == m && maps[edge(s)].is_identity() {
                s -= 1;
            }
            stab.push(s);
        }
        let rep = StableRep {
            quiver,
            window,
            dims,
            maps,
            tags,
            stab,
        };
        let needed: Vec<usize> = rep.stab.iter().map(|s| s + 1).collect();
        Ok(rep.extended(&needed))
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn quiver_arc(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    /// Dimensions in window vertex order.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Matrices in window arrow order.
    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn tags(&self) -> &[TailTag] {
        &self.tags
    }

    /// Per tail, the depth from which dimensions are constant and maps are
    /// identities.
    pub fn stab_depths(&self) -> &[usize] {
        &self.stab
    }

    /// Dimension at any vertex, inside or beyond the window.
    pub fn dim(&self, v: VertexId) -> usize {
        match self.window.index_of(v) {
            Some(i) => self.dims[i],
            None => match v {
                VertexId::Tail { tail, .. } => self.tags[tail].rank(),
                VertexId::Core(_) => 0,
            },
        }
    }

    /// Matrix of any arrow, inside or beyond the window.
    pub fn map(&self, a: ArrowId) -> Matrix {
        match self.window.arrow_index(a) {
            Some(i) => self.maps[i].clone(),
            None => {
                let m = match a {
                    ArrowId::Tail { tail, .. } => self.tags[tail].rank(),
                    ArrowId::Core(_) => 0,
                };
                Matrix::identity(m)
            }
        }
    }

    pub fn total_window_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Finite dimensional: every tail is eventually zero.
    pub fn is_finite_dimensional(&self) -> bool {
        self.tags.iter().all(|t| *t == TailTag::Zero)
    }

    pub fn is_zero(&self) -> bool {
        self.is_finite_dimensional() && self.dims.iter().all(|&d| d == 0)
    }

    pub fn same_quiver(&self, other: &StableRep) -> bool {
        Arc::ptr_eq(&self.quiver, &other.quiver) || self.quiver == other.quiver
    }

    /// The same representation on a window at least as deep as `depths`.
    pub fn extended(&self, depths: &[usize]) -> StableRep {
        let target = Window::max_depths(self.window.depths(), depths);
        if target == self.window.depths() {
            return self.clone();
        }
        let window = Window::new(&self.quiver, &target).expect("valid depths");
        let dims = window.vertices().iter().map(|&v| self.dim(v)).collect();
        let maps = window.arrows().iter().map(|a| self.map(a.id)).collect();
        StableRep {
            quiver: self.quiver.clone(),
            window,
            dims,
            maps,
            tags: self.tags.clone(),
            stab: self.stab.clone(),
        }
    }

    /// Extends both representations to a common window.
    pub fn aligned(&self, other: &StableRep) -> Result<(StableRep, StableRep), RepError> {
        if !self.same_quiver(other) {
            return Err(RepError::QuiverMismatch);
        }
        let d = Window::max_depths(self.window.depths(), other.window.depths());
        Ok((self.extended(&d), other.extended(&d)))
    }

    /// The zero representation.
    pub fn zero(quiver: Arc<Quiver>) -> StableRep {
        let depths = vec![1; quiver.tails().len()];
        let window = Window::new(&quiver, &depths).expect("valid depths");
        let dims = vec![0; window.len()];
        let maps = vec![Matrix::zeros(0, 0); window.arrows().len()];
        let tags = vec![TailTag::Zero; quiver.tails().len()];
        StableRep {
            stab: vec![1; tags.len()],
            quiver,
            window,
            dims,
            maps,
            tags,
        }
    }

    /// Dual representation over the opposite quiver: transpose every map.
    pub fn dualize(&self) -> StableRep {
        let op = Arc::new(self.quiver.op());
        let window = Window::new(&op, self.window.depths()).expect("same depths");
        StableRep {
            quiver: op,
            window,
            dims: self.dims.clone(),
            maps: self.maps.iter().map(Matrix::transpose).collect(),
            tags: self.tags.clone(),
            stab: self.stab.clone(),
        }
    }

    /// Window dimensions keyed by vertex name, in window order.
    pub fn named_dims(&self) -> Vec<(String, usize)> {
        self.window
            .vertices()
            .iter()
            .zip(&self.dims)
            .map(|(&v, &d)| (self.quiver.vertex_name(v), d))
            .collect()
    }

    /// Subrepresentation spanned by the columns of `bases[v]` at each window
    /// vertex, with its inclusion. The bases must be closed under the maps,
    /// and identical on consecutive tail vertices past stabilization.
    pub(crate) fn subrep(&self, bases: Vec<Matrix>) -> (StableRep, RepMorphism) {
        let bases: Vec<Matrix> = bases
            .into_iter()
            .map(|b| {
                if b.cols() == b.rows() {
                    Matrix::identity(b.rows())
                } else {
                    b
                }
            })
            .collect();
        let dims: Vec<usize> = bases.iter().map(Matrix::cols).collect();
        let maps = self
            .window
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| {
                let image = m * &bases[a.from];
                bases[a.to].solve(&image).expect("basis is closed under the maps")
            })
            .collect();
        let tags = self.tail_tags_from(&dims);
        let sub = StableRep::from_window_data(self.quiver.clone(), self.window.clone(), dims, maps, tags)
            .expect("subrepresentation of a stable representation is stable");
        let me = self.extended(sub.window.depths());
        let comps = self.spread(&bases, &me.window);
        let inc = RepMorphism::new_unchecked(sub.extended(me.window.depths()), me, comps);
        (sub, inc)
    }

    /// Quotient by the subspaces spanned by `bases[v]`, with the projection.
    pub(crate) fn quotient(&self, bases: Vec<Matrix>) -> (StableRep, RepMorphism) {
        let mut projections = Vec::with_capacity(bases.len());
        let mut sections = Vec::with_capacity(bases.len());
        for b in &bases {
            let comp = b.complement();
            let full = b.hstack(&comp);
            let inv = full.inverse().expect("basis plus complement is invertible");
            let rows: Vec<usize> = (b.cols()..full.cols()).collect();
            projections.push(inv.select_rows(&rows));
            sections.push(comp);
        }
        let dims: Vec<usize> = sections.iter().map(Matrix::cols).collect();
        let maps = self
            .window
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| &projections[a.to] * &(m * &sections[a.from]))
            .collect();
        let tags = self.tail_tags_from(&dims);
        let quot = StableRep::from_window_data(self.quiver.clone(), self.window.clone(), dims, maps, tags)
            .expect("quotient of a stable representation is stable");
        let me = self.extended(quot.window.depths());
        let comps = self.spread(&projections, &me.window);
        let proj = RepMorphism::new_unchecked(me.clone(), quot.extended(me.window.depths()), comps);
        (quot, proj)
    }

    /// Per-vertex matrices on `self.window`, continued past it with the
    /// boundary value of each tail.
    pub(crate) fn spread(&self, per_vertex: &[Matrix], target: &Window) -> Vec<Matrix> {
        target
            .vertices()
            .iter()
            .map(|&v| {
                let i = match self.window.index_of(v) {
                    Some(i) => i,
                    None => match v {
                        VertexId::Tail { tail, .. } => self
                            .window
                            .index_of(VertexId::Tail {
                                tail,
                                depth: self.window.depth(tail),
                            })
                            .expect("boundary in window"),
                        VertexId::Core(_) => unreachable!("core vertices are in every window"),
                    },
                };
                per_vertex[i].clone()
            })
            .collect()
    }

    fn tail_tags_from(&self, dims: &[usize]) -> Vec<TailTag> {
        (0..self.tags.len())
            .map(|k| {
                let b = self.window.index_of(VertexId::Tail {
                    tail: k,
                    depth: self.window.depth(k),
                });
                TailTag::from_rank(dims[b.expect("boundary in window")])
            })
            .collect()
    }
}

fn check_shapes(
    q: &Quiver,
    window: &Window,
    dims: &[usize],
    maps: &[Matrix],
    tags: &[TailTag],
) -> Result<(), RepError> {
    let counts = [
        ("dims", window.len(), dims.len()),
        ("maps", window.arrows().len(), maps.len()),
        ("tags", q.tails().len(), tags.len()),
    ];
    for (what, expected, got) in counts {
        if expected != got {
            return Err(RepError::Length { what, expected, got });
        }
    }
    for (a, m) in window.arrows().iter().zip(maps) {
        let (rows, cols) = (dims[a.to], dims[a.from]);
        if m.shape() != (rows, cols) {
            return Err(RepError::MapShape {
                arrow: q.arrow_name(a.id),
                rows,
                cols,
                got_rows: m.rows(),
                got_cols: m.cols(),
            });
        }
    }
    Ok(())
}

/// Blockwise direct sum.
pub fn direct_sum(m: &StableRep, n: &StableRep) -> Result<StableRep, RepError> {
    let (m, n) = m.aligned(n)?;
    let dims = m.dims.iter().zip(&n.dims).map(|(a, b)| a + b).collect();
    let maps = m
        .maps
        .iter()
        .zip(&n.maps)
        .map(|(a, b)| Matrix::block_diag(&[a.clone(), b.clone()]))
        .collect();
    let tags = m
        .tags
        .iter()
        .zip(&n.tags)
        .map(|(a, b)| TailTag::from_rank(a.rank() + b.rank()))
        .collect();
    StableRep::from_window_data(m.quiver.clone(), m.window.clone(), dims, maps, tags)
}

/// Direct sum of a list; the zero representation for an empty list.
pub fn direct_sum_all(quiver: &Arc<Quiver>, reps: &[StableRep]) -> Result<StableRep, RepError> {
    reps.iter()
        .try_fold(StableRep::zero(quiver.clone()), |acc, r| direct_sum(&acc, r))
}

/// Dual over the opposite quiver.
pub fn dualize(m: &StableRep) -> StableRep {
    m.dualize()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;
    use crate::quiver::quiver;

    fn ray() -> Arc<Quiver> {
        Arc::new(quiver(&["c"], &[], &[("c", "", "O")]))
    }

    #[test]
    fn rebases_invertible_tail_maps() {
        let qv = ray();
        let w = Window::new(&qv, &[3]).unwrap();
        let two = Matrix::from_rows(1, 1, vec![vec![q(2)]]);
        let rep = StableRep::new(
            qv,
            w,
            vec![1, 1, 1, 1],
            vec![two.clone(), two.clone(), two.clone()],
            vec![TailTag::Stable(1)],
        )
        .unwrap();
        assert_eq!(rep.stab_depths(), &[1]);
        assert_eq!(rep.maps()[0], two);
        assert!(rep.maps()[1].is_identity() && rep.maps()[2].is_identity());
    }

    #[test]
    fn window_grows_past_stabilization() {
        let qv = ray();
        let w = Window::new(&qv, &[2]).unwrap();
        let z = Matrix::zeros(1, 0);
        let rep = StableRep::new(
            qv,
            w,
            vec![0, 0, 1],
            vec![Matrix::zeros(0, 0), z],
            vec![TailTag::Stable(1)],
        )
        .unwrap();
        assert_eq!(rep.stab_depths(), &[2]);
        assert_eq!(rep.window().depth(0), 3);
        assert_eq!(rep.dim(VertexId::Tail { tail: 0, depth: 40 }), 1);
    }

    #[test]
    fn tag_mismatch_is_rejected() {
        let qv = ray();
        let w = Window::new(&qv, &[1]).unwrap();
        let r = StableRep::new(qv, w, vec![1, 1], vec![Matrix::identity(1)], vec![TailTag::Zero]);
        assert_eq!(r.unwrap_err(), RepError::ZeroTag { tail: 0, dim: 1 });
    }

    #[test]
    fn singular_boundary_map_is_kept() {
        let qv = ray();
        let w = Window::new(&qv, &[2]).unwrap();
        let r = StableRep::new(
            qv,
            w,
            vec![1, 1, 1],
            vec![Matrix::identity(1), Matrix::zeros(1, 1)],
            vec![TailTag::Stable(1)],
        )
        .unwrap();
        assert_eq!(r.stab_depths(), &[2]);
        assert!(r.maps()[1].is_zero());
    }
}
