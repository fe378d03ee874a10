use crate::linalg::{Matrix, Q};
use crate::quiver::VertexId;

use super::{RepError, StableRep};

/// A morphism of stable representations, stored on a common window.
///
/// Past the window each component equals the boundary component of its
/// tail (or is empty when either side vanishes there).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMorphism {
    source: StableRep,
    target: StableRep,
    comps: Vec<Matrix>,
}

impl RepMorphism {
    /// Checks shapes and commutation. `comps` follows the vertices of the
    /// common window of `source` and `target`; both are extended to it.
    pub fn new(source: &StableRep, target: &StableRep, comps: Vec<Matrix>) -> Result<RepMorphism, RepError> {
        let (source, target) = source.aligned(target)?;
        let w = source.window();
        if comps.len() != w.len() {
            return Err(RepError::Length {
                what: "morphism components",
                expected: w.len(),
                got: comps.len(),
            });
        }
        for (i, c) in comps.iter().enumerate() {
            let (rows, cols) = (target.dims()[i], source.dims()[i]);
            if c.shape() != (rows, cols) {
                return Err(RepError::ComponentShape {
                    vertex: source.quiver().vertex_name(w.vertices()[i]),
                    rows,
                    cols,
                });
            }
        }
        for (ai, a) in w.arrows().iter().enumerate() {
            let lhs = &comps[a.to] * &source.maps()[ai];
            let rhs = &target.maps()[ai] * &comps[a.from];
            if lhs != rhs {
                return Err(RepError::NotCommuting(source.quiver().arrow_name(a.id)));
            }
        }
        Ok(RepMorphism { source, target, comps })
    }

    pub(crate) fn new_unchecked(source: StableRep, target: StableRep, comps: Vec<Matrix>) -> RepMorphism {
        debug_assert_eq!(source.window(), target.window());
        debug_assert_eq!(comps.len(), source.window().len());
        RepMorphism { source, target, comps }
    }

    pub fn zero(source: &StableRep, target: &StableRep) -> Result<RepMorphism, RepError> {
        let (source, target) = source.aligned(target)?;
        let comps = source
            .dims()
            .iter()
            .zip(target.dims())
            .map(|(&c, &r)| Matrix::zeros(r, c))
            .collect();
        Ok(RepMorphism { source, target, comps })
    }

    pub fn identity(m: &StableRep) -> RepMorphism {
        let comps = m.dims().iter().map(|&d| Matrix::identity(d)).collect();
        RepMorphism {
            source: m.clone(),
            target: m.clone(),
            comps,
        }
    }

    pub fn source(&self) -> &StableRep {
        &self.source
    }

    pub fn target(&self) -> &StableRep {
        &self.target
    }

    /// Components in window vertex order.
    pub fn comps(&self) -> &[Matrix] {
        &self.comps
    }

    /// Component at any vertex.
    pub fn comp(&self, v: VertexId) -> Matrix {
        let w = self.source.window();
        match w.index_of(v) {
            Some(i) => self.comps[i].clone(),
            None => match v {
                VertexId::Tail { tail, .. } => {
                    let b = w
                        .index_of(VertexId::Tail {
                            tail,
                            depth: w.depth(tail),
                        })
                        .expect("boundary in window");
                    self.comps[b].clone()
                }
                VertexId::Core(_) => unreachable!("core vertices are in every window"),
            },
        }
    }

    /// The same morphism on a window at least as deep as `depths`.
    pub fn extended(&self, depths: &[usize]) -> RepMorphism {
        let source = self.source.extended(depths);
        if source.window() == self.source.window() {
            return self.clone();
        }
        let target = self.target.extended(source.window().depths());
        let comps = self.source.spread(&self.comps, source.window());
        RepMorphism { source, target, comps }
    }

    fn aligned_with(&self, other: &RepMorphism) -> (RepMorphism, RepMorphism) {
        let d = crate::quiver::Window::max_depths(self.source.window().depths(), other.source.window().depths());
        (self.extended(&d), other.extended(&d))
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &RepMorphism) -> Result<RepMorphism, RepError> {
        if !self.source.same_quiver(&f.source) {
            return Err(RepError::QuiverMismatch);
        }
        let (g, f) = self.aligned_with(f);
        if g.source != f.target {
            return Err(RepError::NotComposable);
        }
        let comps = g.comps.iter().zip(&f.comps).map(|(a, b)| a * b).collect();
        Ok(RepMorphism {
            source: f.source,
            target: g.target,
            comps,
        })
    }

    /// `self + other`; both must have the same source and target.
    pub fn add(&self, other: &RepMorphism) -> Result<RepMorphism, RepError> {
        let (a, b) = self.aligned_with(other);
        if a.source != b.source || a.target != b.target {
            return Err(RepError::NotComposable);
        }
        let comps = a.comps.iter().zip(&b.comps).map(|(x, y)| x + y).collect();
        Ok(RepMorphism { comps, ..a })
    }

    pub fn scale(&self, c: &Q) -> RepMorphism {
        RepMorphism {
            comps: self.comps.iter().map(|m| m.scale(c)).collect(),
            ..self.clone()
        }
    }

    /// `Σ coeffs[i] · basis[i]`. All elements must share source and target.
    pub fn combination(basis: &[RepMorphism], coeffs: &[Q]) -> RepMorphism {
        assert_eq!(basis.len(), coeffs.len());
        assert!(!basis.is_empty(), "empty combination has no source or target");
        let mut comps: Vec<Matrix> = basis[0]
            .comps
            .iter()
            .map(|c| Matrix::zeros(c.rows(), c.cols()))
            .collect();
        for (f, c) in basis.iter().zip(coeffs) {
            for (acc, m) in comps.iter_mut().zip(&f.comps) {
                *acc = &*acc + &m.scale(c);
            }
        }
        RepMorphism {
            comps,
            ..basis[0].clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Matrix::is_zero)
    }

    /// Injective at every vertex (components past the window repeat the
    /// boundary ones, so the window decides).
    pub fn is_mono(&self) -> bool {
        self.comps.iter().all(|c| c.rank() == c.cols())
    }

    pub fn is_epi(&self) -> bool {
        self.comps.iter().all(|c| c.rank() == c.rows())
    }

    pub fn is_iso(&self) -> bool {
        self.comps.iter().all(|c| c.rows() == c.cols() && c.rank() == c.rows())
    }

    /// All components flattened into one column, in window order.
    pub fn flatten(&self) -> Matrix {
        let parts: Vec<Matrix> = self.comps.iter().map(Matrix::flatten).collect();
        Matrix::vcat(1, &parts)
    }
}

/// Kernel, image and cokernel of a morphism with their canonical maps.
#[derive(Clone, Debug)]
pub struct MorphismParts {
    pub kernel: StableRep,
    /// `kernel → source`
    pub kernel_inclusion: RepMorphism,
    pub image: StableRep,
    /// `source → image`
    pub coimage_projection: RepMorphism,
    /// `image → target`
    pub image_inclusion: RepMorphism,
    pub cokernel: StableRep,
    /// `target → cokernel`
    pub cokernel_projection: RepMorphism,
}

pub fn morphism_parts(f: &RepMorphism) -> MorphismParts {
    let kernel_bases: Vec<Matrix> = f.comps.iter().map(Matrix::kernel).collect();
    let image_bases: Vec<Matrix> = f.comps.iter().map(Matrix::column_space).collect();
    let (kernel, kernel_inclusion) = f.source.subrep(kernel_bases);
    let (image, image_inclusion) = f.target.subrep(image_bases.clone());
    let (cokernel, cokernel_projection) = f.target.quotient(image_bases);

    let inc = image_inclusion.clone();
    let g = f.extended(inc.source().window().depths());
    let image_ext = inc.source().clone();
    let comps = g
        .comps
        .iter()
        .zip(inc.comps())
        .map(|(fc, basis)| basis.solve(fc).expect("f lands in its image"))
        .collect();
    let coimage_projection = RepMorphism::new_unchecked(g.source.clone(), image_ext, comps);
    MorphismParts {
        kernel,
        kernel_inclusion,
        image,
        coimage_projection,
        image_inclusion,
        cokernel,
        cokernel_projection,
    }
}
