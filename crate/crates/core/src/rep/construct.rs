use std::collections::HashMap;
use std::sync::Arc;

use crate::linalg::Matrix;
use crate::quiver::{ArrowId, Quiver, QuiverError, VertexId, Walk, Window};

use super::{direct_sum_all, RepError, RepMorphism, StableRep, TailTag};

/// A path as the sequence of arrows it traverses, first arrow first.
pub type Path = Vec<ArrowId>;

/// `P_a` with the path basis behind it.
#[derive(Clone, Debug)]
pub struct Projective {
    pub vertex: VertexId,
    pub rep: StableRep,
    /// Per window vertex `v`, the paths `a → v` indexing the basis of
    /// `P_a(v)`.
    pub paths: Vec<Vec<Path>>,
}

impl Projective {
    /// Position of `p` in the basis at window vertex `v`.
    pub fn index_of(&self, v: usize, p: &Path) -> Option<usize> {
        self.paths[v].iter().position(|x| x == p)
    }
}

fn check_vertex(q: &Quiver, a: VertexId) -> Result<(), RepError> {
    let ok = match a {
        VertexId::Core(i) => i < q.core_len(),
        VertexId::Tail { tail, depth } => tail < q.tails().len() && depth >= 1,
    };
    if ok {
        Ok(())
    } else {
        Err(QuiverError::UnknownVertex(format!("{a:?}")).into())
    }
}

/// Window depths that let the path count of `P_a` settle on every tail.
fn projective_need(q: &Quiver, a: VertexId) -> Vec<usize> {
    q.tails()
        .iter()
        .enumerate()
        .map(|(k, t)| {
            let d0 = match a {
                VertexId::Tail { tail, depth } if tail == k => depth,
                _ => 0,
            };
            d0 + t.word.pre().len() + t.word.period().len() + 1
        })
        .collect()
}

fn build_projective(q: &Arc<Quiver>, a: VertexId, depths: &[usize]) -> Projective {
    let w = Window::new(q, depths).expect("valid depths");
    let a_idx = w.index_of(a).expect("vertex inside window");
    let mut paths: Vec<Vec<Path>> = vec![Vec::new(); w.len()];
    let mut block_start = vec![0usize; w.arrows().len()];
    for v in w.topological_order() {
        let mut here: Vec<Path> = Vec::new();
        if v == a_idx {
            here.push(Vec::new());
        }
        for ai in w.incoming(v) {
            block_start[ai] = here.len();
            let arrow = w.arrows()[ai];
            for p in &paths[arrow.from] {
                let mut ext = p.clone();
                ext.push(arrow.id);
                here.push(ext);
            }
        }
        paths[v] = here;
    }
    let dims: Vec<usize> = paths.iter().map(Vec::len).collect();
    let maps = w
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, arrow)| {
            let mut m = Matrix::zeros(dims[arrow.to], dims[arrow.from]);
            for j in 0..dims[arrow.from] {
                m.set(block_start[ai] + j, j, crate::linalg::q(1));
            }
            m
        })
        .collect();
    let tags = w
        .boundary()
        .iter()
        .map(|&b| TailTag::from_rank(dims[w.index_of(b).expect("boundary")]))
        .collect();
    let rep = StableRep::from_window_data(q.clone(), w, dims, maps, tags).expect("path representation is stable");
    Projective { vertex: a, rep, paths }
}

/// `P_a` on a window at least as deep as `min_depths`.
pub(crate) fn projective_on(q: &Arc<Quiver>, a: VertexId, min_depths: &[usize]) -> Result<Projective, RepError> {
    check_vertex(q, a)?;
    let mut depths = Window::max_depths(&projective_need(q, a), min_depths);
    loop {
        let p = build_projective(q, a, &depths);
        if p.rep.window().depths() == depths {
            return Ok(p);
        }
        depths = p.rep.window().depths().to_vec();
    }
}

/// Several projectives on one shared window.
pub(crate) fn projectives_on_common(
    q: &Arc<Quiver>,
    vertices: &[VertexId],
    min_depths: &[usize],
) -> Result<Vec<Projective>, RepError> {
    let mut depths = min_depths.to_vec();
    for &v in vertices {
        check_vertex(q, v)?;
        depths = Window::max_depths(&depths, &projective_need(q, v));
    }
    loop {
        let ps: Vec<Projective> = vertices.iter().map(|&v| build_projective(q, v, &depths)).collect();
        let mut grown = depths.clone();
        for p in &ps {
            grown = Window::max_depths(&grown, p.rep.window().depths());
        }
        if grown == depths {
            return Ok(ps);
        }
        depths = grown;
    }
}

/// The indecomposable projective `P_a = Hom(a, -)`: `P_a(b)` has the paths
/// `a → b` as a basis.
pub fn projective_at(q: &Arc<Quiver>, a: VertexId) -> Result<StableRep, RepError> {
    Ok(projective_on(q, a, &vec![1; q.tails().len()])?.rep)
}

/// The indecomposable injective `I_a`: `I_a(b)` is dual to the paths `b → a`.
pub fn injective_at(q: &Arc<Quiver>, a: VertexId) -> Result<StableRep, RepError> {
    let op = Arc::new(q.op());
    let p = projective_at(&op, a)?;
    Ok(p.dualize().with_quiver(q.clone()))
}

/// The simple representation at `a`.
pub fn simple_at(q: &Arc<Quiver>, a: VertexId) -> Result<StableRep, RepError> {
    check_vertex(q, a)?;
    let mut depths = vec![1; q.tails().len()];
    if let VertexId::Tail { tail, depth } = a {
        depths[tail] = depth + 1;
    }
    let w = Window::new(q, &depths)?;
    let ai = w.index_of(a).expect("inside window");
    let dims: Vec<usize> = (0..w.len()).map(|i| usize::from(i == ai)).collect();
    let maps = w
        .arrows()
        .iter()
        .map(|ar| Matrix::zeros(dims[ar.to], dims[ar.from]))
        .collect();
    let tags = vec![TailTag::Zero; q.tails().len()];
    StableRep::from_window_data(q.clone(), w, dims, maps, tags)
}

/// `0 → ⊕_{α: a → b} P_b → P_a → S_a → 0` with explicit maps.
#[derive(Clone, Debug)]
pub struct SimplePresentation {
    pub simple: StableRep,
    pub projective: StableRep,
    /// `⊕ P_{h(α)}` over the arrows starting at `a`, in arrow order.
    pub kernel: StableRep,
    pub heads: Vec<VertexId>,
    /// `kernel → projective`
    pub inclusion: RepMorphism,
    /// `projective → simple`
    pub cover: RepMorphism,
}

impl SimplePresentation {
    /// Checks exactness: the inclusion is mono, the cover is epi, their
    /// composite vanishes and dimensions add up at every window vertex.
    pub fn is_exact(&self) -> bool {
        let Ok(composite) = self.cover.compose(&self.inclusion) else {
            return false;
        };
        let k = self.inclusion.source();
        let p = self.inclusion.target();
        let s = self.cover.target();
        self.inclusion.is_mono()
            && self.cover.is_epi()
            && composite.is_zero()
            && (0..p.window().len()).all(|i| p.dims()[i] == k.dims()[i] + s.dims()[i])
    }
}

pub fn simple_presentation(q: &Arc<Quiver>, a: VertexId) -> Result<SimplePresentation, RepError> {
    check_vertex(q, a)?;
    let succ = q.out_arrows(a);
    let heads: Vec<VertexId> = succ.iter().map(|&s| q.endpoints(s).1).collect();
    let mut all = vec![a];
    all.extend(&heads);
    let ps = projectives_on_common(q, &all, &vec![1; q.tails().len()])?;
    let pa = &ps[0];
    let w = pa.rep.window().clone();
    let simple = simple_at(q, a)?.extended(w.depths());
    let a_idx = w.index_of(a).expect("inside window");
    let cover_comps = (0..w.len())
        .map(|v| {
            let mut m = Matrix::zeros(simple.dims()[v], pa.rep.dims()[v]);
            if v == a_idx {
                m.set(0, 0, crate::linalg::q(1));
            }
            m
        })
        .collect();
    let cover = RepMorphism::new(&pa.rep, &simple, cover_comps)?;

    let summands: Vec<StableRep> = ps[1..].iter().map(|p| p.rep.clone()).collect();
    let kernel = direct_sum_all(q, &summands)?.extended(w.depths());
    let comps = (0..w.len())
        .map(|v| {
            let lookup: HashMap<&Path, usize> = pa.paths[v].iter().enumerate().map(|(i, p)| (p, i)).collect();
            let blocks: Vec<Matrix> = succ
                .iter()
                .zip(&ps[1..])
                .map(|(&alpha, ph)| {
                    let mut m = Matrix::zeros(pa.paths[v].len(), ph.paths[v].len());
                    for (j, qp) in ph.paths[v].iter().enumerate() {
                        let mut full = vec![alpha];
                        full.extend(qp);
                        let i = lookup[&full];
                        m.set(i, j, crate::linalg::q(1));
                    }
                    m
                })
                .collect();
            Matrix::hcat(pa.paths[v].len(), &blocks)
        })
        .collect();
    let inclusion = RepMorphism::new(&kernel, &pa.rep, comps)?;
    Ok(SimplePresentation {
        simple,
        projective: pa.rep.clone(),
        kernel,
        heads,
        inclusion,
        cover,
    })
}

/// The thin representation `M(w)` of a simple walk: `k` on the walk's
/// vertices, identity on its arrows, zero elsewhere.
pub fn walk_rep(q: &Arc<Quiver>, walk: &Walk) -> Result<StableRep, RepError> {
    if !walk.is_simple() {
        return Err(RepError::NotSimpleWalk);
    }
    let mut depths: Vec<usize> = walk.max_depths(q.tails().len()).iter().map(|d| d + 1).collect();
    let mut tags = vec![TailTag::Zero; q.tails().len()];
    for (k, d0) in walk.infinite_ends() {
        depths[k] = depths[k].max(d0.max(1) + 1);
        tags[k] = TailTag::Stable(1);
    }
    let w = Window::new(q, &depths)?;
    let dims: Vec<usize> = w
        .vertices()
        .iter()
        .map(|&v| usize::from(walk.contains_vertex(v)))
        .collect();
    let maps = w
        .arrows()
        .iter()
        .map(|a| {
            if walk.contains_arrow(a.id) {
                Matrix::identity(1)
            } else {
                Matrix::zeros(dims[a.to], dims[a.from])
            }
        })
        .collect();
    StableRep::from_window_data(q.clone(), w, dims, maps, tags)
}

impl StableRep {
    /// Replaces the quiver handle with an equal one.
    pub(crate) fn with_quiver(mut self, q: Arc<Quiver>) -> StableRep {
        debug_assert_eq!(*self.quiver, *q);
        self.quiver = q;
        self
    }
}
