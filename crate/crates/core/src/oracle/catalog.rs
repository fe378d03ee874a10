use std::sync::Arc;

use crate::linalg::{span_dim, Matrix};
use crate::quiver::{quiver, Dir, Quiver, VertexId, Window};
use crate::rep::{hom_space, injective_at, projective_at, RepMorphism, StableRep};

use super::OracleError;

/// Largest linear quiver the oracle accepts.
pub const MAX_VERTICES: usize = 12;

/// `1 - 2 - ... - n` with arrow `a{i}` between `i` and `i+1`, pointing right
/// when `dirs[i-1]` is `Out`.
pub fn linear_quiver(dirs: &[Dir]) -> Quiver {
    let names: Vec<String> = (1..=dirs.len() + 1).map(|i| i.to_string()).collect();
    let arrows: Vec<(String, String, String)> = dirs
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let (a, b) = (names[i].clone(), names[i + 1].clone());
            let (from, to) = match d {
                Dir::Out => (a, b),
                Dir::In => (b, a),
            };
            (format!("a{}", i + 1), from, to)
        })
        .collect();
    let vs: Vec<&str> = names.iter().map(String::as_str).collect();
    let arr: Vec<(&str, &str, &str)> = arrows
        .iter()
        .map(|(i, f, t)| (i.as_str(), f.as_str(), t.as_str()))
        .collect();
    quiver(&vs, &arr, &[])
}

/// All `2^(n-1)` orientations of the line with `n` vertices.
pub fn linear_orientations(n: usize) -> Vec<Vec<Dir>> {
    let m = n.saturating_sub(1);
    (0..1u32 << m)
        .map(|bits| {
            (0..m)
                .map(|i| if bits >> i & 1 == 0 { Dir::Out } else { Dir::In })
                .collect()
        })
        .collect()
}

/// Support `[lo, hi]` in line positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
}

/// Every indecomposable of a linear quiver (the interval modules) with all
/// hom bases.
#[derive(Clone, Debug)]
pub struct IndecomposableCatalog {
    quiver: Arc<Quiver>,
    line: Vec<usize>,
    intervals: Vec<Interval>,
    modules: Vec<StableRep>,
    homs: Vec<Vec<RepMorphism>>,
}

/// Core vertex indices in line order, starting from the lowest-numbered end.
fn line_order(q: &Quiver) -> Result<Vec<usize>, OracleError> {
    if !q.tails().is_empty() {
        return Err(OracleError::HasTails);
    }
    let n = q.core_len();
    if n == 0 || q.core_arrows().len() != n - 1 {
        return Err(OracleError::NotLinear);
    }
    let mut adj = vec![Vec::new(); n];
    for a in q.core_arrows() {
        if a.from == a.to {
            return Err(OracleError::NotLinear);
        }
        adj[a.from].push(a.to);
        adj[a.to].push(a.from);
    }
    if adj.iter().any(|v| v.len() > 2) {
        return Err(OracleError::NotLinear);
    }
    let start = (0..n).find(|&v| adj[v].len() <= 1).ok_or(OracleError::NotLinear)?;
    let mut line = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&next) = adj[cur].iter().find(|&&x| x != prev) {
        if line.contains(&next) {
            return Err(OracleError::NotLinear);
        }
        line.push(next);
        prev = cur;
        cur = next;
    }
    if line.len() != n {
        return Err(OracleError::NotLinear);
    }
    Ok(line)
}

fn interval_module(q: &Arc<Quiver>, line: &[usize], iv: Interval) -> Result<StableRep, OracleError> {
    let w = Window::new(q, &[])?;
    let mut inside = vec![false; q.core_len()];
    for &v in &line[iv.lo..=iv.hi] {
        inside[v] = true;
    }
    let dims: Vec<usize> = inside.iter().map(|&b| usize::from(b)).collect();
    let maps = w
        .arrows()
        .iter()
        .map(|a| {
            if inside[a.from] && inside[a.to] {
                Matrix::identity(1)
            } else {
                Matrix::zeros(dims[a.to], dims[a.from])
            }
        })
        .collect();
    Ok(StableRep::from_window_data(q.clone(), w, dims, maps, vec![])?)
}

/// Builds the catalog: `n(n+1)/2` interval modules ordered by `(lo, hi)` and
/// a hom basis for every ordered pair.
pub fn build_catalog(q: &Arc<Quiver>) -> Result<IndecomposableCatalog, OracleError> {
    let line = line_order(q)?;
    let n = line.len();
    if n > MAX_VERTICES {
        return Err(OracleError::TooLarge(n));
    }
    let intervals: Vec<Interval> = (0..n)
        .flat_map(|lo| (lo..n).map(move |hi| Interval { lo, hi }))
        .collect();
    let modules = intervals
        .iter()
        .map(|&iv| interval_module(q, &line, iv))
        .collect::<Result<Vec<_>, _>>()?;
    assert_eq!(modules.len(), n * (n + 1) / 2);
    let mut homs = Vec::with_capacity(modules.len() * modules.len());
    for m in &modules {
        for k in &modules {
            homs.push(hom_space(m, k)?);
        }
    }
    Ok(IndecomposableCatalog {
        quiver: q.clone(),
        line,
        intervals,
        modules,
        homs,
    })
}

impl IndecomposableCatalog {
    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    /// Core vertex indices in line order.
    pub fn line(&self) -> &[usize] {
        &self.line
    }

    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    pub fn modules(&self) -> &[StableRep] {
        &self.modules
    }

    pub fn module(&self, i: usize) -> &StableRep {
        &self.modules[i]
    }

    pub fn interval(&self, i: usize) -> Interval {
        self.intervals[i]
    }

    /// `M[x,y]` with the end vertex names in line order.
    pub fn label(&self, i: usize) -> String {
        let iv = self.intervals[i];
        let name = |p: usize| self.quiver.core_vertices()[self.line[p]].clone();
        format!("M[{},{}]", name(iv.lo), name(iv.hi))
    }

    pub fn hom(&self, i: usize, j: usize) -> &[RepMorphism] {
        &self.homs[i * self.len() + j]
    }

    /// Catalog index of a representation with the same dimension vector.
    /// Interval modules are determined by their support.
    pub fn index_of(&self, m: &StableRep) -> Option<usize> {
        let m = m.extended(&[]);
        self.modules.iter().position(|x| x.dims() == m.dims())
    }

    /// Indices of the projectives `P_v`, in core vertex order.
    pub fn projectives(&self) -> Result<Vec<usize>, OracleError> {
        (0..self.quiver.core_len())
            .map(|v| {
                let p = projective_at(&self.quiver, VertexId::Core(v))?;
                self.index_of(&p).ok_or(OracleError::NotInCatalog)
            })
            .collect()
    }

    /// Indices of the injectives `I_v`, in core vertex order.
    pub fn injectives(&self) -> Result<Vec<usize>, OracleError> {
        (0..self.quiver.core_len())
            .map(|v| {
                let p = injective_at(&self.quiver, VertexId::Core(v))?;
                self.index_of(&p).ok_or(OracleError::NotInCatalog)
            })
            .collect()
    }
}

/// `rad` and `rad²` between every pair of catalog modules.
#[derive(Clone, Debug)]
pub struct RadicalFiltration {
    n: usize,
    rad: Vec<Vec<RepMorphism>>,
    rad2: Vec<Vec<Matrix>>,
}

/// A basis of the radical of `End(M)`: the kernel of the trace form.
fn radical_endomorphisms(basis: &[RepMorphism]) -> Vec<RepMorphism> {
    let r = basis.len();
    let mut gram = Matrix::zeros(r, r);
    for i in 0..r {
        for j in 0..r {
            let t = basis[i]
                .comps()
                .iter()
                .zip(basis[j].comps())
                .fold(crate::linalg::q(0), |acc, (a, b)| acc + (a * b).trace());
            gram.set(i, j, t);
        }
    }
    let ker = gram.kernel();
    (0..ker.cols())
        .map(|c| {
            let coeffs: Vec<_> = (0..r).map(|i| ker.get(i, c).clone()).collect();
            RepMorphism::combination(basis, &coeffs)
        })
        .collect()
}

pub fn radical_filtration(cat: &IndecomposableCatalog) -> RadicalFiltration {
    let n = cat.len();
    let mut rad = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            rad.push(if i == j {
                radical_endomorphisms(cat.hom(i, i))
            } else {
                cat.hom(i, j).to_vec()
            });
        }
    }
    let mut rad2 = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let target = rad[i * n + j].len();
            let mut span: Vec<Matrix> = Vec::new();
            let mut dim = 0;
            'outer: for x in 0..n {
                let (fs, gs) = (&rad[i * n + x], &rad[x * n + j]);
                if fs.is_empty() || gs.is_empty() {
                    continue;
                }
                for f in fs {
                    for g in gs {
                        let h = g.compose(f).expect("catalog morphisms compose");
                        if h.is_zero() {
                            continue;
                        }
                        span.push(h.flatten());
                        let d = span_dim(&span);
                        if d == dim {
                            span.pop();
                        }
                        dim = d.max(dim);
                        if dim == target {
                            break 'outer;
                        }
                    }
                }
            }
            rad2.push(span);
        }
    }
    RadicalFiltration { n, rad, rad2 }
}

impl RadicalFiltration {
    pub fn rad(&self, i: usize, j: usize) -> &[RepMorphism] {
        &self.rad[i * self.n + j]
    }

    pub fn rad_dim(&self, i: usize, j: usize) -> usize {
        self.rad(i, j).len()
    }

    /// Flattened basis of `rad²(M_i, M_j)`.
    pub fn rad2_basis(&self, i: usize, j: usize) -> &[Matrix] {
        &self.rad2[i * self.n + j]
    }

    pub fn rad2_dim(&self, i: usize, j: usize) -> usize {
        self.rad2_basis(i, j).len()
    }

    /// Number of arrows `M_i → M_j` in the Auslander-Reiten quiver.
    pub fn arrow_count(&self, i: usize, j: usize) -> usize {
        self.rad_dim(i, j) - self.rad2_dim(i, j)
    }

    /// All `(i, j, count)` with a positive count, in index order.
    pub fn ar_arrows(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                let c = self.arrow_count(i, j);
                if c > 0 {
                    out.push((i, j, c));
                }
            }
        }
        out
    }

    /// Whether `f` (flattened, between `M_i` and `M_j`) lies in `rad²`.
    pub fn in_rad2(&self, i: usize, j: usize, f: &RepMorphism) -> bool {
        if f.is_zero() {
            return true;
        }
        let basis = self.rad2_basis(i, j);
        if basis.is_empty() {
            return false;
        }
        Matrix::hcat(basis[0].rows(), basis).spans(&f.flatten())
    }

    /// Representatives of `rad(M_i, M_j)` modulo `rad²`, one per arrow.
    pub fn irreducible_representatives(&self, i: usize, j: usize) -> Vec<RepMorphism> {
        let mut span: Vec<Matrix> = self.rad2_basis(i, j).to_vec();
        let mut out = Vec::new();
        for f in self.rad(i, j) {
            let before = span_dim(&span);
            span.push(f.flatten());
            if span_dim(&span) > before {
                out.push(f.clone());
            } else {
                span.pop();
            }
        }
        out
    }
}
