use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{q, Matrix, Q};

use super::{RepError, RepMorphism, StableRep};

/// A basis of `Hom(M, N)`.
///
/// The unknowns are the components on the common window; past it every
/// component repeats the boundary one and all maps are identities, so the
/// window equations describe the whole hom space.
pub fn hom_space(m: &StableRep, n: &StableRep) -> Result<Vec<RepMorphism>, RepError> {
    let (m, n) = m.aligned(n)?;
    let w = m.window();
    let mut offsets = Vec::with_capacity(w.len());
    let mut unknowns = 0;
    for i in 0..w.len() {
        offsets.push(unknowns);
        unknowns += m.dims()[i] * n.dims()[i];
    }
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for (ai, a) in w.arrows().iter().enumerate() {
        let (c, d) = (a.from, a.to);
        let (mc, md, nc, nd) = (m.dims()[c], m.dims()[d], n.dims()[c], n.dims()[d]);
        let (ma, na) = (&m.maps()[ai], &n.maps()[ai]);
        // (f_d M(a) - N(a) f_c)[i][j] = 0 for i < nd, j < mc
        for i in 0..nd {
            for j in 0..mc {
                let mut row = vec![Q::zero(); unknowns];
                for k in 0..md {
                    let x = ma.get(k, j);
                    if !x.is_zero() {
                        row[offsets[d] + i * md + k] += x;
                    }
                }
                for k in 0..nc {
                    let x = na.get(i, k);
                    if !x.is_zero() {
                        row[offsets[c] + k * mc + j] -= x;
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let system = Matrix::from_rows(rows.len(), unknowns, rows);
    let kernel = system.kernel();
    let basis = (0..kernel.cols())
        .map(|b| {
            let comps = (0..w.len())
                .map(|v| {
                    let (r, c) = (n.dims()[v], m.dims()[v]);
                    let mut f = Matrix::zeros(r, c);
                    for i in 0..r {
                        for j in 0..c {
                            f.set(i, j, kernel.get(offsets[v] + i * c + j, b).clone());
                        }
                    }
                    f
                })
                .collect();
            RepMorphism::new_unchecked(m.clone(), n.clone(), comps)
        })
        .collect();
    Ok(basis)
}

pub fn hom_dim(m: &StableRep, n: &StableRep) -> Result<usize, RepError> {
    Ok(hom_space(m, n)?.len())
}

/// Rank of the trace form `(e, e') ↦ tr(e e')` on `End(M)`.
///
/// `End(M)` acts faithfully on the sum of the window spaces, so in
/// characteristic zero the radical of this form is the Jacobson radical and
/// the rank is `dim End(M)/rad End(M)`.
pub fn end_algebra_rank(m: &StableRep) -> Result<usize, RepError> {
    let basis = hom_space(m, m)?;
    let r = basis.len();
    let mut gram = Matrix::zeros(r, r);
    for i in 0..r {
        for j in i..r {
            let t = basis[i]
                .comps()
                .iter()
                .zip(basis[j].comps())
                .fold(Q::zero(), |acc, (a, b)| acc + (a * b).trace());
            gram.set(i, j, t.clone());
            gram.set(j, i, t);
        }
    }
    Ok(gram.rank())
}

/// `End(M)` is local with one-dimensional top. The zero representation is
/// not indecomposable.
pub fn is_indecomposable(m: &StableRep) -> Result<bool, RepError> {
    if m.is_zero() {
        return Ok(false);
    }
    Ok(end_algebra_rank(m)? == 1)
}

const ISO_TRIALS: usize = 8;

/// Searches `Hom(M, N)` for an isomorphism.
///
/// Matching dimensions and tags are checked first. Then random integer
/// combinations of a hom basis are tested; a nonzero determinant polynomial
/// vanishes on such a combination with probability at most
/// `deg / 201` per trial, so a miss after all trials means no isomorphism
/// with overwhelming probability. The seed is fixed, so results are
/// reproducible.
pub fn find_isomorphism(m: &StableRep, n: &StableRep) -> Result<Option<RepMorphism>, RepError> {
    let (m, n) = m.aligned(n)?;
    if m.dims() != n.dims() || m.tags() != n.tags() {
        return Ok(None);
    }
    let basis = hom_space(&m, &n)?;
    if basis.is_empty() {
        return Ok(if m.is_zero() {
            Some(RepMorphism::zero(&m, &n)?)
        } else {
            None
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for trial in 0..ISO_TRIALS {
        let coeffs: Vec<Q> = if trial == 0 && basis.len() == 1 {
            vec![q(1)]
        } else {
            (0..basis.len()).map(|_| q(rng.gen_range(-100..=100))).collect()
        };
        let f = RepMorphism::combination(&basis, &coeffs);
        if f.is_iso() {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

pub fn is_isomorphic(m: &StableRep, n: &StableRep) -> Result<bool, RepError> {
    Ok(find_isomorphism(m, n)?.is_some())
}
