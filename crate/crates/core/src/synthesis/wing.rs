use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::SynthesisError;

/// An interval of integers; `None` ends are unbounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WingInterval {
    pub lo: Option<i64>,
    pub hi: Option<i64>,
}

impl WingInterval {
    pub fn finite(lo: i64, hi: i64) -> WingInterval {
        WingInterval {
            lo: Some(lo),
            hi: Some(hi),
        }
    }

    pub fn all() -> WingInterval {
        WingInterval { lo: None, hi: None }
    }

    pub fn is_finite(&self) -> bool {
        self.lo.is_some() && self.hi.is_some()
    }

    fn is_empty(&self) -> bool {
        matches!((self.lo, self.hi), (Some(a), Some(b)) if a > b)
    }
}

/// The part of `ℤA∞` to materialize for infinite intervals:
/// `i_min ≤ i ≤ i_max` and levels `1..=max_level`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WingWindow {
    pub i_min: i64,
    pub i_max: i64,
    pub max_level: usize,
}

/// A finite piece of `ℤA∞` in `(i, level)` coordinates. `(i, 1)` are the
/// quasi-simple vertices; arrows are `(i, l) → (i, l+1)` and
/// `(i, l) → (i+1, l-1)`, and `τ(i, l) = (i-1, l)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TranslationFragment {
    pub vertices: Vec<(i64, usize)>,
    pub arrows: Vec<(usize, usize)>,
    /// `(v, τv)` whenever both lie in the fragment.
    pub tau: Vec<(usize, usize)>,
}

impl TranslationFragment {
    fn from_vertices(mut vertices: Vec<(i64, usize)>) -> TranslationFragment {
        vertices.sort_by_key(|&(i, l)| (l, i));
        let index: BTreeMap<(i64, usize), usize> = vertices.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let mut arrows = Vec::new();
        let mut tau = Vec::new();
        for (k, &(i, l)) in vertices.iter().enumerate() {
            let mut targets = vec![(i, l + 1)];
            if l >= 2 {
                targets.push((i + 1, l - 1));
            }
            for t in targets {
                if let Some(&j) = index.get(&t) {
                    arrows.push((k, j));
                }
            }
            if let Some(&j) = index.get(&(i - 1, l)) {
                tau.push((k, j));
            }
        }
        TranslationFragment { vertices, arrows, tau }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Whether `(i, l)` lies in the wing of `I`: its quasi-composition factors
/// `a_i, ..., a_{i+l-1}` all have indices in `I`.
pub fn in_wing(iv: &WingInterval, (i, l): (i64, usize)) -> bool {
    l >= 1 && iv.lo.is_none_or(|a| i >= a) && iv.hi.is_none_or(|b| i + l as i64 - 1 <= b)
}

/// The quasi-wing `W_I`, whole for finite `I` and cut to `window` otherwise.
pub fn quasi_wing(iv: &WingInterval, window: Option<&WingWindow>) -> Result<TranslationFragment, SynthesisError> {
    if iv.is_empty() {
        return Err(SynthesisError::EmptyInterval);
    }
    let (i_min, i_max, max_level) = match (iv.lo, iv.hi) {
        (Some(a), Some(b)) => (a, b, (b - a + 1) as usize),
        _ => {
            let w = window.ok_or(SynthesisError::MissingWindow)?;
            (w.i_min, w.i_max, w.max_level)
        }
    };
    let mut vertices = Vec::new();
    for l in 1..=max_level {
        for i in i_min..=i_max {
            if in_wing(iv, (i, l)) {
                vertices.push((i, l));
            }
        }
    }
    Ok(TranslationFragment::from_vertices(vertices))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(quasi_wing(&WingInterval::finite(5, 5), None).unwrap().len(), 1);
        let w3 = quasi_wing(&WingInterval::finite(0, 2), None).unwrap();
        assert_eq!(w3.len(), 6);
        assert_eq!(w3.arrows.len(), 6);
        assert!(matches!(
            quasi_wing(&WingInterval::finite(1, 0), None),
            Err(SynthesisError::EmptyInterval)
        ));
    }

    #[test]
    fn band_of_the_whole_tube() {
        let w = WingWindow {
            i_min: 0,
            i_max: 3,
            max_level: 5,
        };
        let band = quasi_wing(&WingInterval::all(), Some(&w)).unwrap();
        assert_eq!(band.len(), 20);
        assert!(matches!(
            quasi_wing(&WingInterval::all(), None),
            Err(SynthesisError::MissingWindow)
        ));
    }

    #[test]
    fn half_infinite() {
        let w = WingWindow {
            i_min: -5,
            i_max: 5,
            max_level: 3,
        };
        let right = quasi_wing(&WingInterval { lo: Some(0), hi: None }, Some(&w)).unwrap();
        assert!(right.vertices.iter().all(|&(i, _)| i >= 0));
        let left = quasi_wing(&WingInterval { lo: None, hi: Some(0) }, Some(&w)).unwrap();
        assert!(left.vertices.iter().all(|&(i, l)| i + l as i64 - 1 <= 0));
    }
}
