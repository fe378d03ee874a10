use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::linalg::{format_q, parse_q, Matrix};
use crate::quiver::{Quiver, Window};

use super::{RepError, StableRep, TailTag};

/// Representation JSON. Vertices and arrows are named as in the quiver
/// (`t{k}.{d}` for tail vertices, `t{k}.e{d}` for tail arrows, `t{k}` for
/// tails). Omitted dimensions are zero and omitted maps are zero matrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepJson {
    pub window_depths: BTreeMap<String, usize>,
    pub dims: BTreeMap<String, usize>,
    #[serde(default)]
    pub maps: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(default)]
    pub tags: BTreeMap<String, TailTag>,
}

fn err(path: String, message: impl Into<String>) -> RepError {
    RepError::Json {
        path,
        message: message.into(),
    }
}

fn tail_index(q: &Quiver, name: &str) -> Option<usize> {
    let k: usize = name.strip_prefix('t')?.parse().ok()?;
    (k < q.tails().len() && name == format!("t{k}")).then_some(k)
}

impl RepJson {
    pub fn from_rep(m: &StableRep) -> RepJson {
        let q = m.quiver();
        let w = m.window();
        RepJson {
            window_depths: (0..q.tails().len()).map(|k| (format!("t{k}"), w.depth(k))).collect(),
            dims: m.named_dims().into_iter().collect(),
            maps: w
                .arrows()
                .iter()
                .zip(m.maps())
                .map(|(a, mat)| {
                    let rows = (0..mat.rows())
                        .map(|i| mat.row(i).iter().map(format_q).collect())
                        .collect();
                    (q.arrow_name(a.id), rows)
                })
                .collect(),
            tags: m
                .tags()
                .iter()
                .enumerate()
                .map(|(k, &t)| (format!("t{k}"), t))
                .collect(),
        }
    }

    /// Builds the representation, re-basing eventually invertible tail maps
    /// to identities.
    pub fn to_rep(&self, q: &Arc<Quiver>) -> Result<StableRep, RepError> {
        let mut depths = vec![1; q.tails().len()];
        for (name, &d) in &self.window_depths {
            let k = tail_index(q, name).ok_or_else(|| err(format!("window_depths.{name}"), "unknown tail"))?;
            if d == 0 {
                return Err(err(format!("window_depths.{name}"), "depth must be at least 1"));
            }
            depths[k] = d;
        }
        let w = Window::new(q, &depths)?;
        let mut dims = vec![0; w.len()];
        for (name, &d) in &self.dims {
            let v = q
                .vertex_by_name(name)
                .ok()
                .and_then(|v| w.index_of(v))
                .ok_or_else(|| err(format!("dims.{name}"), "vertex is not in the window"))?;
            dims[v] = d;
        }
        let mut maps: Vec<Matrix> = w
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(dims[a.to], dims[a.from]))
            .collect();
        for (name, rows) in &self.maps {
            let path = format!("maps.{name}");
            let ai = q
                .arrow_by_name(name)
                .ok()
                .and_then(|a| w.arrow_index(a))
                .ok_or_else(|| err(path.clone(), "arrow is not in the window"))?;
            let a = w.arrows()[ai];
            let (r, c) = (dims[a.to], dims[a.from]);
            let empty_ok = rows.is_empty() && (r == 0 || c == 0);
            if !empty_ok {
                if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                    return Err(err(path, format!("expected a {r}x{c} matrix")));
                }
                let mut m = Matrix::zeros(r, c);
                for (i, row) in rows.iter().enumerate() {
                    for (j, x) in row.iter().enumerate() {
                        let v = parse_q(x)
                            .ok_or_else(|| err(format!("{path}[{i}][{j}]"), format!("not a rational: {x:?}")))?;
                        m.set(i, j, v);
                    }
                }
                maps[ai] = m;
            }
        }
        let mut tags = vec![TailTag::Zero; q.tails().len()];
        for (name, &t) in &self.tags {
            let k = tail_index(q, name).ok_or_else(|| err(format!("tags.{name}"), "unknown tail"))?;
            tags[k] = t;
        }
        StableRep::new(q.clone(), w, dims, maps, tags)
    }
}
