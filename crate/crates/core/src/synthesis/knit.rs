use std::sync::Arc;

use serde::Serialize;

use crate::quiver::{Quiver, VertexId, Window};
use crate::rep::{injective_at, projective_at, RepError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KnitStatus {
    Resolved,
    /// The mesh touches the window boundary or an unresolved vertex.
    Unresolved,
}

/// A vertex `(slice, x)` of `ℕQ^op` (or `ℕ⁻Q^op`, with negative slices).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KnitVertex {
    pub slice: i64,
    pub vertex: String,
    #[serde(skip)]
    pub id: VertexId,
    pub status: KnitStatus,
    /// Dimension vector on the window, for resolved vertices.
    pub dims: Option<Vec<usize>>,
}

/// The knitted part of the preprojective (or preinjective) component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KnittedComponent {
    pub preinjective: bool,
    /// Window vertex names; dimension vectors follow this order.
    pub window: Vec<String>,
    pub vertices: Vec<KnitVertex>,
    pub arrows: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Cell {
    Absent,
    Unresolved,
    Resolved(Vec<usize>),
}

/// Dimension vector of `m` on the window `w`.
fn on_window(m: &crate::rep::StableRep, w: &Window) -> Vec<usize> {
    w.vertices().iter().map(|&v| m.dim(v)).collect()
}

/// Knits slices `0..=depth` of the preprojective component.
///
/// Slice 0 holds the projectives `P_x` for `x` in the window of the given
/// radius. Slice `n+1` follows from mesh additivity:
/// `dim(n+1, x) = Σ dim(successors of (n, x)) - dim(n, x)`, where the
/// successors are `(n, y)` for arrows `y → x` and `(n+1, z)` for arrows
/// `x → z`. A negative entry means `(n, x)` is injective and the vertex is
/// absent. Meshes that need data from outside the window are marked
/// unresolved, as is everything they feed into.
pub fn knit_preprojective(q: &Arc<Quiver>, depth: usize, radius: usize) -> Result<KnittedComponent, RepError> {
    let finite = q.tails().is_empty();
    let w = Window::new(q, &vec![radius.max(1); q.tails().len()])?;
    let len = w.len();
    let edge: Vec<bool> = w
        .vertices()
        .iter()
        .map(|&v| matches!(v, VertexId::Tail { tail, depth } if depth == w.depth(tail)))
        .collect();
    let injectives = w
        .vertices()
        .iter()
        .map(|&v| Ok(on_window(&injective_at(q, v)?, &w)))
        .collect::<Result<Vec<_>, RepError>>()?;
    let first = w
        .vertices()
        .iter()
        .map(|&v| Ok(Cell::Resolved(on_window(&projective_at(q, v)?, &w))))
        .collect::<Result<Vec<_>, RepError>>()?;
    let mut order = w.topological_order();
    order.reverse();
    let incoming: Vec<Vec<usize>> = (0..len)
        .map(|x| w.incoming(x).iter().map(|&a| w.arrows()[a].from).collect())
        .collect();
    let outgoing: Vec<Vec<usize>> = (0..len)
        .map(|x| w.outgoing(x).iter().map(|&a| w.arrows()[a].to).collect())
        .collect();
    let touches_boundary = |v: &[usize]| edge.iter().zip(v).any(|(&e, &d)| e && d > 0);

    let mut slices: Vec<Vec<Cell>> = vec![first];
    for _ in 0..depth {
        let prev = slices.last().expect("slice 0").clone();
        let mut next = vec![Cell::Absent; len];
        for &x in &order {
            let base = match &prev[x] {
                Cell::Absent => continue,
                Cell::Unresolved => {
                    next[x] = Cell::Unresolved;
                    continue;
                }
                Cell::Resolved(d) => d,
            };
            if edge[x] {
                next[x] = Cell::Unresolved;
                continue;
            }
            let succ: Vec<&Cell> = incoming[x]
                .iter()
                .map(|&y| &prev[y])
                .chain(outgoing[x].iter().map(|&z| &next[z]))
                .collect();
            if succ.iter().any(|c| **c == Cell::Unresolved) {
                next[x] = Cell::Unresolved;
                continue;
            }
            let mut sum: Vec<i64> = base.iter().map(|&d| -(d as i64)).collect();
            for c in succ {
                if let Cell::Resolved(d) = c {
                    for (s, &v) in sum.iter_mut().zip(d) {
                        *s += v as i64;
                    }
                }
            }
            next[x] = if sum.iter().any(|&s| s < 0) {
                Cell::Absent
            } else if injectives.iter().any(|i| i == base) {
                // Supports are connected, so a match away from the boundary
                // is a match of the whole representation.
                if finite || !touches_boundary(base) {
                    Cell::Absent
                } else {
                    Cell::Unresolved
                }
            } else if sum.iter().all(|&s| s == 0) {
                if finite {
                    Cell::Absent
                } else {
                    Cell::Unresolved
                }
            } else {
                Cell::Resolved(sum.into_iter().map(|s| s as usize).collect())
            };
        }
        slices.push(next);
    }

    let mut index = vec![vec![None; len]; slices.len()];
    let mut vertices = Vec::new();
    for (n, slice) in slices.iter().enumerate() {
        for x in 0..len {
            let (status, dims) = match &slice[x] {
                Cell::Absent => continue,
                Cell::Unresolved => (KnitStatus::Unresolved, None),
                Cell::Resolved(d) => (KnitStatus::Resolved, Some(d.clone())),
            };
            index[n][x] = Some(vertices.len());
            let id = w.vertices()[x];
            vertices.push(KnitVertex {
                slice: n as i64,
                vertex: q.vertex_name(id),
                id,
                status,
                dims,
            });
        }
    }
    let mut arrows = Vec::new();
    for n in 0..slices.len() {
        for x in 0..len {
            let Some(s) = index[n][x] else { continue };
            for a in w.arrows() {
                // y → x in Q gives (n, x) → (n, y); x → z gives (n, x) → (n+1, z)
                let t = if a.to == x {
                    index[n][a.from]
                } else if a.from == x {
                    index.get(n + 1).and_then(|row| row[a.to])
                } else {
                    None
                };
                if let Some(t) = t {
                    arrows.push((s, t));
                }
            }
        }
    }
    Ok(KnittedComponent {
        preinjective: false,
        window: w.vertices().iter().map(|&v| q.vertex_name(v)).collect(),
        vertices,
        arrows,
    })
}

/// The dual construction: knit the preprojective component of `Q^op` and
/// dualize (slices negated, arrows reversed, dimension vectors kept).
pub fn knit_preinjective(q: &Arc<Quiver>, depth: usize, radius: usize) -> Result<KnittedComponent, RepError> {
    let op = Arc::new(q.op());
    let mut c = knit_preprojective(&op, depth, radius)?;
    c.preinjective = true;
    for v in &mut c.vertices {
        v.slice = -v.slice;
    }
    for a in &mut c.arrows {
        *a = (a.1, a.0);
    }
    Ok(c)
}

impl KnittedComponent {
    pub fn resolved(&self) -> impl Iterator<Item = &KnitVertex> {
        self.vertices.iter().filter(|v| v.status == KnitStatus::Resolved)
    }

    pub fn unresolved_count(&self) -> usize {
        self.vertices.len() - self.resolved().count()
    }

    /// Vertex indices at `slice`, in window order.
    pub fn slice(&self, slice: i64) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&i| self.vertices[i].slice == slice)
            .collect()
    }

    pub fn predecessors(&self, v: usize) -> Vec<usize> {
        self.arrows.iter().filter(|a| a.1 == v).map(|a| a.0).collect()
    }

    pub fn successors(&self, v: usize) -> Vec<usize> {
        self.arrows.iter().filter(|a| a.0 == v).map(|a| a.1).collect()
    }

    /// The vertex one slice further from slice 0 at the same quiver vertex.
    fn next_along(&self, v: usize) -> Option<usize> {
        let step = if self.preinjective { -1 } else { 1 };
        let x = &self.vertices[v];
        self.vertices
            .iter()
            .position(|u| u.slice == x.slice + step && u.id == x.id)
    }

    /// Resolved meshes that break additivity, as `(start, end)` pairs.
    pub fn mesh_violations(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for s in 0..self.vertices.len() {
            let Some(e) = self.next_along(s) else { continue };
            let (Some(a), Some(b)) = (&self.vertices[s].dims, &self.vertices[e].dims) else {
                continue;
            };
            let middle = if self.preinjective {
                self.predecessors(s)
            } else {
                self.successors(s)
            };
            let mut sum = vec![0usize; a.len()];
            for m in middle {
                if let Some(d) = &self.vertices[m].dims {
                    for (x, y) in sum.iter_mut().zip(d) {
                        *x += y;
                    }
                }
            }
            if sum.iter().zip(a.iter().zip(b)).any(|(m, (x, y))| *m != x + y) {
                out.push((s, e));
            }
        }
        out
    }

    /// Whether every arrow into a resolved vertex starts at a resolved
    /// vertex (preprojective) or every arrow out of one ends at one
    /// (preinjective).
    pub fn resolved_part_is_closed(&self) -> bool {
        let resolved = |i: usize| self.vertices[i].status == KnitStatus::Resolved;
        self.arrows.iter().all(|&(a, b)| {
            if self.preinjective {
                !resolved(a) || resolved(b)
            } else {
                !resolved(b) || resolved(a)
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::quiver;

    fn dims_at(c: &KnittedComponent, slice: i64, name: &str) -> Option<Vec<usize>> {
        c.vertices
            .iter()
            .find(|v| v.slice == slice && v.vertex == name)
            .and_then(|v| v.dims.clone())
    }

    #[test]
    fn a2_component() {
        let q = Arc::new(quiver(&["1", "2"], &[("a", "1", "2")], &[]));
        let c = knit_preprojective(&q, 1, 1).unwrap();
        assert_eq!(c.vertices.len(), 3);
        assert_eq!(dims_at(&c, 0, "2"), Some(vec![0, 1]));
        assert_eq!(dims_at(&c, 0, "1"), Some(vec![1, 1]));
        assert_eq!(dims_at(&c, 1, "2"), Some(vec![1, 0]));
        assert_eq!(c.arrows.len(), 2);
        assert!(c.mesh_violations().is_empty());
    }

    #[test]
    fn a3_component_has_six_vertices() {
        let q = Arc::new(quiver(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")], &[]));
        let c = knit_preprojective(&q, 2, 1).unwrap();
        assert_eq!(c.resolved().count(), 6);
        assert!(c.mesh_violations().is_empty());
        let d = knit_preinjective(&q, 2, 1).unwrap();
        assert_eq!(d.resolved().count(), 6);
        assert!(d.mesh_violations().is_empty());
    }

    #[test]
    fn ray_needs_data_from_infinity() {
        // every mesh on a ray waits for the next vertex outward
        let q = Arc::new(quiver(&["c"], &[], &[("c", "", "O")]));
        let c = knit_preprojective(&q, 2, 6).unwrap();
        assert_eq!(dims_at(&c, 0, "c"), Some(vec![1; 7]));
        assert_eq!(dims_at(&c, 0, "t0.3"), Some(vec![0, 0, 0, 1, 1, 1, 1]));
        assert!(c
            .vertices
            .iter()
            .all(|v| (v.slice == 0) == (v.status == KnitStatus::Resolved)));
        assert!(c.resolved_part_is_closed());
    }

    #[test]
    fn coray_boundary() {
        let q = Arc::new(quiver(&["c"], &[], &[("c", "", "I")]));
        let c = knit_preprojective(&q, 2, 6).unwrap();
        assert_eq!(dims_at(&c, 1, "c"), Some(vec![0, 1, 0, 0, 0, 0, 0]));
        for v in &c.vertices {
            let depth = match v.id {
                VertexId::Tail { depth, .. } => depth as i64,
                VertexId::Core(_) => 0,
            };
            assert_eq!(v.status == KnitStatus::Unresolved, depth > 6 - v.slice, "{v:?}");
        }
        assert!(c.resolved_part_is_closed());
        assert!(c.mesh_violations().is_empty());
    }
}
