use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{ArrowId, Quiver, QuiverError, VertexId, Window};

/// One signed arrow of a walk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Step {
    pub arrow: String,
    /// Traverse the arrow backwards (the formal inverse).
    #[serde(default)]
    pub inverse: bool,
}

/// One end of a walk given by [`WalkSpec::Span`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WalkEnd {
    Vertex(String),
    /// The walk runs off to infinity along this tail.
    Tail(usize),
}

impl WalkEnd {
    /// Parses `tail:K` or a vertex name.
    pub fn parse(s: &str) -> WalkEnd {
        match s.strip_prefix("tail:").and_then(|k| k.parse().ok()) {
            Some(k) => WalkEnd::Tail(k),
            None => WalkEnd::Vertex(s.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WalkSpec {
    /// Explicit steps from `start`. `before` / `after` continue the walk
    /// forever outward along a tail, before the start or after the last step.
    Steps {
        start: String,
        steps: Vec<Step>,
        #[serde(default)]
        before: Option<usize>,
        #[serde(default)]
        after: Option<usize>,
    },
    /// The unique reduced walk between two ends.
    Span { from: WalkEnd, to: WalkEnd },
}

/// A walk: a finite run of signed arrows, optionally continued to infinity
/// outward along a tail at either end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Walk {
    vertices: Vec<VertexId>,
    steps: Vec<(ArrowId, bool)>,
    before: Option<usize>,
    after: Option<usize>,
    simple: bool,
    reduced: bool,
}

impl Walk {
    /// Vertices of the finite part, in order.
    pub fn finite_vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    /// Signed arrows of the finite part; `true` marks an inverse.
    pub fn steps(&self) -> &[(ArrowId, bool)] {
        &self.steps
    }

    pub fn before(&self) -> Option<usize> {
        self.before
    }

    pub fn after(&self) -> Option<usize> {
        self.after
    }

    pub fn is_finite(&self) -> bool {
        self.before.is_none() && self.after.is_none()
    }

    pub fn is_simple(&self) -> bool {
        self.simple
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Tails along which the walk runs off to infinity, with the depth where
    /// the infinite run starts.
    pub fn infinite_ends(&self) -> Vec<(usize, usize)> {
        let depth_of = |v: VertexId, k: usize| match v {
            VertexId::Tail { tail, depth } if tail == k => depth,
            _ => 0,
        };
        let mut out = Vec::new();
        if let Some(k) = self.before {
            out.push((k, depth_of(self.vertices[0], k)));
        }
        if let Some(k) = self.after {
            out.push((k, depth_of(*self.vertices.last().expect("walks have a vertex"), k)));
        }
        out
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        if self.vertices.contains(&v) {
            return true;
        }
        match v {
            VertexId::Tail { tail, depth } => self.infinite_ends().iter().any(|&(k, d0)| k == tail && depth > d0),
            VertexId::Core(_) => false,
        }
    }

    pub fn contains_arrow(&self, a: ArrowId) -> bool {
        if self.steps.iter().any(|&(b, _)| b == a) {
            return true;
        }
        match a {
            ArrowId::Tail { tail, depth } => self.infinite_ends().iter().any(|&(k, d0)| k == tail && depth > d0),
            ArrowId::Core(_) => false,
        }
    }

    /// Deepest finite-part depth reached on each tail.
    pub fn max_depths(&self, tails: usize) -> Vec<usize> {
        let mut d = vec![0; tails];
        for v in &self.vertices {
            if let VertexId::Tail { tail, depth } = *v {
                d[tail] = d[tail].max(depth);
            }
        }
        d
    }
}

/// Builds and checks a walk.
pub fn make_walk(q: &Quiver, spec: &WalkSpec) -> Result<Walk, QuiverError> {
    match spec {
        WalkSpec::Steps {
            start,
            steps,
            before,
            after,
        } => {
            let start = q.vertex_by_name(start)?;
            let steps = steps
                .iter()
                .map(|s| Ok((q.arrow_by_name(&s.arrow)?, s.inverse)))
                .collect::<Result<Vec<_>, QuiverError>>()?;
            from_steps(q, start, steps, *before, *after)
        }
        WalkSpec::Span { from, to } => span(q, from, to),
    }
}

fn from_steps(
    q: &Quiver,
    start: VertexId,
    steps: Vec<(ArrowId, bool)>,
    before: Option<usize>,
    after: Option<usize>,
) -> Result<Walk, QuiverError> {
    let mut vertices = vec![start];
    for (i, &(a, inverse)) in steps.iter().enumerate() {
        let (t, h) = q.endpoints(a);
        let (from, to) = if inverse { (h, t) } else { (t, h) };
        let cur = *vertices.last().expect("nonempty");
        if from != cur {
            return Err(QuiverError::WalkMismatch {
                index: i,
                arrow: q.arrow_name(a) + if inverse { "^-1" } else { "" },
                vertex: q.vertex_name(cur),
            });
        }
        vertices.push(to);
    }
    for (k, v) in [(before, vertices[0]), (after, *vertices.last().expect("nonempty"))] {
        let Some(k) = k else { continue };
        if k >= q.tails().len() {
            return Err(QuiverError::UnknownTail(k));
        }
        let on_tail = match v {
            VertexId::Tail { tail, .. } => tail == k,
            VertexId::Core(i) => q.tail(k).attach == i,
        };
        if !on_tail {
            return Err(QuiverError::BadContinuation { tail: k });
        }
    }
    let reduced = steps.windows(2).all(|w| !(w[0].0 == w[1].0 && w[0].1 != w[1].1));
    let mut walk = Walk {
        vertices,
        steps,
        before,
        after,
        simple: false,
        reduced,
    };
    walk.simple = repeated_vertex(&walk).is_none();
    Ok(walk)
}

fn repeated_vertex(w: &Walk) -> Option<VertexId> {
    let mut seen = HashSet::new();
    for &v in &w.vertices {
        if !seen.insert(v) {
            return Some(v);
        }
    }
    let ends = w.infinite_ends();
    if ends.len() == 2 && ends[0].0 == ends[1].0 {
        let (k, d) = ends[0];
        return Some(VertexId::Tail {
            tail: k,
            depth: d.max(ends[1].1) + 1,
        });
    }
    for &(k, d0) in &ends {
        for &v in &w.vertices {
            if let VertexId::Tail { tail, depth } = v {
                if tail == k && depth > d0 {
                    return Some(v);
                }
            }
        }
    }
    None
}

fn span(q: &Quiver, from: &WalkEnd, to: &WalkEnd) -> Result<Walk, QuiverError> {
    let named = |e: &WalkEnd| match e {
        WalkEnd::Vertex(name) => q.vertex_by_name(name).map(Some),
        WalkEnd::Tail(k) if *k < q.tails().len() => Ok(None),
        WalkEnd::Tail(k) => Err(QuiverError::UnknownTail(*k)),
    };
    let (a, b) = (named(from)?, named(to)?);
    let mut depths = vec![1; q.tails().len()];
    for v in [a, b].into_iter().flatten() {
        if let VertexId::Tail { tail, depth } = v {
            depths[tail] = depths[tail].max(depth + 1);
        }
    }
    let w = Window::new(q, &depths)?;
    let endpoint = |e: &WalkEnd, v: Option<VertexId>| match e {
        WalkEnd::Tail(k) => VertexId::Tail {
            tail: *k,
            depth: depths[*k],
        },
        WalkEnd::Vertex(_) => v.expect("named vertex"),
    };
    let s = w.index_of(endpoint(from, a)).expect("inside window");
    let t = w.index_of(endpoint(to, b)).expect("inside window");

    let mut routes = Vec::new();
    let mut path = Vec::new();
    let mut visited = vec![false; w.len()];
    visited[s] = true;
    simple_routes(&w, s, t, &mut visited, &mut path, &mut routes);
    let route = match routes.len() {
        0 => return Err(QuiverError::NoRoute),
        1 => routes.pop().expect("one route"),
        _ => return Err(QuiverError::AmbiguousRoute),
    };
    let mut cur = s;
    let steps = route
        .into_iter()
        .map(|ai| {
            let arr = w.arrows()[ai];
            let inverse = arr.from != cur;
            cur = if inverse { arr.from } else { arr.to };
            (arr.id, inverse)
        })
        .collect();
    let tail_of = |e: &WalkEnd| match e {
        WalkEnd::Tail(k) => Some(*k),
        WalkEnd::Vertex(_) => None,
    };
    from_steps(q, w.vertices()[s], steps, tail_of(from), tail_of(to))
}

/// Collects up to two simple undirected routes from `v` to `t`.
fn simple_routes(
    w: &Window,
    v: usize,
    t: usize,
    visited: &mut [bool],
    path: &mut Vec<usize>,
    routes: &mut Vec<Vec<usize>>,
) {
    if routes.len() >= 2 {
        return;
    }
    if v == t {
        routes.push(path.clone());
        return;
    }
    for (ai, a) in w.arrows().iter().enumerate() {
        let next = if a.from == v {
            a.to
        } else if a.to == v {
            a.from
        } else {
            continue;
        };
        if visited[next] {
            continue;
        }
        visited[next] = true;
        path.push(ai);
        simple_routes(w, next, t, visited, path, routes);
        path.pop();
        visited[next] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::quiver;

    #[test]
    fn single_arrow() {
        let q = quiver(&["a", "b"], &[("x", "a", "b")], &[("b", "", "O")]);
        let w = make_walk(
            &q,
            &WalkSpec::Steps {
                start: "a".into(),
                steps: vec![Step {
                    arrow: "x".into(),
                    inverse: false,
                }],
                before: None,
                after: None,
            },
        )
        .unwrap();
        assert!(w.is_simple() && w.is_finite());
        assert_eq!(w.finite_vertices(), &[VertexId::Core(0), VertexId::Core(1)]);
    }

    #[test]
    fn back_and_forth_is_not_simple() {
        let q = quiver(&["a", "b"], &[("x", "a", "b")], &[("b", "", "O")]);
        let w = make_walk(
            &q,
            &WalkSpec::Steps {
                start: "a".into(),
                steps: vec![
                    Step {
                        arrow: "x".into(),
                        inverse: false,
                    },
                    Step {
                        arrow: "x".into(),
                        inverse: true,
                    },
                ],
                before: None,
                after: None,
            },
        )
        .unwrap();
        assert!(!w.is_simple());
        assert!(!w.is_reduced());
    }

    #[test]
    fn mismatch_is_an_error() {
        let q = quiver(&["a", "b"], &[("x", "a", "b")], &[("b", "", "O")]);
        let r = make_walk(
            &q,
            &WalkSpec::Steps {
                start: "b".into(),
                steps: vec![Step {
                    arrow: "x".into(),
                    inverse: false,
                }],
                before: None,
                after: None,
            },
        );
        assert!(matches!(r, Err(QuiverError::WalkMismatch { .. })));
    }

    #[test]
    fn zigzag_upward_from_core() {
        let q = quiver(&["0"], &[], &[("0", "", "IO")]);
        let w = make_walk(
            &q,
            &WalkSpec::Span {
                from: WalkEnd::Vertex("0".into()),
                to: WalkEnd::Tail(0),
            },
        )
        .unwrap();
        assert!(w.is_simple() && !w.is_finite());
        assert!(w.contains_vertex(VertexId::Tail { tail: 0, depth: 17 }));
        assert!(w.contains_arrow(ArrowId::Tail { tail: 0, depth: 1 }));
        // the first step goes against arrow 1 -> 0
        assert_eq!(w.steps()[0], (ArrowId::Tail { tail: 0, depth: 1 }, true));
        assert_eq!(q.tail(0).word.eventual(), None);
    }

    #[test]
    fn two_sided_line_spans_everything() {
        let q = quiver(&["0"], &[], &[("0", "", "IO"), ("0", "", "O")]);
        let w = make_walk(
            &q,
            &WalkSpec::Span {
                from: WalkEnd::Tail(1),
                to: WalkEnd::Tail(0),
            },
        )
        .unwrap();
        assert!(w.is_simple());
        for d in 1..10 {
            assert!(w.contains_vertex(VertexId::Tail { tail: 0, depth: d }));
            assert!(w.contains_vertex(VertexId::Tail { tail: 1, depth: d }));
        }
        assert!(w.contains_vertex(VertexId::Core(0)));
    }

    #[test]
    fn same_tail_twice_is_not_simple() {
        let q = quiver(&["0"], &[], &[("0", "", "O")]);
        let w = make_walk(
            &q,
            &WalkSpec::Span {
                from: WalkEnd::Tail(0),
                to: WalkEnd::Tail(0),
            },
        )
        .unwrap();
        assert!(!w.is_simple());
    }

    #[test]
    fn diamond_route_is_ambiguous() {
        let q = quiver(
            &["a", "b", "c", "d"],
            &[("x", "a", "b"), ("y", "a", "c"), ("z", "b", "d"), ("u", "c", "d")],
            &[("d", "", "O")],
        );
        let r = make_walk(
            &q,
            &WalkSpec::Span {
                from: WalkEnd::Vertex("a".into()),
                to: WalkEnd::Vertex("d".into()),
            },
        );
        assert_eq!(r.unwrap_err(), QuiverError::AmbiguousRoute);
    }
}
