use super::{ArrowId, Quiver, QuiverError, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WindowArrow {
    pub id: ArrowId,
    /// Index of the tail vertex in [`Window::vertices`].
    pub from: usize,
    /// Index of the head vertex in [`Window::vertices`].
    pub to: usize,
}

/// The full subquiver on the core plus each tail cut at a given depth.
///
/// Tails meet the rest of the quiver in a single vertex, so a window is
/// always convex: a path between two window vertices never leaves it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Window {
    depths: Vec<usize>,
    core_vertices: usize,
    core_arrows: usize,
    vertices: Vec<VertexId>,
    arrows: Vec<WindowArrow>,
}

/// Materializes the window with the given per-tail depths.
pub fn materialize_window(q: &Quiver, depths: &[usize]) -> Result<Window, QuiverError> {
    Window::new(q, depths)
}

impl Window {
    pub fn new(q: &Quiver, depths: &[usize]) -> Result<Window, QuiverError> {
        if depths.len() != q.tails().len() {
            return Err(QuiverError::DepthCount {
                expected: q.tails().len(),
                got: depths.len(),
            });
        }
        if let Some(k) = depths.iter().position(|&d| d == 0) {
            return Err(QuiverError::ZeroDepth { tail: k });
        }
        let mut vertices: Vec<VertexId> = (0..q.core_len()).map(VertexId::Core).collect();
        for (tail, &d) in depths.iter().enumerate() {
            vertices.extend((1..=d).map(|depth| VertexId::Tail { tail, depth }));
        }
        let mut w = Window {
            depths: depths.to_vec(),
            core_vertices: q.core_len(),
            core_arrows: q.core_arrows().len(),
            vertices,
            arrows: Vec::new(),
        };
        let mut ids: Vec<ArrowId> = (0..q.core_arrows().len()).map(ArrowId::Core).collect();
        for (tail, &d) in depths.iter().enumerate() {
            ids.extend((1..=d).map(|depth| ArrowId::Tail { tail, depth }));
        }
        w.arrows = ids
            .into_iter()
            .map(|id| {
                let (a, b) = q.endpoints(id);
                WindowArrow {
                    id,
                    from: w.index_of(a).expect("endpoint inside window"),
                    to: w.index_of(b).expect("endpoint inside window"),
                }
            })
            .collect();
        Ok(w)
    }

    /// The smallest window containing every given depth, with at least
    /// depth 1 everywhere.
    pub fn covering(q: &Quiver, depths: &[usize]) -> Window {
        let d: Vec<usize> = depths.iter().map(|&x| x.max(1)).collect();
        Window::new(q, &d).expect("depth vector matches the quiver")
    }

    pub fn depths(&self) -> &[usize] {
        &self.depths
    }

    pub fn depth(&self, tail: usize) -> usize {
        self.depths[tail]
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[WindowArrow] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    fn tail_offset(&self, tail: usize) -> usize {
        self.depths[..tail].iter().sum()
    }

    pub fn index_of(&self, v: VertexId) -> Option<usize> {
        match v {
            VertexId::Core(i) => (i < self.core_vertices).then_some(i),
            VertexId::Tail { tail, depth } => (tail < self.depths.len() && depth >= 1 && depth <= self.depths[tail])
                .then(|| self.core_vertices + self.tail_offset(tail) + depth - 1),
        }
    }

    pub fn arrow_index(&self, a: ArrowId) -> Option<usize> {
        match a {
            ArrowId::Core(i) => (i < self.core_arrows).then_some(i),
            ArrowId::Tail { tail, depth } => (tail < self.depths.len() && depth >= 1 && depth <= self.depths[tail])
                .then(|| self.core_arrows + self.tail_offset(tail) + depth - 1),
        }
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.index_of(v).is_some()
    }

    /// The last vertex of every tail.
    pub fn boundary(&self) -> Vec<VertexId> {
        self.depths
            .iter()
            .enumerate()
            .map(|(tail, &depth)| VertexId::Tail { tail, depth })
            .collect()
    }

    /// Vertex indices in a topological order (sources first). Ties are
    /// broken by index so the order is deterministic.
    pub fn topological_order(&self) -> Vec<usize> {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
        for a in &self.arrows {
            indeg[a.to] += 1;
            out[a.from].push(a.to);
        }
        let mut ready: std::collections::BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for &w in &out[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.insert(w);
                }
            }
        }
        debug_assert_eq!(order.len(), n, "windows of validated quivers are acyclic");
        order
    }

    /// Indices of arrows ending at vertex index `v`.
    pub fn incoming(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&i| self.arrows[i].to == v).collect()
    }

    /// Indices of arrows starting at vertex index `v`.
    pub fn outgoing(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&i| self.arrows[i].from == v).collect()
    }

    /// Componentwise maximum of two depth vectors.
    pub fn max_depths(a: &[usize], b: &[usize]) -> Vec<usize> {
        a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::quiver;

    fn arrow_names(q: &Quiver, w: &Window) -> Vec<String> {
        w.arrows()
            .iter()
            .map(|a| {
                format!(
                    "{}->{}",
                    q.vertex_name(w.vertices()[a.from]),
                    q.vertex_name(w.vertices()[a.to])
                )
            })
            .collect()
    }

    #[test]
    fn ray_depth_three() {
        let q = quiver(&["c"], &[], &[("c", "", "O")]);
        let w = materialize_window(&q, &[3]).unwrap();
        assert_eq!(arrow_names(&q, &w), ["c->t0.1", "t0.1->t0.2", "t0.2->t0.3"]);
        assert_eq!(w.boundary(), vec![VertexId::Tail { tail: 0, depth: 3 }]);
    }

    #[test]
    fn zigzag_depth_four() {
        let q = quiver(&["0"], &[], &[("0", "", "IO")]);
        let w = materialize_window(&q, &[4]).unwrap();
        assert_eq!(
            arrow_names(&q, &w),
            ["t0.1->0", "t0.1->t0.2", "t0.3->t0.2", "t0.3->t0.4"]
        );
    }

    #[test]
    fn two_sided_line() {
        let q = quiver(&["0"], &[], &[("0", "", "IO"), ("0", "", "O")]);
        let w = materialize_window(&q, &[2, 2]).unwrap();
        assert_eq!(w.len(), 5);
        assert_eq!(arrow_names(&q, &w), ["t0.1->0", "t0.1->t0.2", "0->t1.1", "t1.1->t1.2"]);
    }

    #[test]
    fn zero_depth_rejected() {
        let q = quiver(&["c"], &[], &[("c", "", "O")]);
        assert!(matches!(
            materialize_window(&q, &[0]),
            Err(QuiverError::ZeroDepth { tail: 0 })
        ));
    }

    #[test]
    fn topological_order_respects_arrows() {
        let q = quiver(&["0"], &[], &[("0", "", "IO"), ("0", "", "O")]);
        let w = Window::new(&q, &[6, 4]).unwrap();
        let order = w.topological_order();
        let pos: Vec<usize> = (0..w.len())
            .map(|v| order.iter().position(|&x| x == v).unwrap())
            .collect();
        for a in w.arrows() {
            assert!(pos[a.from] < pos[a.to]);
        }
    }
}
