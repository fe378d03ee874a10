use serde::Serialize;

use super::{Dir, Quiver, QuiverError, VertexId, Window};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum DynkinType {
    #[serde(rename = "A_inf")]
    AInf,
    #[serde(rename = "D_inf")]
    DInf,
    #[serde(rename = "A_inf_inf")]
    AInfInf,
    #[serde(rename = "not_dynkin")]
    NotDynkin,
}

impl DynkinType {
    pub fn as_str(self) -> &'static str {
        match self {
            DynkinType::AInf => "A_inf",
            DynkinType::DInf => "D_inf",
            DynkinType::AInfInf => "A_inf_inf",
            DynkinType::NotDynkin => "not_dynkin",
        }
    }
}

/// A finite full convex subquiver `Γ` and the vertices where rays and
/// corays are attached to it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarWitness {
    /// How far into each tail `Γ` reaches (0 means only the attachment).
    pub gamma_depths: Vec<usize>,
    pub gamma: Vec<String>,
    /// Start vertices of the attached rays.
    pub rays: Vec<String>,
    /// End vertices of the attached corays.
    pub corays: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub star: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<StarWitness>,
    pub dynkin: DynkinType,
    pub sourced: bool,
    pub sinked: bool,
}

pub fn classify_quiver(q: &Quiver) -> Result<ClassificationReport, QuiverError> {
    if q.tails().is_empty() {
        return Err(QuiverError::Finite);
    }
    if !is_connected(q) {
        return Err(QuiverError::Disconnected);
    }
    let star = q.tails().iter().all(|t| t.word.eventual().is_some());
    let witness = star.then(|| witness_candidate(q).1);
    Ok(ClassificationReport {
        star,
        witness,
        dynkin: dynkin_type(q),
        sourced: q.tails().iter().any(|t| t.word.eventual() == Some(Dir::Out)),
        sinked: q.tails().iter().any(|t| t.word.eventual() == Some(Dir::In)),
    })
}

fn is_connected(q: &Quiver) -> bool {
    let n = q.core_len();
    if n == 0 {
        return false;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for a in q.core_arrows() {
        let (x, y) = (find(&mut parent, a.from), find(&mut parent, a.to));
        parent[x] = y;
    }
    let root = find(&mut parent, 0);
    (0..n).all(|v| find(&mut parent, v) == root)
}

/// Underlying graph with each tail collapsed to a single leaf marker.
fn dynkin_type(q: &Quiver) -> DynkinType {
    let n = q.core_len();
    let tails = q.tails().len();
    let total = n + tails;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); total];
    for a in q.core_arrows() {
        adj[a.from].push(a.to);
        adj[a.to].push(a.from);
    }
    for (k, t) in q.tails().iter().enumerate() {
        adj[t.attach].push(n + k);
        adj[n + k].push(t.attach);
    }
    let edges: usize = adj.iter().map(Vec::len).sum::<usize>() / 2;
    // connected (checked by the caller) and |E| = |V| - 1
    let tree = edges + 1 == total
        && adj.iter().enumerate().all(|(v, nb)| {
            let mut s = nb.clone();
            s.sort_unstable();
            s.dedup();
            s.len() == nb.len() && !nb.contains(&v)
        });
    if !tree {
        return DynkinType::NotDynkin;
    }
    let deg = |v: usize| adj[v].len();
    let branch: Vec<usize> = (0..total).filter(|&v| deg(v) >= 3).collect();
    match (tails, branch.as_slice()) {
        (1, []) => DynkinType::AInf,
        (2, []) => DynkinType::AInfInf,
        (1, &[b]) if deg(b) == 3 => {
            let leaves = adj[b].iter().filter(|&&u| u < n && deg(u) == 1).count();
            if leaves >= 2 {
                DynkinType::DInf
            } else {
                DynkinType::NotDynkin
            }
        }
        _ => DynkinType::NotDynkin,
    }
}

/// Builds `Γ` as the core plus each tail's preperiod, extended by one vertex
/// where two tails would otherwise share an attachment vertex.
pub(crate) fn witness_candidate(q: &Quiver) -> (Vec<usize>, StarWitness) {
    let mut depths: Vec<usize> = q.tails().iter().map(|t| t.word.pre().len()).collect();
    let mut used = std::collections::HashSet::new();
    for (k, t) in q.tails().iter().enumerate() {
        if depths[k] == 0 && !used.insert(t.attach) {
            depths[k] = 1;
        }
    }
    let mut gamma: Vec<String> = q.core_vertices().to_vec();
    let (mut rays, mut corays) = (Vec::new(), Vec::new());
    for (k, t) in q.tails().iter().enumerate() {
        gamma.extend((1..=depths[k]).map(|d| q.vertex_name(VertexId::Tail { tail: k, depth: d })));
        let anchor = q.vertex_name(q.tail_vertex(k, depths[k]));
        match t.word.dir_at(depths[k] + 1) {
            Dir::Out => rays.push(anchor),
            Dir::In => corays.push(anchor),
        }
    }
    let w = StarWitness {
        gamma_depths: depths.clone(),
        gamma,
        rays,
        corays,
    };
    (depths, w)
}

impl StarWitness {
    /// Checks the star-quiver definition clause by clause on a window two
    /// steps past `Γ`: every vertex outside `Γ` lies on exactly one added
    /// line, anchors are pairwise distinct, and each added line is a ray
    /// (arrows pointing away) or a coray (arrows pointing back) throughout.
    pub fn verify(&self, q: &Quiver) -> bool {
        let depths: Vec<usize> = self.gamma_depths.iter().map(|d| d + 2).collect();
        let Ok(w) = Window::new(q, &depths) else {
            return false;
        };
        let mut anchors: Vec<&String> = self.rays.iter().chain(&self.corays).collect();
        let count = anchors.len();
        anchors.sort();
        anchors.dedup();
        if anchors.len() != count || count != q.tails().len() {
            return false;
        }
        for (k, &g) in self.gamma_depths.iter().enumerate() {
            let anchor = q.vertex_name(q.tail_vertex(k, g));
            let is_ray = self.rays.contains(&anchor);
            if !is_ray && !self.corays.contains(&anchor) {
                return false;
            }
            for d in g + 1..=g + 2 {
                let inner = w.index_of(q.tail_vertex(k, d - 1)).expect("inside window");
                let outer = w.index_of(q.tail_vertex(k, d)).expect("inside window");
                let arrows: Vec<_> = w
                    .arrows()
                    .iter()
                    .filter(|a| (a.from == inner && a.to == outer) || (a.from == outer && a.to == inner))
                    .collect();
                if arrows.len() != 1 {
                    return false;
                }
                let points_out = arrows[0].from == inner;
                if points_out != is_ray {
                    return false;
                }
                // the added vertex has no other neighbours
                let degree = w.arrows().iter().filter(|a| a.from == outer || a.to == outer).count();
                let expected = if d == depths[k] { 1 } else { 2 };
                if degree != expected {
                    return false;
                }
            }
        }
        true
    }
}

/// Whether some construction of `Γ` satisfies the star definition.
pub fn star_by_witness(q: &Quiver) -> bool {
    witness_candidate(q).1.verify(q)
}
