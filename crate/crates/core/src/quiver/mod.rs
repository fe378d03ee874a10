//! Finite encodings of strongly locally finite quivers.
//!
//! A quiver is a finite acyclic core with finitely many linear tails glued
//! on. Each tail is an infinite line whose edge directions follow an
//! eventually periodic word, so the whole (infinite) quiver is described by
//! finitely many symbols.

mod classify;
mod spec;
mod walk;
mod window;
mod word;

use std::fmt;

pub use classify::{classify_quiver, star_by_witness, ClassificationReport, DynkinType, StarWitness};
pub use spec::{validate_presentation, ArrowSpec, CoreSpec, QuiverSpec, TailSpecJson, ValidationReport, Violation};
pub use walk::{make_walk, Step, Walk, WalkEnd, WalkSpec};
pub use window::{materialize_window, Window, WindowArrow};
pub use word::{format_dirs, parse_dirs, Dir, TailWord};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("arrow {arrow:?} refers to unknown vertex {vertex:?}")]
    DanglingEndpoint { arrow: String, vertex: String },
    #[error("tail {tail}: invalid direction letter {letter:?} (expected 'O' or 'I')")]
    BadLetter { tail: usize, letter: char },
    #[error("tail {tail}: period must be nonempty")]
    EmptyPeriod { tail: usize },
    #[error("invalid quiver: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("unknown arrow {0:?}")]
    UnknownArrow(String),
    #[error("unknown tail {0}")]
    UnknownTail(usize),
    #[error("window depths: expected {expected} entries, got {got}")]
    DepthCount { expected: usize, got: usize },
    #[error("window depth of tail {tail} must be at least 1")]
    ZeroDepth { tail: usize },
    #[error("quiver has no tails; classification targets infinite quivers")]
    Finite,
    #[error("quiver is not connected")]
    Disconnected,
    #[error("walk step {index}: {arrow} does not start at {vertex}")]
    WalkMismatch {
        index: usize,
        arrow: String,
        vertex: String,
    },
    #[error("walk is not simple: vertex {0} repeats")]
    NotSimple(String),
    #[error("walk continuation along tail {tail} must start on that tail")]
    BadContinuation { tail: usize },
    #[error("no route between the walk ends")]
    NoRoute,
    #[error("more than one route between the walk ends")]
    AmbiguousRoute,
}

/// A vertex of the infinite quiver.
///
/// The derived order is the canonical output order: core vertices in input
/// order, then tail vertices by `(tail, depth)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexId {
    Core(usize),
    /// `depth ≥ 1`; depth 0 is the attachment vertex, which is a core vertex.
    Tail {
        tail: usize,
        depth: usize,
    },
}

/// An arrow of the infinite quiver. `Tail { depth }` is edge `depth` of the
/// tail, joining depth `depth - 1` and `depth`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArrowId {
    Core(usize),
    Tail { tail: usize, depth: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoreArrow {
    pub id: String,
    pub from: usize,
    pub to: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tail {
    pub attach: usize,
    pub word: TailWord,
}

/// A validated quiver: acyclic core, normalized tail words, fresh names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<CoreArrow>,
    tails: Vec<Tail>,
}

impl Quiver {
    /// Validates `spec` and builds the quiver. Any semantic violation is an
    /// error here; use [`validate_presentation`] to get the full report.
    pub fn from_spec(spec: &QuiverSpec) -> Result<Quiver, QuiverError> {
        let report = validate_presentation(spec)?;
        if !report.valid {
            return Err(QuiverError::Invalid(report.violations));
        }
        spec.build_unchecked()
    }

    /// Parses and validates quiver JSON.
    pub fn from_json(text: &str) -> Result<Quiver, crate::Error> {
        let spec: QuiverSpec = serde_json::from_str(text)?;
        Ok(Quiver::from_spec(&spec)?)
    }

    pub(crate) fn from_parts(vertices: Vec<String>, arrows: Vec<CoreArrow>, tails: Vec<Tail>) -> Quiver {
        Quiver {
            vertices,
            arrows,
            tails,
        }
    }

    pub fn core_vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn core_arrows(&self) -> &[CoreArrow] {
        &self.arrows
    }

    pub fn tails(&self) -> &[Tail] {
        &self.tails
    }

    pub fn tail(&self, k: usize) -> &Tail {
        &self.tails[k]
    }

    pub fn core_len(&self) -> usize {
        self.vertices.len()
    }

    /// The opposite quiver: every arrow reversed, every tail word flipped.
    /// Names are kept.
    pub fn op(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| CoreArrow {
                    id: a.id.clone(),
                    from: a.to,
                    to: a.from,
                })
                .collect(),
            tails: self
                .tails
                .iter()
                .map(|t| Tail {
                    attach: t.attach,
                    word: t.word.flip(),
                })
                .collect(),
        }
    }

    /// `(tail, head)` of an arrow.
    pub fn endpoints(&self, a: ArrowId) -> (VertexId, VertexId) {
        match a {
            ArrowId::Core(i) => {
                let ar = &self.arrows[i];
                (VertexId::Core(ar.from), VertexId::Core(ar.to))
            }
            ArrowId::Tail { tail, depth } => {
                let lower = self.tail_vertex(tail, depth - 1);
                let upper = VertexId::Tail { tail, depth };
                match self.tails[tail].word.dir_at(depth) {
                    Dir::Out => (lower, upper),
                    Dir::In => (upper, lower),
                }
            }
        }
    }

    /// Vertex at `depth` on tail `k`; depth 0 is the attachment vertex.
    pub fn tail_vertex(&self, k: usize, depth: usize) -> VertexId {
        if depth == 0 {
            VertexId::Core(self.tails[k].attach)
        } else {
            VertexId::Tail { tail: k, depth }
        }
    }

    pub fn vertex_name(&self, v: VertexId) -> String {
        match v {
            VertexId::Core(i) => self.vertices[i].clone(),
            VertexId::Tail { tail, depth } => format!("t{tail}.{depth}"),
        }
    }

    pub fn arrow_name(&self, a: ArrowId) -> String {
        match a {
            ArrowId::Core(i) => self.arrows[i].id.clone(),
            ArrowId::Tail { tail, depth } => format!("t{tail}.e{depth}"),
        }
    }

    pub fn vertex_by_name(&self, name: &str) -> Result<VertexId, QuiverError> {
        if let Some(i) = self.vertices.iter().position(|v| v == name) {
            return Ok(VertexId::Core(i));
        }
        parse_tail_name(name, "")
            .filter(|&(t, d)| t < self.tails.len() && d >= 1)
            .map(|(tail, depth)| VertexId::Tail { tail, depth })
            .ok_or_else(|| QuiverError::UnknownVertex(name.to_string()))
    }

    pub fn arrow_by_name(&self, name: &str) -> Result<ArrowId, QuiverError> {
        if let Some(i) = self.arrows.iter().position(|a| a.id == name) {
            return Ok(ArrowId::Core(i));
        }
        parse_tail_name(name, "e")
            .filter(|&(t, d)| t < self.tails.len() && d >= 1)
            .map(|(tail, depth)| ArrowId::Tail { tail, depth })
            .ok_or_else(|| QuiverError::UnknownArrow(name.to_string()))
    }

    /// Arrows starting at `v`, in canonical arrow order.
    pub fn out_arrows(&self, v: VertexId) -> Vec<ArrowId> {
        self.incident(v)
            .into_iter()
            .filter(|&a| self.endpoints(a).0 == v)
            .collect()
    }

    /// Arrows ending at `v`, in canonical arrow order.
    pub fn in_arrows(&self, v: VertexId) -> Vec<ArrowId> {
        self.incident(v)
            .into_iter()
            .filter(|&a| self.endpoints(a).1 == v)
            .collect()
    }

    fn incident(&self, v: VertexId) -> Vec<ArrowId> {
        let mut out = Vec::new();
        match v {
            VertexId::Core(i) => {
                for (j, a) in self.arrows.iter().enumerate() {
                    if a.from == i || a.to == i {
                        out.push(ArrowId::Core(j));
                    }
                }
                for (k, t) in self.tails.iter().enumerate() {
                    if t.attach == i {
                        out.push(ArrowId::Tail { tail: k, depth: 1 });
                    }
                }
            }
            VertexId::Tail { tail, depth } => {
                out.push(ArrowId::Tail { tail, depth });
                out.push(ArrowId::Tail { tail, depth: depth + 1 });
            }
        }
        out
    }

    /// The largest preperiod plus period length over all tails. Beyond this
    /// depth every tail is purely periodic.
    pub fn max_word_span(&self) -> usize {
        self.tails
            .iter()
            .map(|t| t.word.pre().len() + t.word.period().len())
            .max()
            .unwrap_or(0)
    }
}

fn parse_tail_name(name: &str, infix: &str) -> Option<(usize, usize)> {
    let rest = name.strip_prefix('t')?;
    let (t, d) = rest.split_once('.')?;
    let d = d.strip_prefix(infix)?;
    if t.is_empty() || d.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) || !d.bytes().all(|b| b.is_ascii_digit())
    {
        return None;
    }
    Some((t.parse().ok()?, d.parse().ok()?))
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "core {:?}", self.vertices)?;
        for a in &self.arrows {
            write!(f, ", {}: {}->{}", a.id, self.vertices[a.from], self.vertices[a.to])?;
        }
        for (k, t) in self.tails.iter().enumerate() {
            write!(f, ", tail {k} at {} {}", self.vertices[t.attach], t.word)?;
        }
        Ok(())
    }
}

/// Builds a quiver from compact text: `vertices`, arrows as `(id, from, to)`
/// and tails as `(attach, preperiod, period)`. Panics on invalid input; this
/// is meant for tests and examples.
pub fn quiver(vertices: &[&str], arrows: &[(&str, &str, &str)], tails: &[(&str, &str, &str)]) -> Quiver {
    let spec = QuiverSpec {
        core: CoreSpec {
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            arrows: arrows
                .iter()
                .map(|(id, from, to)| ArrowSpec {
                    id: id.to_string(),
                    from: from.to_string(),
                    to: to.to_string(),
                })
                .collect(),
        },
        tails: tails
            .iter()
            .map(|(attach, pre, period)| TailSpecJson {
                attach: attach.to_string(),
                preperiod: pre.to_string(),
                period: period.to_string(),
            })
            .collect(),
    };
    Quiver::from_spec(&spec).expect("invalid quiver")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        let q = quiver(&["0"], &[], &[("0", "", "IO")]);
        let v = VertexId::Tail { tail: 0, depth: 3 };
        assert_eq!(q.vertex_name(v), "t0.3");
        assert_eq!(q.vertex_by_name("t0.3").unwrap(), v);
        assert_eq!(q.arrow_by_name("t0.e2").unwrap(), ArrowId::Tail { tail: 0, depth: 2 });
        assert!(q.vertex_by_name("t1.1").is_err());
        assert!(q.vertex_by_name("t0.0").is_err());
    }

    #[test]
    fn zigzag_endpoints() {
        let q = quiver(&["0"], &[], &[("0", "", "IO")]);
        let e = |d| q.endpoints(ArrowId::Tail { tail: 0, depth: d });
        // arrows 1->0, 1->2, 3->2
        assert_eq!(e(1), (VertexId::Tail { tail: 0, depth: 1 }, VertexId::Core(0)));
        assert_eq!(
            e(2),
            (
                VertexId::Tail { tail: 0, depth: 1 },
                VertexId::Tail { tail: 0, depth: 2 }
            )
        );
        assert_eq!(
            e(3),
            (
                VertexId::Tail { tail: 0, depth: 3 },
                VertexId::Tail { tail: 0, depth: 2 }
            )
        );
        assert_eq!(q.out_arrows(VertexId::Tail { tail: 0, depth: 1 }).len(), 2);
        assert_eq!(q.in_arrows(VertexId::Core(0)).len(), 1);
    }

    #[test]
    fn op_is_an_involution() {
        let q = quiver(&["a", "b"], &[("x", "a", "b")], &[("b", "I", "O")]);
        assert_eq!(q.op().op(), q);
        assert_eq!(q.op().tail(0).word.period(), &[Dir::In]);
    }
}
