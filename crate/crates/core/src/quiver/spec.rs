use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::word::{format_dirs, parse_dirs};
use super::{CoreArrow, Quiver, QuiverError, Tail, TailWord};

/// Quiver JSON as written by users.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverSpec {
    pub core: CoreSpec,
    #[serde(default)]
    pub tails: Vec<TailSpecJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoreSpec {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<ArrowSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowSpec {
    pub id: String,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TailSpecJson {
    pub attach: String,
    #[serde(default)]
    pub preperiod: String,
    pub period: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    DirectedCycle {
        vertices: Vec<String>,
    },
    DuplicateIdentifier {
        id: String,
    },
    MissingAttachment {
        tail: usize,
        vertex: String,
    },
    NonNormalizedWord {
        tail: usize,
        preperiod: String,
        period: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DirectedCycle { vertices } => {
                write!(f, "directed cycle through {}", vertices.join(" -> "))
            }
            Violation::DuplicateIdentifier { id } => write!(f, "duplicate identifier {id:?}"),
            Violation::MissingAttachment { tail, vertex } => {
                write!(f, "tail {tail} attaches to missing vertex {vertex:?}")
            }
            Violation::NonNormalizedWord {
                tail,
                preperiod,
                period,
            } => write!(
                f,
                "tail {tail} word is not normalized (expected preperiod {preperiod:?}, period {period:?})"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

/// Checks a presentation. Structural problems (dangling arrow endpoints,
/// unparsable words) are errors; semantic problems are listed in the report.
pub fn validate_presentation(spec: &QuiverSpec) -> Result<ValidationReport, QuiverError> {
    let mut violations = Vec::new();
    let index: HashMap<&str, usize> = spec
        .core
        .vertices
        .iter()
        .enumerate()
        .rev()
        .map(|(i, v)| (v.as_str(), i))
        .collect();

    let mut seen = HashSet::new();
    for v in &spec.core.vertices {
        let clashes_tail = super::parse_tail_name(v, "").is_some_and(|(t, d)| t < spec.tails.len() && d >= 1);
        if !seen.insert(v.as_str()) || clashes_tail {
            violations.push(Violation::DuplicateIdentifier { id: v.clone() });
        }
    }
    let mut seen = HashSet::new();
    for a in &spec.core.arrows {
        let clashes_tail = super::parse_tail_name(&a.id, "e").is_some_and(|(t, d)| t < spec.tails.len() && d >= 1);
        if !seen.insert(a.id.as_str()) || clashes_tail {
            violations.push(Violation::DuplicateIdentifier { id: a.id.clone() });
        }
    }

    let mut edges = Vec::new();
    for a in &spec.core.arrows {
        let lookup = |name: &String| {
            index
                .get(name.as_str())
                .copied()
                .ok_or_else(|| QuiverError::DanglingEndpoint {
                    arrow: a.id.clone(),
                    vertex: name.clone(),
                })
        };
        edges.push((lookup(&a.from)?, lookup(&a.to)?));
    }

    for (k, t) in spec.tails.iter().enumerate() {
        let word = parse_word(k, t)?;
        if !index.contains_key(t.attach.as_str()) {
            violations.push(Violation::MissingAttachment {
                tail: k,
                vertex: t.attach.clone(),
            });
        }
        if !word.is_normalized() {
            let n = word.normalized();
            violations.push(Violation::NonNormalizedWord {
                tail: k,
                preperiod: format_dirs(n.pre()),
                period: format_dirs(n.period()),
            });
        }
    }

    if let Some(cycle) = find_cycle(spec.core.vertices.len(), &edges) {
        violations.push(Violation::DirectedCycle {
            vertices: cycle.iter().map(|&i| spec.core.vertices[i].clone()).collect(),
        });
    }

    Ok(ValidationReport {
        valid: violations.is_empty(),
        violations,
    })
}

fn parse_word(k: usize, t: &TailSpecJson) -> Result<TailWord, QuiverError> {
    let bad = |letter| QuiverError::BadLetter { tail: k, letter };
    let pre = parse_dirs(&t.preperiod).map_err(bad)?;
    let period = parse_dirs(&t.period).map_err(bad)?;
    TailWord::raw(pre, period).ok_or(QuiverError::EmptyPeriod { tail: k })
}

/// Returns the vertices of some directed cycle, in order, if one exists.
fn find_cycle(n: usize, edges: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut indeg = vec![0usize; n];
    for &(_, b) in edges {
        indeg[b] += 1;
    }
    let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut removed = vec![false; n];
    while let Some(v) = stack.pop() {
        removed[v] = true;
        for &(a, b) in edges {
            if a == v {
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    stack.push(b);
                }
            }
        }
    }
    let start = (0..n).find(|&v| !removed[v])?;
    // Every remaining vertex has a remaining predecessor; walk backwards
    // until something repeats.
    let mut order = vec![start];
    let mut pos = HashMap::from([(start, 0)]);
    let mut v = start;
    loop {
        let pred = edges
            .iter()
            .find(|&&(a, b)| b == v && !removed[a])
            .map(|&(a, _)| a)
            .expect("remaining vertex without remaining predecessor");
        if let Some(&i) = pos.get(&pred) {
            let mut cycle: Vec<usize> = order[i..].to_vec();
            cycle.reverse();
            return Some(cycle);
        }
        pos.insert(pred, order.len());
        order.push(pred);
        v = pred;
    }
}

impl QuiverSpec {
    pub(super) fn build_unchecked(&self) -> Result<Quiver, QuiverError> {
        let index: HashMap<&str, usize> = self
            .core
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let arrows = self
            .core
            .arrows
            .iter()
            .map(|a| CoreArrow {
                id: a.id.clone(),
                from: index[a.from.as_str()],
                to: index[a.to.as_str()],
            })
            .collect();
        let tails = self
            .tails
            .iter()
            .enumerate()
            .map(|(k, t)| {
                Ok(Tail {
                    attach: index[t.attach.as_str()],
                    word: parse_word(k, t)?.normalized(),
                })
            })
            .collect::<Result<_, QuiverError>>()?;
        Ok(Quiver::from_parts(self.core.vertices.clone(), arrows, tails))
    }

    /// The presentation of an already validated quiver.
    pub fn of(q: &Quiver) -> QuiverSpec {
        QuiverSpec {
            core: CoreSpec {
                vertices: q.core_vertices().to_vec(),
                arrows: q
                    .core_arrows()
                    .iter()
                    .map(|a| ArrowSpec {
                        id: a.id.clone(),
                        from: q.core_vertices()[a.from].clone(),
                        to: q.core_vertices()[a.to].clone(),
                    })
                    .collect(),
            },
            tails: q
                .tails()
                .iter()
                .map(|t| TailSpecJson {
                    attach: q.core_vertices()[t.attach].clone(),
                    preperiod: format_dirs(t.word.pre()),
                    period: format_dirs(t.word.period()),
                })
                .collect(),
        }
    }
}
