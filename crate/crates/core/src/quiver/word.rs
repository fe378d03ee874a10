use std::fmt;

/// Direction of one tail edge relative to the core.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    /// The arrow points away from the core (depth `d-1` to depth `d`).
    Out,
    /// The arrow points toward the core (depth `d` to depth `d-1`).
    In,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::Out => Dir::In,
            Dir::In => Dir::Out,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Dir::Out => 'O',
            Dir::In => 'I',
        }
    }

    pub fn from_letter(c: char) -> Option<Dir> {
        match c {
            'O' => Some(Dir::Out),
            'I' => Some(Dir::In),
            _ => None,
        }
    }
}

/// Parses a word over `{O, I}`. Returns the offending character on failure.
pub fn parse_dirs(s: &str) -> Result<Vec<Dir>, char> {
    s.chars().map(|c| Dir::from_letter(c).ok_or(c)).collect()
}

pub fn format_dirs(dirs: &[Dir]) -> String {
    dirs.iter().map(|d| d.letter()).collect()
}

/// An eventually periodic direction word `pre · period^∞`.
///
/// Edge `d` (for `d ≥ 1`) joins depth `d-1` (the attachment vertex when
/// `d = 1`) to depth `d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TailWord {
    pre: Vec<Dir>,
    period: Vec<Dir>,
}

impl TailWord {
    /// Builds a word without normalizing it. `period` must be nonempty.
    pub fn raw(pre: Vec<Dir>, period: Vec<Dir>) -> Option<TailWord> {
        (!period.is_empty()).then_some(TailWord { pre, period })
    }

    /// Builds and normalizes a word. `period` must be nonempty.
    pub fn new(pre: Vec<Dir>, period: Vec<Dir>) -> Option<TailWord> {
        TailWord::raw(pre, period).map(|w| w.normalized())
    }

    pub fn constant(d: Dir) -> TailWord {
        TailWord {
            pre: Vec::new(),
            period: vec![d],
        }
    }

    pub fn pre(&self) -> &[Dir] {
        &self.pre
    }

    pub fn period(&self) -> &[Dir] {
        &self.period
    }

    /// Minimal period, then minimal preperiod.
    pub fn normalized(&self) -> TailWord {
        let p = &self.period;
        let n = p.len();
        let len = (1..=n)
            .find(|&k| n.is_multiple_of(k) && (0..n).all(|i| p[i] == p[i % k]))
            .unwrap_or(n);
        let mut period: Vec<Dir> = p[..len].to_vec();
        let mut pre = self.pre.clone();
        while pre.last() == period.last() && !pre.is_empty() {
            pre.pop();
            period.rotate_right(1);
        }
        TailWord { pre, period }
    }

    pub fn is_normalized(&self) -> bool {
        *self == self.normalized()
    }

    /// Direction of edge `d`, `d ≥ 1`.
    pub fn dir_at(&self, d: usize) -> Dir {
        assert!(d >= 1, "tail edges start at depth 1");
        let i = d - 1;
        if i < self.pre.len() {
            self.pre[i]
        } else {
            self.period[(i - self.pre.len()) % self.period.len()]
        }
    }

    /// The eventual direction when the word is eventually constant.
    pub fn eventual(&self) -> Option<Dir> {
        let first = self.period[0];
        self.period.iter().all(|&d| d == first).then_some(first)
    }

    pub fn flip(&self) -> TailWord {
        TailWord {
            pre: self.pre.iter().map(|d| d.flip()).collect(),
            period: self.period.iter().map(|d| d.flip()).collect(),
        }
    }

    /// Drops the first `d` edges. The result describes the same tail seen
    /// from depth `d`.
    pub fn shifted(&self, d: usize) -> TailWord {
        let pre = ((d + 1)..=(d + self.pre.len().saturating_sub(d)))
            .map(|e| self.dir_at(e))
            .collect();
        let start = d.max(self.pre.len());
        let period = (start + 1..=start + self.period.len())
            .map(|e| self.dir_at(e))
            .collect();
        TailWord { pre, period }.normalized()
    }
}

impl fmt::Display for TailWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})^", format_dirs(&self.pre), format_dirs(&self.period))
    }
}
