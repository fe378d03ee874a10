use std::fmt::Write;

use super::{Chain, KnitStatus, KnittedComponent, TranslationFragment};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn dims_label(d: &[usize]) -> String {
    let parts: Vec<String> = d.iter().map(usize::to_string).collect();
    parts.join(" ")
}

/// Anything that renders as a DOT digraph.
pub trait ToDot {
    fn to_dot(&self) -> String;
}

fn digraph(name: &str, nodes: &[(String, String)], edges: &[(usize, usize)]) -> String {
    let mut out = format!("digraph {} {{\n  rankdir=LR;\n", quote(name));
    for (i, (label, attrs)) in nodes.iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label={}{attrs}];", quote(label));
    }
    for (a, b) in edges {
        let _ = writeln!(out, "  n{a} -> n{b};");
    }
    out.push_str("}\n");
    out
}

impl ToDot for KnittedComponent {
    fn to_dot(&self) -> String {
        let nodes: Vec<(String, String)> = self
            .vertices
            .iter()
            .map(|v| {
                let head = format!("({}, {})", v.slice, v.vertex);
                match (&v.dims, v.status) {
                    (Some(d), KnitStatus::Resolved) => (format!("{head}\\n{}", dims_label(d)), String::new()),
                    _ => (format!("{head}\\n?"), ", style=dashed, color=gray".to_string()),
                }
            })
            .collect();
        let name = if self.preinjective {
            "preinjective"
        } else {
            "preprojective"
        };
        digraph(name, &nodes, &self.arrows)
    }
}

impl ToDot for TranslationFragment {
    fn to_dot(&self) -> String {
        let nodes: Vec<(String, String)> = self
            .vertices
            .iter()
            .map(|&(i, l)| (format!("({i}, {l})"), String::new()))
            .collect();
        digraph("wing", &nodes, &self.arrows)
    }
}

impl ToDot for Chain {
    fn to_dot(&self) -> String {
        let nodes: Vec<(String, String)> = self.nodes.iter().map(|n| (n.label.clone(), String::new())).collect();
        let edges: Vec<(usize, usize)> = (1..self.nodes.len()).map(|i| (i - 1, i)).collect();
        digraph("chain", &nodes, &edges)
    }
}
