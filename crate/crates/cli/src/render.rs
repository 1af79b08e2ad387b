//! Hasse data as text and as Graphviz DOT.

use std::fmt::Write as _;

use pfspec_core::{FinitePoset, Quantale};

/// A finite poset with display names and, for quantales, a multiplication.
#[derive(Clone, Debug)]
pub struct Structure {
    pub title: String,
    pub order: FinitePoset,
    pub labels: Vec<String>,
    pub quantale: Option<Quantale>,
}

impl Structure {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.order.covers()
    }
}

/// Elements, covering pairs and, for a quantale, its unit and multiplication table.
pub fn hasse_text(s: &Structure) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}: {} elements", s.title, s.len());
    let _ = writeln!(out, "elements:");
    for (i, l) in s.labels.iter().enumerate() {
        let _ = writeln!(out, "  e{i} = {l}");
    }
    let covers = s.covers();
    let _ = writeln!(out, "covers: {}", covers.len());
    for (a, b) in covers {
        let _ = writeln!(out, "  e{a} < e{b}");
    }
    if let Some(q) = &s.quantale {
        let n = q.len();
        let _ = writeln!(out, "unit: e{}", q.unit());
        let _ = writeln!(out, "multiplication:");
        let names: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
        let w = names.iter().map(String::len).max().unwrap_or(1);
        let _ = write!(out, "  {:w$} |", "");
        for c in &names {
            let _ = write!(out, " {c:>w$}");
        }
        out.push('\n');
        for a in 0..n {
            let _ = write!(out, "  {:w$} |", names[a]);
            for b in 0..n {
                let _ = write!(out, " {:>w$}", names[q.mul(a, b)]);
            }
            out.push('\n');
        }
    }
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// One node per element, one edge per covering pair, bottom at the bottom.
pub fn dot(s: &Structure) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", escape(&s.title));
    let _ = writeln!(out, "  rankdir=BT;");
    let _ = writeln!(out, "  node [shape=plaintext];");
    for (i, l) in s.labels.iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label=\"{}\"];", escape(l));
    }
    for (a, b) in s.covers() {
        let _ = writeln!(out, "  n{a} -> n{b};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use pfspec_core::catalog;

    fn of_lattice(l: &pfspec_core::Suplattice) -> Structure {
        Structure {
            title: "L".into(),
            order: l.poset().clone(),
            labels: l.poset().labels().to_vec(),
            quantale: None,
        }
    }

    #[test]
    fn dot_of_chain_and_point() {
        let d = dot(&of_lattice(&catalog::chain(3)));
        assert_eq!(
            d,
            "digraph \"L\" {\n  rankdir=BT;\n  node [shape=plaintext];\n  n0 [label=\"0\"];\n  n1 [label=\"m\"];\n  n2 [label=\"1\"];\n  n0 -> n1;\n  n1 -> n2;\n}\n"
        );
        let one = dot(&of_lattice(&catalog::chain(1)));
        assert_eq!(one.matches("[label=").count(), 1);
        assert!(!one.contains("->"));
    }

    #[test]
    fn text_includes_multiplication() {
        let q = catalog::lukasiewicz(3);
        let mut s = of_lattice(q.lattice());
        s.quantale = Some(q);
        let t = hasse_text(&s);
        assert!(t.contains("unit: e2\n"));
        assert!(t.contains("  e1 | e0 e0 e1\n"));
    }

    #[test]
    fn labels_are_escaped() {
        let p = FinitePoset::discrete(&["a\"b"]).unwrap();
        let s = Structure {
            title: "q\"t".into(),
            labels: p.labels().to_vec(),
            order: p,
            quantale: None,
        };
        assert!(dot(&s).contains("n0 [label=\"a\\\"b\"];"));
    }
}
