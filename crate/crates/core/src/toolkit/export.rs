//! Graphviz output for spaces and lattices.

use std::fmt::Write as _;

use crate::lattice::OrthoLattice;
use crate::mask::Mask;
use crate::space::OrthoSpace;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Undirected graph of the orthogonality relation.
pub fn space_dot(x: &OrthoSpace) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "graph {} {{", quote(x.name().unwrap_or("space")));
    for l in x.labels() {
        let _ = writeln!(s, "  {};", quote(l));
    }
    for (i, j) in x.edges() {
        let _ = writeln!(s, "  {} -- {};", quote(x.label(i)), quote(x.label(j)));
    }
    s.push_str("}\n");
    s
}

pub fn set_label(x: &OrthoSpace, m: &Mask) -> String {
    let names: Vec<&str> = m.iter().map(|i| x.label(i)).collect();
    format!("{{{}}}", names.join(","))
}

/// Hasse diagram of the lattice, edges pointing from an element to its covers.
pub fn lattice_dot(x: &OrthoSpace, l: &OrthoLattice) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "digraph {} {{", quote(x.name().unwrap_or("lattice")));
    s.push_str("  rankdir=BT;\n");
    for (k, m) in l.elements().iter().enumerate() {
        let _ = writeln!(s, "  n{k} [label={}];", quote(&set_label(x, m)));
    }
    for (a, b) in l.covers() {
        let _ = writeln!(s, "  n{a} -> n{b};");
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::build_lattice;

    #[test]
    fn diamond() {
        let x = OrthoSpace::from_edges(2, &[(0, 1)]).unwrap();
        let l = build_lattice(&x).unwrap();
        let d = lattice_dot(&x, &l);
        assert_eq!(d.matches(" [label=").count(), 4);
        assert_eq!(d.matches(" -> ").count(), 4);
        assert!(d.starts_with("digraph"));
        assert_eq!(lattice_dot(&x, &l), d);
    }

    #[test]
    fn graph_output() {
        let x = OrthoSpace::new(&["a", "b", "c"], &[("a", "b")]).unwrap();
        let d = space_dot(&x);
        assert!(d.contains("\"a\" -- \"b\";"));
        assert_eq!(d.matches(" -- ").count(), 1);
    }
}
