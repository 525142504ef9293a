//! Graphviz export of instances, families and auxiliary digraphs.

use std::fmt::Write;

use crate::aux::AuxDigraph;
use crate::bridges::Instance;
use crate::family::CycleFamily;

const PALETTE: [&str; 8] = ["red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "teal"];

/// Undirected drawing: host edges solid and bold, bridge edges dashed and
/// coloured per bridge, attachments filled.
pub fn instance_dot(inst: &Instance) -> String {
    let mut s = String::from("graph instance {\n");
    for v in inst.vertices() {
        if inst.is_attachment(v) {
            writeln!(s, "  {v} [style=filled, fillcolor=lightgray];").unwrap();
        } else {
            writeln!(s, "  {v};").unwrap();
        }
    }
    for e in inst.host().edges() {
        let (a, b) = e.ends();
        writeln!(s, "  {a} -- {b} [penwidth=2];").unwrap();
    }
    for (i, t) in inst.bridges().iter().enumerate() {
        let colour = PALETTE[i % PALETTE.len()];
        for e in t.edges() {
            let (a, b) = e.ends();
            writeln!(s, "  {a} -- {b} [style=dashed, color={colour}];").unwrap();
        }
    }
    s.push_str("}\n");
    s
}

/// One cluster per dicycle; node names are prefixed with the dicycle index so
/// a vertex appears once in every dicycle through it.
pub fn family_dot(fam: &CycleFamily) -> String {
    let mut s = String::from("digraph family {\n");
    for (i, c) in fam.iter().enumerate() {
        let colour = PALETTE[i % PALETTE.len()];
        writeln!(s, "  subgraph cluster_{i} {{").unwrap();
        writeln!(s, "    label=\"C{i}\";").unwrap();
        for v in c.vertices() {
            writeln!(s, "    c{i}_{v} [label=\"{v}\"];").unwrap();
        }
        for a in c.arcs() {
            writeln!(s, "    c{i}_{} -> c{i}_{} [color={colour}];", a.tail, a.head).unwrap();
        }
        s.push_str("  }\n");
    }
    s.push_str("}\n");
    s
}

/// Vertices labelled `part.index`, both one-based; parallel arcs drawn twice.
pub fn aux_dot(d: &AuxDigraph) -> String {
    let mut s = format!("digraph aux {{\n  label=\"D{}\";\n", d.partition());
    for v in d.vertices() {
        let (p, i) = d.locate(v).expect("own vertex");
        writeln!(s, "  {v} [label=\"{}.{}\"];", p + 1, i + 1).unwrap();
    }
    for a in d.arcs() {
        writeln!(s, "  {} -> {};", a.tail, a.head).unwrap();
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aux::{build_aux, Partition};
    use crate::family::construct;
    use crate::generate::gen_k23;

    fn count(s: &str, pat: &str) -> usize {
        s.lines().filter(|l| l.contains(pat)).count()
    }

    #[test]
    fn k23_counts() {
        let s = instance_dot(&gen_k23());
        assert!(s.starts_with("graph instance {\n") && s.ends_with("}\n"));
        assert_eq!(count(&s, " -- "), 6);
        assert_eq!(count(&s, "penwidth=2"), 4);
        assert_eq!(count(&s, "style=dashed"), 2);
        assert_eq!(s.lines().filter(|l| l.trim_end().ends_with(';') && !l.contains("--")).count(), 5);
    }

    #[test]
    fn empty_family() {
        assert_eq!(family_dot(&CycleFamily::default()), "digraph family {\n}\n");
    }

    #[test]
    fn family_clusters() {
        let s = family_dot(&construct(&gen_k23()).unwrap());
        assert_eq!(count(&s, "subgraph cluster_"), 4);
        assert_eq!(count(&s, " -> "), 16);
    }

    #[test]
    fn aux_433() {
        let d = build_aux(&Partition::new(vec![4, 3, 3]).unwrap());
        let s = aux_dot(&d);
        assert_eq!(count(&s, " -> "), 20);
        assert_eq!(count(&s, "[label="), 10);
        assert!(s.contains("label=\"D(4,3,3)\""));
    }
}
