//! Graphviz renderings. Output is deterministic so it can be diffed.

use std::fmt::Write;

use crate::bijection::AuxGraph;
use crate::structures::{
    BlackElem, BlackPartitionedStarMap, LabeledThornTree, PermutedThornTree, Slot, StarThornTree,
};

/// `a, b, …, z, aa, ab, …`: symbolic names for thorn pairs.
fn letter(k: usize) -> String {
    let mut k = k;
    let mut out = Vec::new();
    loop {
        out.push(b'a' + (k % 26) as u8);
        if k < 26 {
            break;
        }
        k = k / 26 - 1;
    }
    out.reverse();
    String::from_utf8(out).expect("ascii")
}

const HEADER: &str = "  ordering=out;\n  node [fontname=\"Helvetica\"];\n";

fn tree_body(
    out: &mut String,
    tree: &StarThornTree,
    white: &dyn Fn(usize) -> String,
    black: &dyn Fn(BlackElem) -> String,
) {
    out.push_str("  root [label=\"\", shape=circle, style=solid, width=0.3];\n");
    for b in 0..tree.p() {
        let _ = writeln!(
            out,
            "  b{b} [label=\"\", shape=circle, style=filled, fillcolor=black, width=0.2];"
        );
    }
    for s in 0..tree.n() {
        match tree.white()[s] {
            Slot::Edge => {
                let b = tree.black_at(s).expect("edge");
                let _ = writeln!(out, "  root -> b{b} [label=\"{}\", dir=none];", white(s));
            }
            Slot::Thorn => {
                let _ = writeln!(out, "  w{s} [label=\"\", shape=point];");
                let _ = writeln!(
                    out,
                    "  root -> w{s} [label=\"{}\", dir=none, style=dashed];",
                    white(s)
                );
            }
        }
    }
    for b in 0..tree.p() {
        for e in tree.counter_clockwise(b).skip(1) {
            if let BlackElem::Thorn(_, i) = e {
                let _ = writeln!(out, "  t{b}_{i} [label=\"\", shape=point];");
                let _ = writeln!(
                    out,
                    "  b{b} -> t{b}_{i} [label=\"{}\", dir=none, style=dashed];",
                    black(e)
                );
            }
        }
    }
}

/// Root slots left to right; thorn pairs share a letter.
pub fn tree_to_dot(t: &PermutedThornTree) -> String {
    let tree = t.tree();
    let mut out = String::from("digraph permuted_tree {\n");
    out.push_str(HEADER);
    let white = |s: usize| match tree.thorn_ordinal(s) {
        Some(k) => letter(k),
        None => String::new(),
    };
    let black = |e: BlackElem| {
        letter(
            tree.thorn_ordinal(t.white_partner(e))
                .expect("thorn partner"),
        )
    };
    tree_body(&mut out, tree, &white, &black);
    out.push_str("}\n");
    out
}

pub fn labeled_to_dot(t: &LabeledThornTree) -> String {
    let mut out = String::from("digraph labeled_tree {\n");
    out.push_str(HEADER);
    let white = |s: usize| t.white_labels()[s].to_string();
    let black = |e: BlackElem| t.label_of(e).to_string();
    tree_body(&mut out, t.tree(), &white, &black);
    out.push_str("}\n");
    out
}

/// One white vertex, one black vertex per `β`-cycle, cycles grouped into a
/// cluster per block of `π`; edge `k` joins the white vertex to the cycle
/// containing `k`.
pub fn map_to_dot(m: &BlackPartitionedStarMap) -> String {
    let mut out = String::from("graph star_map {\n");
    out.push_str("  node [fontname=\"Helvetica\"];\n");
    let _ = writeln!(out, "  white [label=\"{}\", shape=circle];", m.alpha());
    let cycles = m.beta().cycles();
    let block = m.pi().block_index();
    for (bi, _) in m.pi().blocks().iter().enumerate() {
        let _ = writeln!(out, "  subgraph cluster_{bi} {{\n    style=dotted;");
        for (ci, cycle) in cycles.iter().enumerate() {
            if block[cycle[0]] == bi {
                let shown: Vec<String> = cycle.iter().map(|x| (x + 1).to_string()).collect();
                let _ = writeln!(
                    out,
                    "    c{ci} [label=\"({})\", shape=circle, style=filled, fillcolor=black, fontcolor=white];",
                    shown.join(" ")
                );
            }
        }
        out.push_str("  }\n");
    }
    let mut cycle_of = vec![0; m.n()];
    for (ci, cycle) in cycles.iter().enumerate() {
        for &x in cycle {
            cycle_of[x] = ci;
        }
    }
    for (k, c) in cycle_of.iter().enumerate() {
        let _ = writeln!(out, "  white -- c{c} [label=\"{}\"];", k + 1);
    }
    out.push_str("}\n");
    out
}

pub fn aux_graph_to_dot(g: &AuxGraph) -> String {
    let mut out = String::from("digraph aux_graph {\n");
    out.push_str("  node [fontname=\"Helvetica\", shape=circle];\n");
    for v in 0..g.p {
        let style = if v == g.root { ", peripheries=2" } else { "" };
        let _ = writeln!(out, "  v{v} [label=\"{v}\"{style}];");
    }
    for (v, w) in g.edges() {
        let _ = writeln!(out, "  v{v} -> v{w};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bijection::{aux_graph, psi, psi_label};
    use crate::{Permutation, SetPartition};

    #[test]
    fn letters() {
        assert_eq!(letter(0), "a");
        assert_eq!(letter(25), "z");
        assert_eq!(letter(26), "aa");
        assert_eq!(letter(27), "ab");
    }

    #[test]
    fn renders_example() {
        let beta = Permutation::from_cycles(7, &[&[2, 5], &[3, 7]]).unwrap();
        let pi = SetPartition::from_one_based(7, &[vec![1, 3, 6, 7], vec![2, 5], vec![4]]).unwrap();
        let m = BlackPartitionedStarMap::new(beta, pi).unwrap();
        let t = psi(&m).unwrap();
        let dot = tree_to_dot(&t);
        assert!(dot.starts_with("digraph permuted_tree {"));
        assert_eq!(dot.matches("style=dashed").count(), 8);
        assert_eq!(dot, tree_to_dot(&t));
        let labeled = labeled_to_dot(&psi_label(&m).unwrap());
        assert!(labeled.contains("root -> b0 [label=\"3\""));
        let map = map_to_dot(&m);
        assert_eq!(map.matches("subgraph cluster_").count(), 3);
        assert!(map.contains("(3 7)"));
        let aux = aux_graph_to_dot(&aux_graph(&t).unwrap());
        assert_eq!(aux.matches("->").count(), 2);
    }
}
