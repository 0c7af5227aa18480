//! Graphviz rendering of coding trees.

use std::fmt::Write;

use padyn::symbolic::SigmaTree;

pub const HEADER: &str = "digraph sigma {\n  node [shape=box, fontname=\"monospace\"];\n";

/// Nodes in id order, one edge per parent link; labels carry the exact
/// exponent and the local degree.
pub fn sigma_dot(tree: Option<&SigmaTree>) -> String {
    let mut out = String::from(HEADER);
    if let Some(tree) = tree {
        for c in &tree.cells {
            let word: Vec<String> = c.word.iter().map(|a| a.to_string()).collect();
            let _ = writeln!(
                out,
                "  n{} [label=\"{}\\ne={} d={}\\nw=[{}]\"];",
                c.id,
                c.ball.center,
                c.ball.exponent,
                c.local_degree,
                word.join(",")
            );
        }
        for c in &tree.cells {
            if let Some(parent) = c.parent {
                let _ = writeln!(out, "  n{parent} -> n{};", c.id);
            }
        }
    }
    out.push_str("}\n");
    out
}
