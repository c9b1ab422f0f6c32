use std::fmt::Write as _;

use crate::poset::CobwebPoset;

/// Hasse diagram of `poset` as a Graphviz digraph: one node `v{level}_{index}`
/// per vertex grouped by level, one edge per cover pair pointing upward.
pub fn hasse_dot(poset: &CobwebPoset) -> String {
    let mut out = String::from("digraph cobweb {\n  rankdir=BT;\n  node [shape=circle];\n");
    for (i, &size) in poset.level_sizes().iter().enumerate() {
        out.push_str("  { rank=same;");
        for index in 0..size {
            let _ = write!(out, " v{}_{index};", i + 1);
        }
        out.push_str(" }\n");
    }
    for x in poset.vertices() {
        for y in poset.upper_covers(x).expect("vertex from the poset itself") {
            let _ = writeln!(out, "  {} -> {};", x.dot_id(), y.dot_id());
        }
    }
    out.push_str("}\n");
    out
}
