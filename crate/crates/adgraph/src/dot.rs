//! Graphviz export.

use std::fmt::Write;

use adgraph_core::Graph;

use crate::format::fixed3;

/// One node statement per node in creation order, then one edge statement
/// per operand occurrence, grouped by child in creation order.
pub fn to_dot(graph: &Graph) -> String {
    let mut out = String::from("digraph computation {\n    rankdir=LR;\n");
    for (id, node) in graph.nodes() {
        let label = format!(
            "{}\\n{}\\n{}",
            graph.display_name(id),
            node.op(),
            fixed3(node.value())
        );
        writeln!(
            out,
            "    n{} [label=\"{}\"];",
            id.index(),
            label.replace('"', "\\\"")
        )
        .unwrap();
    }
    for (id, node) in graph.nodes() {
        for parent in node.parents() {
            writeln!(out, "    n{} -> n{};", parent.index(), id.index()).unwrap();
        }
    }
    out.push_str("}\n");
    out
}
