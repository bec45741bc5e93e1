//! Forward (tangent) mode.
//!
//! One pass computes `∂v/∂seed` for every node `v`, reading the forward tape
//! front to back and applying `v̇ = Σ ∂v/∂u · u̇` over the parent occurrences
//! of `v`. Nodes not reachable from the seed are never visited and stay zero.

use alloc::vec::Vec;

use crate::derivatives::Derivatives;
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, Operator};
use crate::ordering::forward_tape;

/// Runs one forward pass seeded at the variable `seed`.
///
/// All tangent accumulators are reset first, so repeated passes with
/// different seeds do not interfere.
pub fn forward_derivatives(graph: &mut Graph, seed: NodeId) -> Result<Derivatives> {
    let seed_node = graph.get(seed).ok_or(Error::InvalidNode(seed))?;
    if seed_node.op() != Operator::Var {
        return Err(Error::SeedNotVariable(seed));
    }

    for node in graph.nodes_mut() {
        node.partial_derivative = 0.0;
    }
    graph.node_mut(seed).partial_derivative = 1.0;

    let tape = forward_tape(graph, seed);
    graph.record_traversal();
    for id in tape.iter().skip(1) {
        let node = graph.node(id);
        let tangent = node
            .parents()
            .iter()
            .zip(node.grad_wrt_parents())
            .map(|(&parent, &partial)| partial * graph.node(parent).partial_derivative)
            .sum();
        graph.node_mut(id).partial_derivative = tangent;
    }

    Ok(Derivatives::new(
        graph
            .nodes()
            .map(|(_, n)| n.partial_derivative)
            .collect::<Vec<_>>(),
    ))
}
