//! Reverse (adjoint) mode.
//!
//! Starting from `ȳ = 1` at the output, each node on the reverse tape
//! scatters `v̄ · ∂v/∂u` into the adjoint of every parent occurrence `u`.
//! The reverse tape guarantees a node's adjoint is complete before it is
//! scattered, so one pass yields `∂y/∂x` for all inputs at once.

use alloc::vec::Vec;

use crate::derivatives::Derivatives;
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::ordering::reverse_tape;

/// One `parent.adjoint += local_partial × node.adjoint` step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdjointUpdate {
    /// The node whose adjoint is being scattered.
    pub node: NodeId,
    pub parent: NodeId,
    /// Operand slot of `parent` within `node`.
    pub slot: usize,
    pub local_partial: f64,
    pub contribution: f64,
    /// Parent adjoint after this update.
    pub accumulated: f64,
}

pub fn reverse_derivatives(graph: &mut Graph, output: NodeId) -> Result<Derivatives> {
    reverse_derivatives_with(graph, output, |_| {})
}

/// Like [`reverse_derivatives`], reporting every accumulation step in the
/// order it happens.
pub fn reverse_derivatives_with(
    graph: &mut Graph,
    output: NodeId,
    mut observe: impl FnMut(AdjointUpdate),
) -> Result<Derivatives> {
    if !graph.contains(output) {
        return Err(Error::InvalidNode(output));
    }

    for node in graph.nodes_mut() {
        node.adjoint = 0.0;
    }
    graph.node_mut(output).adjoint = 1.0;

    let tape = reverse_tape(graph, output);
    graph.record_traversal();
    for id in tape.iter() {
        let node = graph.node(id);
        let adjoint = node.adjoint;
        // Cloned so the parents can be updated while iterating.
        let edges: Vec<(NodeId, f64)> = node
            .parents()
            .iter()
            .copied()
            .zip(node.grad_wrt_parents().iter().copied())
            .collect();
        for (slot, (parent, local_partial)) in edges.into_iter().enumerate() {
            let contribution = local_partial * adjoint;
            let target = graph.node_mut(parent);
            target.adjoint += contribution;
            observe(AdjointUpdate {
                node: id,
                parent,
                slot,
                local_partial,
                contribution,
                accumulated: target.adjoint,
            });
        }
    }

    Ok(Derivatives::new(
        graph.nodes().map(|(_, n)| n.adjoint).collect::<Vec<_>>(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_example;
    use crate::math;
    use alloc::vec;

    #[test]
    fn running_example_adjoints() {
        let mut g = Graph::new();
        let y = build_example(&mut g).unwrap();
        let d = reverse_derivatives(&mut g, y).unwrap();
        let [x1, x2, v1, v2, v3, v4, v5] = core::array::from_fn(|i| d[NodeId::new(i)]);
        assert_eq!((v5, v4, v3, v1, v2), (1.0, 1.0, -1.0, 1.0, 1.0));
        assert_eq!(x1, 5.5);
        assert!((x2 - 1.716).abs() < 5e-4);
        assert!((x2 - (2.0 - math::cos(5.0))).abs() < 1e-12);
        assert_eq!(g.traversals(), 1);
    }

    #[test]
    fn x2_accumulates_in_two_steps() {
        let mut g = Graph::new();
        let y = build_example(&mut g).unwrap();
        let x2 = g.variable("x2").unwrap();
        let mut steps = Vec::new();
        reverse_derivatives_with(&mut g, y, |u| {
            if u.parent == x2 {
                steps.push(u)
            }
        })
        .unwrap();
        assert_eq!(steps.len(), 2);
        // first from sin x2, then from x1·x2
        assert_eq!(steps[0].node, NodeId::new(4));
        assert!((steps[0].accumulated + 0.284).abs() < 5e-4);
        assert_eq!(steps[0].accumulated, -math::cos(5.0));
        assert_eq!(steps[1].node, NodeId::new(3));
        assert!((steps[1].accumulated - 1.716).abs() < 5e-4);
    }

    #[test]
    fn lone_variable_and_square() {
        let mut g = Graph::new();
        let x = g.new_variable("x", 4.0).unwrap();
        assert_eq!(reverse_derivatives(&mut g, x).unwrap().as_slice(), &[1.0]);

        let mut g = Graph::new();
        let x = g.new_variable("x", 3.0).unwrap();
        let y = g.mul(x, x).unwrap();
        let mut contributions = Vec::new();
        let d =
            reverse_derivatives_with(&mut g, y, |u| contributions.push(u.contribution)).unwrap();
        assert_eq!(contributions, vec![3.0, 3.0]);
        assert_eq!(d[x], 6.0);
    }

    #[test]
    fn constant_output_and_non_ancestors() {
        let mut g = Graph::new();
        let x = g.new_variable("x", 1.0).unwrap();
        let c = g.new_constant(2.0);
        let d = reverse_derivatives(&mut g, c).unwrap();
        assert_eq!(d[c], 1.0);
        assert_eq!(d[x], 0.0);
    }

    #[test]
    fn interior_output() {
        let mut g = Graph::new();
        build_example(&mut g).unwrap();
        let v4 = NodeId::new(5);
        let d = reverse_derivatives(&mut g, v4).unwrap();
        // v4 = log x1 + x1·x2
        assert_eq!(d[NodeId::new(0)], 5.5);
        assert_eq!(d[NodeId::new(1)], 2.0);
        assert_eq!(d[NodeId::new(4)], 0.0);
        assert_eq!(d[NodeId::new(6)], 0.0);
    }

    #[test]
    fn invalid_output() {
        let mut g = Graph::new();
        let id = NodeId::new(0);
        assert_eq!(reverse_derivatives(&mut g, id), Err(Error::InvalidNode(id)));
    }
}
