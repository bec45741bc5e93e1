//! Tape construction by depth-first search.
//!
//! A node is appended only after everything reachable from it has been
//! explored; reversing that postorder puts every node ahead of its
//! successors. Appending on entry (preorder) is not enough: a node reached
//! late through a second path can land after one of its own children.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{Graph, Node, NodeId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Seed variable first, following child edges.
    ForwardFromSeed,
    /// Output first, following parent edges.
    ReverseFromOutput,
}

impl Direction {
    fn successors(self, node: &Node) -> &[NodeId] {
        match self {
            Direction::ForwardFromSeed => node.children(),
            Direction::ReverseFromOutput => node.parents(),
        }
    }
}

/// Topologically ordered node sequence anchored at a seed or output node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tape {
    order: Vec<NodeId>,
    direction: Direction,
    anchor: NodeId,
}

impl Tape {
    /// Assembles a tape without validation. Use [`check_tape`] to verify one.
    pub fn from_parts(direction: Direction, anchor: NodeId, order: Vec<NodeId>) -> Self {
        Tape {
            order,
            direction,
            anchor,
        }
    }

    pub fn order(&self) -> &[NodeId] {
        &self.order
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn anchor(&self) -> NodeId {
        self.anchor
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.order.iter().copied()
    }
}

// Iterative so that long chains do not exhaust the call stack. Successors are
// explored in stored order, which fixes tie-breaking.
fn dfs_postorder(graph: &Graph, anchor: NodeId, direction: Direction) -> Vec<NodeId> {
    let mut visited = vec![false; graph.len()];
    let mut postorder = Vec::new();
    let mut stack: Vec<(NodeId, usize)> = vec![(anchor, 0)];
    visited[anchor.index()] = true;

    while let Some(top) = stack.last_mut() {
        let (id, cursor) = *top;
        let successors = direction.successors(graph.node(id));
        if cursor < successors.len() {
            top.1 += 1;
            let next = successors[cursor];
            if !visited[next.index()] {
                visited[next.index()] = true;
                stack.push((next, 0));
            }
        } else {
            postorder.push(id);
            stack.pop();
        }
    }
    postorder
}

fn build(graph: &Graph, anchor: NodeId, direction: Direction) -> Tape {
    assert!(
        graph.contains(anchor),
        "tape anchor {anchor} is not in the graph"
    );
    let mut order = dfs_postorder(graph, anchor, direction);
    order.reverse();
    Tape {
        order,
        direction,
        anchor,
    }
}

/// Nodes reachable from `seed` through child edges, each ahead of its children.
///
/// Panics if `seed` is not a node of `graph`.
pub fn forward_tape(graph: &Graph, seed: NodeId) -> Tape {
    build(graph, seed, Direction::ForwardFromSeed)
}

/// `output` and its ancestors, each node ahead of its parents.
///
/// Panics if `output` is not a node of `graph`.
pub fn reverse_tape(graph: &Graph, output: NodeId) -> Tape {
    build(graph, output, Direction::ReverseFromOutput)
}

/// Breadth-first reachability, independent of the DFS above.
fn reachable(graph: &Graph, anchor: NodeId, direction: Direction) -> Vec<bool> {
    let mut seen = vec![false; graph.len()];
    let mut queue = VecDeque::from([anchor]);
    seen[anchor.index()] = true;
    while let Some(id) = queue.pop_front() {
        for &next in direction.successors(graph.node(id)) {
            if !seen[next.index()] {
                seen[next.index()] = true;
                queue.push_back(next);
            }
        }
    }
    seen
}

/// True iff `tape` starts at its anchor, has no duplicates, contains exactly
/// the nodes reachable from the anchor in its direction, and orders every
/// edge inside the tape the right way round.
pub fn check_tape(graph: &Graph, tape: &Tape) -> bool {
    let anchor = tape.anchor;
    if !graph.contains(anchor) || tape.order.first() != Some(&anchor) {
        return false;
    }

    let mut position = vec![usize::MAX; graph.len()];
    for (pos, &id) in tape.order.iter().enumerate() {
        if !graph.contains(id) || position[id.index()] != usize::MAX {
            return false;
        }
        position[id.index()] = pos;
    }

    let expected = reachable(graph, anchor, tape.direction);
    let members_match = expected
        .iter()
        .zip(&position)
        .all(|(&want, &pos)| want == (pos != usize::MAX));
    if !members_match {
        return false;
    }

    tape.order.iter().all(|&id| {
        tape.direction
            .successors(graph.node(id))
            .iter()
            .all(|next| position[next.index()] > position[id.index()])
    })
}
