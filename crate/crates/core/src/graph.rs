//! The computational graph: an append-only arena of [`Node`]s.
//!
//! Every constructor both evaluates its operation and records it. A new node
//! stores its parents, the local partials with respect to each parent slot,
//! and writes its own id back into each parent's child list. Because a node
//! can only reference nodes that already exist, arena order is a topological
//! order of the whole graph.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::error::{DomainError, Error, Result};
use crate::math;

/// Stable handle to a node, valid for the graph that created it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(usize);

impl NodeId {
    pub const fn new(index: usize) -> Self {
        NodeId(index)
    }

    pub const fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Operator {
    Var,
    Const,
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Log,
    Sin,
    Cos,
    Exp,
    /// `a^c` for a fixed real exponent `c`.
    PowConst(f64),
}

impl Operator {
    pub fn arity(self) -> usize {
        match self {
            Operator::Var | Operator::Const => 0,
            Operator::Neg
            | Operator::Log
            | Operator::Sin
            | Operator::Cos
            | Operator::Exp
            | Operator::PowConst(_) => 1,
            Operator::Add | Operator::Sub | Operator::Mul | Operator::Div => 2,
        }
    }

    pub fn is_leaf(self) -> bool {
        matches!(self, Operator::Var | Operator::Const)
    }

    /// Short lowercase tag ("mul", "log", "pow_const", ...).
    pub fn tag(self) -> &'static str {
        match self {
            Operator::Var => "var",
            Operator::Const => "const",
            Operator::Add => "add",
            Operator::Sub => "sub",
            Operator::Mul => "mul",
            Operator::Div => "div",
            Operator::Neg => "neg",
            Operator::Log => "log",
            Operator::Sin => "sin",
            Operator::Cos => "cos",
            Operator::Exp => "exp",
            Operator::PowConst(_) => "pow_const",
        }
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operator::PowConst(c) => write!(f, "pow_const({c})"),
            op => f.write_str(op.tag()),
        }
    }
}

/// One intermediate expression of the evaluated function.
#[derive(Debug, Clone, PartialEq)]
pub struct Node {
    value: f64,
    op: Operator,
    parents: Vec<NodeId>,
    children: Vec<NodeId>,
    grad_wrt_parents: Vec<f64>,
    pub(crate) partial_derivative: f64,
    pub(crate) adjoint: f64,
    name: Option<String>,
}

impl Node {
    fn leaf(op: Operator, value: f64, name: Option<String>) -> Self {
        Node {
            value,
            op,
            parents: Vec::new(),
            children: Vec::new(),
            grad_wrt_parents: Vec::new(),
            partial_derivative: 0.0,
            adjoint: 0.0,
            name,
        }
    }

    /// Primal value at the input point the graph was built for.
    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn op(&self) -> Operator {
        self.op
    }

    /// Operands in slot order. A node used twice as an operand appears twice.
    pub fn parents(&self) -> &[NodeId] {
        &self.parents
    }

    /// Consumers of this node, one entry per referencing edge.
    pub fn children(&self) -> &[NodeId] {
        &self.children
    }

    /// `∂self/∂parents[i]`, aligned with [`Node::parents`].
    pub fn grad_wrt_parents(&self) -> &[f64] {
        &self.grad_wrt_parents
    }

    /// Tangent accumulator of the most recent forward pass.
    pub fn partial_derivative(&self) -> f64 {
        self.partial_derivative
    }

    /// Adjoint accumulator of the most recent reverse pass.
    pub fn adjoint(&self) -> f64 {
        self.adjoint
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }
}

#[derive(Debug, Clone, Default)]
pub struct Graph {
    nodes: Vec<Node>,
    variables: BTreeMap<String, NodeId>,
    operations: usize,
    traversals: u64,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, id: NodeId) -> bool {
        id.0 < self.nodes.len()
    }

    /// Panics if `id` was not issued by this graph.
    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id.0]
    }

    pub fn get(&self, id: NodeId) -> Option<&Node> {
        self.nodes.get(id.0)
    }

    pub(crate) fn node_mut(&mut self, id: NodeId) -> &mut Node {
        &mut self.nodes[id.0]
    }

    pub(crate) fn nodes_mut(&mut self) -> impl Iterator<Item = &mut Node> {
        self.nodes.iter_mut()
    }

    /// Nodes in creation order.
    pub fn nodes(&self) -> impl ExactSizeIterator<Item = (NodeId, &Node)> + '_ {
        self.nodes.iter().enumerate().map(|(i, n)| (NodeId(i), n))
    }

    pub fn variable(&self, name: &str) -> Option<NodeId> {
        self.variables.get(name).copied()
    }

    /// Variable nodes in creation order.
    pub fn variables(&self) -> impl Iterator<Item = (&str, NodeId)> + '_ {
        self.nodes().filter_map(|(id, node)| match node.op {
            Operator::Var => node.name().map(|name| (name, id)),
            _ => None,
        })
    }

    /// Number of derivative passes run over this graph so far.
    pub fn traversals(&self) -> u64 {
        self.traversals
    }

    pub(crate) fn record_traversal(&mut self) {
        self.traversals += 1;
    }

    /// Display name: the stored name, or the literal text for constants.
    pub fn display_name(&self, id: NodeId) -> String {
        let node = self.node(id);
        match &node.name {
            Some(name) => name.clone(),
            None => format!("{}", node.value),
        }
    }

    pub fn new_variable(&mut self, name: &str, value: f64) -> Result<NodeId> {
        if self.variables.contains_key(name) {
            return Err(Error::DuplicateVariable(name.to_string()));
        }
        let id = NodeId(self.nodes.len());
        self.nodes
            .push(Node::leaf(Operator::Var, value, Some(name.to_string())));
        self.variables.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn new_constant(&mut self, value: f64) -> NodeId {
        let id = NodeId(self.nodes.len());
        self.nodes.push(Node::leaf(Operator::Const, value, None));
        id
    }

    /// Evaluates `op` on `operands` and records the result as a new node.
    ///
    /// On success exactly one node is appended and linked into each operand's
    /// child list (once per occurrence). On failure the graph is unchanged.
    pub fn apply(&mut self, op: Operator, operands: &[NodeId]) -> Result<NodeId> {
        if op.is_leaf() {
            return Err(Error::LeafOperator(op));
        }
        if operands.len() != op.arity() {
            return Err(Error::Arity {
                op,
                expected: op.arity(),
                got: operands.len(),
            });
        }
        if let Some(&bad) = operands.iter().find(|&&id| !self.contains(id)) {
            return Err(Error::InvalidNode(bad));
        }

        let id = NodeId(self.nodes.len());
        let args: Vec<f64> = operands.iter().map(|&p| self.nodes[p.0].value).collect();
        let value = math::primal(op, &args).map_err(|err| DomainError {
            node: Some(id),
            ..err
        })?;
        let grad_wrt_parents = math::local_partials(op, &args);

        self.operations += 1;
        self.nodes.push(Node {
            value,
            op,
            parents: operands.to_vec(),
            children: Vec::new(),
            grad_wrt_parents,
            partial_derivative: 0.0,
            adjoint: 0.0,
            name: Some(format!("v{}", self.operations)),
        });
        for &parent in operands {
            self.nodes[parent.0].children.push(id);
        }
        Ok(id)
    }

    pub fn add(&mut self, a: NodeId, b: NodeId) -> Result<NodeId> {
        self.apply(Operator::Add, &[a, b])
    }

    pub fn sub(&mut self, a: NodeId, b: NodeId) -> Result<NodeId> {
        self.apply(Operator::Sub, &[a, b])
    }

    pub fn mul(&mut self, a: NodeId, b: NodeId) -> Result<NodeId> {
        self.apply(Operator::Mul, &[a, b])
    }

    pub fn div(&mut self, a: NodeId, b: NodeId) -> Result<NodeId> {
        self.apply(Operator::Div, &[a, b])
    }

    pub fn neg(&mut self, a: NodeId) -> Result<NodeId> {
        self.apply(Operator::Neg, &[a])
    }

    pub fn log(&mut self, a: NodeId) -> Result<NodeId> {
        self.apply(Operator::Log, &[a])
    }

    pub fn sin(&mut self, a: NodeId) -> Result<NodeId> {
        self.apply(Operator::Sin, &[a])
    }

    pub fn cos(&mut self, a: NodeId) -> Result<NodeId> {
        self.apply(Operator::Cos, &[a])
    }

    pub fn exp(&mut self, a: NodeId) -> Result<NodeId> {
        self.apply(Operator::Exp, &[a])
    }

    pub fn pow_const(&mut self, a: NodeId, exponent: f64) -> Result<NodeId> {
        self.apply(Operator::PowConst(exponent), &[a])
    }
}

/// Builds `y = log x1 + x1·x2 − sin x2` at `(x1, x2) = (2, 5)` into an empty
/// graph and returns the output node.
///
/// Nodes are created in the order x1, x2, v1 = log x1, v2 = x1·x2,
/// v3 = sin x2, v4 = v1 + v2, v5 = v4 − v3.
pub fn build_example(graph: &mut Graph) -> Result<NodeId> {
    if !graph.is_empty() {
        return Err(Error::InvalidParameter(
            "build_example needs an empty graph",
        ));
    }
    let x1 = graph.new_variable("x1", 2.0)?;
    let x2 = graph.new_variable("x2", 5.0)?;
    let v1 = graph.log(x1)?;
    let v2 = graph.mul(x1, x2)?;
    let v3 = graph.sin(x2)?;
    let v4 = graph.add(v1, v2)?;
    graph.sub(v4, v3)
}
