//! Lowering an [`Expr`] into a [`Graph`].
//!
//! Variables are shared: every occurrence of a name maps to one var node.
//! Everything else gets its own node, with no merging of repeated
//! sub-expressions. Variables are created first (in order of first
//! appearance), then literals, then operations grouped by height so that
//! all operations on inputs come before operations on their results. For
//! `log(x1) + x1*x2 - sin(x2)` this numbers the operations v1 = log x1,
//! v2 = x1·x2, v3 = sin x2, v4 = v1 + v2, v5 = v4 − v3.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use super::ast::{binary_operator, BinaryOp, Bindings, Expr, UnaryOp};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, Operator};

enum Item<'a> {
    Variable(&'a str),
    Literal(f64),
    Operation(Operator, Vec<usize>),
}

struct Flattened<'a> {
    /// Postorder; operand indices always point backwards.
    items: Vec<(Item<'a>, usize)>,
}

impl<'a> Flattened<'a> {
    fn push(&mut self, item: Item<'a>, height: usize) -> usize {
        self.items.push((item, height));
        self.items.len() - 1
    }

    fn height(&self, index: usize) -> usize {
        self.items[index].1
    }

    fn visit(&mut self, expr: &'a Expr) -> Result<usize> {
        let (op, operands) = match expr {
            Expr::Literal(v) => return Ok(self.push(Item::Literal(*v), 0)),
            Expr::Variable(name) => return Ok(self.push(Item::Variable(name), 0)),
            Expr::Unary(UnaryOp::Neg, e) => (Operator::Neg, alloc::vec![self.visit(e)?]),
            Expr::Call(func, e) => (func.operator(), alloc::vec![self.visit(e)?]),
            Expr::Binary(BinaryOp::Pow, base, exponent) => {
                let Expr::Literal(c) = **exponent else {
                    return Err(Error::NonConstantExponent);
                };
                (Operator::PowConst(c), alloc::vec![self.visit(base)?])
            }
            Expr::Binary(op, l, r) => {
                let l = self.visit(l)?;
                let r = self.visit(r)?;
                (binary_operator(*op), alloc::vec![l, r])
            }
        };
        let height = 1 + operands.iter().map(|&i| self.height(i)).max().unwrap_or(0);
        Ok(self.push(Item::Operation(op, operands), height))
    }
}

/// Builds the computational graph of `ast` at the point given by `bindings`
/// and returns it together with the output node.
pub fn lower(ast: &Expr, bindings: &Bindings) -> Result<(Graph, NodeId)> {
    let mut flat = Flattened { items: Vec::new() };
    let root = flat.visit(ast)?;

    let mut graph = Graph::new();
    let mut ids: Vec<Option<NodeId>> = alloc::vec![None; flat.items.len()];
    let mut variables: BTreeMap<&str, NodeId> = BTreeMap::new();

    for (index, (item, _)) in flat.items.iter().enumerate() {
        if let Item::Variable(name) = item {
            let id = match variables.get(name) {
                Some(&id) => id,
                None => {
                    let value = *bindings
                        .get(*name)
                        .ok_or_else(|| Error::UnboundVariable(String::from(*name)))?;
                    let id = graph.new_variable(name, value)?;
                    variables.insert(name, id);
                    id
                }
            };
            ids[index] = Some(id);
        }
    }
    for (index, (item, _)) in flat.items.iter().enumerate() {
        if let Item::Literal(v) = item {
            ids[index] = Some(graph.new_constant(*v));
        }
    }

    let mut schedule: Vec<usize> = (0..flat.items.len())
        .filter(|&i| matches!(flat.items[i].0, Item::Operation(..)))
        .collect();
    schedule.sort_by_key(|&i| flat.height(i));
    for index in schedule {
        let Item::Operation(op, operands) = &flat.items[index].0 else {
            unreachable!()
        };
        let operand_ids: Vec<NodeId> = operands
            .iter()
            .map(|&i| ids[i].expect("operands are scheduled first"))
            .collect();
        ids[index] = Some(graph.apply(*op, &operand_ids)?);
    }

    let output = ids[root].expect("every item was lowered");
    Ok((graph, output))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use alloc::string::ToString;

    fn bindings(pairs: &[(&str, f64)]) -> Bindings {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn running_example_lowers_with_conventional_numbering() {
        let ast = parse("log(x1) + x1*x2 - sin(x2)").unwrap();
        let (g, y) = lower(&ast, &bindings(&[("x1", 2.0), ("x2", 5.0)])).unwrap();
        assert_eq!(g.len(), 7);
        assert!((g.node(y).value() - 11.652).abs() < 5e-4);
        let described: Vec<(String, &str)> = g
            .nodes()
            .map(|(id, n)| (g.display_name(id), n.op().tag()))
            .collect();
        let expected = [
            ("x1", "var"),
            ("x2", "var"),
            ("v1", "log"),
            ("v2", "mul"),
            ("v3", "sin"),
            ("v4", "add"),
            ("v5", "sub"),
        ];
        assert_eq!(described.len(), expected.len());
        for ((name, tag), (want_name, want_tag)) in described.iter().zip(expected) {
            assert_eq!((name.as_str(), *tag), (want_name, want_tag));
        }
        let mut direct = Graph::new();
        let direct_y = crate::graph::build_example(&mut direct).unwrap();
        assert_eq!(g.node(y).value(), direct.node(direct_y).value());
        for (id, node) in g.nodes() {
            assert_eq!(node.parents(), direct.node(id).parents());
        }
    }

    #[test]
    fn shared_variable() {
        let ast = parse("x + x").unwrap();
        let (g, y) = lower(&ast, &bindings(&[("x", 1.0)])).unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(g.node(y).value(), 2.0);
        let x = g.variable("x").unwrap();
        assert_eq!(g.node(y).parents(), &[x, x]);
    }

    #[test]
    fn no_subexpression_merging() {
        let ast = parse("sin(x) + sin(x)").unwrap();
        let (g, _) = lower(&ast, &bindings(&[("x", 1.0)])).unwrap();
        assert_eq!(g.len(), 4);
    }

    #[test]
    fn literals_and_powers() {
        let ast = parse("3*x^2 - 1").unwrap();
        let (g, y) = lower(&ast, &bindings(&[("x", 2.0)])).unwrap();
        assert_eq!(g.node(y).value(), 11.0);
        // x, 3, 1, x^2, 3*x^2, -
        assert_eq!(g.len(), 6);
    }

    #[test]
    fn errors() {
        let ast = parse("log(x)").unwrap();
        assert!(matches!(
            lower(&ast, &bindings(&[("x", -1.0)])),
            Err(Error::Domain(_))
        ));
        assert_eq!(
            lower(&ast, &Bindings::new()).unwrap_err(),
            Error::UnboundVariable("x".to_string())
        );
        let bad = Expr::binary(BinaryOp::Pow, Expr::var("x"), Expr::var("y"));
        assert_eq!(
            lower(&bad, &bindings(&[("x", 1.0), ("y", 2.0)])).unwrap_err(),
            Error::NonConstantExponent
        );
    }

    #[test]
    fn constant_expression() {
        let (g, y) = lower(&parse("3").unwrap(), &Bindings::new()).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g.node(y).value(), 3.0);
    }
}
