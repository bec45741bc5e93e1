use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use core::fmt;

use crate::error::{Error, Result};
use crate::graph::Operator;
use crate::math;

/// Variable values keyed by name.
pub type Bindings = BTreeMap<String, f64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnaryOp {
    Neg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    /// Right operand must be a [`Expr::Literal`].
    Pow,
}

impl BinaryOp {
    pub fn symbol(self) -> char {
        match self {
            BinaryOp::Add => '+',
            BinaryOp::Sub => '-',
            BinaryOp::Mul => '*',
            BinaryOp::Div => '/',
            BinaryOp::Pow => '^',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Function {
    Log,
    Sin,
    Cos,
    Exp,
}

impl Function {
    pub fn name(self) -> &'static str {
        match self {
            Function::Log => "log",
            Function::Sin => "sin",
            Function::Cos => "cos",
            Function::Exp => "exp",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "log" => Some(Function::Log),
            "sin" => Some(Function::Sin),
            "cos" => Some(Function::Cos),
            "exp" => Some(Function::Exp),
            _ => None,
        }
    }

    pub(crate) fn operator(self) -> Operator {
        match self {
            Function::Log => Operator::Log,
            Function::Sin => Operator::Sin,
            Function::Cos => Operator::Cos,
            Function::Exp => Operator::Exp,
        }
    }
}

/// Parse tree of a textual expression.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Literal(f64),
    Variable(String),
    Unary(UnaryOp, Box<Expr>),
    Binary(BinaryOp, Box<Expr>, Box<Expr>),
    Call(Function, Box<Expr>),
}

impl Expr {
    pub fn var(name: &str) -> Self {
        Expr::Variable(name.to_string())
    }

    pub fn negate(operand: Expr) -> Self {
        Expr::Unary(UnaryOp::Neg, Box::new(operand))
    }

    pub fn binary(op: BinaryOp, left: Expr, right: Expr) -> Self {
        Expr::Binary(op, Box::new(left), Box::new(right))
    }

    pub fn call(func: Function, arg: Expr) -> Self {
        Expr::Call(func, Box::new(arg))
    }

    /// Height of the tree; a leaf has depth 1 and the exponent of `^` does
    /// not count.
    pub fn depth(&self) -> usize {
        match self {
            Expr::Literal(_) | Expr::Variable(_) => 1,
            Expr::Unary(_, e) | Expr::Call(_, e) => 1 + e.depth(),
            Expr::Binary(BinaryOp::Pow, base, _) => 1 + base.depth(),
            Expr::Binary(_, l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    /// Evaluates the tree directly, without building a graph.
    pub fn evaluate(&self, bindings: &Bindings) -> Result<f64> {
        let value = match self {
            Expr::Literal(v) => *v,
            Expr::Variable(name) => *bindings
                .get(name)
                .ok_or_else(|| Error::UnboundVariable(name.clone()))?,
            Expr::Unary(UnaryOp::Neg, e) => math::primal(Operator::Neg, &[e.evaluate(bindings)?])?,
            Expr::Call(func, e) => math::primal(func.operator(), &[e.evaluate(bindings)?])?,
            Expr::Binary(BinaryOp::Pow, base, exponent) => {
                let Expr::Literal(c) = **exponent else {
                    return Err(Error::NonConstantExponent);
                };
                math::primal(Operator::PowConst(c), &[base.evaluate(bindings)?])?
            }
            Expr::Binary(op, l, r) => {
                let args = [l.evaluate(bindings)?, r.evaluate(bindings)?];
                math::primal(binary_operator(*op), &args)?
            }
        };
        Ok(value)
    }
}

pub(crate) fn binary_operator(op: BinaryOp) -> Operator {
    match op {
        BinaryOp::Add => Operator::Add,
        BinaryOp::Sub => Operator::Sub,
        BinaryOp::Mul => Operator::Mul,
        BinaryOp::Div => Operator::Div,
        BinaryOp::Pow => unreachable!("pow carries its exponent separately"),
    }
}

// Binding strength, loosest first. Matches the parser's grammar levels.
const SUM: u8 = 1;
const PRODUCT: u8 = 2;
const PREFIX: u8 = 3;
const POWER: u8 = 4;
const ATOM: u8 = 5;

fn precedence(expr: &Expr) -> u8 {
    match expr {
        Expr::Binary(BinaryOp::Add | BinaryOp::Sub, ..) => SUM,
        Expr::Binary(BinaryOp::Mul | BinaryOp::Div, ..) => PRODUCT,
        Expr::Unary(..) => PREFIX,
        Expr::Binary(BinaryOp::Pow, ..) => POWER,
        Expr::Literal(v) if v.is_sign_negative() => PREFIX,
        _ => ATOM,
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, expr: &Expr, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({expr})")
    } else {
        write!(f, "{expr}")
    }
}

/// Prints with the minimum parentheses needed to parse back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Literal(v) => write!(f, "{v}"),
            Expr::Variable(name) => f.write_str(name),
            Expr::Call(func, arg) => write!(f, "{}({arg})", func.name()),
            Expr::Unary(UnaryOp::Neg, e) => {
                f.write_str("-")?;
                write_operand(f, e, precedence(e) < PREFIX)
            }
            Expr::Binary(BinaryOp::Pow, base, exponent) => {
                write_operand(f, base, precedence(base) < ATOM)?;
                match &**exponent {
                    Expr::Literal(c) => write!(f, "^{c}"),
                    other => write!(f, "^({other})"),
                }
            }
            Expr::Binary(op, l, r) => {
                let own = precedence(self);
                write_operand(f, l, precedence(l) < own)?;
                write!(f, " {} ", op.symbol())?;
                write_operand(f, r, precedence(r) <= own)
            }
        }
    }
}
