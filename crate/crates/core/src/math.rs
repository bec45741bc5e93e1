//! Primitive numeric operations shared by graph construction and direct
//! expression evaluation, so both paths produce bit-identical primal values.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::DomainError;
use crate::graph::Operator;

pub(crate) fn ln(x: f64) -> f64 {
    libm::log(x)
}

pub(crate) fn sin(x: f64) -> f64 {
    libm::sin(x)
}

pub(crate) fn cos(x: f64) -> f64 {
    libm::cos(x)
}

pub(crate) fn exp(x: f64) -> f64 {
    libm::exp(x)
}

pub(crate) fn pow(base: f64, exponent: f64) -> f64 {
    libm::pow(base, exponent)
}

fn is_integer(x: f64) -> bool {
    libm::trunc(x) == x
}

fn violation(op: Operator, operand: f64) -> DomainError {
    DomainError {
        op,
        operand,
        node: None,
    }
}

/// Primal value of `op` applied to `args`.
///
/// `args.len()` must equal `op.arity()`; leaf operators are not evaluated here.
pub(crate) fn primal(op: Operator, args: &[f64]) -> Result<f64, DomainError> {
    debug_assert_eq!(args.len(), op.arity());
    let value = match op {
        Operator::Add => args[0] + args[1],
        Operator::Sub => args[0] - args[1],
        Operator::Mul => args[0] * args[1],
        Operator::Div => {
            if args[1] == 0.0 {
                return Err(violation(op, args[1]));
            }
            args[0] / args[1]
        }
        Operator::Neg => -args[0],
        Operator::Log => {
            if args[0] <= 0.0 {
                return Err(violation(op, args[0]));
            }
            ln(args[0])
        }
        Operator::Sin => sin(args[0]),
        Operator::Cos => cos(args[0]),
        Operator::Exp => exp(args[0]),
        Operator::PowConst(c) => {
            let a = args[0];
            if (a < 0.0 && !is_integer(c)) || (a == 0.0 && c < 0.0) {
                return Err(violation(op, a));
            }
            pow(a, c)
        }
        Operator::Var | Operator::Const => unreachable!("leaf operators carry no computation"),
    };
    Ok(value)
}

/// Partial derivatives of `op` with respect to each operand slot, evaluated
/// at `args`. Only called after `primal` succeeded on the same arguments.
pub(crate) fn local_partials(op: Operator, args: &[f64]) -> Vec<f64> {
    match op {
        Operator::Add => vec![1.0, 1.0],
        Operator::Sub => vec![1.0, -1.0],
        Operator::Mul => vec![args[1], args[0]],
        Operator::Div => {
            let (a, b) = (args[0], args[1]);
            vec![1.0 / b, -a / (b * b)]
        }
        Operator::Neg => vec![-1.0],
        Operator::Log => vec![1.0 / args[0]],
        Operator::Sin => vec![cos(args[0])],
        Operator::Cos => vec![-sin(args[0])],
        Operator::Exp => vec![exp(args[0])],
        Operator::PowConst(c) => vec![c * pow(args[0], c - 1.0)],
        Operator::Var | Operator::Const => Vec::new(),
    }
}
