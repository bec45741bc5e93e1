//! Seeded random expressions for property tests.
//!
//! Trees are drawn without structural guards; a draw is kept only if every
//! sub-expression evaluates finitely at the sampled point, stays within
//! [`MAGNITUDE_LIMIT`], and keeps clear of the domain boundaries of `log`,
//! `/` and `^` by at least [`BOUNDARY_MARGIN`]. Arguments of `sin`, `cos`
//! and `exp` are also capped at [`ARGUMENT_LIMIT`] in magnitude: past that,
//! nested exponentials and fast oscillation make a central difference with
//! `h = 1e-6` too inaccurate to serve as a reference.

use alloc::format;
use alloc::vec::Vec;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::expr::{BinaryOp, Bindings, Expr, Function, UnaryOp};

pub const MAX_ATTEMPTS: usize = 100;
pub const MAGNITUDE_LIMIT: f64 = 1e6;
pub const BOUNDARY_MARGIN: f64 = 1e-2;
pub const ARGUMENT_LIMIT: f64 = 5.0;

const EXPONENTS: [f64; 5] = [2.0, 3.0, 0.5, 1.5, -1.0];
const FUNCTIONS: [Function; 4] = [Function::Log, Function::Sin, Function::Cos, Function::Exp];
const BINARY: [BinaryOp; 4] = [BinaryOp::Add, BinaryOp::Sub, BinaryOp::Mul, BinaryOp::Div];

/// Draws an expression of depth at most `max_depth` over the variables
/// `x1..=x{n_vars}` together with a point in `[-2, 2]^n_vars` where it is
/// well conditioned. Identical arguments give identical results.
pub fn random_expression(seed: u64, max_depth: usize, n_vars: usize) -> Result<(Expr, Bindings)> {
    if max_depth == 0 {
        return Err(Error::InvalidParameter("max_depth must be at least 1"));
    }
    if n_vars == 0 {
        return Err(Error::InvalidParameter("n_vars must be at least 1"));
    }
    let names: Vec<_> = (1..=n_vars).map(|i| format!("x{i}")).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    for _ in 0..MAX_ATTEMPTS {
        let expr = tree(&mut rng, max_depth, &names);
        let bindings: Bindings = names
            .iter()
            .map(|name| (name.clone(), rng.gen_range(-2.0..=2.0)))
            .collect();
        if conditioned_value(&expr, &bindings).is_some() {
            return Ok((expr, bindings));
        }
    }
    Err(Error::GenerationFailed(MAX_ATTEMPTS))
}

fn leaf(rng: &mut ChaCha8Rng, names: &[alloc::string::String]) -> Expr {
    if rng.gen_bool(0.75) {
        Expr::Variable(names[rng.gen_range(0..names.len())].clone())
    } else {
        Expr::Literal(f64::from(rng.gen_range(1..=12u8)) / 4.0)
    }
}

fn tree(rng: &mut ChaCha8Rng, depth: usize, names: &[alloc::string::String]) -> Expr {
    if depth == 1 || rng.gen_bool(0.15) {
        return leaf(rng, names);
    }
    match rng.gen_range(0..10) {
        0..=3 => {
            let op = BINARY[rng.gen_range(0..BINARY.len())];
            let left = tree(rng, depth - 1, names);
            let right = tree(rng, depth - 1, names);
            Expr::binary(op, left, right)
        }
        4 => Expr::negate(tree(rng, depth - 1, names)),
        5..=8 => {
            let func = FUNCTIONS[rng.gen_range(0..FUNCTIONS.len())];
            Expr::call(func, tree(rng, depth - 1, names))
        }
        _ => {
            let exponent = EXPONENTS[rng.gen_range(0..EXPONENTS.len())];
            Expr::binary(
                BinaryOp::Pow,
                tree(rng, depth - 1, names),
                Expr::Literal(exponent),
            )
        }
    }
}

/// Value of `expr` if it and all of its sub-expressions are acceptable.
fn conditioned_value(expr: &Expr, bindings: &Bindings) -> Option<f64> {
    let guard_ok = match expr {
        Expr::Call(Function::Log, arg) => conditioned_value(arg, bindings)? >= BOUNDARY_MARGIN,
        Expr::Binary(BinaryOp::Div, num, den) => {
            conditioned_value(num, bindings).is_some()
                && libm::fabs(conditioned_value(den, bindings)?) >= BOUNDARY_MARGIN
        }
        Expr::Binary(BinaryOp::Pow, base, exponent) => {
            let base = conditioned_value(base, bindings)?;
            match **exponent {
                Expr::Literal(c) if libm::trunc(c) != c => base >= BOUNDARY_MARGIN,
                Expr::Literal(c) if c < 0.0 => libm::fabs(base) >= BOUNDARY_MARGIN,
                _ => true,
            }
        }
        Expr::Call(_, arg) => libm::fabs(conditioned_value(arg, bindings)?) <= ARGUMENT_LIMIT,
        Expr::Unary(UnaryOp::Neg, e) => conditioned_value(e, bindings).is_some(),
        Expr::Binary(_, l, r) => {
            conditioned_value(l, bindings).is_some() && conditioned_value(r, bindings).is_some()
        }
        Expr::Literal(_) | Expr::Variable(_) => true,
    };
    if !guard_ok {
        return None;
    }
    let value = expr.evaluate(bindings).ok()?;
    (value.is_finite() && libm::fabs(value) <= MAGNITUDE_LIMIT).then_some(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        for seed in 0..20 {
            assert_eq!(
                random_expression(seed, 6, 3).unwrap(),
                random_expression(seed, 6, 3).unwrap()
            );
        }
    }

    #[test]
    fn depth_one_is_a_leaf() {
        for seed in 0..50 {
            let (expr, bindings) = random_expression(seed, 1, 1).unwrap();
            assert!(matches!(expr, Expr::Literal(_) | Expr::Variable(_)));
            assert_eq!(bindings.len(), 1);
        }
    }

    #[test]
    fn samples_evaluate_finitely_within_depth() {
        for seed in 0..500 {
            let (expr, bindings) = random_expression(seed, 8, 6).unwrap();
            assert!(expr.depth() <= 8);
            let value = expr.evaluate(&bindings).unwrap();
            assert!(value.is_finite() && value.abs() <= MAGNITUDE_LIMIT);
            assert!(bindings.values().all(|v| (-2.0..=2.0).contains(v)));
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(
            random_expression(0, 0, 1),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            random_expression(0, 1, 0),
            Err(Error::InvalidParameter(_))
        ));
    }
}
