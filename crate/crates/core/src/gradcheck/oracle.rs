//! Central finite differences computed by direct expression evaluation.
//! Nothing in here touches the graph or either derivative pass.

use crate::error::{Error, Result};
use crate::expr::{Bindings, Expr};

/// `(f(x + h·e) − f(x − h·e)) / 2h` along the variable `var`.
pub fn finite_difference(ast: &Expr, bindings: &Bindings, var: &str, h: f64) -> Result<f64> {
    if h.is_nan() || h <= 0.0 {
        return Err(Error::InvalidParameter("step size must be positive"));
    }
    let x = *bindings
        .get(var)
        .ok_or_else(|| Error::UnboundVariable(var.into()))?;

    let mut shifted = bindings.clone();
    let mut eval_at = |point: f64| {
        shifted.insert(var.into(), point);
        ast.evaluate(&shifted).map_err(|err| match err {
            Error::Domain(error) => Error::PerturbedDomain {
                variable: var.into(),
                error,
            },
            other => other,
        })
    };
    let upper = eval_at(x + h)?;
    let lower = eval_at(x - h)?;
    Ok((upper - lower) / (2.0 * h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use alloc::string::ToString;

    fn at(pairs: &[(&str, f64)]) -> Bindings {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn running_example() {
        let ast = parse("log(x1) + x1*x2 - sin(x2)").unwrap();
        let b = at(&[("x1", 2.0), ("x2", 5.0)]);
        let d1 = finite_difference(&ast, &b, "x1", 1e-6).unwrap();
        assert!((d1 - 5.5).abs() < 1e-5);
        // ∂y/∂x2 = x1 − cos x2 = 2 − cos 5 = 1.716338...
        let d2 = finite_difference(&ast, &b, "x2", 1e-6).unwrap();
        assert!((d2 - 1.71634).abs() < 1e-5);
        assert!((d2 - (2.0 - libm::cos(5.0))).abs() < 1e-8);
    }

    #[test]
    fn constant_has_zero_slope() {
        let ast = parse("4.5").unwrap();
        let d = finite_difference(&ast, &at(&[("x", 1.0)]), "x", 1e-6).unwrap();
        assert_eq!(d, 0.0);
    }

    #[test]
    fn square() {
        let ast = parse("x*x").unwrap();
        let d = finite_difference(&ast, &at(&[("x", 3.0)]), "x", 1e-6).unwrap();
        assert!((d - 6.0).abs() < 1e-7);
    }

    #[test]
    fn errors() {
        let ast = parse("log(x)").unwrap();
        let err = finite_difference(&ast, &at(&[("x", 1e-9)]), "x", 1e-6).unwrap_err();
        assert!(matches!(err, Error::PerturbedDomain { ref variable, .. } if variable == "x"));
        assert!(matches!(
            finite_difference(&ast, &at(&[("x", 1.0)]), "y", 1e-6),
            Err(Error::UnboundVariable(_))
        ));
        assert!(matches!(
            finite_difference(&ast, &at(&[("x", 1.0)]), "x", 0.0),
            Err(Error::InvalidParameter(_))
        ));
    }
}
