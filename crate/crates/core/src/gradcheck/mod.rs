//! Finite-difference validation of the derivative passes.

mod generate;
mod oracle;

use alloc::string::{String, ToString};
use alloc::vec::Vec;

pub use generate::{
    random_expression, ARGUMENT_LIMIT, BOUNDARY_MARGIN, MAGNITUDE_LIMIT, MAX_ATTEMPTS,
};
pub use oracle::finite_difference;

use crate::error::{Error, Result};
use crate::expr::{lower, Bindings, Expr};
use crate::reverse::reverse_derivatives;

/// Relative step used by [`check_gradient`]: `h = STEP · max(1, |x|)`.
pub const STEP: f64 = 1e-6;

/// `|a − b| / max(1, |a|, |b|)`
pub fn relative_error(a: f64, b: f64) -> f64 {
    libm::fabs(a - b) / 1f64.max(libm::fabs(a)).max(libm::fabs(b))
}

#[derive(Debug, Clone, PartialEq)]
pub struct VariableCheck {
    pub name: String,
    pub ad_value: f64,
    pub fd_value: f64,
    pub rel_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    /// One entry per variable of the expression, in order of first appearance.
    pub variables: Vec<VariableCheck>,
    pub tolerance: f64,
    pub pass: bool,
}

/// Compares one reverse pass against central differences for every variable.
pub fn check_gradient(ast: &Expr, bindings: &Bindings, tolerance: f64) -> Result<CheckReport> {
    if tolerance.is_nan() || tolerance <= 0.0 {
        return Err(Error::InvalidParameter("tolerance must be positive"));
    }
    let (mut graph, output) = lower(ast, bindings)?;
    let adjoints = reverse_derivatives(&mut graph, output)?;

    let variables = graph
        .variables()
        .map(|(name, id)| {
            let x = graph.node(id).value();
            let h = STEP * 1f64.max(libm::fabs(x));
            let ad_value = adjoints[id];
            let fd_value = finite_difference(ast, bindings, name, h)?;
            Ok(VariableCheck {
                name: name.to_string(),
                ad_value,
                fd_value,
                rel_error: relative_error(ad_value, fd_value),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let pass = variables.iter().all(|v| v.rel_error <= tolerance);
    Ok(CheckReport {
        variables,
        tolerance,
        pass,
    })
}
