use alloc::string::String;
use core::fmt;

use crate::expr::ParseError;
use crate::graph::{NodeId, Operator};

/// A primal operation was asked to leave the real domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DomainError {
    pub op: Operator,
    /// The operand that triggered the violation (the base for `pow`,
    /// the denominator for `div`).
    pub operand: f64,
    /// Id the node would have received, when the failure happened while
    /// building a graph.
    pub node: Option<NodeId>,
}

impl fmt::Display for DomainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.op {
            Operator::Log => write!(f, "log of {}", self.operand)?,
            Operator::Div => write!(f, "division by {}", self.operand)?,
            Operator::PowConst(exponent) if self.operand == 0.0 => {
                write!(f, "0 raised to negative power {exponent}")?
            }
            Operator::PowConst(exponent) => {
                write!(f, "{} raised to non-integer power {exponent}", self.operand)?
            }
            op => write!(f, "{} of {}", op.tag(), self.operand)?,
        }
        if let Some(node) = self.node {
            write!(f, " (node #{})", node.index())?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("variable `{0}` is already defined")]
    DuplicateVariable(String),
    #[error("domain error: {0}")]
    Domain(DomainError),
    #[error("domain error while perturbing `{variable}`: {error}")]
    PerturbedDomain {
        variable: String,
        error: DomainError,
    },
    #[error("node #{} does not exist", .0.index())]
    InvalidNode(NodeId),
    #[error("node #{} is not a variable and cannot seed a forward pass", .0.index())]
    SeedNotVariable(NodeId),
    #[error("`{}` expects {expected} operand(s), got {got}", .op.tag())]
    Arity {
        op: Operator,
        expected: usize,
        got: usize,
    },
    #[error("`{}` is a leaf and cannot be applied to operands", .0.tag())]
    LeafOperator(Operator),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("exponent of `^` must be a numeric literal")]
    NonConstantExponent,
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("no well-conditioned expression found after {0} attempts")]
    GenerationFailed(usize),
}

impl From<DomainError> for Error {
    fn from(err: DomainError) -> Self {
        Error::Domain(err)
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
