//! Scalar automatic differentiation over an explicit computational graph.
//!
//! Building an expression evaluates it: every operation appends one
//! [`Node`] that stores its value, its operands and the local partial
//! derivatives with respect to each operand. Derivatives then come from a
//! single linear sweep over a topologically ordered [`Tape`]:
//!
//! - [`forward_derivatives`] propagates tangents `∂v/∂x` from one seed
//!   variable towards the output;
//! - [`reverse_derivatives`] propagates adjoints `∂y/∂v` from one output back
//!   to every input in one pass.
//!
//! ```
//! use adgraph_core::{Graph, forward_derivatives, reverse_derivatives};
//!
//! let mut g = Graph::new();
//! let x1 = g.new_variable("x1", 2.0)?;
//! let x2 = g.new_variable("x2", 5.0)?;
//! let v1 = g.log(x1)?;
//! let v2 = g.mul(x1, x2)?;
//! let v3 = g.sin(x2)?;
//! let v4 = g.add(v1, v2)?;
//! let y = g.sub(v4, v3)?;
//!
//! assert_eq!(forward_derivatives(&mut g, x1)?[y], 5.5);
//! let adjoints = reverse_derivatives(&mut g, y)?;
//! assert_eq!(adjoints[x1], 5.5);
//! assert!((adjoints[x2] - 1.716).abs() < 5e-4);
//! # Ok::<(), adgraph_core::Error>(())
//! ```
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

mod derivatives;
mod error;
mod forward;
mod graph;
mod math;
mod ordering;
mod reverse;

pub mod expr;
pub mod gradcheck;

pub use derivatives::Derivatives;
pub use error::{DomainError, Error, Result};
pub use expr::{lower, parse, Bindings, Expr, ParseError};
pub use forward::forward_derivatives;
pub use graph::{build_example, Graph, Node, NodeId, Operator};
pub use ordering::{check_tape, forward_tape, reverse_tape, Direction, Tape};
pub use reverse::{reverse_derivatives, reverse_derivatives_with, AdjointUpdate};
