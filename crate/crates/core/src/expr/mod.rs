//! Textual expressions: parsing, printing, direct evaluation and lowering
//! into a computational graph.

mod ast;
mod lower;
mod parser;

pub use ast::{BinaryOp, Bindings, Expr, Function, UnaryOp};
pub use lower::lower;
pub use parser::{parse, ParseError};
