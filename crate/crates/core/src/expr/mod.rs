//! Expression parsing and jet evaluation.
//!
//! Curve components and ruling coefficients are entered as text, parsed into
//! an [`ExprNode`] and evaluated as fourth-order [`Jet`]s, so every derivative
//! the surface formulas need comes out exact to rounding.

mod ast;
mod eval;
mod jet;
mod parser;

pub use ast::{BinaryOp, ExprNode, Function};
pub use eval::{eval_jet, eval_scalar, DomainKind, EvalError, ABS_KINK_TOLERANCE};
pub use jet::{Jet, JET_ORDER};
pub use parser::{parse, parse_in, ParseError, ParseErrorKind};
