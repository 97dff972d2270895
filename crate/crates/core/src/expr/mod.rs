//! Scalars, ladder-operator polynomials and expression expansion.

pub mod ladder;
pub mod normal;
pub mod scalar;
pub mod tree;

pub use ladder::{LadderOp, LadderPoly, LadderTerm, ModeLabel, OpKind, Word};
pub use normal::{NormalPoly, Signature};
pub use scalar::{rational_from_decimal, Rational, Scalar, ScalarMonomial, Symbol, HBAR};
pub use tree::{expand, expand_finite_range, Expr, RangeKind};
