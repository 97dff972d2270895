//! Exact normal ordering of multimode bosonic ladder-operator polynomials.
//!
//! The pipeline expands an expression into ordered words, splits every word
//! by mode, normal-orders each single-mode factor with Blasiak's closed form
//! and recombines the factors into a canonical [`NormalPoly`]. On top of that
//! sit commutators and expectation-value equations for Lindblad dynamics.
//!
//! ```
//! use bolano_core::{io, normal_order, ParallelConfig};
//!
//! let p = io::parse_poly("b*bd*b").unwrap();
//! let n = normal_order(&p, &ParallelConfig::serial());
//! assert_eq!(io::render(&n, io::Format::Latex), "b_{} + {b^\\dagger_{}} b_{}^{2}");
//! ```

pub mod blasiak;
pub mod error;
pub mod expr;
pub mod io;
pub mod lindblad;
pub mod normord;
pub mod oracle;

pub use blasiak::{blasiak_normal_order, stirling_rs, ModeExpansion, WordProfile};
pub use error::{Error, Result};
pub use expr::{
    expand, Expr, LadderOp, LadderPoly, LadderTerm, ModeLabel, NormalPoly, OpKind, Rational,
    Scalar, Signature, Symbol, Word,
};
pub use lindblad::{lme_expval_evo, Dissipator, EvolutionEquation, ExpVal, LindbladSpec};
pub use normord::{commutator_no, normal_order, ParallelConfig};
