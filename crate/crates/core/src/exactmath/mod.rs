//! Exact arithmetic: cyclotomic numbers, homogeneous forms, projective points and
//! lines, exact linear algebra and vanishing orders.

mod cyclotomic;
mod form;
mod gcd;
mod ideal;
mod modp;
pub mod linalg;
mod order;
mod point;
mod rng;

pub use cyclotomic::{
    consts, cyc_arith, cyc_constant, cyc_constant_in, rat, totient, ArithOp, ConstName, CycNum,
    Rational, DEFAULT_CONDUCTOR,
};
pub use form::{Form, Mono, MAX_VARS};
pub use gcd::{form_gcd, tetrahedra_planes};
pub use ideal::{
    form_space_dim, hilbert_function, ideal_contains, monomials, same_ideal, truncated_ideal, FormSpan,
};
pub use modp::ModP;
pub use order::{exact_order_along_line, vanishing_order_along_line, vanishing_order_at_point};
pub use point::{line_intersect, ProjLine, ProjPoint};
pub use rng::SeededRng;

/// Errors raised by exact arithmetic and polynomial algebra.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MathError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("unknown constant `{0}`")]
    UnknownConstant(String),
    #[error("conductor {0} is not supported")]
    UnsupportedConductor(u32),
    #[error("conductor {0} does not embed into conductor {1}")]
    ConductorMismatch(u32, u32),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("inhomogeneous input: {0}")]
    Inhomogeneous(String),
    #[error("the zero vector is not a projective point")]
    ZeroPoint,
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("generic directions disagree ({0} vs {1}); retry with another seed")]
    NonGenericDirection(u32, u32),
    #[error("gcd of an empty or all-zero family")]
    EmptyGcd,
}
