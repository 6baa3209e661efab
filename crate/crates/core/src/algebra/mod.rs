//! Exact fields, polynomials, rational functions, number fields and real-root isolation.

pub mod cfrac;
pub mod linalg;
pub mod numfield;
pub mod poly;
pub mod ratfunc;
pub mod scalar;
pub mod sturm;

use thiserror::Error;

pub use cfrac::{euclid_cfrac, CfracFailure, CfracOutcome, ContinuedFraction};
pub use numfield::{nf_eval, NumberField, NumberFieldElement};
pub use poly::Polynomial;
pub use ratfunc::RationalFunction;
pub use scalar::{GaussianRational, Rational, Scalar};
pub use sturm::{count_roots, sturm_isolate, IsolatingInterval, SturmChain};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial {0} is not squarefree; deflate by gcd(p, p') first")]
    NotSquarefree(Polynomial),
    #[error("rational function {0} is not odd")]
    NotOdd(RationalFunction),
    #[error("rational function is identically zero")]
    ZeroFunction,
    #[error("denominator is not invertible modulo p: common factor {0}")]
    NotInvertible(Polynomial),
    #[error("polynomial {0} has no positive real root")]
    NoPositiveRoot(Polynomial),
    #[error("singular linear system")]
    Singular,
}
