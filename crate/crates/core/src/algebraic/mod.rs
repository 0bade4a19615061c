//! Integer polynomials, Mahler measures and the arithmetic bound chain.

mod bounds;
mod mahler;
mod polynomial;
mod zpoly;

use thiserror::Error;

pub use bounds::{
    degree_bound_from_volume, dobrowolski_bound, euler_phi, finite_subgroup_order_bound,
    injectivity_radius_bound, max_cyclic_order, translation_length, BoundConstants, TraceKind,
};
pub use mahler::{graeffe_bracket, mahler_estimate, mahler_measure, MahlerEstimate};
pub use polynomial::IntPolynomial;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraicError {
    #[error("the zero polynomial has no Mahler measure")]
    ZeroPolynomial,
    #[error("coefficient overflow")]
    CoefficientOverflow,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("invalid constant: {0}")]
    InvalidConstant(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("root moduli certified only to {achieved:e}, requested {requested:e}")]
    NonConvergence { achieved: f64, requested: f64 },
}

impl AlgebraicError {
    pub fn is_nonconvergence(&self) -> bool {
        matches!(self, Self::NonConvergence { .. })
    }
}
