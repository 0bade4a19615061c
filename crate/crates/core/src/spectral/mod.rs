//! Spectral gap, Cheeger constant and coarea identity on weighted graphs.
//!
//! Conventions: the vertex measure `m` defaults to the weighted degree `d`,
//! the Laplacian is `M^{-1/2}(D - W)M^{-1/2}`, and the Cheeger constant is
//! `min w(∂S) / min(m(S), m(Sᶜ))` over nonempty proper subsets `S`. With
//! `κ = max d_v/m_v` these satisfy `h²/(2κ) ≤ λ₁ ≤ 2h`; `κ = 1` by default.

mod cheeger;
mod coarea;
mod graph;
mod laplacian;

use thiserror::Error;

pub use cheeger::{
    cheeger_buser_report, cheeger_constant, CheegerCut, CheegerMode, SandwichReport, EXACT_CHEEGER_MAX_VERTICES,
};
pub use coarea::{coarea_check, CoareaReport};
pub use graph::{parse_vertex_function, WeightedGraph};
pub use laplacian::{fiedler_pair, lambda1, normalized_laplacian};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("graph is disconnected; the spectral gap vanishes")]
    Disconnected,
    #[error("graph too large for exact mode: {0}")]
    TooLarge(String),
    #[error("invalid function: {0}")]
    InvalidFunction(String),
    #[error("parse error: {0}")]
    Parse(String),
}
