//! Straight-line embeddings of graphs in `R^n`: thick layouts, thickness
//! verification, tube volumes, hyperplane slicing and the Gromov–Guth
//! inequality.

mod complex;
mod construct;
mod geometry;
mod gg;
mod graph;
mod slice;
mod thickness;
mod tube;

use thiserror::Error;

pub use complex::EmbeddedComplex;
pub use construct::{thick_embed, thick_embed_detailed, EmbedOptions, Layout, ThickEmbedding, SPACING};
pub use geometry::{capsule_volume, point_segment_distance, segment_distance, triangle_inradius, unit_ball_volume};
pub use gg::{gromov_guth_evaluate, GromovGuthReport, GG_MIN_DIMENSION};
pub use graph::Graph;
pub use slice::{
    evaluate_direction, fiber_complexity, slice_search, slice_search_with, DirectionProfile, SliceMethod, SliceResult,
    OFFSET_GRID, SECTION_SAMPLES,
};
pub use thickness::{verify_thickness, Simplex, ThicknessReport, ThicknessViolation};
pub use tube::{tube_volume, tube_volume_with, TubeEstimate, TubeMethod, MIN_TUBE_SAMPLES};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EmbedError {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("invalid base cycle: {0}")]
    InvalidBaseCycle(String),
    #[error("insufficient ambient dimension: need {required}, have {available}")]
    InsufficientDimension { required: usize, available: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("parse error: {0}")]
    Parse(String),
}
