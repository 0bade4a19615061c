//! The covolume-bound chain, its configuration, and an end-to-end run of
//! every stage on a concrete instance.

mod bound;
mod config;
mod demo;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use bound::{covolume_bound, log_bound_c, BoundReport, Provenance, Quantity};
pub use config::{PipelineConfig, DEFAULT_DIMENSION, DEFAULT_EXPONENT_EPSILON};
pub use demo::{end_to_end_demo, DemoInput, DemoOutput, DemoReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    Config,
    Net,
    Delaunay,
    GoodTriangulation,
    Graph,
    Embed,
    Tube,
    GromovGuth,
    Bound,
}

impl std::fmt::Display for Stage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Stage::Config => "config",
            Stage::Net => "net",
            Stage::Delaunay => "delaunay",
            Stage::GoodTriangulation => "good-triangulation",
            Stage::Graph => "graph",
            Stage::Embed => "embed",
            Stage::Tube => "tube",
            Stage::GromovGuth => "gromov-guth",
            Stage::Bound => "bound",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
#[error("[{stage}] {message}")]
pub struct PipelineError {
    pub stage: Stage,
    pub message: String,
    /// An iterative stage gave up rather than rejecting its input.
    pub nonconvergence: bool,
}

impl PipelineError {
    pub fn precondition(stage: Stage, message: impl Into<String>) -> Self {
        Self {
            stage,
            message: message.into(),
            nonconvergence: false,
        }
    }

    pub fn nonconvergence(stage: Stage, message: impl Into<String>) -> Self {
        Self {
            stage,
            message: message.into(),
            nonconvergence: true,
        }
    }
}
