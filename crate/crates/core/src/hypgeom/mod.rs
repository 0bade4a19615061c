//! Hyperbolic 3-space: points, ball volumes, ε-nets and Delaunay
//! triangulations.

mod delaunay;
mod net;
mod point;
mod volume;

use thiserror::Error;

pub use delaunay::{delaunay, delaunay_with, DelaunayOptions, HyperbolicDelaunay, JitterRecord};
pub use net::{epsilon_net, epsilon_net_with, BallDomain, NetConfig, NetResult};
pub use point::{hyp_distance, hyp_distance_coords, minkowski, Boost, HPoint, HYPERBOLOID_TOLERANCE};
pub use volume::{ball_volume, ball_volume_ratio, net_cardinality_and_degree_bounds};

pub(crate) use net::fibonacci_sphere;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("seed violation: {0}")]
    SeedViolation(String),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Parses one point per non-empty line as four hyperboloid coordinates.
/// Lines starting with `#` are skipped.
pub fn parse_points(text: &str) -> Result<Vec<HPoint>, GeometryError> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let vals: Vec<f64> = line
            .split_whitespace()
            .map(|t| t.parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|e| GeometryError::Parse(format!("line {}: {e}", lineno + 1)))?;
        if vals.len() != 4 {
            return Err(GeometryError::Parse(format!(
                "line {}: expected 4 coordinates, found {}",
                lineno + 1,
                vals.len()
            )));
        }
        out.push(HPoint::new(vals[0], vals[1], vals[2], vals[3])?);
    }
    Ok(out)
}

/// Inverse of [`parse_points`]; floats are written in round-trip form.
pub fn format_points(points: &[HPoint]) -> String {
    let mut s = String::new();
    for p in points {
        let c = p.coords();
        s.push_str(&format!("{} {} {} {}\n", c[0], c[1], c[2], c[3]));
    }
    s
}
