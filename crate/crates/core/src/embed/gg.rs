use serde::{Deserialize, Serialize};

use super::EmbedError;

/// Smallest ambient dimension for which the inequality is available.
pub const GG_MIN_DIMENSION: usize = 7;

/// `(λ₁·V)^{n/(n-1)} ≤ c_n·T^{-n}·V_T`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GromovGuthReport {
    pub lambda1: f64,
    pub hyperbolic_volume: f64,
    pub thickness: f64,
    pub tube_volume: f64,
    pub dimension: usize,
    pub cn: f64,
    pub exponent: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

pub fn gromov_guth_evaluate(
    lambda1: f64,
    v_hyp: f64,
    t: f64,
    v_t: f64,
    n: usize,
    cn: f64,
) -> Result<GromovGuthReport, EmbedError> {
    if n < GG_MIN_DIMENSION {
        return Err(EmbedError::InvalidInput(format!(
            "the Gromov–Guth inequality requires an embedding in R^n with n >= {GG_MIN_DIMENSION}, got n = {n}"
        )));
    }
    for (name, v) in [("lambda1", lambda1), ("V_hyp", v_hyp), ("T", t), ("V_T", v_t), ("c_n", cn)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(EmbedError::InvalidInput(format!("{name} must be positive and finite, got {v}")));
        }
    }
    let exponent = n as f64 / (n as f64 - 1.0);
    let lhs = (lambda1 * v_hyp).powf(exponent);
    let rhs = cn * t.powi(-(n as i32)) * v_t;
    Ok(GromovGuthReport {
        lambda1,
        hyperbolic_volume: v_hyp,
        thickness: t,
        tube_volume: v_t,
        dimension: n,
        cn,
        exponent,
        lhs,
        rhs,
        holds: lhs <= rhs,
    })
}
