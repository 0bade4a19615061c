use serde::{Deserialize, Serialize};

use super::{SpectralError, WeightedGraph};

const COAREA_RTOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoareaReport {
    /// `Σ_{ij} w_ij |g_i - g_j|`.
    pub lhs: f64,
    /// `∫_0^∞ w(∂{g ≥ s}) ds`.
    pub rhs: f64,
    pub difference: f64,
    pub holds: bool,
}

/// Discrete coarea formula. The right side is piecewise constant in `s`
/// between consecutive distinct values of `g`, so it is a finite sum.
pub fn coarea_check(g: &WeightedGraph, f: &[f64]) -> Result<CoareaReport, SpectralError> {
    if f.len() != g.vertex_count() {
        return Err(SpectralError::InvalidFunction(format!(
            "{} values for {} vertices",
            f.len(),
            g.vertex_count()
        )));
    }
    if let Some(x) = f.iter().find(|x| !(x.is_finite() && **x >= 0.0)) {
        return Err(SpectralError::InvalidFunction(format!(
            "values must be finite and nonnegative, found {x}"
        )));
    }
    let lhs: f64 = g
        .edges()
        .iter()
        .map(|&(a, b, w)| w * (f[a] - f[b]).abs())
        .sum();

    let mut levels: Vec<f64> = f.to_vec();
    levels.sort_by(f64::total_cmp);
    levels.dedup();
    let mut rhs = 0.0;
    let mut prev = 0.0;
    let mut inside = vec![false; f.len()];
    for &v in &levels {
        for (i, x) in inside.iter_mut().enumerate() {
            *x = f[i] >= v;
        }
        rhs += (v - prev) * g.boundary_weight(&inside);
        prev = v;
    }
    let difference = lhs - rhs;
    Ok(CoareaReport {
        lhs,
        rhs,
        difference,
        holds: difference.abs() <= COAREA_RTOL * lhs.abs().max(rhs.abs()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_and_path() {
        let p = WeightedGraph::path(3);
        let r = coarea_check(&p, &[4.0, 4.0, 4.0]).unwrap();
        assert_eq!((r.lhs, r.rhs), (0.0, 0.0));
        assert!(r.holds);
        let r = coarea_check(&p, &[0.0, 1.0, 2.0]).unwrap();
        assert_eq!((r.lhs, r.rhs), (2.0, 2.0));
        assert!(r.holds);
    }

    #[test]
    fn bad_functions_rejected() {
        let p = WeightedGraph::path(3);
        assert!(coarea_check(&p, &[0.0, -1.0, 2.0]).is_err());
        assert!(coarea_check(&p, &[0.0, 1.0]).is_err());
    }
}
