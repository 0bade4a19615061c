use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{PipelineConfig, PipelineError, Stage};
use crate::algebraic::{
    degree_bound_from_volume, finite_subgroup_order_bound, injectivity_radius_bound, max_cyclic_order,
};
use crate::complex::min_volume_from_complexity;
use crate::hypgeom::net_cardinality_and_degree_bounds;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// A configuration value, default or explicit.
    Configured,
    /// Measured on a concrete instance.
    Measured,
    /// A default taken verbatim from the finiteness argument.
    Paper,
    /// Computed from other entries of the report.
    Derived,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Quantity {
    pub value: f64,
    pub provenance: Provenance,
    pub description: String,
}

/// The evaluated chain. Every input it depends on is itself an entry, so
/// the report can be recomputed from its own `quantities`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub quantities: BTreeMap<String, Quantity>,
    /// Boolean conclusions at the reference volume.
    pub checks: BTreeMap<String, bool>,
    pub exponent_gap: f64,
    /// `C`; infinite when it overflows `f64`, in which case only
    /// `log10_bound_c` is meaningful.
    pub bound_c: f64,
    pub log10_bound_c: f64,
}

impl BoundReport {
    pub fn value(&self, key: &str) -> Option<f64> {
        self.quantities.get(key).map(|q| q.value)
    }

    pub(crate) fn insert(&mut self, key: &str, value: f64, provenance: Provenance, description: &str) {
        self.quantities.insert(
            key.to_string(),
            Quantity {
                value,
                provenance,
                description: description.to_string(),
            },
        );
    }
}

/// `log C = (ln c_n − n ln T + ln c_{D,n} − (n/(n−1)) ln λ₁) / g`.
pub fn log_bound_c(n: usize, gap: f64, cn: f64, c_dn: f64, lambda1: f64, thickness: f64) -> f64 {
    let nf = n as f64;
    (cn.ln() - nf * thickness.ln() + c_dn.ln() - nf / (nf - 1.0) * lambda1.ln()) / gap
}

fn stage_error(e: impl std::fmt::Display) -> PipelineError {
    PipelineError::precondition(Stage::Bound, e.to_string())
}

/// Exponent gap, the bound `C` with `V_hyp ≤ C`, and the intermediate
/// bounds of the chain evaluated at `config.reference_volume`.
pub fn covolume_bound(config: &PipelineConfig) -> Result<BoundReport, PipelineError> {
    config.validate()?;
    let c = &config.constants;
    let n = config.n;
    let nf = n as f64;
    let eps = config.exponent_epsilon;
    let t = config.thickness;
    let v = config.reference_volume;
    let paper_default = |key: &str| {
        if config.is_explicit(key) {
            Provenance::Configured
        } else {
            Provenance::Paper
        }
    };
    let mut r = BoundReport {
        quantities: BTreeMap::new(),
        checks: BTreeMap::new(),
        exponent_gap: 0.0,
        bound_c: 0.0,
        log10_bound_c: 0.0,
    };
    use Provenance::{Configured, Derived};

    r.insert("n", nf, paper_default("n"), "ambient dimension of the embedding");
    r.insert("exponent_epsilon", eps, paper_default("exponent_epsilon"), "simplex budget exponent V^(1+eps)");
    r.insert(
        "lambda1_floor",
        c.lambda1_floor,
        paper_default("lambda1_floor"),
        "spectral gap floor of a congruence cover",
    );
    r.insert("thickness", t, Configured, "embedding thickness T");
    r.insert("cn", c.cn, Configured, "Gromov-Guth constant c_n");
    r.insert("c_dn", c.c_dn, Configured, "tube constant: V_1 <= c_dn * N");
    r.insert("c1", c.c1, Configured, "Dobrowolski constant");
    r.insert("c2", c.c2, Configured, "deg(k) <= c2 log2 V + c3, slope");
    r.insert("c3", c.c3, Configured, "deg(k) <= c2 log2 V + c3, offset");
    r.insert("margulis_mu3", c.margulis_mu3, Configured, "Margulis constant of H^3");
    r.insert(
        "symmetry_multiplier",
        c.symmetry_multiplier as f64,
        Configured,
        "finite subgroup order over largest cyclic order",
    );
    r.insert("reference_volume", v, Configured, "volume at which the chain is evaluated");

    let exponent = nf / (nf - 1.0);
    let gap = config.exponent_gap();
    r.insert("gg_exponent", exponent, Derived, "n/(n-1)");
    r.insert("exponent_gap", gap, Derived, "n/(n-1) - (1 + eps)");

    let deg_k = degree_bound_from_volume(v, c).map_err(stage_error)?;
    r.insert("degree_bound", deg_k, Derived, "deg(k) <= c2 log2 V + c3");
    r.insert("polynomial_degree_bound", 2.0 * deg_k, Derived, "d = 2 deg(k)");
    let r_inj = injectivity_radius_bound(v, c).map_err(stage_error)?;
    r.insert("injectivity_radius_bound", r_inj, Derived, "r_inj >= c1/2 (log2 log2 d / log2 d)^3");
    let deg_floor = deg_k.floor().max(1.0) as u64;
    let cyclic = max_cyclic_order(deg_floor).map_err(stage_error)?;
    r.insert("max_cyclic_order", cyclic as f64, Derived, "largest order q with phi(q) <= deg(k)");
    let m = finite_subgroup_order_bound(deg_floor, c).map_err(stage_error)?;
    r.insert("finite_subgroup_bound", m as f64, Derived, "m = multiplier * largest cyclic order");

    let tri_eps = r_inj.min(c.margulis_mu3);
    r.insert(
        "triangulation_epsilon",
        tri_eps,
        Derived,
        "net spacing: min(r_inj bound, Margulis constant)",
    );
    let (vertices, degree) = net_cardinality_and_degree_bounds(m, v, tri_eps).map_err(stage_error)?;
    r.insert("vertex_bound", vertices, Derived, "B = m V / vol B(eps/2)");
    r.insert("vertex_degree_bound", degree, Derived, "D = vol B(5 eps/2) / vol B(eps/2)");
    let simplices = vertices * (degree - 1.0);
    r.insert("simplex_bound", simplices, Derived, "N <= B (D - 1)");
    let budget = v.powf(1.0 + eps);
    r.insert("simplex_budget", budget, Derived, "V^(1+eps)");
    r.insert(
        "simplex_exponent",
        simplices.ln() / v.ln(),
        Derived,
        "log N / log V at the reference volume",
    );
    let implied = min_volume_from_complexity(simplices.min(u64::MAX as f64).max(1.0) as u64, eps)
        .map_err(stage_error)?;
    r.insert("volume_implied_by_simplex_bound", implied, Derived, "N^(1/(1+eps))");
    r.checks.insert("simplex_bound_within_budget".into(), simplices <= budget);

    let tube = c.c_dn * budget;
    r.insert("tube_bound", tube, Derived, "V_T <= c_dn V^(1+eps)");
    let lhs = (c.lambda1_floor * v).powf(exponent);
    let rhs = c.cn * t.powi(-(n as i32)) * tube;
    r.insert("gg_lhs", lhs, Derived, "(lambda1 V)^(n/(n-1))");
    r.insert("gg_rhs", rhs, Derived, "c_n T^-n c_dn V^(1+eps)");
    r.checks.insert("gg_chain_holds_at_reference".into(), lhs <= rhs);

    let log_c = log_bound_c(n, gap, c.cn, c.c_dn, c.lambda1_floor, t);
    let bound_c = log_c.exp();
    r.insert("log10_bound_c", log_c / std::f64::consts::LN_10, Derived, "log10 C");
    r.checks.insert("reference_volume_within_bound".into(), v.ln() <= log_c);
    r.exponent_gap = gap;
    r.bound_c = bound_c;
    r.log10_bound_c = log_c / std::f64::consts::LN_10;
    if bound_c.is_finite() {
        r.insert(
            "bound_c",
            bound_c,
            Derived,
            "C = (c_n T^-n c_dn lambda1^(-n/(n-1)))^(1/gap)",
        );
    }
    Ok(r)
}
