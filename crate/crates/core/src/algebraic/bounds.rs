//! Number-theoretic bounds tying injectivity radius and finite-subgroup
//! orders of an arithmetic 3-orbifold to its volume.
//!
//! Combinatorial bounds use base-2 logarithms throughout; the geodesic
//! translation length uses the natural logarithm.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::AlgebraicError;

/// Whether the trace of the shortest hyperbolic element is real or complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TraceKind {
    Real,
    Complex,
}

/// Named constants of the bound chain. None of them is derived here; they
/// are configuration with documented defaults.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundConstants {
    /// Dobrowolski constant.
    pub c1: f64,
    /// Slope of the degree-of-field bound in `log2 V`.
    pub c2: f64,
    /// Offset of the degree-of-field bound (may be zero).
    pub c3: f64,
    /// `m ≤ c4 · deg(k)^2`.
    pub c4: f64,
    /// `m ≤ c5 · (log2 V)^2`.
    pub c5: f64,
    /// Margulis constant of `H^3`.
    pub margulis_mu3: f64,
    /// Lower bound for the spectral gap of a congruence manifold cover.
    pub lambda1_floor: f64,
    /// Gromov–Guth constant for the ambient dimension.
    pub cn: f64,
    /// Tube-volume constant `V_1 ≤ c_{D,n} N`.
    pub c_dn: f64,
    /// Ratio between the largest finite subgroup and its largest cyclic
    /// subgroup (icosahedral 60 over cyclic 5).
    pub symmetry_multiplier: u64,
}

impl Default for BoundConstants {
    fn default() -> Self {
        Self {
            c1: 0.25,
            c2: 1.0,
            c3: 1.0,
            c4: 48.0,
            c5: 48.0,
            margulis_mu3: 0.1,
            lambda1_floor: 0.75,
            cn: 1.0,
            c_dn: 1.0,
            symmetry_multiplier: 12,
        }
    }
}

impl BoundConstants {
    pub const KEYS: [&'static str; 10] = [
        "c1",
        "c2",
        "c3",
        "c4",
        "c5",
        "margulis_mu3",
        "lambda1_floor",
        "cn",
        "c_dn",
        "symmetry_multiplier",
    ];

    pub fn validate(&self) -> Result<(), AlgebraicError> {
        let positive = [
            ("c1", self.c1),
            ("c2", self.c2),
            ("c4", self.c4),
            ("c5", self.c5),
            ("margulis_mu3", self.margulis_mu3),
            ("lambda1_floor", self.lambda1_floor),
            ("cn", self.cn),
            ("c_dn", self.c_dn),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(AlgebraicError::InvalidConstant(format!(
                    "{name} must be a positive finite real, got {v}"
                )));
            }
        }
        if !(self.c3 >= 0.0 && self.c3.is_finite()) {
            return Err(AlgebraicError::InvalidConstant(format!(
                "c3 must be a nonnegative finite real, got {}",
                self.c3
            )));
        }
        if self.lambda1_floor > 1.0 {
            return Err(AlgebraicError::InvalidConstant(format!(
                "lambda1_floor must not exceed 1, got {}",
                self.lambda1_floor
            )));
        }
        if self.symmetry_multiplier == 0 {
            return Err(AlgebraicError::InvalidConstant(
                "symmetry_multiplier must be positive".into(),
            ));
        }
        Ok(())
    }

    /// Overrides constants from `key → value` pairs; keys outside
    /// [`Self::KEYS`] are left for the caller.
    pub fn apply_overrides(&mut self, kv: &BTreeMap<String, String>) -> Result<(), AlgebraicError> {
        for (key, raw) in kv {
            let float = || {
                raw.trim().parse::<f64>().map_err(|_| {
                    AlgebraicError::Parse(format!("{key}: expected a real number, got {raw:?}"))
                })
            };
            match key.as_str() {
                "c1" => self.c1 = float()?,
                "c2" => self.c2 = float()?,
                "c3" => self.c3 = float()?,
                "c4" => self.c4 = float()?,
                "c5" => self.c5 = float()?,
                "margulis_mu3" => self.margulis_mu3 = float()?,
                "lambda1_floor" => self.lambda1_floor = float()?,
                "cn" => self.cn = float()?,
                "c_dn" => self.c_dn = float()?,
                "symmetry_multiplier" => {
                    self.symmetry_multiplier = raw.trim().parse().map_err(|_| {
                        AlgebraicError::Parse(format!(
                            "symmetry_multiplier: expected a positive integer, got {raw:?}"
                        ))
                    })?
                }
                _ => {}
            }
        }
        self.validate()
    }
}

/// Euler's totient by trial-division factorization.
pub fn euler_phi(n: u64) -> Result<u64, AlgebraicError> {
    if n == 0 {
        return Err(AlgebraicError::InvalidInput("euler_phi is undefined at 0".into()));
    }
    let mut m = n;
    let mut phi = n;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            phi -= phi / p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        phi -= phi / m;
    }
    Ok(phi)
}

/// Lower bound `c1 · (log2 log2 d / log2 d)^3` for `log M(P)`, `P` of degree `d`.
pub fn dobrowolski_bound(d: u64, constants: &BoundConstants) -> Result<f64, AlgebraicError> {
    if d < 4 {
        return Err(AlgebraicError::OutOfRange(format!(
            "Dobrowolski bound needs degree d >= 4 under base-2 logarithms, got {d}"
        )));
    }
    Ok(dobrowolski_real(d as f64, constants.c1))
}

fn dobrowolski_real(d: f64, c1: f64) -> f64 {
    let l = d.log2();
    c1 * (l.log2() / l).powi(3)
}

/// Translation length of the shortest element: `ln M` for a real trace,
/// `½ ln M` for a complex trace.
pub fn translation_length(mahler: f64, kind: TraceKind) -> Result<f64, AlgebraicError> {
    if !(mahler >= 1.0 && mahler.is_finite()) {
        return Err(AlgebraicError::InvalidInput(format!(
            "Mahler measure must be >= 1, got {mahler}"
        )));
    }
    let l = mahler.ln();
    Ok(match kind {
        TraceKind::Real => l,
        TraceKind::Complex => 0.5 * l,
    })
}

/// `deg(k) ≤ c2 · log2 V + c3`.
pub fn degree_bound_from_volume(volume: f64, constants: &BoundConstants) -> Result<f64, AlgebraicError> {
    if !(volume > 1.0 && volume.is_finite()) {
        return Err(AlgebraicError::InvalidInput(format!(
            "volume must exceed 1, got {volume}"
        )));
    }
    Ok(constants.c2 * volume.log2() + constants.c3)
}

/// Injectivity radius lower bound `½ c1 (log2 log2 D / log2 D)^3` with
/// `D = 2 (c2 log2 V + c3)` bounding the degree of the minimal polynomial.
pub fn injectivity_radius_bound(volume: f64, constants: &BoundConstants) -> Result<f64, AlgebraicError> {
    let deg_k = degree_bound_from_volume(volume, constants)?;
    let d = 2.0 * deg_k;
    if d < 4.0 {
        return Err(AlgebraicError::OutOfRange(format!(
            "composed degree bound 2(c2 log2 V + c3) = {d} is below 4"
        )));
    }
    Ok(0.5 * dobrowolski_real(d, constants.c1))
}

/// Largest `n` with `φ(n) ≤ deg_k`, by exhaustive search up to `4 deg_k²`
/// (beyond which `√n / 2 > deg_k ≥ φ(n)` is impossible).
pub fn max_cyclic_order(deg_k: u64) -> Result<u64, AlgebraicError> {
    if deg_k == 0 {
        return Err(AlgebraicError::InvalidInput("deg(k) must be at least 1".into()));
    }
    let ceiling = deg_k
        .checked_mul(deg_k)
        .and_then(|x| x.checked_mul(4))
        .ok_or_else(|| AlgebraicError::OutOfRange(format!("deg(k) = {deg_k} too large")))?;
    let mut best = 1;
    for n in 1..=ceiling {
        if euler_phi(n)? <= deg_k {
            best = n;
        }
    }
    Ok(best)
}

/// Bound on the order of a finite subgroup: the symmetry-type multiplier
/// times the largest admissible cyclic order.
pub fn finite_subgroup_order_bound(deg_k: u64, constants: &BoundConstants) -> Result<u64, AlgebraicError> {
    let n = max_cyclic_order(deg_k)?;
    n.checked_mul(constants.symmetry_multiplier)
        .ok_or_else(|| AlgebraicError::OutOfRange("finite subgroup bound overflows u64".into()))
}
