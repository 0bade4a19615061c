use serde::{Deserialize, Serialize};

use super::GeometryError;

/// Tolerance on the hyperboloid constraint `⟨x, x⟩ = -1` accepted at
/// construction, before renormalization.
pub const HYPERBOLOID_TOLERANCE: f64 = 1e-9;

/// Point of `H^3` in the hyperboloid model: `-x0² + x1² + x2² + x3² = -1`,
/// `x0 ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 4]", into = "[f64; 4]")]
pub struct HPoint {
    x: [f64; 4],
}

/// Minkowski bilinear form of signature `(-, +, +, +)`.
#[inline]
pub fn minkowski(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    -a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]
}

impl HPoint {
    /// Accepts coordinates satisfying the hyperboloid constraint to within
    /// [`HYPERBOLOID_TOLERANCE`] (relative to `x0²`) and snaps `x0` back onto
    /// the upper sheet.
    pub fn new(x0: f64, x1: f64, x2: f64, x3: f64) -> Result<Self, GeometryError> {
        let c = [x0, x1, x2, x3];
        if c.iter().any(|v| !v.is_finite()) {
            return Err(GeometryError::InvalidPoint(format!("non-finite coordinates {c:?}")));
        }
        if x0 < 1.0 - HYPERBOLOID_TOLERANCE {
            return Err(GeometryError::InvalidPoint(format!(
                "x0 = {x0} is not on the upper sheet"
            )));
        }
        let q = minkowski(&c, &c);
        if (q + 1.0).abs() > HYPERBOLOID_TOLERANCE * x0 * x0 {
            return Err(GeometryError::InvalidPoint(format!(
                "Minkowski norm {q} differs from -1"
            )));
        }
        Ok(Self::from_spatial([x1, x2, x3]))
    }

    /// The unique point of the upper sheet with the given spatial part.
    pub fn from_spatial(s: [f64; 3]) -> Self {
        let x0 = (1.0 + s[0] * s[0] + s[1] * s[1] + s[2] * s[2]).sqrt();
        Self {
            x: [x0, s[0], s[1], s[2]],
        }
    }

    pub fn origin() -> Self {
        Self {
            x: [1.0, 0.0, 0.0, 0.0],
        }
    }

    /// The point at distance `r` from the origin in the unit direction `dir`.
    pub fn from_polar(r: f64, dir: [f64; 3]) -> Self {
        let s = r.sinh();
        Self::from_spatial([s * dir[0], s * dir[1], s * dir[2]])
    }

    /// Inverse of [`Self::to_poincare`]; requires `|y| < 1`.
    pub fn from_poincare(y: [f64; 3]) -> Result<Self, GeometryError> {
        let n2 = y[0] * y[0] + y[1] * y[1] + y[2] * y[2];
        if !(n2 < 1.0) {
            return Err(GeometryError::InvalidPoint(format!(
                "Poincaré coordinates {y:?} lie outside the unit ball"
            )));
        }
        let k = 2.0 / (1.0 - n2);
        Ok(Self::from_spatial([k * y[0], k * y[1], k * y[2]]))
    }

    /// Poincaré ball coordinates `x⃗ / (1 + x0)`.
    pub fn to_poincare(&self) -> [f64; 3] {
        let d = 1.0 + self.x[0];
        [self.x[1] / d, self.x[2] / d, self.x[3] / d]
    }

    pub fn coords(&self) -> [f64; 4] {
        self.x
    }

    pub fn spatial(&self) -> [f64; 3] {
        [self.x[1], self.x[2], self.x[3]]
    }

    pub fn inner(&self, other: &Self) -> f64 {
        minkowski(&self.x, &other.x)
    }

    /// Distance from the origin.
    pub fn radius(&self) -> f64 {
        let s = self.spatial();
        (s[0] * s[0] + s[1] * s[1] + s[2] * s[2]).sqrt().asinh()
    }
}

impl TryFrom<[f64; 4]> for HPoint {
    type Error = GeometryError;

    fn try_from(c: [f64; 4]) -> Result<Self, Self::Error> {
        Self::new(c[0], c[1], c[2], c[3])
    }
}

impl From<HPoint> for [f64; 4] {
    fn from(p: HPoint) -> Self {
        p.x
    }
}

/// Hyperbolic distance between raw hyperboloid coordinates. Rejects pairs
/// whose Minkowski product exceeds `-1` by more than the tolerance.
pub fn hyp_distance_coords(p: &[f64; 4], q: &[f64; 4]) -> Result<f64, GeometryError> {
    let b = -minkowski(p, q);
    let scale = p[0].abs() * q[0].abs();
    if !(b >= 1.0 - HYPERBOLOID_TOLERANCE * scale.max(1.0)) {
        return Err(GeometryError::InvalidPoint(format!(
            "Minkowski product {} > -1: not a pair of hyperboloid points",
            -b
        )));
    }
    if b > 2.0 {
        return Ok(b.acosh());
    }
    // 2 asinh(|p - q|_M / 2) avoids the cancellation of acosh near 1.
    let d = [p[0] - q[0], p[1] - q[1], p[2] - q[2], p[3] - q[3]];
    let m = minkowski(&d, &d).max(0.0);
    Ok(2.0 * (0.5 * m.sqrt()).asinh())
}

pub fn hyp_distance(p: &HPoint, q: &HPoint) -> Result<f64, GeometryError> {
    hyp_distance_coords(&p.x, &q.x)
}

/// Infallible distance for points already known to be valid.
#[inline]
pub(crate) fn dist(p: &HPoint, q: &HPoint) -> f64 {
    hyp_distance_coords(&p.x, &q.x).unwrap_or(0.0)
}

/// Lorentz boost carrying the origin to `center`, with its inverse.
#[derive(Clone, Copy, Debug)]
pub struct Boost {
    m: [[f64; 4]; 4],
}

impl Boost {
    pub fn to(center: &HPoint) -> Self {
        Self::build(center.x[0], center.spatial())
    }

    pub fn inverse(&self) -> Self {
        let c0 = self.m[0][0];
        Self::build(c0, [-self.m[1][0], -self.m[2][0], -self.m[3][0]])
    }

    fn build(c0: f64, c: [f64; 3]) -> Self {
        let mut m = [[0.0; 4]; 4];
        m[0][0] = c0;
        for i in 0..3 {
            m[0][i + 1] = c[i];
            m[i + 1][0] = c[i];
            for j in 0..3 {
                m[i + 1][j + 1] = f64::from(u8::from(i == j)) + c[i] * c[j] / (1.0 + c0);
            }
        }
        Self { m }
    }

    pub fn apply(&self, p: &HPoint) -> HPoint {
        let x = p.x;
        let mut s = [0.0; 3];
        for (i, si) in s.iter_mut().enumerate() {
            *si = (0..4).map(|j| self.m[i + 1][j] * x[j]).sum();
        }
        HPoint::from_spatial(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coincident_points() {
        let o = HPoint::origin();
        assert_eq!(hyp_distance(&o, &o).unwrap(), 0.0);
    }

    #[test]
    fn geodesic_parametrization() {
        let t: f64 = 1.0;
        let p = HPoint::new(t.cosh(), t.sinh(), 0.0, 0.0).unwrap();
        assert!((hyp_distance(&HPoint::origin(), &p).unwrap() - 1.0).abs() < 1e-14);
        let far = HPoint::from_polar(7.5, [0.0, 0.6, 0.8]);
        assert!((hyp_distance(&HPoint::origin(), &far).unwrap() - 7.5).abs() < 1e-12);
    }

    #[test]
    fn rejects_off_hyperboloid() {
        assert!(HPoint::new(1.0, 1.0, 0.0, 0.0).is_err());
        assert!(HPoint::new(-1.0, 0.0, 0.0, 0.0).is_err());
        assert!(hyp_distance_coords(&[1.0, 0.0, 0.0, 0.0], &[0.5, 0.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn poincare_round_trip() {
        let p = HPoint::from_polar(1.3, [0.48, 0.6, 0.64]);
        let q = HPoint::from_poincare(p.to_poincare()).unwrap();
        for (a, b) in p.coords().iter().zip(q.coords()) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!(HPoint::from_poincare([1.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn boost_is_an_isometry() {
        let c = HPoint::from_polar(0.9, [0.0, 0.0, 1.0]);
        let b = Boost::to(&c);
        let o = b.apply(&HPoint::origin());
        assert!(dist(&o, &c) < 1e-12);
        let p = HPoint::from_polar(0.4, [1.0, 0.0, 0.0]);
        let q = HPoint::from_polar(1.1, [0.0, 1.0, 0.0]);
        assert!((dist(&b.apply(&p), &b.apply(&q)) - dist(&p, &q)).abs() < 1e-12);
        let back = b.inverse().apply(&b.apply(&p));
        assert!(dist(&back, &p) < 1e-12);
    }
}
