//! Mahler measure `M(P) = |a_d| · ∏ max(1, |θ_i|)`.
//!
//! The primary route factors `P` into square-free parts (exact, over `Z`),
//! finds the roots of each part as companion-matrix eigenvalues, polishes them
//! with Newton steps and then encloses every root in a Weierstrass disk. A
//! connected cluster of `k` disks holds exactly `k` roots, which turns the
//! floating-point roots into a certified interval for `M(P)`.
//!
//! [`graeffe_bracket`] is an independent cross-check: exact root squaring
//! combined with the coefficient-norm inequalities of Landau and Mahler.

use nalgebra::linalg::Schur;
use nalgebra::{Complex, DMatrix};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::zpoly::{self, ZPoly};
use super::{euler_phi, AlgebraicError, IntPolynomial};

/// Certified enclosure of a Mahler measure.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MahlerEstimate {
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
}

impl MahlerEstimate {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

const NEWTON_STEPS: usize = 8;
/// QR sweeps before the eigenvalue solve is retried on a shifted variable.
const SCHUR_MAX_ITER: usize = 2000;
/// Variable shifts tried in turn when the Schur iteration stalls, which it
/// does on symmetric root sets such as those of `x^4 + 1`.
const ROOT_SHIFTS: [f64; 4] = [0.0, 0.1234, -0.3217, 0.5711];
/// Largest squarefree part whose cyclotomic factors are divided out exactly.
const CYCLOTOMIC_STRIP_MAX_DEGREE: usize = 128;

/// `M(P)` to absolute tolerance `precision`.
pub fn mahler_measure(p: &IntPolynomial, precision: f64) -> Result<f64, AlgebraicError> {
    mahler_estimate(p, precision).map(|e| e.value)
}

/// `M(P)` with its certified enclosure; fails with
/// [`AlgebraicError::NonConvergence`] when the enclosure is wider than
/// `precision`.
pub fn mahler_estimate(p: &IntPolynomial, precision: f64) -> Result<MahlerEstimate, AlgebraicError> {
    if !(precision > 0.0 && precision.is_finite()) {
        return Err(AlgebraicError::InvalidInput(format!(
            "precision must be a positive real, got {precision}"
        )));
    }
    if p.degree() == 0 {
        return Err(AlgebraicError::InvalidInput(
            "Mahler measure needs a polynomial of degree at least 1".into(),
        ));
    }
    // Roots at the origin contribute max(1, 0) = 1.
    let low = p.coeffs().iter().take_while(|&&c| c == 0).count();
    let f = zpoly::from_i64(&p.coeffs()[low..]);
    let content = zpoly::content(&f);
    let content_f = content.to_f64().unwrap_or(f64::INFINITY);

    let mut est = MahlerEstimate {
        value: content_f,
        lower: content_f,
        upper: content_f,
    };
    if zpoly::degree(&f) == Some(0) {
        return Ok(est);
    }
    for (g, mult) in zpoly::squarefree_decomposition(&f) {
        let g = strip_cyclotomic(g);
        if g.len() == 1 {
            continue;
        }
        let part = squarefree_estimate(&g)?;
        let k = mult as i32;
        est.value *= part.value.powi(k);
        est.lower *= part.lower.powi(k);
        est.upper *= part.upper.powi(k);
    }
    // M(P) >= |a_d|
    let lead = p.leading().unsigned_abs() as f64;
    est.lower = est.lower.max(lead);
    est.value = est.value.clamp(est.lower, est.upper);
    if est.width() > precision {
        return Err(AlgebraicError::NonConvergence {
            achieved: est.width(),
            requested: precision,
        });
    }
    Ok(est)
}

/// Divides out the cyclotomic factors of a squarefree `g`, each of which
/// has measure exactly 1. Candidates are the `Φ_n` with `φ(n) ≤ deg g`,
/// and `φ(n) ≥ √(n/2)` bounds `n` by `2 deg²`.
fn strip_cyclotomic(mut g: ZPoly) -> ZPoly {
    let d = g.len() - 1;
    if d > CYCLOTOMIC_STRIP_MAX_DEGREE {
        return g;
    }
    for n in 1..=(2 * d * d) as u64 {
        let deg = g.len() - 1;
        if deg == 0 {
            break;
        }
        if euler_phi(n).map_or(true, |phi| phi as usize > deg) {
            continue;
        }
        let phi_n = zpoly::from_i64(IntPolynomial::cyclotomic(n).coeffs());
        if zpoly::prem(&g, &phi_n).is_empty() {
            g = zpoly::exact_div(&g, &phi_n);
        }
    }
    g
}

fn squarefree_estimate(g: &ZPoly) -> Result<MahlerEstimate, AlgebraicError> {
    let d = g.len() - 1;
    let coeffs: Vec<f64> = g
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::INFINITY))
        .collect();
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(AlgebraicError::CoefficientOverflow);
    }
    if d == 1 {
        // a0 + a1 x: M = max(|a1|, |a0|) exactly.
        let v = g[0].abs().max(g[1].abs()).to_f64().unwrap_or(f64::INFINITY);
        return Ok(MahlerEstimate {
            value: v,
            lower: v,
            upper: v,
        });
    }
    let lead = coeffs[d];
    let roots = polished_roots(&coeffs)?;
    let radii = inclusion_radii(&coeffs, &roots);
    if radii.iter().any(|r| !r.is_finite()) {
        return Err(AlgebraicError::NonConvergence {
            achieved: f64::INFINITY,
            requested: 0.0,
        });
    }

    let value = lead.abs()
        * roots
            .iter()
            .map(|z| z.norm().max(1.0))
            .product::<f64>();
    let mut lower = lead.abs();
    let mut upper = lead.abs();
    for cluster in clusters(&roots, &radii) {
        let k = cluster.len() as i32;
        let lo = cluster
            .iter()
            .map(|&i| roots[i].norm() - radii[i])
            .fold(f64::INFINITY, f64::min);
        let hi = cluster
            .iter()
            .map(|&i| roots[i].norm() + radii[i])
            .fold(f64::NEG_INFINITY, f64::max);
        lower *= lo.max(1.0).powi(k);
        upper *= hi.max(1.0).powi(k);
    }
    Ok(MahlerEstimate {
        value: value.clamp(lower, upper),
        lower,
        upper,
    })
}

/// Companion-matrix eigenvalues followed by Newton polishing.
fn polished_roots(coeffs: &[f64]) -> Result<Vec<Complex<f64>>, AlgebraicError> {
    let d = coeffs.len() - 1;
    let mut roots = None;
    for s in ROOT_SHIFTS {
        if let Some(r) = companion_eigenvalues(&taylor_shift(coeffs, s)) {
            roots = Some(r.into_iter().map(|z| z + Complex::new(s, 0.0)).collect::<Vec<_>>());
            break;
        }
    }
    let mut roots = roots.ok_or(AlgebraicError::NonConvergence {
        achieved: f64::INFINITY,
        requested: 0.0,
    })?;
    if roots.len() != d || roots.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(AlgebraicError::NonConvergence {
            achieved: f64::INFINITY,
            requested: 0.0,
        });
    }
    for z in roots.iter_mut() {
        *z = newton_polish(coeffs, *z);
    }
    Ok(roots)
}

fn companion_eigenvalues(coeffs: &[f64]) -> Option<Vec<Complex<f64>>> {
    let d = coeffs.len() - 1;
    let lead = coeffs[d];
    let mut companion = DMatrix::<f64>::zeros(d, d);
    for i in 1..d {
        companion[(i, i - 1)] = 1.0;
    }
    for i in 0..d {
        companion[(i, d - 1)] = -coeffs[i] / lead;
    }
    Schur::try_new(companion, f64::EPSILON, SCHUR_MAX_ITER).map(|s| s.complex_eigenvalues().iter().copied().collect())
}

/// Coefficients of `P(x + s)`, constant term first.
fn taylor_shift(coeffs: &[f64], s: f64) -> Vec<f64> {
    let mut c = coeffs.to_vec();
    if s == 0.0 {
        return c;
    }
    let d = c.len() - 1;
    for i in 0..d {
        for j in (i..d).rev() {
            c[j] += s * c[j + 1];
        }
    }
    c
}

fn horner(coeffs: &[f64], z: Complex<f64>) -> (Complex<f64>, Complex<f64>) {
    let mut p = Complex::new(0.0, 0.0);
    let mut dp = Complex::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + Complex::new(c, 0.0);
    }
    (p, dp)
}

fn newton_polish(coeffs: &[f64], mut z: Complex<f64>) -> Complex<f64> {
    let (mut pz, mut dpz) = horner(coeffs, z);
    for _ in 0..NEWTON_STEPS {
        if pz.norm() == 0.0 || dpz.norm() == 0.0 {
            break;
        }
        let next = z - pz / dpz;
        let (pn, dpn) = horner(coeffs, next);
        if pn.norm() >= pz.norm() {
            break;
        }
        z = next;
        pz = pn;
        dpz = dpn;
    }
    z
}

/// Weierstrass inclusion radii `d · |P(z_i)| / (|a_d| ∏_{j≠i} |z_i - z_j|)`.
fn inclusion_radii(coeffs: &[f64], roots: &[Complex<f64>]) -> Vec<f64> {
    let d = roots.len();
    let lead = coeffs[d].abs();
    roots
        .iter()
        .enumerate()
        .map(|(i, &zi)| {
            let (pz, _) = horner(coeffs, zi);
            let denom: f64 = roots
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &zj)| (zi - zj).norm())
                .product();
            // Slack for the rounding in evaluating P(z_i) itself.
            let eval_err = f64::EPSILON
                * 4.0
                * (d as f64 + 1.0)
                * coeffs
                    .iter()
                    .rev()
                    .fold(0.0, |acc, &c| acc * zi.norm() + c.abs());
            d as f64 * (pz.norm() + eval_err) / (lead * denom)
        })
        .collect()
}

/// Connected components of the overlap graph of the disks `D(z_i, r_i)`.
fn clusters(roots: &[Complex<f64>], radii: &[f64]) -> Vec<Vec<usize>> {
    let n = roots.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn find(label: &mut [usize], mut i: usize) -> usize {
        while label[i] != i {
            label[i] = label[label[i]];
            i = label[i];
        }
        i
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if (roots[i] - roots[j]).norm() <= radii[i] + radii[j] {
                let (a, b) = (find(&mut label, i), find(&mut label, j));
                label[a] = b;
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let r = find(&mut label, i);
        groups.entry(r).or_default().push(i);
    }
    groups.into_values().collect()
}

/// Rigorous bracket `[lo, hi] ∋ M(P)` from `iterations` exact Graeffe steps.
///
/// If `Q` is the polynomial whose roots are the `2^k`-th powers of those of
/// `P`, then `‖Q‖₁ / 2^d ≤ M(Q) = M(P)^{2^k} ≤ ‖Q‖₂`. The bracket width in
/// log-space is about `d·ln 2 / 2^k`.
pub fn graeffe_bracket(p: &IntPolynomial, iterations: u32) -> (f64, f64) {
    let mut q = zpoly::from_i64(p.coeffs());
    let d = p.degree() as f64;
    for _ in 0..iterations {
        q = zpoly::graeffe_step(&q);
    }
    let l1: BigInt = q.iter().map(|c| c.abs()).sum();
    let l2sq: BigInt = q.iter().map(|c| c * c).sum();
    debug_assert!(!l1.is_zero());
    let scale = 2f64.powi(iterations as i32);
    let ln_lo = (zpoly::ln_big(&l1) - d * std::f64::consts::LN_2) / scale;
    let ln_hi = 0.5 * zpoly::ln_big(&l2sq) / scale;
    // Relative slack covers the rounding of the logarithms.
    let slack = 1e-12;
    (
        (ln_lo.exp() * (1.0 - slack)).max(p.leading().unsigned_abs() as f64),
        ln_hi.exp() * (1.0 + slack),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::new(c.to_vec()).unwrap()
    }

    #[test]
    fn cyclotomic_factors_are_exact() {
        let p = [2u64, 29, 17]
            .iter()
            .fold(IntPolynomial::linear(2), |acc, &n| acc.checked_mul(&IntPolynomial::cyclotomic(n)).unwrap());
        let e = mahler_estimate(&p, 1e-12).unwrap();
        assert_eq!((e.lower, e.upper), (2.0, 2.0));
    }

    #[test]
    fn even_cyclotomics_do_not_stall() {
        for n in [8, 12, 16, 20, 24, 60] {
            let m = mahler_measure(&IntPolynomial::cyclotomic(n), 1e-10).unwrap();
            assert!((m - 1.0).abs() < 1e-10, "{n}: {m}");
        }
        let m = mahler_measure(&IntPolynomial::new(vec![1, 0, 0, 0, 1]).unwrap(), 1e-10).unwrap();
        assert!((m - 1.0).abs() < 1e-10);
    }

    #[test]
    fn taylor_shift_matches_expansion() {
        // (x + 2)^2 + 3(x + 2) + 1 = x^2 + 7x + 11
        assert_eq!(taylor_shift(&[1.0, 3.0, 1.0], 2.0), vec![11.0, 7.0, 1.0]);
    }

    #[test]
    fn linear_is_exact() {
        assert_eq!(mahler_measure(&poly(&[-2, 1]), 1e-12).unwrap(), 2.0);
        assert_eq!(mahler_measure(&poly(&[1, 3]), 1e-12).unwrap(), 3.0);
    }

    #[test]
    fn content_and_zero_roots() {
        // x^2 (6x - 12): the x^2 drops out, 6 (x - 2) gives 12
        let p = poly(&[0, 0, -12, 6]);
        assert!((mahler_measure(&p, 1e-9).unwrap() - 12.0).abs() < 1e-12);
    }

    #[test]
    fn repeated_factor_uses_multiplicity() {
        // (x - 3)^2 (x^2 + 1) -> 9
        let p = IntPolynomial::linear(3)
            .checked_mul(&IntPolynomial::linear(3))
            .unwrap()
            .checked_mul(&poly(&[1, 0, 1]))
            .unwrap();
        let m = mahler_measure(&p, 1e-9).unwrap();
        assert!((m - 9.0).abs() < 1e-9, "{m}");
    }

    #[test]
    fn constant_rejected() {
        assert!(mahler_measure(&poly(&[5]), 1e-9).is_err());
    }

    #[test]
    fn impossible_precision_is_nonconvergence() {
        let lehmer = poly(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
        assert!(matches!(
            mahler_measure(&lehmer, 1e-30),
            Err(AlgebraicError::NonConvergence { .. })
        ));
    }

    #[test]
    fn graeffe_brackets_quadratic() {
        // x^2 - 3x + 1: roots (3 ± √5)/2, M = (3 + √5)/2
        let p = poly(&[1, -3, 1]);
        let exact = (3.0 + 5f64.sqrt()) / 2.0;
        let (lo, hi) = graeffe_bracket(&p, 10);
        assert!(lo <= exact && exact <= hi, "{lo} {exact} {hi}");
        assert!(hi / lo < 1.01);
    }
}
