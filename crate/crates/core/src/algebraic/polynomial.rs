use std::fmt;

use nalgebra::Complex;
use serde::{Deserialize, Serialize};

use super::AlgebraicError;

/// Polynomial with integer coefficients, constant term first.
///
/// Trailing zero coefficients are stripped on construction, so the last
/// stored coefficient is the leading one and `degree() == coeffs().len() - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Result<Self, AlgebraicError> {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(AlgebraicError::ZeroPolynomial);
        }
        Ok(Self { coeffs })
    }

    /// `x - a`
    pub fn linear(a: i64) -> Self {
        Self { coeffs: vec![-a, 1] }
    }

    /// `x^k`
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = 1;
        Self { coeffs }
    }

    /// The `n`-th cyclotomic polynomial, by dividing `x^n - 1` by every
    /// `Φ_d` with `d | n`, `d < n`.
    pub fn cyclotomic(n: u64) -> Self {
        assert!(n >= 1, "cyclotomic index must be positive");
        let n = n as usize;
        let mut num = vec![0i64; n + 1];
        num[0] = -1;
        num[n] = 1;
        for d in (1..n).filter(|d| n % d == 0) {
            let phi = Self::cyclotomic(d as u64);
            num = monic_divide(&num, &phi.coeffs);
        }
        Self { coeffs: num }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> i64 {
        self.coeffs[self.degree()]
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    /// Product, failing on `i64` overflow.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraicError> {
        let mut out = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                let term = a.checked_mul(b).ok_or(AlgebraicError::CoefficientOverflow)?;
                out[i + j] = out[i + j]
                    .checked_add(term)
                    .ok_or(AlgebraicError::CoefficientOverflow)?;
            }
        }
        Self::new(out)
    }

    /// Horner evaluation at a complex point; returns `(P(z), P'(z))`.
    pub fn eval_with_derivative(&self, z: Complex<f64>) -> (Complex<f64>, Complex<f64>) {
        let mut p = Complex::new(0.0, 0.0);
        let mut dp = Complex::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + Complex::new(c as f64, 0.0);
        }
        (p, dp)
    }
}

fn monic_divide(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    let mut r = num.to_vec();
    let mut q = vec![0i64; num.len() - dd];
    for k in (0..q.len()).rev() {
        let c = r[k + dd];
        q[k] = c;
        for (j, &d) in den.iter().enumerate() {
            r[k + j] -= c * d;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

impl TryFrom<Vec<i64>> for IntPolynomial {
    type Error = AlgebraicError;

    fn try_from(coeffs: Vec<i64>) -> Result<Self, Self::Error> {
        Self::new(coeffs)
    }
}

impl From<IntPolynomial> for Vec<i64> {
    fn from(p: IntPolynomial) -> Self {
        p.coeffs
    }
}

impl std::str::FromStr for IntPolynomial {
    type Err = AlgebraicError;

    /// Whitespace-separated integer coefficients, constant term first.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let coeffs = s
            .split_whitespace()
            .map(|tok| {
                tok.parse::<i64>()
                    .map_err(|_| AlgebraicError::Parse(format!("not an integer coefficient: {tok:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(coeffs)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.unsigned_abs();
            match (k, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{a}x")?,
                (_, 1) => write!(f, "x^{k}")?,
                _ => write!(f, "{a}x^{k}")?,
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trailing_zeros_are_stripped() {
        let p = IntPolynomial::new(vec![1, 2, 0, 0]).unwrap();
        assert_eq!(p.degree(), 1);
        assert_eq!(p.coeffs(), &[1, 2]);
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert!(matches!(
            IntPolynomial::new(vec![0, 0]),
            Err(AlgebraicError::ZeroPolynomial)
        ));
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(IntPolynomial::cyclotomic(1).coeffs(), &[-1, 1]);
        assert_eq!(IntPolynomial::cyclotomic(5).coeffs(), &[1, 1, 1, 1, 1]);
        assert_eq!(IntPolynomial::cyclotomic(6).coeffs(), &[1, -1, 1]);
        assert_eq!(IntPolynomial::cyclotomic(12).coeffs(), &[1, 0, -1, 0, 1]);
        assert_eq!(IntPolynomial::cyclotomic(30).degree(), 8);
    }

    #[test]
    fn parse_and_display() {
        let p: IntPolynomial = "1 -1 0 2".parse().unwrap();
        assert_eq!(p.to_string(), "2x^3 - x + 1");
        assert!("1 x".parse::<IntPolynomial>().is_err());
    }
}
