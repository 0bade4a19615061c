//! Dense polynomials over `Z` with arbitrary-size coefficients.
//!
//! Only what the square-free decomposition and the Graeffe bracket need:
//! primitive parts, pseudo-remainders, gcd by primitive remainder sequences,
//! exact division and Yun's algorithm. Coefficients are stored constant term
//! first and are always trimmed.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub(crate) type ZPoly = Vec<BigInt>;

pub(crate) fn trim(mut p: ZPoly) -> ZPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub(crate) fn from_i64(coeffs: &[i64]) -> ZPoly {
    trim(coeffs.iter().map(|&c| BigInt::from(c)).collect())
}

/// Degree of a trimmed polynomial; the zero polynomial reports `None`.
pub(crate) fn degree(p: &[BigInt]) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

fn is_constant(p: &[BigInt]) -> bool {
    p.len() <= 1
}

pub(crate) fn derivative(p: &[BigInt]) -> ZPoly {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigInt::from(k))
            .collect(),
    )
}

fn gcd_int(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut a, mut b) = (a.abs(), b.abs());
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

/// Positive gcd of the coefficients.
pub(crate) fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |acc, c| gcd_int(&acc, c))
}

/// Primitive part with positive leading coefficient.
pub(crate) fn primitive(p: &[BigInt]) -> ZPoly {
    if p.is_empty() {
        return Vec::new();
    }
    let mut c = content(p);
    if p.last().is_some_and(|lc| lc.is_negative()) {
        c = -c;
    }
    p.iter().map(|x| x / &c).collect()
}

fn sub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
            .collect(),
    )
}

pub(crate) fn mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Pseudo-remainder of `a` by a nonzero `b`.
pub(crate) fn prem(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r: ZPoly = a.to_vec();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (k, bk) in b.iter().enumerate() {
            r[shift + k] -= &lr * bk;
        }
        r = trim(r);
    }
    r
}

/// Gcd in `Z[x]`, normalized primitive with positive leading coefficient.
pub(crate) fn gcd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let mut a = primitive(a);
    let mut b = primitive(b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        if is_constant(&b) {
            return vec![BigInt::one()];
        }
        let r = primitive(&prem(&a, &b));
        a = b;
        b = r;
    }
    a
}

/// Quotient of `a` by `b`, assuming `b` divides `a` in `Z[x]`.
pub(crate) fn exact_div(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() {
        return Vec::new();
    }
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r: ZPoly = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len().saturating_sub(db).max(1)];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let coef = &r[dr] / lb;
        debug_assert!((&coef * lb) == r[dr], "inexact polynomial division");
        let shift = dr - db;
        for (k, bk) in b.iter().enumerate() {
            r[shift + k] -= &coef * bk;
        }
        q[shift] = coef;
        r = trim(r);
    }
    debug_assert!(r.is_empty(), "nonzero remainder in exact division");
    trim(q)
}

/// Yun's square-free decomposition of a primitive polynomial of positive
/// degree: returns `(g, i)` pairs with `f = ± prod g^i`, every `g` square-free
/// and primitive.
pub(crate) fn squarefree_decomposition(f: &[BigInt]) -> Vec<(ZPoly, u32)> {
    let f = primitive(f);
    let df = derivative(&f);
    let a0 = gcd(&f, &df);
    if is_constant(&a0) {
        return vec![(f, 1)];
    }
    let mut out = Vec::new();
    let mut b = exact_div(&f, &a0);
    let c = exact_div(&df, &a0);
    let mut d = sub(&c, &derivative(&b));
    let mut i = 1u32;
    while !is_constant(&b) {
        let a = gcd(&b, &d);
        if !is_constant(&a) {
            out.push((a.clone(), i));
        }
        b = exact_div(&b, &a);
        let c = exact_div(&d, &a);
        d = sub(&c, &derivative(&b));
        i += 1;
    }
    out
}

/// One Graeffe root-squaring step: the result has the squares of the roots
/// of `p` as its roots.
pub(crate) fn graeffe_step(p: &[BigInt]) -> ZPoly {
    let neg: ZPoly = p
        .iter()
        .enumerate()
        .map(|(k, c)| if k % 2 == 1 { -c.clone() } else { c.clone() })
        .collect();
    let prod = mul(p, &neg);
    // p(x) p(-x) is even; keep the even coefficients.
    trim(prod.into_iter().step_by(2).collect())
}

/// Natural log of a positive big integer.
pub(crate) fn ln_big(x: &BigInt) -> f64 {
    debug_assert!(x.is_positive());
    let bits = x.bits();
    if bits <= 1000 {
        let f: f64 = x.to_string().parse().unwrap_or(f64::INFINITY);
        if f.is_finite() {
            return f.ln();
        }
    }
    let shift = bits - 64;
    let top: BigInt = x >> shift;
    let f: f64 = top.to_string().parse().unwrap_or(f64::MAX);
    f.ln() + shift as f64 * std::f64::consts::LN_2
}
