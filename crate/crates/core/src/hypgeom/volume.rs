use std::f64::consts::PI;

use super::GeometryError;

/// `sinh(x) - x` without the cancellation of the direct formula at small `x`.
pub(crate) fn sinh_minus_id(x: f64) -> f64 {
    if x.abs() < 0.1 {
        // x^3/3! + x^5/5! + ... ; the x^15 term is below 1e-30 here.
        let x2 = x * x;
        let mut term = x * x2 / 6.0;
        let mut sum = term;
        for k in (5..=15).step_by(2) {
            term *= x2 / ((k - 1) * k) as f64;
            sum += term;
        }
        sum
    } else {
        x.sinh() - x
    }
}

fn check_radius(r: f64, what: &str) -> Result<(), GeometryError> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(GeometryError::InvalidInput(format!(
            "{what} must be a positive real, got {r}"
        )))
    }
}

/// Volume of a ball of radius `r` in `H^3`: `π (sinh 2r - 2r)`.
pub fn ball_volume(r: f64) -> Result<f64, GeometryError> {
    check_radius(r, "radius")?;
    Ok(PI * sinh_minus_id(2.0 * r))
}

/// `v_{5ε/2} / v_{ε/2} = (sinh 5ε - 5ε) / (sinh ε - ε)`.
pub fn ball_volume_ratio(epsilon: f64) -> Result<f64, GeometryError> {
    check_radius(epsilon, "epsilon")?;
    Ok(sinh_minus_id(5.0 * epsilon) / sinh_minus_id(epsilon))
}

/// `(m V / v_{ε/2}, v_{5ε/2} / v_{ε/2})`: the bound on the number of net
/// points in an orbifold of volume `V` whose finite subgroups have order at
/// most `m`, and the bound on vertex degree.
pub fn net_cardinality_and_degree_bounds(
    m: u64,
    volume: f64,
    epsilon: f64,
) -> Result<(f64, f64), GeometryError> {
    if m == 0 {
        return Err(GeometryError::InvalidInput("m must be positive".into()));
    }
    check_radius(volume, "volume")?;
    let v_half = ball_volume(epsilon / 2.0)?;
    Ok((m as f64 * volume / v_half, ball_volume_ratio(epsilon)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_matches_direct_formula() {
        for &x in &[0.02f64, 0.05, 0.0999] {
            let direct = x.sinh() - x;
            assert!((sinh_minus_id(x) - direct).abs() <= 1e-12 * direct);
        }
    }

    #[test]
    fn ball_volume_examples() {
        // 50-digit evaluation of π(sinh 1 - 1)
        assert!((ball_volume(0.5).unwrap() - 0.550_410_782_851_529_4).abs() < 1e-15);
        let r = 0.01;
        let ratio = ball_volume(r).unwrap() / (4.0 / 3.0 * PI * r * r * r);
        assert!((ratio - 1.0).abs() < 0.01);
        let v = ball_volume(0.05).unwrap();
        assert!((v - PI * (0.1f64.sinh() - 0.1)).abs() < 1e-15);
        assert!(ball_volume(0.0).is_err());
    }

    #[test]
    fn ratio_examples() {
        assert!((ball_volume_ratio(1e-3).unwrap() - 125.0).abs() < 1e-3);
        // 50-digit evaluation: 125.01500085359927439384314219540424855371170993904
        assert!((ball_volume_ratio(0.01).unwrap() - 125.015_000_853_599_27).abs() < 1e-10);
        assert!(ball_volume_ratio(0.01).unwrap() < 125.1);
        assert!(ball_volume_ratio(-1.0).is_err());
    }

    #[test]
    fn net_bounds() {
        let eps = 0.2;
        let v = ball_volume(eps / 2.0).unwrap();
        let (b1, d) = net_cardinality_and_degree_bounds(1, v, eps).unwrap();
        assert!((b1 - 1.0).abs() < 1e-12);
        let (b2, _) = net_cardinality_and_degree_bounds(2, v, eps).unwrap();
        assert!((b2 - 2.0 * b1).abs() < 1e-12);
        assert_eq!(d, ball_volume_ratio(eps).unwrap());
        let (_, d) = net_cardinality_and_degree_bounds(1, 1.0, 0.01).unwrap();
        assert!(d < 125.1);
    }
}
