use nalgebra::{Matrix4, Vector4};
use orbibound::hypgeom::{minkowski, HPoint};
use rand::Rng;

/// Generalized sphere through four hyperboloid points: the vector `c` with
/// `⟨c, p_i⟩ = -1`. Returns `None` for a singular system.
pub fn circumsphere(p: [&HPoint; 4]) -> Option<[f64; 4]> {
    let mut m = Matrix4::zeros();
    for (r, pt) in p.iter().enumerate() {
        let x = pt.coords();
        m[(r, 0)] = -x[0];
        m[(r, 1)] = x[1];
        m[(r, 2)] = x[2];
        m[(r, 3)] = x[3];
    }
    let c = m.lu().solve(&Vector4::from_element(-1.0))?;
    Some([c[0], c[1], c[2], c[3]])
}

/// Signed insideness: positive iff `q` lies strictly inside the generalized
/// sphere `c`, in the sense of the Poincaré ball picture.
pub fn inside_measure(c: &[f64; 4], q: &HPoint) -> f64 {
    (1.0 + c[0]) * (minkowski(c, &q.coords()) + 1.0)
}

/// Vertices of tetrahedra whose circumsphere strictly contains some other
/// input point, beyond a relative tolerance.
pub fn empty_sphere_violations(points: &[HPoint], tets: &[[usize; 4]], tol: f64) -> Vec<([usize; 4], usize)> {
    let mut bad = Vec::new();
    for t in tets {
        let Some(c) = circumsphere([&points[t[0]], &points[t[1]], &points[t[2]], &points[t[3]]]) else {
            bad.push((*t, usize::MAX));
            continue;
        };
        let scale = 1.0 + c.iter().map(|x| x.abs()).sum::<f64>();
        for (i, q) in points.iter().enumerate() {
            if t.contains(&i) {
                continue;
            }
            let qs = q.coords()[0];
            if inside_measure(&c, q) > tol * scale * scale * qs {
                bad.push((*t, i));
            }
        }
    }
    bad
}

/// Volume-uniform point of the ball of radius `r` about the origin, by
/// rejection from the Poincaré-ball cube with density `(2/(1-|y|²))³`.
pub fn uniform_in_ball<R: Rng>(rng: &mut R, r: f64) -> HPoint {
    let rho = (r / 2.0).tanh();
    let max_density = (2.0 / (1.0 - rho * rho)).powi(3);
    loop {
        let y = [
            rho * (2.0 * rng.random::<f64>() - 1.0),
            rho * (2.0 * rng.random::<f64>() - 1.0),
            rho * (2.0 * rng.random::<f64>() - 1.0),
        ];
        let n2 = y[0] * y[0] + y[1] * y[1] + y[2] * y[2];
        if n2 >= rho * rho {
            continue;
        }
        let density = (2.0 / (1.0 - n2)).powi(3);
        if rng.random::<f64>() * max_density <= density {
            return HPoint::from_poincare(y).unwrap();
        }
    }
}

/// Euclidean tetrahedron containment by barycentric signs.
pub fn in_tetrahedron(p: [f64; 3], t: [[f64; 3]; 4]) -> bool {
    let m = nalgebra::Matrix3::from_columns(&[
        nalgebra::Vector3::from(t[1]) - nalgebra::Vector3::from(t[0]),
        nalgebra::Vector3::from(t[2]) - nalgebra::Vector3::from(t[0]),
        nalgebra::Vector3::from(t[3]) - nalgebra::Vector3::from(t[0]),
    ]);
    let Some(inv) = m.try_inverse() else {
        return false;
    };
    let l = inv * (nalgebra::Vector3::from(p) - nalgebra::Vector3::from(t[0]));
    let eps = -1e-12;
    l[0] >= eps && l[1] >= eps && l[2] >= eps && l[0] + l[1] + l[2] <= 1.0 - eps
}

/// Whether the Poincaré images of the four points are coplanar up to `tol`
/// in the normalized volume determinant.
pub fn is_flat(p: [&HPoint; 4], tol: f64) -> bool {
    let y = p.map(|q| nalgebra::Vector3::from(q.to_poincare()));
    let (a, b, c) = (y[1] - y[0], y[2] - y[0], y[3] - y[0]);
    let scale = a.norm() * b.norm() * c.norm();
    a.dot(&b.cross(&c)).abs() <= tol * scale
}
