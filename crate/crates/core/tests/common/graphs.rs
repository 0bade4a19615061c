use orbibound::spectral::WeightedGraph;
use rand::Rng;

/// Random connected weighted graph: a random spanning tree plus extra edges.
pub fn random_connected<R: Rng>(rng: &mut R, n: usize, extra_p: f64) -> WeightedGraph {
    let mut edges = Vec::new();
    let mut present = vec![vec![false; n]; n];
    for v in 1..n {
        let u = rng.random_range(0..v);
        present[u][v] = true;
        edges.push((u, v, rng.random_range(0.1..3.0)));
    }
    for a in 0..n {
        for b in a + 1..n {
            if !present[a][b] && rng.random::<f64>() < extra_p {
                edges.push((a, b, rng.random_range(0.1..3.0)));
            }
        }
    }
    WeightedGraph::new(n, edges).unwrap()
}

/// Conductance by recomputing every cut from scratch.
pub fn brute_force_cheeger(g: &WeightedGraph) -> f64 {
    let n = g.vertex_count();
    let m = g.measure();
    let total: f64 = m.iter().sum();
    let mut best = f64::INFINITY;
    for mask in 1u32..(1u32 << n) - 1 {
        let inside = |v: usize| mask >> v & 1 == 1;
        let ms: f64 = (0..n).filter(|&v| inside(v)).map(|v| m[v]).sum();
        let cut: f64 = g
            .edges()
            .iter()
            .filter(|&&(a, b, _)| inside(a) != inside(b))
            .map(|&(_, _, w)| w)
            .sum();
        best = best.min(cut / ms.min(total - ms));
    }
    best
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
pub fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _ in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Second-smallest eigenvalue of `M^{-1/2}(D - W)M^{-1/2}` by Jacobi.
pub fn oracle_lambda1(g: &WeightedGraph) -> f64 {
    let n = g.vertex_count();
    let d = g.weighted_degrees();
    let m = g.measure();
    let mut a = vec![vec![0.0; n]; n];
    for v in 0..n {
        a[v][v] = d[v] / m[v];
    }
    for &(i, j, w) in g.edges() {
        a[i][j] -= w / (m[i] * m[j]).sqrt();
        a[j][i] -= w / (m[i] * m[j]).sqrt();
    }
    jacobi_eigenvalues(a)[1]
}

/// `∫_0^∞ w(∂{g ≥ s}) ds` by integrating a step function sampled at the
/// midpoints of its constancy intervals.
pub fn oracle_coarea_rhs(g: &WeightedGraph, f: &[f64]) -> f64 {
    let mut cuts: Vec<f64> = f.to_vec();
    cuts.push(0.0);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let mut total = 0.0;
    for w in cuts.windows(2) {
        let s = 0.5 * (w[0] + w[1]);
        let cut: f64 = g
            .edges()
            .iter()
            .filter(|&&(a, b, _)| (f[a] >= s) != (f[b] >= s))
            .map(|&(_, _, x)| x)
            .sum();
        total += (w[1] - w[0]) * cut;
    }
    total
}
