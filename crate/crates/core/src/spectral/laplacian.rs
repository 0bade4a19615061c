use nalgebra::{DMatrix, DVector, SymmetricEigen};

use super::{SpectralError, WeightedGraph};

fn require_connected(g: &WeightedGraph) -> Result<(), SpectralError> {
    if g.vertex_count() < 2 {
        return Err(SpectralError::InvalidGraph(format!(
            "need at least 2 vertices, got {}",
            g.vertex_count()
        )));
    }
    if !g.is_connected() {
        return Err(SpectralError::Disconnected);
    }
    Ok(())
}

/// `M^{-1/2}(D - W)M^{-1/2}` as a dense symmetric matrix.
pub fn normalized_laplacian(g: &WeightedGraph) -> Result<DMatrix<f64>, SpectralError> {
    let n = g.vertex_count();
    let d = g.weighted_degrees();
    let m = g.measure();
    if let Some(v) = (0..n).find(|&v| m[v] <= 0.0) {
        return Err(SpectralError::InvalidGraph(format!("vertex {v} has zero measure")));
    }
    let s: Vec<f64> = m.iter().map(|x| 1.0 / x.sqrt()).collect();
    let mut l = DMatrix::zeros(n, n);
    for v in 0..n {
        l[(v, v)] = d[v] * s[v] * s[v];
    }
    for &(a, b, w) in g.edges() {
        let x = -w * s[a] * s[b];
        l[(a, b)] = x;
        l[(b, a)] = x;
    }
    Ok(l)
}

/// Second-smallest eigenvalue with the eigenvector mapped back to a vertex
/// function, `M^{-1/2} u`.
pub fn fiedler_pair(g: &WeightedGraph) -> Result<(f64, Vec<f64>), SpectralError> {
    require_connected(g)?;
    let l = normalized_laplacian(g)?;
    let eig = SymmetricEigen::new(l);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let k = order[1];
    let u: DVector<f64> = eig.eigenvectors.column(k).into_owned();
    let m = g.measure();
    let f = u.iter().zip(&m).map(|(x, mv)| x / mv.sqrt()).collect();
    Ok((eig.eigenvalues[k].max(0.0), f))
}

/// First nonzero eigenvalue of the normalized Laplacian.
pub fn lambda1(g: &WeightedGraph) -> Result<f64, SpectralError> {
    fiedler_pair(g).map(|(l, _)| l)
}
