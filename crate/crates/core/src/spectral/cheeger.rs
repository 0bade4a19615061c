use serde::{Deserialize, Serialize};

use super::{fiedler_pair, SpectralError, WeightedGraph};

/// Largest graph accepted by [`CheegerMode::Exact`].
pub const EXACT_CHEEGER_MAX_VERTICES: usize = 24;

/// Relative slack on the sandwich verdict, for eigensolver rounding.
const SANDWICH_RTOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheegerMode {
    /// Minimum over all subsets.
    Exact,
    /// Best prefix cut along the Fiedler vector; an upper bound on `h`.
    Sweep,
}

impl std::str::FromStr for CheegerMode {
    type Err = SpectralError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(Self::Exact),
            "sweep" => Ok(Self::Sweep),
            _ => Err(SpectralError::Parse(format!("unknown Cheeger mode `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheegerCut {
    pub value: f64,
    /// The side of the optimal cut with the smaller measure.
    pub set: Vec<usize>,
    pub mode: CheegerMode,
}

fn ratio(g: &WeightedGraph, inside: &[bool], m: &[f64], total: f64) -> f64 {
    let ms: f64 = m.iter().zip(inside).filter(|(_, &i)| i).map(|(x, _)| x).sum();
    g.boundary_weight(inside) / ms.min(total - ms)
}

fn smaller_side(inside: &[bool], m: &[f64], total: f64) -> Vec<usize> {
    let ms: f64 = m.iter().zip(inside).filter(|(_, &i)| i).map(|(x, _)| x).sum();
    let want = ms <= total - ms;
    (0..inside.len()).filter(|&v| inside[v] == want).collect()
}

pub fn cheeger_constant(g: &WeightedGraph, mode: CheegerMode) -> Result<CheegerCut, SpectralError> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(SpectralError::InvalidGraph(format!(
            "need at least 2 vertices, got {n}"
        )));
    }
    let m = g.measure();
    if let Some(v) = (0..n).find(|&v| m[v] <= 0.0) {
        return Err(SpectralError::InvalidGraph(format!("vertex {v} has zero measure")));
    }
    let total: f64 = m.iter().sum();
    let best = match mode {
        CheegerMode::Exact => exact(g, &m, total)?,
        CheegerMode::Sweep => sweep(g, &m, total)?,
    };
    Ok(CheegerCut {
        value: ratio(g, &best, &m, total),
        set: smaller_side(&best, &m, total),
        mode,
    })
}

/// Gray-code enumeration with the last vertex pinned outside `S`; the
/// objective is symmetric under complement.
fn exact(g: &WeightedGraph, m: &[f64], total: f64) -> Result<Vec<bool>, SpectralError> {
    let n = g.vertex_count();
    if n > EXACT_CHEEGER_MAX_VERTICES {
        return Err(SpectralError::TooLarge(format!(
            "{n} vertices; exact enumeration supports at most {EXACT_CHEEGER_MAX_VERTICES}"
        )));
    }
    let adj = g.adjacency();
    let mut inside = vec![false; n];
    let (mut boundary, mut ms) = (0.0, 0.0);
    let mut best = (f64::INFINITY, 0u64);
    let mut code = 0u64;
    for step in 1u64..(1u64 << (n - 1)) {
        let v = step.trailing_zeros() as usize;
        code ^= 1 << v;
        let joining = !inside[v];
        for &(u, w) in &adj[v] {
            if inside[u] == joining {
                boundary -= w;
            } else {
                boundary += w;
            }
        }
        inside[v] = joining;
        ms += if joining { m[v] } else { -m[v] };
        let r = boundary / ms.min(total - ms);
        if r < best.0 {
            best = (r, code);
        }
    }
    Ok((0..n).map(|v| best.1 >> v & 1 == 1).collect())
}

fn sweep(g: &WeightedGraph, m: &[f64], total: f64) -> Result<Vec<bool>, SpectralError> {
    let n = g.vertex_count();
    let (_, f) = fiedler_pair(g)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| f[a].total_cmp(&f[b]).then(a.cmp(&b)));
    let adj = g.adjacency();
    let mut inside = vec![false; n];
    let (mut boundary, mut ms) = (0.0, 0.0);
    let mut best = (f64::INFINITY, 0);
    for (k, &v) in order.iter().enumerate().take(n - 1) {
        for &(u, w) in &adj[v] {
            if inside[u] {
                boundary -= w;
            } else {
                boundary += w;
            }
        }
        inside[v] = true;
        ms += m[v];
        let r = boundary / ms.min(total - ms);
        if r < best.0 {
            best = (r, k + 1);
        }
    }
    let mut cut = vec![false; n];
    for &v in &order[..best.1] {
        cut[v] = true;
    }
    Ok(cut)
}

/// Discrete Cheeger–Buser sandwich, with the closed-orbifold constants for
/// `k = 3` alongside for reference.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SandwichReport {
    pub h: f64,
    pub lambda1: f64,
    pub mode: CheegerMode,
    /// `max_v d_v / m_v`.
    pub kappa: f64,
    /// `h² / (2κ)`.
    pub sandwich_lhs: f64,
    /// `2h`.
    pub sandwich_rhs: f64,
    /// `sandwich_lhs ≤ λ₁ ≤ sandwich_rhs`. Guaranteed only with the exact
    /// `h`; the sweep value can exceed it.
    pub sandwich_holds: bool,
    /// `h² / 4`, not asserted.
    pub continuous_lhs: f64,
    /// `2(k - 1)h + 10h²` at `k = 3`, not asserted.
    pub continuous_rhs: f64,
}

pub fn cheeger_buser_report(g: &WeightedGraph, mode: CheegerMode) -> Result<SandwichReport, SpectralError> {
    let (lambda1, _) = fiedler_pair(g)?;
    let h = cheeger_constant(g, mode)?.value;
    let d = g.weighted_degrees();
    let kappa = d
        .iter()
        .zip(g.measure())
        .map(|(dv, mv)| dv / mv)
        .fold(0.0, f64::max);
    let lhs = h * h / (2.0 * kappa);
    let rhs = 2.0 * h;
    let slack = SANDWICH_RTOL * lambda1.max(rhs);
    Ok(SandwichReport {
        h,
        lambda1,
        mode,
        kappa,
        sandwich_lhs: lhs,
        sandwich_rhs: rhs,
        sandwich_holds: lhs <= lambda1 + slack && lambda1 <= rhs + slack,
        continuous_lhs: h * h / 4.0,
        continuous_rhs: 4.0 * h + 10.0 * h * h,
    })
}
