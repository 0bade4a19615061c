//! Simplicial 3-complexes with marked singular graphs, the good-triangulation
//! test and the simplex counting bounds.

mod marking;
mod simplicial;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypgeom::HPoint;

pub use marking::{validate_good_triangulation, GoodTriangulationReport, MarkedSingularSet};
pub use simplicial::SimplicialComplex3;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ComplexError {
    #[error("structural error: {0}")]
    Structural(String),
    #[error("invalid marking: {0}")]
    InvalidMarking(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Outcome of [`manifold_count_check`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountReport {
    pub vertices: usize,
    pub edges: usize,
    pub triangles: usize,
    pub tetrahedra: usize,
    pub euler_characteristic: i64,
    /// `F = 2T`: every triangle bounds exactly two tetrahedra.
    pub closed_condition: bool,
    /// Triangles lying in a number of tetrahedra other than two.
    pub irregular_triangles: usize,
    /// `Σ_v deg(v)` with degrees counting incident simplices of all
    /// dimensions.
    pub incidence_lhs: usize,
    /// `Σ_σ |vertices(σ)|`.
    pub incidence_rhs: usize,
    pub incidence_holds: bool,
    pub max_degree: usize,
    pub simplex_total: usize,
    /// `V·(D − 1)` with `D` the maximum degree; reported next to the
    /// total, not asserted.
    pub count_bound: u64,
}

pub fn manifold_count_check(k: &SimplicialComplex3) -> Result<CountReport, ComplexError> {
    if k.vertex_count() == 0 {
        return Err(ComplexError::InvalidInput("empty complex".into()));
    }
    let [v, e, f, t] = k.counts();
    let mut per_triangle = vec![0usize; f];
    for tet in k.tetrahedra() {
        for skip in 0..4 {
            let mut tri = [0; 3];
            let mut j = 0;
            for (i, &x) in tet.iter().enumerate() {
                if i != skip {
                    tri[j] = x;
                    j += 1;
                }
            }
            let idx = k
                .triangles()
                .binary_search(&tri)
                .expect("face closure of a constructed complex");
            per_triangle[idx] += 1;
        }
    }
    let irregular_triangles = per_triangle.iter().filter(|&&c| c != 2).count();
    let degrees = k.vertex_degrees();
    let incidence_lhs: usize = degrees.iter().sum();
    let incidence_rhs = k.vertex_incidences();
    let max_degree = degrees.iter().copied().max().unwrap_or(0);
    Ok(CountReport {
        vertices: v,
        edges: e,
        triangles: f,
        tetrahedra: t,
        euler_characteristic: v as i64 - e as i64 + f as i64 - t as i64,
        closed_condition: f == 2 * t,
        irregular_triangles,
        incidence_lhs,
        incidence_rhs,
        incidence_holds: incidence_lhs == incidence_rhs,
        max_degree,
        simplex_total: k.simplex_total(),
        count_bound: (v as u64).saturating_mul(max_degree.saturating_sub(1) as u64),
    })
}

/// `B·(D − 1)`.
pub fn simplex_count_bound(b: u64, d: u64) -> Result<u64, ComplexError> {
    if b < 1 {
        return Err(ComplexError::InvalidInput("B must be at least 1".into()));
    }
    if d < 2 {
        return Err(ComplexError::InvalidInput(format!("D must be at least 2, got {d}")));
    }
    b.checked_mul(d - 1)
        .ok_or_else(|| ComplexError::InvalidInput("B·(D − 1) overflows u64".into()))
}

/// Volume lower bound `N^{1/(1+ε)}` implied by a triangulation with at most
/// `V^{1+ε}` simplices.
pub fn min_volume_from_complexity(n: u64, exponent_epsilon: f64) -> Result<f64, ComplexError> {
    if n < 1 {
        return Err(ComplexError::InvalidInput("N must be at least 1".into()));
    }
    if !(exponent_epsilon > 0.0 && exponent_epsilon.is_finite()) {
        return Err(ComplexError::InvalidInput(format!(
            "exponent epsilon must be positive, got {exponent_epsilon}"
        )));
    }
    Ok((n as f64).powf(1.0 / (1.0 + exponent_epsilon)))
}

/// Writes the text format: a `V E F T` header, `V` hyperboloid coordinate
/// lines when coordinates are present, then one line per edge, triangle and
/// tetrahedron prefixed by its dimension.
pub fn write_complex(k: &SimplicialComplex3) -> String {
    let [v, e, f, t] = k.counts();
    let mut s = format!("{v} {e} {f} {t}\n");
    if let Some(coords) = k.coords() {
        s.push_str(&crate::hypgeom::format_points(coords));
    }
    for x in k.edges() {
        s.push_str(&format!("1 {} {}\n", x[0], x[1]));
    }
    for x in k.triangles() {
        s.push_str(&format!("2 {} {} {}\n", x[0], x[1], x[2]));
    }
    for x in k.tetrahedra() {
        s.push_str(&format!("3 {} {} {} {}\n", x[0], x[1], x[2], x[3]));
    }
    s
}

/// Inverse of [`write_complex`]. The number of coordinate lines is the
/// number of body lines minus `E + F + T` and must be `0` or `V`.
pub fn read_complex(text: &str) -> Result<SimplicialComplex3, ComplexError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (_, header) = lines
        .next()
        .ok_or_else(|| ComplexError::Parse("missing `V E F T` header".into()))?;
    let h: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|e| ComplexError::Parse(format!("header: {e}")))?;
    if h.len() != 4 {
        return Err(ComplexError::Parse("header must be `V E F T`".into()));
    }
    let body: Vec<(usize, &str)> = lines.collect();
    let simplex_lines = h[1] + h[2] + h[3];
    let coord_lines = body
        .len()
        .checked_sub(simplex_lines)
        .ok_or_else(|| ComplexError::Parse(format!(
            "header announces {simplex_lines} simplices but only {} lines follow",
            body.len()
        )))?;
    if coord_lines != 0 && coord_lines != h[0] {
        return Err(ComplexError::Parse(format!(
            "{coord_lines} coordinate lines; expected 0 or {}",
            h[0]
        )));
    }
    let mut coords = Vec::with_capacity(coord_lines);
    for &(n, l) in &body[..coord_lines] {
        let pts = crate::hypgeom::parse_points(l)
            .map_err(|e| ComplexError::Parse(format!("line {n}: {e}")))?;
        coords.extend::<Vec<HPoint>>(pts);
    }
    let (mut e, mut f, mut t) = (Vec::new(), Vec::new(), Vec::new());
    for &(n, l) in &body[coord_lines..] {
        let nums: Vec<usize> = l
            .split_whitespace()
            .map(|x| x.parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|err| ComplexError::Parse(format!("line {n}: {err}")))?;
        match (nums.first(), nums.len()) {
            (Some(1), 3) => e.push([nums[1], nums[2]]),
            (Some(2), 4) => f.push([nums[1], nums[2], nums[3]]),
            (Some(3), 5) => t.push([nums[1], nums[2], nums[3], nums[4]]),
            _ => {
                return Err(ComplexError::Parse(format!(
                    "line {n}: expected `<dim> <vertices...>` with dim 1, 2 or 3"
                )))
            }
        }
    }
    if (e.len(), f.len(), t.len()) != (h[1], h[2], h[3]) {
        return Err(ComplexError::Parse(format!(
            "header announces {} {} {} simplices, found {} {} {}",
            h[1],
            h[2],
            h[3],
            e.len(),
            f.len(),
            t.len()
        )));
    }
    let k = SimplicialComplex3::new(h[0], e, f, t)?;
    if coords.is_empty() {
        Ok(k)
    } else {
        k.with_coords(coords)
    }
}
