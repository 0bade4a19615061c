//! Strong combinatorial thickness of a straight-line graph embedding.
//!
//! With closed `T`-neighbourhoods, the condition on a 1-dimensional complex
//! reduces to two exact checks:
//! - disjoint simplices (vertex–vertex, vertex–edge, edge–edge) lie more
//!   than `2T` apart;
//! - every triangle of the graph has inradius greater than `T`.
//!
//! Families of vertices and edges that pairwise intersect but have empty
//! common intersection are exactly the three sides of a triangle, and the
//! point closest to all three sides lies in the triangle's plane.

use serde::{Deserialize, Serialize};

use super::geometry::{segment_distance, triangle_inradius, SegmentIndex};
use super::EmbeddedComplex;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Simplex {
    Vertex(usize),
    Edge(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum ThicknessViolation {
    /// Disjoint simplices at distance at most `2T`.
    Separation { simplices: [Simplex; 2], distance: f64 },
    /// Triangle sides whose `T`-neighbourhoods share a point.
    Triangle { simplices: [Simplex; 3], inradius: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThicknessReport {
    pub thick: bool,
    pub thickness: f64,
    pub witness: Option<ThicknessViolation>,
    /// Smallest distance between disjoint simplices among the candidate
    /// pairs examined (infinite when there were none).
    pub min_separation: f64,
    pub min_triangle_inradius: Option<f64>,
    pub pairs_checked: usize,
    pub triangles_checked: usize,
    /// Always true: the checks above are exhaustive for 1-complexes.
    pub fully_verified: bool,
}

pub fn verify_thickness(e: &EmbeddedComplex, t: f64) -> ThicknessReport {
    let scan = scan(e, t);
    let witness = scan
        .violations
        .iter()
        .filter(|v| matches!(v, ThicknessViolation::Separation { .. }))
        .min_by(|a, b| severity(a).total_cmp(&severity(b)))
        .or_else(|| scan.violations.first())
        .cloned();
    ThicknessReport {
        thick: scan.violations.is_empty(),
        thickness: t,
        witness,
        min_separation: scan.min_separation,
        min_triangle_inradius: scan.min_triangle_inradius,
        pairs_checked: scan.pairs_checked,
        triangles_checked: scan.triangles_checked,
        fully_verified: true,
    }
}

fn severity(v: &ThicknessViolation) -> f64 {
    match v {
        ThicknessViolation::Separation { distance, .. } => *distance,
        ThicknessViolation::Triangle { inradius, .. } => *inradius,
    }
}

impl ThicknessViolation {
    /// Vertices of the simplices involved, sorted and distinct.
    pub fn vertices(&self) -> Vec<usize> {
        let simplices: &[Simplex] = match self {
            ThicknessViolation::Separation { simplices, .. } => simplices,
            ThicknessViolation::Triangle { simplices, .. } => simplices,
        };
        let mut out: Vec<usize> = simplices
            .iter()
            .flat_map(|s| match *s {
                Simplex::Vertex(v) => vec![v],
                Simplex::Edge(a, b) => vec![a, b],
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

pub(crate) struct Scan {
    /// Separation violations in pair order, then triangle violations.
    pub(crate) violations: Vec<ThicknessViolation>,
    pub(crate) min_separation: f64,
    pub(crate) min_triangle_inradius: Option<f64>,
    pub(crate) pairs_checked: usize,
    pub(crate) triangles_checked: usize,
}

/// Every violation of thickness `t`.
pub(crate) fn scan(e: &EmbeddedComplex, t: f64) -> Scan {
    scan_impl(e, t, None)
}

/// Violations involving a simplex with a vertex in `vertices`.
pub(crate) fn scan_near(e: &EmbeddedComplex, t: f64, vertices: &[usize]) -> Vec<ThicknessViolation> {
    scan_impl(e, t, Some(vertices)).violations
}

fn scan_impl(e: &EmbeddedComplex, t: f64, near: Option<&[usize]>) -> Scan {
    let coords = e.coords();
    let g = e.graph();
    let nv = g.vertex_count();
    // Items 0..nv are vertices, nv.. are edges.
    let items: Vec<(usize, usize)> = (0..nv).map(|v| (v, v)).chain(g.edges().iter().map(|&[a, b]| (a, b))).collect();
    let simplex = |id: usize| -> Simplex {
        let (a, b) = items[id];
        if id < nv {
            Simplex::Vertex(a)
        } else {
            Simplex::Edge(a, b)
        }
    };
    let index = SegmentIndex::new(coords, &items, t, 4.0 * t);

    let mut flagged = vec![near.is_none(); nv];
    for &v in near.unwrap_or(&[]) {
        flagged[v] = true;
    }
    let pairs = match near {
        None => index.pairs(),
        Some(_) => {
            let touched: Vec<bool> = items.iter().map(|&(a, b)| flagged[a] || flagged[b]).collect();
            index.pairs_touching(&touched)
        }
    };

    let mut min_sep = f64::INFINITY;
    let mut violations = Vec::new();
    let mut checked = 0;
    for (i, j) in pairs {
        let (i, j) = (i as usize, j as usize);
        let (a, b) = items[i];
        let (c, d) = items[j];
        if a == c || a == d || b == c || b == d {
            continue;
        }
        checked += 1;
        let dist = segment_distance(&coords[a], &coords[b], &coords[c], &coords[d]);
        min_sep = min_sep.min(dist);
        if dist <= 2.0 * t {
            violations.push(ThicknessViolation::Separation {
                simplices: [simplex(i), simplex(j)],
                distance: dist,
            });
        }
    }

    let triangles: Vec<[usize; 3]> = g
        .triangles()
        .into_iter()
        .filter(|tri| tri.iter().any(|&v| flagged[v]))
        .collect();
    let mut min_r: Option<f64> = None;
    for &[a, b, c] in &triangles {
        let r = triangle_inradius(&coords[a], &coords[b], &coords[c]);
        min_r = Some(min_r.map_or(r, |m: f64| m.min(r)));
        if r <= t {
            violations.push(ThicknessViolation::Triangle {
                simplices: [Simplex::Edge(a, b), Simplex::Edge(b, c), Simplex::Edge(a, c)],
                inradius: r,
            });
        }
    }
    Scan {
        violations,
        min_separation: min_sep,
        min_triangle_inradius: min_r,
        pairs_checked: checked,
        triangles_checked: triangles.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::Graph;

    fn emb(n: usize, edges: &[(usize, usize)], pts: Vec<Vec<f64>>) -> EmbeddedComplex {
        let d = pts[0].len();
        EmbeddedComplex::new(Graph::new(n, edges).unwrap(), pts, d, 1.0).unwrap()
    }

    #[test]
    fn parallel_segments_at_distance_three() {
        let e = emb(
            4,
            &[(0, 1), (2, 3)],
            vec![vec![0.0, 0.0], vec![2.5, 0.0], vec![0.0, 3.0], vec![2.5, 3.0]],
        );
        let r = verify_thickness(&e, 1.0);
        assert!(r.thick);
        assert!(r.min_separation > 2.0);
    }

    #[test]
    fn endpoints_of_a_short_edge_are_disjoint_simplices() {
        let e = emb(
            4,
            &[(0, 1), (2, 3)],
            vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 3.0], vec![1.0, 3.0]],
        );
        let r = verify_thickness(&e, 1.0);
        assert!(!r.thick);
        assert!(matches!(
            r.witness,
            Some(ThicknessViolation::Separation { simplices: [Simplex::Vertex(0), Simplex::Vertex(1)], .. })
        ));
    }

    #[test]
    fn close_segments_fail_with_witness() {
        let e = emb(
            4,
            &[(0, 1), (2, 3)],
            vec![
                vec![0.0, 0.0, 0.0],
                vec![2.5, 0.0, 0.0],
                vec![1.25, 1.5, -1.25],
                vec![1.25, 1.5, 1.25],
            ],
        );
        let r = verify_thickness(&e, 1.0);
        assert!(!r.thick);
        match r.witness.unwrap() {
            ThicknessViolation::Separation { simplices, distance } => {
                assert_eq!(simplices, [Simplex::Edge(0, 1), Simplex::Edge(2, 3)]);
                assert!((distance - 1.5).abs() < 1e-15);
            }
            w => panic!("unexpected witness {w:?}"),
        }
    }

    #[test]
    fn triangle_depends_on_inradius() {
        let s = 10.0;
        let h = s * 3f64.sqrt() / 2.0;
        let e = emb(3, &[(0, 1), (1, 2), (0, 2)], vec![vec![0.0, 0.0], vec![s, 0.0], vec![s / 2.0, h]]);
        // inradius s / (2√3) ≈ 2.887
        assert!(verify_thickness(&e, 1.0).thick);
        let r = verify_thickness(&e, 2.8);
        assert!(r.thick);
        let r = verify_thickness(&e, 2.9);
        assert!(!r.thick);
        assert!(matches!(r.witness, Some(ThicknessViolation::Triangle { .. })));
    }
}
