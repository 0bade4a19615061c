//! Delaunay triangulations of finite point sets in `H^3`.
//!
//! Empty-ball conditions are preserved by the map to the Poincaré ball, so the
//! hyperbolic triangulation is the Euclidean Delaunay triangulation of the
//! Poincaré images. The latter is built incrementally (Bowyer–Watson) over
//! exact orientation and insphere predicates. Hull facets carry "ghost" cells
//! with a vertex at infinity so that points outside the current hull are
//! handled by the same cavity rule.

use std::collections::{BTreeMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use robust::{insphere, orient3d, Coord3D};
use serde::{Deserialize, Serialize};

use super::{GeometryError, HPoint};
use crate::complex::SimplicialComplex3;

const INF: usize = usize::MAX;

/// Perturbation policy for inputs with cospherical or coplanar subsets.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DelaunayOptions {
    /// Per-coordinate magnitude of the Poincaré-ball jitter.
    pub jitter_magnitude: f64,
    pub max_jitter_attempts: u32,
    pub jitter_seed: u64,
}

impl Default for DelaunayOptions {
    fn default() -> Self {
        Self {
            jitter_magnitude: 1e-8,
            max_jitter_attempts: 8,
            jitter_seed: 0x5eed,
        }
    }
}

/// Record of the perturbation applied to reach general position.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct JitterRecord {
    /// Jittered rebuilds performed; the last one succeeded.
    pub attempts: u32,
    pub magnitude: f64,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HyperbolicDelaunay {
    /// Tetrahedra and their faces; coordinates are the unperturbed inputs.
    pub complex: SimplicialComplex3,
    pub jitter: Option<JitterRecord>,
}

pub fn delaunay(points: &[HPoint]) -> Result<SimplicialComplex3, GeometryError> {
    delaunay_with(points, &DelaunayOptions::default()).map(|d| d.complex)
}

pub fn delaunay_with(
    points: &[HPoint],
    options: &DelaunayOptions,
) -> Result<HyperbolicDelaunay, GeometryError> {
    if points.len() < 4 {
        return Err(GeometryError::DegenerateInput(format!(
            "need at least 4 points, got {}",
            points.len()
        )));
    }
    let mut seen = HashSet::new();
    for (i, p) in points.iter().enumerate() {
        let key = p.coords().map(f64::to_bits);
        if !seen.insert(key) {
            return Err(GeometryError::DegenerateInput(format!("point {i} is a duplicate")));
        }
    }
    let base: Vec<[f64; 3]> = points.iter().map(HPoint::to_poincare).collect();

    let build_complex = |tets: Vec<[usize; 4]>| {
        SimplicialComplex3::from_tetrahedra(points.len(), &tets)
            .and_then(|k| k.with_coords(points.to_vec()))
            .map_err(|e| GeometryError::DegenerateInput(e.to_string()))
    };

    match triangulate(&base)? {
        Outcome::Done(tets) => {
            return Ok(HyperbolicDelaunay {
                complex: build_complex(tets)?,
                jitter: None,
            })
        }
        Outcome::Degenerate => {}
    }
    let mut rng = ChaCha8Rng::seed_from_u64(options.jitter_seed);
    for attempt in 1..=options.max_jitter_attempts {
        let moved: Vec<[f64; 3]> = base
            .iter()
            .map(|y| {
                let mut z = *y;
                for c in &mut z {
                    *c += options.jitter_magnitude * (2.0 * rng.random::<f64>() - 1.0);
                }
                z
            })
            .collect();
        if let Outcome::Done(tets) = triangulate(&moved)? {
            return Ok(HyperbolicDelaunay {
                complex: build_complex(tets)?,
                jitter: Some(JitterRecord {
                    attempts: attempt,
                    magnitude: options.jitter_magnitude,
                    seed: options.jitter_seed,
                }),
            });
        }
    }
    Err(GeometryError::DegenerateInput(format!(
        "no general-position perturbation found in {} attempts",
        options.max_jitter_attempts
    )))
}

enum Outcome {
    Done(Vec<[usize; 4]>),
    /// Some predicate evaluated to exactly zero.
    Degenerate,
}

fn c3(p: &[f64; 3]) -> Coord3D<f64> {
    Coord3D {
        x: p[0],
        y: p[1],
        z: p[2],
    }
}

struct Builder<'a> {
    pts: &'a [[f64; 3]],
    cells: Vec<[usize; 4]>,
}

impl Builder<'_> {
    fn orient(&self, c: &[usize; 4], q: usize) -> f64 {
        let v = |i: usize| c3(&self.pts[if c[i] == INF { q } else { c[i] }]);
        orient3d(v(0), v(1), v(2), v(3))
    }

    /// Positive when `q` conflicts with cell `c`; exactly zero marks a
    /// degenerate configuration.
    fn conflict(&self, c: &[usize; 4], q: usize) -> f64 {
        if c.contains(&INF) {
            self.orient(c, q)
        } else {
            let p = |i: usize| c3(&self.pts[c[i]]);
            insphere(p(0), p(1), p(2), p(3), c3(&self.pts[q]))
        }
    }
}

fn initial_tetrahedron(pts: &[[f64; 3]]) -> Option<[usize; 4]> {
    let n = pts.len();
    let a = 0;
    let b = 1;
    let c = (2..n).find(|&c| {
        let ab = [pts[b][0] - pts[a][0], pts[b][1] - pts[a][1], pts[b][2] - pts[a][2]];
        let ac = [pts[c][0] - pts[a][0], pts[c][1] - pts[a][1], pts[c][2] - pts[a][2]];
        let cross = [
            ab[1] * ac[2] - ab[2] * ac[1],
            ab[2] * ac[0] - ab[0] * ac[2],
            ab[0] * ac[1] - ab[1] * ac[0],
        ];
        // Exact collinearity is rare; the orientation search below is exact.
        cross.iter().any(|&x| x != 0.0)
    })?;
    let d = (2..n)
        .filter(|&d| d != c)
        .find(|&d| orient3d(c3(&pts[a]), c3(&pts[b]), c3(&pts[c]), c3(&pts[d])) != 0.0)?;
    if orient3d(c3(&pts[a]), c3(&pts[b]), c3(&pts[c]), c3(&pts[d])) > 0.0 {
        Some([a, b, c, d])
    } else {
        Some([b, a, c, d])
    }
}

fn triangulate(pts: &[[f64; 3]]) -> Result<Outcome, GeometryError> {
    let Some(t0) = initial_tetrahedron(pts) else {
        return Err(GeometryError::DegenerateInput(
            "all points are coplanar".into(),
        ));
    };
    let mut b = Builder {
        pts,
        cells: vec![t0],
    };
    // Ghost across each facet: swap two finite vertices so that exterior
    // points see the ghost positively oriented.
    for k in 0..4 {
        let mut g = t0;
        g[k] = INF;
        let (i, j) = match k {
            0 => (1, 2),
            _ => (0, if k == 1 { 2 } else { 1 }),
        };
        g.swap(i, j);
        b.cells.push(g);
    }

    for q in (0..pts.len()).filter(|q| !t0.contains(q)) {
        let mut conflict = Vec::new();
        let mut keep = Vec::with_capacity(b.cells.len());
        for c in &b.cells {
            let s = b.conflict(c, q);
            if s == 0.0 {
                return Ok(Outcome::Degenerate);
            }
            if s > 0.0 {
                conflict.push(*c);
            } else {
                keep.push(*c);
            }
        }
        let mut facet_count: BTreeMap<[usize; 3], u32> = BTreeMap::new();
        let facet = |c: &[usize; 4], k: usize| {
            let mut f = [0; 3];
            let mut t = 0;
            for (i, &v) in c.iter().enumerate() {
                if i != k {
                    f[t] = v;
                    t += 1;
                }
            }
            f.sort_unstable();
            f
        };
        for c in &conflict {
            for k in 0..4 {
                *facet_count.entry(facet(c, k)).or_default() += 1;
            }
        }
        for c in &conflict {
            for k in 0..4 {
                if facet_count[&facet(c, k)] == 1 {
                    let mut n = *c;
                    n[k] = q;
                    keep.push(n);
                }
            }
        }
        b.cells = keep;
    }

    let mut tets: Vec<[usize; 4]> = b
        .cells
        .into_iter()
        .filter(|c| !c.contains(&INF))
        .collect();
    tets.sort_unstable();
    Ok(Outcome::Done(tets))
}
