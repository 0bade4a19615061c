//! Hyperplane slicing of a tube: cross-sections `P_y ∩ N_T(E)` of the
//! hyperplanes `<x, u> = y`, a direction search minimising the largest
//! section, and the number of simplices a hyperplane can meet.
//!
//! Cross-sections are exact when every piece meeting the hyperplane has a
//! closed-form section (isolated vertices, segments parallel to `u` or to
//! the hyperplane) and the sections are pairwise disjoint. Otherwise they
//! are estimated by Karp–Luby sampling in the hyperplane: each section lies
//! in the `(n-1)`-ball about the midpoint of the projected sub-segment of
//! points within `T` of the hyperplane, of radius half its length plus `T`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::geometry::{
    capsule_volume, dist, dot, gaussian_vec, norm, point_segment_distance, uniform_in_orthogonal_ball,
    unit_ball_volume,
};
use super::{EmbedError, EmbeddedComplex};
use crate::hypgeom::fibonacci_sphere;

/// Evenly spaced offsets in the first pass over a direction.
pub const OFFSET_GRID: usize = 64;
/// Samples per Monte-Carlo cross-section.
pub const SECTION_SAMPLES: usize = 4096;
const REFINE_TOP: usize = 3;
const REFINE_POINTS: usize = 8;
const UNIT_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SliceMethod {
    Exact,
    MonteCarlo,
}

/// Cross-sections along one direction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DirectionProfile {
    pub direction: Vec<f64>,
    /// Evaluated offsets in increasing order, with their sections.
    pub offsets: Vec<f64>,
    pub sections: Vec<f64>,
    pub max_cross_section: f64,
    pub argmax_offset: f64,
    /// `Exact` only if every section was exact.
    pub method: SliceMethod,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SliceResult {
    pub direction: Vec<f64>,
    pub offsets: Vec<f64>,
    pub sections: Vec<f64>,
    pub max_cross_section: f64,
    pub method: SliceMethod,
    pub directions_evaluated: usize,
    /// Largest `max_cross_section` over all evaluated directions.
    pub worst_direction_max: f64,
    pub seed: u64,
}

fn unit(u: &[f64], n: usize) -> Result<Vec<f64>, EmbedError> {
    if u.len() != n {
        return Err(EmbedError::InvalidInput(format!("direction has {} coordinates, expected {n}", u.len())));
    }
    let l = norm(u);
    if !((l - 1.0).abs() <= UNIT_TOL) {
        return Err(EmbedError::InvalidInput(format!("direction has norm {l}, expected 1")));
    }
    Ok(u.iter().map(|x| x / l).collect())
}

/// Largest number of maximal simplices whose `T`-neighbourhood meets a
/// common hyperplane orthogonal to `u`. The supremum over all offsets is
/// taken exactly by sweeping the projected intervals.
pub fn fiber_complexity(e: &EmbeddedComplex, u: &[f64], t: f64) -> Result<usize, EmbedError> {
    let u = unit(u, e.ambient_dim())?;
    let coords = e.coords();
    let mut events: Vec<(f64, i32)> = Vec::new();
    for (a, b) in e.pieces() {
        let (ha, hb) = (dot(&coords[a], &u), dot(&coords[b], &u));
        events.push((ha.min(hb) - t, 1));
        events.push((ha.max(hb) + t, -1));
    }
    // Closed intervals: openings sort before closings at equal levels.
    events.sort_by(|x, y| x.0.total_cmp(&y.0).then(y.1.cmp(&x.1)));
    let (mut cur, mut best) = (0i32, 0i32);
    for (_, d) in events {
        cur += d;
        best = best.max(cur);
    }
    Ok(best as usize)
}

/// One piece cut by a hyperplane.
struct Cut {
    piece: (usize, usize),
    centre: Vec<f64>,
    radius: f64,
    /// Section measure when it has a closed form.
    exact: Option<f64>,
}

struct Slicer<'a> {
    coords: &'a [Vec<f64>],
    pieces: Vec<(usize, usize)>,
    heights: Vec<(f64, f64)>,
    u: Vec<f64>,
    t: f64,
    n: usize,
}

impl<'a> Slicer<'a> {
    fn new(e: &'a EmbeddedComplex, u: Vec<f64>, t: f64) -> Self {
        let coords = e.coords();
        let pieces = e.pieces();
        let heights = pieces
            .iter()
            .map(|&(a, b)| (dot(&coords[a], &u), dot(&coords[b], &u)))
            .collect();
        Self {
            coords,
            pieces,
            heights,
            u,
            t,
            n: e.ambient_dim(),
        }
    }

    fn range(&self) -> (f64, f64) {
        self.heights.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &(a, b)| {
            (lo.min(a.min(b) - self.t), hi.max(a.max(b) + self.t))
        })
    }

    fn project(&self, x: &[f64], y: f64) -> Vec<f64> {
        let h = dot(x, &self.u) - y;
        x.iter().zip(&self.u).map(|(xi, ui)| xi - h * ui).collect()
    }

    fn cuts(&self, y: f64) -> Vec<Cut> {
        let t = self.t;
        let mut out = Vec::new();
        for (&(a, b), &(ha, hb)) in self.pieces.iter().zip(&self.heights) {
            if y < ha.min(hb) - t || y > ha.max(hb) + t {
                continue;
            }
            let (pa, pb) = (&self.coords[a], &self.coords[b]);
            let len = dist(pa, pb);
            let dh = hb - ha;
            let (s0, s1) = if dh.abs() <= 1e-12 * len.max(1.0) {
                (0.0, 1.0)
            } else {
                let r0 = ((y - t - ha) / dh).clamp(0.0, 1.0);
                let r1 = ((y + t - ha) / dh).clamp(0.0, 1.0);
                (r0.min(r1), r0.max(r1))
            };
            let at = |s: f64| -> Vec<f64> { pa.iter().zip(pb).map(|(x, z)| x + s * (z - x)).collect() };
            let (q0, q1) = (self.project(&at(s0), y), self.project(&at(s1), y));
            let centre: Vec<f64> = q0.iter().zip(&q1).map(|(x, z)| 0.5 * (x + z)).collect();
            let radius = 0.5 * dist(&q0, &q1) + t;

            let exact = if a == b {
                let h = ha - y;
                Some(unit_ball_volume(self.n - 1) * (t * t - h * h).max(0.0).sqrt().powi(self.n as i32 - 1))
            } else if dh.abs() <= 1e-12 * len {
                let h = ha - y;
                let rho = (t * t - h * h).max(0.0).sqrt();
                Some(capsule_volume(self.n - 1, rho, len))
            } else if (dh.abs() - len).abs() <= 1e-12 * len {
                let d = if y < ha.min(hb) {
                    ha.min(hb) - y
                } else if y > ha.max(hb) {
                    y - ha.max(hb)
                } else {
                    0.0
                };
                let rho = (t * t - d * d).max(0.0).sqrt();
                Some(unit_ball_volume(self.n - 1) * rho.powi(self.n as i32 - 1))
            } else {
                None
            };
            out.push(Cut {
                piece: (a, b),
                centre,
                radius,
                exact,
            });
        }
        out
    }

    /// Section measure at level `y` and whether it is exact.
    fn section<R: Rng + ?Sized>(&self, y: f64, samples: usize, rng: &mut R) -> (f64, bool) {
        let cuts = self.cuts(y);
        if cuts.is_empty() {
            return (0.0, true);
        }
        let all_exact = cuts.iter().all(|c| c.exact.is_some());
        let disjoint = all_exact
            && cuts.len() <= 2048
            && cuts.iter().enumerate().all(|(i, c)| {
                cuts[i + 1..]
                    .iter()
                    .all(|d| dist(&c.centre, &d.centre) > c.radius + d.radius)
            });
        if disjoint {
            return (cuts.iter().map(|c| c.exact.unwrap_or(0.0)).sum(), true);
        }

        let k = self.n - 1;
        let vols: Vec<f64> = cuts.iter().map(|c| unit_ball_volume(k) * c.radius.powi(k as i32)).collect();
        let total: f64 = vols.iter().sum();
        let inside = |x: &[f64], c: &Cut| -> bool {
            dist(x, &c.centre) <= c.radius
                && point_segment_distance(x, &self.coords[c.piece.0], &self.coords[c.piece.1]) <= self.t
        };
        let mut acc = 0.0;
        for _ in 0..samples {
            let mut r = rng.random::<f64>() * total;
            let mut i = 0;
            while i + 1 < vols.len() && r >= vols[i] {
                r -= vols[i];
                i += 1;
            }
            let off = uniform_in_orthogonal_ball(rng, &self.u, cuts[i].radius);
            let x: Vec<f64> = cuts[i].centre.iter().zip(&off).map(|(c, o)| c + o).collect();
            if !inside(&x, &cuts[i]) {
                continue;
            }
            let cover = cuts.iter().filter(|c| inside(&x, c)).count().max(1);
            acc += 1.0 / cover as f64;
        }
        (total * acc / samples as f64, false)
    }
}

/// Cross-sections of `N_T(E)` along `u` on an offset grid refined around
/// the largest values. `u` must be a unit vector.
pub fn evaluate_direction(
    e: &EmbeddedComplex,
    t: f64,
    u: &[f64],
    samples: usize,
    seed: u64,
) -> Result<DirectionProfile, EmbedError> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(EmbedError::InvalidInput(format!("thickness must be positive, got {t}")));
    }
    if samples == 0 {
        return Err(EmbedError::InvalidInput("section sample count must be positive".into()));
    }
    let u = unit(u, e.ambient_dim())?;
    Ok(profile(&Slicer::new(e, u, t), samples, seed))
}

fn profile(s: &Slicer, samples: usize, seed: u64) -> DirectionProfile {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi) = s.range();
    let step = (hi - lo) / OFFSET_GRID as f64;
    let mut exact = true;
    let mut eval = |y: f64, rng: &mut ChaCha8Rng| {
        let (v, ex) = s.section(y, samples, rng);
        exact &= ex;
        (y, v)
    };
    let mut pts: Vec<(f64, f64)> = (0..OFFSET_GRID).map(|i| eval(lo + (i as f64 + 0.5) * step, &mut rng)).collect();

    let mut width = step;
    for _ in 0..2 {
        let mut order: Vec<usize> = (0..pts.len()).collect();
        order.sort_by(|&i, &j| pts[j].1.total_cmp(&pts[i].1).then(i.cmp(&j)));
        let centres: Vec<f64> = order.iter().take(REFINE_TOP).map(|&i| pts[i].0).collect();
        for c in centres {
            for k in 0..REFINE_POINTS {
                let y = c - width + 2.0 * width * (k as f64 + 0.5) / REFINE_POINTS as f64;
                pts.push(eval(y, &mut rng));
            }
        }
        width /= REFINE_POINTS as f64 / 2.0;
    }
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (argmax_offset, max_cross_section) = pts
        .iter()
        .copied()
        .fold((lo, f64::NEG_INFINITY), |best, p| if p.1 > best.1 { p } else { best });
    DirectionProfile {
        direction: s.u.clone(),
        offsets: pts.iter().map(|p| p.0).collect(),
        sections: pts.iter().map(|p| p.1).collect(),
        max_cross_section,
        argmax_offset,
        method: if exact { SliceMethod::Exact } else { SliceMethod::MonteCarlo },
    }
}

/// Searches `budget` unit directions for the smallest maximal cross-section:
/// coordinate axes, then a sphere sample (Fibonacci points for `n = 3`,
/// seeded Gaussian directions otherwise) for three quarters of the budget,
/// then random perturbations of the incumbent with a shrinking step.
/// The result is a heuristic; nothing certifies optimality.
pub fn slice_search(e: &EmbeddedComplex, t: f64, budget: usize, seed: u64) -> Result<SliceResult, EmbedError> {
    slice_search_with(e, t, budget, seed, SECTION_SAMPLES)
}

pub fn slice_search_with(
    e: &EmbeddedComplex,
    t: f64,
    budget: usize,
    seed: u64,
    samples: usize,
) -> Result<SliceResult, EmbedError> {
    if budget == 0 {
        return Err(EmbedError::InvalidInput("direction budget must be at least 1".into()));
    }
    if !(t > 0.0 && t.is_finite()) {
        return Err(EmbedError::InvalidInput(format!("thickness must be positive, got {t}")));
    }
    if samples == 0 {
        return Err(EmbedError::InvalidInput("section sample count must be positive".into()));
    }
    let n = e.ambient_dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(u64::MAX);

    let initial = (budget - budget / 4).max(1);
    let mut dirs: Vec<Vec<f64>> = (0..n.min(initial))
        .map(|k| {
            let mut v = vec![0.0; n];
            v[k] = 1.0;
            v
        })
        .collect();
    let rest = initial - dirs.len();
    if n == 3 {
        dirs.extend(fibonacci_sphere(rest).into_iter().map(|p| p.to_vec()));
    } else {
        for _ in 0..rest {
            dirs.push(random_unit(&mut rng, n));
        }
    }

    let mut evaluated = 0usize;
    let eval = |u: Vec<f64>, evaluated: &mut usize| -> DirectionProfile {
        let s = seed ^ (*evaluated as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
        *evaluated += 1;
        profile(&Slicer::new(e, u, t), samples, s)
    };
    let mut best: Option<DirectionProfile> = None;
    let mut worst = f64::NEG_INFINITY;
    for u in dirs {
        let p = eval(u, &mut evaluated);
        worst = worst.max(p.max_cross_section);
        if best.as_ref().is_none_or(|b| p.max_cross_section < b.max_cross_section) {
            best = Some(p);
        }
    }
    let mut sigma = 0.3;
    while evaluated < budget {
        let inc = best.as_ref().expect("at least one direction").direction.clone();
        let g = gaussian_vec(&mut rng, n);
        let cand: Vec<f64> = inc.iter().zip(&g).map(|(a, b)| a + sigma * b).collect();
        let l = norm(&cand);
        if l == 0.0 {
            continue;
        }
        let p = eval(cand.iter().map(|x| x / l).collect(), &mut evaluated);
        worst = worst.max(p.max_cross_section);
        if p.max_cross_section < best.as_ref().expect("incumbent").max_cross_section {
            best = Some(p);
        } else {
            sigma = (sigma * 0.7).max(1e-3);
        }
    }
    let b = best.expect("budget is at least 1");
    Ok(SliceResult {
        direction: b.direction,
        offsets: b.offsets,
        sections: b.sections,
        max_cross_section: b.max_cross_section,
        method: b.method,
        directions_evaluated: evaluated,
        worst_direction_max: worst,
        seed,
    })
}

fn random_unit<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    loop {
        let g = gaussian_vec(rng, n);
        let l = norm(&g);
        if l > 1e-12 {
            return g.iter().map(|x| x / l).collect();
        }
    }
}
