//! Monte-Carlo volume of the `T`-neighbourhood of an embedded graph.
//!
//! Two estimators share the same sample stream layout: the budget is cut
//! into fixed-size chunks, chunk `k` draws from `ChaCha8Rng` seeded with
//! `seed` on stream `k`, and chunk results are combined in chunk order, so
//! the estimate does not depend on the thread count.
//!
//! - Bounding box: uniform points in the box inflated by `T`, hit fraction
//!   times box volume.
//! - Karp–Luby: pick a capsule with probability proportional to its volume,
//!   a uniform point in it, and weight by the reciprocal of the number of
//!   capsules containing the point. Unbiased for the union, and its variance
//!   does not grow with the empty space around the graph.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::geometry::{capsule_volume, dist, point_segment_distance, unit_ball_volume, uniform_in_ball, SegmentIndex};
use super::{EmbedError, EmbeddedComplex};

pub const MIN_TUBE_SAMPLES: usize = 1000;
const CHUNK: usize = 1 << 14;
/// Below this ratio of summed capsule volume to box volume, `Auto` switches
/// to Karp–Luby.
const BOX_FILL_THRESHOLD: f64 = 0.05;
const Z95: f64 = 1.959963984540054;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TubeMethod {
    Auto,
    BoundingBox,
    KarpLuby,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TubeEstimate {
    pub value: f64,
    /// 95% confidence half-width.
    pub half_width: f64,
    pub samples: usize,
    pub seed: u64,
    pub method: TubeMethod,
    /// Sum of the individual capsule volumes, an upper bound on `value`.
    pub capsule_sum: f64,
}

/// Tube volume with the estimator chosen from the fill ratio.
pub fn tube_volume(e: &EmbeddedComplex, t: f64, samples: usize, seed: u64) -> Result<TubeEstimate, EmbedError> {
    tube_volume_with(e, t, samples, seed, TubeMethod::Auto)
}

pub fn tube_volume_with(
    e: &EmbeddedComplex,
    t: f64,
    samples: usize,
    seed: u64,
    method: TubeMethod,
) -> Result<TubeEstimate, EmbedError> {
    if samples < MIN_TUBE_SAMPLES {
        return Err(EmbedError::InvalidInput(format!(
            "at least {MIN_TUBE_SAMPLES} samples required, got {samples}"
        )));
    }
    if !(t > 0.0 && t.is_finite()) {
        return Err(EmbedError::InvalidInput(format!("thickness must be positive, got {t}")));
    }
    let tube = Tube::new(e, t);
    let n = e.ambient_dim();
    let (lo, hi) = tube.bounding_box();
    let box_volume: f64 = lo.iter().zip(&hi).map(|(a, b)| b - a).product();
    if !(box_volume > 0.0 && box_volume.is_finite()) {
        return Err(EmbedError::InvalidInput(format!("degenerate bounding box volume {box_volume}")));
    }
    let capsule_sum: f64 = tube.volumes.iter().sum();
    let method = match method {
        TubeMethod::Auto if capsule_sum >= BOX_FILL_THRESHOLD * box_volume => TubeMethod::BoundingBox,
        TubeMethod::Auto => TubeMethod::KarpLuby,
        m => m,
    };
    let chunks = samples.div_ceil(CHUNK);
    let chunk_len = |k: usize| CHUNK.min(samples - k * CHUNK);
    let rng_for = |k: usize| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(k as u64);
        rng
    };

    let (value, half_width) = match method {
        TubeMethod::BoundingBox => {
            let hits: Vec<usize> = (0..chunks)
                .into_par_iter()
                .map(|k| {
                    let mut rng = rng_for(k);
                    let mut x = vec![0.0; n];
                    let mut hits = 0;
                    for _ in 0..chunk_len(k) {
                        for i in 0..n {
                            x[i] = rng.random_range(lo[i]..hi[i]);
                        }
                        if tube.coverage(&x, true) > 0 {
                            hits += 1;
                        }
                    }
                    hits
                })
                .collect();
            let p = hits.iter().sum::<usize>() as f64 / samples as f64;
            (p * box_volume, Z95 * box_volume * (p * (1.0 - p) / samples as f64).sqrt())
        }
        _ => {
            let cumulative: Vec<f64> = tube
                .volumes
                .iter()
                .scan(0.0, |acc, v| {
                    *acc += v;
                    Some(*acc)
                })
                .collect();
            let sums: Vec<(f64, f64)> = (0..chunks)
                .into_par_iter()
                .map(|k| {
                    let mut rng = rng_for(k);
                    let (mut s, mut s2) = (0.0, 0.0);
                    for _ in 0..chunk_len(k) {
                        let u = rng.random::<f64>() * capsule_sum;
                        let i = cumulative.partition_point(|&c| c <= u).min(cumulative.len() - 1);
                        let x = tube.sample_capsule(&mut rng, i);
                        let w = 1.0 / tube.coverage(&x, false).max(1) as f64;
                        s += w;
                        s2 += w * w;
                    }
                    (s, s2)
                })
                .collect();
            let (s, s2) = sums.iter().fold((0.0, 0.0), |(a, b), &(c, d)| (a + c, b + d));
            let mean = s / samples as f64;
            let var = (s2 / samples as f64 - mean * mean).max(0.0);
            (mean * capsule_sum, Z95 * capsule_sum * (var / samples as f64).sqrt())
        }
    };
    Ok(TubeEstimate {
        value,
        half_width,
        samples,
        seed,
        method,
        capsule_sum,
    })
}

/// Capsules around the maximal simplices with an index for membership.
struct Tube<'a> {
    coords: &'a [Vec<f64>],
    pieces: Vec<(usize, usize)>,
    volumes: Vec<f64>,
    t: f64,
    index: SegmentIndex,
}

impl<'a> Tube<'a> {
    fn new(e: &'a EmbeddedComplex, t: f64) -> Self {
        let coords = e.coords();
        let n = e.ambient_dim();
        let pieces = e.pieces();
        let volumes: Vec<f64> = pieces
            .iter()
            .map(|&(a, b)| capsule_volume(n, t, dist(&coords[a], &coords[b])))
            .collect();
        let index = SegmentIndex::new(coords, &pieces, t, 4.0 * t);
        Self {
            coords,
            pieces,
            volumes,
            t,
            index,
        }
    }

    fn bounding_box(&self) -> (Vec<f64>, Vec<f64>) {
        let n = self.coords.first().map_or(0, Vec::len);
        let mut lo = vec![f64::INFINITY; n];
        let mut hi = vec![f64::NEG_INFINITY; n];
        for p in self.coords {
            for i in 0..n {
                lo[i] = lo[i].min(p[i] - self.t);
                hi[i] = hi[i].max(p[i] + self.t);
            }
        }
        (lo, hi)
    }

    /// Number of capsules containing `x`; with `first_only` stops at one.
    fn coverage(&self, x: &[f64], first_only: bool) -> usize {
        let mut c = 0;
        for id in self.index.candidates(x) {
            let (a, b) = self.pieces[id as usize];
            if point_segment_distance(x, &self.coords[a], &self.coords[b]) <= self.t {
                c += 1;
                if first_only {
                    return 1;
                }
            }
        }
        c
    }

    /// Uniform point of capsule `i`: the cylinder, or a ball split into the
    /// two end caps by the sign of its component along the axis.
    fn sample_capsule<R: Rng + ?Sized>(&self, rng: &mut R, i: usize) -> Vec<f64> {
        let (a, b) = self.pieces[i];
        let (pa, pb) = (&self.coords[a], &self.coords[b]);
        let n = pa.len();
        let len = dist(pa, pb);
        let cyl = unit_ball_volume(n - 1) * self.t.powi(n as i32 - 1) * len;
        let total = self.volumes[i];
        if len > 0.0 {
            let axis: Vec<f64> = pa.iter().zip(pb).map(|(x, y)| (y - x) / len).collect();
            if rng.random::<f64>() * total < cyl {
                let s = rng.random::<f64>();
                let r = super::geometry::uniform_in_orthogonal_ball(rng, &axis, self.t);
                return (0..n).map(|k| pa[k] + s * (pb[k] - pa[k]) + r[k]).collect();
            }
            let z = uniform_in_ball(rng, n, self.t);
            let along: f64 = z.iter().zip(&axis).map(|(x, y)| x * y).sum();
            let end = if along >= 0.0 { pb } else { pa };
            return end.iter().zip(&z).map(|(p, d)| p + d).collect();
        }
        let z = uniform_in_ball(rng, n, self.t);
        pa.iter().zip(&z).map(|(p, d)| p + d).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::Graph;
    use std::f64::consts::PI;

    fn segment() -> EmbeddedComplex {
        EmbeddedComplex::new(Graph::path(2), vec![vec![0.0; 3], vec![1.0, 0.0, 0.0]], 3, 1.0).unwrap()
    }

    #[test]
    fn both_estimators_match_capsule() {
        let e = segment();
        let exact = 7.0 * PI / 3.0;
        let b = tube_volume_with(&e, 1.0, 200_000, 1, TubeMethod::BoundingBox).unwrap();
        assert!((b.value - exact).abs() < 3.0 * b.half_width, "{b:?}");
        let k = tube_volume_with(&e, 1.0, 1000, 1, TubeMethod::KarpLuby).unwrap();
        assert!((k.value - exact).abs() < 1e-12);
        assert_eq!(k.half_width, 0.0);
    }

    #[test]
    fn deterministic_and_validated() {
        let e = segment();
        let a = tube_volume(&e, 1.0, 50_000, 9).unwrap();
        assert_eq!(a, tube_volume(&e, 1.0, 50_000, 9).unwrap());
        assert!(tube_volume(&e, 1.0, 999, 9).is_err());
        assert!(tube_volume(&e, -1.0, 5000, 9).is_err());
    }
}
