//! Maximal ε-separated nets in hyperbolic balls.
//!
//! Construction is greedy: candidates from a randomly rotated Halton stream
//! (volume-uniform in the ball) are accepted whenever they are at least ε from
//! every accepted point. The stream stops after a run of consecutive
//! rejections, and a shell pass then probes points just beyond distance ε
//! of every net point to close the small gaps the stream left behind.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::point::{dist, Boost, HPoint};
use super::volume::sinh_minus_id;
use super::GeometryError;

/// Closed ball `B(center, radius)` in `H^3`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BallDomain {
    center: HPoint,
    radius: f64,
}

impl BallDomain {
    pub fn new(center: HPoint, radius: f64) -> Result<Self, GeometryError> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(GeometryError::InvalidInput(format!(
                "domain radius must be positive, got {radius}"
            )));
        }
        Ok(Self { center, radius })
    }

    pub fn centered(radius: f64) -> Result<Self, GeometryError> {
        Self::new(HPoint::origin(), radius)
    }

    pub fn center(&self) -> HPoint {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn contains(&self, p: &HPoint) -> bool {
        dist(&self.center, p) <= self.radius * (1.0 + 1e-12)
    }

    /// Radius of the origin-centered ball containing a fraction `u` of the
    /// volume of `B(0, R)`: inverts `(sinh 2ρ - 2ρ) / (sinh 2R - 2R)`.
    pub(crate) fn radial_quantile(&self, u: f64) -> f64 {
        let total = sinh_minus_id(2.0 * self.radius);
        let target = u.clamp(0.0, 1.0) * total;
        let (mut lo, mut hi) = (0.0, self.radius);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if sinh_minus_id(2.0 * mid) < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// Maps a point of the unit cube to the ball, volume-preservingly up to
    /// a constant.
    pub(crate) fn from_unit_cube(&self, boost: &Boost, u: [f64; 3]) -> HPoint {
        let r = self.radial_quantile(u[0]);
        let z = 2.0 * u[1] - 1.0;
        let phi = 2.0 * std::f64::consts::PI * u[2];
        let s = (1.0 - z * z).max(0.0).sqrt();
        boost.apply(&HPoint::from_polar(r, [s * phi.cos(), s * phi.sin(), z]))
    }

    /// Volume-uniform random point.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> HPoint {
        let u = [rng.random::<f64>(), rng.random::<f64>(), rng.random::<f64>()];
        self.from_unit_cube(&Boost::to(&self.center), u)
    }
}

/// Budget for the greedy construction.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NetConfig {
    /// Consecutive stream rejections after which the stream is declared
    /// exhausted.
    pub max_consecutive_rejections: usize,
    /// Directions probed around every net point in the shell pass
    /// (0 disables the pass).
    pub shell_directions: usize,
}

impl Default for NetConfig {
    fn default() -> Self {
        Self {
            max_consecutive_rejections: 10_000,
            shell_directions: 96,
        }
    }
}

/// Output of [`epsilon_net`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NetResult {
    pub points: Vec<HPoint>,
    pub epsilon: f64,
    /// Indices (into `points`) of the mandatory seeds.
    pub seed_indices: Vec<usize>,
    /// Whether the stream ended on the rejection budget, as opposed to
    /// running out of candidates.
    pub declared_maximal: bool,
    pub candidates_examined: usize,
    /// Points added by the shell pass after the stream stopped.
    pub shell_additions: usize,
}

/// Hash grid over spatial hyperboloid coordinates. Inside `B(0, R)` the
/// spatial projection is `cosh R`-Lipschitz, so neighbours within hyperbolic
/// distance ε lie in adjacent cells of size `ε cosh R`.
struct Grid {
    cell: f64,
    cells: HashMap<[i64; 3], Vec<usize>>,
}

impl Grid {
    fn new(cell: f64) -> Self {
        Self {
            cell,
            cells: HashMap::new(),
        }
    }

    fn key(&self, p: &HPoint) -> [i64; 3] {
        let s = p.spatial();
        [
            (s[0] / self.cell).floor() as i64,
            (s[1] / self.cell).floor() as i64,
            (s[2] / self.cell).floor() as i64,
        ]
    }

    fn insert(&mut self, p: &HPoint, idx: usize) {
        let k = self.key(p);
        self.cells.entry(k).or_default().push(idx);
    }

    /// Accepts with a relative margin so that separation survives the map
    /// back to the world frame.
    fn is_far(&self, p: &HPoint, points: &[HPoint], eps: f64) -> bool {
        let eps = eps * (1.0 + 1e-12);
        let k = self.key(p);
        for dx in -1..=1 {
            for dy in -1..=1 {
                for dz in -1..=1 {
                    if let Some(bucket) = self.cells.get(&[k[0] + dx, k[1] + dy, k[2] + dz]) {
                        if bucket.iter().any(|&i| dist(&points[i], p) < eps) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    let inv = 1.0 / base as f64;
    while i > 0 {
        f *= inv;
        r += f * (i % base) as f64;
        i /= base;
    }
    r
}

/// Points of a spherical Fibonacci lattice.
pub(crate) fn fibonacci_sphere(n: usize) -> Vec<[f64; 3]> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - (2.0 * i as f64 + 1.0) / n as f64;
            let s = (1.0 - z * z).max(0.0).sqrt();
            let phi = golden * i as f64;
            [s * phi.cos(), s * phi.sin(), z]
        })
        .collect()
}

pub fn epsilon_net(
    domain: &BallDomain,
    epsilon: f64,
    seeds: &[HPoint],
    seed_rng: u64,
) -> Result<NetResult, GeometryError> {
    epsilon_net_with(domain, epsilon, seeds, seed_rng, &NetConfig::default())
}

pub fn epsilon_net_with(
    domain: &BallDomain,
    epsilon: f64,
    seeds: &[HPoint],
    seed_rng: u64,
    config: &NetConfig,
) -> Result<NetResult, GeometryError> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(GeometryError::InvalidInput(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    for (i, s) in seeds.iter().enumerate() {
        if !domain.contains(s) {
            return Err(GeometryError::SeedViolation(format!(
                "seed {i} lies outside the domain"
            )));
        }
        for (j, t) in seeds.iter().enumerate().take(i) {
            let d = dist(s, t);
            if d < epsilon {
                return Err(GeometryError::SeedViolation(format!(
                    "seeds {j} and {i} are {d} apart, closer than epsilon = {epsilon}"
                )));
            }
        }
    }

    // Work in the frame where the domain is centered at the origin.
    let to_world = Boost::to(&domain.center);
    let to_local = to_world.inverse();
    let local = BallDomain::centered(domain.radius)?;
    let identity = Boost::to(&HPoint::origin());

    let mut grid = Grid::new(epsilon * domain.radius.cosh() * (1.0 + 1e-9));
    let mut points: Vec<HPoint> = Vec::new();
    for s in seeds {
        let p = to_local.apply(s);
        grid.insert(&p, points.len());
        points.push(p);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed_rng);
    let shift = [rng.random::<f64>(), rng.random::<f64>(), rng.random::<f64>()];
    let mut rejections = 0usize;
    let mut examined = 0usize;
    let mut index = 1u64;
    let stream_cap = (config.max_consecutive_rejections as u64 + 1) * 10_000;
    while rejections < config.max_consecutive_rejections && index < stream_cap {
        let u = [
            (radical_inverse(index, 2) + shift[0]).fract(),
            (radical_inverse(index, 3) + shift[1]).fract(),
            (radical_inverse(index, 5) + shift[2]).fract(),
        ];
        index += 1;
        examined += 1;
        let c = local.from_unit_cube(&identity, u);
        if grid.is_far(&c, &points, epsilon) {
            grid.insert(&c, points.len());
            points.push(c);
            rejections = 0;
        } else {
            rejections += 1;
        }
    }
    let declared_maximal = rejections >= config.max_consecutive_rejections;

    let mut shell_additions = 0;
    if config.shell_directions > 0 {
        let dirs = fibonacci_sphere(config.shell_directions);
        let mut i = 0;
        while i < points.len() {
            let around = Boost::to(&points[i]);
            for scale in [1.0 + 1e-6, 1.5] {
                for d in &dirs {
                    let c = around.apply(&HPoint::from_polar(epsilon * scale, *d));
                    examined += 1;
                    if local.contains(&c) && grid.is_far(&c, &points, epsilon) {
                        grid.insert(&c, points.len());
                        points.push(c);
                        shell_additions += 1;
                    }
                }
            }
            i += 1;
        }
    }

    // Seeds are returned bit-for-bit; only generated points are mapped back.
    let mut world: Vec<HPoint> = seeds.to_vec();
    world.extend(points[seeds.len()..].iter().map(|p| to_world.apply(p)));
    Ok(NetResult {
        points: world,
        epsilon,
        seed_indices: (0..seeds.len()).collect(),
        declared_maximal,
        candidates_examined: examined,
        shell_additions,
    })
}
