//! Layered thick embeddings of bounded-degree graphs.
//!
//! Base cycles go on circles, one coordinate plane per cycle. Every other
//! vertex is placed by breadth-first layer from the base vertices: it keeps
//! the base coordinates of the base vertex it descends from, gets depth
//! `SPACING · layer` on the next axis, and a slot on a grid of spacing
//! `SPACING` in the remaining axes.
//!
//! Two placements are tried in order.
//! - Layered: slots are packed into a centred square per (root, layer)
//!   group, using three axes beyond the base planes. Thick for paths,
//!   cycles, bouquets and other graphs with few cross-layer edges.
//! - Scattered: slots are drawn at random from a cube in all residual axes,
//!   sized so a layer fills a fixed fraction of it. Violations found by
//!   [`scan`] are repaired by moving one movable vertex of each to a fresh
//!   slot; when repair stalls, the cubes grow.
//!
//! Distinct slots in one layer, and vertices in distinct layers, are at
//! least `SPACING` apart. Every returned embedding has passed the full
//! thickness check at `T = 1`.

use std::collections::{BTreeMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::thickness::{scan, scan_near};
use super::{verify_thickness, EmbedError, EmbeddedComplex, Graph};

/// Vertex spacing of the layout.
pub const SPACING: f64 = 2.5;
/// Side of a base triangle: its inradius `3.6/(2√3)` exceeds 1.
const TRIANGLE_SIDE: f64 = 3.6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmbedOptions {
    /// Seed for the scattered placement.
    pub seed: u64,
    /// Initial ratio of grid slots to vertices per layer.
    pub slot_ratio: f64,
    /// Repair rounds per cube size.
    pub max_rounds: usize,
    /// Rounds without a new lowest violation count before the cubes grow.
    pub max_stalled_rounds: usize,
    /// Cube enlargements before giving up.
    pub max_escalations: usize,
}

impl Default for EmbedOptions {
    fn default() -> Self {
        Self {
            seed: 0x5eed_e3bd,
            slot_ratio: 4.0,
            max_rounds: 200,
            max_stalled_rounds: 8,
            max_escalations: 10,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Layout {
    Layered,
    Scattered {
        /// Slots per axis in the largest layer cube.
        max_grid_side: usize,
        escalations: usize,
        repair_rounds: usize,
        vertices_moved: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThickEmbedding {
    pub embedding: EmbeddedComplex,
    pub layout: Layout,
    /// Coordinates the construction uses; the rest are zero.
    pub required_dimension: usize,
}

/// Thickness-1 embedding in `R^n`; see [`thick_embed_detailed`].
pub fn thick_embed(g: &Graph, n: usize, base_cycles: &[Vec<usize>]) -> Result<EmbeddedComplex, EmbedError> {
    thick_embed_detailed(g, n, base_cycles, &EmbedOptions::default()).map(|t| t.embedding)
}

pub fn thick_embed_detailed(
    g: &Graph,
    n: usize,
    base_cycles: &[Vec<usize>],
    options: &EmbedOptions,
) -> Result<ThickEmbedding, EmbedError> {
    if !g.is_connected() {
        return Err(EmbedError::Disconnected);
    }
    let nc = base_cycles.len();
    if n < 2 || n < 2 * nc {
        return Err(EmbedError::InsufficientDimension {
            required: (2 * nc).max(2),
            available: n,
        });
    }
    if !(options.slot_ratio >= 1.0) {
        return Err(EmbedError::InvalidInput(format!(
            "slot ratio must be at least 1, got {}",
            options.slot_ratio
        )));
    }
    let base = base_positions(g, base_cycles)?;
    let plan = Plan::new(g, base, nc);

    let q = plan.layered();
    let used: Vec<usize> = (0..q[0].len()).filter(|&k| q.iter().any(|p| p[k] != 0.0)).collect();
    if used.len() <= n {
        let coords = q
            .iter()
            .map(|p| {
                let mut x: Vec<f64> = used.iter().map(|&k| p[k]).collect();
                x.resize(n, 0.0);
                x
            })
            .collect();
        let e = EmbeddedComplex::new(g.clone(), coords, n, 1.0)?;
        if verify_thickness(&e, 1.0).thick {
            return Ok(ThickEmbedding {
                embedding: e,
                layout: Layout::Layered,
                required_dimension: used.len().max(1),
            });
        }
    }

    let required = 2 * nc + 3;
    if n < required {
        return Err(EmbedError::InsufficientDimension { required, available: n });
    }
    plan.scattered(g, n, options)
}

fn validate_cycle(g: &Graph, c: &[usize]) -> Result<(), EmbedError> {
    if c.len() < 3 {
        return Err(EmbedError::InvalidBaseCycle(format!("{c:?} has fewer than 3 vertices")));
    }
    let mut sorted = c.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(EmbedError::InvalidBaseCycle(format!("{c:?} repeats a vertex")));
    }
    if let Some(&v) = c.iter().find(|&&v| v >= g.vertex_count()) {
        return Err(EmbedError::InvalidBaseCycle(format!("vertex {v} out of range")));
    }
    for i in 0..c.len() {
        let (a, b) = (c[i], c[(i + 1) % c.len()]);
        if !g.has_edge(a, b) {
            return Err(EmbedError::InvalidBaseCycle(format!(
                "{c:?}: consecutive vertices {a}, {b} are not adjacent"
            )));
        }
    }
    Ok(())
}

/// Circle whose consecutive chords have length about `SPACING` (exactly
/// `TRIANGLE_SIDE` for triangles).
fn circle_radius(len: usize) -> f64 {
    if len == 3 {
        TRIANGLE_SIDE / 3f64.sqrt()
    } else {
        len as f64 * SPACING / (2.0 * std::f64::consts::PI)
    }
}

/// Positions of base-cycle vertices in the `2·cycles` base coordinates.
/// Cycles must be pairwise disjoint, or all share exactly one vertex, which
/// is then placed at the origin.
fn base_positions(g: &Graph, cycles: &[Vec<usize>]) -> Result<Vec<Option<Vec<f64>>>, EmbedError> {
    for c in cycles {
        validate_cycle(g, c)?;
    }
    let nv = g.vertex_count();
    let nc = cycles.len();
    let bad = || {
        EmbedError::InvalidBaseCycle("base cycles must be pairwise disjoint or share exactly one common vertex".into())
    };
    let shared = if nc >= 2 {
        let mut owner = vec![usize::MAX; nv];
        let mut disjoint = true;
        for (j, c) in cycles.iter().enumerate() {
            for &v in c {
                if owner[v] != usize::MAX && owner[v] != j {
                    disjoint = false;
                }
                owner[v] = j;
            }
        }
        let common: Vec<usize> = cycles[0]
            .iter()
            .copied()
            .filter(|v| cycles[1..].iter().all(|c| c.contains(v)))
            .collect();
        match (disjoint, common.as_slice()) {
            (true, _) => None,
            (false, [b]) => {
                let one_each = cycles.iter().enumerate().all(|(i, ci)| {
                    cycles[i + 1..]
                        .iter()
                        .all(|cj| ci.iter().filter(|v| cj.contains(v)).count() == 1)
                });
                if !one_each {
                    return Err(bad());
                }
                Some(*b)
            }
            _ => return Err(bad()),
        }
    } else {
        None
    };

    let mut pos: Vec<Option<Vec<f64>>> = vec![None; nv];
    for (j, c) in cycles.iter().enumerate() {
        let r = circle_radius(c.len());
        let start = shared.and_then(|b| c.iter().position(|&v| v == b)).unwrap_or(0);
        let offset = if shared.is_some() { r } else { 0.0 };
        for k in 0..c.len() {
            let v = c[(start + k) % c.len()];
            let theta = 2.0 * std::f64::consts::PI * k as f64 / c.len() as f64;
            let p = pos[v].get_or_insert_with(|| vec![0.0; 2 * nc]);
            p[2 * j] = r * theta.cos() - offset;
            p[2 * j + 1] = r * theta.sin();
        }
    }
    if nc == 0 {
        pos[0] = Some(Vec::new());
    }
    Ok(pos)
}

/// Breadth-first layering from the base vertices.
struct Plan {
    /// Base coordinates of every vertex (those of its root).
    base: Vec<Vec<f64>>,
    is_base: Vec<bool>,
    /// Layer of every vertex; base vertices are layer 0.
    layer: Vec<usize>,
    root: Vec<usize>,
    /// Vertices of each layer `>= 1`, indexed by `layer - 1`.
    layers: Vec<Vec<usize>>,
    base_dims: usize,
}

impl Plan {
    fn new(g: &Graph, base: Vec<Option<Vec<f64>>>, nc: usize) -> Self {
        let nv = g.vertex_count();
        let sources: Vec<usize> = (0..nv).filter(|&v| base[v].is_some()).collect();
        let bfs = g.bfs(&sources);
        let mut layer = vec![0; nv];
        let mut root = vec![0; nv];
        let mut layers: Vec<Vec<usize>> = Vec::new();
        for (v, info) in bfs.iter().enumerate() {
            let (l, r) = info.expect("connected graph");
            layer[v] = l;
            root[v] = r;
            if l > 0 {
                if layers.len() < l {
                    layers.resize(l, Vec::new());
                }
                layers[l - 1].push(v);
            }
        }
        let is_base: Vec<bool> = base.iter().map(Option::is_some).collect();
        let base = (0..nv)
            .map(|v| base[root[v]].clone().expect("roots are base vertices"))
            .collect();
        Self {
            base,
            is_base,
            layer,
            root,
            layers,
            base_dims: 2 * nc,
        }
    }

    fn point(&self, v: usize, n: usize, slot: &[i64], side: usize) -> Vec<f64> {
        let mut p = self.base[v].clone();
        p.resize(n, 0.0);
        if self.layer[v] > 0 {
            p[self.base_dims] = SPACING * self.layer[v] as f64;
            let centre = (side as f64 - 1.0) / 2.0;
            for (k, &s) in slot.iter().enumerate() {
                p[self.base_dims + 1 + k] = SPACING * (s as f64 - centre);
            }
        }
        p
    }

    /// Square packing per (root, layer) group in two grid axes.
    fn layered(&self) -> Vec<Vec<f64>> {
        let n = self.base_dims + 3;
        let nv = self.base.len();
        let mut groups: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for v in 0..nv {
            if self.layer[v] > 0 {
                groups.entry((self.root[v], self.layer[v])).or_default().push(v);
            }
        }
        let mut out: Vec<Vec<f64>> = (0..nv).map(|v| self.point(v, n, &[], 1)).collect();
        for members in groups.values() {
            let side = (members.len() as f64).sqrt().ceil() as usize;
            for (i, &v) in members.iter().enumerate() {
                let slot = [(i % side) as i64, (i / side) as i64];
                out[v] = self.point(v, n, &slot, side);
            }
        }
        out
    }

    /// Random slots in per-layer cubes over all residual axes, repaired
    /// until the thickness scan is clean.
    fn scattered(&self, g: &Graph, n: usize, options: &EmbedOptions) -> Result<ThickEmbedding, EmbedError> {
        let axes = n - self.base_dims - 1;
        let nv = self.base.len();
        let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
        let mut ratio = options.slot_ratio;
        let mut total_rounds = 0;
        let mut moved = 0;
        for escalation in 0..=options.max_escalations {
            let sides: Vec<usize> = self
                .layers
                .iter()
                .map(|l| ((ratio * l.len() as f64).powf(1.0 / axes as f64).ceil() as usize).max(2))
                .collect();
            let mut taken: Vec<HashSet<Vec<i64>>> = vec![HashSet::new(); self.layers.len()];
            let mut slots: Vec<Vec<i64>> = vec![Vec::new(); nv];
            let draw = |v: usize, taken: &mut [HashSet<Vec<i64>>], rng: &mut ChaCha8Rng| -> Vec<i64> {
                let l = self.layer[v] - 1;
                loop {
                    let s: Vec<i64> = (0..axes).map(|_| rng.random_range(0..sides[l] as i64)).collect();
                    if taken[l].insert(s.clone()) {
                        return s;
                    }
                }
            };
            for v in 0..nv {
                if self.layer[v] > 0 {
                    slots[v] = draw(v, &mut taken, &mut rng);
                }
            }
            let place = |v: usize, slots: &[Vec<i64>]| -> Vec<f64> {
                let side = if self.layer[v] > 0 { sides[self.layer[v] - 1] } else { 1 };
                self.point(v, n, &slots[v], side)
            };
            let mut coords: Vec<Vec<f64>> = (0..nv).map(|v| place(v, &slots)).collect();

            // After the first full scan, every new violation involves a
            // moved vertex: each earlier violation had one of its vertices
            // moved.
            let mut violations = scan(&EmbeddedComplex::new(g.clone(), coords.clone(), n, 1.0)?, 1.0).violations;
            if escalation < options.max_escalations && violations.len() > (g.edges().len() / 8).max(16) {
                ratio *= 4.0;
                continue;
            }
            let mut best = usize::MAX;
            let mut stalled = 0;
            for _ in 0..options.max_rounds {
                if violations.is_empty() {
                    let e = EmbeddedComplex::new(g.clone(), coords.clone(), n, 1.0)?;
                    if !scan(&e, 1.0).violations.is_empty() {
                        return Err(EmbedError::Construction("incremental repair missed a violation".into()));
                    }
                    return Ok(ThickEmbedding {
                        embedding: e,
                        layout: Layout::Scattered {
                            max_grid_side: sides.iter().copied().max().unwrap_or(0),
                            escalations: escalation,
                            repair_rounds: total_rounds,
                            vertices_moved: moved,
                        },
                        required_dimension: n,
                    });
                }
                total_rounds += 1;
                if violations.len() < best {
                    best = violations.len();
                    stalled = 0;
                } else {
                    stalled += 1;
                    if stalled >= options.max_stalled_rounds {
                        break;
                    }
                }
                let mut to_move: Vec<usize> = Vec::new();
                for w in &violations {
                    let movable: Vec<usize> = w.vertices().into_iter().filter(|&v| !self.is_base[v]).collect();
                    if movable.is_empty() {
                        return Err(EmbedError::Construction(format!(
                            "base-cycle layout is not thick and cannot be repaired: {w:?}"
                        )));
                    }
                    if !movable.iter().any(|v| to_move.contains(v)) {
                        to_move.push(movable[rng.random_range(0..movable.len())]);
                    }
                }
                for &v in &to_move {
                    let l = self.layer[v] - 1;
                    let old = std::mem::take(&mut slots[v]);
                    slots[v] = draw(v, &mut taken, &mut rng);
                    taken[l].remove(&old);
                    coords[v] = place(v, &slots);
                }
                moved += to_move.len();
                let e = EmbeddedComplex::new(g.clone(), coords.clone(), n, 1.0)?;
                violations = scan_near(&e, 1.0, &to_move);
            }
            ratio *= 4.0;
        }
        Err(EmbedError::Construction(format!(
            "no thick placement found after {} enlargements",
            options.max_escalations
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_is_collinear_at_spacing() {
        let e = thick_embed(&Graph::path(6), 3, &[]).unwrap();
        for (i, p) in e.coords().iter().enumerate() {
            assert_eq!(p, &vec![SPACING * i as f64, 0.0, 0.0]);
        }
    }

    #[test]
    fn cycle_on_circle() {
        let g = Graph::cycle(12);
        let cyc: Vec<usize> = (0..12).collect();
        let t = thick_embed_detailed(&g, 3, &[cyc], &EmbedOptions::default()).unwrap();
        assert_eq!(t.layout, Layout::Layered);
        let r = circle_radius(12);
        assert!((2.0 * std::f64::consts::PI * r - 30.0).abs() < 1e-12);
        for p in t.embedding.coords() {
            assert!(((p[0] * p[0] + p[1] * p[1]).sqrt() - r).abs() < 1e-12);
        }
    }

    #[test]
    fn triangle_base_cycle() {
        let e = thick_embed(&Graph::cycle(3), 2, &[vec![0, 1, 2]]).unwrap();
        assert!(verify_thickness(&e, 1.0).thick);
    }

    #[test]
    fn dense_graph_is_scattered_and_thick() {
        let g = Graph::random_bounded_degree(150, 5, 150, 11);
        let t = thick_embed_detailed(&g, 7, &[], &EmbedOptions::default()).unwrap();
        assert!(matches!(t.layout, Layout::Scattered { .. }));
        assert!(verify_thickness(&t.embedding, 1.0).thick);
        let again = thick_embed_detailed(&g, 7, &[], &EmbedOptions::default()).unwrap();
        assert_eq!(t, again);
    }

    #[test]
    fn errors() {
        let g = Graph::new(3, &[(0, 1)]).unwrap();
        assert!(matches!(thick_embed(&g, 3, &[]), Err(EmbedError::Disconnected)));
        let c = Graph::cycle(5);
        assert!(matches!(
            thick_embed(&c, 3, &[vec![0, 2, 4]]),
            Err(EmbedError::InvalidBaseCycle(_))
        ));
        let (b, cycles) = Graph::bouquet(&[4, 4, 4]);
        assert!(matches!(
            thick_embed(&b, 5, &cycles),
            Err(EmbedError::InsufficientDimension { required: 6, .. })
        ));
        let dense = Graph::random_bounded_degree(60, 5, 60, 2);
        assert!(matches!(
            thick_embed(&dense, 2, &[]),
            Err(EmbedError::InsufficientDimension { required: 3, .. })
        ));
    }
}
