//! Euclidean primitives in `R^n`: segment distances, triangle inradius, ball
//! volumes, uniform sampling and a bounding-volume hierarchy over segments.

use rand::Rng;
use rand_distr::StandardNormal;

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub(crate) fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Distance from `x` to the segment `[a, b]` (a point when `a = b`).
pub fn point_segment_distance(x: &[f64], a: &[f64], b: &[f64]) -> f64 {
    let mut dd = 0.0;
    let mut xd = 0.0;
    for i in 0..x.len() {
        let d = b[i] - a[i];
        dd += d * d;
        xd += (x[i] - a[i]) * d;
    }
    let t = if dd > 0.0 { (xd / dd).clamp(0.0, 1.0) } else { 0.0 };
    let mut s = 0.0;
    for i in 0..x.len() {
        let c = a[i] + t * (b[i] - a[i]);
        s += (x[i] - c) * (x[i] - c);
    }
    s.sqrt()
}

/// Distance between segments `[p1, q1]` and `[p2, q2]`, either of which may
/// be degenerate.
pub fn segment_distance(p1: &[f64], q1: &[f64], p2: &[f64], q2: &[f64]) -> f64 {
    let d1 = sub(q1, p1);
    let d2 = sub(q2, p2);
    let r = sub(p1, p2);
    let a = dot(&d1, &d1);
    let e = dot(&d2, &d2);
    let f = dot(&d2, &r);
    let (s, t);
    if a == 0.0 && e == 0.0 {
        return norm(&r);
    }
    if a == 0.0 {
        return point_segment_distance(p1, p2, q2);
    }
    let c = dot(&d1, &r);
    if e == 0.0 {
        return point_segment_distance(p2, p1, q1);
    }
    let b = dot(&d1, &d2);
    let denom = a * e - b * b;
    let s0 = if denom > 1e-14 * a * e {
        ((b * f - c * e) / denom).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let t0 = (b * s0 + f) / e;
    if t0 < 0.0 {
        t = 0.0;
        s = (-c / a).clamp(0.0, 1.0);
    } else if t0 > 1.0 {
        t = 1.0;
        s = ((b - c) / a).clamp(0.0, 1.0);
    } else {
        t = t0;
        s = s0;
    }
    let mut sum = 0.0;
    for i in 0..p1.len() {
        let x = p1[i] + s * d1[i] - p2[i] - t * d2[i];
        sum += x * x;
    }
    // Nearly parallel pairs: the clamped solution above is exact up to
    // rounding, but endpoint distances guard against cancellation.
    let cand = sum.sqrt();
    if denom <= 1e-14 * a * e {
        cand.min(point_segment_distance(p1, p2, q2))
            .min(point_segment_distance(q1, p2, q2))
            .min(point_segment_distance(p2, p1, q1))
            .min(point_segment_distance(q2, p1, q1))
    } else {
        cand
    }
}

/// Inradius of the triangle `abc` in `R^n`; zero when degenerate.
pub fn triangle_inradius(a: &[f64], b: &[f64], c: &[f64]) -> f64 {
    let mut s = [dist(b, c), dist(a, c), dist(a, b)];
    s.sort_by(|x, y| y.total_cmp(x));
    let [x, y, z] = s;
    // Kahan's ordering for Heron's formula.
    let p = (x + (y + z)) * (z - (x - y)) * (z + (x - y)) * (x + (y - z));
    let area = 0.25 * p.max(0.0).sqrt();
    let semi = 0.5 * (x + y + z);
    if semi > 0.0 {
        area / semi
    } else {
        0.0
    }
}

/// Volume of the unit ball in `R^k`.
pub fn unit_ball_volume(k: usize) -> f64 {
    let mut v = [1.0, 2.0];
    for j in 2..=k {
        let next = v[0] * 2.0 * std::f64::consts::PI / j as f64;
        v = [v[1], next];
    }
    if k == 0 {
        1.0
    } else {
        v[1]
    }
}

/// Volume of the `T`-neighbourhood of a segment of length `len` in `R^n`.
pub fn capsule_volume(n: usize, t: f64, len: f64) -> f64 {
    unit_ball_volume(n - 1) * t.powi(n as i32 - 1) * len + unit_ball_volume(n) * t.powi(n as i32)
}

pub(crate) fn gaussian_vec<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect()
}

/// Uniform point of the ball of radius `r` about the origin of `R^n`.
pub(crate) fn uniform_in_ball<R: Rng + ?Sized>(rng: &mut R, n: usize, r: f64) -> Vec<f64> {
    loop {
        let g = gaussian_vec(rng, n);
        let len = norm(&g);
        if len > 0.0 {
            let rad = r * rng.random::<f64>().powf(1.0 / n as f64);
            return g.iter().map(|x| x * rad / len).collect();
        }
    }
}

/// Uniform point of the `(n-1)`-ball of radius `r` about the origin in the
/// hyperplane orthogonal to the unit vector `u`.
pub(crate) fn uniform_in_orthogonal_ball<R: Rng + ?Sized>(rng: &mut R, u: &[f64], r: f64) -> Vec<f64> {
    let n = u.len();
    loop {
        let mut g = gaussian_vec(rng, n);
        let p = dot(&g, u);
        for (x, ui) in g.iter_mut().zip(u) {
            *x -= p * ui;
        }
        let len = norm(&g);
        if len > 1e-12 {
            let rad = r * rng.random::<f64>().powf(1.0 / (n - 1) as f64);
            return g.iter().map(|x| x * rad / len).collect();
        }
    }
}

/// Bounding-volume hierarchy over segments in `R^n`. Each segment is cut
/// into chunks of length at most `chunk`, and each chunk is stored as its
/// bounding box inflated by `pad`. Two segments within `2·pad` of each other
/// have overlapping chunk boxes, and a point within `pad` of a segment lies
/// in one of its chunk boxes.
pub(crate) struct SegmentIndex {
    dim: usize,
    owner: Vec<u32>,
    lo: Vec<f64>,
    hi: Vec<f64>,
    nodes: Vec<Node>,
}

#[derive(Clone, Copy)]
struct Node {
    /// Chunk range for leaves; child indices for inner nodes.
    a: u32,
    b: u32,
    leaf: bool,
}

const LEAF_SIZE: usize = 8;

impl SegmentIndex {
    /// `segments[i] = (p, q)` indexes into `coords`; `p == q` is a point.
    pub(crate) fn new(coords: &[Vec<f64>], segments: &[(usize, usize)], pad: f64, chunk: f64) -> Self {
        let dim = coords.first().map_or(0, Vec::len);
        let mut owner = Vec::new();
        let mut lo = Vec::new();
        let mut hi = Vec::new();
        for (id, &(a, b)) in segments.iter().enumerate() {
            let (pa, pb) = (&coords[a], &coords[b]);
            let k = ((dist(pa, pb) / chunk).ceil() as usize).max(1);
            for j in 0..k {
                let (s0, s1) = (j as f64 / k as f64, (j + 1) as f64 / k as f64);
                for i in 0..dim {
                    let x0 = pa[i] + s0 * (pb[i] - pa[i]);
                    let x1 = pa[i] + s1 * (pb[i] - pa[i]);
                    lo.push(x0.min(x1) - pad);
                    hi.push(x0.max(x1) + pad);
                }
                owner.push(id as u32);
            }
        }
        let mut index = Self {
            dim,
            owner,
            lo,
            hi,
            nodes: Vec::new(),
        };
        index.build();
        index
    }

    fn chunk_count(&self) -> usize {
        self.owner.len()
    }

    /// Reorders chunks in place into a hierarchy; node boxes are appended
    /// after the chunk boxes.
    fn build(&mut self) {
        let n = self.chunk_count();
        if n == 0 {
            return;
        }
        let d = self.dim;
        let mut order: Vec<usize> = (0..n).collect();
        let centre = |lo: &[f64], hi: &[f64], c: usize, i: usize| 0.5 * (lo[c * d + i] + hi[c * d + i]);
        let mut nodes = Vec::new();
        let mut boxes: Vec<(Vec<f64>, Vec<f64>)> = Vec::new();
        // (node index, start, end)
        let mut stack = vec![(0usize, 0usize, n)];
        nodes.push(Node { a: 0, b: 0, leaf: true });
        boxes.push((Vec::new(), Vec::new()));
        while let Some((node, start, end)) = stack.pop() {
            let mut blo = vec![f64::INFINITY; d];
            let mut bhi = vec![f64::NEG_INFINITY; d];
            let mut clo = vec![f64::INFINITY; d];
            let mut chi = vec![f64::NEG_INFINITY; d];
            for &c in &order[start..end] {
                for i in 0..d {
                    blo[i] = blo[i].min(self.lo[c * d + i]);
                    bhi[i] = bhi[i].max(self.hi[c * d + i]);
                    let m = centre(&self.lo, &self.hi, c, i);
                    clo[i] = clo[i].min(m);
                    chi[i] = chi[i].max(m);
                }
            }
            boxes[node] = (blo, bhi);
            if end - start <= LEAF_SIZE {
                nodes[node] = Node {
                    a: start as u32,
                    b: end as u32,
                    leaf: true,
                };
                continue;
            }
            let axis = (0..d)
                .max_by(|&i, &j| (chi[i] - clo[i]).total_cmp(&(chi[j] - clo[j])))
                .unwrap_or(0);
            let mid = (start + end) / 2;
            let (lo, hi) = (&self.lo, &self.hi);
            order[start..end].select_nth_unstable_by(mid - start, |&x, &y| {
                centre(lo, hi, x, axis).total_cmp(&centre(lo, hi, y, axis))
            });
            let left = nodes.len();
            nodes.push(Node { a: 0, b: 0, leaf: true });
            boxes.push((Vec::new(), Vec::new()));
            nodes.push(Node { a: 0, b: 0, leaf: true });
            boxes.push((Vec::new(), Vec::new()));
            nodes[node] = Node {
                a: left as u32,
                b: left as u32 + 1,
                leaf: false,
            };
            stack.push((left, start, mid));
            stack.push((left + 1, mid, end));
        }
        let mut lo = Vec::with_capacity((n + boxes.len()) * d);
        let mut hi = Vec::with_capacity((n + boxes.len()) * d);
        let mut owner = Vec::with_capacity(n);
        for &c in &order {
            lo.extend_from_slice(&self.lo[c * d..(c + 1) * d]);
            hi.extend_from_slice(&self.hi[c * d..(c + 1) * d]);
            owner.push(self.owner[c]);
        }
        for (blo, bhi) in &boxes {
            lo.extend_from_slice(blo);
            hi.extend_from_slice(bhi);
        }
        self.lo = lo;
        self.hi = hi;
        self.owner = owner;
        self.nodes = nodes;
    }

    fn overlaps(&self, k: usize, lo: &[f64], hi: &[f64]) -> bool {
        let d = self.dim;
        (0..d).all(|i| self.lo[k * d + i] <= hi[i] && lo[i] <= self.hi[k * d + i])
    }

    /// Calls `f` with the owning segment of every chunk whose box meets the
    /// box `[lo, hi]`; a segment may be reported more than once.
    fn visit(&self, lo: &[f64], hi: &[f64], mut f: impl FnMut(u32)) {
        if self.nodes.is_empty() {
            return;
        }
        let base = self.chunk_count();
        let mut stack = vec![0usize];
        while let Some(node) = stack.pop() {
            if !self.overlaps(base + node, lo, hi) {
                continue;
            }
            let nd = self.nodes[node];
            if nd.leaf {
                for c in nd.a as usize..nd.b as usize {
                    if self.overlaps(c, lo, hi) {
                        f(self.owner[c]);
                    }
                }
            } else {
                stack.push(nd.a as usize);
                stack.push(nd.b as usize);
            }
        }
    }

    /// Distinct segments with a chunk box containing `x`, sorted.
    pub(crate) fn candidates(&self, x: &[f64]) -> Vec<u32> {
        let mut out = Vec::new();
        self.visit(x, x, |s| out.push(s));
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Distinct pairs `(i, j)`, `i < j`, of segments with overlapping chunk
    /// boxes, sorted.
    pub(crate) fn pairs(&self) -> Vec<(u32, u32)> {
        use rayon::prelude::*;
        let d = self.dim;
        let mut out: Vec<(u32, u32)> = (0..self.chunk_count())
            .into_par_iter()
            .flat_map_iter(|c| {
                let me = self.owner[c];
                let mut v = Vec::new();
                self.visit(&self.lo[c * d..(c + 1) * d], &self.hi[c * d..(c + 1) * d], |s| {
                    if s > me {
                        v.push((me, s));
                    }
                });
                v.sort_unstable();
                v.dedup();
                v
            })
            .collect();
        out.par_sort_unstable();
        out.dedup();
        out
    }

    /// Like [`Self::pairs`], restricted to pairs with at least one segment
    /// flagged in `touched`.
    pub(crate) fn pairs_touching(&self, touched: &[bool]) -> Vec<(u32, u32)> {
        use rayon::prelude::*;
        let d = self.dim;
        let mut out: Vec<(u32, u32)> = (0..self.chunk_count())
            .into_par_iter()
            .filter(|&c| touched[self.owner[c] as usize])
            .flat_map_iter(|c| {
                let me = self.owner[c];
                let mut v = Vec::new();
                self.visit(&self.lo[c * d..(c + 1) * d], &self.hi[c * d..(c + 1) * d], |s| {
                    if s != me {
                        v.push((me.min(s), me.max(s)));
                    }
                });
                v
            })
            .collect();
        out.par_sort_unstable();
        out.dedup();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_volumes() {
        use std::f64::consts::PI;
        assert_eq!(unit_ball_volume(1), 2.0);
        assert!((unit_ball_volume(2) - PI).abs() < 1e-15);
        assert!((unit_ball_volume(3) - 4.0 / 3.0 * PI).abs() < 1e-14);
        assert!((unit_ball_volume(4) - PI * PI / 2.0).abs() < 1e-14);
        assert!((capsule_volume(3, 1.0, 1.0) - 7.0 * PI / 3.0).abs() < 1e-14);
    }

    #[test]
    fn segment_distances() {
        let d = segment_distance(&[0.0, 0.0], &[1.0, 0.0], &[0.0, 3.0], &[1.0, 3.0]);
        assert!((d - 3.0).abs() < 1e-15);
        let d = segment_distance(&[0.0, 0.0, 0.0], &[1.0, 0.0, 0.0], &[0.5, -1.0, 2.0], &[0.5, 1.0, 2.0]);
        assert!((d - 2.0).abs() < 1e-15);
        let d = segment_distance(&[0.0, 0.0], &[1.0, 0.0], &[3.0, 0.0], &[4.0, 0.0]);
        assert!((d - 2.0).abs() < 1e-15);
        let d = segment_distance(&[0.0, 0.0], &[0.0, 0.0], &[2.0, -1.0], &[2.0, 1.0]);
        assert!((d - 2.0).abs() < 1e-15);
        let d = segment_distance(&[0.0, 0.0], &[2.0, 2.0], &[0.0, 2.0], &[2.0, 0.0]);
        assert_eq!(d, 0.0);
    }

    #[test]
    fn inradius() {
        let r = triangle_inradius(&[0.0, 0.0], &[3.0, 0.0], &[0.0, 4.0]);
        assert!((r - 1.0).abs() < 1e-15);
        assert_eq!(triangle_inradius(&[0.0], &[1.0], &[2.0]), 0.0);
    }

    #[test]
    fn index_finds_every_close_pair() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let coords: Vec<Vec<f64>> = (0..120).map(|_| (0..5).map(|_| rng.random_range(0.0..12.0)).collect()).collect();
        let segs: Vec<(usize, usize)> = (0..60).map(|i| (2 * i, 2 * i + 1)).chain((0..10).map(|i| (i, i))).collect();
        let idx = SegmentIndex::new(&coords, &segs, 1.0, 2.0);
        let pairs = idx.pairs();
        for i in 0..segs.len() {
            for j in i + 1..segs.len() {
                let (a, b) = segs[i];
                let (c, e) = segs[j];
                if segment_distance(&coords[a], &coords[b], &coords[c], &coords[e]) <= 2.0 {
                    assert!(pairs.binary_search(&(i as u32, j as u32)).is_ok(), "missed ({i}, {j})");
                }
            }
        }
        for _ in 0..500 {
            let x: Vec<f64> = (0..5).map(|_| rng.random_range(0.0..12.0)).collect();
            let cand = idx.candidates(&x);
            for (i, &(a, b)) in segs.iter().enumerate() {
                if point_segment_distance(&x, &coords[a], &coords[b]) <= 1.0 {
                    assert!(cand.contains(&(i as u32)));
                }
            }
        }
    }
}
