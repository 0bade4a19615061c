use orbibound::embed::EmbeddedComplex;

fn lerp(a: &[f64], b: &[f64], s: f64) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + s * (y - x)).collect()
}

fn d2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Closest parameter on segment `ab` to `p`.
fn project(p: &[f64], a: &[f64], b: &[f64]) -> f64 {
    let ab: f64 = d2(a, b);
    if ab == 0.0 {
        return 0.0;
    }
    let t: f64 = p.iter().zip(a).zip(b).map(|((p, a), b)| (p - a) * (b - a)).sum::<f64>() / ab;
    t.clamp(0.0, 1.0)
}

/// Segment distance by alternating exact minimisation of the convex
/// squared distance, started from every corner of the parameter square.
pub fn segment_distance(a: &[f64], b: &[f64], c: &[f64], d: &[f64]) -> f64 {
    let mut best = f64::INFINITY;
    for (mut s, mut t) in [(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0), (0.5, 0.5)] {
        for _ in 0..2000 {
            t = project(&lerp(a, b, s), c, d);
            s = project(&lerp(c, d, t), a, b);
        }
        best = best.min(d2(&lerp(a, b, s), &lerp(c, d, t)).sqrt());
    }
    best
}

/// Inradius from Heron's formula.
pub fn inradius(a: &[f64], b: &[f64], c: &[f64]) -> f64 {
    let (x, y, z) = (d2(a, b).sqrt(), d2(b, c).sqrt(), d2(a, c).sqrt());
    let s = (x + y + z) / 2.0;
    let area = (s * (s - x) * (s - y) * (s - z)).max(0.0).sqrt();
    area / s
}

/// All-pairs thickness check: disjoint simplices more than `2t` apart and
/// graph triangles with inradius above `t`.
pub fn brute_force_thick(e: &EmbeddedComplex, t: f64) -> bool {
    let p = e.coords();
    let g = e.graph();
    let mut items: Vec<(usize, usize)> = (0..g.vertex_count()).map(|v| (v, v)).collect();
    items.extend(g.edges().iter().map(|&[a, b]| (a, b)));
    for i in 0..items.len() {
        for j in i + 1..items.len() {
            let (a, b) = items[i];
            let (c, d) = items[j];
            if a == c || a == d || b == c || b == d {
                continue;
            }
            if segment_distance(&p[a], &p[b], &p[c], &p[d]) <= 2.0 * t {
                return false;
            }
        }
    }
    g.triangles().iter().all(|&[a, b, c]| inradius(&p[a], &p[b], &p[c]) > t)
}
