mod common;

use std::f64::consts::PI;

use common::embedding::{brute_force_thick, segment_distance};
use orbibound::embed::{
    fiber_complexity, gromov_guth_evaluate, slice_search_with, thick_embed, thick_embed_detailed, tube_volume,
    tube_volume_with, verify_thickness, EmbedOptions, EmbeddedComplex, Graph, Layout, TubeMethod,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn axis(n: usize, i: usize) -> Vec<f64> {
    let mut u = vec![0.0; n];
    u[i] = 1.0;
    u
}

fn spaced_balls(k: usize, gap: f64) -> EmbeddedComplex {
    let pts = (0..k).map(|i| vec![gap * i as f64, 0.0, 0.0]).collect();
    EmbeddedComplex::new(Graph::new(k, &[]).unwrap(), pts, 3, 1.0).unwrap()
}

#[test]
fn path_tube_is_one_capsule() {
    for k in [2, 5, 12] {
        let e = thick_embed(&Graph::path(k), 3, &[]).unwrap();
        let len = 2.5 * (k - 1) as f64;
        let exact = PI * len + 4.0 * PI / 3.0;
        let est = tube_volume_with(&e, 1.0, 400_000, 3, TubeMethod::BoundingBox).unwrap();
        assert!((est.value - exact).abs() < 3.0 * est.half_width, "k={k}: {est:?} vs {exact}");
    }
}

#[test]
fn cycle_layout_has_circumference_thirty_and_separated_edges() {
    let g = Graph::cycle(12);
    let e = thick_embed(&g, 3, &[(0..12).collect()]).unwrap();
    let p = e.coords();
    let perimeter: f64 = g
        .edges()
        .iter()
        .map(|&[a, b]| p[a].iter().zip(&p[b]).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt())
        .sum();
    assert!((perimeter - 30.0).abs() < 1.0, "{perimeter}");
    for (i, &[a, b]) in g.edges().iter().enumerate() {
        for &[c, d] in &g.edges()[i + 1..] {
            if a != c && a != d && b != c && b != d {
                assert!(segment_distance(&p[a], &p[b], &p[c], &p[d]) > 2.0);
            }
        }
    }
    assert!(brute_force_thick(&e, 1.0));
}

#[test]
fn bouquet_of_two_is_thick_in_five_dimensions() {
    let (g, cycles) = Graph::bouquet(&[5, 7]);
    let e = thick_embed(&g, 5, &cycles).unwrap();
    assert!(verify_thickness(&e, 1.0).thick);
    assert!(brute_force_thick(&e, 1.0));
}

#[test]
fn dense_graph_scatters_and_agrees_with_brute_force() {
    let g = Graph::random_bounded_degree(60, 5, 90, 11);
    let out = thick_embed_detailed(&g, 7, &[], &EmbedOptions::default()).unwrap();
    assert!(matches!(out.layout, Layout::Scattered { .. }) || out.layout == Layout::Layered);
    assert!(verify_thickness(&out.embedding, 1.0).thick);
    assert!(brute_force_thick(&out.embedding, 1.0));
}

#[test]
fn verifier_agrees_with_brute_force_on_random_layouts() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut seen = [0usize; 2];
    for _ in 0..200 {
        let g = Graph::random_bounded_degree(8, 3, 3, rng.random());
        let side = rng.random_range(4.0..80.0);
        let pts = (0..8).map(|_| (0..3).map(|_| rng.random_range(0.0..side)).collect()).collect();
        let e = EmbeddedComplex::new(g, pts, 3, 1.0).unwrap();
        let fast = verify_thickness(&e, 1.0).thick;
        assert_eq!(fast, brute_force_thick(&e, 1.0));
        seen[fast as usize] += 1;
    }
    assert!(seen[0] > 0 && seen[1] > 0, "{seen:?}");
}

#[test]
fn tube_of_segment_and_ball() {
    let seg = EmbeddedComplex::new(Graph::path(2), vec![vec![0.0; 3], axis(3, 0)], 3, 1.0).unwrap();
    let v = tube_volume_with(&seg, 1.0, 1_000_000, 5, TubeMethod::BoundingBox).unwrap().value;
    assert!((v / (7.0 * PI / 3.0) - 1.0).abs() < 0.02, "{v}");
    let ball = spaced_balls(1, 3.0);
    let v = tube_volume_with(&ball, 1.0, 1_000_000, 5, TubeMethod::BoundingBox).unwrap().value;
    assert!((v / (4.0 * PI / 3.0) - 1.0).abs() < 0.02, "{v}");
}

#[test]
fn tube_is_additive_over_far_pieces() {
    let k = 6;
    let mut pts = Vec::new();
    let mut edges = Vec::new();
    for i in 0..k {
        pts.push(vec![10.0 * i as f64, 0.0, 0.0]);
        pts.push(vec![10.0 * i as f64 + 2.0, 0.0, 0.0]);
        edges.push((2 * i, 2 * i + 1));
    }
    let e = EmbeddedComplex::new(Graph::new(2 * k, &edges).unwrap(), pts, 3, 1.0).unwrap();
    let one = PI * 2.0 + 4.0 * PI / 3.0;
    let v = tube_volume(&e, 1.0, 200_000, 8).unwrap().value;
    assert!((v / (k as f64 * one) - 1.0).abs() < 0.03, "{v}");
}

#[test]
fn tube_is_monotone_in_thickness() {
    let e = thick_embed(&Graph::cycle(9), 4, &[]).unwrap();
    let vols: Vec<f64> = [0.25, 0.5, 0.75, 1.0]
        .iter()
        .map(|&t| tube_volume(&e, t, 100_000, 2).unwrap().value)
        .collect();
    assert!(vols.windows(2).all(|w| w[0] < w[1]), "{vols:?}");
}

#[test]
fn slicing_balls_in_a_row() {
    let e = spaced_balls(10, 3.0);
    let x = fiber_complexity(&e, &axis(3, 0), 1.0).unwrap();
    assert_eq!(x, 1);
    assert_eq!(fiber_complexity(&e, &axis(3, 1), 1.0).unwrap(), 10);
    let r = slice_search_with(&e, 1.0, 24, 1, 4096).unwrap();
    assert!(r.max_cross_section < 1.5 * PI, "{r:?}");
    assert!((r.max_cross_section / PI - 1.0).abs() < 0.03);
    assert!(r.worst_direction_max / r.max_cross_section >= 6.0);
    assert!(r.max_cross_section <= r.worst_direction_max);
    let norm: f64 = r.direction.iter().map(|x| x * x).sum::<f64>().sqrt();
    assert!((norm - 1.0).abs() < 1e-12);
}

#[test]
fn random_segments_slice_below_volume_power() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut pts = Vec::new();
    let mut edges = Vec::new();
    for i in 0..20 {
        for _ in 0..2 {
            pts.push((0..3).map(|_| rng.random_range(0.0..20.0)).collect());
        }
        edges.push((2 * i, 2 * i + 1));
    }
    let e = EmbeddedComplex::new(Graph::new(40, &edges).unwrap(), pts, 3, 1.0).unwrap();
    let v1 = tube_volume(&e, 1.0, 200_000, 1).unwrap().value;
    let r = slice_search_with(&e, 1.0, 16, 3, 2048).unwrap();
    assert!(r.max_cross_section <= 10.0 * v1.powf(2.0 / 3.0), "{} vs {v1}", r.max_cross_section);
}

/// Largest number of projected edge intervals, widened by `t`, sharing a
/// point; checked at every interval endpoint.
fn sweep_count(e: &EmbeddedComplex, axis: usize, t: f64) -> usize {
    let p = e.coords();
    let iv: Vec<(f64, f64)> = e
        .graph()
        .edges()
        .iter()
        .map(|&[a, b]| (p[a][axis].min(p[b][axis]) - t, p[a][axis].max(p[b][axis]) + t))
        .collect();
    iv.iter()
        .flat_map(|&(lo, hi)| [lo, hi])
        .map(|c| iv.iter().filter(|&&(lo, hi)| lo <= c && c <= hi).count())
        .max()
        .unwrap_or(0)
}

#[test]
fn fiber_counts_of_path_and_cycle() {
    let k = 9;
    let e = thick_embed(&Graph::path(k), 3, &[]).unwrap();
    let along = e.coords()[1].iter().zip(&e.coords()[0]).map(|(a, b)| a - b).collect::<Vec<f64>>();
    let len = along.iter().map(|x| x * x).sum::<f64>().sqrt();
    let u: Vec<f64> = along.iter().map(|x| x / len).collect();
    assert_eq!(fiber_complexity(&e, &u, 1.0).unwrap(), 2);
    let mut w = vec![0.0; 3];
    let j = (0..3).find(|&i| u[i].abs() < 1e-12).unwrap();
    w[j] = 1.0;
    assert_eq!(fiber_complexity(&e, &w, 1.0).unwrap(), k - 1);

    let c = thick_embed(&Graph::cycle(12), 3, &[(0..12).collect()]).unwrap();
    for i in 0..3 {
        assert_eq!(fiber_complexity(&c, &axis(3, i), 1.0).unwrap(), sweep_count(&c, i, 1.0));
    }
}

#[test]
fn gromov_guth_with_measured_tube() {
    let e = thick_embed(&Graph::random_bounded_degree(40, 4, 30, 2), 7, &[]).unwrap();
    let vt = tube_volume(&e, 1.0, 100_000, 4).unwrap().value;
    let r = gromov_guth_evaluate(0.75, 10.0, 1.0, vt, 7, 1.0).unwrap();
    assert_eq!(r.rhs, vt);
    assert!((r.lhs - 7.5f64.powf(7.0 / 6.0)).abs() < 1e-12);
    assert_eq!(r.holds, r.lhs <= r.rhs);
}

#[test]
fn text_round_trip() {
    let e = thick_embed(&Graph::random_bounded_degree(25, 4, 10, 6), 7, &[]).unwrap();
    let back = EmbeddedComplex::parse(&e.to_text()).unwrap();
    assert_eq!(back, e);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn small_bounded_degree_graphs_embed_thickly(n in 3usize..24, d in 2usize..6, extra in 0usize..20, seed in any::<u64>()) {
        let g = Graph::random_bounded_degree(n, d, extra, seed);
        let e = thick_embed(&g, 7, &[]).unwrap();
        prop_assert_eq!(e.ambient_dim(), 7);
        prop_assert!(brute_force_thick(&e, 1.0));
    }

    #[test]
    fn tube_is_deterministic_and_below_capsule_sum(n in 2usize..10, seed in any::<u64>()) {
        let e = thick_embed(&Graph::path(n), 3, &[]).unwrap();
        let a = tube_volume(&e, 1.0, 5000, seed).unwrap();
        prop_assert_eq!(&a, &tube_volume(&e, 1.0, 5000, seed).unwrap());
        prop_assert!(a.value <= a.capsule_sum + 3.0 * a.half_width);
    }
}
