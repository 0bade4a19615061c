use serde::{Deserialize, Serialize};

use super::{EmbedError, Graph};

/// A graph with straight-line vertex positions in `R^n` and a thickness
/// parameter `T`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmbeddedComplex {
    graph: Graph,
    coords: Vec<Vec<f64>>,
    ambient_dim: usize,
    thickness: f64,
}

impl EmbeddedComplex {
    /// Rejects `n < 2`, non-positive `T`, non-finite or mis-sized coordinates
    /// and zero-length edges.
    pub fn new(graph: Graph, coords: Vec<Vec<f64>>, ambient_dim: usize, thickness: f64) -> Result<Self, EmbedError> {
        if ambient_dim < 2 {
            return Err(EmbedError::InvalidEmbedding(format!(
                "ambient dimension must be at least 2, got {ambient_dim}"
            )));
        }
        if !(thickness > 0.0 && thickness.is_finite()) {
            return Err(EmbedError::InvalidEmbedding(format!(
                "thickness must be positive, got {thickness}"
            )));
        }
        if coords.len() != graph.vertex_count() {
            return Err(EmbedError::InvalidEmbedding(format!(
                "{} positions for {} vertices",
                coords.len(),
                graph.vertex_count()
            )));
        }
        for (v, c) in coords.iter().enumerate() {
            if c.len() != ambient_dim {
                return Err(EmbedError::InvalidEmbedding(format!(
                    "vertex {v} has {} coordinates, expected {ambient_dim}",
                    c.len()
                )));
            }
            if c.iter().any(|x| !x.is_finite()) {
                return Err(EmbedError::InvalidEmbedding(format!("vertex {v} has non-finite coordinates")));
            }
        }
        if let Some(&[a, b]) = graph.edges().iter().find(|&&[a, b]| coords[a] == coords[b]) {
            return Err(EmbedError::InvalidEmbedding(format!("edge ({a}, {b}) has zero length")));
        }
        Ok(Self {
            graph,
            coords,
            ambient_dim,
            thickness,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn coords(&self) -> &[Vec<f64>] {
        &self.coords
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn thickness(&self) -> f64 {
        self.thickness
    }

    pub fn with_thickness(mut self, t: f64) -> Result<Self, EmbedError> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(EmbedError::InvalidEmbedding(format!("thickness must be positive, got {t}")));
        }
        self.thickness = t;
        Ok(self)
    }

    /// Maximal simplices as segments: every edge, and every isolated vertex
    /// as a degenerate segment.
    pub fn pieces(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self.graph.edges().iter().map(|&[a, b]| (a, b)).collect();
        out.extend(self.graph.isolated_vertices().into_iter().map(|v| (v, v)));
        out
    }

    /// Text format: header `n T V`, then `V` coordinate lines, then one
    /// `i j` line per edge.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.ambient_dim, self.thickness, self.coords.len());
        for c in &self.coords {
            let line: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        for &[a, b] in self.graph.edges() {
            s.push_str(&format!("{a} {b}\n"));
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, EmbedError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let bad = |n: usize, m: &str| EmbedError::Parse(format!("line {n}: {m}"));
        let (hn, header) = lines.next().ok_or_else(|| EmbedError::Parse("missing `n T V` header".into()))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        if h.len() != 3 {
            return Err(bad(hn, "header must be `n T V`"));
        }
        let n: usize = h[0].parse().map_err(|_| bad(hn, "bad dimension"))?;
        let t: f64 = h[1].parse().map_err(|_| bad(hn, "bad thickness"))?;
        let v: usize = h[2].parse().map_err(|_| bad(hn, "bad vertex count"))?;
        let mut coords = Vec::with_capacity(v);
        for _ in 0..v {
            let (ln, l) = lines.next().ok_or_else(|| EmbedError::Parse(format!("expected {v} coordinate lines")))?;
            let c: Vec<f64> = l
                .split_whitespace()
                .map(str::parse)
                .collect::<Result<_, _>>()
                .map_err(|_| bad(ln, "bad coordinate"))?;
            coords.push(c);
        }
        let mut edges = Vec::new();
        for (ln, l) in lines {
            let e: Vec<usize> = l
                .split_whitespace()
                .map(str::parse)
                .collect::<Result<_, _>>()
                .map_err(|_| bad(ln, "bad edge"))?;
            if e.len() != 2 {
                return Err(bad(ln, "expected `i j`"));
            }
            edges.push((e[0], e[1]));
        }
        Self::new(Graph::new(v, &edges)?, coords, n, t)
    }
}
