use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::SpectralError;

/// Undirected graph with positive edge weights and an optional positive
/// vertex measure. Without a measure, vertices are weighted by their
/// weighted degree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightedGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize, f64)>,
    vertex_measure: Option<Vec<f64>>,
}

impl WeightedGraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize, f64)>) -> Result<Self, SpectralError> {
        let mut seen = BTreeSet::new();
        for &(a, b, w) in &edges {
            if a >= vertex_count || b >= vertex_count {
                return Err(SpectralError::InvalidGraph(format!(
                    "edge ({a}, {b}) out of range 0..{vertex_count}"
                )));
            }
            if a == b {
                return Err(SpectralError::InvalidGraph(format!("self-loop at {a}")));
            }
            if !(w > 0.0 && w.is_finite()) {
                return Err(SpectralError::InvalidGraph(format!(
                    "edge ({a}, {b}) has non-positive weight {w}"
                )));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(SpectralError::InvalidGraph(format!("duplicate edge ({a}, {b})")));
            }
        }
        Ok(Self {
            vertex_count,
            edges,
            vertex_measure: None,
        })
    }

    /// Unit weights.
    pub fn unweighted(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self, SpectralError> {
        Self::new(vertex_count, edges.iter().map(|&(a, b)| (a, b, 1.0)).collect())
    }

    pub fn path(n: usize) -> Self {
        Self::unweighted(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>()).expect("path")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        Self::unweighted(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()).expect("cycle")
    }

    pub fn with_vertex_measure(mut self, m: Vec<f64>) -> Result<Self, SpectralError> {
        if m.len() != self.vertex_count {
            return Err(SpectralError::InvalidGraph(format!(
                "{} vertex weights for {} vertices",
                m.len(),
                self.vertex_count
            )));
        }
        if let Some(x) = m.iter().find(|x| !(**x > 0.0 && x.is_finite())) {
            return Err(SpectralError::InvalidGraph(format!("non-positive vertex weight {x}")));
        }
        self.vertex_measure = Some(m);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    pub fn weighted_degrees(&self) -> Vec<f64> {
        let mut d = vec![0.0; self.vertex_count];
        for &(a, b, w) in &self.edges {
            d[a] += w;
            d[b] += w;
        }
        d
    }

    /// Vertex measure `m`; the weighted degree unless set explicitly.
    pub fn measure(&self) -> Vec<f64> {
        self.vertex_measure
            .clone()
            .unwrap_or_else(|| self.weighted_degrees())
    }

    pub fn has_explicit_measure(&self) -> bool {
        self.vertex_measure.is_some()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            vertex_count: self.vertex_count,
            edges: self.edges.iter().map(|&(a, b, w)| (a, b, w * factor)).collect(),
            vertex_measure: self.vertex_measure.clone(),
        }
    }

    pub fn adjacency(&self) -> Vec<Vec<(usize, f64)>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(a, b, w) in &self.edges {
            adj[a].push((b, w));
            adj[b].push((a, w));
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return false;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(u, _) in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// Total weight of edges with exactly one endpoint in `inside`.
    pub fn boundary_weight(&self, inside: &[bool]) -> f64 {
        self.edges
            .iter()
            .filter(|&&(a, b, _)| inside[a] != inside[b])
            .map(|&(_, _, w)| w)
            .sum()
    }

    /// Edge-list text: one `i j w` line per edge. The vertex count is one
    /// more than the largest index unless a `n <count>` line is present.
    pub fn parse(text: &str) -> Result<Self, SpectralError> {
        let mut edges = Vec::new();
        let mut declared = None;
        let mut max_index = None;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |m: String| SpectralError::Parse(format!("line {}: {m}", lineno + 1));
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks[0] == "n" && toks.len() == 2 {
                declared = Some(toks[1].parse::<usize>().map_err(|e| bad(e.to_string()))?);
                continue;
            }
            if toks.len() != 3 {
                return Err(bad("expected `i j w`".into()));
            }
            let a = toks[0].parse::<usize>().map_err(|e| bad(e.to_string()))?;
            let b = toks[1].parse::<usize>().map_err(|e| bad(e.to_string()))?;
            let w = toks[2].parse::<f64>().map_err(|e| bad(e.to_string()))?;
            max_index = Some(max_index.unwrap_or(0).max(a).max(b));
            edges.push((a, b, w));
        }
        let n = declared.unwrap_or_else(|| max_index.map_or(0, |m| m + 1));
        Self::new(n, edges)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("n {}\n", self.vertex_count);
        for &(a, b, w) in &self.edges {
            s.push_str(&format!("{a} {b} {w}\n"));
        }
        s
    }
}

/// One value per non-empty line.
pub fn parse_vertex_function(text: &str) -> Result<Vec<f64>, SpectralError> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            l.parse::<f64>()
                .map_err(|e| SpectralError::Parse(format!("`{l}`: {e}")))
        })
        .collect()
}
