use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::EmbedError;
use crate::complex::SimplicialComplex3;

/// Simple undirected graph; edges are stored as sorted pairs in
/// lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<[usize; 2]>,
}

impl Graph {
    pub fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self, EmbedError> {
        let mut set = BTreeSet::new();
        for &(a, b) in edges {
            if a >= vertex_count || b >= vertex_count {
                return Err(EmbedError::InvalidGraph(format!(
                    "edge ({a}, {b}) out of range 0..{vertex_count}"
                )));
            }
            if a == b {
                return Err(EmbedError::InvalidGraph(format!("self-loop at {a}")));
            }
            if !set.insert([a.min(b), a.max(b)]) {
                return Err(EmbedError::InvalidGraph(format!("duplicate edge ({a}, {b})")));
            }
        }
        Ok(Self {
            vertex_count,
            edges: set.into_iter().collect(),
        })
    }

    pub fn path(n: usize) -> Self {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(n, &e).expect("path")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles have at least 3 vertices");
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::new(n, &e).expect("cycle")
    }

    /// Cycles of the given lengths glued at vertex 0, with their vertex
    /// sequences (each starting at 0).
    pub fn bouquet(lengths: &[usize]) -> (Self, Vec<Vec<usize>>) {
        let mut edges = Vec::new();
        let mut cycles = Vec::new();
        let mut next = 1;
        for &l in lengths {
            assert!(l >= 3, "cycles have at least 3 vertices");
            let mut c = vec![0];
            c.extend(next..next + l - 1);
            next += l - 1;
            for i in 0..l {
                edges.push((c[i], c[(i + 1) % l]));
            }
            cycles.push(c);
        }
        (Self::new(next, &edges).expect("bouquet"), cycles)
    }

    /// Connected graph with maximum degree at most `max_degree`: a random
    /// tree grown under the degree cap, then random extra edges.
    pub fn random_bounded_degree(n: usize, max_degree: usize, extra_edges: usize, seed: u64) -> Self {
        assert!(max_degree >= 2 || n <= 2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut deg = vec![0usize; n];
        let mut set = BTreeSet::new();
        for v in 1..n {
            let open: Vec<usize> = (0..v).filter(|&u| deg[u] < max_degree).collect();
            let u = open[rng.random_range(0..open.len())];
            deg[u] += 1;
            deg[v] += 1;
            set.insert([u, v]);
        }
        let mut tries = 0;
        let mut added = 0;
        while added < extra_edges && tries < 100 * (extra_edges + 1) && n >= 2 {
            tries += 1;
            let a = rng.random_range(0..n);
            let b = rng.random_range(0..n);
            if a == b || deg[a] >= max_degree || deg[b] >= max_degree {
                continue;
            }
            if set.insert([a.min(b), a.max(b)]) {
                deg[a] += 1;
                deg[b] += 1;
                added += 1;
            }
        }
        Self {
            vertex_count: n,
            edges: set.into_iter().collect(),
        }
    }

    /// 1-skeleton of a simplicial complex.
    pub fn from_complex(k: &SimplicialComplex3) -> Self {
        Self {
            vertex_count: k.vertex_count(),
            edges: k.edges().to_vec(),
        }
    }

    /// Edge-list text: an optional `n <count>` line, then one `i j` line
    /// per edge; a third column (a weight) is ignored. Without a count line
    /// the vertex count is one more than the largest index.
    pub fn parse(text: &str) -> Result<Self, EmbedError> {
        let mut edges = Vec::new();
        let mut declared = None;
        let mut max_index = None;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |m: String| EmbedError::Parse(format!("line {}: {m}", lineno + 1));
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks[0] == "n" && toks.len() == 2 {
                declared = Some(toks[1].parse::<usize>().map_err(|e| bad(e.to_string()))?);
                continue;
            }
            if !(2..=3).contains(&toks.len()) {
                return Err(bad(format!("expected `i j`, got {line:?}")));
            }
            let a = toks[0].parse::<usize>().map_err(|e| bad(e.to_string()))?;
            let b = toks[1].parse::<usize>().map_err(|e| bad(e.to_string()))?;
            max_index = Some(max_index.unwrap_or(0).max(a).max(b));
            edges.push((a, b));
        }
        let n = declared.unwrap_or_else(|| max_index.map_or(0, |m| m + 1));
        Self::new(n, &edges)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("n {}\n", self.vertex_count);
        for &[a, b] in &self.edges {
            s.push_str(&format!("{a} {b}\n"));
        }
        s
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.binary_search(&[a.min(b), a.max(b)]).is_ok()
    }

    /// Sorted neighbour lists.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &[a, b] in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for l in &mut adj {
            l.sort_unstable();
        }
        adj
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency().iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Breadth-first distances from a set of sources, with the source each
    /// vertex was reached from. Unreached vertices get `None`.
    pub fn bfs(&self, sources: &[usize]) -> Vec<Option<(usize, usize)>> {
        let adj = self.adjacency();
        let mut out = vec![None; self.vertex_count];
        let mut queue = std::collections::VecDeque::new();
        for &s in sources {
            if out[s].is_none() {
                out[s] = Some((0, s));
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            let (d, root) = out[v].expect("queued vertices are labelled");
            for &u in &adj[v] {
                if out[u].is_none() {
                    out[u] = Some((d + 1, root));
                    queue.push_back(u);
                }
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count > 0 && self.bfs(&[0]).iter().all(Option::is_some)
    }

    /// Triangles `[a, b, c]` with `a < b < c`.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let adj = self.adjacency();
        let mut out = Vec::new();
        for &[a, b] in &self.edges {
            for &c in adj[a].iter().filter(|&&c| c > b) {
                if adj[b].binary_search(&c).is_ok() {
                    out.push([a, b, c]);
                }
            }
        }
        out
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        let adj = self.adjacency();
        (0..self.vertex_count).filter(|&v| adj[v].is_empty()).collect()
    }
}
