use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{ComplexError, SimplicialComplex3};

/// Singular set of a 3-orbifold: a graph whose edges carry local group
/// orders `≥ 2` and whose vertices have degree 1, 2 or 3.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct MarkedSingularSet {
    vertices: BTreeSet<usize>,
    edges: BTreeMap<(usize, usize), u32>,
}

impl MarkedSingularSet {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Endpoints of marked edges are marked vertices implicitly.
    pub fn new(vertices: &[usize], edges: &[(usize, usize, u32)]) -> Result<Self, ComplexError> {
        let mut vset: BTreeSet<usize> = vertices.iter().copied().collect();
        let mut emap = BTreeMap::new();
        for &(a, b, label) in edges {
            if a == b {
                return Err(ComplexError::InvalidMarking(format!("loop at vertex {a}")));
            }
            if label < 2 {
                return Err(ComplexError::InvalidMarking(format!(
                    "edge ({a}, {b}) has label {label}; local orders are at least 2"
                )));
            }
            let key = (a.min(b), a.max(b));
            if emap.insert(key, label).is_some() {
                return Err(ComplexError::InvalidMarking(format!("edge {key:?} marked twice")));
            }
            vset.insert(a);
            vset.insert(b);
        }
        let s = Self {
            vertices: vset,
            edges: emap,
        };
        let degrees = s.degrees();
        if let Some((v, d)) = degrees.iter().find(|(_, &d)| !(1..=3).contains(&d)) {
            return Err(ComplexError::InvalidMarking(format!(
                "marked vertex {v} has degree {d}; singular graphs have degrees 1 to 3"
            )));
        }
        Ok(s)
    }

    pub fn vertices(&self) -> &BTreeSet<usize> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeMap<(usize, usize), u32> {
        &self.edges
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Degree of every marked vertex in the marked graph.
    pub fn degrees(&self) -> BTreeMap<usize, usize> {
        let mut d: BTreeMap<usize, usize> = self.vertices.iter().map(|&v| (v, 0)).collect();
        for &(a, b) in self.edges.keys() {
            *d.entry(a).or_default() += 1;
            *d.entry(b).or_default() += 1;
        }
        d
    }

    /// Parses `v <index>` and `e <i> <j> <label>` lines; `#` starts a
    /// comment line.
    pub fn parse(text: &str) -> Result<Self, ComplexError> {
        let mut vs = Vec::new();
        let mut es = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |m: &str| ComplexError::Parse(format!("marking line {}: {m}", lineno + 1));
            let toks: Vec<&str> = line.split_whitespace().collect();
            let nums = |ts: &[&str]| -> Result<Vec<u64>, ComplexError> {
                ts.iter()
                    .map(|t| t.parse::<u64>().map_err(|e| bad(&e.to_string())))
                    .collect()
            };
            match (toks[0], toks.len()) {
                ("v", 2) => vs.push(nums(&toks[1..])?[0] as usize),
                ("e", 4) => {
                    let n = nums(&toks[1..])?;
                    let label = u32::try_from(n[2]).map_err(|_| bad("label too large"))?;
                    es.push((n[0] as usize, n[1] as usize, label));
                }
                _ => return Err(bad("expected `v <i>` or `e <i> <j> <label>`")),
            }
        }
        Self::new(&vs, &es)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let implied: BTreeSet<usize> = self.edges.keys().flat_map(|&(a, b)| [a, b]).collect();
        for v in self.vertices.difference(&implied) {
            s.push_str(&format!("v {v}\n"));
        }
        for (&(a, b), l) in &self.edges {
            s.push_str(&format!("e {a} {b} {l}\n"));
        }
        s
    }
}

/// Outcome of [`validate_good_triangulation`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GoodTriangulationReport {
    pub passed: bool,
    /// Marked edges that are not 1-simplices of the complex.
    pub missing_edges: Vec<(usize, usize)>,
    pub marked_vertices: usize,
    pub marked_edges: usize,
}

/// The singular graph must lie in the 1-skeleton: marked vertices are
/// vertices of `k` and marked edges are edges of `k`.
///
/// Out-of-range vertex references are structural errors; marked pairs that
/// are in range but not edges of `k` make the report fail.
pub fn validate_good_triangulation(
    k: &SimplicialComplex3,
    s: &MarkedSingularSet,
) -> Result<GoodTriangulationReport, ComplexError> {
    if let Some(&v) = s.vertices.iter().find(|&&v| v >= k.vertex_count()) {
        return Err(ComplexError::Structural(format!(
            "marked vertex {v} out of range 0..{}",
            k.vertex_count()
        )));
    }
    let missing_edges: Vec<_> = s
        .edges
        .keys()
        .copied()
        .filter(|&(a, b)| !k.has_edge(a, b))
        .collect();
    Ok(GoodTriangulationReport {
        passed: missing_edges.is_empty(),
        missing_edges,
        marked_vertices: s.vertices.len(),
        marked_edges: s.edges.len(),
    })
}
