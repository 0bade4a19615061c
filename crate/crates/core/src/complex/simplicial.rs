use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::ComplexError;
use crate::hypgeom::HPoint;

/// A simplicial complex of dimension at most 3 on vertices `0..vertex_count`.
///
/// Every index in `0..vertex_count` is a 0-simplex. Higher simplices are
/// stored as strictly increasing index tuples in lexicographic order, and the
/// set is closed under taking faces.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimplicialComplex3 {
    vertex_count: usize,
    edges: Vec<[usize; 2]>,
    triangles: Vec<[usize; 3]>,
    tetrahedra: Vec<[usize; 4]>,
    coords: Option<Vec<HPoint>>,
}

fn sorted<const K: usize>(mut s: [usize; K]) -> [usize; K] {
    s.sort_unstable();
    s
}

fn faces<const K: usize, const J: usize>(s: &[usize; K]) -> impl Iterator<Item = [usize; J]> + '_ {
    debug_assert_eq!(J + 1, K);
    (0..K).map(move |skip| {
        let mut f = [0; J];
        let mut t = 0;
        for (i, &v) in s.iter().enumerate() {
            if i != skip {
                f[t] = v;
                t += 1;
            }
        }
        f
    })
}

impl SimplicialComplex3 {
    /// Validated constructor: simplices may be given in any vertex order but
    /// must be in range, non-degenerate, distinct and closed under faces.
    pub fn new(
        vertex_count: usize,
        edges: Vec<[usize; 2]>,
        triangles: Vec<[usize; 3]>,
        tetrahedra: Vec<[usize; 4]>,
    ) -> Result<Self, ComplexError> {
        let edges = normalize(vertex_count, edges, "edge")?;
        let triangles = normalize(vertex_count, triangles, "triangle")?;
        let tetrahedra = normalize(vertex_count, tetrahedra, "tetrahedron")?;
        let eset: BTreeSet<_> = edges.iter().copied().collect();
        let fset: BTreeSet<_> = triangles.iter().copied().collect();
        for t in &triangles {
            if let Some(f) = faces::<3, 2>(t).find(|f| !eset.contains(f)) {
                return Err(ComplexError::Structural(format!(
                    "triangle {t:?} is missing its edge {f:?}"
                )));
            }
        }
        for t in &tetrahedra {
            if let Some(f) = faces::<4, 3>(t).find(|f| !fset.contains(f)) {
                return Err(ComplexError::Structural(format!(
                    "tetrahedron {t:?} is missing its face {f:?}"
                )));
            }
        }
        Ok(Self {
            vertex_count,
            edges,
            triangles,
            tetrahedra,
            coords: None,
        })
    }

    /// Closure of a list of simplices of dimension 0 to 3.
    pub fn from_simplices(vertex_count: usize, simplices: &[Vec<usize>]) -> Result<Self, ComplexError> {
        let mut e = BTreeSet::new();
        let mut f = BTreeSet::new();
        let mut t = BTreeSet::new();
        for s in simplices {
            let mut s = s.clone();
            s.sort_unstable();
            s.dedup();
            if let Some(&v) = s.iter().find(|&&v| v >= vertex_count) {
                return Err(ComplexError::Structural(format!(
                    "vertex {v} out of range 0..{vertex_count}"
                )));
            }
            match s.len() {
                0 => return Err(ComplexError::Structural("empty simplex".into())),
                1 => {}
                2 => {
                    e.insert([s[0], s[1]]);
                }
                3 => {
                    f.insert([s[0], s[1], s[2]]);
                }
                4 => {
                    t.insert([s[0], s[1], s[2], s[3]]);
                }
                k => {
                    return Err(ComplexError::Structural(format!(
                        "simplex with {k} vertices exceeds dimension 3"
                    )))
                }
            }
        }
        for tet in &t {
            f.extend(faces::<4, 3>(tet));
        }
        for tri in &f {
            e.extend(faces::<3, 2>(tri));
        }
        Ok(Self {
            vertex_count,
            edges: e.into_iter().collect(),
            triangles: f.into_iter().collect(),
            tetrahedra: t.into_iter().collect(),
            coords: None,
        })
    }

    /// Closure of a set of tetrahedra.
    pub fn from_tetrahedra(vertex_count: usize, tets: &[[usize; 4]]) -> Result<Self, ComplexError> {
        let list: Vec<Vec<usize>> = tets.iter().map(|t| t.to_vec()).collect();
        for t in tets {
            let s = sorted(*t);
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(ComplexError::Structural(format!(
                    "tetrahedron {t:?} has a repeated vertex"
                )));
            }
        }
        Self::from_simplices(vertex_count, &list)
    }

    /// Boundary complex of the 4-simplex: a triangulated 3-sphere on five
    /// vertices.
    pub fn boundary_of_4_simplex() -> Self {
        let tets: Vec<[usize; 4]> = (0..5)
            .map(|skip| {
                let v: Vec<usize> = (0..5).filter(|&i| i != skip).collect();
                [v[0], v[1], v[2], v[3]]
            })
            .collect();
        Self::from_tetrahedra(5, &tets).expect("valid complex")
    }

    pub fn with_coords(mut self, coords: Vec<HPoint>) -> Result<Self, ComplexError> {
        if coords.len() != self.vertex_count {
            return Err(ComplexError::Structural(format!(
                "{} coordinates for {} vertices",
                coords.len(),
                self.vertex_count
            )));
        }
        self.coords = Some(coords);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn tetrahedra(&self) -> &[[usize; 4]] {
        &self.tetrahedra
    }

    pub fn coords(&self) -> Option<&[HPoint]> {
        self.coords.as_deref()
    }

    /// `(V, E, F, T)`.
    pub fn counts(&self) -> [usize; 4] {
        [
            self.vertex_count,
            self.edges.len(),
            self.triangles.len(),
            self.tetrahedra.len(),
        ]
    }

    pub fn simplex_total(&self) -> usize {
        self.counts().iter().sum()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.binary_search(&sorted([a, b])).is_ok()
    }

    /// Number of simplices of every dimension containing each vertex,
    /// the vertex itself included.
    pub fn vertex_degrees(&self) -> Vec<usize> {
        let mut deg = vec![1; self.vertex_count];
        let all = self
            .edges
            .iter()
            .flat_map(|s| s.iter())
            .chain(self.triangles.iter().flat_map(|s| s.iter()))
            .chain(self.tetrahedra.iter().flat_map(|s| s.iter()));
        for &v in all {
            deg[v] += 1;
        }
        deg
    }

    /// Sum over simplices of their vertex counts.
    pub fn vertex_incidences(&self) -> usize {
        self.vertex_count + 2 * self.edges.len() + 3 * self.triangles.len() + 4 * self.tetrahedra.len()
    }

    /// Checks the structural invariants; holds for every value built by the
    /// constructors.
    pub fn check_face_closure(&self) -> Result<(), ComplexError> {
        Self::new(
            self.vertex_count,
            self.edges.clone(),
            self.triangles.clone(),
            self.tetrahedra.clone(),
        )
        .map(|_| ())
    }
}

fn normalize<const K: usize>(
    vertex_count: usize,
    list: Vec<[usize; K]>,
    what: &str,
) -> Result<Vec<[usize; K]>, ComplexError> {
    let mut out = Vec::with_capacity(list.len());
    for s in list {
        let s = sorted(s);
        if let Some(&v) = s.iter().find(|&&v| v >= vertex_count) {
            return Err(ComplexError::Structural(format!(
                "{what} {s:?}: vertex {v} out of range 0..{vertex_count}"
            )));
        }
        if s.windows(2).any(|w| w[0] == w[1]) {
            return Err(ComplexError::Structural(format!("{what} {s:?} has a repeated vertex")));
        }
        out.push(s);
    }
    out.sort_unstable();
    if let Some(w) = out.windows(2).find(|w| w[0] == w[1]) {
        return Err(ComplexError::Structural(format!("duplicate {what} {:?}", w[0])));
    }
    Ok(out)
}
