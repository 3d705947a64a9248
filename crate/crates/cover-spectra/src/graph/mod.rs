//! Finite weighted multi-graphs: rational vertex weights, nonzero
//! Gaussian-rational arc weights paired by conjugation, loops and parallel
//! edges allowed.
//!
//! Vertices and edges carry stable string ids; deletion produces induced
//! subgraphs that keep the original ids, so certificates always refer to
//! host-graph ids. Internally vertices are dense indices, and the
//! polynomial machinery works on `u64` masks of surviving vertices.

pub mod paths;

use num::Zero;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap, HashSet};

use crate::error::Error;
use crate::exact::gaussian::GaussianRational;
use crate::exact::rational::{format_rational, parse_rational, Rational};

pub use paths::{CyclePath, PathKind, TwoRegularSubgraph};

/// Subset of a fixed graph's vertices, as indices into its vertex list.
pub type VertexSet = BTreeSet<usize>;

#[derive(Clone, Debug)]
pub struct Vertex {
    pub id: String,
    pub weight: Rational,
}

#[derive(Clone, Debug)]
pub struct EdgeRecord {
    pub id: String,
    pub u: usize,
    pub v: usize,
    pub rho: GaussianRational,
}

impl EdgeRecord {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    /// Endpoint other than `at`; for loops returns `at`.
    pub fn other(&self, at: usize) -> usize {
        if self.u == at {
            self.v
        } else {
            self.u
        }
    }
}

#[derive(Clone)]
pub struct MultiGraph {
    vertices: Vec<Vertex>,
    edges: Vec<EdgeRecord>,
    /// adj[i] lists (edge index, other endpoint); loops appear once.
    adj: Vec<Vec<(usize, usize)>>,
}

impl MultiGraph {
    pub fn new(
        vertices: Vec<(String, Rational)>,
        edges: Vec<(String, String, String, GaussianRational)>,
    ) -> Result<Self, Error> {
        let mut index = HashMap::new();
        let mut vs = Vec::with_capacity(vertices.len());
        for (id, weight) in vertices {
            if index.insert(id.clone(), vs.len()).is_some() {
                return Err(Error::Parse(format!("duplicate vertex id {id:?}")));
            }
            vs.push(Vertex { id, weight });
        }
        let mut seen_edges = HashSet::new();
        let mut es = Vec::with_capacity(edges.len());
        for (id, u, v, rho) in edges {
            if !seen_edges.insert(id.clone()) {
                return Err(Error::Parse(format!("duplicate edge id {id:?}")));
            }
            if rho.is_zero() {
                return Err(Error::Parse(format!("edge {id:?} has zero arc weight")));
            }
            let ui = *index
                .get(&u)
                .ok_or_else(|| Error::UnknownVertex(u.clone()))?;
            let vi = *index
                .get(&v)
                .ok_or_else(|| Error::UnknownVertex(v.clone()))?;
            es.push(EdgeRecord { id, u: ui, v: vi, rho });
        }
        Ok(Self::from_parts(vs, es))
    }

    fn from_parts(vertices: Vec<Vertex>, edges: Vec<EdgeRecord>) -> Self {
        let mut adj = vec![Vec::new(); vertices.len()];
        for (e, rec) in edges.iter().enumerate() {
            adj[rec.u].push((e, rec.v));
            if !rec.is_loop() {
                adj[rec.v].push((e, rec.u));
            }
        }
        MultiGraph { vertices, edges, adj }
    }

    /// Unweighted helper: all vertex weights 0, all arc weights 1, ids "1"..
    /// and "e1".., edges given as index pairs.
    pub fn unweighted(n: usize, edge_pairs: &[(usize, usize)]) -> Self {
        let vertices = (0..n)
            .map(|i| Vertex {
                id: (i + 1).to_string(),
                weight: Rational::zero(),
            })
            .collect();
        let edges = edge_pairs
            .iter()
            .enumerate()
            .map(|(k, &(u, v))| EdgeRecord {
                id: format!("e{}", k + 1),
                u,
                v,
                rho: GaussianRational::one(),
            })
            .collect();
        Self::from_parts(vertices, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex(&self, i: usize) -> &Vertex {
        &self.vertices[i]
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edge(&self, e: usize) -> &EdgeRecord {
        &self.edges[e]
    }

    pub fn edges(&self) -> &[EdgeRecord] {
        &self.edges
    }

    pub fn vertex_index(&self, id: &str) -> Result<usize, Error> {
        self.vertices
            .iter()
            .position(|v| v.id == id)
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    pub fn weight(&self, i: usize) -> &Rational {
        &self.vertices[i].weight
    }

    /// lambda_e = -|rho_e|^2, a negative rational for every edge.
    pub fn lambda(&self, e: usize) -> Rational {
        -self.edges[e].rho.norm_sqr()
    }

    pub fn adjacency(&self, i: usize) -> &[(usize, usize)] {
        &self.adj[i]
    }

    /// Degree counting self-loops twice.
    pub fn degree(&self, i: usize) -> usize {
        self.adj[i]
            .iter()
            .map(|&(e, _)| if self.edges[e].is_loop() { 2 } else { 1 })
            .sum()
    }

    pub fn is_regular(&self) -> bool {
        match self.vertices.len() {
            0 => true,
            _ => {
                let d = self.degree(0);
                (1..self.vertices.len()).all(|i| self.degree(i) == d)
            }
        }
    }

    /// Mask with every vertex present. Errors above 64 vertices.
    pub fn full_mask(&self) -> Result<u64, Error> {
        if self.vertices.len() > 64 {
            return Err(Error::GraphTooLarge {
                op: "bitmask",
                size: self.vertices.len(),
                cap: 64,
            });
        }
        if self.vertices.len() == 64 {
            Ok(u64::MAX)
        } else {
            Ok((1u64 << self.vertices.len()) - 1)
        }
    }

    pub fn mask_of(&self, set: &VertexSet) -> u64 {
        let mut m = 0u64;
        for &i in set {
            m |= 1 << i;
        }
        m
    }

    pub fn set_of(mask: u64) -> VertexSet {
        (0..64).filter(|&i| mask >> i & 1 == 1).collect()
    }

    pub fn vertex_ids(&self, set: &VertexSet) -> Vec<String> {
        set.iter().map(|&i| self.vertices[i].id.clone()).collect()
    }

    pub fn set_from_ids(&self, ids: &[String]) -> Result<VertexSet, Error> {
        ids.iter().map(|id| self.vertex_index(id)).collect()
    }

    /// Induced subgraph on the complement of `s`; ids inherited.
    pub fn delete_vertices(&self, s: &VertexSet) -> Result<MultiGraph, Error> {
        for &i in s {
            if i >= self.vertices.len() {
                return Err(Error::UnknownVertex(format!("#{i}")));
            }
        }
        let keep: Vec<usize> = (0..self.vertices.len()).filter(|i| !s.contains(i)).collect();
        Ok(self.induced(&keep))
    }

    /// Induced subgraph on the given vertices (indices, kept in order).
    pub fn induced(&self, keep: &[usize]) -> MultiGraph {
        let mut remap = HashMap::new();
        let vertices: Vec<Vertex> = keep
            .iter()
            .enumerate()
            .map(|(new, &old)| {
                remap.insert(old, new);
                self.vertices[old].clone()
            })
            .collect();
        let edges: Vec<EdgeRecord> = self
            .edges
            .iter()
            .filter(|e| remap.contains_key(&e.u) && remap.contains_key(&e.v))
            .map(|e| EdgeRecord {
                id: e.id.clone(),
                u: remap[&e.u],
                v: remap[&e.v],
                rho: e.rho.clone(),
            })
            .collect();
        Self::from_parts(vertices, edges)
    }

    pub fn induced_mask(&self, mask: u64) -> MultiGraph {
        let keep: Vec<usize> = (0..self.vertices.len()).filter(|&i| mask >> i & 1 == 1).collect();
        self.induced(&keep)
    }

    /// Vertices outside `s` with a neighbor in `s`. Loops never contribute.
    pub fn frontier(&self, s: &VertexSet) -> Result<VertexSet, Error> {
        for &i in s {
            if i >= self.vertices.len() {
                return Err(Error::UnknownVertex(format!("#{i}")));
            }
        }
        let mut out = VertexSet::new();
        for &i in s {
            for &(_, j) in &self.adj[i] {
                if j != i && !s.contains(&j) {
                    out.insert(j);
                }
            }
        }
        Ok(out)
    }

    /// Frontier of `s` within the induced subgraph on `avail` (masks).
    pub fn frontier_in_mask(&self, avail: u64, s: u64) -> u64 {
        let mut out = 0u64;
        for i in 0..self.vertices.len() {
            if s >> i & 1 == 1 {
                for &(_, j) in &self.adj[i] {
                    if j != i && avail >> j & 1 == 1 && s >> j & 1 == 0 {
                        out |= 1 << j;
                    }
                }
            }
        }
        out
    }

    /// Connected components, ordered by smallest contained vertex index.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = vec![false; self.vertices.len()];
        let mut out = Vec::new();
        for start in 0..self.vertices.len() {
            if seen[start] {
                continue;
            }
            let mut comp = VertexSet::new();
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(x) = stack.pop() {
                comp.insert(x);
                for &(_, y) in &self.adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// Components of the induced subgraph on `mask`, as masks, ordered by
    /// smallest contained vertex.
    pub fn components_in_mask(&self, mask: u64) -> Vec<u64> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for start in 0..self.vertices.len() {
            if mask >> start & 1 == 0 || seen >> start & 1 == 1 {
                continue;
            }
            let mut comp = 0u64;
            let mut stack = vec![start];
            seen |= 1 << start;
            while let Some(x) = stack.pop() {
                comp |= 1 << x;
                for &(_, y) in &self.adj[x] {
                    if mask >> y & 1 == 1 && seen >> y & 1 == 0 {
                        seen |= 1 << y;
                        stack.push(y);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// True when the graph has no cycle (no loops, no parallel edges, and
    /// |E| = |V| - cc).
    pub fn is_forest(&self) -> bool {
        if self.edges.iter().any(|e| e.is_loop()) {
            return false;
        }
        let cc = self.components().len();
        if self.edges.len() + cc != self.vertices.len() {
            return false;
        }
        // acyclic edge count together with no loops rules out parallels too
        true
    }

    /// Maximal spanning forest chosen greedily by lowest edge index, plus
    /// the non-forest edges S_+ (carriers of the cover generators).
    pub fn spanning_forest(&self) -> (Vec<usize>, Vec<usize>) {
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut forest = Vec::new();
        let mut s_plus = Vec::new();
        for (e, rec) in self.edges.iter().enumerate() {
            let ru = find(&mut parent, rec.u);
            let rv = find(&mut parent, rec.v);
            if ru != rv {
                parent[ru] = rv;
                forest.push(e);
            } else {
                s_plus.push(e);
            }
        }
        (forest, s_plus)
    }

    pub fn to_json(&self) -> GraphFile {
        GraphFile {
            vertices: self
                .vertices
                .iter()
                .map(|v| VertexFile {
                    id: v.id.clone(),
                    r: format_rational(&v.weight),
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeFile {
                    id: e.id.clone(),
                    u: self.vertices[e.u].id.clone(),
                    v: self.vertices[e.v].id.clone(),
                    rho: e.rho.clone(),
                })
                .collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("serializable")
    }

    pub fn from_json(file: GraphFile) -> Result<Self, Error> {
        MultiGraph::new(
            file.vertices
                .into_iter()
                .map(|v| Ok((v.id, parse_rational(&v.r)?)))
                .collect::<Result<Vec<_>, Error>>()?,
            file.edges
                .into_iter()
                .map(|e| (e.id, e.u, e.v, e.rho))
                .collect(),
        )
    }

    pub fn from_json_str(s: &str) -> Result<Self, Error> {
        let file: GraphFile = serde_json::from_str(s)?;
        Self::from_json(file)
    }
}

impl std::fmt::Debug for MultiGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "MultiGraph({} vertices, {} edges)",
            self.vertices.len(),
            self.edges.len()
        )
    }
}

/// On-disk graph format.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: Vec<VertexFile>,
    pub edges: Vec<EdgeFile>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VertexFile {
    pub id: String,
    pub r: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EdgeFile {
    pub id: String,
    pub u: String,
    pub v: String,
    pub rho: GaussianRational,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;
    use crate::fixtures::{triangle, twin_triangles};

    #[test]
    fn json_round_trip() {
        let g = twin_triangles();
        let s = g.to_json_string();
        let h = MultiGraph::from_json_str(&s).unwrap();
        assert_eq!(h.vertex_count(), 5);
        assert_eq!(h.edge_count(), 6);
        assert_eq!(h.weight(2), &rat(1));
    }

    #[test]
    fn parser_rejects_zero_rho_and_bad_ids() {
        let bad = r#"{"vertices":[{"id":"1","r":"0"},{"id":"2","r":"0"}],
                      "edges":[{"id":"e1","u":"1","v":"2","rho":{"re":"0","im":"0"}}]}"#;
        assert!(MultiGraph::from_json_str(bad).is_err());
        let unknown = r#"{"vertices":[{"id":"1","r":"0"}],
                      "edges":[{"id":"e1","u":"1","v":"9","rho":{"re":"1","im":"0"}}]}"#;
        assert!(matches!(
            MultiGraph::from_json_str(unknown),
            Err(Error::UnknownVertex(_))
        ));
        let dup = r#"{"vertices":[{"id":"1","r":"0"},{"id":"1","r":"0"}],"edges":[]}"#;
        assert!(MultiGraph::from_json_str(dup).is_err());
    }

    #[test]
    fn delete_vertices_induced() {
        let g = triangle();
        let h = g.delete_vertices(&VertexSet::from([0])).unwrap();
        assert_eq!(h.vertex_count(), 2);
        assert_eq!(h.edge_count(), 1);
        assert_eq!(h.vertex(0).id, "2");
        // identity deletion
        let same = g.delete_vertices(&VertexSet::new()).unwrap();
        assert_eq!(same.vertex_count(), 3);
        assert_eq!(same.edge_count(), 3);
        // twin triangles minus the shared vertex: two disjoint edges
        let t = twin_triangles();
        let cut = t.delete_vertices(&VertexSet::from([2])).unwrap();
        assert_eq!(cut.vertex_count(), 4);
        assert_eq!(cut.edge_count(), 2);
        assert_eq!(cut.components().len(), 2);
    }

    #[test]
    fn frontier_basics() {
        let t = twin_triangles();
        let f = t.frontier(&VertexSet::from([0, 1, 3, 4])).unwrap();
        assert_eq!(f, VertexSet::from([2]));
        assert!(t
            .frontier(&(0..5).collect::<VertexSet>())
            .unwrap()
            .is_empty());
        let p3 = MultiGraph::unweighted(3, &[(0, 1), (1, 2)]);
        assert_eq!(p3.frontier(&VertexSet::from([0])).unwrap(), VertexSet::from([1]));
        // frontier never meets the set itself
        let f2 = t.frontier(&VertexSet::from([2])).unwrap();
        assert!(f2.intersection(&VertexSet::from([2])).next().is_none());
    }

    #[test]
    fn components_and_forest() {
        let two_edges = MultiGraph::unweighted(4, &[(0, 1), (2, 3)]);
        assert_eq!(two_edges.components().len(), 2);
        assert!(two_edges.is_forest());
        assert!(twin_triangles().is_connected());
        assert_eq!(MultiGraph::unweighted(0, &[]).components().len(), 0);
        let loopy = MultiGraph::unweighted(1, &[(0, 0)]);
        assert!(!loopy.is_forest());
        assert_eq!(loopy.degree(0), 2);
    }

    #[test]
    fn spanning_forest_counts() {
        let (f, s) = triangle().spanning_forest();
        assert_eq!((f.len(), s.len()), (2, 1));
        let tree = MultiGraph::unweighted(4, &[(0, 1), (1, 2), (1, 3)]);
        let (f, s) = tree.spanning_forest();
        assert_eq!((f.len(), s.len()), (3, 0));
        let (f, s) = twin_triangles().spanning_forest();
        assert_eq!((f.len(), s.len()), (4, 2));
        // |s_plus| = |E| - |V| + cc
        let g = MultiGraph::unweighted(5, &[(0, 1), (1, 2), (0, 2), (3, 4), (3, 4)]);
        let (_, s) = g.spanning_forest();
        assert_eq!(s.len(), g.edge_count() - g.vertex_count() + g.components().len());
    }
}
