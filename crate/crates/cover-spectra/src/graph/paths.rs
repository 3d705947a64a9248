//! Paths, cycles, and 2-regular subgraphs, with canonical forms and the
//! exhaustive enumerations behind the certificate searches.
//!
//! A cycle of length 1 is a loop edge; a cycle of length 2 is a pair of
//! distinct parallel edges. Cycles are kept in canonical form (minimal
//! rotation/reflection of the edge-index sequence) so enumeration order,
//! and therefore every emitted certificate, is deterministic.

use std::collections::HashSet;

use super::MultiGraph;
use crate::caps::Caps;
use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PathKind {
    Path,
    Cycle,
}

/// A vertex-simple path or cycle, as parallel vertex/edge index sequences.
///
/// Path: `vertices.len() == edges.len() + 1` (a single vertex is a path).
/// Cycle: `vertices.len() == edges.len()`, edge k joining vertex k to
/// vertex k+1 (mod length).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclePath {
    pub kind: PathKind,
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl CyclePath {
    pub fn trivial_path(v: usize) -> Self {
        CyclePath {
            kind: PathKind::Path,
            vertices: vec![v],
            edges: vec![],
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn support_mask(&self) -> u64 {
        let mut m = 0u64;
        for &v in &self.vertices {
            m |= 1 << v;
        }
        m
    }

    pub fn support(&self) -> super::VertexSet {
        self.vertices.iter().copied().collect()
    }

    pub fn first(&self) -> usize {
        self.vertices[0]
    }

    pub fn last(&self) -> usize {
        *self.vertices.last().unwrap()
    }

    pub fn edge_ids(&self, g: &MultiGraph) -> Vec<String> {
        self.edges.iter().map(|&e| g.edge(e).id.clone()).collect()
    }

    pub fn vertex_ids(&self, g: &MultiGraph) -> Vec<String> {
        self.vertices
            .iter()
            .map(|&v| g.vertex(v).id.clone())
            .collect()
    }

    /// Structural validity against the host graph.
    pub fn validate(&self, g: &MultiGraph) -> Result<(), Error> {
        let distinct: HashSet<usize> = self.vertices.iter().copied().collect();
        if distinct.len() != self.vertices.len() {
            return Err(Error::NotAPath);
        }
        if self.vertices.iter().any(|&v| v >= g.vertex_count()) {
            return Err(Error::NotAPath);
        }
        match self.kind {
            PathKind::Path => {
                if self.vertices.len() != self.edges.len() + 1 {
                    return Err(Error::NotAPath);
                }
                for (k, &e) in self.edges.iter().enumerate() {
                    let rec = g.edge(e);
                    let (a, b) = (self.vertices[k], self.vertices[k + 1]);
                    if !((rec.u == a && rec.v == b) || (rec.u == b && rec.v == a)) || a == b {
                        return Err(Error::NotAPath);
                    }
                }
            }
            PathKind::Cycle => {
                let k = self.vertices.len();
                if k == 0 || self.edges.len() != k {
                    return Err(Error::NotAPath);
                }
                if k == 1 {
                    let rec = g.edge(self.edges[0]);
                    if !(rec.is_loop() && rec.u == self.vertices[0]) {
                        return Err(Error::NotAPath);
                    }
                } else {
                    if k == 2 && self.edges[0] == self.edges[1] {
                        return Err(Error::NotAPath);
                    }
                    for j in 0..k {
                        let rec = g.edge(self.edges[j]);
                        let (a, b) = (self.vertices[j], self.vertices[(j + 1) % k]);
                        if !((rec.u == a && rec.v == b) || (rec.u == b && rec.v == a)) || a == b {
                            return Err(Error::NotAPath);
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Canonical representative of a cycle under rotation and reflection:
    /// the traversal with the lexicographically smallest (edges, vertices).
    pub fn canonical_cycle(&self) -> CyclePath {
        assert_eq!(self.kind, PathKind::Cycle);
        let k = self.vertices.len();
        if k == 1 {
            return self.clone();
        }
        let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
        let reversed_vertices: Vec<usize> = {
            let mut v = vec![self.vertices[0]];
            v.extend(self.vertices[1..].iter().rev().copied());
            v
        };
        let reversed_edges: Vec<usize> = self.edges.iter().rev().copied().collect();
        for (vs, es) in [
            (&self.vertices, &self.edges),
            (&reversed_vertices, &reversed_edges),
        ] {
            for r in 0..k {
                let rot_v: Vec<usize> = (0..k).map(|j| vs[(j + r) % k]).collect();
                let rot_e: Vec<usize> = (0..k).map(|j| es[(j + r) % k]).collect();
                let cand = (rot_e, rot_v);
                if best.as_ref().map_or(true, |b| cand < *b) {
                    best = Some(cand);
                }
            }
        }
        let (edges, vertices) = best.unwrap();
        CyclePath {
            kind: PathKind::Cycle,
            vertices,
            edges,
        }
    }

    /// All traversals of a cycle as paths: every start vertex, both
    /// directions. Used to unroll cycles in the critical-cycle search.
    pub fn unroll(&self) -> Vec<CyclePath> {
        assert_eq!(self.kind, PathKind::Cycle);
        let k = self.vertices.len();
        if k == 1 {
            return vec![CyclePath::trivial_path(self.vertices[0])];
        }
        let mut out = Vec::new();
        let reversed_vertices: Vec<usize> = {
            let mut v = vec![self.vertices[0]];
            v.extend(self.vertices[1..].iter().rev().copied());
            v
        };
        let reversed_edges: Vec<usize> = self.edges.iter().rev().copied().collect();
        for (vs, es) in [
            (&self.vertices, &self.edges),
            (&reversed_vertices, &reversed_edges),
        ] {
            for r in 0..k {
                let vertices: Vec<usize> = (0..k).map(|j| vs[(j + r) % k]).collect();
                let edges: Vec<usize> = (0..k - 1).map(|j| es[(j + r) % k]).collect();
                out.push(CyclePath {
                    kind: PathKind::Path,
                    vertices,
                    edges,
                });
            }
        }
        out.dedup();
        out
    }
}

/// Vertex-disjoint union of cycles; possibly empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoRegularSubgraph {
    pub cycles: Vec<CyclePath>,
}

impl TwoRegularSubgraph {
    pub fn empty() -> Self {
        TwoRegularSubgraph { cycles: vec![] }
    }

    pub fn support_mask(&self) -> u64 {
        self.cycles.iter().fold(0, |m, c| m | c.support_mask())
    }

    pub fn support(&self) -> super::VertexSet {
        self.cycles.iter().flat_map(|c| c.vertices.iter().copied()).collect()
    }

    pub fn edge_set(&self) -> std::collections::BTreeSet<usize> {
        self.cycles.iter().flat_map(|c| c.edges.iter().copied()).collect()
    }
}

fn check_enum_caps(g: &MultiGraph, caps: &Caps, op: &'static str) -> Result<(), Error> {
    if g.vertex_count() > caps.enum_vertices.min(64) {
        return Err(Error::GraphTooLarge {
            op,
            size: g.vertex_count(),
            cap: caps.enum_vertices,
        });
    }
    if g.edge_count() > caps.enum_edges {
        return Err(Error::GraphTooLarge {
            op,
            size: g.edge_count(),
            cap: caps.enum_edges,
        });
    }
    Ok(())
}

impl MultiGraph {
    /// All distinct cycles, canonical, sorted by (length, edges, vertices).
    /// Includes every loop as a length-1 cycle and every unordered pair of
    /// distinct parallel edges as a length-2 cycle.
    pub fn enumerate_cycles(&self, caps: &Caps) -> Result<Vec<CyclePath>, Error> {
        check_enum_caps(self, caps, "enumerate_cycles")?;
        let mut out: HashSet<CyclePath> = HashSet::new();
        for (e, rec) in self.edges().iter().enumerate() {
            if rec.is_loop() {
                out.insert(CyclePath {
                    kind: PathKind::Cycle,
                    vertices: vec![rec.u],
                    edges: vec![e],
                });
            }
        }
        for (e, re) in self.edges().iter().enumerate() {
            if re.is_loop() {
                continue;
            }
            for (f, rf) in self.edges().iter().enumerate().skip(e + 1) {
                if rf.is_loop() {
                    continue;
                }
                let same = (re.u == rf.u && re.v == rf.v) || (re.u == rf.v && re.v == rf.u);
                if same {
                    let c = CyclePath {
                        kind: PathKind::Cycle,
                        vertices: vec![re.u.min(re.v), re.u.max(re.v)],
                        edges: vec![e, f],
                    };
                    out.insert(c.canonical_cycle());
                }
            }
        }
        // simple cycles of length >= 3: DFS from each minimal start vertex
        for s in 0..self.vertex_count() {
            let mut path_v = vec![s];
            let mut path_e: Vec<usize> = vec![];
            let mut on_path = 1u64 << s;
            dfs_cycles(self, s, s, &mut path_v, &mut path_e, &mut on_path, &mut out);
        }
        let mut cycles: Vec<CyclePath> = out.into_iter().collect();
        cycles.sort_by(|a, b| {
            (a.len(), &a.edges, &a.vertices).cmp(&(b.len(), &b.edges, &b.vertices))
        });
        Ok(cycles)
    }

    /// All vertex-disjoint packings of cycles, including the empty packing.
    pub fn enumerate_two_regular(&self, caps: &Caps) -> Result<Vec<TwoRegularSubgraph>, Error> {
        let cycles = self.enumerate_cycles(caps)?;
        let masks: Vec<u64> = cycles.iter().map(|c| c.support_mask()).collect();
        let mut out = Vec::new();
        let mut chosen: Vec<usize> = Vec::new();
        pack(&cycles, &masks, 0, 0, &mut chosen, &mut out);
        Ok(out)
    }

    /// All simple paths from i to j (i != j) as edge sequences, sorted by
    /// (length, edges). Parallel edges yield distinct paths.
    pub fn enumerate_paths_between(
        &self,
        i: usize,
        j: usize,
        caps: &Caps,
    ) -> Result<Vec<CyclePath>, Error> {
        if i == j {
            return Err(Error::SameVertex);
        }
        check_enum_caps(self, caps, "enumerate_paths_between")?;
        let mut out = Vec::new();
        let mut path_v = vec![i];
        let mut path_e = vec![];
        let mut on_path = 1u64 << i;
        dfs_paths(self, i, j, &mut path_v, &mut path_e, &mut on_path, &mut out);
        out.sort_by(|a, b| (a.len(), &a.edges).cmp(&(b.len(), &b.edges)));
        Ok(out)
    }

    /// Simple paths from i to j inside the induced subgraph on `mask`.
    pub fn enumerate_paths_between_in_mask(
        &self,
        i: usize,
        j: usize,
        mask: u64,
        caps: &Caps,
    ) -> Result<Vec<CyclePath>, Error> {
        let all = self.enumerate_paths_between(i, j, caps)?;
        Ok(all
            .into_iter()
            .filter(|p| p.support_mask() & !mask == 0)
            .collect())
    }
}

fn dfs_cycles(
    g: &MultiGraph,
    start: usize,
    at: usize,
    path_v: &mut Vec<usize>,
    path_e: &mut Vec<usize>,
    on_path: &mut u64,
    out: &mut HashSet<CyclePath>,
) {
    for &(e, next) in g.adjacency(at) {
        if next == at {
            continue; // loops handled separately
        }
        if next == start && path_e.len() >= 2 && Some(&e) != path_e.first() {
            let cand = CyclePath {
                kind: PathKind::Cycle,
                vertices: path_v.clone(),
                edges: {
                    let mut es = path_e.clone();
                    es.push(e);
                    es
                },
            };
            out.insert(cand.canonical_cycle());
            continue;
        }
        if next > start && *on_path >> next & 1 == 0 {
            path_v.push(next);
            path_e.push(e);
            *on_path |= 1 << next;
            dfs_cycles(g, start, next, path_v, path_e, on_path, out);
            *on_path &= !(1 << next);
            path_e.pop();
            path_v.pop();
        }
    }
}

fn dfs_paths(
    g: &MultiGraph,
    at: usize,
    target: usize,
    path_v: &mut Vec<usize>,
    path_e: &mut Vec<usize>,
    on_path: &mut u64,
    out: &mut Vec<CyclePath>,
) {
    for &(e, next) in g.adjacency(at) {
        if next == at || *on_path >> next & 1 == 1 {
            continue;
        }
        path_v.push(next);
        path_e.push(e);
        if next == target {
            out.push(CyclePath {
                kind: PathKind::Path,
                vertices: path_v.clone(),
                edges: path_e.clone(),
            });
        } else {
            *on_path |= 1 << next;
            dfs_paths(g, next, target, path_v, path_e, on_path, out);
            *on_path &= !(1 << next);
        }
        path_e.pop();
        path_v.pop();
    }
}

fn pack(
    cycles: &[CyclePath],
    masks: &[u64],
    from: usize,
    used: u64,
    chosen: &mut Vec<usize>,
    out: &mut Vec<TwoRegularSubgraph>,
) {
    out.push(TwoRegularSubgraph {
        cycles: chosen.iter().map(|&k| cycles[k].clone()).collect(),
    });
    for k in from..cycles.len() {
        if masks[k] & used == 0 {
            chosen.push(k);
            pack(cycles, masks, k + 1, used | masks[k], chosen, out);
            chosen.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::gaussian::GaussianRational;
    use crate::exact::rational::rat;

    fn caps() -> Caps {
        Caps::default()
    }

    fn triangle() -> MultiGraph {
        MultiGraph::unweighted(3, &[(0, 1), (0, 2), (1, 2)])
    }

    fn twin_triangles() -> MultiGraph {
        MultiGraph::unweighted(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])
    }

    #[test]
    fn triangle_has_one_cycle() {
        let cs = triangle().enumerate_cycles(&caps()).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].len(), 3);
    }

    #[test]
    fn parallel_pair_is_a_two_cycle() {
        let g = MultiGraph::unweighted(2, &[(0, 1), (0, 1)]);
        let cs = g.enumerate_cycles(&caps()).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].len(), 2);
        // a loop is a one-cycle
        let l = MultiGraph::unweighted(1, &[(0, 0)]);
        let cl = l.enumerate_cycles(&caps()).unwrap();
        assert_eq!(cl.len(), 1);
        assert_eq!(cl[0].len(), 1);
    }

    #[test]
    fn twin_triangles_cycles() {
        let cs = twin_triangles().enumerate_cycles(&caps()).unwrap();
        assert_eq!(cs.len(), 2);
        assert!(cs.iter().all(|c| c.len() == 3));
    }

    #[test]
    fn doubled_edge_triangle_has_extra_cycles() {
        // triangle with one doubled edge: 1 two-cycle + 2 triangles
        let g = MultiGraph::unweighted(3, &[(0, 1), (0, 1), (0, 2), (1, 2)]);
        let cs = g.enumerate_cycles(&caps()).unwrap();
        let by_len = |k: usize| cs.iter().filter(|c| c.len() == k).count();
        assert_eq!(by_len(2), 1);
        assert_eq!(by_len(3), 2);
    }

    #[test]
    fn two_regular_packings() {
        let tri = triangle().enumerate_two_regular(&caps()).unwrap();
        assert_eq!(tri.len(), 2); // empty + triangle
        assert!(tri.iter().any(|p| p.cycles.is_empty()));
        let twin = twin_triangles().enumerate_two_regular(&caps()).unwrap();
        // empty + each triangle; the triangles share a vertex
        assert_eq!(twin.len(), 3);
        let lonely = MultiGraph::unweighted(1, &[]);
        assert_eq!(lonely.enumerate_two_regular(&caps()).unwrap().len(), 1);
    }

    #[test]
    fn paths_between() {
        let ps = triangle().enumerate_paths_between(0, 1, &caps()).unwrap();
        assert_eq!(ps.len(), 2);
        assert_eq!(ps[0].len(), 1); // direct edge first
        let par = MultiGraph::unweighted(2, &[(0, 1), (0, 1)]);
        assert_eq!(par.enumerate_paths_between(0, 1, &caps()).unwrap().len(), 2);
        let p3 = MultiGraph::unweighted(3, &[(0, 1), (1, 2)]);
        assert_eq!(p3.enumerate_paths_between(0, 2, &caps()).unwrap().len(), 1);
        assert!(matches!(
            p3.enumerate_paths_between(1, 1, &caps()),
            Err(Error::SameVertex)
        ));
    }

    #[test]
    fn canonical_form_is_rotation_reflection_invariant() {
        let g = MultiGraph::unweighted(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let c1 = CyclePath {
            kind: PathKind::Cycle,
            vertices: vec![0, 1, 2, 3],
            edges: vec![0, 1, 2, 3],
        };
        let c2 = CyclePath {
            kind: PathKind::Cycle,
            vertices: vec![2, 1, 0, 3],
            edges: vec![1, 0, 3, 2],
        };
        c1.validate(&g).unwrap();
        c2.validate(&g).unwrap();
        assert_eq!(c1.canonical_cycle(), c2.canonical_cycle());
    }

    #[test]
    fn unroll_cycle() {
        let c = triangle().enumerate_cycles(&caps()).unwrap().remove(0);
        let unrolled = c.unroll();
        assert_eq!(unrolled.len(), 6); // 3 starts x 2 directions
        for p in &unrolled {
            assert_eq!(p.kind, PathKind::Path);
            assert_eq!(p.vertices.len(), 3);
            p.validate(&triangle()).unwrap();
        }
    }

    #[test]
    fn validate_rejects_junk() {
        let g = triangle();
        let bad = CyclePath {
            kind: PathKind::Path,
            vertices: vec![0, 2],
            edges: vec![0], // edge 0 joins 0-1, not 0-2
        };
        assert!(bad.validate(&g).is_err());
        let not_parallel = CyclePath {
            kind: PathKind::Cycle,
            vertices: vec![0, 1],
            edges: vec![0, 0],
        };
        assert!(not_parallel.validate(&g).is_err());
    }

    #[test]
    fn caps_are_enforced() {
        let big = MultiGraph::unweighted(20, &[]);
        let mut tight = Caps::default();
        tight.enum_vertices = 10;
        assert!(matches!(
            big.enumerate_cycles(&tight),
            Err(Error::GraphTooLarge { .. })
        ));
    }

    #[test]
    fn gaussian_weights_allowed() {
        let g = MultiGraph::new(
            vec![("a".into(), rat(0)), ("b".into(), rat(0))],
            vec![(
                "e".into(),
                "a".into(),
                "b".into(),
                GaussianRational::new(rat(1), rat(1)),
            )],
        )
        .unwrap();
        assert_eq!(g.lambda(0), rat(-2));
    }
}
