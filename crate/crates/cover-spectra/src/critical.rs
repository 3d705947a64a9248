//! theta-critical paths and cycles, and the disjoint-cycle negative
//! certificate.
//!
//! A path or cycle is theta-critical when deleting its vertices drops
//! m_theta by exactly one (one is the most a path or cycle deletion can
//! drop it). W_theta(P) tracks the signed sum of infinity-steps minus
//! zero-steps under successive vertex deletion, so m_theta(G \ P) =
//! m_theta(G) + W_theta(P). The cycle finder unrolls a cycle into paths,
//! cuts the minimal prefix with W = 0, bridges its endpoints through the
//! zero class of the remainder with a critical path, and closes up; every
//! candidate is validated by exact recomputation before it is accepted.

use serde::Serialize;

use crate::aomoto::{find_aomoto_bruteforce, is_forest_mask, maximal_refined_aomoto};
use crate::caps::Caps;
use crate::error::Error;
use crate::exact::theta::ThetaSpec;
use crate::gallai::classify_mask;
use crate::graph::{CyclePath, MultiGraph, PathKind};
use crate::graphpoly::matching::{ThetaContext, VertexClass};

/// Class-by-class trace of a path deletion.
#[derive(Clone, Debug)]
pub struct PathWeightTrace {
    pub path: CyclePath,
    /// Class of the j-th vertex in the graph with the first j-1 deleted.
    pub classes: Vec<VertexClass>,
    pub w_theta: i64,
}

/// Negative certificate: pairwise disjoint critical cycles whose removal
/// annihilates the multiplicity.
#[derive(Clone, Debug, Serialize)]
pub struct CycleCertificate {
    #[serde(skip)]
    pub cycles: Vec<CyclePath>,
    pub residual_multiplicity: usize,
}

impl CycleCertificate {
    pub fn edge_id_lists(&self, g: &MultiGraph) -> Vec<Vec<String>> {
        self.cycles.iter().map(|c| c.edge_ids(g)).collect()
    }
}

fn trace_classes(ctx: &mut ThetaContext, mut avail: u64, path: &CyclePath) -> (Vec<VertexClass>, i64) {
    let mut classes = Vec::with_capacity(path.vertices.len());
    let mut w = 0i64;
    for &v in &path.vertices {
        let class = ctx.class_of(avail, v);
        match class {
            VertexClass::Infinity => w += 1,
            VertexClass::Zero => w -= 1,
            VertexClass::PlusMinus => {}
        }
        classes.push(class);
        avail &= !(1 << v);
    }
    (classes, w)
}

/// W_theta of a path, with its class trace; the multiplicity identity
/// m(G \ P) = m(G) + W is verified by recomputation.
pub fn path_weight(
    g: &MultiGraph,
    theta: &ThetaSpec,
    path: &CyclePath,
    caps: &Caps,
) -> Result<PathWeightTrace, Error> {
    if path.kind != PathKind::Path {
        return Err(Error::NotAPath);
    }
    path.validate(g)?;
    let mut ctx = ThetaContext::new(g, theta.clone(), caps)?;
    let full = g.full_mask()?;
    let (classes, w) = trace_classes(&mut ctx, full, path);
    let before = ctx.multiplicity(full) as i64;
    let after = ctx.multiplicity(full & !path.support_mask()) as i64;
    assert_eq!(after, before + w, "path-weight identity violated");
    Ok(PathWeightTrace {
        path: path.clone(),
        classes,
        w_theta: w,
    })
}

/// Critical path between two zero-class vertices of a multiplicity-one
/// induced subgraph, scanning paths in (length, edge) order. Handles
/// from == to with the trivial single-vertex path.
fn critical_path_in_mask(
    ctx: &mut ThetaContext,
    mask: u64,
    from: usize,
    to: usize,
    caps: &Caps,
) -> Result<CyclePath, Error> {
    let m = ctx.multiplicity(mask);
    if m != 1 {
        return Err(Error::PreconditionViolated(format!(
            "critical paths need multiplicity 1, found {m}"
        )));
    }
    if ctx.class_of(mask, from) != VertexClass::Zero
        || ctx.class_of(mask, to) != VertexClass::Zero
    {
        return Err(Error::PreconditionViolated(
            "critical path endpoints must be in the zero class".into(),
        ));
    }
    if from == to {
        let p = CyclePath::trivial_path(from);
        if ctx.multiplicity(mask & !(1 << from)) == 0 {
            return Ok(p);
        }
        return Err(Error::ExhaustedWithoutWitness(
            "zero-class vertex did not drop the multiplicity".into(),
        ));
    }
    let g = ctx.graph();
    let paths = g.enumerate_paths_between_in_mask(from, to, mask, caps)?;
    for p in paths {
        if ctx.multiplicity(mask & !p.support_mask()) == 0 {
            return Ok(p);
        }
    }
    Err(Error::ExhaustedWithoutWitness(
        "no critical path despite zero-class endpoints and multiplicity 1".into(),
    ))
}

/// Public form: a theta-critical path between distinct zero-class vertices
/// of a graph with m_theta = 1.
pub fn find_critical_path(
    g: &MultiGraph,
    theta: &ThetaSpec,
    i: usize,
    j: usize,
    caps: &Caps,
) -> Result<CyclePath, Error> {
    if i == j {
        return Err(Error::SameVertex);
    }
    let mut ctx = ThetaContext::new(g, theta.clone(), caps)?;
    let full = g.full_mask()?;
    critical_path_in_mask(&mut ctx, full, i, j, caps)
}

/// The constructive theta-critical cycle search on a connected
/// theta-critical induced subgraph that is not a tree.
fn critical_cycle_in_mask(
    ctx: &mut ThetaContext,
    mask: u64,
    caps: &Caps,
) -> Result<CyclePath, Error> {
    let g = ctx.graph();
    if g.components_in_mask(mask).len() != 1 {
        return Err(Error::Disconnected);
    }
    let ge = classify_mask(ctx, mask);
    if !ge.is_critical() {
        return Err(Error::NotCritical);
    }
    if is_forest_mask(g, mask) {
        return Err(Error::IsATree);
    }
    debug_assert_eq!(ge.m_theta, 1, "connected critical graphs have multiplicity 1");

    let cycles: Vec<CyclePath> = ctx
        .graph()
        .enumerate_cycles(caps)?
        .into_iter()
        .filter(|c| c.support_mask() & !mask == 0)
        .collect();
    if cycles.is_empty() {
        return Err(Error::IsATree);
    }

    // take the first cycle; done if it is already critical
    let c0 = &cycles[0];
    if ctx.multiplicity(mask & !c0.support_mask()) == 0 {
        return Ok(c0.clone());
    }

    // unroll it and try every start/direction
    for unrolled in c0.unroll() {
        if let Some(found) = close_prefix(ctx, mask, &unrolled, caps)? {
            return Ok(found);
        }
    }

    // fallback: prefixes of arbitrary paths with W = 0, shortest first
    // (the globally minimal one is guaranteed to close up)
    let g = ctx.graph();
    let verts: Vec<usize> = (0..g.vertex_count()).filter(|&v| mask >> v & 1 == 1).collect();
    let mut all_paths: Vec<CyclePath> = Vec::new();
    for (ai, &a) in verts.iter().enumerate() {
        for &b in verts.iter().skip(ai + 1) {
            all_paths.extend(g.enumerate_paths_between_in_mask(a, b, mask, caps)?);
            all_paths.extend(g.enumerate_paths_between_in_mask(b, a, mask, caps)?);
        }
    }
    all_paths.sort_by_key(|p| p.len());
    for p in &all_paths {
        if let Some(found) = close_prefix(ctx, mask, p, caps)? {
            return Ok(found);
        }
    }

    // last resort: scan every cycle directly
    for c in &cycles {
        if ctx.multiplicity(mask & !c.support_mask()) == 0 {
            return Ok(c.clone());
        }
    }
    Err(Error::ExhaustedWithoutWitness(
        "critical cycle guaranteed but not found".into(),
    ))
}

/// Cut the minimal prefix with W = 0 out of `path`, bridge its endpoints
/// through the zero class of the remainder, close the cycle, and validate.
fn close_prefix(
    ctx: &mut ThetaContext,
    mask: u64,
    path: &CyclePath,
    caps: &Caps,
) -> Result<Option<CyclePath>, Error> {
    let (_, w_full) = trace_classes(ctx, mask, path);
    if w_full < 0 {
        return Ok(None);
    }
    // minimal prefix with cumulative weight zero (needs >= 2 vertices)
    let mut avail = mask;
    let mut w = 0i64;
    let mut cut = None;
    for (idx, &v) in path.vertices.iter().enumerate() {
        match ctx.class_of(avail, v) {
            VertexClass::Infinity => w += 1,
            VertexClass::Zero => w -= 1,
            VertexClass::PlusMinus => {}
        }
        avail &= !(1 << v);
        if w == 0 && idx >= 1 {
            cut = Some(idx);
            break;
        }
    }
    let Some(cut) = cut else {
        return Ok(None);
    };
    let prefix = CyclePath {
        kind: PathKind::Path,
        vertices: path.vertices[..=cut].to_vec(),
        edges: path.edges[..cut].to_vec(),
    };
    let rest = mask & !prefix.support_mask();
    if ctx.multiplicity(rest) != 1 {
        return Ok(None);
    }
    let head = prefix.first();
    let tail = prefix.last();
    let g = ctx.graph();
    let pick_zero_neighbor = |ctx: &mut ThetaContext, at: usize| -> Option<(usize, usize)> {
        // smallest zero-class neighbor in the remainder, with its edge
        let mut best: Option<(usize, usize)> = None;
        for &(e, w) in ctx.graph().adjacency(at) {
            if w != at && rest >> w & 1 == 1 && ctx.class_of(rest, w) == VertexClass::Zero {
                match best {
                    Some((bw, be)) if (w, e) >= (bw, be) => {}
                    _ => best = Some((w, e)),
                }
            }
        }
        best
    };
    let Some((v_next, e_tail)) = pick_zero_neighbor(ctx, tail) else {
        return Ok(None);
    };
    let Some((u_back, _)) = pick_zero_neighbor(ctx, head) else {
        return Ok(None);
    };
    let bridge = match critical_path_in_mask(ctx, rest, v_next, u_back, caps) {
        Ok(b) => b,
        Err(Error::ExhaustedWithoutWitness(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    // closing edge from the bridge's end back to the prefix head
    let closing = g
        .adjacency(head)
        .iter()
        .filter(|&&(_, w)| w == u_back)
        .map(|&(e, _)| e)
        .min();
    let Some(e_head) = closing else {
        return Ok(None);
    };
    let mut vertices = prefix.vertices.clone();
    vertices.extend(&bridge.vertices);
    let mut edges = prefix.edges.clone();
    edges.push(e_tail);
    edges.extend(&bridge.edges);
    edges.push(e_head);
    let cycle = CyclePath {
        kind: PathKind::Cycle,
        vertices,
        edges,
    }
    .canonical_cycle();
    if cycle.validate(g).is_err() {
        return Ok(None);
    }
    if ctx.multiplicity(mask & !cycle.support_mask()) == 0 {
        Ok(Some(cycle))
    } else {
        Ok(None)
    }
}

/// theta-critical cycle of a connected theta-critical multi-graph that is
/// not a tree.
pub fn find_critical_cycle(
    g: &MultiGraph,
    theta: &ThetaSpec,
    caps: &Caps,
) -> Result<CyclePath, Error> {
    let mut ctx = ThetaContext::new(g, theta.clone(), caps)?;
    let full = g.full_mask()?;
    critical_cycle_in_mask(&mut ctx, full, caps)
}

/// The complete negative certificate: m_theta(G) pairwise disjoint cycles
/// whose removal leaves multiplicity zero. Requires that no Aomoto subset
/// exists; each step finds a critical cycle inside a non-tree critical
/// component and re-checks (at oracle scale) that deletion has not created
/// an Aomoto subset.
pub fn find_disjoint_critical_cycles(
    g: &MultiGraph,
    theta: &ThetaSpec,
    caps: &Caps,
) -> Result<CycleCertificate, Error> {
    if maximal_refined_aomoto(g, theta, caps)?.is_some() {
        return Err(Error::AomotoSubsetExists);
    }
    let mut ctx = ThetaContext::new(g, theta.clone(), caps)?;
    let full = g.full_mask()?;
    let k = ctx.multiplicity(full);
    let mut avail = full;
    let mut cycles: Vec<CyclePath> = Vec::new();
    while ctx.multiplicity(avail) > 0 {
        let ge = classify_mask(&mut ctx, avail);
        let comp = ge
            .components
            .iter()
            .copied()
            .find(|&c| !is_forest_mask(ctx.graph(), c))
            .ok_or_else(|| {
                Error::ExhaustedWithoutWitness(
                    "every critical component is a tree, yet no Aomoto subset was found".into(),
                )
            })?;
        let before = ctx.multiplicity(avail);
        let cycle = critical_cycle_in_mask(&mut ctx, comp, caps)?;
        avail &= !cycle.support_mask();
        let after = ctx.multiplicity(avail);
        assert_eq!(
            after + 1,
            before,
            "cycle critical in its component must be critical in the host"
        );
        cycles.push(cycle);
        // deleting a critical cycle must not create an Aomoto subset
        if avail.count_ones() as usize <= caps.enum_vertices.min(12) {
            let rest = ctx.graph().induced_mask(avail);
            assert!(
                find_aomoto_bruteforce(&rest, theta, caps)?.is_none(),
                "deleting a critical cycle created an Aomoto subset"
            );
        }
    }
    assert_eq!(cycles.len(), k, "certificate must carry m_theta(G) cycles");
    let residual = ctx.multiplicity(avail);
    debug_assert_eq!(residual, 0);
    Ok(CycleCertificate {
        cycles,
        residual_multiplicity: residual,
    })
}

/// Recompute everything a negative certificate claims.
pub fn validate_cycle_certificate(
    g: &MultiGraph,
    theta: &ThetaSpec,
    cert: &CycleCertificate,
    caps: &Caps,
) -> Result<(), Error> {
    let mut ctx = ThetaContext::new(g, theta.clone(), caps)?;
    let full = g.full_mask()?;
    let mut used = 0u64;
    for c in &cert.cycles {
        c.validate(g)
            .map_err(|_| Error::InvalidCertificate("cycle is not a cycle of the host".into()))?;
        if c.support_mask() & used != 0 {
            return Err(Error::InvalidCertificate("cycles are not vertex-disjoint".into()));
        }
        used |= c.support_mask();
    }
    let residual = ctx.multiplicity(full & !used);
    if residual != cert.residual_multiplicity {
        return Err(Error::InvalidCertificate(format!(
            "stated residual multiplicity {} but recomputed {residual}",
            cert.residual_multiplicity
        )));
    }
    if cert.cycles.len() != ctx.multiplicity(full) {
        return Err(Error::InvalidCertificate(format!(
            "certificate has {} cycles but m_theta(G) = {}",
            cert.cycles.len(),
            ctx.multiplicity(full)
        )));
    }
    if cert.residual_multiplicity != 0 {
        return Err(Error::InvalidCertificate(
            "complete negative certificate needs residual multiplicity 0".into(),
        ));
    }
    Ok(())
}

/// Exhaustive perfect-matching search on the induced subgraph (non-loop
/// edges; desk scale).
pub fn perfect_matching(g: &MultiGraph, mask: u64) -> Option<Vec<usize>> {
    if mask == 0 {
        return Some(vec![]);
    }
    let v = mask.trailing_zeros() as usize;
    for &(e, w) in g.adjacency(v) {
        if w != v && mask >> w & 1 == 1 {
            if let Some(mut rest) = perfect_matching(g, mask & !(1 << v) & !(1 << w)) {
                rest.push(e);
                return Some(rest);
            }
        }
    }
    None
}

/// In a factor-critical graph (vertex weights 0, arc weights 1), an odd
/// cycle through two adjacent vertices whose removal leaves a perfectly
/// matchable graph, built from the alternating path in the symmetric
/// difference of two near-perfect matchings.
pub fn factor_critical_odd_cycle(
    g: &MultiGraph,
    i: usize,
    j: usize,
    caps: &Caps,
) -> Result<CyclePath, Error> {
    use num::Zero;
    if g.vertex_count() > caps.enum_vertices.min(16) {
        return Err(Error::GraphTooLarge {
            op: "factor_critical_odd_cycle",
            size: g.vertex_count(),
            cap: caps.enum_vertices.min(16),
        });
    }
    let unweighted = (0..g.vertex_count()).all(|v| g.weight(v).is_zero())
        && g.edges()
            .iter()
            .all(|e| e.rho == crate::exact::gaussian::GaussianRational::one());
    if !unweighted {
        return Err(Error::PreconditionViolated(
            "factor-critical machinery needs vertex weights 0 and arc weights 1".into(),
        ));
    }
    if g.edges().iter().any(|e| e.is_loop()) {
        return Err(Error::PreconditionViolated("loops are not allowed here".into()));
    }
    let full = g.full_mask()?;
    // factor-critical = every single-vertex deletion leaves a perfect matching
    if !g.is_connected() {
        return Err(Error::NotFactorCritical);
    }
    let m_i =
        perfect_matching(g, full & !(1 << i)).ok_or(Error::NotFactorCritical)?;
    let m_j =
        perfect_matching(g, full & !(1 << j)).ok_or(Error::NotFactorCritical)?;
    for v in 0..g.vertex_count() {
        if perfect_matching(g, full & !(1 << v)).is_none() {
            return Err(Error::NotFactorCritical);
        }
    }
    let closing = g
        .adjacency(i)
        .iter()
        .filter(|&&(_, w)| w == j)
        .map(|&(e, _)| e)
        .min()
        .ok_or(Error::NotAdjacent)?;
    // symmetric difference; walk the alternating path from i, it ends at j
    let mut delta: std::collections::BTreeSet<usize> = m_i.iter().copied().collect();
    for e in &m_j {
        if !delta.remove(e) {
            delta.insert(*e);
        }
    }
    let mut path_v = vec![i];
    let mut path_e = Vec::new();
    let mut at = i;
    let mut prev: Option<usize> = None;
    while at != j {
        let step = delta
            .iter()
            .copied()
            .find(|&e| {
                let rec = g.edge(e);
                Some(e) != prev && (rec.u == at || rec.v == at)
            })
            .ok_or_else(|| {
                Error::ExhaustedWithoutWitness(
                    "alternating path did not reach the second vertex".into(),
                )
            })?;
        delta.remove(&step);
        at = g.edge(step).other(at);
        path_v.push(at);
        path_e.push(step);
        prev = Some(step);
    }
    path_e.push(closing);
    let cycle = CyclePath {
        kind: PathKind::Cycle,
        vertices: path_v,
        edges: path_e,
    }
    .canonical_cycle();
    cycle.validate(g)?;
    if cycle.len() % 2 == 0 {
        return Err(Error::ExhaustedWithoutWitness("cycle came out even".into()));
    }
    if perfect_matching(g, full & !cycle.support_mask()).is_none() {
        return Err(Error::ExhaustedWithoutWitness(
            "leftover graph has no perfect matching".into(),
        ));
    }
    Ok(cycle)
}

/// Convenience wrapper tying the pieces together for tests: is this cycle
/// critical in this graph?
pub fn is_critical_cycle(
    g: &MultiGraph,
    theta: &ThetaSpec,
    cycle: &CyclePath,
    caps: &Caps,
) -> Result<bool, Error> {
    cycle.validate(g)?;
    let mut ctx = ThetaContext::new(g, theta.clone(), caps)?;
    let full = g.full_mask()?;
    let before = ctx.multiplicity(full);
    let after = ctx.multiplicity(full & !cycle.support_mask());
    Ok(before == after + 1)
}

#[allow(unused_imports)]
use crate::graph::TwoRegularSubgraph;
