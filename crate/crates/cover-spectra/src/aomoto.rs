//! theta-Aomoto subsets: the positive certificates.
//!
//! A subset S is a theta-Aomoto subset when G[S] is a forest, theta is an
//! eigenvalue of every tree component, and |frontier(S)| < cc(G[S]).
//! Refined adds that every component is theta-critical and that every
//! nonempty subset U of the frontier is adjacent to at least |U|+1
//! components. Refined subsets are exactly unions of theta-critical tree
//! components of G with the surplus Hall property, which is what the
//! maximal-subset computation exploits.

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::Error;
use crate::exact::rational::{rat, Rational};
use crate::exact::theta::ThetaSpec;
use crate::gallai::{classify_mask, CheckReport};
use crate::graph::{CyclePath, MultiGraph, VertexSet};
use crate::graphpoly::matching::{ThetaContext, VertexClass};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AomotoCertificate {
    pub subset: Vec<String>,
    pub components: Vec<Vec<String>>,
    pub frontier: Vec<String>,
    /// cc(G[S]) - |frontier(S)|, always >= 1 for a valid certificate.
    pub surplus: i64,
    pub refined: bool,
}

impl AomotoCertificate {
    pub fn subset_of(&self, g: &MultiGraph) -> Result<VertexSet, Error> {
        g.set_from_ids(&self.subset)
    }
}

/// True when the induced subgraph on `mask` has no cycle (no loops and
/// edge count = vertices - components; parallel edges fail the count).
pub fn is_forest_mask(g: &MultiGraph, mask: u64) -> bool {
    let mut edges = 0usize;
    for rec in g.edges() {
        if mask >> rec.u & 1 == 1 && mask >> rec.v & 1 == 1 {
            if rec.is_loop() {
                return false;
            }
            edges += 1;
        }
    }
    edges + g.components_in_mask(mask).len() == mask.count_ones() as usize
}

fn certificate_from_mask(
    ctx: &mut ThetaContext,
    full: u64,
    mask: u64,
    caps: &Caps,
) -> AomotoCertificate {
    let g = ctx.graph();
    let comps = g.components_in_mask(mask);
    let frontier = g.frontier_in_mask(full, mask);
    let surplus = comps.len() as i64 - frontier.count_ones() as i64;
    let refined = refined_conditions_hold(ctx, full, mask, caps).unwrap_or(false);
    AomotoCertificate {
        subset: g.vertex_ids(&MultiGraph::set_of(mask)),
        components: comps
            .iter()
            .map(|&c| g.vertex_ids(&MultiGraph::set_of(c)))
            .collect(),
        frontier: g.vertex_ids(&MultiGraph::set_of(frontier)),
        surplus,
        refined,
    }
}

/// Aomoto conditions on a mask (forest, eigenvalue on each component,
/// positive surplus).
fn aomoto_conditions_hold(ctx: &mut ThetaContext, full: u64, mask: u64) -> bool {
    if mask == 0 || !is_forest_mask(ctx.graph(), mask) {
        return false;
    }
    let comps = ctx.graph().components_in_mask(mask);
    for &c in &comps {
        if ctx.multiplicity(c) == 0 {
            return false;
        }
    }
    let frontier = ctx.graph().frontier_in_mask(full, mask);
    (frontier.count_ones() as usize) < comps.len()
}

/// Refined conditions: every component theta-critical as a standalone
/// graph, plus the surplus Hall condition on the frontier.
fn refined_conditions_hold(
    ctx: &mut ThetaContext,
    full: u64,
    mask: u64,
    caps: &Caps,
) -> Result<bool, Error> {
    let comps = ctx.graph().components_in_mask(mask);
    for &c in &comps {
        for i in 0..ctx.graph().vertex_count() {
            if c >> i & 1 == 1 && ctx.class_of(c, i) != VertexClass::Zero {
                return Ok(false);
            }
        }
    }
    let frontier = ctx.graph().frontier_in_mask(full, mask);
    let violating = violating_union(ctx.graph(), &comps, frontier, caps)?;
    Ok(violating == 0)
}

/// Union of every nonempty frontier subset adjacent to at most |U|
/// components. Empty exactly when the surplus Hall condition holds.
fn violating_union(
    g: &MultiGraph,
    comps: &[u64],
    frontier: u64,
    caps: &Caps,
) -> Result<u64, Error> {
    let verts: Vec<usize> = (0..g.vertex_count()).filter(|&i| frontier >> i & 1 == 1).collect();
    if verts.len() > caps.frontier {
        return Err(Error::FrontierTooLarge {
            size: verts.len(),
            cap: caps.frontier,
        });
    }
    let adj: Vec<u64> = verts
        .iter()
        .map(|&u| {
            let mut m = 0u64;
            for (k, &comp) in comps.iter().enumerate() {
                if g.adjacency(u).iter().any(|&(_, w)| comp >> w & 1 == 1) {
                    m |= 1 << k;
                }
            }
            m
        })
        .collect();
    let mut union = 0u64;
    for sub in 1u64..(1u64 << verts.len()) {
        let mut touched = 0u64;
        for (k, a) in adj.iter().enumerate() {
            if sub >> k & 1 == 1 {
                touched |= a;
            }
        }
        if touched.count_ones() <= sub.count_ones() {
            for (k, &u) in verts.iter().enumerate() {
                if sub >> k & 1 == 1 {
                    union |= 1 << u;
                }
            }
        }
    }
    Ok(union)
}

/// First theta-Aomoto subset in (size, lexicographic) scan order, or None.
pub fn find_aomoto_bruteforce(
    g: &MultiGraph,
    theta: &ThetaSpec,
    caps: &Caps,
) -> Result<Option<AomotoCertificate>, Error> {
    let n = g.vertex_count();
    if n > caps.enum_vertices.min(63) {
        return Err(Error::GraphTooLarge {
            op: "find_aomoto_bruteforce",
            size: n,
            cap: caps.enum_vertices.min(63),
        });
    }
    let mut ctx = ThetaContext::new(g, theta.clone(), caps)?;
    let full = g.full_mask()?;
    for size in 1..=n {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            let mask = combo.iter().fold(0u64, |m, &i| m | 1 << i);
            if aomoto_conditions_hold(&mut ctx, full, mask) {
                return Ok(Some(certificate_from_mask(&mut ctx, full, mask, caps)));
            }
            if !next_combination(&mut combo, n) {
                break;
            }
        }
    }
    Ok(None)
}

/// Advance to the next k-combination of 0..n in lexicographic order.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Largest surplus over all Aomoto subsets, by exhaustive scan (oracle).
pub fn max_surplus_bruteforce(
    g: &MultiGraph,
    theta: &ThetaSpec,
    caps: &Caps,
) -> Result<Option<i64>, Error> {
    let n = g.vertex_count();
    if n > caps.enum_vertices.min(63) {
        return Err(Error::GraphTooLarge {
            op: "max_surplus_bruteforce",
            size: n,
            cap: caps.enum_vertices.min(63),
        });
    }
    let mut ctx = ThetaContext::new(g, theta.clone(), caps)?;
    let full = g.full_mask()?;
    let mut best: Option<i64> = None;
    for mask in 1u64..=full {
        if aomoto_conditions_hold(&mut ctx, full, mask) {
            let comps = g.components_in_mask(mask).len() as i64;
            let fr = g.frontier_in_mask(full, mask).count_ones() as i64;
            let s = comps - fr;
            if best.map_or(true, |b| s > b) {
                best = Some(s);
            }
        }
    }
    Ok(best)
}

/// Independent validator: recompute every condition on a claimed subset.
pub fn validate_aomoto_subset(
    g: &MultiGraph,
    theta: &ThetaSpec,
    subset: &VertexSet,
    require_refined: bool,
    caps: &Caps,
) -> Result<AomotoCertificate, Error> {
    let mut ctx = ThetaContext::new(g, theta.clone(), caps)?;
    let full = g.full_mask()?;
    let mask = g.mask_of(subset);
    if subset.is_empty() {
        return Err(Error::InvalidCertificate("subset is empty".into()));
    }
    if subset.iter().any(|&i| i >= g.vertex_count()) {
        return Err(Error::InvalidCertificate("subset mentions unknown vertices".into()));
    }
    if !is_forest_mask(g, mask) {
        return Err(Error::InvalidCertificate("induced subgraph is not a forest".into()));
    }
    for &c in &g.components_in_mask(mask) {
        if ctx.multiplicity(c) == 0 {
            return Err(Error::InvalidCertificate(format!(
                "theta is not an eigenvalue of component {:?}",
                g.vertex_ids(&MultiGraph::set_of(c))
            )));
        }
    }
    if !aomoto_conditions_hold(&mut ctx, full, mask) {
        return Err(Error::InvalidCertificate(
            "frontier is not smaller than the component count".into(),
        ));
    }
    if require_refined && !refined_conditions_hold(&mut ctx, full, mask, caps)? {
        return Err(Error::InvalidCertificate(
            "subset is not refined (criticality or surplus Hall condition fails)".into(),
        ));
    }
    Ok(certificate_from_mask(&mut ctx, full, mask, caps))
}

/// Shrink an Aomoto subset to a refined one with no smaller surplus:
/// replace each tree component by its zero class, then drop the components
/// adjacent to the union of violating frontier subsets.
pub fn refine_aomoto(
    g: &MultiGraph,
    theta: &ThetaSpec,
    cert: &AomotoCertificate,
    caps: &Caps,
) -> Result<AomotoCertificate, Error> {
    let subset = cert.subset_of(g)?;
    let input = validate_aomoto_subset(g, theta, &subset, false, caps)
        .map_err(|e| Error::InvalidCertificate(format!("input certificate: {e}")))?;
    let mut ctx = ThetaContext::new(g, theta.clone(), caps)?;
    let full = g.full_mask()?;
    let mask = g.mask_of(&subset);

    // each tree component contributes its own zero class
    let mut s_prime = 0u64;
    for &comp in &g.components_in_mask(mask) {
        for i in 0..g.vertex_count() {
            if comp >> i & 1 == 1 && ctx.class_of(comp, i) == VertexClass::Zero {
                s_prime |= 1 << i;
            }
        }
    }
    // drop components adjacent to the union of violating frontier subsets
    let comps = g.components_in_mask(s_prime);
    let frontier = g.frontier_in_mask(full, s_prime);
    let u_prime = violating_union(g, &comps, frontier, caps)?;
    let mut refined_mask = 0u64;
    for &comp in &comps {
        let touches = (0..g.vertex_count()).any(|u| {
            u_prime >> u & 1 == 1
                && g.adjacency(u).iter().any(|&(_, w)| comp >> w & 1 == 1)
        });
        if !touches {
            refined_mask |= comp;
        }
    }
    let refined_set = MultiGraph::set_of(refined_mask);
    let out = validate_aomoto_subset(g, theta, &refined_set, true, caps)?;
    assert!(
        out.surplus >= input.surplus,
        "refinement may not decrease the surplus"
    );
    Ok(out)
}

/// The unique maximal refined theta-Aomoto subset: start from every
/// theta-critical component of G that is a tree and prune components
/// adjacent to violating frontier subsets until the Hall surplus holds.
pub fn maximal_refined_aomoto(
    g: &MultiGraph,
    theta: &ThetaSpec,
    caps: &Caps,
) -> Result<Option<AomotoCertificate>, Error> {
    let mut ctx = ThetaContext::new(g, theta.clone(), caps)?;
    let full = g.full_mask()?;
    let ge = classify_mask(&mut ctx, full);
    let mut live: Vec<u64> = ge
        .components
        .iter()
        .copied()
        .filter(|&c| is_forest_mask(g, c))
        .collect();
    loop {
        if live.is_empty() {
            return Ok(None);
        }
        let mask = live.iter().fold(0u64, |m, &c| m | c);
        let frontier = g.frontier_in_mask(full, mask);
        let u_prime = violating_union(g, &live, frontier, caps)?;
        if u_prime == 0 {
            let cert = validate_aomoto_subset(g, theta, &MultiGraph::set_of(mask), true, caps)?;
            return Ok(Some(cert));
        }
        live.retain(|&comp| {
            !(0..g.vertex_count()).any(|u| {
                u_prime >> u & 1 == 1
                    && g.adjacency(u).iter().any(|&(_, w)| comp >> w & 1 == 1)
            })
        });
    }
}

/// The density-of-states value at theta: the maximal surplus over Aomoto
/// subsets divided by |V(G)|, witnessed by the maximal refined subset.
#[derive(Clone, Debug, Serialize)]
pub struct DensityReport {
    pub surplus: i64,
    /// surplus / |V(G)|.
    pub tau: String,
    #[serde(skip)]
    pub tau_value: Rational,
    pub maximizer: AomotoCertificate,
}

pub fn density_of_states(
    g: &MultiGraph,
    theta: &ThetaSpec,
    caps: &Caps,
) -> Result<Option<DensityReport>, Error> {
    let Some(maximizer) = maximal_refined_aomoto(g, theta, caps)? else {
        return Ok(None);
    };
    let tau = rat(maximizer.surplus) / rat(g.vertex_count() as i64);
    Ok(Some(DensityReport {
        surplus: maximizer.surplus,
        tau: crate::exact::rational::format_rational(&tau),
        tau_value: tau,
        maximizer,
    }))
}

/// Deleting any cycle preserves the existence of an Aomoto subset; checks
/// both the brute-force search on G minus the cycle and the constructive
/// witness (drop the components the cycle intersects).
pub fn check_robustness_under_cycle_deletion(
    g: &MultiGraph,
    theta: &ThetaSpec,
    cycle: &CyclePath,
    caps: &Caps,
) -> Result<CheckReport, Error> {
    cycle.validate(g)?;
    let Some(cert) = find_aomoto_bruteforce(g, theta, caps)? else {
        return Err(Error::PreconditionViolated(
            "the host graph has no Aomoto subset".into(),
        ));
    };
    let mut report = CheckReport::new("Aomoto subsets survive cycle deletion");
    let support = cycle.support();
    let rest = g.delete_vertices(&support)?;
    if find_aomoto_bruteforce(&rest, theta, caps)?.is_none() {
        report.fail("no Aomoto subset remains after deleting the cycle".to_string());
    }
    // constructive witness: keep the components the cycle does not meet
    let cmask = cycle.support_mask();
    let smask = g.mask_of(&cert.subset_of(g)?);
    let mut witness = 0u64;
    for &comp in &g.components_in_mask(smask) {
        if comp & cmask == 0 {
            witness |= comp;
        }
    }
    let ids: Vec<String> = g.vertex_ids(&MultiGraph::set_of(witness));
    let witness_in_rest: Result<VertexSet, Error> = ids.iter().map(|id| rest.vertex_index(id)).collect();
    match witness_in_rest {
        Ok(set) if !set.is_empty() => {
            if let Err(e) = validate_aomoto_subset(&rest, theta, &set, false, caps) {
                report.fail(format!("constructive witness rejected: {e}"));
            }
        }
        _ => report.fail("constructive witness is empty".to_string()),
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{path3, triangle, twin_triangles};

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn path3_has_aomoto_subset() {
        let cert = find_aomoto_bruteforce(&path3(), &ThetaSpec::from_int(0), &caps())
            .unwrap()
            .expect("exists");
        assert_eq!(cert.subset, vec!["1".to_string(), "3".to_string()]);
        assert_eq!(cert.surplus, 1);
        assert!(cert.refined);
    }

    #[test]
    fn triangle_has_none_at_zero() {
        assert!(find_aomoto_bruteforce(&triangle(), &ThetaSpec::from_int(0), &caps())
            .unwrap()
            .is_none());
        assert!(maximal_refined_aomoto(&triangle(), &ThetaSpec::from_int(0), &caps())
            .unwrap()
            .is_none());
    }

    #[test]
    fn twin_triangles_negative_one() {
        let g = twin_triangles();
        let th = ThetaSpec::from_int(-1);
        let cert = maximal_refined_aomoto(&g, &th, &caps()).unwrap().expect("exists");
        assert_eq!(cert.subset, vec!["1", "2", "4", "5"]);
        assert_eq!(cert.frontier, vec!["3"]);
        assert_eq!(cert.surplus, 1);
        assert!(cert.refined);
        let dos = density_of_states(&g, &th, &caps()).unwrap().expect("exists");
        assert_eq!(dos.surplus, 1);
        assert_eq!(dos.tau, "1/5");
        // brute force agrees on the max surplus
        assert_eq!(max_surplus_bruteforce(&g, &th, &caps()).unwrap(), Some(1));
    }

    #[test]
    fn refine_keeps_refined_input() {
        let g = path3();
        let th = ThetaSpec::from_int(0);
        let cert = find_aomoto_bruteforce(&g, &th, &caps()).unwrap().unwrap();
        let refined = refine_aomoto(&g, &th, &cert, &caps()).unwrap();
        assert_eq!(refined.subset, cert.subset);
        assert!(refined.refined);
    }

    #[test]
    fn refine_shrinks_noncritical_tree() {
        // star K_{1,3} at theta = 0: S = whole star is an Aomoto subset
        // (single tree, eigenvalue 0, empty frontier) but the star is not
        // 0-critical: its zero class is the three leaves... in fact for
        // K_{1,3}, deleting the center drops m from 2 to 0? Verify via the
        // refinement contract only: output refined, surplus no smaller.
        let g = MultiGraph::unweighted(4, &[(0, 1), (0, 2), (0, 3)]);
        let th = ThetaSpec::from_int(0);
        let cert = find_aomoto_bruteforce(&g, &th, &caps()).unwrap().unwrap();
        let refined = refine_aomoto(&g, &th, &cert, &caps()).unwrap();
        assert!(refined.refined);
        assert!(refined.surplus >= cert.surplus);
        let subset = refined.subset_of(&g).unwrap();
        validate_aomoto_subset(&g, &th, &subset, true, &caps()).unwrap();
    }

    #[test]
    fn validator_rejects_junk() {
        let g = twin_triangles();
        let th = ThetaSpec::from_int(-1);
        // not a forest
        assert!(validate_aomoto_subset(&g, &th, &VertexSet::from([0, 1, 2]), false, &caps()).is_err());
        // wrong eigenvalue
        assert!(validate_aomoto_subset(&g, &th, &VertexSet::from([2]), false, &caps()).is_err());
        // empty
        assert!(validate_aomoto_subset(&g, &th, &VertexSet::new(), false, &caps()).is_err());
    }

    #[test]
    fn forest_always_certifies_its_roots() {
        // any forest at a matching root: the zero-class components are
        // trees, so the maximal refined subset is nonempty
        let f = MultiGraph::unweighted(5, &[(0, 1), (1, 2), (3, 4)]);
        let mu = crate::graphpoly::matching::matching_polynomial(&f, &caps()).unwrap();
        for (root, _) in mu.rational_roots() {
            let th = ThetaSpec::rational(root);
            assert!(maximal_refined_aomoto(&f, &th, &caps()).unwrap().is_some());
        }
    }

    #[test]
    fn robustness_under_cycle_deletion_twin_triangles() {
        let g = twin_triangles();
        let th = ThetaSpec::from_int(-1);
        let cycles = g.enumerate_cycles(&caps()).unwrap();
        for c in cycles {
            let rep = check_robustness_under_cycle_deletion(&g, &th, &c, &caps()).unwrap();
            assert!(rep.passed, "{:?}", rep.failures);
        }
    }
}
