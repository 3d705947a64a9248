//! The theta-Gallai-Edmonds decomposition: vertex classification by how
//! deletion moves the multiplicity of theta, theta-critical components, the
//! frontier structure, and the structural identities used both as algorithm
//! steps and as test oracles.

use num::Zero;
use serde::Serialize;

use crate::caps::Caps;
use crate::error::Error;
use crate::exact::poly::Polynomial;
use crate::exact::rational::{format_rational, rat, Rational};
use crate::exact::theta::ThetaSpec;
use crate::graph::{MultiGraph, VertexSet};
use crate::graphpoly::charpoly::characteristic_polynomial;
use crate::graphpoly::matching::{AlphaValue, ThetaContext, VertexClass};

/// Which polynomial the classification compares multiplicities of.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PolynomialKind {
    Matching,
    Characteristic,
}

/// The decomposition of a graph at theta.
#[derive(Clone, Debug)]
pub struct GEPartition {
    pub theta: ThetaSpec,
    pub polynomial: PolynomialKind,
    pub zero_set: VertexSet,
    pub pm_set: VertexSet,
    pub inf_set: VertexSet,
    /// Components of the subgraph induced by the zero class.
    pub critical_components: Vec<VertexSet>,
    /// Frontier of the zero class.
    pub frontier_of_zero: VertexSet,
    pub m_theta: usize,
}

/// Mask-level decomposition of an induced subgraph, sharing the host's
/// polynomial cache.
#[derive(Clone, Debug)]
pub struct GEMasks {
    pub avail: u64,
    pub zero: u64,
    pub pm: u64,
    pub inf: u64,
    pub components: Vec<u64>,
    pub frontier: u64,
    pub m_theta: usize,
}

impl GEMasks {
    pub fn is_critical(&self) -> bool {
        self.zero == self.avail
    }
}

/// Classify the induced subgraph on `avail` by matching-polynomial
/// multiplicities. The multiplicity identity m = cc(zero class) - |frontier|
/// and the containment frontier <= infinity class are theorems for the
/// matching polynomial; violations are implementation bugs.
pub fn classify_mask(ctx: &mut ThetaContext, avail: u64) -> GEMasks {
    let g = ctx.graph();
    let m = ctx.multiplicity(avail);
    let (mut zero, mut pm, mut inf) = (0u64, 0u64, 0u64);
    for i in 0..g.vertex_count() {
        if avail >> i & 1 == 0 {
            continue;
        }
        match ctx.class_of(avail, i) {
            VertexClass::Zero => zero |= 1 << i,
            VertexClass::PlusMinus => pm |= 1 << i,
            VertexClass::Infinity => inf |= 1 << i,
        }
    }
    let components = g.components_in_mask(zero);
    let frontier = g.frontier_in_mask(avail, zero);
    assert!(
        frontier & !inf == 0,
        "frontier of the zero class must lie in the infinity class"
    );
    assert_eq!(
        m as i64,
        components.len() as i64 - frontier.count_ones() as i64,
        "multiplicity identity m = cc - |frontier| failed"
    );
    GEMasks {
        avail,
        zero,
        pm,
        inf,
        components,
        frontier,
        m_theta: m,
    }
}

fn partition_from_masks(
    g: &MultiGraph,
    theta: ThetaSpec,
    kind: PolynomialKind,
    masks: &GEMasks,
) -> GEPartition {
    GEPartition {
        theta,
        polynomial: kind,
        zero_set: MultiGraph::set_of(masks.zero),
        pm_set: MultiGraph::set_of(masks.pm),
        inf_set: MultiGraph::set_of(masks.inf),
        critical_components: masks
            .components
            .iter()
            .map(|&c| MultiGraph::set_of(c))
            .collect(),
        frontier_of_zero: MultiGraph::set_of(masks.frontier),
        m_theta: masks.m_theta,
    }
    .tap_check(g)
}

impl GEPartition {
    fn tap_check(self, g: &MultiGraph) -> Self {
        debug_assert_eq!(
            self.zero_set.len() + self.pm_set.len() + self.inf_set.len(),
            g.vertex_count()
        );
        self
    }

    pub fn to_json(&self, g: &MultiGraph) -> serde_json::Value {
        serde_json::json!({
            "theta": self.theta.to_string(),
            "polynomial": self.polynomial,
            "m_theta": self.m_theta,
            "zero": g.vertex_ids(&self.zero_set),
            "plus_minus": g.vertex_ids(&self.pm_set),
            "infinity": g.vertex_ids(&self.inf_set),
            "critical_components": self.critical_components.iter()
                .map(|c| g.vertex_ids(c)).collect::<Vec<_>>(),
            "frontier_of_zero": g.vertex_ids(&self.frontier_of_zero),
        })
    }
}

/// Gallai-Edmonds decomposition at theta via the matching polynomial.
pub fn classify(g: &MultiGraph, theta: &ThetaSpec, caps: &Caps) -> Result<GEPartition, Error> {
    let mut ctx = ThetaContext::new(g, theta.clone(), caps)?;
    let masks = classify_mask(&mut ctx, g.full_mask()?);
    Ok(partition_from_masks(g, theta.clone(), PolynomialKind::Matching, &masks))
}

/// Classification by characteristic-polynomial multiplicities. The
/// matching-polynomial structure theorems (multiplicity identity, frontier
/// containment) genuinely fail here, so nothing is asserted.
pub fn classify_characteristic(
    g: &MultiGraph,
    theta: &ThetaSpec,
    caps: &Caps,
) -> Result<GEPartition, Error> {
    let phi = characteristic_polynomial(g, caps)?;
    let m = theta.multiplicity_in(&phi)?;
    let mut zero = VertexSet::new();
    let mut pm = VertexSet::new();
    let mut inf = VertexSet::new();
    for i in 0..g.vertex_count() {
        let sub = g.delete_vertices(&VertexSet::from([i]))?;
        let mi = theta.multiplicity_in(&characteristic_polynomial(&sub, caps)?)?;
        if mi + 1 == m {
            zero.insert(i);
        } else if mi == m + 1 {
            inf.insert(i);
        } else {
            pm.insert(i);
        }
    }
    let zero_mask = g.mask_of(&zero);
    let components = g
        .components_in_mask(zero_mask)
        .into_iter()
        .map(MultiGraph::set_of)
        .collect();
    let frontier = g.frontier(&zero)?;
    Ok(GEPartition {
        theta: theta.clone(),
        polynomial: PolynomialKind::Characteristic,
        zero_set: zero,
        pm_set: pm,
        inf_set: inf,
        critical_components: components,
        frontier_of_zero: frontier,
        m_theta: m,
    })
}

/// Is every vertex in the zero class?
pub fn is_theta_critical(g: &MultiGraph, theta: &ThetaSpec, caps: &Caps) -> Result<bool, Error> {
    let mut ctx = ThetaContext::new(g, theta.clone(), caps)?;
    let full = g.full_mask()?;
    let masks = classify_mask(&mut ctx, full);
    Ok(masks.is_critical())
}

/// Pass/fail report with human-readable witnesses for every failure.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub description: String,
    pub passed: bool,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn new(description: impl Into<String>) -> Self {
        CheckReport {
            description: description.into(),
            passed: true,
            failures: vec![],
        }
    }

    pub fn fail(&mut self, witness: impl Into<String>) {
        self.passed = false;
        self.failures.push(witness.into());
    }
}

fn fmt_alpha(a: &AlphaValue) -> String {
    match a {
        AlphaValue::Zero => "0".into(),
        AlphaValue::Infinity => "inf".into(),
        AlphaValue::Finite(v) => format_rational(v),
    }
}

/// lambda_{i~j}^G(x0) = -sum over paths P from i to j of
/// lambda_P (mu^{G\P}(x0) / mu^{G\{i,j}}(x0))^2, with lambda_P the product
/// of -lambda_e over the path's edges.
pub fn contraction_lambda(
    g: &MultiGraph,
    i: usize,
    j: usize,
    x0: &Rational,
    caps: &Caps,
) -> Result<Rational, Error> {
    if i == j {
        return Err(Error::SameVertex);
    }
    let mut ctx = ThetaContext::new(g, ThetaSpec::rational(x0.clone()), caps)?;
    let full = g.full_mask()?;
    let denom_mask = full & !(1 << i) & !(1 << j);
    let den = ctx.mu.mu(denom_mask).eval(x0);
    if den.is_zero() {
        return Err(Error::PoleAtSample);
    }
    let mut total = rat(0);
    for p in g.enumerate_paths_between(i, j, caps)? {
        let mut lambda_p = rat(1);
        for &e in &p.edges {
            lambda_p *= -g.lambda(e);
        }
        let num = ctx.mu.mu(full & !p.support_mask()).eval(x0);
        let ratio = num / &den;
        total += lambda_p * (&ratio * &ratio);
    }
    Ok(-total)
}

/// After deleting a frontier vertex of the zero class, every other vertex
/// keeps its alpha value at theta. Rational theta only (finite alpha values
/// are compared exactly).
pub fn check_stability(g: &MultiGraph, theta: &Rational, caps: &Caps) -> Result<CheckReport, Error> {
    let mut ctx = ThetaContext::new(g, ThetaSpec::rational(theta.clone()), caps)?;
    let full = g.full_mask()?;
    let masks = classify_mask(&mut ctx, full);
    let mut report = CheckReport::new("alpha stability under frontier deletion");
    for i in 0..g.vertex_count() {
        if masks.frontier >> i & 1 == 0 {
            continue;
        }
        for j in 0..g.vertex_count() {
            if j == i {
                continue;
            }
            let before = ctx.alpha(full, j)?;
            let after = ctx.alpha(full & !(1 << i), j)?;
            if before != after {
                report.fail(format!(
                    "deleting frontier vertex {} changed alpha at {}: {} -> {}",
                    g.vertex(i).id,
                    g.vertex(j).id,
                    fmt_alpha(&before),
                    fmt_alpha(&after)
                ));
            }
        }
    }
    Ok(report)
}

fn component_containing(
    masks: &GEMasks,
    z: u64,
) -> Result<u64, Error> {
    if z == 0 {
        return Err(Error::NotInsideCriticalComponent);
    }
    masks
        .components
        .iter()
        .copied()
        .find(|&c| z & !c == 0)
        .ok_or(Error::NotInsideCriticalComponent)
}

/// Deleting a subset of one theta-critical component moves the multiplicity
/// of the host exactly as it moves the multiplicity of the component.
pub fn check_critical_remove(
    g: &MultiGraph,
    theta: &ThetaSpec,
    z: &VertexSet,
    caps: &Caps,
) -> Result<CheckReport, Error> {
    let mut report = CheckReport::new("multiplicity drop localizes to the critical component");
    if z.is_empty() {
        return Ok(report); // 0 = 0
    }
    let mut ctx = ThetaContext::new(g, theta.clone(), caps)?;
    let full = g.full_mask()?;
    let masks = classify_mask(&mut ctx, full);
    let zmask = g.mask_of(z);
    let h = component_containing(&masks, zmask)?;
    let mh = ctx.multiplicity(h);
    if mh != 1 {
        report.fail(format!(
            "connected critical component has multiplicity {mh}, not 1"
        ));
    }
    let lhs = ctx.multiplicity(full & !zmask) as i64 - masks.m_theta as i64;
    let rhs = ctx.multiplicity(h & !zmask) as i64 - mh as i64;
    if lhs != rhs {
        report.fail(format!(
            "m(G\\Z)-m(G) = {lhs} but m(H\\Z)-m(H) = {rhs} for Z = {:?}",
            g.vertex_ids(z)
        ));
    }
    Ok(report)
}

/// Alpha values inside a theta-critical component are blind to the rest of
/// the graph, even after deleting part of the component. Rational theta.
pub fn check_critical_stability(
    g: &MultiGraph,
    theta: &Rational,
    z: &VertexSet,
    caps: &Caps,
) -> Result<CheckReport, Error> {
    let mut report = CheckReport::new("alpha agreement between host and critical component");
    if z.is_empty() {
        return Ok(report);
    }
    let mut ctx = ThetaContext::new(g, ThetaSpec::rational(theta.clone()), caps)?;
    let full = g.full_mask()?;
    let masks = classify_mask(&mut ctx, full);
    let zmask = g.mask_of(z);
    let h = component_containing(&masks, zmask)?;
    for i in 0..g.vertex_count() {
        if h >> i & 1 == 0 || zmask >> i & 1 == 1 {
            continue;
        }
        let host = ctx.alpha(full & !zmask, i)?;
        let comp = ctx.alpha(h & !zmask, i)?;
        if host != comp {
            report.fail(format!(
                "alpha at {} differs: host {} vs component {}",
                g.vertex(i).id,
                fmt_alpha(&host),
                fmt_alpha(&comp)
            ));
        }
    }
    Ok(report)
}

/// Surplus Hall condition on the frontier: every nonempty subset U of the
/// frontier of the zero class is adjacent to at least |U|+1 theta-critical
/// components. Brute force over subsets.
pub fn check_matched_special(
    g: &MultiGraph,
    theta: &ThetaSpec,
    caps: &Caps,
) -> Result<CheckReport, Error> {
    let mut ctx = ThetaContext::new(g, theta.clone(), caps)?;
    let full = g.full_mask()?;
    let masks = classify_mask(&mut ctx, full);
    let frontier: Vec<usize> = (0..g.vertex_count())
        .filter(|&i| masks.frontier >> i & 1 == 1)
        .collect();
    if frontier.len() > caps.frontier {
        return Err(Error::FrontierTooLarge {
            size: frontier.len(),
            cap: caps.frontier,
        });
    }
    let mut report = CheckReport::new("frontier surplus Hall condition");
    // adjacency bitmap: frontier vertex -> critical components it touches
    let adj: Vec<u64> = frontier
        .iter()
        .map(|&u| {
            let mut m = 0u64;
            for (k, &comp) in masks.components.iter().enumerate() {
                if g.adjacency(u).iter().any(|&(_, w)| comp >> w & 1 == 1) {
                    m |= 1 << k;
                }
            }
            m
        })
        .collect();
    for sub in 1u64..(1 << frontier.len()) {
        let mut comps = 0u64;
        for (k, a) in adj.iter().enumerate() {
            if sub >> k & 1 == 1 {
                comps |= a;
            }
        }
        let size = sub.count_ones() as usize;
        if (comps.count_ones() as usize) < size + 1 {
            let ids: Vec<String> = frontier
                .iter()
                .enumerate()
                .filter(|(k, _)| sub >> k & 1 == 1)
                .map(|(_, &u)| g.vertex(u).id.clone())
                .collect();
            report.fail(format!(
                "U = {:?} is adjacent to only {} critical components",
                ids,
                comps.count_ones()
            ));
        }
    }
    Ok(report)
}

/// Alpha-recursion identity at a sample point:
/// alpha_i^G = alpha_i^{G\j} + lambda_{i~j} / alpha_j^{G\i}, as an exact
/// identity between rationals (skipped at poles).
pub fn check_contraction_identity(
    g: &MultiGraph,
    i: usize,
    j: usize,
    x0: &Rational,
    caps: &Caps,
) -> Result<Option<bool>, Error> {
    if i == j {
        return Err(Error::SameVertex);
    }
    let mut ctx = ThetaContext::new(g, ThetaSpec::rational(x0.clone()), caps)?;
    let full = g.full_mask()?;
    // plain rational evaluations; bail out (None) on any pole
    let mu = |ctx: &mut ThetaContext, mask: u64| ctx.mu.mu(mask).eval(x0);
    let m_full = mu(&mut ctx, full);
    let m_no_i = mu(&mut ctx, full & !(1 << i));
    let m_no_j = mu(&mut ctx, full & !(1 << j));
    let m_no_ij = mu(&mut ctx, full & !(1 << i) & !(1 << j));
    if m_no_i.is_zero() || m_no_j.is_zero() || m_no_ij.is_zero() {
        return Ok(None);
    }
    let alpha_i_g = &m_full / &m_no_i;
    let alpha_i_gj = &m_no_j / &m_no_ij;
    let alpha_j_gi = &m_no_i / &m_no_ij;
    let lam = contraction_lambda(g, i, j, x0, caps)?;
    Ok(Some(alpha_i_g == alpha_i_gj + lam / alpha_j_gi))
}

/// Evaluate mu of the whole graph at a rational point (convenience for
/// pole-avoidance in tests).
pub fn mu_value_at(g: &MultiGraph, x0: &Rational, caps: &Caps) -> Result<Rational, Error> {
    let p = crate::graphpoly::matching::matching_polynomial(g, caps)?;
    Ok(p.eval(x0))
}

/// All theta samples the randomized suites use for one instance: every
/// rational root of mu, both roots of every irreducible quadratic factor,
/// and `extra` random non-roots.
pub fn theta_corpus(
    g: &MultiGraph,
    caps: &Caps,
    extra: &[Rational],
) -> Result<Vec<ThetaSpec>, Error> {
    let mu = crate::graphpoly::matching::matching_polynomial(g, caps)?;
    let mut out = Vec::new();
    if mu.degree() >= 1 {
        for (root, _) in mu.rational_roots() {
            out.push(ThetaSpec::rational(root));
        }
        for q in quadratic_factors(&mu)? {
            for (lo, hi) in q.isolate_real_roots()? {
                out.push(ThetaSpec::algebraic(q.clone(), lo, hi)?);
            }
        }
    }
    for x in extra {
        if mu.eval(x).is_zero() {
            continue; // stays a root sample; already covered
        }
        out.push(ThetaSpec::rational(x.clone()));
    }
    Ok(out)
}

/// Irreducible quadratic integer factors of p (content-free), via the
/// factor-combination search on the rational-root-free part.
pub fn quadratic_factors(p: &Polynomial) -> Result<Vec<Polynomial>, Error> {
    let mut rem = p.primitive_integer();
    if rem.degree() < 2 {
        return Ok(vec![]);
    }
    for (r, m) in rem.rational_roots() {
        for _ in 0..m {
            rem = rem.divexact(&Polynomial::x_minus(&r)).unwrap();
        }
    }
    rem = rem.primitive_integer();
    let mut out: Vec<Polynomial> = Vec::new();
    // peel quadratic factors by Kronecker interpolation on three points
    'outer: while rem.degree() >= 2 {
        if rem.degree() == 2 {
            if !out.contains(&rem) {
                out.push(rem.clone());
            }
            break;
        }
        let pts = [rat(0), rat(1), rat(-1)];
        let vals: Vec<Rational> = pts.iter().map(|x| rem.eval(x)).collect();
        if vals.iter().any(|v| v.is_zero()) {
            break; // rational roots were already removed; degenerate case
        }
        let div_lists: Vec<Vec<Rational>> = vals
            .iter()
            .map(|v| {
                let mut ds = Vec::new();
                let mut d = num::BigInt::from(1);
                let n = num::Signed::abs(v.numer());
                while &d * &d <= n {
                    if (&n % &d).is_zero() {
                        ds.push(Rational::from_integer(d.clone()));
                        ds.push(Rational::from_integer(-d.clone()));
                        let q = &n / &d;
                        if q != d {
                            ds.push(Rational::from_integer(q.clone()));
                            ds.push(Rational::from_integer(-q));
                        }
                    }
                    d += 1;
                }
                ds
            })
            .collect();
        for a in &div_lists[0] {
            for b in &div_lists[1] {
                for c in &div_lists[2] {
                    // interpolate q with q(0)=a, q(1)=b, q(-1)=c
                    let c2 = (b + c - a - a) / rat(2);
                    let c1 = (b - c) / rat(2);
                    let q = Polynomial::from_coeffs(vec![a.clone(), c1, c2]);
                    if q.degree() == 2
                        && q.has_integer_coeffs()
                        && q.rational_roots().is_empty()
                    {
                        if let Ok(quo) = rem.divexact(&q) {
                            let qn = q.primitive_integer();
                            if !out.contains(&qn) {
                                out.push(qn);
                            }
                            rem = quo.primitive_integer();
                            continue 'outer;
                        }
                    }
                }
            }
        }
        break; // no quadratic factor in the remainder
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{path3, triangle, twin_triangles};

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn path3_classification() {
        let ge = classify(&path3(), &ThetaSpec::from_int(0), &caps()).unwrap();
        assert_eq!(ge.zero_set, VertexSet::from([0, 2]));
        assert_eq!(ge.inf_set, VertexSet::from([1]));
        assert!(ge.pm_set.is_empty());
        assert_eq!(ge.m_theta, 1);
        assert_eq!(ge.critical_components.len(), 2);
        assert_eq!(ge.frontier_of_zero, VertexSet::from([1]));
    }

    #[test]
    fn triangle_is_zero_critical() {
        let ge = classify(&triangle(), &ThetaSpec::from_int(0), &caps()).unwrap();
        assert_eq!(ge.zero_set.len(), 3);
        assert_eq!(ge.m_theta, 1);
        assert!(ge.frontier_of_zero.is_empty());
        assert!(is_theta_critical(&triangle(), &ThetaSpec::from_int(0), &caps()).unwrap());
    }

    #[test]
    fn single_vertex_pm() {
        let g = MultiGraph::unweighted(1, &[]);
        let ge = classify(&g, &ThetaSpec::from_int(1), &caps()).unwrap();
        assert_eq!(ge.pm_set, VertexSet::from([0]));
        assert_eq!(ge.m_theta, 0);
        assert!(!is_theta_critical(&g, &ThetaSpec::from_int(1), &caps()).unwrap());
        // but it is c-critical at its own weight
        assert!(is_theta_critical(&g, &ThetaSpec::from_int(0), &caps()).unwrap());
    }

    #[test]
    fn edge_not_critical_at_zero() {
        let g = MultiGraph::unweighted(2, &[(0, 1)]);
        assert!(!is_theta_critical(&g, &ThetaSpec::from_int(0), &caps()).unwrap());
    }

    #[test]
    fn contraction_lambda_examples() {
        // single edge: lambda_{i~j} = -1, independent of sample point
        let e = MultiGraph::unweighted(2, &[(0, 1)]);
        assert_eq!(contraction_lambda(&e, 0, 1, &rat(2), &caps()).unwrap(), rat(-1));
        // path i-k-j at x0 = 3: -(1/3)^2
        let p = path3();
        assert_eq!(
            contraction_lambda(&p, 0, 2, &rat(3), &caps()).unwrap(),
            crate::exact::rational::ratio(-1, 9)
        );
        // disconnected pair: no paths, lambda = 0
        let d = MultiGraph::unweighted(2, &[]);
        assert_eq!(contraction_lambda(&d, 0, 1, &rat(1), &caps()).unwrap(), rat(0));
        // pole
        assert!(matches!(
            contraction_lambda(&p, 0, 2, &rat(0), &caps()),
            Err(Error::PoleAtSample)
        ));
    }

    #[test]
    fn contraction_identity_on_small_graphs() {
        for g in [triangle(), twin_triangles(), path3()] {
            let mut checked = 0;
            for x0 in [rat(2), rat(5), crate::exact::rational::ratio(7, 2)] {
                for i in 0..g.vertex_count() {
                    for j in 0..g.vertex_count() {
                        if i == j {
                            continue;
                        }
                        if let Some(ok) =
                            check_contraction_identity(&g, i, j, &x0, &caps()).unwrap()
                        {
                            assert!(ok, "contraction identity failed at ({i},{j},{x0})");
                            checked += 1;
                        }
                    }
                }
            }
            assert!(checked > 0);
        }
    }

    #[test]
    fn stability_on_path3() {
        let rep = check_stability(&path3(), &rat(0), &caps()).unwrap();
        assert!(rep.passed, "{:?}", rep.failures);
    }

    #[test]
    fn matched_special_on_path3() {
        let rep = check_matched_special(&path3(), &ThetaSpec::from_int(0), &caps()).unwrap();
        assert!(rep.passed, "{:?}", rep.failures);
        // vacuous when the frontier is empty
        let rep2 = check_matched_special(&triangle(), &ThetaSpec::from_int(0), &caps()).unwrap();
        assert!(rep2.passed);
    }

    #[test]
    fn critical_remove_on_disjoint_union() {
        // triangle plus isolated vertex: deleting one triangle vertex drops
        // both sides by one
        let g = MultiGraph::unweighted(4, &[(0, 1), (0, 2), (1, 2)]);
        let rep =
            check_critical_remove(&g, &ThetaSpec::from_int(0), &VertexSet::from([0]), &caps())
                .unwrap();
        assert!(rep.passed, "{:?}", rep.failures);
        let vac =
            check_critical_remove(&g, &ThetaSpec::from_int(0), &VertexSet::new(), &caps()).unwrap();
        assert!(vac.passed);
    }

    #[test]
    fn critical_remove_rejects_outside_sets() {
        let g = path3();
        // {0, 2} spans two different critical components
        assert!(matches!(
            check_critical_remove(&g, &ThetaSpec::from_int(0), &VertexSet::from([0, 2]), &caps()),
            Err(Error::NotInsideCriticalComponent)
        ));
    }

    #[test]
    fn critical_stability_triangle_in_host() {
        // triangle with a pendant path attached through an infinity vertex
        let g = MultiGraph::unweighted(5, &[(0, 1), (0, 2), (1, 2), (0, 3), (3, 4)]);
        let ge = classify(&g, &ThetaSpec::from_int(0), &caps()).unwrap();
        // find a z inside a critical component of size > 1
        let comp = ge
            .critical_components
            .iter()
            .find(|c| c.len() > 1)
            .expect("triangle component");
        let z = VertexSet::from([*comp.iter().next().unwrap()]);
        let rep = check_critical_stability(&g, &rat(0), &z, &caps()).unwrap();
        assert!(rep.passed, "{:?}", rep.failures);
    }

    #[test]
    fn characteristic_classification_differs_on_twin_triangles() {
        // at theta = -1 the characteristic classification puts every vertex
        // in the zero class, including the articulation vertex
        let g = twin_triangles();
        let ge = classify_characteristic(&g, &ThetaSpec::from_int(-1), &caps()).unwrap();
        assert_eq!(ge.m_theta, 3);
        assert_eq!(ge.zero_set.len(), 5);
        // the matching classification keeps the center out
        let gm = classify(&g, &ThetaSpec::from_int(-1), &caps()).unwrap();
        assert_eq!(gm.zero_set, VertexSet::from([0, 1, 3, 4]));
        assert_eq!(gm.frontier_of_zero, VertexSet::from([2]));
        assert_eq!(gm.m_theta, 1);
    }

    #[test]
    fn theta_corpus_includes_quadratics() {
        // P4: mu = x^4 - 3x^2 + 1 = (x^2-x-1)(x^2+x-1): four quadratic roots
        let p4 = MultiGraph::unweighted(4, &[(0, 1), (1, 2), (2, 3)]);
        let thetas = theta_corpus(&p4, &caps(), &[rat(7)]).unwrap();
        let algebraic = thetas
            .iter()
            .filter(|t| t.as_rational().is_none())
            .count();
        assert_eq!(algebraic, 4);
        assert!(thetas.iter().any(|t| t.as_rational() == Some(&rat(7))));
    }
}
