//! Finite quotients of the maximal abelian cover, truncated universal-cover
//! balls, and the floating spectral probe.
//!
//! The quotient with modulus n replaces the free abelian group on the
//! non-forest edges S_+ by (Z/n)^{S_+}: spanning-forest edges lift
//! identically, and the s-th non-forest edge shifts the s-th coordinate.
//! For n dividing 4, the characters of the group take values in the exact
//! fourth roots of unity, so the cover's characteristic polynomial factors
//! exactly into twisted characteristic polynomials of the base.

use serde::Serialize;

use crate::caps::Caps;
use crate::error::Error;
use crate::exact::poly::Polynomial;
use crate::exact::theta::ThetaSpec;
use crate::gallai::CheckReport;
use crate::graph::MultiGraph;
use crate::graphpoly::charpoly::{
    adjacency_matrix, characteristic_polynomial, det_x_minus_a_at, twisted_characteristic,
    Phase, PhaseAssignment, TwistedPoly,
};

/// A finite quotient cover of the maximal abelian cover.
pub struct QuotientCover {
    pub base: MultiGraph,
    pub modulus: usize,
    /// Non-forest edge indices of the base, in generator order.
    pub s_plus: Vec<usize>,
    pub cover: MultiGraph,
    /// cover vertex id -> base vertex id.
    pub projection: Vec<(String, String)>,
}

fn group_elements(n: usize, s: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![0; s]];
    for k in 0..s {
        let mut next = Vec::with_capacity(out.len() * n);
        for el in &out {
            for v in 0..n {
                let mut e = el.clone();
                e[k] = v;
                next.push(e);
            }
        }
        out = next;
    }
    out.sort();
    out
}

fn group_label(el: &[usize]) -> String {
    if el.is_empty() {
        "0".to_string()
    } else {
        el.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// Build the (Z/n)^{S_+} quotient cover.
pub fn build_quotient_cover(
    g: &MultiGraph,
    n: usize,
    caps: &Caps,
) -> Result<QuotientCover, Error> {
    if n == 0 {
        return Err(Error::PreconditionViolated("modulus must be >= 1".into()));
    }
    let (_, s_plus) = g.spanning_forest();
    let s = s_plus.len();
    let group_size = n.checked_pow(s as u32).ok_or(Error::CoverTooLarge {
        size: usize::MAX,
        cap: caps.cover_vertices,
    })?;
    let total = g.vertex_count() * group_size;
    if total > caps.cover_vertices {
        return Err(Error::CoverTooLarge {
            size: total,
            cap: caps.cover_vertices,
        });
    }
    let elements = group_elements(n, s);
    let generator_of: std::collections::HashMap<usize, usize> = s_plus
        .iter()
        .enumerate()
        .map(|(k, &e)| (e, k))
        .collect();
    let mut vertices = Vec::with_capacity(total);
    let mut projection = Vec::with_capacity(total);
    for el in &elements {
        for v in g.vertices() {
            let id = format!("{}@{}", v.id, group_label(el));
            projection.push((id.clone(), v.id.clone()));
            vertices.push((id, v.weight.clone()));
        }
    }
    let mut edges = Vec::new();
    for (e, rec) in g.edges().iter().enumerate() {
        for el in &elements {
            let mut target = el.clone();
            if let Some(&k) = generator_of.get(&e) {
                target[k] = (target[k] + 1) % n;
            }
            edges.push((
                format!("{}@{}", rec.id, group_label(el)),
                format!("{}@{}", g.vertex(rec.u).id, group_label(el)),
                format!("{}@{}", g.vertex(rec.v).id, group_label(&target)),
                rec.rho.clone(),
            ));
        }
    }
    let cover = MultiGraph::new(vertices, edges)?;
    // covering-space bookkeeping: each base component with s_i of the
    // generators lifts to n^(s - s_i) components
    let mut expected = 0usize;
    for comp in g.components() {
        let s_i = s_plus
            .iter()
            .filter(|&&e| comp.contains(&g.edge(e).u))
            .count();
        expected += group_size / n.pow(s_i as u32);
    }
    assert_eq!(
        cover.components().len(),
        expected,
        "cover component count disagrees with covering theory"
    );
    assert!(cover.components().len() >= g.components().len());
    Ok(QuotientCover {
        base: g.clone(),
        modulus: n,
        s_plus,
        cover,
        projection,
    })
}

/// Phases for the character c of (Z/n)^{S_+}: the s-th non-forest edge gets
/// i^(4 c_s / n). Only n in {1, 2, 4} is exact.
pub fn character_phases(
    s_plus: &[usize],
    character: &[usize],
    n: usize,
) -> Result<PhaseAssignment, Error> {
    if !matches!(n, 1 | 2 | 4) {
        return Err(Error::PreconditionViolated(
            "exact characters need modulus 1, 2, or 4".into(),
        ));
    }
    let mut ph = PhaseAssignment::all_ones();
    for (k, &e) in s_plus.iter().enumerate() {
        let power = (4 / n) * character[k] % 4;
        ph.set(e, Phase::Exact(power as u8));
    }
    Ok(ph)
}

/// phi of the cover as the exact product of the twisted characteristic
/// polynomials over all characters (n | 4).
pub fn cover_char_poly_by_characters(
    g: &MultiGraph,
    n: usize,
    caps: &Caps,
) -> Result<Polynomial, Error> {
    let (_, s_plus) = g.spanning_forest();
    let mut product = Polynomial::one();
    for character in group_elements(n, s_plus.len()) {
        let ph = character_phases(&s_plus, &character, n)?;
        match twisted_characteristic(g, &ph, caps)? {
            TwistedPoly::Exact(p) => product = &product * &p,
            TwistedPoly::Numeric(_) => unreachable!("fourth-root phases are exact"),
        }
    }
    Ok(product)
}

/// Verify phi^{cover} = prod over characters of phi_xi exactly.
pub fn character_factorization_check(
    g: &MultiGraph,
    n: usize,
    caps: &Caps,
) -> Result<CheckReport, Error> {
    let mut report = CheckReport::new(format!("character factorization at modulus {n}"));
    let q = build_quotient_cover(g, n, caps)?;
    let direct = characteristic_polynomial(&q.cover, caps)?;
    let product = cover_char_poly_by_characters(g, n, caps)?;
    if direct != product {
        report.fail(format!(
            "cover characteristic polynomial {direct} differs from character product {product}"
        ));
    }
    Ok(report)
}

/// Is theta a root of the cover's characteristic polynomial? Exact: a
/// determinant evaluation for rational theta, the character product for
/// algebraic theta.
pub fn theta_is_root_of_cover_char(
    g: &MultiGraph,
    theta: &ThetaSpec,
    n: usize,
    caps: &Caps,
) -> Result<bool, Error> {
    let q = build_quotient_cover(g, n, caps)?;
    match theta.as_rational() {
        Some(t) => {
            let a = adjacency_matrix(&q.cover);
            let d = det_x_minus_a_at(&a, t);
            if !d.is_real() {
                return Err(Error::NonVanishingImaginaryPart);
            }
            Ok(num::Zero::is_zero(&d.re))
        }
        None => {
            let p = cover_char_poly_by_characters(g, n, caps)?;
            Ok(theta.multiplicity_in(&p)? >= 1)
        }
    }
}

/// Truncated universal cover: the tree of non-backtracking walks.
pub struct CoverBall {
    pub base: MultiGraph,
    pub root: usize,
    pub radius: usize,
    pub ball: MultiGraph,
    pub ball_root: usize,
    /// ball vertex id -> base vertex id.
    pub projection: Vec<(String, String)>,
}

/// Walks may revisit vertices; backtracking means immediately re-traversing
/// the same edge record in reverse, so parallel edges allow an immediate
/// return through the other record, and a loop may be traversed repeatedly
/// in the same direction.
pub fn build_cover_ball(
    g: &MultiGraph,
    root: usize,
    radius: usize,
    caps: &Caps,
) -> Result<CoverBall, Error> {
    if root >= g.vertex_count() {
        return Err(Error::UnknownVertex(format!("#{root}")));
    }
    struct Node {
        endpoint: usize,
        /// arc we arrived by: (edge record, traversed u->v?)
        arrived: Option<(usize, bool)>,
        parent: Option<usize>,
        depth: usize,
    }
    let mut nodes = vec![Node {
        endpoint: root,
        arrived: None,
        parent: None,
        depth: 0,
    }];
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(at) = queue.pop_front() {
        if nodes[at].depth == radius {
            continue;
        }
        let endpoint = nodes[at].endpoint;
        let arrived = nodes[at].arrived;
        let depth = nodes[at].depth;
        // outgoing arcs from `endpoint`: for each incident record, one arc
        // per traversal direction that starts here
        for (e, rec) in g.edges().iter().enumerate() {
            let mut directions: Vec<bool> = Vec::new();
            if rec.u == endpoint {
                directions.push(true);
            }
            if rec.v == endpoint {
                directions.push(false);
            }
            for dir in directions {
                // reverse of the arrival arc is forbidden
                if let Some((ae, adir)) = arrived {
                    if ae == e && adir != dir {
                        continue;
                    }
                }
                let next = if dir { rec.v } else { rec.u };
                nodes.push(Node {
                    endpoint: next,
                    arrived: Some((e, dir)),
                    parent: Some(at),
                    depth: depth + 1,
                });
                if nodes.len() > caps.ball_vertices {
                    return Err(Error::BallTooLarge {
                        cap: caps.ball_vertices,
                    });
                }
                queue.push_back(nodes.len() - 1);
            }
        }
    }
    let mut vertices = Vec::with_capacity(nodes.len());
    let mut projection = Vec::with_capacity(nodes.len());
    for (k, node) in nodes.iter().enumerate() {
        let id = format!("w{k}");
        projection.push((id.clone(), g.vertex(node.endpoint).id.clone()));
        vertices.push((id, g.weight(node.endpoint).clone()));
    }
    let mut edges = Vec::new();
    for (k, node) in nodes.iter().enumerate() {
        if let (Some(parent), Some((e, dir))) = (node.parent, node.arrived) {
            let rho = if dir {
                g.edge(e).rho.clone()
            } else {
                g.edge(e).rho.conj()
            };
            edges.push((format!("b{k}"), format!("w{parent}"), format!("w{k}"), rho));
        }
    }
    let ball = MultiGraph::new(vertices, edges)?;
    debug_assert!(ball.is_forest(), "a walk tree must be a tree");
    Ok(CoverBall {
        base: g.clone(),
        root,
        radius,
        ball,
        ball_root: 0,
        projection,
    })
}

/// Floating eigenvalue report. Never authoritative: the exact conditions
/// decide, this only illustrates.
#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub matrix_dim: usize,
    pub theta: f64,
    pub min_distance_to_theta: f64,
    pub eigenvalues_within_tolerance: usize,
    pub tolerance: f64,
    /// Complex weights are probed through the doubled real embedding, which
    /// reports every eigenvalue twice.
    pub doubled: bool,
    pub authoritative: bool,
}

pub fn spectral_probe(
    g: &MultiGraph,
    theta: &ThetaSpec,
    caps: &Caps,
) -> Result<ProbeReport, Error> {
    use crate::exact::rational::to_f64;
    let a = adjacency_matrix(g);
    let n = a.len();
    let complex = a
        .iter()
        .any(|row| row.iter().any(|z| !num::Zero::is_zero(&z.im)));
    let dim = if complex { 2 * n } else { n };
    if dim > caps.probe_dimension {
        return Err(Error::GraphTooLarge {
            op: "spectral_probe",
            size: dim,
            cap: caps.probe_dimension,
        });
    }
    let mut m = nalgebra::DMatrix::<f64>::zeros(dim, dim);
    for i in 0..n {
        for j in 0..n {
            let re = to_f64(&a[i][j].re);
            let im = to_f64(&a[i][j].im);
            if complex {
                // [[Re, -Im], [Im, Re]] is symmetric when A is Hermitian
                m[(i, j)] = re;
                m[(i + n, j + n)] = re;
                m[(i, j + n)] = -im;
                m[(i + n, j)] = im;
            } else {
                m[(i, j)] = re;
            }
        }
    }
    let eigen = nalgebra::SymmetricEigen::new(m);
    let t = theta.approx_f64();
    let tolerance = 1e-9;
    let mut min_dist = f64::INFINITY;
    let mut close = 0usize;
    for ev in eigen.eigenvalues.iter() {
        let d = (ev - t).abs();
        if d < min_dist {
            min_dist = d;
        }
        if d <= tolerance {
            close += 1;
        }
    }
    if complex {
        close /= 2;
    }
    Ok(ProbeReport {
        matrix_dim: dim,
        theta: t,
        min_distance_to_theta: min_dist,
        eigenvalues_within_tolerance: close,
        tolerance,
        doubled: complex,
        authoritative: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;
    use crate::fixtures::{cycle, triangle, twin_triangles};

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn trivial_quotient_is_the_base() {
        let g = twin_triangles();
        let q = build_quotient_cover(&g, 1, &caps()).unwrap();
        assert_eq!(q.cover.vertex_count(), g.vertex_count());
        assert_eq!(q.cover.edge_count(), g.edge_count());
        assert_eq!(
            characteristic_polynomial(&q.cover, &caps()).unwrap(),
            characteristic_polynomial(&g, &caps()).unwrap()
        );
    }

    #[test]
    fn double_cover_of_triangle_is_hexagon() {
        let q = build_quotient_cover(&triangle(), 2, &caps()).unwrap();
        assert_eq!(q.cover.vertex_count(), 6);
        assert_eq!(q.cover.edge_count(), 6);
        assert!(q.cover.is_connected());
        assert!(q.cover.is_regular());
        assert_eq!(
            characteristic_polynomial(&q.cover, &caps()).unwrap(),
            characteristic_polynomial(&cycle(6), &caps()).unwrap()
        );
    }

    #[test]
    fn tree_covers_are_disjoint_copies_of_nothing_new() {
        let tree = MultiGraph::unweighted(4, &[(0, 1), (1, 2), (1, 3)]);
        let q = build_quotient_cover(&tree, 3, &caps()).unwrap();
        // S_+ is empty: the cover is the tree itself
        assert_eq!(q.cover.vertex_count(), 4);
        assert_eq!(q.cover.edge_count(), 3);
    }

    #[test]
    fn factorization_n2_triangle() {
        let rep = character_factorization_check(&triangle(), 2, &caps()).unwrap();
        assert!(rep.passed, "{:?}", rep.failures);
    }

    #[test]
    fn factorization_n2_twin_triangles() {
        let rep = character_factorization_check(&twin_triangles(), 2, &caps()).unwrap();
        assert!(rep.passed, "{:?}", rep.failures);
    }

    #[test]
    fn factorization_n1_is_trivial() {
        let rep = character_factorization_check(&twin_triangles(), 1, &caps()).unwrap();
        assert!(rep.passed);
    }

    #[test]
    fn theta_root_checks_agree_with_direct_char() {
        let g = twin_triangles();
        for n in [1usize, 2] {
            let q = build_quotient_cover(&g, n, &caps()).unwrap();
            let phi = characteristic_polynomial(&q.cover, &caps()).unwrap();
            for t in [rat(-1), rat(0), rat(1), rat(3)] {
                let via_det =
                    theta_is_root_of_cover_char(&g, &ThetaSpec::rational(t.clone()), n, &caps())
                        .unwrap();
                assert_eq!(via_det, num::Zero::is_zero(&phi.eval(&t)), "n={n} t={t}");
            }
        }
    }

    #[test]
    fn ball_of_k2_stops() {
        let g = MultiGraph::unweighted(2, &[(0, 1)]);
        let ball = build_cover_ball(&g, 0, 5, &caps()).unwrap();
        assert_eq!(ball.ball.vertex_count(), 2);
    }

    #[test]
    fn ball_of_triangle_radius_two_is_path5() {
        let ball = build_cover_ball(&triangle(), 0, 2, &caps()).unwrap();
        assert_eq!(ball.ball.vertex_count(), 5);
        assert!(ball.ball.is_forest());
        // a path: two leaves, three degree-2 vertices
        let degs: Vec<usize> = (0..5).map(|i| ball.ball.degree(i)).collect();
        assert_eq!(degs.iter().filter(|&&d| d == 1).count(), 2);
        assert_eq!(degs.iter().filter(|&&d| d == 2).count(), 3);
    }

    #[test]
    fn ball_of_tree_stabilizes_at_diameter() {
        let tree = MultiGraph::unweighted(4, &[(0, 1), (1, 2), (1, 3)]);
        let b2 = build_cover_ball(&tree, 0, 2, &caps()).unwrap();
        let b3 = build_cover_ball(&tree, 0, 3, &caps()).unwrap();
        let b9 = build_cover_ball(&tree, 0, 9, &caps()).unwrap();
        assert_eq!(b2.ball.vertex_count(), 4);
        assert_eq!(b3.ball.vertex_count(), b2.ball.vertex_count());
        assert_eq!(b9.ball.vertex_count(), 4);
        assert_eq!(
            crate::graphpoly::matching::matching_polynomial(&b9.ball, &caps()).unwrap(),
            crate::graphpoly::matching::matching_polynomial(&tree, &caps()).unwrap()
        );
    }

    #[test]
    fn loop_ball_is_a_path() {
        // universal cover of a single loop is the bi-infinite path
        let g = crate::fixtures::loop_vertex();
        let ball = build_cover_ball(&g, 0, 3, &caps()).unwrap();
        assert_eq!(ball.ball.vertex_count(), 7);
        let leaf_count = (0..7).filter(|&i| ball.ball.degree(i) == 1).count();
        assert_eq!(leaf_count, 2);
    }

    #[test]
    fn parallel_pair_ball_allows_return_by_other_edge() {
        let g = crate::fixtures::parallel_pair();
        // radius 2: root, two children (two parallel records), then each
        // child returns by the other record only
        let ball = build_cover_ball(&g, 0, 2, &caps()).unwrap();
        assert_eq!(ball.ball.vertex_count(), 5);
    }

    #[test]
    fn probe_finds_k2_eigenvalue() {
        let g = MultiGraph::unweighted(2, &[(0, 1)]);
        let rep = spectral_probe(&g, &ThetaSpec::from_int(1), &caps()).unwrap();
        assert!(rep.min_distance_to_theta < 1e-9);
        assert_eq!(rep.eigenvalues_within_tolerance, 1);
        assert!(!rep.authoritative);
    }

    #[test]
    fn probe_on_double_cover_sees_minus_one() {
        let q = build_quotient_cover(&twin_triangles(), 2, &caps()).unwrap();
        let rep = spectral_probe(&q.cover, &ThetaSpec::from_int(-1), &caps()).unwrap();
        assert!(rep.min_distance_to_theta < 1e-9);
        assert!(rep.eigenvalues_within_tolerance >= 1);
    }
}
