//! Independent oracles for the integration suites. Everything here
//! recomputes from first principles, sharing no code path with the
//! implementations it checks.

use cover_spectra::exact::gaussian::GaussianRational;
use cover_spectra::exact::poly::Polynomial;
use cover_spectra::exact::rational::{rat, ratio, Rational};
use cover_spectra::graph::MultiGraph;
use num::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Exact determinant of a Gaussian-rational matrix by plain elimination.
fn det_gauss(mut m: Vec<Vec<GaussianRational>>) -> GaussianRational {
    let n = m.len();
    let mut det = GaussianRational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return GaussianRational::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det = &det * &pivot;
        let inv = pivot.inv().unwrap();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] * &inv;
            for c in col..n {
                let t = &f * &m[col][c];
                m[r][c] = &m[r][c] - &t;
            }
        }
    }
    det
}

/// Characteristic polynomial oracle: Lagrange interpolation of
/// det(x0 I - A) at degree+1 rational sample points. Independent of
/// Faddeev-LeVerrier.
pub fn char_poly_oracle(g: &MultiGraph) -> Polynomial {
    let a = cover_spectra::graphpoly::charpoly::adjacency_matrix(g);
    let n = a.len();
    let points: Vec<Rational> = (0..=n as i64).map(rat).collect();
    let mut values = Vec::with_capacity(points.len());
    for x0 in &points {
        let mut m = a.clone();
        for (i, row) in m.iter_mut().enumerate() {
            for (j, z) in row.iter_mut().enumerate() {
                let mut v = -z.clone();
                if i == j {
                    v = &v + &GaussianRational::from_rational(x0.clone());
                }
                *z = v;
            }
        }
        let d = det_gauss(m);
        assert!(d.is_real(), "Hermitian determinant must be real");
        values.push(d.re);
    }
    // Lagrange interpolation
    let mut acc = Polynomial::zero();
    for i in 0..points.len() {
        let mut num = Polynomial::one();
        let mut den = rat(1);
        for j in 0..points.len() {
            if i != j {
                num = &num * &Polynomial::x_minus(&points[j]);
                den *= &points[i] - &points[j];
            }
        }
        acc = &acc + &num.scale(&(&values[i] / den));
    }
    acc
}

/// All 2-regular supports (vertex masks) by raw edge-subset filtering.
pub fn two_regular_edge_subsets(g: &MultiGraph) -> Vec<std::collections::BTreeSet<usize>> {
    let m = g.edge_count();
    assert!(m <= 22, "edge-subset oracle is exponential");
    let mut out = Vec::new();
    'subsets: for sub in 0u64..(1u64 << m) {
        let mut degree = vec![0usize; g.vertex_count()];
        for e in 0..m {
            if sub >> e & 1 == 1 {
                let rec = g.edge(e);
                degree[rec.u] += 1;
                degree[rec.v] += 1;
            }
        }
        let mut support = std::collections::BTreeSet::new();
        for v in 0..g.vertex_count() {
            match degree[v] {
                0 => {}
                2 => {
                    support.insert(v);
                }
                _ => continue 'subsets,
            }
        }
        out.push(
            (0..m)
                .filter(|&e| sub >> e & 1 == 1)
                .collect::<std::collections::BTreeSet<usize>>(),
        );
        let _ = support;
    }
    out
}

/// Directed cycle of a multigraph: arc sequence (edge index, forward?).
/// Enumerates all directed cycles NOT associated with a single edge, i.e.
/// everything except the two-arc back-and-forth on one edge.
fn directed_cycles(g: &MultiGraph) -> Vec<Vec<(usize, bool)>> {
    let mut out: Vec<Vec<(usize, bool)>> = Vec::new();
    // loops: each loop edge gives two directed 1-cycles (its two arcs)
    for (e, rec) in g.edges().iter().enumerate() {
        if rec.is_loop() {
            out.push(vec![(e, true)]);
            out.push(vec![(e, false)]);
        }
    }
    // directed 2-cycles from pairs of distinct parallel edges: arcs e then f
    for (e, re) in g.edges().iter().enumerate() {
        if re.is_loop() {
            continue;
        }
        for (f, rf) in g.edges().iter().enumerate() {
            if f == e || rf.is_loop() {
                continue;
            }
            // traverse e from u to v, then f from v back to u
            let same = re.u == rf.u && re.v == rf.v;
            let flipped = re.u == rf.v && re.v == rf.u;
            if same || flipped {
                // canonical start: smaller edge index first to avoid double
                // counting rotations, but both directions are distinct
                if e < f {
                    out.push(vec![(e, true), (f, !same)]);
                    out.push(vec![(f, same), (e, false)]);
                }
            }
        }
    }
    // simple directed cycles of length >= 3: DFS over vertex sequences with
    // minimal start vertex, both directions kept
    let n = g.vertex_count();
    fn dfs(
        g: &MultiGraph,
        start: usize,
        at: usize,
        visited: u64,
        arcs: &mut Vec<(usize, bool)>,
        out: &mut Vec<Vec<(usize, bool)>>,
    ) {
        for (e, rec) in g.edges().iter().enumerate() {
            if rec.is_loop() {
                continue;
            }
            let dirs: &[bool] = if rec.u == at && rec.v == at {
                &[]
            } else if rec.u == at {
                &[true]
            } else if rec.v == at {
                &[false]
            } else {
                &[]
            };
            for &d in dirs {
                let next = if d { rec.v } else { rec.u };
                if next == start && arcs.len() >= 2 {
                    let mut cyc = arcs.clone();
                    cyc.push((e, d));
                    out.push(cyc);
                } else if next > start && visited >> next & 1 == 0 {
                    arcs.push((e, d));
                    dfs(g, start, next, visited | 1 << next, arcs, out);
                    arcs.pop();
                }
            }
        }
    }
    for start in 0..n {
        let mut arcs = Vec::new();
        dfs(g, start, start, 1 << start, &mut arcs, &mut out);
    }
    out
}

fn arc_weight(g: &MultiGraph, arc: (usize, bool)) -> GaussianRational {
    let rec = g.edge(arc.0);
    if arc.1 {
        rec.rho.clone()
    } else {
        rec.rho.conj()
    }
}

fn cycle_support(g: &MultiGraph, cyc: &[(usize, bool)]) -> u64 {
    let mut m = 0u64;
    for &(e, _) in cyc {
        m |= 1 << g.edge(e).u;
        m |= 1 << g.edge(e).v;
    }
    m
}

/// Molecular polynomial oracle: the direct sum over vertex-disjoint
/// packings of directed cycles, M = sum over packings of
/// prod_{i not covered} (x - r_i) * prod lambda_C, where cycles associated
/// with single edges carry lambda_e = -|rho|^2 and the rest take the given
/// real weight per undirected cycle (its two orientations both count).
pub fn molecular_oracle(
    g: &MultiGraph,
    weight_of: &dyn Fn(&[(usize, bool)]) -> Rational,
) -> Polynomial {
    // directed cycles not associated with edges
    let free_cycles = directed_cycles(g);
    // plus the edge-associated 2-cycles (one per non-loop edge)
    let edge_cycles: Vec<usize> = (0..g.edge_count())
        .filter(|&e| !g.edge(e).is_loop())
        .collect();

    let n = g.vertex_count();
    let mut acc = Polynomial::zero();

    // choose a subset of edge-associated cycles (a matching) and a
    // vertex-disjoint set of free directed cycles
    let free_supports: Vec<u64> = free_cycles.iter().map(|c| cycle_support(g, c)).collect();
    let free_weights: Vec<Rational> = free_cycles
        .iter()
        .map(|c| {
            if c.len() == 1 || !is_edge_associated(g, c) {
                weight_of(c)
            } else {
                unreachable!("directed_cycles excludes edge-associated cycles")
            }
        })
        .collect();

    fn rec_free(
        k: usize,
        used: u64,
        weight: Rational,
        supports: &[u64],
        weights: &[Rational],
        picked: &mut Vec<usize>,
        finish: &mut dyn FnMut(u64, Rational),
    ) {
        if k == supports.len() {
            finish(used, weight);
            return;
        }
        rec_free(k + 1, used, weight.clone(), supports, weights, picked, finish);
        if supports[k] & used == 0 && !weights[k].is_zero() {
            picked.push(k);
            rec_free(
                k + 1,
                used | supports[k],
                weight * weights[k].clone(),
                supports,
                weights,
                picked,
                finish,
            );
            picked.pop();
        }
    }

    let mut picked = Vec::new();
    let g2 = g;
    let edge_cycles2 = edge_cycles.clone();
    let mut finish = |used: u64, weight: Rational| {
        // now pack edge-associated 2-cycles (i.e. matchings) on the rest
        fn rec_match(
            g: &MultiGraph,
            edges: &[usize],
            k: usize,
            used: u64,
            weight: Rational,
            n: usize,
            acc: &mut Polynomial,
        ) {
            if k == edges.len() {
                let mut term = Polynomial::constant(weight);
                for i in 0..n {
                    if used >> i & 1 == 0 {
                        term = &term * &Polynomial::x_minus(g.weight(i));
                    }
                }
                *acc = &*acc + &term;
                return;
            }
            rec_match(g, edges, k + 1, used, weight.clone(), n, acc);
            let rec = g.edge(edges[k]);
            let mask = (1 << rec.u) | (1 << rec.v);
            if used & mask == 0 {
                rec_match(g, edges, k + 1, used | mask, weight * g.lambda(edges[k]), n, acc);
            }
        }
        rec_match(g2, &edge_cycles2, 0, used, weight, n, &mut acc);
    };
    rec_free(
        0,
        0,
        rat(1),
        &free_supports,
        &free_weights,
        &mut picked,
        &mut finish,
    );
    acc
}

fn is_edge_associated(g: &MultiGraph, c: &[(usize, bool)]) -> bool {
    c.len() == 2 && c[0].0 == c[1].0 && !g.edge(c[0].0).is_loop()
}

/// Harary weight of a directed cycle: -prod of its arc weights (real part
/// is taken by the caller pairing orientations; here each orientation
/// carries its own complex weight, so the oracle keeps the real part only
/// through conjugate pairing). For rational weights this is just
/// -prod rho.
pub fn harary_directed_weight(g: &MultiGraph, c: &[(usize, bool)]) -> Rational {
    let mut prod = GaussianRational::one();
    for &arc in c {
        prod = &prod * &arc_weight(g, arc);
    }
    // both orientations appear in the enumeration, adding conj pairs; each
    // contributes its own -prod, so returning the real part of each half
    // keeps the total equal to -2 Re(prod) per undirected cycle
    -prod.re
}

/// DFS-based simple-cycle counter for graphs without loops or parallel
/// edges (vertex sequences up to rotation/reflection).
pub fn count_simple_cycles_dfs(g: &MultiGraph) -> usize {
    let n = g.vertex_count();
    let mut found = std::collections::HashSet::new();
    fn dfs(
        g: &MultiGraph,
        start: usize,
        at: usize,
        visited: u64,
        path: &mut Vec<usize>,
        found: &mut std::collections::HashSet<Vec<usize>>,
    ) {
        for &(_, next) in g.adjacency(at) {
            if next == start && path.len() >= 3 {
                let mut canon = path.clone();
                // canonical: rotate to start, already starts at min; fix
                // direction by second vs last
                if canon[1] > *canon.last().unwrap() {
                    canon[1..].reverse();
                }
                found.insert(canon);
            } else if next > start && visited >> next & 1 == 0 {
                path.push(next);
                dfs(g, start, next, visited | 1 << next, path, found);
                path.pop();
            }
        }
    }
    for s in 0..n {
        let mut path = vec![s];
        dfs(g, s, s, 1 << s, &mut path, &mut found);
    }
    found.len()
}

/// Random small rational from the +-2, +-1, +-1/2 pool.
pub fn pool_rational(rng: &mut ChaCha8Rng) -> Rational {
    let pool = [
        ratio(2, 1),
        ratio(-2, 1),
        ratio(1, 1),
        ratio(-1, 1),
        ratio(1, 2),
        ratio(-1, 2),
    ];
    pool[rng.gen_range(0..pool.len())].clone()
}
