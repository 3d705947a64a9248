//! Exact characteristic polynomials det(xI - A) over Gaussian rationals via
//! Faddeev-LeVerrier (division only by the integers 1..n), twisted variants
//! with unit phases on the arcs, and exact determinant evaluation.

use num::complex::Complex64;
use num::Zero;
use std::collections::HashMap;

use crate::caps::Caps;
use crate::error::Error;
use crate::exact::gaussian::GaussianRational;
use crate::exact::poly::Polynomial;
use crate::exact::rational::{rat, Rational};
use crate::graph::MultiGraph;

pub type GaussianMatrix = Vec<Vec<GaussianRational>>;

/// Hermitian adjacency matrix: A_ij = r_i delta_ij + sum of arc weights
/// from i to j. A loop contributes both of its arcs to the diagonal.
pub fn adjacency_matrix(g: &MultiGraph) -> GaussianMatrix {
    let n = g.vertex_count();
    let mut a = vec![vec![GaussianRational::zero(); n]; n];
    for i in 0..n {
        a[i][i] = GaussianRational::from_rational(g.weight(i).clone());
    }
    for rec in g.edges() {
        if rec.is_loop() {
            let both = &rec.rho + &rec.rho.conj();
            a[rec.u][rec.u] = &a[rec.u][rec.u] + &both;
        } else {
            a[rec.u][rec.v] = &a[rec.u][rec.v] + &rec.rho;
            a[rec.v][rec.u] = &a[rec.v][rec.u] + &rec.rho.conj();
        }
    }
    a
}

/// Unit phases on the positive arcs (edge records). Exact phases are the
/// fourth roots of unity i^k; anything else is a floating angle and demotes
/// the result to a numeric polynomial.
#[derive(Clone, Debug, PartialEq)]
pub enum Phase {
    /// i^k, k in 0..4.
    Exact(u8),
    /// Arbitrary unit complex number (radians).
    Angle(f64),
}

#[derive(Clone, Debug, Default)]
pub struct PhaseAssignment {
    /// Missing edges default to phase 1.
    pub by_edge: HashMap<usize, Phase>,
}

impl PhaseAssignment {
    pub fn all_ones() -> Self {
        PhaseAssignment::default()
    }

    pub fn set(&mut self, edge: usize, phase: Phase) {
        self.by_edge.insert(edge, phase);
    }

    pub fn phase(&self, edge: usize) -> Phase {
        self.by_edge.get(&edge).cloned().unwrap_or(Phase::Exact(0))
    }

    pub fn is_exact(&self) -> bool {
        self.by_edge.values().all(|p| matches!(p, Phase::Exact(_)))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum TwistedPoly {
    Exact(Polynomial),
    /// Ascending real coefficients; imaginary residue below 1e-9 was
    /// discarded. A numeric probe, never a decision value.
    Numeric(Vec<f64>),
}

/// Characteristic polynomial of A^G, exactly.
pub fn characteristic_polynomial(g: &MultiGraph, caps: &Caps) -> Result<Polynomial, Error> {
    if g.vertex_count() > caps.char_vertices {
        return Err(Error::GraphTooLarge {
            op: "characteristic_polynomial",
            size: g.vertex_count(),
            cap: caps.char_vertices,
        });
    }
    char_poly_fl(&adjacency_matrix(g))
}

/// Faddeev-LeVerrier on an exact Gaussian-rational matrix:
/// M_k = A M_{k-1} + c_{n-k+1} I and c_{n-k} = -tr(A M_k)/k, one exact
/// matrix product per step, division only by the integers 1..n. The input
/// must be Hermitian; a nonvanishing imaginary part in any coefficient is
/// an internal consistency failure.
pub fn char_poly_fl(a: &GaussianMatrix) -> Result<Polynomial, Error> {
    let n = a.len();
    let mut coeffs = vec![GaussianRational::zero(); n + 1];
    coeffs[n] = GaussianRational::one();
    // am holds A * M_{k-1}; A * M_0 = 0
    let mut am = vec![vec![GaussianRational::zero(); n]; n];
    for k in 1..=n {
        let mut mk = am; // A*M_{k-1}
        let c = coeffs[n - k + 1].clone();
        for (i, row) in mk.iter_mut().enumerate() {
            row[i] = &row[i] + &c;
        }
        am = mat_mul(a, &mk);
        coeffs[n - k] = gauss_div_int(&-trace(&am), k as i64);
    }
    let mut out = Vec::with_capacity(n + 1);
    for c in coeffs.into_iter() {
        if !c.im.is_zero() {
            return Err(Error::NonVanishingImaginaryPart);
        }
        out.push(c.re);
    }
    Ok(Polynomial::from_coeffs(out))
}

fn mat_mul(a: &GaussianMatrix, b: &GaussianMatrix) -> GaussianMatrix {
    let n = a.len();
    let mut out = vec![vec![GaussianRational::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if b[k][j].is_zero() {
                    continue;
                }
                out[i][j] = &out[i][j] + &(&a[i][k] * &b[k][j]);
            }
        }
    }
    out
}

fn trace(a: &GaussianMatrix) -> GaussianRational {
    let mut t = GaussianRational::zero();
    for (i, row) in a.iter().enumerate() {
        t = &t + &row[i];
    }
    t
}

fn gauss_div_int(z: &GaussianRational, k: i64) -> GaussianRational {
    let d = rat(k);
    GaussianRational::new(&z.re / &d, &z.im / &d)
}

/// Twisted adjacency matrix A_xi with exact fourth-root phases.
pub fn twisted_adjacency_exact(
    g: &MultiGraph,
    phases: &PhaseAssignment,
) -> Result<GaussianMatrix, Error> {
    let n = g.vertex_count();
    let mut a = vec![vec![GaussianRational::zero(); n]; n];
    for i in 0..n {
        a[i][i] = GaussianRational::from_rational(g.weight(i).clone());
    }
    for (e, rec) in g.edges().iter().enumerate() {
        let xi = match phases.phase(e) {
            Phase::Exact(k) => GaussianRational::unit_root(k),
            Phase::Angle(_) => {
                return Err(Error::PreconditionViolated(
                    "exact twisted polynomial needs fourth-root phases".into(),
                ))
            }
        };
        let w = &rec.rho * &xi;
        if rec.is_loop() {
            let both = &w + &w.conj();
            a[rec.u][rec.u] = &a[rec.u][rec.u] + &both;
        } else {
            a[rec.u][rec.v] = &a[rec.u][rec.v] + &w;
            a[rec.v][rec.u] = &a[rec.v][rec.u] + &w.conj();
        }
    }
    Ok(a)
}

/// Characteristic polynomial of A_xi: exact for fourth-root phases, numeric
/// (f64 Faddeev-LeVerrier) otherwise.
pub fn twisted_characteristic(
    g: &MultiGraph,
    phases: &PhaseAssignment,
    caps: &Caps,
) -> Result<TwistedPoly, Error> {
    if g.vertex_count() > caps.char_vertices {
        return Err(Error::GraphTooLarge {
            op: "twisted_characteristic",
            size: g.vertex_count(),
            cap: caps.char_vertices,
        });
    }
    if phases.is_exact() {
        let a = twisted_adjacency_exact(g, phases)?;
        return Ok(TwistedPoly::Exact(char_poly_fl(&a)?));
    }
    let n = g.vertex_count();
    let mut a = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for i in 0..n {
        a[i][i] = Complex64::new(crate::exact::rational::to_f64(g.weight(i)), 0.0);
    }
    for (e, rec) in g.edges().iter().enumerate() {
        let xi = match phases.phase(e) {
            Phase::Exact(k) => Complex64::new(0.0, 1.0).powu(k as u32),
            Phase::Angle(t) => Complex64::new(t.cos(), t.sin()),
        };
        let (re, im) = rec.rho.to_complex_f64();
        let w = Complex64::new(re, im) * xi;
        if rec.is_loop() {
            a[rec.u][rec.u] += w + w.conj();
        } else {
            a[rec.u][rec.v] += w;
            a[rec.v][rec.u] += w.conj();
        }
    }
    Ok(TwistedPoly::Numeric(char_poly_fl_f64(&a)))
}

fn char_poly_fl_f64(a: &[Vec<Complex64>]) -> Vec<f64> {
    let n = a.len();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
    coeffs[n] = Complex64::new(1.0, 0.0);
    let mut am = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for k in 1..=n {
        let mut mk = am;
        let c = coeffs[n - k + 1];
        for (i, row) in mk.iter_mut().enumerate() {
            row[i] += c;
        }
        am = vec![vec![Complex64::new(0.0, 0.0); n]; n];
        for i in 0..n {
            for l in 0..n {
                if a[i][l] == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    am[i][j] += a[i][l] * mk[l][j];
                }
            }
        }
        let tr: Complex64 = (0..n).map(|i| am[i][i]).sum();
        coeffs[n - k] = -tr / (k as f64);
    }
    coeffs.into_iter().map(|c| c.re).collect()
}

/// Exact determinant of (x0*I - A) by Gaussian elimination over the
/// Gaussian rationals.
pub fn det_x_minus_a_at(a: &GaussianMatrix, x0: &Rational) -> GaussianRational {
    let n = a.len();
    let mut m: GaussianMatrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut v = -a[i][j].clone();
                    if i == j {
                        v = &v + &GaussianRational::from_rational(x0.clone());
                    }
                    v
                })
                .collect()
        })
        .collect();
    let mut det = GaussianRational::one();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero());
        let Some(p) = pivot else {
            return GaussianRational::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pv = m[col][col].clone();
        det = &det * &pv;
        let inv = pv.inv().expect("nonzero pivot");
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] * &inv;
            for c in col..n {
                let t = &factor * &m[col][c];
                m[r][c] = &m[r][c] - &t;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{loop_vertex, triangle, twin_triangles};

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn single_vertex_char() {
        let g = MultiGraph::new(vec![("1".into(), rat(7))], vec![]).unwrap();
        assert_eq!(
            characteristic_polynomial(&g, &caps()).unwrap(),
            Polynomial::from_int_coeffs(&[-7, 1])
        );
    }

    #[test]
    fn triangle_char() {
        // eigenvalues 2, -1, -1
        assert_eq!(
            characteristic_polynomial(&triangle(), &caps()).unwrap(),
            Polynomial::from_int_coeffs(&[-2, -3, 0, 1])
        );
    }

    #[test]
    fn twin_triangles_golden_factorization() {
        let g = twin_triangles();
        let phi = characteristic_polynomial(&g, &caps()).unwrap();
        let expect = Polynomial::from_roots(&[rat(-1), rat(-1), rat(-1), rat(1), rat(3)]);
        assert_eq!(phi, expect);
        assert_eq!(phi.factored_string(), "(x + 1)^3 (x - 1) (x - 3)");
    }

    #[test]
    fn loop_contributes_twice() {
        let g = loop_vertex();
        // A = (2): phi = x - 2
        assert_eq!(
            characteristic_polynomial(&g, &caps()).unwrap(),
            Polynomial::from_int_coeffs(&[-2, 1])
        );
    }

    #[test]
    fn twisted_all_ones_recovers_char() {
        let g = twin_triangles();
        let t = twisted_characteristic(&g, &PhaseAssignment::all_ones(), &caps()).unwrap();
        match t {
            TwistedPoly::Exact(p) => {
                assert_eq!(p, characteristic_polynomial(&g, &caps()).unwrap())
            }
            _ => panic!("exact expected"),
        }
    }

    #[test]
    fn twisted_loop_sign_flip() {
        // single loop rho = 1, xi = -1: A_xi = -2, phi = x + 2
        let g = loop_vertex();
        let mut ph = PhaseAssignment::all_ones();
        ph.set(0, Phase::Exact(2));
        match twisted_characteristic(&g, &ph, &caps()).unwrap() {
            TwistedPoly::Exact(p) => assert_eq!(p, Polynomial::from_int_coeffs(&[2, 1])),
            _ => panic!("exact expected"),
        }
    }

    #[test]
    fn twisted_triangle_sign_flip() {
        // flipping one edge of K3: eigenvalues flip to -2, 1, 1
        let g = triangle();
        let (_, s_plus) = g.spanning_forest();
        let mut ph = PhaseAssignment::all_ones();
        ph.set(s_plus[0], Phase::Exact(2));
        match twisted_characteristic(&g, &ph, &caps()).unwrap() {
            TwistedPoly::Exact(p) => {
                assert_eq!(p, Polynomial::from_int_coeffs(&[2, -3, 0, 1]))
            }
            _ => panic!("exact expected"),
        }
    }

    #[test]
    fn numeric_path_matches_exact() {
        let g = triangle();
        let mut ph = PhaseAssignment::all_ones();
        ph.set(0, Phase::Angle(std::f64::consts::PI)); // -1, but float
        match twisted_characteristic(&g, &ph, &caps()).unwrap() {
            TwistedPoly::Numeric(cs) => {
                let exact = [2.0, -3.0, 0.0, 1.0];
                for (a, b) in cs.iter().zip(exact.iter()) {
                    assert!((a - b).abs() < 1e-9, "{cs:?}");
                }
            }
            _ => panic!("numeric expected"),
        }
    }

    #[test]
    fn det_evaluation_matches_char_poly() {
        let g = twin_triangles();
        let a = adjacency_matrix(&g);
        let phi = characteristic_polynomial(&g, &caps()).unwrap();
        for x0 in [rat(0), rat(-1), rat(2), crate::exact::rational::ratio(1, 2)] {
            let d = det_x_minus_a_at(&a, &x0);
            assert!(d.is_real());
            assert_eq!(d.re, phi.eval(&x0));
        }
    }

    use crate::exact::rational::rat;
}
