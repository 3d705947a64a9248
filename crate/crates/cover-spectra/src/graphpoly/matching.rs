//! Matching polynomials, memoized over vertex masks, and the graph
//! continued fraction alpha evaluated projectively at theta.
//!
//! mu^G(x) = sum over matchings M of prod_{i not in M} (x - r_i) *
//! prod_{e in M} lambda_e, with lambda_e = -|rho_e|^2; loops never
//! contribute. The pivot recursion
//!
//!   mu^G = (x - r_i) mu^{G \ i} + sum_{e = ij non-loop} lambda_e mu^{G \ {i,j}}
//!
//! is memoized by the mask of surviving vertices, so one context serves a
//! host graph and all its induced subgraphs (classification visits them
//! all).

use std::collections::HashMap;
use std::rc::Rc;

use num::Zero;

use crate::caps::Caps;
use crate::error::Error;
use crate::exact::poly::Polynomial;
use crate::exact::rational::{rat, Rational};
use crate::exact::theta::ThetaSpec;
use crate::graph::MultiGraph;

/// Memoized matching-polynomial evaluator for one host graph.
pub struct MuContext<'g> {
    g: &'g MultiGraph,
    memo: HashMap<u64, Rc<Polynomial>>,
}

impl<'g> MuContext<'g> {
    pub fn new(g: &'g MultiGraph, caps: &Caps) -> Result<Self, Error> {
        if g.vertex_count() > caps.mu_vertices.min(64) {
            return Err(Error::GraphTooLarge {
                op: "matching_polynomial",
                size: g.vertex_count(),
                cap: caps.mu_vertices.min(64),
            });
        }
        Ok(MuContext {
            g,
            memo: HashMap::new(),
        })
    }

    pub fn graph(&self) -> &'g MultiGraph {
        self.g
    }

    /// mu of the induced subgraph on `mask`.
    pub fn mu(&mut self, mask: u64) -> Rc<Polynomial> {
        if let Some(p) = self.memo.get(&mask) {
            return Rc::clone(p);
        }
        let result = if mask == 0 {
            Polynomial::one()
        } else {
            let i = mask.trailing_zeros() as usize;
            let rest = mask & !(1 << i);
            let mut acc = &*self.mu(rest) * &Polynomial::x_minus(self.g.weight(i));
            for &(e, j) in self.g.adjacency(i) {
                if j != i && mask >> j & 1 == 1 {
                    let sub = self.mu(rest & !(1 << j));
                    acc = &acc + &sub.scale(&self.g.lambda(e));
                }
            }
            acc
        };
        let rc = Rc::new(result);
        self.memo.insert(mask, Rc::clone(&rc));
        rc
    }
}

/// Matching polynomial of the whole graph.
pub fn matching_polynomial(g: &MultiGraph, caps: &Caps) -> Result<Polynomial, Error> {
    let mut ctx = MuContext::new(g, caps)?;
    let full = g.full_mask()?;
    Ok((*ctx.mu(full)).clone())
}

/// Oracle: direct sum over all matchings. Exponential; |V| <= 14.
pub fn matching_polynomial_bruteforce(g: &MultiGraph) -> Result<Polynomial, Error> {
    if g.vertex_count() > 14 {
        return Err(Error::GraphTooLarge {
            op: "matching_polynomial_bruteforce",
            size: g.vertex_count(),
            cap: 14,
        });
    }
    let non_loops: Vec<usize> = (0..g.edge_count())
        .filter(|&e| !g.edge(e).is_loop())
        .collect();
    let mut acc = Polynomial::zero();
    let mut stack: Vec<(usize, u64, Rational)> = vec![(0, 0, rat(1))];
    while let Some((from, covered, weight)) = stack.pop() {
        if from == non_loops.len() {
            // unmatched vertices contribute (x - r_i)
            let mut term = Polynomial::constant(weight);
            for i in 0..g.vertex_count() {
                if covered >> i & 1 == 0 {
                    term = &term * &Polynomial::x_minus(g.weight(i));
                }
            }
            acc = &acc + &term;
            continue;
        }
        // skip edge `from`
        stack.push((from + 1, covered, weight.clone()));
        let e = non_loops[from];
        let rec = g.edge(e);
        let mask = (1 << rec.u) | (1 << rec.v);
        if covered & mask == 0 {
            stack.push((from + 1, covered | mask, weight * g.lambda(e)));
        }
    }
    Ok(acc)
}

/// Vertex class at theta, by how deletion moves the multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexClass {
    /// m drops by one: alpha_i(theta) = 0.
    Zero,
    /// m unchanged: alpha_i(theta) finite nonzero.
    PlusMinus,
    /// m rises by one: alpha_i(theta) = infinity.
    Infinity,
}

/// Projective value of alpha_i^G at theta.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlphaValue {
    Zero,
    Infinity,
    Finite(Rational),
}

/// Per-theta multiplicity cache over one `MuContext`.
pub struct ThetaContext<'g> {
    pub mu: MuContext<'g>,
    theta: ThetaSpec,
    mult: HashMap<u64, usize>,
}

impl<'g> ThetaContext<'g> {
    pub fn new(g: &'g MultiGraph, theta: ThetaSpec, caps: &Caps) -> Result<Self, Error> {
        theta.validate()?;
        Ok(ThetaContext {
            mu: MuContext::new(g, caps)?,
            theta,
            mult: HashMap::new(),
        })
    }

    pub fn graph(&self) -> &'g MultiGraph {
        self.mu.graph()
    }

    pub fn theta(&self) -> &ThetaSpec {
        &self.theta
    }

    /// m_theta of the induced subgraph on `mask`.
    pub fn multiplicity(&mut self, mask: u64) -> usize {
        if let Some(&m) = self.mult.get(&mask) {
            return m;
        }
        let p = self.mu.mu(mask);
        let m = self
            .theta
            .multiplicity_in(&p)
            .expect("mu of a finite graph is monic, never zero");
        self.mult.insert(mask, m);
        m
    }

    /// Class of vertex i within the induced subgraph on `avail` (i in avail).
    pub fn class_of(&mut self, avail: u64, i: usize) -> VertexClass {
        debug_assert!(avail >> i & 1 == 1);
        let m = self.multiplicity(avail);
        let mi = self.multiplicity(avail & !(1 << i));
        if mi + 1 == m {
            VertexClass::Zero
        } else if mi == m + 1 {
            VertexClass::Infinity
        } else {
            assert_eq!(mi, m, "interlacing bounds the multiplicity step to one");
            VertexClass::PlusMinus
        }
    }

    /// alpha_i of the induced subgraph on `avail`, projectively at theta.
    /// The finite value needs rational theta (`FiniteValueUnavailable`
    /// otherwise); the shipped decision procedures only ever use classes.
    pub fn alpha(&mut self, avail: u64, i: usize) -> Result<AlphaValue, Error> {
        match self.class_of(avail, i) {
            VertexClass::Zero => Ok(AlphaValue::Zero),
            VertexClass::Infinity => Ok(AlphaValue::Infinity),
            VertexClass::PlusMinus => {
                let t = match self.theta.as_rational() {
                    Some(t) => t.clone(),
                    None => return Err(Error::FiniteValueUnavailable),
                };
                let k = self.multiplicity(avail);
                let lin = Polynomial::x_minus(&t).pow(k);
                let num = self.mu.mu(avail).divexact(&lin).expect("multiplicity k");
                let den = self
                    .mu
                    .mu(avail & !(1 << i))
                    .divexact(&lin)
                    .expect("multiplicity k");
                let dv = den.eval(&t);
                debug_assert!(!dv.is_zero());
                Ok(AlphaValue::Finite(num.eval(&t) / dv))
            }
        }
    }
}

/// alpha_i^G(theta) for the whole graph.
pub fn alpha_at(
    g: &MultiGraph,
    i: usize,
    theta: &ThetaSpec,
    caps: &Caps,
) -> Result<AlphaValue, Error> {
    let mut ctx = ThetaContext::new(g, theta.clone(), caps)?;
    let full = g.full_mask()?;
    ctx.alpha(full, i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{loop_vertex, parallel_pair, path3, triangle, twin_triangles};

    fn caps() -> Caps {
        Caps::default()
    }

    fn poly(coeffs: &[i64]) -> Polynomial {
        Polynomial::from_int_coeffs(coeffs)
    }

    #[test]
    fn empty_graph_mu_is_one() {
        let g = MultiGraph::unweighted(0, &[]);
        assert_eq!(matching_polynomial(&g, &caps()).unwrap(), Polynomial::one());
    }

    #[test]
    fn single_edge() {
        let g = MultiGraph::unweighted(2, &[(0, 1)]);
        assert_eq!(matching_polynomial(&g, &caps()).unwrap(), poly(&[-1, 0, 1]));
    }

    #[test]
    fn path3_mu() {
        assert_eq!(
            matching_polynomial(&path3(), &caps()).unwrap(),
            poly(&[0, -2, 0, 1])
        );
    }

    #[test]
    fn triangle_mu_and_bruteforce() {
        let k3 = triangle();
        let mu = matching_polynomial(&k3, &caps()).unwrap();
        assert_eq!(mu, poly(&[0, -3, 0, 1]));
        assert_eq!(mu, matching_polynomial_bruteforce(&k3).unwrap());
    }

    #[test]
    fn loops_are_ignored() {
        let mut g = loop_vertex();
        // weight the vertex to see it in the polynomial: build anew
        g = MultiGraph::new(
            vec![("1".into(), rat(5))],
            vec![(
                "l".into(),
                "1".into(),
                "1".into(),
                crate::exact::gaussian::GaussianRational::one(),
            )],
        )
        .unwrap();
        assert_eq!(
            matching_polynomial_bruteforce(&g).unwrap(),
            Polynomial::from_coeffs(vec![rat(-5), rat(1)])
        );
        assert_eq!(
            matching_polynomial(&g, &caps()).unwrap(),
            Polynomial::from_coeffs(vec![rat(-5), rat(1)])
        );
    }

    #[test]
    fn parallel_edges_both_count() {
        let g = parallel_pair();
        assert_eq!(matching_polynomial(&g, &caps()).unwrap(), poly(&[-2, 0, 1]));
        assert_eq!(
            matching_polynomial_bruteforce(&g).unwrap(),
            poly(&[-2, 0, 1])
        );
    }

    #[test]
    fn twin_triangles_mu_matches_bruteforce() {
        let g = twin_triangles();
        assert_eq!(
            matching_polynomial(&g, &caps()).unwrap(),
            matching_polynomial_bruteforce(&g).unwrap()
        );
    }

    #[test]
    fn alpha_examples() {
        let g = path3();
        let th = ThetaSpec::from_int(0);
        assert_eq!(alpha_at(&g, 0, &th, &caps()).unwrap(), AlphaValue::Zero);
        assert_eq!(alpha_at(&g, 1, &th, &caps()).unwrap(), AlphaValue::Infinity);
        let k1 = MultiGraph::unweighted(1, &[]);
        assert_eq!(
            alpha_at(&k1, 0, &ThetaSpec::from_int(1), &caps()).unwrap(),
            AlphaValue::Finite(rat(1))
        );
    }

    #[test]
    fn alpha_finite_with_shared_multiplicity() {
        // edge plus isolated vertex: theta = 1 is a simple root of mu both
        // before and after deleting the isolated vertex, so the finite
        // value needs deflation by (x - 1)
        let g = MultiGraph::unweighted(3, &[(0, 1)]);
        let a = alpha_at(&g, 2, &ThetaSpec::from_int(1), &caps()).unwrap();
        assert_eq!(a, AlphaValue::Finite(rat(1)));
    }

    #[test]
    fn alpha_algebraic_pm_is_unavailable() {
        // sqrt(2) on a single vertex: mu = x, m = 0 both sides -> finite branch
        let g = MultiGraph::unweighted(1, &[]);
        let th = ThetaSpec::parse("minpoly:-2,0,1:1,2").unwrap();
        assert!(matches!(
            alpha_at(&g, 0, &th, &caps()),
            Err(Error::FiniteValueUnavailable)
        ));
    }

    use crate::exact::rational::rat;
}
