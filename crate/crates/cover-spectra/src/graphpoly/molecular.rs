//! Molecular polynomials: the common generalization of the matching and
//! characteristic polynomials, parameterized by real weights on the
//! undirected cycles that are not associated with single edges.
//!
//! Computed through the Gutman expansion over vertex-disjoint cycle
//! packings: M^G(x) = sum over packings Gamma of mu^{G \ Gamma}(x) *
//! prod_{C in Gamma} (2 w_C). The factor 2 accounts for the two directed
//! orientations every cycle carries — including loops, whose two arcs are
//! distinct, and parallel-edge 2-cycles. Setting every w_C = 0 recovers
//! mu; setting w_C = -Re(prod of arc weights along C) recovers the
//! characteristic polynomial (Harary's formula).

use std::collections::HashMap;

use crate::caps::Caps;
use crate::error::Error;
use crate::exact::poly::Polynomial;
use crate::exact::rational::{rat, Rational};
use crate::graph::{CyclePath, MultiGraph};

use super::matching::MuContext;

/// Real weight per canonical undirected cycle (keyed by the canonical
/// edge-index sequence).
#[derive(Clone, Debug, Default)]
pub struct CycleWeightAssignment {
    weights: HashMap<Vec<usize>, Rational>,
}

impl CycleWeightAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, cycle: &CyclePath, weight: Rational) {
        self.weights.insert(cycle.canonical_cycle().edges, weight);
    }

    pub fn get(&self, cycle: &CyclePath) -> Option<&Rational> {
        self.weights.get(&cycle.canonical_cycle().edges)
    }

    /// Every cycle weighted zero: M = mu.
    pub fn zero(g: &MultiGraph, caps: &Caps) -> Result<Self, Error> {
        let mut w = Self::new();
        for c in g.enumerate_cycles(caps)? {
            w.set(&c, rat(0));
        }
        Ok(w)
    }

    /// Harary weights w_C = -Re(prod of arc weights along one orientation):
    /// with these, M coincides with the characteristic polynomial.
    pub fn harary(g: &MultiGraph, caps: &Caps) -> Result<Self, Error> {
        let mut w = Self::new();
        for c in g.enumerate_cycles(caps)? {
            w.set(&c, harary_weight(g, &c));
        }
        Ok(w)
    }
}

/// -Re(prod over the arcs of the cycle's canonical traversal).
pub fn harary_weight(g: &MultiGraph, cycle: &CyclePath) -> Rational {
    let c = cycle.canonical_cycle();
    let k = c.vertices.len();
    let mut prod = crate::exact::gaussian::GaussianRational::one();
    for j in 0..k {
        let e = g.edge(c.edges[j]);
        let from = c.vertices[j];
        let to = c.vertices[(j + 1) % k];
        let arc = if e.u == from && e.v == to {
            e.rho.clone()
        } else {
            debug_assert!(e.u == to && e.v == from || e.is_loop());
            e.rho.conj()
        };
        prod = &prod * &arc;
    }
    -prod.re
}

/// Gutman expansion of the molecular polynomial.
pub fn molecular_polynomial(
    g: &MultiGraph,
    weights: &CycleWeightAssignment,
    caps: &Caps,
) -> Result<Polynomial, Error> {
    let cycles = g.enumerate_cycles(caps)?;
    for c in &cycles {
        if weights.get(c).is_none() {
            return Err(Error::MissingCycleWeight(
                c.edge_ids(g).join(","),
            ));
        }
    }
    let packings = g.enumerate_two_regular(caps)?;
    let mut mu = MuContext::new(g, caps)?;
    let full = g.full_mask()?;
    let mut acc = Polynomial::zero();
    for packing in packings {
        let mut factor = rat(1);
        for c in &packing.cycles {
            factor *= rat(2) * weights.get(c).expect("checked above");
        }
        if factor.is_zero() && !packing.cycles.is_empty() {
            continue;
        }
        let rest = full & !packing.support_mask();
        acc = &acc + &mu.mu(rest).scale(&factor);
    }
    Ok(acc)
}

use num::Zero;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{loop_vertex, parallel_pair, triangle, twin_triangles};
    use crate::graphpoly::charpoly::characteristic_polynomial;
    use crate::graphpoly::matching::matching_polynomial;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn zero_weights_give_matching_polynomial() {
        for g in [triangle(), twin_triangles(), parallel_pair(), loop_vertex()] {
            let w = CycleWeightAssignment::zero(&g, &caps()).unwrap();
            assert_eq!(
                molecular_polynomial(&g, &w, &caps()).unwrap(),
                matching_polynomial(&g, &caps()).unwrap()
            );
        }
    }

    #[test]
    fn harary_weights_give_characteristic_polynomial() {
        for g in [triangle(), twin_triangles(), parallel_pair(), loop_vertex()] {
            let w = CycleWeightAssignment::harary(&g, &caps()).unwrap();
            assert_eq!(
                molecular_polynomial(&g, &w, &caps()).unwrap(),
                characteristic_polynomial(&g, &caps()).unwrap(),
                "harary weights must reproduce phi for {g:?}"
            );
        }
    }

    #[test]
    fn triangle_with_unit_cycle_weight() {
        // K3, triangle weight -1: x^3 - 3x - 2 (the characteristic polynomial)
        let g = triangle();
        let c = g.enumerate_cycles(&caps()).unwrap().remove(0);
        let mut w = CycleWeightAssignment::new();
        w.set(&c, rat(-1));
        assert_eq!(
            molecular_polynomial(&g, &w, &caps()).unwrap(),
            Polynomial::from_int_coeffs(&[-2, -3, 0, 1])
        );
    }

    #[test]
    fn forest_has_only_one_molecular_polynomial() {
        let g = MultiGraph::unweighted(4, &[(0, 1), (1, 2), (1, 3)]);
        let w = CycleWeightAssignment::new(); // empty: a forest has no cycles
        let m = molecular_polynomial(&g, &w, &caps()).unwrap();
        assert_eq!(m, matching_polynomial(&g, &caps()).unwrap());
        assert_eq!(m, characteristic_polynomial(&g, &caps()).unwrap());
    }

    #[test]
    fn missing_weight_is_an_error() {
        let g = triangle();
        let w = CycleWeightAssignment::new();
        assert!(matches!(
            molecular_polynomial(&g, &w, &caps()),
            Err(Error::MissingCycleWeight(_))
        ));
    }
}
