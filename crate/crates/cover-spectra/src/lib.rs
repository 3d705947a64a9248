//! Exact decision procedures and machine-checkable certificates for the
//! point spectrum of the universal cover (equivalently, the maximal abelian
//! cover) of a finite weighted multi-graph.
//!
//! Given a multi-graph `G` (rational vertex weights, nonzero conjugate-paired
//! Gaussian-rational arc weights) and an algebraic number `theta`, the crate
//! decides whether `theta` is an eigenvalue of the universal cover of `G` and
//! emits one of two certificates:
//!
//! * positive: a refined theta-Aomoto subset (a union of theta-critical tree
//!   components with a Hall-type surplus condition on its frontier), or
//! * negative: `m_theta(G)` pairwise disjoint theta-critical cycles whose
//!   removal annihilates the multiplicity, together with the induced
//!   2-regular witness.
//!
//! All decisions use exact rational arithmetic; floating point appears only
//! in the explicitly non-authoritative spectral probe.

pub mod aomoto;
pub mod caps;
pub mod certificate;
pub mod corpus;
pub mod covers;
pub mod critical;
pub mod error;
pub mod exact;
pub mod fixtures;
pub mod gallai;
pub mod generate;
pub mod graph;
pub mod graphpoly;
pub mod verify;

pub use caps::Caps;
pub use error::Error;
pub use exact::{GaussianRational, Polynomial, Rational, ThetaSpec};
pub use graph::{CyclePath, MultiGraph, PathKind, TwoRegularSubgraph, VertexSet};
