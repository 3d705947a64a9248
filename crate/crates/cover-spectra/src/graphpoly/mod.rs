//! Graph polynomials: matching, characteristic, molecular, twisted, the
//! projective graph continued fraction, and rooted path trees.

pub mod charpoly;
pub mod matching;
pub mod molecular;
pub mod pathtree;

pub use charpoly::{
    adjacency_matrix, char_poly_fl, characteristic_polynomial, det_x_minus_a_at,
    twisted_characteristic, GaussianMatrix, Phase, PhaseAssignment, TwistedPoly,
};
pub use matching::{
    alpha_at, matching_polynomial, matching_polynomial_bruteforce, AlphaValue, MuContext,
    ThetaContext, VertexClass,
};
pub use molecular::{harary_weight, molecular_polynomial, CycleWeightAssignment};
pub use pathtree::path_tree;
