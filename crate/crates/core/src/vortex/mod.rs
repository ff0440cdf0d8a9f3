//! Meromorphic vortex pairs on `X = P¹` over `Q`.
//!
//! A pair `(F, f)` is a bundle `F = O(a_1) ⊕ … ⊕ O(a_r)` and a meromorphic
//! map `f : O^r → F`, given by an `r × r` matrix over `Q(z)` in the standard
//! trivialization of `F` on the affine line. Everything is computed in the
//! source space `Q(z)^r`:
//!
//! * `G = f⁻¹(F)`, the pull-back of the target lattice;
//! * `E = O^r ∩ G`, the largest subsheaf carried holomorphically into `F`;
//! * `d_p = len(O^r / E)` (pole data) and `d_z = len(G / E)` (zero data).
//!
//! The chain `E ⊆ O^r`, `E ⊆ G` is a point of `Quot(r, d_p, d_z)` in
//! explicit coordinates. Points coming from a map are saturated
//! (`E = O^r ∩ G`); points on the boundary of the compactification are
//! chains where `E` is strictly smaller.

mod divisor;
mod lattice;
mod matrix;
mod mero;
mod snf;

pub use divisor::PDivisor;
pub use lattice::Lattice;
pub use matrix::Mat;
pub use mero::{
    decompose, delta, equivalence_witness, is_equivalent, is_in_q0, moduli_point, snf_degrees,
    theta, MeroMap, QuotPoint,
};
pub use snf::{snf_poly, Snf};

use crate::algebra::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VortexError {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("shape mismatch: {rows} rows, {cols} columns, twist of length {twist}")]
    RankMismatch {
        rows: usize,
        cols: usize,
        twist: usize,
    },
    #[error("lattices of ranks {left} and {right} do not live in the same space")]
    DimensionMismatch { left: usize, right: usize },
    #[error("lattices do not form a chain E ⊆ O^r, E ⊆ G")]
    NotAChain,
    #[error("a divisor needs a nonzero finite part")]
    InvalidDivisor,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
