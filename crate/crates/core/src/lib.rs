//! Exact invariants of the generalized Quot schemes `Quot(r, d_p, d_z)` of a
//! smooth projective curve, together with a concrete model of meromorphic
//! vortex pairs on the projective line.
//!
//! The crate is `no_std` and only needs `alloc`. Everything is exact:
//! integers and rationals are arbitrary precision and no floating point is
//! used anywhere.
//!
//! * [`algebra`]: dense polynomials, truncated power series and rational
//!   functions in one variable.
//! * [`sym`]: Poincaré polynomials and point counts of symmetric products
//!   `Sym^n X`.
//! * [`strata`]: torus-fixed components indexed by compositions and the
//!   assembled Poincaré polynomials, Euler characteristics and point counts.
//! * [`vortex`]: lattices over `P¹`, the pole/zero decomposition of a
//!   meromorphic bundle map, the divisor map and its section, and equivalence
//!   of vortex pairs.
//!
//! Naming convention for generating functions: `q` is the series variable
//! (its exponent is the symmetric power) and `t` is the cohomology variable.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod strata;
pub mod sym;
pub mod vortex;

pub use algebra::{Int, Place, Poly, Rat, RatFunc, TruncSeries};
pub use strata::{Composition, StratumRow};
pub use sym::CurveZeta;
pub use vortex::{Lattice, Mat, MeroMap, PDivisor, QuotPoint};
