//! Exact one-variable arithmetic.

mod modp;
mod poly;
mod ratfunc;
mod series;

pub use poly::{Coeff, Poly};
pub use ratfunc::{Place, RatFunc};
pub use series::TruncSeries;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Arbitrary-precision integer.
pub type Int = BigInt;
/// Arbitrary-precision rational.
pub type Rat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("series constant term is not the unit 1")]
    NonUnitConstantTerm,
    #[error("valuation of the zero function is not an integer")]
    ZeroFunction,
    #[error("division by zero")]
    DivisionByZero,
    #[error("a place must be a monic non-constant polynomial")]
    InvalidPlace,
}

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> Int {
    if k > n {
        return Int::zero();
    }
    let k = k.min(n - k);
    let mut acc = Int::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(4, 2), Int::from(6));
        assert_eq!(binomial(0, 0), Int::from(1));
        assert_eq!(binomial(3, 5), Int::zero());
        assert_eq!(binomial(10, 3), Int::from(120));
    }
}
