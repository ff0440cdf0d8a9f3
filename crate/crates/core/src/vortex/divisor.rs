use num_traits::{One, Zero};

use super::VortexError;
use crate::algebra::{Poly, Rat};

/// Effective divisor on `P¹` over `Q`.
///
/// The finite part is a monic polynomial whose irreducible factors are the
/// closed points (with multiplicity); `inf_mult` is the multiplicity at ∞.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PDivisor {
    finite: Poly<Rat>,
    inf_mult: u64,
}

impl PDivisor {
    /// Any nonzero polynomial is accepted and scaled to be monic.
    pub fn new(finite: Poly<Rat>, inf_mult: u64) -> Result<Self, VortexError> {
        if finite.is_zero() {
            return Err(VortexError::InvalidDivisor);
        }
        Ok(PDivisor {
            finite: finite.monic(),
            inf_mult,
        })
    }

    pub fn empty() -> Self {
        PDivisor {
            finite: Poly::one(),
            inf_mult: 0,
        }
    }

    /// The rational point `z = a` with multiplicity one.
    pub fn point(a: Rat) -> Self {
        PDivisor {
            finite: Poly::new(alloc::vec![-a, Rat::one()]),
            inf_mult: 0,
        }
    }

    pub fn infinity(mult: u64) -> Self {
        PDivisor {
            finite: Poly::one(),
            inf_mult: mult,
        }
    }

    pub fn finite(&self) -> &Poly<Rat> {
        &self.finite
    }

    pub fn inf_mult(&self) -> u64 {
        self.inf_mult
    }

    pub fn degree(&self) -> u64 {
        self.finite.degree().expect("nonzero") as u64 + self.inf_mult
    }

    pub fn is_empty(&self) -> bool {
        self.degree() == 0
    }

    pub fn add(&self, other: &Self) -> Self {
        PDivisor {
            finite: &self.finite * &other.finite,
            inf_mult: self.inf_mult + other.inf_mult,
        }
    }

    /// No closed point lies in both supports.
    pub fn is_disjoint_from(&self, other: &Self) -> bool {
        self.finite.gcd(&other.finite).is_one() && (self.inf_mult == 0 || other.inf_mult == 0)
    }
}
