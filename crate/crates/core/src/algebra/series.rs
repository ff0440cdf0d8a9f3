use alloc::vec::Vec;

use num_traits::Zero;

use super::{AlgebraError, Coeff, Poly};

/// Power series `Σ c_k q^k` truncated after `q^order`.
///
/// Exactly `order + 1` coefficient slots are stored. Binary operations
/// produce a result of the smaller operand order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSeries<C> {
    coeffs: Vec<C>,
}

impl<C: Coeff> TruncSeries<C> {
    /// Pads with zeros or drops terms beyond `order`.
    pub fn new(mut coeffs: Vec<C>, order: usize) -> Self {
        coeffs.resize(order + 1, C::zero());
        TruncSeries { coeffs }
    }

    pub fn from_poly(p: &Poly<C>, order: usize) -> Self {
        TruncSeries::new(p.coeffs().to_vec(), order)
    }

    pub fn one(order: usize) -> Self {
        TruncSeries::new(alloc::vec![C::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &C {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let mut out: Vec<C> = (0..=order).map(|_| C::zero()).collect();
        for (i, a) in self.coeffs[..=order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=order - i].iter().enumerate() {
                let acc = core::mem::replace(&mut out[i + j], C::zero());
                out[i + j] = acc + a.clone() * b.clone();
            }
        }
        TruncSeries { coeffs: out }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        TruncSeries {
            coeffs: (0..=order)
                .map(|k| self.coeffs[k].clone() + rhs.coeffs[k].clone())
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        TruncSeries {
            coeffs: (0..=order)
                .map(|k| self.coeffs[k].clone() - rhs.coeffs[k].clone())
                .collect(),
        }
    }

    /// Multiplicative inverse. The constant term must be exactly `1`, which
    /// keeps the recursion inside the coefficient ring.
    pub fn inv(&self) -> Result<Self, AlgebraError> {
        if !self.coeffs[0].is_one() {
            return Err(AlgebraError::NonUnitConstantTerm);
        }
        let n = self.order();
        let mut out: Vec<C> = Vec::with_capacity(n + 1);
        out.push(C::one());
        for k in 1..=n {
            let mut acc = C::zero();
            for i in 1..=k {
                if self.coeffs[i].is_zero() {
                    continue;
                }
                acc = acc + self.coeffs[i].clone() * out[k - i].clone();
            }
            out.push(-acc);
        }
        Ok(TruncSeries { coeffs: out })
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }
}
