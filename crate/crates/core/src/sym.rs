//! Symmetric products `Sym^n X` of a smooth projective curve of genus `g`.
//!
//! Poincaré polynomials come from Macdonald's generating function
//!
//! ```text
//!     Σ_n P(Sym^n X, t) q^n = (1 + q t)^{2g} / ((1 - q)(1 - q t²))
//! ```
//!
//! and point counts over `F_q` from the zeta function
//! `Z(u) = P₁(u) / ((1 - u)(1 - q u))`, whose `u^n` coefficient counts
//! effective divisors of degree `n`.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::algebra::{binomial, Int, Poly, TruncSeries};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymError {
    #[error("Betti index {k} outside 0..={max}")]
    IndexOutOfRange { k: i64, max: usize },
    #[error("invalid zeta data: {0}")]
    InvalidZeta(&'static str),
}

/// Poincaré polynomials `P(Sym^n X, t)` for `n = 0..=max_n` at a fixed genus.
///
/// All entries come out of a single series expansion, so this doubles as the
/// memo table for callers that need many symmetric powers at once.
#[derive(Debug, Clone)]
pub struct PoincareTable {
    genus: u32,
    polys: Vec<Poly<Int>>,
}

impl PoincareTable {
    pub fn new(genus: u32, max_n: usize) -> Self {
        let order = max_n;
        let one = Poly::<Int>::one();
        let t = Poly::<Int>::x();

        // (1 + q t)^{2g}, expanded by repeated multiplication.
        let linear = TruncSeries::new(vec![one.clone(), t.clone()], order);
        let mut numerator = TruncSeries::one(order);
        for _ in 0..2 * genus {
            numerator = numerator.mul(&linear);
        }

        // (1 - q)(1 - q t²)
        let a = TruncSeries::new(vec![one.clone(), -&one], order);
        let b = TruncSeries::new(vec![one, -&t.pow(2)], order);
        let denominator = a.mul(&b);
        let series = numerator.mul(&denominator.inv().expect("constant term is 1"));

        PoincareTable {
            genus,
            polys: series.into_coeffs(),
        }
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn max_n(&self) -> usize {
        self.polys.len() - 1
    }

    /// Panics if `n > max_n`.
    pub fn get(&self, n: usize) -> &Poly<Int> {
        &self.polys[n]
    }
}

/// `P(Sym^n X, t)` for a curve of genus `g`.
pub fn sym_poincare(n: usize, g: u32) -> Poly<Int> {
    PoincareTable::new(g, n).get(n).clone()
}

/// `b_k(Sym^n X) = Σ_{b = max(0, k-n)}^{⌊k/2⌋} C(2g, k - 2b)`.
///
/// Closed form read off the generating function: a term `q^a t^a` from the
/// numerator and `q^{j+b} t^{2b}` from the denominator contribute to
/// `q^n t^k` exactly when `a + 2b = k` and `a + b <= n`.
pub fn sym_betti_closed(n: usize, g: u32, k: i64) -> Result<Int, SymError> {
    if k < 0 || k as usize > 2 * n {
        return Err(SymError::IndexOutOfRange { k, max: 2 * n });
    }
    let k = k as usize;
    let lo = k.saturating_sub(n);
    Ok((lo..=k / 2)
        .map(|b| binomial(2 * g as u64, (k - 2 * b) as u64))
        .sum())
}

/// Zeta data of a curve over `F_q`: the field size and the numerator
/// `P₁(u)` of the zeta function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveZeta {
    q: u64,
    numerator: Poly<Int>,
}

impl CurveZeta {
    /// Checks: `q` is a prime power, `P₁(0) = 1`, `deg P₁` is even. The
    /// numerator is not required to come from an actual curve.
    pub fn new(q: u64, numerator: Poly<Int>) -> Result<Self, SymError> {
        if !is_prime_power(q) {
            return Err(SymError::InvalidZeta("q must be a prime power"));
        }
        if !numerator.coeff(0).is_one() {
            return Err(SymError::InvalidZeta("numerator constant term must be 1"));
        }
        if !numerator.degree().unwrap_or(0).is_multiple_of(2) {
            return Err(SymError::InvalidZeta("numerator degree must be even"));
        }
        Ok(CurveZeta { q, numerator })
    }

    /// The projective line over `F_q`: numerator `1`.
    pub fn projective_line(q: u64) -> Result<Self, SymError> {
        CurveZeta::new(q, Poly::one())
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn numerator(&self) -> &Poly<Int> {
        &self.numerator
    }

    pub fn genus(&self) -> u32 {
        (self.numerator.degree().unwrap_or(0) / 2) as u32
    }

    /// `c_{2g-i} = q^{g-i} c_i` for `0 <= i <= g`.
    pub fn satisfies_functional_equation(&self) -> bool {
        let g = self.genus() as usize;
        let q = Int::from(self.q);
        (0..=g).all(|i| {
            self.numerator.coeff(2 * g - i)
                == num_traits::pow(q.clone(), g - i) * self.numerator.coeff(i)
        })
    }

    /// `|c_i| <= C(2g, i) q^{i/2}`, the bound forced by the Riemann
    /// hypothesis for curves. Informational only.
    pub fn within_weil_bounds(&self) -> bool {
        let g = self.genus() as u64;
        let q = Int::from(self.q);
        (0..=2 * g).all(|i| {
            let c = self.numerator.coeff(i as usize).abs();
            let b = binomial(2 * g, i);
            &c * &c <= &b * &b * num_traits::pow(q.clone(), i as usize)
        })
    }
}

fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let mut m = q;
            while m.is_multiple_of(p) {
                m /= p;
            }
            return m == 1;
        }
        p += 1;
    }
    true
}

/// `#Sym^n(X)(F_q)` for `n = 0..=max_n`.
pub fn sym_point_counts(max_n: usize, zeta: &CurveZeta) -> Vec<Int> {
    let order = max_n;
    let q = Int::from(zeta.q);
    let num = TruncSeries::from_poly(&zeta.numerator, order);
    let a = TruncSeries::new(vec![Int::one(), -Int::one()], order);
    let b = TruncSeries::new(vec![Int::one(), -q], order);
    let den = a.mul(&b).inv().expect("constant term is 1");
    num.mul(&den).into_coeffs()
}

/// Number of effective divisors of degree `n` on the curve over `F_q`.
pub fn sym_point_count(n: usize, zeta: &CurveZeta) -> Int {
    sym_point_counts(n, zeta).pop().unwrap_or_else(Int::zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> Poly<Int> {
        Poly::new(c.iter().map(|&x| Int::from(x)).collect())
    }

    #[test]
    fn point_and_curve() {
        for g in 0..5 {
            assert_eq!(sym_poincare(0, g), Poly::one());
            assert_eq!(sym_poincare(1, g), ip(&[1, 2 * g as i64, 1]));
        }
    }

    #[test]
    fn projective_space_and_genus_two_square() {
        assert_eq!(sym_poincare(3, 0), ip(&[1, 0, 1, 0, 1, 0, 1]));
        assert_eq!(sym_poincare(2, 2), ip(&[1, 4, 7, 4, 1]));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(sym_betti_closed(1, 3, 1), Ok(Int::from(6)));
        assert_eq!(sym_betti_closed(5, 0, 4), Ok(Int::from(1)));
        assert_eq!(sym_betti_closed(2, 2, 2), Ok(Int::from(7)));
        assert_eq!(
            sym_betti_closed(2, 2, 5),
            Err(SymError::IndexOutOfRange { k: 5, max: 4 })
        );
        assert!(sym_betti_closed(2, 2, -1).is_err());
    }

    #[test]
    fn stabilization_in_n() {
        for g in 0..4 {
            for n in 0..8 {
                let a = sym_poincare(n, g);
                let b = sym_poincare(n + 1, g);
                for k in 0..=n {
                    assert_eq!(a.coeff(k), b.coeff(k), "n={n} g={g} k={k}");
                }
            }
        }
    }

    #[test]
    fn point_count_examples() {
        let p1 = CurveZeta::projective_line(3).unwrap();
        assert_eq!(sym_point_count(2, &p1), Int::from(13));
        assert_eq!(sym_point_count(0, &p1), Int::one());
        let e = CurveZeta::new(2, ip(&[1, 0, 2])).unwrap();
        assert_eq!(sym_point_count(2, &e), Int::from(9));
        assert_eq!(sym_point_count(0, &e), Int::one());
        assert!(e.satisfies_functional_equation());
        assert!(e.within_weil_bounds());
    }

    #[test]
    fn projective_line_counts_geometric_sums() {
        for q in 2u64..=5 {
            let z = CurveZeta::projective_line(q).unwrap();
            let counts = sym_point_counts(8, &z);
            for (n, c) in counts.iter().enumerate() {
                let expected = (num_traits::pow(Int::from(q), n + 1) - 1) / Int::from(q - 1);
                assert_eq!(c, &expected);
            }
        }
    }

    #[test]
    fn invalid_zeta_rejected() {
        assert!(CurveZeta::new(2, ip(&[2, 0, 2])).is_err());
        assert!(CurveZeta::new(6, ip(&[1])).is_err());
        assert!(CurveZeta::new(1, ip(&[1])).is_err());
        assert!(CurveZeta::new(2, ip(&[1, 1])).is_err());
        assert!(CurveZeta::new(9, ip(&[1])).is_ok());
    }

    #[test]
    fn functional_equation_flags_fake_data() {
        let fake = CurveZeta::new(2, ip(&[1, 0, 5])).unwrap();
        assert!(!fake.satisfies_functional_equation());
        assert!(!fake.within_weil_bounds());
    }
}
