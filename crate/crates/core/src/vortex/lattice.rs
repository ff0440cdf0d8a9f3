//! Full-rank lattices in `Q(z)^r`, i.e. vector bundles on `P¹` sitting
//! inside a fixed generic fiber.
//!
//! A lattice is determined by its stalks: a `Q[z]`-module (all finite
//! places at once) and a module over the local ring `O_∞` at infinity.
//! Each is kept as a basis in canonical column Hermite form:
//!
//! * finite chart: upper triangular, diagonal entries monic (as rational
//!   functions), each entry above the diagonal `x` in row `i` reduced so that
//!   `x / d_i` is a proper fraction;
//! * ∞ chart: upper triangular, diagonal entries `z^{-e_i}` (i.e. `w^{e_i}`
//!   for `w = 1/z`), each entry above the diagonal reduced so that
//!   `x · z^{e_i}` is a polynomial in `z` without constant term (a polar part
//!   at ∞).
//!
//! Both forms are unique, so lattice equality is structural. The ∞ data is
//! exact: reduction modulo `w^{e}` keeps finitely many Laurent terms.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{Mat, VortexError};
use crate::algebra::{Coeff, Poly, Rat, RatFunc};

/// Euclidean structure used by the Hermite reduction in one chart.
trait Chart {
    type Elem: Coeff;

    /// Euclidean size; smaller entries make better pivots. `None` for zero.
    fn size(&self, x: &Self::Elem) -> Option<i64>;
    /// `q` with `a - q·b` zero or of smaller size.
    fn quotient(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Unit `u` making `u·d` the canonical diagonal entry.
    fn normalizer(&self, d: &Self::Elem) -> Self::Elem;
    /// `q` making `x - q·d` the canonical residue modulo `d`.
    fn reduction(&self, x: &Self::Elem, d: &Self::Elem) -> Self::Elem;
}

struct PolyChart;

impl Chart for PolyChart {
    type Elem = Poly<Rat>;

    fn size(&self, x: &Poly<Rat>) -> Option<i64> {
        x.degree().map(|d| d as i64)
    }

    fn quotient(&self, a: &Poly<Rat>, b: &Poly<Rat>) -> Poly<Rat> {
        a.div_rem(b).expect("nonzero divisor").0
    }

    fn normalizer(&self, d: &Poly<Rat>) -> Poly<Rat> {
        Poly::constant(d.leading().expect("nonzero").recip())
    }

    fn reduction(&self, x: &Poly<Rat>, d: &Poly<Rat>) -> Poly<Rat> {
        self.quotient(x, d)
    }
}

struct InfinityChart;

impl Chart for InfinityChart {
    type Elem = RatFunc;

    fn size(&self, x: &RatFunc) -> Option<i64> {
        x.valuation_at_infinity()
    }

    fn quotient(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a / b
    }

    fn normalizer(&self, d: &RatFunc) -> RatFunc {
        let e = d.valuation_at_infinity().expect("nonzero");
        &RatFunc::z_pow(-e) / d
    }

    fn reduction(&self, x: &RatFunc, d: &RatFunc) -> RatFunc {
        let y = x / d;
        let mut polar = y.polynomial_part().into_coeffs();
        if let Some(c0) = polar.first_mut() {
            *c0 = Rat::zero();
        }
        &y - &RatFunc::from_poly(Poly::new(polar))
    }
}

/// Column Hermite form of the module spanned by `gens` (columns, `r` rows).
/// Fails when the span has rank below `r`.
fn hermite<C: Chart>(
    chart: &C,
    r: usize,
    gens: Vec<Vec<C::Elem>>,
) -> Result<Vec<Vec<C::Elem>>, VortexError> {
    let mut active = gens;
    let mut basis: Vec<Vec<C::Elem>> = Vec::with_capacity(r);
    for i in (0..r).rev() {
        loop {
            let mut best: Option<(usize, i64)> = None;
            for (k, col) in active.iter().enumerate() {
                if let Some(s) = chart.size(&col[i]) {
                    if best.is_none_or(|(_, bs)| s < bs) {
                        best = Some((k, s));
                    }
                }
            }
            let Some((p, _)) = best else {
                return Err(VortexError::SingularMatrix);
            };
            let mut done = true;
            for k in 0..active.len() {
                if k == p || active[k][i].is_zero() {
                    continue;
                }
                let q = chart.quotient(&active[k][i], &active[p][i]);
                let pivot = active[p].clone();
                sub_multiple(&mut active[k], &pivot, &q, i);
                done &= active[k][i].is_zero();
            }
            if done {
                basis.push(active.swap_remove(p));
                break;
            }
        }
    }
    basis.reverse();

    for (i, col) in basis.iter_mut().enumerate() {
        let u = chart.normalizer(&col[i]);
        for x in col.iter_mut().take(i + 1) {
            *x = x.clone() * u.clone();
        }
    }
    for j in 1..r {
        for i in (0..j).rev() {
            let q = chart.reduction(&basis[j][i], &basis[i][i]);
            if q.is_zero() {
                continue;
            }
            let pivot = basis[i].clone();
            sub_multiple(&mut basis[j], &pivot, &q, i);
        }
    }
    Ok(basis)
}

/// `col[0..=top] -= q · pivot[0..=top]`; rows below `top` are zero in `pivot`.
fn sub_multiple<T: Coeff>(col: &mut [T], pivot: &[T], q: &T, top: usize) {
    for (x, p) in col.iter_mut().zip(pivot).take(top + 1) {
        if !p.is_zero() {
            *x = x.clone() - q.clone() * p.clone();
        }
    }
}

/// A vector bundle on `P¹` as a lattice in `Q(z)^r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    finite: Mat<RatFunc>,
    infinite: Mat<RatFunc>,
}

impl Lattice {
    /// Lattice whose finite stalk is spanned by the columns of `finite` and
    /// whose stalk at ∞ is spanned by the columns of `infinite`. Both must
    /// have `r` rows and rank `r`; extra generating columns are allowed.
    pub fn from_generators(
        finite: &Mat<RatFunc>,
        infinite: &Mat<RatFunc>,
    ) -> Result<Self, VortexError> {
        let r = finite.rows();
        if infinite.rows() != r {
            return Err(VortexError::DimensionMismatch {
                left: r,
                right: infinite.rows(),
            });
        }
        Ok(Lattice {
            finite: finite_hermite(finite)?,
            infinite: infinite_hermite(infinite)?,
        })
    }

    /// The same matrix generates both stalks.
    pub fn from_basis(basis: &Mat<RatFunc>) -> Result<Self, VortexError> {
        Lattice::from_generators(basis, basis)
    }

    /// The trivial bundle `O^r`.
    pub fn trivial(r: usize) -> Self {
        let id = Mat::identity(r);
        Lattice {
            finite: id.clone(),
            infinite: id,
        }
    }

    /// `O(a_1) ⊕ … ⊕ O(a_r)`: sections of `O(a)` are polynomials of degree
    /// at most `a`, so the stalk at ∞ is generated by `z^a`.
    pub fn twisted(twist: &[i64]) -> Self {
        let inf: Vec<RatFunc> = twist.iter().map(|&a| RatFunc::z_pow(a)).collect();
        Lattice {
            finite: Mat::identity(twist.len()),
            infinite: Mat::diagonal(&inf),
        }
    }

    pub fn rank(&self) -> usize {
        self.finite.rows()
    }

    /// Canonical basis of the finite stalk.
    pub fn finite_basis(&self) -> &Mat<RatFunc> {
        &self.finite
    }

    /// Canonical basis of the stalk at ∞.
    pub fn inf_basis(&self) -> &Mat<RatFunc> {
        &self.infinite
    }

    /// Exponents `e_i` with `∞`-diagonal `w^{e_i}`, `w = 1/z`.
    pub fn inf_exponents(&self) -> Vec<i64> {
        (0..self.rank())
            .map(|i| {
                self.infinite
                    .get(i, i)
                    .valuation_at_infinity()
                    .expect("nonzero diagonal")
            })
            .collect()
    }

    /// Product of the finite diagonal: the determinant of the finite basis
    /// up to a unit of `Q[z]`.
    pub fn finite_det(&self) -> RatFunc {
        (0..self.rank()).fold(RatFunc::one(), |acc, i| &acc * self.finite.get(i, i))
    }

    /// Degree of the bundle: `-Σ_finite deg(det) - v_∞(det)`.
    pub fn degree(&self) -> i64 {
        let fin = self.finite_det().degree().expect("nonzero");
        let inf: i64 = self.inf_exponents().iter().sum();
        -fin - inf
    }

    /// Image under an invertible matrix.
    pub fn transform(&self, m: &Mat<RatFunc>) -> Result<Self, VortexError> {
        Lattice::from_generators(&(m * &self.finite), &(m * &self.infinite))
    }

    /// `L1 + L2`.
    pub fn sum(&self, other: &Self) -> Result<Self, VortexError> {
        self.check_rank(other)?;
        Lattice::from_generators(
            &self.finite.hconcat(&other.finite),
            &self.infinite.hconcat(&other.infinite),
        )
    }

    /// Dual lattice under the standard pairing: basis `(B⁻¹)ᵀ` in each chart.
    pub fn dual(&self) -> Self {
        let f = self
            .finite
            .inverse()
            .expect("lattice basis is invertible")
            .transpose();
        let i = self
            .infinite
            .inverse()
            .expect("lattice basis is invertible")
            .transpose();
        Lattice::from_generators(&f, &i).expect("dual has full rank")
    }

    /// `L1 ∩ L2`. The columns of `[[A, 0], [A, -B]]` span `{(Ax, Ax - By)}`;
    /// in column Hermite form the first `r` columns span the vectors with
    /// vanishing lower half, which are `Ax = By`.
    pub fn intersect(&self, other: &Self) -> Result<Self, VortexError> {
        self.check_rank(other)?;
        let r = self.rank();
        let fin = finite_hermite(&stacked(&self.finite, &other.finite))?;
        let inf = infinite_hermite(&stacked(&self.infinite, &other.infinite))?;
        let block = |m: &Mat<RatFunc>| Mat::from_fn(r, r, |i, j| m.get(i, j).clone());
        Ok(Lattice {
            finite: block(&fin),
            infinite: block(&inf),
        })
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Self) -> bool {
        self.check_rank(other).is_ok() && self.sum(other).is_ok_and(|s| &s == self)
    }

    /// Length of `self / sub` when `sub ⊆ self`.
    pub fn colength(&self, sub: &Self) -> Option<u64> {
        self.contains(sub)
            .then(|| (self.degree() - sub.degree()) as u64)
    }

    fn check_rank(&self, other: &Self) -> Result<(), VortexError> {
        if self.rank() != other.rank() {
            return Err(VortexError::DimensionMismatch {
                left: self.rank(),
                right: other.rank(),
            });
        }
        Ok(())
    }
}

fn finite_hermite(gens: &Mat<RatFunc>) -> Result<Mat<RatFunc>, VortexError> {
    let r = gens.rows();
    let denom = gens
        .entries()
        .iter()
        .fold(Poly::one(), |acc: Poly<Rat>, x| acc.lcm(x.den()));
    let cleared = gens.map(|x| {
        let scale = denom.exact_div(x.den()).expect("lcm is a multiple");
        x.num() * &scale
    });
    let basis = hermite(&PolyChart, r, cleared.columns())?;
    let d = RatFunc::from_poly(denom);
    Ok(Mat::from_fn(r, r, |i, j| {
        &RatFunc::from_poly(basis[j][i].clone()) / &d
    }))
}

fn stacked(a: &Mat<RatFunc>, b: &Mat<RatFunc>) -> Mat<RatFunc> {
    let r = a.rows();
    Mat::from_fn(2 * r, 2 * r, |i, j| match (i < r, j < r) {
        (true, true) => a.get(i, j).clone(),
        (true, false) => RatFunc::zero(),
        (false, true) => a.get(i - r, j).clone(),
        (false, false) => -b.get(i - r, j - r).clone(),
    })
}

fn infinite_hermite(gens: &Mat<RatFunc>) -> Result<Mat<RatFunc>, VortexError> {
    let r = gens.rows();
    let basis = hermite(&InfinityChart, r, gens.columns())?;
    Ok(Mat::from_columns(r, &basis))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Int;
    use alloc::vec;

    fn c(n: i64) -> RatFunc {
        RatFunc::from_int(n)
    }

    fn z() -> RatFunc {
        RatFunc::z()
    }

    fn diag(entries: &[RatFunc]) -> Mat<RatFunc> {
        Mat::diagonal(entries)
    }

    fn qp(co: &[i64]) -> Poly<Rat> {
        Poly::new(
            co.iter()
                .map(|&x| Rat::from_integer(Int::from(x)))
                .collect(),
        )
    }

    #[test]
    fn twisted_degrees() {
        assert_eq!(Lattice::trivial(3).degree(), 0);
        assert_eq!(Lattice::twisted(&[2, -1, 3]).degree(), 4);
        assert_eq!(Lattice::twisted(&[2]).inf_exponents(), vec![-2]);
    }

    #[test]
    fn hermite_form_is_canonical() {
        // Two bases of the same lattice: B and B·U with U unimodular in both charts.
        let b = Mat::new(2, 2, vec![&z() + &c(1), c(3), z(), &z() * &z()]);
        let u = Mat::new(2, 2, vec![c(1), &z() + &c(2), c(0), c(-1)]);
        let bu = &b * &u;
        let l1 = Lattice::from_generators(&b, &Mat::identity(2)).unwrap();
        let l2 = Lattice::from_generators(&bu, &Mat::identity(2)).unwrap();
        assert_eq!(l1, l2);
        assert!(l1.finite_basis().is_upper_triangular());
        assert_eq!(l1.finite_det(), RatFunc::from_poly(qp(&[0, -3, 1, 1])));
    }

    #[test]
    fn infinity_chart_canonical() {
        // Units of O_∞ (valuation 0) must not change the stalk at ∞.
        let unit = RatFunc::new(qp(&[1, 1]), qp(&[3, 2])).unwrap();
        let b = Mat::new(2, 2, vec![z(), c(1), c(0), z_inv()]);
        let v = Mat::new(2, 2, vec![unit.clone(), z_inv(), c(0), c(1)]);
        let l1 = Lattice::from_generators(&Mat::identity(2), &b).unwrap();
        let l2 = Lattice::from_generators(&Mat::identity(2), &(&b * &v)).unwrap();
        assert_eq!(l1, l2);
        assert_eq!(l1.inf_exponents(), vec![-1, 1]);
    }

    fn z_inv() -> RatFunc {
        RatFunc::z_pow(-1)
    }

    #[test]
    fn intersection_examples() {
        let l = Lattice::from_basis(&diag(&[c(1), z()])).unwrap();
        assert_eq!(l.intersect(&l).unwrap(), l);
        let m = Lattice::from_generators(&diag(&[z(), c(1)]), &Mat::identity(2)).unwrap();
        let l = Lattice::from_generators(&diag(&[c(1), z()]), &Mat::identity(2)).unwrap();
        let expected = Lattice::from_generators(&diag(&[z(), z()]), &Mat::identity(2)).unwrap();
        assert_eq!(l.intersect(&m).unwrap(), expected);
    }

    #[test]
    fn intersection_with_fractional_lattice() {
        // span{(1,0), (1/z,1/z)} ∩ O²: colength identity
        // len((L1 + L2)/L1) = len(L2/(L1 ∩ L2)).
        let l1 = Lattice::from_basis(&Mat::new(2, 2, vec![c(1), z_inv(), c(0), z_inv()])).unwrap();
        let l2 = Lattice::trivial(2);
        let cap = l1.intersect(&l2).unwrap();
        let sum = l1.sum(&l2).unwrap();
        assert!(l1.contains(&cap) && l2.contains(&cap));
        assert_eq!(sum.colength(&l1), l2.colength(&cap));
        assert_eq!(l2.colength(&cap), Some(1));
    }

    #[test]
    fn dimension_mismatch() {
        let a = Lattice::trivial(2);
        let b = Lattice::trivial(3);
        assert!(matches!(
            a.intersect(&b),
            Err(VortexError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn containment_and_colength() {
        let big = Lattice::trivial(2);
        let small =
            Lattice::from_generators(&diag(&[z(), &z() * &z()]), &diag(&[z_inv(), c(1)])).unwrap();
        assert!(big.contains(&small));
        assert!(!small.contains(&big));
        assert_eq!(big.colength(&small), Some(4));
        assert_eq!(small.colength(&big), None);
    }
}
