use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Int, Rat};

/// Exact coefficient ring.
pub trait Coeff: Clone + PartialEq + Zero + One + Neg<Output = Self> + Sub<Output = Self> {
    /// Product of two nonempty coefficient vectors.
    fn convolve(a: &[Self], b: &[Self]) -> Vec<Self> {
        let mut out = vec![Self::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let acc = core::mem::replace(&mut out[i + j], Self::zero());
                out[i + j] = acc + x.clone() * y.clone();
            }
        }
        out
    }
}

impl Coeff for i64 {}
impl Coeff for Int {}
impl<C: Coeff> Coeff for Poly<C> {}

impl Coeff for Rat {
    // Work over Z with one common denominator per factor, so that each
    // output coefficient is reduced once.
    fn convolve(a: &[Self], b: &[Self]) -> Vec<Self> {
        let (na, da) = clear(a);
        let (nb, db) = clear(b);
        let den = da * db;
        Int::convolve(&na, &nb)
            .into_iter()
            .map(|c| Rat::new(c, den.clone()))
            .collect()
    }
}

/// Integer numerators over the lcm of the denominators.
fn clear(c: &[Rat]) -> (Vec<Int>, Int) {
    let l = c.iter().fold(Int::one(), |acc, x| acc.lcm(x.denom()));
    let n = c.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    (n, l)
}

/// Dense univariate polynomial, coefficients in ascending order.
///
/// The coefficient vector never ends in a zero; the zero polynomial is the
/// empty vector and has no degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly<C> {
    coeffs: Vec<C>,
}

impl<C: Coeff> Poly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: C) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `c·x^k`.
    pub fn monomial(c: C, k: usize) -> Self {
        let mut coeffs = vec![C::zero(); k];
        coeffs.push(c);
        Poly::new(coeffs)
    }

    /// The variable `x`.
    pub fn x() -> Self {
        Poly::monomial(C::one(), 1)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    /// Coefficient of `x^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &C) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![C::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `c_k = c_{n-k}` for all `k`, reading coefficients past the degree as zero.
    pub fn is_palindromic(&self, n: usize) -> bool {
        if self.degree().is_some_and(|d| d > n) {
            return false;
        }
        (0..=n).all(|k| self.coeff(k) == self.coeff(n - k))
    }

    /// Substitute `x² ↦ y` in a polynomial with vanishing odd coefficients.
    /// Returns `None` if some odd coefficient is nonzero.
    pub fn eval_even_substitution(&self, y: &C) -> Option<C> {
        if self.coeffs.iter().skip(1).step_by(2).any(|c| !c.is_zero()) {
            return None;
        }
        let halved: Vec<C> = self.coeffs.iter().step_by(2).cloned().collect();
        Some(Poly::new(halved).eval(y))
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<C: Coeff> Zero for Poly<C> {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<C: Coeff> One for Poly<C> {
    fn one() -> Self {
        Poly {
            coeffs: vec![C::one()],
        }
    }
}

impl<C: Coeff> Add<&Poly<C>> for &Poly<C> {
    type Output = Poly<C>;

    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<C: Coeff> Sub<&Poly<C>> for &Poly<C> {
    type Output = Poly<C>;

    fn sub(self, rhs: &Poly<C>) -> Poly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<C: Coeff> Mul<&Poly<C>> for &Poly<C> {
    type Output = Poly<C>;

    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        Poly::new(C::convolve(&self.coeffs, &rhs.coeffs))
    }
}

impl<C: Coeff> Neg for &Poly<C> {
    type Output = Poly<C>;

    fn neg(self) -> Poly<C> {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl<C: Coeff> $tr<Poly<C>> for Poly<C> {
            type Output = Poly<C>;
            fn $m(self, rhs: Poly<C>) -> Poly<C> { (&self).$m(&rhs) }
        }
        impl<C: Coeff> $tr<&Poly<C>> for Poly<C> {
            type Output = Poly<C>;
            fn $m(self, rhs: &Poly<C>) -> Poly<C> { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl<C: Coeff> Neg for Poly<C> {
    type Output = Poly<C>;

    fn neg(self) -> Poly<C> {
        -&self
    }
}

impl Poly<Int> {
    pub fn to_rational(&self) -> Poly<Rat> {
        self.map(|c| Rat::from_integer(c.clone()))
    }

    /// All coefficients `>= 0`.
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }
}

/// Euclidean structure over the rationals.
impl Poly<Rat> {
    /// Scale to leading coefficient one. The zero polynomial is returned as is.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Poly::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
        }
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    /// Quotient and remainder; `None` when dividing by zero.
    pub fn div_rem(&self, d: &Self) -> Option<(Self, Self)> {
        let dd = d.degree()?;
        let n = self.coeffs.len();
        if n <= dd {
            return Some((Poly::zero(), self.clone()));
        }
        // Pseudo-division over Z: self = rem / scale throughout.
        let (mut rem, mut scale) = clear(&self.coeffs);
        let (dn, dl) = clear(&d.coeffs);
        let lead = &dn[dd];
        let mut quot = vec![Rat::zero(); n - dd];
        for k in (dd..n).rev() {
            let top = core::mem::replace(&mut rem[k], Int::zero());
            if top.is_zero() {
                continue;
            }
            quot[k - dd] = Rat::new(&top * &dl, &scale * lead);
            for x in &mut rem[..k] {
                *x *= lead;
            }
            for (j, dc) in dn[..dd].iter().enumerate() {
                rem[k - dd + j] -= &top * dc;
            }
            scale *= lead;
        }
        rem.truncate(dd);
        Some((
            Poly::new(quot),
            Poly::new(
                rem.into_iter()
                    .map(|c| Rat::new(c, scale.clone()))
                    .collect(),
            ),
        ))
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d)?;
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).is_some_and(|(_, r)| r.is_zero())
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() || super::modp::certainly_coprime(self, other)
        {
            return Poly::one();
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("nonzero divisor").1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Extended gcd: `(g, s, t)` with `s·a + t·b = g`, `g` monic (or zero).
    pub fn xgcd(a: &Self, b: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = core::mem::replace(&mut r1, r);
            s0 = core::mem::replace(&mut s1, s);
            t0 = core::mem::replace(&mut t1, t);
        }
        match r0.leading().cloned() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = lc.recip();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let g = self.gcd(other);
        (self * other)
            .exact_div(&g)
            .expect("gcd divides product")
            .monic()
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rat::from_integer(Int::from(k)))
                .collect(),
        )
    }

    /// Coefficients in reverse order, padded to degree `n`: `x^n · p(1/x)`.
    pub fn reversed(&self, n: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.resize(n + 1, Rat::zero());
        c.reverse();
        Poly::new(c)
    }

    /// Multiplicity of `place` as a factor of `self` (nonzero, place non-constant).
    pub(crate) fn multiplicity(&self, place: &Self) -> u64 {
        let mut n = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.exact_div(place) {
            cur = q;
            n += 1;
        }
        n
    }

    /// Square-free decomposition of a monic polynomial: pairs `(f_i, i)` with
    /// `self = Π f_i^i`, each `f_i` monic, square-free and pairwise coprime.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, u32)> {
        let f = self.monic();
        let mut out = Vec::new();
        if f.is_constant() {
            return out;
        }
        // Yun's algorithm (characteristic zero).
        let df = f.derivative();
        let mut a = f.gcd(&df);
        let mut b = f.exact_div(&a).expect("gcd divides");
        let mut c = df.exact_div(&a).expect("gcd divides derivative");
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while !b.is_constant() {
            a = b.gcd(&d);
            if !a.is_constant() {
                out.push((a.clone(), i));
            }
            b = b.exact_div(&a).expect("gcd divides");
            c = d.exact_div(&a).expect("gcd divides");
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    /// Rational roots with multiplicity, found by the rational root test on
    /// the integer-scaled polynomial. Roots are returned in increasing order.
    pub fn rational_roots(&self) -> Vec<(Rat, u32)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        // Strip the factor x^k first.
        let zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        let mut cur = Poly::new(self.coeffs[zeros..].to_vec());
        if zeros > 0 {
            out.push((Rat::zero(), zeros as u32));
        }
        if cur.is_constant() {
            return out;
        }
        let denom_lcm = cur
            .coeffs
            .iter()
            .fold(Int::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<Int> = cur
            .coeffs
            .iter()
            .map(|c| (c * Rat::from_integer(denom_lcm.clone())).to_integer())
            .collect();
        let lead = ints.last().expect("non-constant").abs();
        let tail = ints[0].abs();
        let mut candidates = Vec::new();
        for p in divisors(&tail) {
            for q in divisors(&lead) {
                let r = Rat::new(p.clone(), q);
                if !candidates.contains(&r) {
                    candidates.push(r.clone());
                    candidates.push(-r);
                }
            }
        }
        candidates.sort();
        for r in candidates {
            let lin = Poly::new(vec![-r.clone(), Rat::one()]);
            let m = cur.multiplicity(&lin);
            if m > 0 {
                cur = cur.exact_div(&lin.pow(m as u32)).expect("multiplicity");
                out.push((r, m as u32));
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }
}

/// Positive divisors of `n` by trial division (`n > 0`). Used only for the
/// best-effort root display, so the input is small in practice.
fn divisors(n: &Int) -> Vec<Int> {
    let mut out = Vec::new();
    let mut k = Int::one();
    while &k * &k <= *n {
        if (n % &k).is_zero() {
            out.push(k.clone());
            let other = n / &k;
            if other != k {
                out.push(other);
            }
        }
        k += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::binomial;

    fn ip(c: &[i64]) -> Poly<Int> {
        Poly::new(c.iter().map(|&x| Int::from(x)).collect())
    }

    fn qp(c: &[i64]) -> Poly<Rat> {
        ip(c).to_rational()
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&ip(&[1, 1]) * &ip(&[1, -1]), ip(&[1, 0, -1]));
    }

    #[test]
    fn multiplicative_identity() {
        let p = ip(&[3, 0, -2, 5]);
        assert_eq!(&p * &Poly::one(), p);
    }

    #[test]
    fn genus_one_surface_squared() {
        let p = ip(&[1, 2, 1]);
        assert_eq!(&p * &p, ip(&[1, 4, 6, 4, 1]));
    }

    #[test]
    fn zero_has_no_degree() {
        assert_eq!(Poly::<Int>::zero().degree(), None);
        assert_eq!(ip(&[0, 0, 0]), Poly::zero());
        assert_eq!(ip(&[5]).degree(), Some(0));
    }

    #[test]
    fn degree_adds_under_multiplication() {
        let a = ip(&[1, 2, 3]);
        let b = ip(&[0, 0, 7, 1]);
        assert_eq!((&a * &b).degree(), Some(5));
    }

    #[test]
    fn horner_evaluation() {
        assert_eq!(ip(&[1, 0, 2]).eval(&Int::from(-1)), Int::from(3));
        assert_eq!(Poly::<Int>::zero().eval(&Int::from(17)), Int::zero());
        assert_eq!(ip(&[1, 4, 6, 4, 1]).eval(&Int::from(2)), Int::from(81));
    }

    #[test]
    fn even_substitution() {
        // (1+t²)⁴ with t² ↦ 2 is 3⁴.
        let p = ip(&[1, 0, 1]).pow(4);
        assert_eq!(p.eval_even_substitution(&Int::from(2)), Some(Int::from(81)));
        assert_eq!(ip(&[1, 1]).eval_even_substitution(&Int::from(2)), None);
    }

    #[test]
    fn central_binomial_from_squaring() {
        // Pascal's triangle accumulated row by row, independently of pow().
        let mut row = vec![Int::one()];
        for _ in 0..128 {
            let mut next = vec![Int::one(); row.len() + 1];
            for k in 1..row.len() {
                next[k] = &row[k - 1] + &row[k];
            }
            row = next;
        }
        let p = ip(&[1, 1]).pow(64);
        let sq = &p * &p;
        assert_eq!(sq.coeff(64), row[64]);
        assert_eq!(sq.coeff(64), binomial(128, 64));
    }

    #[test]
    fn palindromic_check() {
        assert!(ip(&[1, 4, 7, 4, 1]).is_palindromic(4));
        assert!(!ip(&[1, 4, 7, 3, 1]).is_palindromic(4));
        assert!(ip(&[1]).is_palindromic(0));
        assert!(!ip(&[1, 1]).is_palindromic(0));
    }

    #[test]
    fn division_with_remainder() {
        let a = qp(&[-1, 0, 0, 1]);
        let b = qp(&[-1, 1]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q, qp(&[1, 1, 1]));
        assert!(r.is_zero());
        assert!(a.div_rem(&Poly::zero()).is_none());
        let (q, r) = qp(&[1, 0, 1]).div_rem(&qp(&[0, 2])).unwrap();
        assert_eq!(
            q,
            Poly::new(vec![Rat::zero(), Rat::new(1.into(), 2.into())])
        );
        assert_eq!(r, qp(&[1]));
    }

    #[test]
    fn gcd_and_xgcd() {
        let a = &qp(&[-1, 1]) * &qp(&[1, 0, 1]);
        let b = &qp(&[-1, 1]) * &qp(&[2, 1]);
        assert_eq!(a.gcd(&b), qp(&[-1, 1]));
        let (g, s, t) = Poly::xgcd(&a, &b);
        assert_eq!(g, qp(&[-1, 1]));
        assert_eq!(&(&s * &a) + &(&t * &b), g);
        assert_eq!(Poly::<Rat>::zero().gcd(&Poly::zero()), Poly::zero());
    }

    #[test]
    fn squarefree_and_roots() {
        // z²(z-1)³(z²+1)
        let p = &(&qp(&[0, 0, 1]) * &qp(&[-1, 1]).pow(3)) * &qp(&[1, 0, 1]);
        let sf = p.squarefree_decomposition();
        let prod = sf.iter().fold(Poly::one(), |acc, (f, i)| &acc * &f.pow(*i));
        assert_eq!(prod, p);
        assert_eq!(p.rational_roots(), vec![(Rat::zero(), 2), (Rat::one(), 3)]);
        let half = qp(&[-1, 2]);
        assert_eq!(
            half.rational_roots(),
            vec![(Rat::new(1.into(), 2.into()), 1)]
        );
    }
}
