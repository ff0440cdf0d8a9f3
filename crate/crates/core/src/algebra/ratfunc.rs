use alloc::vec;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{AlgebraError, Coeff, Int, Poly, Rat};

/// A closed point of `P¹` over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Place {
    /// Monic irreducible polynomial in `z`. Irreducibility is the caller's
    /// responsibility; for a reducible polynomial the valuation counts how
    /// often it divides.
    Finite(Poly<Rat>),
    Infinity,
}

impl Place {
    /// The rational point `z = a`.
    pub fn point(a: Rat) -> Place {
        Place::Finite(Poly::new(vec![-a, Rat::one()]))
    }

    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.degree().unwrap_or(0),
            Place::Infinity => 1,
        }
    }
}

/// Element of `Q(z)` in lowest terms with a monic denominator.
///
/// Zero is `0/1`. Normalization makes `==` a structural comparison.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly<Rat>,
    den: Poly<Rat>,
}

impl RatFunc {
    pub fn new(num: Poly<Rat>, den: Poly<Rat>) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides"),
                den.exact_div(&g).expect("gcd divides"),
            )
        };
        let lc = den.leading().expect("nonzero").clone();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(RatFunc { num, den })
    }

    pub fn from_poly(p: Poly<Rat>) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn from_rat(c: Rat) -> Self {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        RatFunc::from_rat(Rat::from_integer(Int::from(n)))
    }

    /// The coordinate function `z`.
    pub fn z() -> Self {
        RatFunc::from_poly(Poly::x())
    }

    /// `z^k` for any integer `k`.
    pub fn z_pow(k: i64) -> Self {
        let m = Poly::monomial(Rat::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            RatFunc::from_poly(m)
        } else {
            RatFunc {
                num: Poly::one(),
                den: m,
            }
        }
    }

    pub fn num(&self) -> &Poly<Rat> {
        &self.num
    }

    pub fn den(&self) -> &Poly<Rat> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_polynomial(&self) -> Option<&Poly<Rat>> {
        self.is_polynomial().then_some(&self.num)
    }

    /// Nonzero constant.
    pub fn is_unit_constant(&self) -> bool {
        self.is_polynomial() && self.num.degree() == Some(0)
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(RatFunc::new(self.den.clone(), self.num.clone()).expect("nonzero"))
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self * &r)
    }

    /// `deg(num) - deg(den)`; the zero function has none.
    pub fn degree(&self) -> Option<i64> {
        let n = self.num.degree()? as i64;
        Some(n - self.den.degree().expect("nonzero") as i64)
    }

    /// Order of vanishing at a place (negative for poles).
    pub fn valuation(&self, place: &Place) -> Result<i64, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroFunction);
        }
        match place {
            Place::Infinity => Ok(self.valuation_at_infinity().expect("nonzero")),
            Place::Finite(p) => {
                if p.is_constant() || !p.is_monic() {
                    return Err(AlgebraError::InvalidPlace);
                }
                Ok(self.num.multiplicity(p) as i64 - self.den.multiplicity(p) as i64)
            }
        }
    }

    /// `deg(den) - deg(num)`, `None` for zero.
    pub fn valuation_at_infinity(&self) -> Option<i64> {
        self.degree().map(|d| -d)
    }

    /// Polynomial part of the partial fraction decomposition.
    pub fn polynomial_part(&self) -> Poly<Rat> {
        self.num.div_rem(&self.den).expect("nonzero denominator").0
    }

    /// The substitution `z ↦ 1/z`.
    pub fn invert_variable(&self) -> Self {
        if self.is_zero() {
            return RatFunc::zero();
        }
        let n = self.num.degree().expect("nonzero");
        let d = self.den.degree().expect("nonzero");
        let num = self.num.reversed(n);
        let den = self.den.reversed(d);
        let shift = d as i64 - n as i64;
        &RatFunc::new(num, den).expect("nonzero") * &RatFunc::z_pow(shift)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = RatFunc::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

impl Coeff for RatFunc {}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc {
            num: Poly::one(),
            den: Poly::one(),
        }
    }
}

impl Add<&RatFunc> for &RatFunc {
    type Output = RatFunc;

    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero");
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFunc::new(num, &self.den * &rhs.den).expect("nonzero")
    }
}

impl Sub<&RatFunc> for &RatFunc {
    type Output = RatFunc;

    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul<&RatFunc> for &RatFunc {
    type Output = RatFunc;

    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.is_polynomial() && rhs.is_polynomial() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero")
    }
}

/// Panics on a zero divisor, like integer division.
impl Div<&RatFunc> for &RatFunc {
    type Output = RatFunc;

    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs)
            .expect("division of a rational function by zero")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;

    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;

    fn neg(self) -> RatFunc {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc { (&self).$m(&rhs) }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;
    use proptest::prelude::*;

    fn qp(c: &[i64]) -> Poly<Rat> {
        Poly::new(c.iter().map(|&x| Rat::from_integer(Int::from(x))).collect())
    }

    fn rf(n: &[i64], d: &[i64]) -> RatFunc {
        RatFunc::new(qp(n), qp(d)).unwrap()
    }

    #[test]
    fn normal_form_is_structural() {
        // (2z² - 2)/(4z - 4) = (z + 1)/2
        let a = rf(&[-2, 0, 2], &[-4, 4]);
        assert_eq!(a.num(), &Poly::new(vec![Rat::new(1.into(), 2.into()); 2]));
        assert!(a.den().is_one());
        assert_eq!(rf(&[0], &[3, 1]), RatFunc::zero());
        assert_eq!(
            RatFunc::new(qp(&[1]), Poly::zero()),
            Err(AlgebraError::DivisionByZero)
        );
    }

    #[test]
    fn valuation_examples() {
        let f = rf(&[0, 0, 1], &[-1, 1]);
        assert_eq!(f.valuation(&Place::point(Rat::zero())), Ok(2));
        assert_eq!(f.valuation(&Place::Infinity), Ok(-1));
        assert_eq!(f.valuation(&Place::point(Rat::one())), Ok(-1));
        let g = rf(&[1, 0, 1], &[-2, 0, 1]);
        assert_eq!(g.valuation(&Place::Finite(qp(&[1, 0, 1]))), Ok(1));
        assert_eq!(g.valuation(&Place::Finite(qp(&[-2, 0, 1]))), Ok(-1));
        assert_eq!(
            RatFunc::zero().valuation(&Place::Infinity),
            Err(AlgebraError::ZeroFunction)
        );
        assert_eq!(
            g.valuation(&Place::Finite(qp(&[3]))),
            Err(AlgebraError::InvalidPlace)
        );
    }

    #[test]
    fn invert_variable_is_involution() {
        let f = rf(&[1, 2, 0, 3], &[5, 0, 1]);
        assert_eq!(f.invert_variable().invert_variable(), f);
        assert_eq!(RatFunc::z().invert_variable(), RatFunc::z_pow(-1));
    }

    #[test]
    fn polynomial_part() {
        // (z³ + 1)/(z - 1) = z² + z + 1 + 2/(z - 1)
        assert_eq!(
            rf(&[1, 0, 0, 1], &[-1, 1]).polynomial_part(),
            qp(&[1, 1, 1])
        );
    }

    fn sorted_linear_points() -> impl Strategy<Value = Vec<(i64, i64)>> {
        proptest::collection::vec((-4i64..=4, -3i64..=3), 0..6)
    }

    proptest! {
        // Built from known factorizations: Π (z - a)^e times an irreducible
        // quadratic power, so every place appearing is known in advance.
        #[test]
        fn principal_divisor_has_degree_zero(
            lin in sorted_linear_points(),
            quad in -2i64..=2,
            scale in 1i64..=5,
        ) {
            let mut num = qp(&[scale]);
            let mut den = qp(&[1]);
            let mut places: Vec<Poly<Rat>> = Vec::new();
            for &(a, e) in &lin {
                let f = qp(&[-a, 1]);
                if e >= 0 { num = &num * &f.pow(e as u32) } else { den = &den * &f.pow((-e) as u32) }
                if !places.contains(&f) { places.push(f); }
            }
            let q = qp(&[1, 0, 1]);
            if quad >= 0 { num = &num * &q.pow(quad as u32) } else { den = &den * &q.pow((-quad) as u32) }
            places.push(q);
            let f = RatFunc::new(num, den).unwrap();
            let mut total = f.valuation(&Place::Infinity).unwrap();
            for p in places {
                let d = p.degree().unwrap() as i64;
                total += d * f.valuation(&Place::Finite(p)).unwrap();
            }
            prop_assert_eq!(total, 0);
        }

        #[test]
        fn field_laws(a in proptest::collection::vec(-3i64..=3, 1..4),
                      b in proptest::collection::vec(-3i64..=3, 1..4),
                      c in proptest::collection::vec(-3i64..=3, 1..4)) {
            let x = RatFunc::new(qp(&a), qp(&[1, 1])).unwrap();
            let y = RatFunc::new(qp(&b), qp(&[-2, 0, 1])).unwrap();
            let w = RatFunc::from_poly(qp(&c));
            prop_assert_eq!(&(&x + &y) * &w, &(&x * &w) + &(&y * &w));
            prop_assert_eq!(&(&x * &y) * &w, &x * &(&y * &w));
            prop_assert_eq!(&x * &y, &y * &x);
            if !y.is_zero() {
                prop_assert_eq!(&(&x / &y) * &y, x);
            }
        }
    }
}
