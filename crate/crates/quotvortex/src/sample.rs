//! Seeded random inputs for the randomized checks.

use num_traits::{One, Zero};
use quotvortex_core::vortex::{Mat, MeroMap, PDivisor};
use quotvortex_core::{Int, Poly, Rat, RatFunc};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Sampler {
    rng: ChaCha8Rng,
}

fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

fn qp(c: &[i64]) -> Poly<Rat> {
    Poly::new(c.iter().map(|&x| rat(x)).collect())
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.random_range(lo..=hi)
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.random_bool(p)
    }

    /// Polynomial of degree at most `deg` with small integer coefficients.
    pub fn poly(&mut self, deg: usize, bound: i64) -> Poly<Rat> {
        let d = self.rng.random_range(0..=deg);
        Poly::new((0..=d).map(|_| rat(self.range(-bound, bound))).collect())
    }

    /// An irreducible factor over `Q` from a small fixed pool.
    pub fn factor(&mut self) -> Poly<Rat> {
        match self.range(0, 6) {
            0..=4 => qp(&[-self.range(-2, 2), 1]),
            5 => qp(&[1, 0, 1]),
            _ => qp(&[-2, 0, 1]),
        }
    }

    /// Product of factors with total degree at most `deg`.
    pub fn factored(&mut self, deg: usize) -> Poly<Rat> {
        let mut p = Poly::one();
        let n = self.rng.random_range(0..=deg);
        for _ in 0..n {
            let f = self.factor();
            if p.degree().unwrap_or(0) + f.degree().unwrap_or(0) <= deg {
                p = &p * &f;
            }
        }
        p
    }

    /// Numerator and denominator of degree at most `deg`; a quarter of the
    /// entries are zero.
    pub fn entry(&mut self, deg: usize) -> RatFunc {
        if self.chance(0.25) {
            return RatFunc::zero();
        }
        let num = self.poly(deg, 3);
        let den = if self.chance(0.5) {
            self.factored(deg)
        } else {
            Poly::one()
        };
        RatFunc::new(num, den).expect("nonzero denominator")
    }

    /// Nonsingular map of rank at most `max_r` with entry degree at most
    /// `deg` and twists in `[-3, 3]`.
    pub fn meromap(&mut self, max_r: usize, deg: usize) -> MeroMap {
        let r = self.rng.random_range(1..=max_r);
        self.meromap_of_rank(r, deg)
    }

    pub fn meromap_of_rank(&mut self, r: usize, deg: usize) -> MeroMap {
        loop {
            let entries: Vec<RatFunc> = (0..r * r).map(|_| self.entry(deg)).collect();
            let twist: Vec<i64> = (0..r).map(|_| self.range(-3, 3)).collect();
            if let Ok(f) = MeroMap::new(Mat::new(r, r, entries), twist) {
                return f;
            }
        }
    }

    /// `β f` for a random isomorphism `β : O(a) → O(a')`: constant
    /// scalings, elementary moves `E_ij(p)` with `deg p ≤ a_i - a_j`, then a
    /// permutation of the summands.
    pub fn gauge(&mut self, f: &MeroMap) -> MeroMap {
        let r = f.rank();
        let a = f.twist();
        let mut beta = Mat::<RatFunc>::identity(r);
        for i in 0..r {
            let mut s = self.range(-3, 3);
            if s == 0 {
                s = 2;
            }
            beta.set(i, i, RatFunc::from_int(s));
        }
        for _ in 0..2 * r {
            let (i, j) = (self.rng.random_range(0..r), self.rng.random_range(0..r));
            if i == j || a[i] < a[j] {
                continue;
            }
            let p = self.poly((a[i] - a[j]) as usize, 2);
            let mut e = Mat::<RatFunc>::identity(r);
            e.set(i, j, RatFunc::from_poly(p));
            beta = &e * &beta;
        }
        let mut perm: Vec<usize> = (0..r).collect();
        for i in (1..r).rev() {
            perm.swap(i, self.rng.random_range(0..=i));
        }
        let moved = &beta * f.matrix();
        let mat = Mat::from_fn(r, r, |i, j| moved.get(perm[i], j).clone());
        let twist = perm.iter().map(|&k| a[k]).collect();
        MeroMap::new(mat, twist).expect("gauge transforms are invertible")
    }

    pub fn divisor(&mut self) -> PDivisor {
        let finite = self.factored(4);
        let inf = self.range(0, 2) as u64;
        PDivisor::new(finite, inf).expect("nonzero")
    }

    /// Random pair; about a third of the pairs share a finite point and
    /// about a third both carry mass at ∞.
    pub fn divisor_pair(&mut self) -> (PDivisor, PDivisor) {
        let x = self.divisor();
        let mut y = self.divisor();
        match self.range(0, 2) {
            0 => {
                let f = self.factor();
                let x2 = PDivisor::new(x.finite() * &f, x.inf_mult()).expect("nonzero");
                y = PDivisor::new(y.finite() * &f, y.inf_mult()).expect("nonzero");
                return (x2, y);
            }
            1 => {
                let x2 = PDivisor::new(x.finite().clone(), x.inf_mult().max(1)).expect("nonzero");
                y = PDivisor::new(y.finite().clone(), y.inf_mult().max(1)).expect("nonzero");
                return (x2, y);
            }
            _ => {}
        }
        (x, y)
    }

    /// Nonsingular `n × n` polynomial matrix with entries of degree at most
    /// `deg`. Half of the samples have a row multiplied by a common factor so
    /// that invariant factors are nontrivial.
    pub fn poly_matrix(&mut self, max_n: usize, deg: usize) -> Mat<Poly<Rat>> {
        let n = self.rng.random_range(1..=max_n);
        loop {
            let structured = self.chance(0.5);
            let base = if structured {
                deg.saturating_sub(2)
            } else {
                deg
            };
            let mut m = Mat::from_fn(n, n, |_, _| Poly::zero());
            for i in 0..n {
                for j in 0..n {
                    m.set(i, j, self.poly(base, 3));
                }
            }
            if structured {
                let f = self.factored(2);
                let i = self.rng.random_range(0..n);
                for j in 0..n {
                    let v = m.get(i, j) * &f;
                    m.set(i, j, v);
                }
            }
            if !m.to_ratfunc().det().is_zero() {
                return m;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use quotvortex_core::vortex::{is_equivalent, moduli_point};

    #[test]
    fn seeded_streams_repeat() {
        let mut a = Sampler::new(7);
        let mut b = Sampler::new(7);
        for _ in 0..5 {
            assert_eq!(a.meromap(3, 4), b.meromap(3, 4));
        }
    }

    #[test]
    fn gauge_is_an_equivalence() {
        let mut s = Sampler::new(11);
        for _ in 0..10 {
            let f = s.meromap(3, 2);
            let g = s.gauge(&f);
            assert!(is_equivalent(&f, &g).unwrap());
            assert_eq!(moduli_point(&f), moduli_point(&g));
        }
    }

    #[test]
    fn bounds_are_respected() {
        let mut s = Sampler::new(3);
        for _ in 0..50 {
            let m = s.poly_matrix(4, 5);
            assert!(m.rows() <= 4);
            assert!(m.entries().iter().all(|p| p.degree().unwrap_or(0) <= 5));
            let d = s.divisor();
            assert!(d.finite().degree().unwrap() <= 4 && d.inf_mult() <= 2);
            let e = s.entry(4);
            assert!(e.num().degree().unwrap_or(0) <= 4 && e.den().degree().unwrap() <= 4);
        }
    }
}
