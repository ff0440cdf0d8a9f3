//! Images of rational polynomials modulo word-size primes, used to settle
//! coprimality without coefficient growth.

use alloc::vec::Vec;

use num_traits::ToPrimitive;

use super::{Int, Poly, Rat};

const PRIMES: [u64; 3] = [(1 << 61) - 1, (1 << 62) - 57, (1 << 63) - 25];

fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    acc
}

fn inv(a: u64, p: u64) -> u64 {
    pow(a, p - 2, p)
}

fn reduce_int(n: &Int, p: u64) -> u64 {
    let m = n % Int::from(p);
    let m = if m < Int::from(0) {
        m + Int::from(p)
    } else {
        m
    };
    m.to_u64().expect("residue fits")
}

fn reduce_rat(x: &Rat, p: u64) -> Option<u64> {
    let d = reduce_int(x.denom(), p);
    (d != 0).then(|| mul(reduce_int(x.numer(), p), inv(d, p), p))
}

/// Image with the same degree, or `None` if `p` divides a denominator or
/// the leading coefficient.
fn image(a: &Poly<Rat>, p: u64) -> Option<Vec<u64>> {
    let v: Vec<u64> = a
        .coeffs()
        .iter()
        .map(|c| reduce_rat(c, p))
        .collect::<Option<_>>()?;
    (v.last().is_some_and(|&lc| lc != 0)).then_some(v)
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn rem(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    let db = b.len() - 1;
    let lc_inv = inv(b[db], p);
    while a.len() > db {
        let k = a.len() - 1;
        let c = mul(a[k], lc_inv, p);
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                let t = mul(c, bj, p);
                let slot = &mut a[k - db + j];
                *slot = (*slot + p - t) % p;
            }
        }
        a.pop();
        trim(&mut a);
    }
    a
}

/// Degree of `gcd(a, b)` modulo `p`.
fn gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> usize {
    while !b.is_empty() {
        let r = rem(a, &b, p);
        a = b;
        b = r;
    }
    a.len().saturating_sub(1)
}

/// `true` only when `a` and `b` are certainly coprime over `Q`. A prime
/// that keeps both degrees gives an image gcd of degree at least the true
/// one, so degree zero there is a proof.
pub(crate) fn certainly_coprime(a: &Poly<Rat>, b: &Poly<Rat>) -> bool {
    PRIMES.iter().any(|&p| match (image(a, p), image(b, p)) {
        (Some(x), Some(y)) => gcd_degree(x, y, p) == 0,
        _ => false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(c: &[i64]) -> Poly<Rat> {
        Poly::new(c.iter().map(|&x| Rat::from_integer(Int::from(x))).collect())
    }

    #[test]
    fn detects_common_factors() {
        let a = &qp(&[-1, 1]) * &qp(&[2, 0, 1]);
        let b = &qp(&[-1, 1]) * &qp(&[5, 3]);
        assert!(!certainly_coprime(&a, &b));
        assert!(certainly_coprime(&qp(&[2, 0, 1]), &qp(&[5, 3])));
    }

    #[test]
    fn primes_are_prime_enough() {
        // Fermat test to base 2 and 3.
        for p in PRIMES {
            assert_eq!(pow(2, p - 1, p), 1);
            assert_eq!(pow(3, p - 1, p), 1);
        }
    }

    #[test]
    fn rational_coefficients_reduce() {
        let half = Rat::new(Int::from(1), Int::from(2));
        let p = PRIMES[0];
        assert_eq!(mul(reduce_rat(&half, p).unwrap(), 2, p), 1);
        assert_eq!(reduce_int(&Int::from(-1), p), p - 1);
    }
}
