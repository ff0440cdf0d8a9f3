//! Smith normal form over `Q[z]`.

use num_traits::{One, Zero};

use super::{Mat, VortexError};
use crate::algebra::{Poly, Rat};

/// `U · D · V = M` with `U`, `V` unimodular and `D` diagonal with monic
/// invariant factors `d_1 | d_2 | … | d_r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snf {
    pub u: Mat<Poly<Rat>>,
    pub d: Mat<Poly<Rat>>,
    pub v: Mat<Poly<Rat>>,
}

impl Snf {
    pub fn invariant_factors(&self) -> alloc::vec::Vec<Poly<Rat>> {
        (0..self.d.rows())
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }
}

/// Smith normal form of a nonsingular square polynomial matrix.
///
/// Pivots are the entries of least degree, ties broken by smallest
/// `(row, col)`, so the transforms are deterministic.
pub fn snf_poly(m: &Mat<Poly<Rat>>) -> Result<Snf, VortexError> {
    if !m.is_square() {
        return Err(VortexError::RankMismatch {
            rows: m.rows(),
            cols: m.cols(),
            twist: m.cols(),
        });
    }
    let n = m.rows();
    let mut a = m.clone();
    let mut u = Mat::identity(n);
    let mut v = Mat::identity(n);

    for k in 0..n {
        loop {
            let Some((pi, pj)) = min_degree_entry(&a, k) else {
                return Err(VortexError::SingularMatrix);
            };
            // a ← R a keeps U a V fixed when U ← U R⁻¹; similarly for columns.
            a.swap_rows(k, pi);
            u.swap_cols(k, pi);
            a.swap_cols(k, pj);
            v.swap_rows(k, pj);

            let pivot = a.get(k, k).clone();
            let mut clean = true;
            for i in k + 1..n {
                if a.get(i, k).is_zero() {
                    continue;
                }
                let (q, r) = a.get(i, k).div_rem(&pivot).expect("nonzero pivot");
                a.add_row_multiple(i, k, &-&q);
                u.add_col_multiple(k, i, &q);
                clean &= r.is_zero();
            }
            for j in k + 1..n {
                if a.get(k, j).is_zero() {
                    continue;
                }
                let (q, r) = a.get(k, j).div_rem(&pivot).expect("nonzero pivot");
                a.add_col_multiple(j, k, &-&q);
                v.add_row_multiple(k, j, &q);
                clean &= r.is_zero();
            }
            if !clean {
                continue;
            }
            // Divisibility: fold an offending row into row k and go again.
            let offending = (k + 1..n).find(|&i| (k + 1..n).any(|j| !pivot.divides(a.get(i, j))));
            match offending {
                Some(i) => {
                    a.add_row_multiple(k, i, &Poly::one());
                    u.add_col_multiple(i, k, &-&Poly::<Rat>::one());
                }
                None => break,
            }
        }
        let lc = a.get(k, k).leading().expect("nonzero pivot").clone();
        if !lc.is_one() {
            a.scale_row(k, &Poly::constant(lc.recip()));
            u.scale_col(k, &Poly::constant(lc));
        }
    }
    Ok(Snf { u, d: a, v })
}

fn min_degree_entry(a: &Mat<Poly<Rat>>, k: usize) -> Option<(usize, usize)> {
    let n = a.rows();
    let mut best: Option<(usize, usize, usize)> = None;
    for i in k..n {
        for j in k..n {
            if let Some(d) = a.get(i, j).degree() {
                if best.is_none_or(|(bd, _, _)| d < bd) {
                    best = Some((d, i, j));
                }
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}
