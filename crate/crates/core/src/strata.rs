//! Torus-fixed components of `Quot(r, d)` and `Quot(r, d_p, d_z)` and the
//! Poincaré polynomials assembled from them.
//!
//! Fixed components of `Quot(r, d)` are indexed by compositions
//! `P = (p_1, …, p_r)` of `d` (ordered, zeros allowed). The component is
//! `Sym^P X = Π_i Sym^{p_i} X` and its attracting cell has codimension
//! `d(P) = Σ (i - 1) p_i`. The stratification is perfect, so
//!
//! ```text
//!     P(Quot(r, d), t)         = Σ_P t^{2 d(P)} Π_i P(Sym^{p_i} X, t)
//!     P(Quot(r, d_p, d_z), t)  = Σ_P Σ_Q t^{2 [d(P) + d(Q)]} P(Sym^P X, t) P(Sym^Q X, t)
//! ```
//!
//! The one-parameter subgroup weights are never materialized; only the
//! induced codimension is used.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::algebra::{binomial, Int, Poly};
use crate::sym::{sym_point_counts, CurveZeta, PoincareTable};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StrataError {
    #[error("a composition needs at least one part")]
    EmptyComposition,
    #[error("codimension {0} of a stratum is negative")]
    NegativeCodimension(i64),
}

/// Ordered tuple of non-negative integers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self, StrataError> {
        if parts.is_empty() {
            return Err(StrataError::EmptyComposition);
        }
        Ok(Composition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `d(P) = Σ (i - 1) p_i`, the dimension of the positive-weight part of
    /// the normal space, hence the codimension of the attracting cell.
    pub fn weight(&self) -> usize {
        self.parts.iter().enumerate().map(|(i, p)| i * p).sum()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

pub fn weight(p: &Composition) -> usize {
    p.weight()
}

/// All `C(d + r - 1, r - 1)` compositions of `d` into `r` parts, in
/// increasing lexicographic order.
///
/// Panics if `r == 0`.
pub fn compositions(d: usize, r: usize) -> Vec<Composition> {
    assert!(r >= 1, "rank must be positive");
    let mut out = Vec::new();
    let mut cur = vec![0usize; r];
    fill(d, 0, &mut cur, &mut out);
    out
}

fn fill(rest: usize, i: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
    if i + 1 == cur.len() {
        cur[i] = rest;
        out.push(Composition { parts: cur.clone() });
        return;
    }
    for p in 0..=rest {
        cur[i] = p;
        fill(rest - p, i + 1, cur, out);
    }
}

/// Fixed component `Sym^P X` with its Poincaré polynomial and the
/// codimension of its attracting cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedComponent {
    pub composition: Composition,
    pub codim: usize,
    pub poly: Poly<Int>,
}

/// Fixed components of `Quot(r, d)` in lexicographic order. The table must
/// cover symmetric powers up to `d`.
pub fn fixed_components(r: usize, d: usize, table: &PoincareTable) -> Vec<FixedComponent> {
    compositions(d, r)
        .into_iter()
        .map(|c| {
            let poly = c
                .parts
                .iter()
                .fold(Poly::one(), |acc, &p| &acc * table.get(p));
            FixedComponent {
                codim: c.weight(),
                composition: c,
                poly,
            }
        })
        .collect()
}

/// `P(Quot(r, d), t)`.
pub fn quot_poincare(r: usize, d: usize, g: u32) -> Poly<Int> {
    let table = PoincareTable::new(g, d);
    fixed_components(r, d, &table)
        .iter()
        .fold(Poly::zero(), |acc, c| &acc + &c.poly.shift(2 * c.codim))
}

/// `P(Quot(r, d_p, d_z), t)`, summed over all pairs `(P, Q)` in
/// lexicographic order.
pub fn gen_quot_poincare(r: usize, dp: usize, dz: usize, g: u32) -> Poly<Int> {
    gen_quot_poincare_with(r, dp, dz, g, |c| c.weight() as i64).expect("weights are non-negative")
}

/// The same double sum with a caller-supplied codimension per composition.
/// Used to exercise the verification harness with deliberately wrong
/// weights; a negative total exponent is reported, not truncated.
pub fn gen_quot_poincare_with(
    r: usize,
    dp: usize,
    dz: usize,
    g: u32,
    codim: impl Fn(&Composition) -> i64,
) -> Result<Poly<Int>, StrataError> {
    let table = PoincareTable::new(g, dp.max(dz));
    let ps = fixed_components(r, dp, &table);
    let qs = fixed_components(r, dz, &table);
    let mut total = Poly::zero();
    for p in &ps {
        let cp = codim(&p.composition);
        for q in &qs {
            let c = cp + codim(&q.composition);
            if c < 0 {
                return Err(StrataError::NegativeCodimension(c));
            }
            total = &total + &(&p.poly * &q.poly).shift(2 * c as usize);
        }
    }
    Ok(total)
}

/// One Bialynicki-Birula stratum of `Quot(r, d_p, d_z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumRow {
    pub p: Composition,
    pub q: Composition,
    pub codim: usize,
    /// `P(Sym^{P,Q} X, t)`.
    pub component_poly: Poly<Int>,
}

/// All strata, sorted by codimension, then `P`, then `Q`.
pub fn strata_table(r: usize, dp: usize, dz: usize, g: u32) -> Vec<StratumRow> {
    let table = PoincareTable::new(g, dp.max(dz));
    let ps = fixed_components(r, dp, &table);
    let qs = fixed_components(r, dz, &table);
    let mut rows = Vec::with_capacity(ps.len() * qs.len());
    for p in &ps {
        for q in &qs {
            rows.push(StratumRow {
                p: p.composition.clone(),
                q: q.composition.clone(),
                codim: p.codim + q.codim,
                component_poly: &p.poly * &q.poly,
            });
        }
    }
    rows.sort_by(|a, b| (a.codim, &a.p, &a.q).cmp(&(b.codim, &b.p, &b.q)));
    rows
}

/// Euler characteristic: the Poincaré polynomial at `t = -1`.
pub fn euler_char(r: usize, dp: usize, dz: usize, g: u32) -> Int {
    gen_quot_poincare(r, dp, dz, g).eval(&Int::from(-1))
}

/// Complex dimension `r (d_p + d_z)`.
pub fn dimension(r: usize, dp: usize, dz: usize) -> usize {
    r * (dp + dz)
}

/// Number of `F_q`-points. Each stratum is an affine bundle of rank
/// `d(P) + d(Q)` over its fixed component, so counts add with a factor
/// `q^{d(P)+d(Q)}`.
pub fn gen_quot_point_count(r: usize, dp: usize, dz: usize, zeta: &CurveZeta) -> Int {
    let counts = sym_point_counts(dp.max(dz), zeta);
    let q = Int::from(zeta.q());
    let weighted = |d: usize| -> Vec<Int> {
        compositions(d, r)
            .iter()
            .map(|c| {
                let base: Int = c.parts.iter().map(|&p| counts[p].clone()).product();
                base * num_traits::pow(q.clone(), c.weight())
            })
            .collect()
    };
    let ps = weighted(dp);
    let qs = weighted(dz);
    let mut total = Int::zero();
    for a in &ps {
        for b in &qs {
            total += a * b;
        }
    }
    total
}

/// Number of `(P, Q)` pairs for given `(r, d_p, d_z)`.
pub fn pair_count(r: usize, dp: usize, dz: usize) -> Int {
    let n = |d: usize| binomial((d + r - 1) as u64, (r - 1) as u64);
    n(dp) * n(dz)
}

/// Grid bounds for tabulation. Configuration, not hard limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridLimits {
    pub max_r: usize,
    pub max_d: usize,
    /// Warn above this many `(P, Q)` pairs for a single grid point.
    pub pair_warning: u64,
}

impl Default for GridLimits {
    fn default() -> Self {
        GridLimits {
            max_r: 6,
            max_d: 8,
            pair_warning: 10_000_000,
        }
    }
}

impl GridLimits {
    pub fn exceeds_pair_warning(&self, r: usize, dp: usize, dz: usize) -> bool {
        pair_count(r, dp, dz) > Int::from(self.pair_warning)
    }
}
