//! The acceptance checks, runnable from the command line and from tests.

use std::fmt;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use quotvortex_core::strata::{gen_quot_poincare_with, gen_quot_point_count, quot_poincare};
use quotvortex_core::sym::{sym_betti_closed, sym_poincare, sym_point_count, CurveZeta};
use quotvortex_core::vortex::{delta, is_equivalent, moduli_point, snf_poly, theta, Mat};
use quotvortex_core::{Int, Poly, Rat};

use crate::parallel::{Evaluator, PoolError};
use crate::render::{self, Format};
use crate::sample::Sampler;

/// Deliberate defects used to confirm that the checks can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Every stratum codimension enters with the wrong sign.
    NegatedWeight,
}

#[derive(Debug, Clone)]
pub struct Options {
    /// Caps rank and degrees of the exhaustive grids.
    pub grid_max: Option<usize>,
    pub threads: usize,
    pub seed: u64,
    pub fault: Option<Fault>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            grid_max: None,
            threads: 1,
            seed: 0x5eed,
            fault: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Option<Duration>,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "[{status}] {:>2} {:<22} {:>8.3}s",
            self.id,
            self.name,
            self.elapsed.as_secs_f64()
        )?;
        if let Some(b) = self.budget {
            write!(f, " (budget {}s)", b.as_secs())?;
        }
        write!(f, "  {}", self.detail)
    }
}

type Check = Result<String, String>;

struct Ctx {
    ev: Evaluator,
    opts: Options,
}

impl Ctx {
    fn cap(&self, n: usize) -> usize {
        self.opts.grid_max.map_or(n, |m| m.min(n))
    }

    /// The polynomial under test.
    fn gen(&self, r: usize, dp: usize, dz: usize, g: u32) -> Result<Poly<Int>, String> {
        match self.opts.fault {
            None => Ok(self.ev.gen_quot_poincare(r, dp, dz, g)),
            Some(Fault::NegatedWeight) => {
                gen_quot_poincare_with(r, dp, dz, g, |c| -(c.weight() as i64))
                    .map_err(|e| format!("r={r} dp={dp} dz={dz} g={g}: {e}"))
            }
        }
    }

    fn grid(&self) -> Vec<(usize, usize, usize, u32)> {
        let (rm, dm) = (self.cap(4), self.cap(5));
        let mut out = Vec::new();
        for r in 1..=rm {
            for dp in 0..=dm {
                for dz in 0..=dm {
                    for g in 0..=3 {
                        out.push((r, dp, dz, g));
                    }
                }
            }
        }
        out
    }
}

/// Id, name, budget in seconds, body.
type Criterion = (u8, &'static str, Option<u64>, fn(&Ctx) -> Check);

pub fn run(opts: Options) -> Result<Vec<Outcome>, PoolError> {
    let ctx = Ctx {
        ev: Evaluator::new(opts.threads)?,
        opts,
    };
    let checks: [Criterion; 10] = [
        (1, "macdonald-oracle", Some(5), macdonald_oracle),
        (2, "poincare-invariants", Some(60), poincare_invariants),
        (3, "reductions", None, reductions),
        (4, "euler-characteristic", None, euler_characteristic),
        (5, "point-count-bridge", Some(10), point_count_bridge),
        (6, "vortex-degrees", Some(30), vortex_degrees),
        (7, "theta-delta-round-trip", None, theta_round_trip),
        (8, "eta-coherence", None, eta_coherence),
        (9, "snf-determinantal", None, snf_determinantal),
        (10, "thread-determinism", None, thread_determinism),
    ];
    Ok(checks
        .into_iter()
        .map(|(id, name, budget, check)| {
            let start = Instant::now();
            let result = check(&ctx);
            let elapsed = start.elapsed();
            let budget = budget.map(Duration::from_secs);
            let in_time = budget.is_none_or(|b| elapsed <= b);
            let (passed, detail) = match result {
                Ok(d) if in_time => (true, d),
                Ok(d) => (false, format!("{d}; over the time budget")),
                Err(e) => (false, e),
            };
            log::info!("criterion {id} {name}: {passed}");
            Outcome {
                id,
                name,
                passed,
                detail,
                elapsed,
                budget,
            }
        })
        .collect())
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn macdonald_oracle(_: &Ctx) -> Check {
    let mut n_coeffs = 0;
    for g in 0..=4 {
        for n in 0..=12 {
            let p = sym_poincare(n, g);
            for k in 0..=2 * n {
                let expected = sym_betti_closed(n, g, k as i64).map_err(|e| e.to_string())?;
                ensure(p.coeff(k) == expected, || {
                    format!(
                        "Sym^{n} of genus {g}: b_{k} = {} but the closed form gives {expected}",
                        p.coeff(k)
                    )
                })?;
                n_coeffs += 1;
            }
        }
    }
    Ok(format!("{n_coeffs} coefficients for n <= 12, g <= 4"))
}

fn poincare_invariants(ctx: &Ctx) -> Check {
    let grid = ctx.grid();
    for &(r, dp, dz, g) in &grid {
        let p = ctx.gen(r, dp, dz, g)?;
        let at = || format!("r={r} dp={dp} dz={dz} g={g}");
        let top = 2 * r * (dp + dz);
        ensure(p.coeff(0).is_one(), || {
            format!("{}: b_0 = {}", at(), p.coeff(0))
        })?;
        ensure(p.degree() == Some(top), || {
            format!("{}: degree {:?}, expected {top}", at(), p.degree())
        })?;
        ensure(p.coeff(top).is_one(), || {
            format!("{}: leading coefficient {}", at(), p.coeff(top))
        })?;
        ensure(p.is_palindromic(top), || {
            format!("{}: not palindromic", at())
        })?;
        ensure(p.is_nonnegative(), || {
            format!("{}: negative coefficient", at())
        })?;
        let b1 = 2 * g as usize * (usize::from(dp >= 1) + usize::from(dz >= 1));
        ensure(p.coeff(1) == Int::from(b1), || {
            format!("{}: b_1 = {}, expected {b1}", at(), p.coeff(1))
        })?;
        let product = &quot_poincare(r, dp, g) * &quot_poincare(r, dz, g);
        ensure(p == product, || {
            format!("{}: does not factor as quot(dp) * quot(dz)", at())
        })?;
    }
    Ok(format!("{} grid points", grid.len()))
}

fn reductions(ctx: &Ctx) -> Check {
    let (rm, dm) = (ctx.cap(4), ctx.cap(5));
    let mut count = 0;
    for g in 0..=3u32 {
        for dp in 0..=dm {
            for dz in 0..=dm {
                let expected = &sym_poincare(dp, g) * &sym_poincare(dz, g);
                ensure(ctx.gen(1, dp, dz, g)? == expected, || {
                    format!("r=1 dp={dp} dz={dz} g={g}: not Sym^dp x Sym^dz")
                })?;
                count += 1;
            }
        }
        for r in 1..=rm {
            for dp in 0..=dm {
                ensure(ctx.gen(r, dp, 0, g)? == quot_poincare(r, dp, g), || {
                    format!("r={r} dp={dp} dz=0 g={g}: not quot(r, dp)")
                })?;
                count += 1;
            }
            // (Σ_{i<r} t^{2i}) (1 + 2g t + t²)
            let proj = Poly::new(
                (0..2 * r - 1)
                    .map(|k| Int::from(u8::from(k % 2 == 0)))
                    .collect(),
            );
            let curve = Poly::new(vec![Int::one(), Int::from(2 * g), Int::one()]);
            let expected = &proj * &curve;
            ensure(ctx.gen(r, 1, 0, g)? == expected, || {
                format!("r={r} d=1 g={g}: not P^(r-1) x X")
            })?;
            ensure(ctx.gen(r, 0, 1, g)? == expected, || {
                format!("r={r} dz=1 g={g}: not P^(r-1) x X")
            })?;
            count += 2;
        }
    }
    Ok(format!("{count} identities"))
}

fn choose(n: usize, k: usize) -> Int {
    // Pascal's rule, kept separate from the library binomial.
    let mut row = vec![Int::one()];
    for _ in 0..n {
        let mut next = vec![Int::one(); row.len() + 1];
        for i in 1..row.len() {
            next[i] = &row[i - 1] + &row[i];
        }
        row = next;
    }
    row.get(k).cloned().unwrap_or_else(Int::zero)
}

fn euler_characteristic(ctx: &Ctx) -> Check {
    let mut count = 0;
    for (r, dp, dz, g) in ctx.grid() {
        let chi = ctx.gen(r, dp, dz, g)?.eval(&Int::from(-1));
        let expected = match g {
            0 => &choose(dp + 2 * r - 1, 2 * r - 1) * &choose(dz + 2 * r - 1, 2 * r - 1),
            1 if dp + dz >= 1 => Int::zero(),
            _ => continue,
        };
        ensure(chi == expected, || {
            format!("r={r} dp={dp} dz={dz} g={g}: chi = {chi}, expected {expected}")
        })?;
        count += 1;
    }
    Ok(format!("{count} grid points with g in {{0, 1}}"))
}

fn point_count_bridge(ctx: &Ctx) -> Check {
    let (rm, dm) = (ctx.cap(3), ctx.cap(3));
    let mut count = 0;
    for q in 2..=5u64 {
        let zeta = CurveZeta::projective_line(q).map_err(|e| e.to_string())?;
        for r in 1..=rm {
            for dp in 0..=dm {
                for dz in 0..=dm {
                    let n = gen_quot_point_count(r, dp, dz, &zeta);
                    let p = ctx.gen(r, dp, dz, 0)?;
                    let sub = p.eval_even_substitution(&Int::from(q)).ok_or_else(|| {
                        format!("r={r} dp={dp} dz={dz}: odd Betti number in genus 0")
                    })?;
                    ensure(n == sub, || {
                        format!("q={q} r={r} dp={dp} dz={dz}: {n} points, t^2->q gives {sub}")
                    })?;
                    count += 1;
                }
            }
        }
    }
    let elliptic = CurveZeta::new(2, Poly::new(vec![Int::one(), Int::zero(), Int::from(2)]))
        .map_err(|e| e.to_string())?;
    let n = sym_point_count(2, &elliptic);
    ensure(n == Int::from(9), || format!("#Sym^2 E = {n}, expected 9"))?;
    Ok(format!("{count} counts over q in 2..=5, #Sym^2 E = 9"))
}

fn vortex_degrees(ctx: &Ctx) -> Check {
    let mut s = Sampler::new(ctx.opts.seed ^ 6);
    for trial in 0..500 {
        let f = s.meromap(3, 4);
        let p = moduli_point(&f);
        let (d1, d2) = delta(&p);
        let sum: i64 = f.twist().iter().sum();
        let at = || crate::meromap::render_meromap(&f);
        ensure(p.dz() as i64 - p.dp() as i64 == sum, || {
            format!(
                "trial {trial}: dz - dp = {} but twist sums to {sum} for {}",
                p.dz() as i64 - p.dp() as i64,
                at()
            )
        })?;
        ensure(d1.degree() == p.dp(), || {
            format!(
                "trial {trial}: deg delta1 = {} != dp for {}",
                d1.degree(),
                at()
            )
        })?;
        ensure(d2.degree() == p.dz(), || {
            format!(
                "trial {trial}: deg delta2 = {} != dz for {}",
                d2.degree(),
                at()
            )
        })?;
    }
    Ok("500 random maps".into())
}

fn theta_round_trip(ctx: &Ctx) -> Check {
    let mut s = Sampler::new(ctx.opts.seed ^ 7);
    let (mut overlapping, mut at_infinity) = (0, 0);
    for trial in 0..200 {
        let (x, y) = s.divisor_pair();
        let r = s.range(1, 3) as usize;
        if !x.is_disjoint_from(&y) {
            overlapping += 1;
        }
        if x.inf_mult() > 0 || y.inf_mult() > 0 {
            at_infinity += 1;
        }
        let p = theta(&x, &y, r);
        ensure(delta(&p) == (x.clone(), y.clone()), || {
            format!("trial {trial}: delta(theta(x, y)) != (x, y)")
        })?;
    }
    ensure(overlapping > 0 && at_infinity > 0, || {
        "sample misses overlapping or infinite support".into()
    })?;
    Ok(format!(
        "200 pairs, {overlapping} overlapping, {at_infinity} with mass at infinity"
    ))
}

fn eta_coherence(ctx: &Ctx) -> Check {
    let mut s = Sampler::new(ctx.opts.seed ^ 8);
    let (mut equivalent, mut inequivalent) = (0, 0);
    for trial in 0..100 {
        let f1 = s.meromap(3, 3);
        let gauged = trial % 2 == 0;
        let f2 = if gauged {
            s.gauge(&f1)
        } else {
            s.meromap_of_rank(f1.rank(), 3)
        };
        let eq = is_equivalent(&f1, &f2).map_err(|e| e.to_string())?;
        let same = moduli_point(&f1) == moduli_point(&f2);
        ensure(eq == same, || {
            format!("trial {trial}: is_equivalent = {eq} but moduli points equal = {same}")
        })?;
        ensure(!gauged || eq, || {
            format!("trial {trial}: gauge transform judged inequivalent")
        })?;
        if eq {
            equivalent += 1
        } else {
            inequivalent += 1
        }
    }
    Ok(format!(
        "100 pairs, {equivalent} equivalent, {inequivalent} inequivalent"
    ))
}

fn snf_determinantal(ctx: &Ctx) -> Check {
    let mut s = Sampler::new(ctx.opts.seed ^ 9);
    let mut nontrivial = 0;
    for trial in 0..200 {
        let m = s.poly_matrix(4, 5);
        let n = m.rows();
        let snf = snf_poly(&m).map_err(|e| format!("trial {trial}: {e}"))?;
        let factors = snf.invariant_factors();
        if factors.iter().any(|f| f.degree() != Some(0)) {
            nontrivial += 1;
        }
        let mut prod = Poly::<Rat>::one();
        for k in 1..=n {
            prod = &prod * &factors[k - 1];
            let g = minors(&m, k)
                .iter()
                .fold(Poly::zero(), |acc: Poly<Rat>, x| acc.gcd(x));
            ensure(prod == g, || {
                format!("trial {trial}: k={k} product of invariant factors differs from minor gcd")
            })?;
        }
    }
    Ok(format!(
        "200 matrices, {nontrivial} with a non-constant invariant factor"
    ))
}

/// All `k × k` minors by cofactor expansion.
pub fn minors(m: &Mat<Poly<Rat>>, k: usize) -> Vec<Poly<Rat>> {
    let sets = subsets(m.rows(), k);
    let mut out = Vec::with_capacity(sets.len() * sets.len());
    for rows in &sets {
        for cols in &sets {
            out.push(cofactor_det(m, rows, cols));
        }
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn cofactor_det(m: &Mat<Poly<Rat>>, rows: &[usize], cols: &[usize]) -> Poly<Rat> {
    let Some((&first, rest_rows)) = rows.split_first() else {
        return Poly::one();
    };
    let mut acc = Poly::zero();
    for (idx, &c) in cols.iter().enumerate() {
        let entry = m.get(first, c);
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = entry * &cofactor_det(m, rest_rows, &rest);
        acc = if idx % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}

fn thread_determinism(ctx: &Ctx) -> Check {
    let one = Evaluator::new(1).map_err(|e| e.to_string())?;
    let four = Evaluator::new(4).map_err(|e| e.to_string())?;
    let mut cases = vec![(4, 5, 5, 3)];
    let (rm, dm) = (ctx.cap(3), ctx.cap(3));
    for r in 1..=rm {
        for dp in 0..=dm {
            for dz in 0..=dm {
                cases.push((r, dp, dz, (r + dp + dz) as u32 % 3));
            }
        }
    }
    let fault = ctx.opts.fault;
    let emit =
        |ev: &Evaluator, (r, dp, dz, g): (usize, usize, usize, u32)| -> Result<String, String> {
            let p = match fault {
                None => ev.gen_quot_poincare(r, dp, dz, g),
                Some(_) => ctx.gen(r, dp, dz, g)?,
            };
            let mut out = String::new();
            for f in [Format::Text, Format::Json, Format::Csv, Format::Latex] {
                out.push_str(&render::poly(&p, "t", f));
            }
            out.push_str(&render::strata_csv(&ev.strata_table(r, dp, dz, g)));
            Ok(out)
        };
    for &case in &cases {
        let a = emit(&one, case)?;
        let b = emit(&four, case)?;
        ensure(a == b, || {
            format!("{case:?}: output differs between 1 and 4 threads")
        })?;
    }
    Ok(format!("{} parameter sets, threads 1 and 4", cases.len()))
}
