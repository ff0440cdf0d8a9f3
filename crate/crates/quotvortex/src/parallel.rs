//! Thread-pool evaluation of the stratum sums.
//!
//! Work is split over the compositions `P` of `d_p`. Each task returns its
//! partial result and the partials are combined in lexicographic order of
//! `P`, so the output never depends on the thread count or scheduling.

use num_traits::Zero;
use quotvortex_core::strata::{fixed_components, StratumRow};
use quotvortex_core::sym::PoincareTable;
use quotvortex_core::{Int, Poly};
use rayon::prelude::*;

#[derive(Debug, thiserror::Error)]
#[error("could not build a pool of {threads} threads: {source}")]
pub struct PoolError {
    threads: usize,
    source: rayon::ThreadPoolBuildError,
}

pub struct Evaluator {
    pool: rayon::ThreadPool,
}

impl Evaluator {
    pub fn new(threads: usize) -> Result<Self, PoolError> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build()
            .map_err(|source| PoolError { threads, source })?;
        Ok(Evaluator { pool })
    }

    pub fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }

    pub fn gen_quot_poincare(&self, r: usize, dp: usize, dz: usize, g: u32) -> Poly<Int> {
        let table = PoincareTable::new(g, dp.max(dz));
        let ps = fixed_components(r, dp, &table);
        let qs = fixed_components(r, dz, &table);
        let partials: Vec<Poly<Int>> = self.pool.install(|| {
            ps.par_iter()
                .map(|p| {
                    qs.iter().fold(Poly::zero(), |acc, q| {
                        &acc + &(&p.poly * &q.poly).shift(2 * (p.codim + q.codim))
                    })
                })
                .collect()
        });
        partials.iter().fold(Poly::zero(), |acc, x| &acc + x)
    }

    pub fn strata_table(&self, r: usize, dp: usize, dz: usize, g: u32) -> Vec<StratumRow> {
        let table = PoincareTable::new(g, dp.max(dz));
        let ps = fixed_components(r, dp, &table);
        let qs = fixed_components(r, dz, &table);
        let chunks: Vec<Vec<StratumRow>> = self.pool.install(|| {
            ps.par_iter()
                .map(|p| {
                    qs.iter()
                        .map(|q| StratumRow {
                            p: p.composition.clone(),
                            q: q.composition.clone(),
                            codim: p.codim + q.codim,
                            component_poly: &p.poly * &q.poly,
                        })
                        .collect()
                })
                .collect()
        });
        let mut rows: Vec<StratumRow> = chunks.into_iter().flatten().collect();
        rows.sort_by(|a, b| (a.codim, &a.p, &a.q).cmp(&(b.codim, &b.p, &b.q)));
        rows
    }

    /// Runs `f` inside the pool.
    pub fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        self.pool.install(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use quotvortex_core::strata::{gen_quot_poincare, strata_table};

    #[test]
    fn agrees_with_sequential() {
        for threads in [1, 3] {
            let ev = Evaluator::new(threads).unwrap();
            assert_eq!(ev.threads(), threads);
            for (r, dp, dz, g) in [(1, 0, 0, 0), (2, 2, 1, 1), (3, 2, 3, 2)] {
                assert_eq!(
                    ev.gen_quot_poincare(r, dp, dz, g),
                    gen_quot_poincare(r, dp, dz, g)
                );
                assert_eq!(ev.strata_table(r, dp, dz, g), strata_table(r, dp, dz, g));
            }
        }
    }
}
