//! Parallel driver for the finite-field census. Workers share only the
//! read-only partition; results are collected in index order, so the report
//! does not depend on the number of threads.

use rayon::prelude::*;

use quadconj_core::census::{Census, CensusReport};
use quadconj_core::Result;

pub const DEFAULT_SAMPLES: usize = 8;
pub const DEFAULT_SEED: u64 = 0x5eed;

/// Build the census for `p` and crosscheck it on `jobs` threads (0 means
/// one per core).
pub fn crosscheck(p: u64, samples: usize, seed: u64, jobs: usize) -> Result<CensusReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    pool.install(|| {
        let census = Census::build(p)?;
        let n = census.orbits.len();
        let summaries = (0..n)
            .into_par_iter()
            .map(|o| census.check_orbit(o, samples, seed))
            .collect::<Result<Vec<_>>>()?;
        let rows = (0..n)
            .into_par_iter()
            .map(|i| census.check_representative_row(i))
            .collect::<Result<Vec<_>>>()?;
        Ok(CensusReport::assemble(&census, &summaries, &rows))
    })
}
