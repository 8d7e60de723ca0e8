//! Exhaustive enumeration of n-cycles.
//!
//! Cycles are produced in lexicographic order of their tail `(c_1, ...,
//! c_{n-1})`. Fixing `c_1` splits the space into `n - 1` equal shards that
//! can be scanned independently and merged afterwards.

use rayon::prelude::*;

use crate::cycle::Cycle;
use crate::error::{invalid, Result};
use crate::perm::next_permutation;

/// Largest length supported by the byte-packed scanners.
pub const MAX_SCAN_LEN: usize = 16;

/// One block of the enumeration: all n-cycles with a fixed second entry,
/// or the lone 1-cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shard {
    pub n: usize,
    pub second: Option<usize>,
}

impl Shard {
    /// Calls `visit` on every cycle of the shard, in lexicographic order,
    /// as a slice of bytes starting with 1.
    pub fn for_each(&self, mut visit: impl FnMut(&[u8])) {
        let n = self.n;
        let mut buf = [0u8; MAX_SCAN_LEN];
        buf[0] = 1;
        let Some(second) = self.second else {
            visit(&buf[..1]);
            return;
        };
        buf[1] = second as u8;
        let mut k = 2;
        for v in 2..=n {
            if v != second {
                buf[k] = v as u8;
                k += 1;
            }
        }
        let cycle = &mut buf[..n];
        loop {
            visit(cycle);
            if !next_permutation(&mut cycle[2..]) {
                break;
            }
        }
    }
}

pub fn shards(n: usize) -> Result<Vec<Shard>> {
    if n == 0 {
        return invalid("cycles need at least one element");
    }
    if n > MAX_SCAN_LEN {
        return invalid(format!("cycle length {n} exceeds {MAX_SCAN_LEN}"));
    }
    if n == 1 {
        return Ok(vec![Shard { n, second: None }]);
    }
    Ok((2..=n).map(|s| Shard { n, second: Some(s) }).collect())
}

/// Every n-cycle exactly once, lexicographically.
pub fn enumerate_cycles(n: usize) -> Result<impl Iterator<Item = Cycle>> {
    let shards = shards(n)?;
    Ok(shards.into_iter().flat_map(|shard| {
        let mut out = Vec::new();
        shard.for_each(|c| out.push(Cycle::from_bytes(c)));
        out
    }))
}

/// Folds every shard with its own accumulator on a pool of `jobs` threads
/// and returns the per-shard results in shard order.
pub fn scan_shards<A, F>(
    n: usize,
    jobs: usize,
    init: impl Fn() -> A + Sync,
    fold: F,
) -> Result<Vec<A>>
where
    A: Send,
    F: Fn(&mut A, &[u8]) + Sync,
{
    let shards = shards(n)?;
    let run = |shard: &Shard| {
        let mut acc = init();
        shard.for_each(|c| fold(&mut acc, c));
        acc
    };
    if jobs <= 1 {
        return Ok(shards.iter().map(run).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| crate::Error::InvalidInput(format!("cannot start {jobs} workers: {e}")))?;
    Ok(pool.install(|| shards.par_iter().map(run).collect()))
}
