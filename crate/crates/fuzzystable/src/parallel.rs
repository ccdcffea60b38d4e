//! Multi-threaded witness scanning.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;

use fuzzystable_core::stable::{Scanner, WitnessSearch};
use fuzzystable_core::{Error, Result};

const CHUNK: u64 = 1024;

/// Splits the candidate range into chunks handed out to `jobs` threads.
/// Returns the same index as the sequential scan: the smallest witness.
#[derive(Clone, Copy, Debug)]
pub struct Parallel {
    pub jobs: usize,
}

impl Parallel {
    pub fn new(jobs: usize) -> Parallel {
        Parallel { jobs: jobs.max(1) }
    }

    /// One thread per available core.
    pub fn available() -> Parallel {
        Parallel::new(std::thread::available_parallelism().map_or(1, |n| n.get()))
    }
}

impl Scanner for Parallel {
    fn first_witness(&self, search: &WitnessSearch) -> Result<Option<u64>> {
        let total = search.candidate_count();
        if self.jobs == 1 || total <= CHUNK {
            return search.scan(0..total);
        }
        let next = AtomicU64::new(0);
        let best = AtomicU64::new(u64::MAX);
        let failed = AtomicBool::new(false);
        let error: Mutex<Option<Error>> = Mutex::new(None);
        std::thread::scope(|s| {
            for _ in 0..self.jobs {
                s.spawn(|| loop {
                    if failed.load(Ordering::Relaxed) {
                        return;
                    }
                    let start = next.fetch_add(CHUNK, Ordering::Relaxed);
                    if start >= total || start >= best.load(Ordering::Relaxed) {
                        return;
                    }
                    let end = (start + CHUNK).min(total);
                    match search.scan(start..end) {
                        Ok(Some(k)) => {
                            best.fetch_min(k, Ordering::Relaxed);
                            return;
                        }
                        Ok(None) => {}
                        Err(e) => {
                            failed.store(true, Ordering::Relaxed);
                            error.lock().unwrap().get_or_insert(e);
                            return;
                        }
                    }
                });
            }
        });
        if let Some(e) = error.into_inner().unwrap() {
            return Err(e);
        }
        let k = best.into_inner();
        Ok((k != u64::MAX).then_some(k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use fuzzystable_core::stable::{check_stable_using, MinimizedSet, SearchConfig, Sequential};
    use fuzzystable_core::{parse_formula, Interpretation, Lattice, Truth};

    #[test]
    fn agrees_with_sequential() {
        let f = parse_formula("(a &m b &m c &m d) |m (not_s e ->r a)").unwrap();
        let cfg = SearchConfig::exhaustive(Lattice::new(10).unwrap());
        let sig = f.signature();
        for fill in ["1", "0.7", "0.3"] {
            let mut i = Interpretation::constant(sig.clone(), fill.parse().unwrap());
            i.set("e", Truth::ZERO).unwrap();
            let p = MinimizedSet::all(&sig);
            let a = check_stable_using(&f, &i, &p, Truth::ONE, &cfg, &Sequential).unwrap();
            let b = check_stable_using(&f, &i, &p, Truth::ONE, &cfg, &Parallel::new(4)).unwrap();
            assert_eq!(a, b);
        }
    }
}
