//! Parallel sweep driver: resolves target items, sieves the prime
//! range, fans one prime per task across a rayon pool, and returns a
//! deterministically sorted record stream plus per-item totals.

pub mod emit;
pub mod registry;
pub mod sieve;

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::modular::{Modulus, OddPrime, MAX_MODULUS};
use crate::report::VerificationRecord;
use registry::{Grids, Item, PrimeCtx, Runner, ITEMS};

/// Conjecture items extend to this prime bound under deep mode.
pub const DEEP_BOUND: u64 = 13_000;

#[derive(Clone, Debug)]
pub struct SweepConfig {
    /// Item ids, or "all".
    pub targets: Vec<String>,
    /// Inclusive modulus range.
    pub min: u64,
    pub max: u64,
    /// Worker thread count; `None` uses the global pool.
    pub jobs: Option<usize>,
    /// Extend conjecture items to `DEEP_BOUND`.
    pub deep: bool,
    /// Stamp records with measured runner time. Off by default so that
    /// repeated runs are byte-identical.
    pub timing: bool,
    /// Parameter grids for the grid-driven items.
    pub grids: Grids,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            targets: vec!["all".into()],
            min: 3,
            max: 200,
            jobs: None,
            deep: false,
            timing: false,
            grids: Grids::default(),
        }
    }
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub struct ItemSummary {
    pub pass: u64,
    pub fail: u64,
    pub skip: u64,
}

/// Per-item pass/fail/skip totals over one sweep.
#[derive(Clone, Debug, Default)]
pub struct Summary {
    pub per_item: BTreeMap<String, ItemSummary>,
}

impl Summary {
    pub fn from_records(records: &[VerificationRecord]) -> Self {
        let mut per_item: BTreeMap<String, ItemSummary> = BTreeMap::new();
        for r in records {
            let e = per_item.entry(r.item.clone()).or_default();
            if r.is_skip() {
                e.skip += 1;
            } else if r.ok() {
                e.pass += 1;
            } else {
                e.fail += 1;
            }
        }
        Summary { per_item }
    }

    pub fn failures(&self) -> u64 {
        self.per_item.values().map(|e| e.fail).sum()
    }

    pub fn checked(&self) -> u64 {
        self.per_item.values().map(|e| e.pass + e.fail).sum()
    }
}

fn resolve_targets(targets: &[String]) -> Result<Vec<&'static Item>> {
    let mut out: Vec<&'static Item> = Vec::new();
    let mut push = |it: &'static Item| {
        if !out.iter().any(|o| std::ptr::eq(*o, it)) {
            out.push(it);
        }
    };
    for t in targets {
        if t == "all" {
            for it in ITEMS {
                push(it);
            }
        } else {
            push(registry::find_item(t).ok_or_else(|| Error::UnknownItem(t.clone()))?);
        }
    }
    Ok(out)
}

fn stamp(batch: &mut [VerificationRecord], t0: Instant, timing: bool) {
    if timing {
        let us = t0.elapsed().as_micros() as u64;
        for r in batch {
            r.elapsed_us = us;
        }
    }
}

/// Run the configured items over every modulus in range. Records come
/// back sorted by (item, modulus, params) regardless of worker count.
pub fn run_sweep(cfg: &SweepConfig) -> Result<(Summary, Vec<VerificationRecord>)> {
    if cfg.min < 3 || cfg.min > cfg.max || cfg.max >= MAX_MODULUS {
        return Err(Error::Domain(format!(
            "sweep range must satisfy 3 <= min <= max < 2^31, got [{}, {}]",
            cfg.min, cfg.max
        )));
    }
    cfg.grids.validate()?;
    let items = resolve_targets(&cfg.targets)?;
    let prime_items: Vec<&Item> = items
        .iter()
        .copied()
        .filter(|i| matches!(i.runner, Runner::Prime(_)))
        .collect();
    let odd_items: Vec<&Item> = items
        .iter()
        .copied()
        .filter(|i| matches!(i.runner, Runner::Odd(_)))
        .collect();

    let conj_max = if cfg.deep { cfg.max.max(DEEP_BOUND) } else { cfg.max };
    let prime_hi = if prime_items.iter().any(|i| i.conjecture) {
        conj_max
    } else {
        cfg.max
    };
    let primes: Vec<u64> = if prime_items.is_empty() {
        Vec::new()
    } else {
        sieve::sieve_primes(cfg.min, prime_hi + 1)?
    };
    let odds: Vec<u64> = if odd_items.is_empty() {
        Vec::new()
    } else {
        (cfg.min..=cfg.max).filter(|n| n % 2 == 1).collect()
    };

    let work = || -> Vec<VerificationRecord> {
        let mut batches: Vec<Vec<VerificationRecord>> = primes
            .par_iter()
            .map(|&q| {
                let p = OddPrime::new(q).expect("sieved value is an odd prime in range");
                let ctx = PrimeCtx::new(p);
                let mut recs = Vec::new();
                for it in &prime_items {
                    // only conjecture items run past cfg.max (deep mode)
                    if q > cfg.max && !it.conjecture {
                        continue;
                    }
                    if let Runner::Prime(f) = it.runner {
                        let t0 = Instant::now();
                        let mut batch = f(&ctx, &cfg.grids);
                        stamp(&mut batch, t0, cfg.timing);
                        recs.append(&mut batch);
                    }
                }
                recs
            })
            .collect();
        batches.par_extend(odds.par_iter().map(|&n| {
            let m = Modulus::new(n).expect("odd n >= 3 in range");
            let mut recs = Vec::new();
            for it in &odd_items {
                if let Runner::Odd(f) = it.runner {
                    let t0 = Instant::now();
                    let mut batch = f(m);
                    stamp(&mut batch, t0, cfg.timing);
                    recs.append(&mut batch);
                }
            }
            recs
        }));
        batches.into_iter().flatten().collect()
    };

    let mut records = match cfg.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| Error::Io(e.to_string()))?
            .install(work),
        None => work(),
    };
    records.sort_by(|a, b| {
        a.item
            .cmp(&b.item)
            .then(a.p.cmp(&b.p))
            .then_with(|| a.params.cmp(&b.params))
    });
    let summary = Summary::from_records(&records);
    Ok((summary, records))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_target_rejected() {
        let cfg = SweepConfig {
            targets: vec!["thm9.9".into()],
            ..SweepConfig::default()
        };
        assert!(matches!(run_sweep(&cfg), Err(Error::UnknownItem(_))));
    }

    #[test]
    fn bad_range_rejected() {
        let cfg = SweepConfig {
            min: 100,
            max: 50,
            ..SweepConfig::default()
        };
        assert!(run_sweep(&cfg).is_err());
    }

    #[test]
    fn small_sweep_all_green() {
        let cfg = SweepConfig {
            max: 60,
            ..SweepConfig::default()
        };
        let (summary, records) = run_sweep(&cfg).unwrap();
        assert_eq!(summary.failures(), 0);
        assert!(summary.checked() > 100);
        assert!(!records.is_empty());
        // every registry item produced at least one record
        for it in ITEMS {
            assert!(
                summary.per_item.contains_key(it.id),
                "no records for {}",
                it.id
            );
        }
        // elapsed stays zero without timing
        assert!(records.iter().all(|r| r.elapsed_us == 0));
    }

    #[test]
    fn deterministic_across_worker_counts() {
        let base = SweepConfig {
            targets: vec!["conj7.2".into(), "thm1.5".into(), "background".into()],
            max: 150,
            ..SweepConfig::default()
        };
        let (_, one) = run_sweep(&SweepConfig {
            jobs: Some(1),
            ..base.clone()
        })
        .unwrap();
        let (_, four) = run_sweep(&SweepConfig {
            jobs: Some(4),
            ..base.clone()
        })
        .unwrap();
        assert_eq!(one, four);
    }

    #[test]
    fn deep_extends_only_conjectures() {
        let cfg = SweepConfig {
            targets: vec!["conj7.5".into(), "thm1.7".into()],
            min: 3,
            max: 50,
            deep: true,
            ..SweepConfig::default()
        };
        let (_, records) = run_sweep(&cfg).unwrap();
        let conj_max = records
            .iter()
            .filter(|r| r.item == "conj7.5")
            .map(|r| r.p)
            .max()
            .unwrap();
        let thm_max = records
            .iter()
            .filter(|r| r.item == "thm1.7")
            .map(|r| r.p)
            .max()
            .unwrap();
        assert!(conj_max > 12_000, "conj7.5 stopped at {conj_max}");
        assert!(thm_max <= 50, "thm1.7 ran to {thm_max}");
    }
}
