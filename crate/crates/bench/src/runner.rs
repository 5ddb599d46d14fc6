//! Timed phases.
//!
//! The clock is read only around whole loops (or whole delete batches),
//! never inside a loop body.

use std::hint::black_box;
use std::time::Instant;

use slick_core::SlickConfig;

use crate::backend::{Backend, OrderedMap, SlickBackend, UnorderedMap};
use crate::plan::{Baseline, BenchPlan, Phase, DELETE_BATCH};
use crate::record::BenchRecord;
use crate::workload::gen_keys;
use crate::BenchError;

#[cfg(test)]
thread_local! {
    static CLOCK_READS: std::cell::Cell<u64> = const { std::cell::Cell::new(0) };
}

#[inline]
fn now() -> Instant {
    #[cfg(test)]
    CLOCK_READS.with(|c| c.set(c.get() + 1));
    Instant::now()
}

fn elapsed_ns(start: Instant) -> u64 {
    let ns = now().duration_since(start).as_nanos();
    u64::try_from(ns).unwrap_or(u64::MAX)
}

/// Runs one phase over `keys` and measures it. The insert phase must have
/// run on `backend` before a query or delete phase.
pub fn run_phase(
    backend: &mut dyn Backend,
    phase: Phase,
    keys: &[u64],
    seed: u64,
    repetition: u32,
) -> Result<BenchRecord, BenchError> {
    let total_ns = match phase {
        Phase::Insert => {
            let start = now();
            for &k in keys {
                backend.insert(k, k ^ seed);
            }
            elapsed_ns(start)
        }
        Phase::Query => {
            if backend.len() < keys.len() {
                return Err(BenchError::PhaseOrder {
                    impl_name: backend.name(),
                    phase,
                });
            }
            let mut hits = 0usize;
            let start = now();
            for &k in keys {
                if let Some(v) = backend.get(k) {
                    hits += 1;
                    black_box(v);
                }
            }
            let ns = elapsed_ns(start);
            if hits != keys.len() {
                return Err(BenchError::Misses {
                    impl_name: backend.name(),
                    misses: keys.len() - hits,
                });
            }
            ns
        }
        Phase::Delete => {
            if backend.len() < keys.len() {
                return Err(BenchError::PhaseOrder {
                    impl_name: backend.name(),
                    phase,
                });
            }
            let mut total = 0;
            let mut supported = true;
            for batch in keys.chunks(DELETE_BATCH) {
                let start = now();
                for &k in batch {
                    supported &= backend.delete(k).is_some();
                }
                total += elapsed_ns(start);
            }
            if !supported {
                return Err(BenchError::PhaseUnsupported {
                    impl_name: backend.name(),
                    phase,
                });
            }
            total
        }
    };
    let (backyard_len, metadata_bits) = backend.occupancy().unzip();
    let ops = keys.len() as u64;
    Ok(BenchRecord {
        impl_name: backend.name().to_string(),
        config: backend.label(),
        phase,
        ops,
        total_ns,
        ns_per_op: total_ns as f64 / ops as f64,
        backyard_len,
        metadata_bits,
        seed,
        repetition,
    })
}

/// Everything a plan produced, including per-run failures that did not stop
/// the remaining runs.
#[derive(Debug, Default)]
pub struct RunOutput {
    pub records: Vec<BenchRecord>,
    pub failures: Vec<(String, BenchError)>,
}

enum Target {
    Slick(SlickConfig),
    Baseline(Baseline),
}

impl Target {
    fn name(&self) -> String {
        match self {
            Target::Slick(c) => format!("slick {}", c.label()),
            Target::Baseline(b) => b.name().to_string(),
        }
    }

    fn build(&self, plan: &BenchPlan) -> Result<Box<dyn Backend>, BenchError> {
        Ok(match *self {
            Target::Slick(c) => Box::new(SlickBackend::new(c, plan.cleaning)?),
            Target::Baseline(Baseline::UnorderedMap) => {
                Box::new(UnorderedMap::with_capacity(plan.capacity))
            }
            Target::Baseline(Baseline::OrderedMap) => Box::<OrderedMap>::default(),
        })
    }
}

/// Runs every configuration and baseline of `plan`. Each repetition gets a
/// fresh table; the insert phase always runs (it populates the table) but is
/// only recorded when requested.
pub fn run_plan(plan: &BenchPlan) -> Result<RunOutput, BenchError> {
    plan.validate()?;
    let keys = gen_keys(plan.n_ops, plan.seed);
    let targets = plan
        .configs
        .iter()
        .map(|&c| {
            Target::Slick(SlickConfig {
                capacity: plan.capacity,
                ..c
            })
        })
        .chain(plan.baselines.iter().map(|&b| Target::Baseline(b)));
    let mut out = RunOutput::default();
    for target in targets {
        'reps: for rep in 0..plan.repetitions {
            let mut backend = match target.build(plan) {
                Ok(b) => b,
                Err(e) => {
                    out.failures.push((target.name(), e));
                    break 'reps;
                }
            };
            for phase in Phase::ALL {
                if phase != Phase::Insert && !plan.phases.contains(&phase) {
                    continue;
                }
                match run_phase(backend.as_mut(), phase, &keys, plan.seed, rep) {
                    Ok(r) if plan.phases.contains(&phase) => out.records.push(r),
                    Ok(_) => {}
                    Err(e) => {
                        out.failures.push((target.name(), e));
                        continue 'reps;
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The full hyperparameter sweep with `plan`'s sizes, phases and baselines.
pub fn run_grid(plan: &BenchPlan) -> Result<RunOutput, BenchError> {
    let plan = BenchPlan {
        configs: crate::plan::sweep_grid(plan.capacity, plan.seed),
        ..plan.clone()
    };
    run_plan(&plan)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clock_reads() -> u64 {
        CLOCK_READS.with(|c| c.get())
    }

    fn small_plan() -> BenchPlan {
        BenchPlan {
            capacity: 5_000,
            n_ops: 5_000,
            repetitions: 1,
            ..BenchPlan::desk(vec![SlickConfig::with_block_size(10, 5_000)])
        }
    }

    #[test]
    fn clock_is_read_only_around_loops() {
        let keys = gen_keys(25_000, 3);
        let mut b = UnorderedMap::with_capacity(25_000);
        let before = clock_reads();
        run_phase(&mut b, Phase::Insert, &keys, 0, 0).unwrap();
        assert_eq!(clock_reads() - before, 2);
        run_phase(&mut b, Phase::Query, &keys, 0, 0).unwrap();
        assert_eq!(clock_reads() - before, 4);
        // Three batches of at most 10,000.
        run_phase(&mut b, Phase::Delete, &keys, 0, 0).unwrap();
        assert_eq!(clock_reads() - before, 10);
        assert!(b.is_empty());
    }

    #[test]
    fn query_hits_every_key_and_delete_empties() {
        let keys = gen_keys(5_000, 1);
        let mut b =
            SlickBackend::new(SlickConfig::with_block_size(10, 5_000), Default::default()).unwrap();
        run_phase(&mut b, Phase::Insert, &keys, 1, 0).unwrap();
        let q = run_phase(&mut b, Phase::Query, &keys, 1, 0).unwrap();
        assert_eq!(q.ops, 5_000);
        assert_eq!(q.ns_per_op, q.total_ns as f64 / 5_000.0);
        let d = run_phase(&mut b, Phase::Delete, &keys, 1, 0).unwrap();
        assert_eq!(d.backyard_len, Some(0));
        assert_eq!(b.len(), 0);
    }

    #[test]
    fn query_before_insert_is_reported() {
        let mut b = OrderedMap::default();
        let err = run_phase(&mut b, Phase::Query, &[1, 2], 0, 0).unwrap_err();
        assert!(matches!(err, BenchError::PhaseOrder { .. }));
    }

    struct AppendOnly(Vec<u64>);

    impl Backend for AppendOnly {
        fn name(&self) -> &'static str {
            "append_only"
        }
        fn insert(&mut self, key: u64, _: u64) {
            self.0.push(key);
        }
        fn get(&self, key: u64) -> Option<u64> {
            self.0.contains(&key).then_some(key)
        }
        fn delete(&mut self, _: u64) -> Option<bool> {
            None
        }
        fn len(&self) -> usize {
            self.0.len()
        }
    }

    #[test]
    fn delete_on_backend_without_delete_is_reported() {
        let mut b = AppendOnly(vec![]);
        run_phase(&mut b, Phase::Insert, &[1, 2, 3], 0, 0).unwrap();
        let err = run_phase(&mut b, Phase::Delete, &[1, 2, 3], 0, 0).unwrap_err();
        assert!(matches!(
            err,
            BenchError::PhaseUnsupported {
                phase: Phase::Delete,
                ..
            }
        ));
    }

    #[test]
    fn repetitions_differ_only_in_repetition_and_timing() {
        let plan = BenchPlan {
            repetitions: 3,
            baselines: vec![],
            phases: vec![Phase::Insert],
            ..small_plan()
        };
        let out = run_plan(&plan).unwrap();
        assert_eq!(out.records.len(), 3);
        let strip = |r: &BenchRecord| BenchRecord {
            total_ns: 0,
            ns_per_op: 0.0,
            repetition: 0,
            ..r.clone()
        };
        assert_eq!(strip(&out.records[0]), strip(&out.records[1]));
        assert_eq!(strip(&out.records[0]), strip(&out.records[2]));
        assert_eq!(
            out.records.iter().map(|r| r.repetition).collect::<Vec<_>>(),
            [0, 1, 2]
        );
    }

    #[test]
    fn insert_record_reports_table_backyard() {
        let plan = BenchPlan {
            baselines: vec![],
            phases: vec![Phase::Insert],
            ..small_plan()
        };
        let out = run_plan(&plan).unwrap();
        let mut table = slick_core::SlickTable::new(plan.configs[0]).unwrap();
        for k in gen_keys(plan.n_ops, plan.seed) {
            table.try_insert(k, k);
        }
        assert_eq!(
            out.records[0].backyard_len,
            Some(table.stats().backyard_len as u64)
        );
    }

    #[test]
    fn bad_config_fails_alone() {
        let mut plan = small_plan();
        plan.configs.insert(
            0,
            SlickConfig {
                sliding_block_size: 1,
                ..plan.configs[0]
            },
        );
        plan.baselines = vec![Baseline::OrderedMap];
        let out = run_plan(&plan).unwrap();
        assert_eq!(out.failures.len(), 1);
        assert!(matches!(out.failures[0].1, BenchError::Config(_)));
        assert_eq!(out.records.len(), 6);
    }

    #[test]
    fn grid_with_baselines_emits_every_row() {
        let plan = BenchPlan {
            capacity: 4_000,
            n_ops: 4_000,
            repetitions: 2,
            ..BenchPlan::desk(vec![])
        };
        let out = run_grid(&plan).unwrap();
        assert!(out.failures.is_empty());
        // (8 configs + 2 baselines) x 3 phases x 2 repetitions
        assert_eq!(out.records.len(), 60);
        for name in ["unordered_map", "ordered_map"] {
            for phase in Phase::ALL {
                assert!(out
                    .records
                    .iter()
                    .any(|r| r.impl_name == name && r.phase == phase));
            }
        }
    }
}
