use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use slick_core::{CleaningPolicy, SlickConfig};

use crate::BenchError;

pub const DESK_SCALE: usize = 100_000;
pub const FULL_SCALE: usize = 2_000_000;
pub const DELETE_BATCH: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    Insert,
    Query,
    Delete,
}

impl Phase {
    pub const ALL: [Phase; 3] = [Phase::Insert, Phase::Query, Phase::Delete];
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::Insert => "insert",
            Phase::Query => "query",
            Phase::Delete => "delete",
        })
    }
}

impl FromStr for Phase {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "insert" => Ok(Phase::Insert),
            "query" => Ok(Phase::Query),
            "delete" => Ok(Phase::Delete),
            _ => Err(BenchError::Parse(format!("unknown phase `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Baseline {
    UnorderedMap,
    OrderedMap,
}

impl Baseline {
    pub const ALL: [Baseline; 2] = [Baseline::UnorderedMap, Baseline::OrderedMap];

    pub fn name(self) -> &'static str {
        match self {
            Baseline::UnorderedMap => "unordered_map",
            Baseline::OrderedMap => "ordered_map",
        }
    }
}

impl FromStr for Baseline {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "unordered_map" => Ok(Baseline::UnorderedMap),
            "ordered_map" => Ok(Baseline::OrderedMap),
            _ => Err(BenchError::Parse(format!("unknown baseline `{s}`"))),
        }
    }
}

/// What to run: which tables, which phases, how big, how often.
#[derive(Debug, Clone)]
pub struct BenchPlan {
    pub capacity: usize,
    pub n_ops: usize,
    pub phases: Vec<Phase>,
    pub configs: Vec<SlickConfig>,
    pub baselines: Vec<Baseline>,
    pub cleaning: CleaningPolicy,
    pub seed: u64,
    pub repetitions: u32,
}

impl BenchPlan {
    /// Desk-scale defaults over the given slick configurations.
    pub fn desk(configs: Vec<SlickConfig>) -> Self {
        BenchPlan {
            capacity: DESK_SCALE,
            n_ops: DESK_SCALE,
            phases: Phase::ALL.to_vec(),
            configs,
            baselines: Baseline::ALL.to_vec(),
            cleaning: CleaningPolicy::None,
            seed: 0,
            repetitions: 3,
        }
    }

    pub fn validate(&self) -> Result<(), BenchError> {
        if self.repetitions == 0 {
            return Err(BenchError::InvalidPlan(
                "repetitions must be at least 1".into(),
            ));
        }
        if self.n_ops == 0 {
            return Err(BenchError::InvalidPlan("ops must be at least 1".into()));
        }
        if self.n_ops > self.capacity {
            return Err(BenchError::InvalidPlan(format!(
                "ops ({}) exceed capacity ({}); load factor would pass 1",
                self.n_ops, self.capacity
            )));
        }
        if self.phases.is_empty() {
            return Err(BenchError::InvalidPlan("no phases selected".into()));
        }
        Ok(())
    }
}

/// The hyperparameter sweep: block size at the default shape, then
/// `(B̂, ô)` and `t̂` varied one at a time around `B = 10`. The default
/// configuration appears once.
pub fn sweep_grid(capacity: usize, seed: u64) -> Vec<SlickConfig> {
    let b = 10;
    let default = SlickConfig::with_block_size(b, capacity).seed(seed);
    let mut grid: Vec<SlickConfig> = [5, 10, 50, 200]
        .into_iter()
        .map(|b| SlickConfig::with_block_size(b, capacity).seed(seed))
        .collect();
    for (sliding, offset) in [(4 * b, 2 * b), (b * b, b * b / 2)] {
        grid.push(SlickConfig {
            sliding_block_size: sliding,
            max_offset: offset,
            ..default
        });
    }
    for threshold in [4 * b, b * b] {
        grid.push(SlickConfig {
            max_threshold: threshold,
            ..default
        });
    }
    grid
}
