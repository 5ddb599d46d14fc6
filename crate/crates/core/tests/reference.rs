//! Cross-checks the table against a deliberately naive reference model.
//!
//! The reference keeps one `Vec` of keys per block plus an explicit boundary
//! array, and picks slides by enumerating every donor and testing the
//! resulting geometry for legality, rather than scanning incrementally.

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use slick_core::{
    hash_key, BackyardReason, Clean, CleaningPolicy, InsertOutcome, SlickConfig, SlickTable,
    SplitMix64,
};

struct Reference {
    cfg: SlickConfig,
    m: usize,
    bounds: Vec<i64>,
    blocks: Vec<Vec<u64>>,
    thresholds: Vec<u32>,
    backyard: BTreeMap<u64, u64>,
    values: BTreeMap<u64, u64>,
}

#[derive(Debug, PartialEq)]
enum RefOutcome {
    Main(usize),
    Backyard(BackyardReason),
    Replaced,
}

impl Reference {
    fn new(cfg: SlickConfig) -> Self {
        let m = cfg.num_blocks();
        let mut bounds: Vec<i64> = (0..m).map(|i| (i * cfg.block_size) as i64).collect();
        bounds.push(cfg.capacity as i64);
        Reference {
            cfg,
            m,
            bounds,
            blocks: vec![Vec::new(); m],
            thresholds: vec![0; m],
            backyard: BTreeMap::new(),
            values: BTreeMap::new(),
        }
    }

    fn h(&self, key: u64) -> (usize, u32) {
        let h = hash_key(key, self.cfg.seed, &self.cfg);
        (h.home_block, h.priority)
    }

    fn extent(bounds: &[i64], i: usize) -> i64 {
        bounds[i + 1] - bounds[i]
    }

    fn legal(&self, bounds: &[i64]) -> bool {
        let o = self.cfg.max_offset as i64;
        (0..self.m).all(|i| {
            let ext = Self::extent(bounds, i);
            let off = if i == 0 {
                0
            } else {
                bounds[i] - (i * self.cfg.block_size) as i64
            };
            off.abs() <= o
                && ext >= self.blocks[i].len() as i64
                && ext <= self.cfg.sliding_block_size as i64
        }) && bounds[0] == 0
            && bounds[self.m] == self.cfg.capacity as i64
    }

    /// Geometry after borrowing one slot for `b` from donor `j`, if legal.
    fn slide_result(&self, b: usize, j: usize) -> Option<Vec<i64>> {
        let fill = self.blocks[j].len() as i64;
        let ext = Self::extent(&self.bounds, j);
        if fill >= ext || (fill == 0 && ext == 1) {
            return None;
        }
        let mut nb = self.bounds.clone();
        if j > b {
            nb[b + 1..=j].iter_mut().for_each(|x| *x += 1);
        } else {
            nb[j + 1..=b].iter_mut().for_each(|x| *x -= 1);
        }
        self.legal(&nb).then_some(nb)
    }

    fn insert(&mut self, key: u64, value: u64) -> RefOutcome {
        if let Some(old) = self.values.get_mut(&key) {
            *old = value;
            if let Some(v) = self.backyard.get_mut(&key) {
                *v = value;
            }
            return RefOutcome::Replaced;
        }
        self.values.insert(key, value);
        self.place(key, value)
    }

    fn place(&mut self, key: u64, value: u64) -> RefOutcome {
        let (b, p) = self.h(key);
        if p < self.thresholds[b] {
            self.backyard.insert(key, value);
            return RefOutcome::Backyard(BackyardReason::BelowThreshold);
        }
        if (self.blocks[b].len() as i64) < Self::extent(&self.bounds, b) {
            self.blocks[b].push(key);
            return RefOutcome::Main(b);
        }
        let best = (0..self.m)
            .filter(|&j| j != b)
            .filter_map(|j| self.slide_result(b, j).map(|nb| (j.abs_diff(b), j < b, nb)))
            .min_by_key(|(d, left, _)| (*d, *left));
        if let Some((_, _, nb)) = best {
            self.bounds = nb;
            self.blocks[b].push(key);
            return RefOutcome::Main(b);
        }
        let t_hat = self.cfg.max_threshold as u32;
        let new_t = (self.thresholds[b] + 1..=t_hat)
            .find(|&t| t > p || self.blocks[b].iter().any(|&k| self.h(k).1 < t))
            .expect("t̂ always qualifies");
        self.thresholds[b] = new_t;
        let (stay, go): (Vec<u64>, Vec<u64>) =
            self.blocks[b].iter().partition(|&&k| self.h(k).1 >= new_t);
        self.blocks[b] = stay;
        for k in go {
            self.backyard.insert(k, self.values[&k]);
        }
        if p < new_t {
            self.backyard.insert(key, value);
            RefOutcome::Backyard(BackyardReason::ThresholdRaised)
        } else {
            self.blocks[b].push(key);
            RefOutcome::Main(b)
        }
    }

    fn delete(&mut self, key: u64, policy: CleaningPolicy) -> bool {
        if self.values.remove(&key).is_none() {
            return false;
        }
        let (b, _) = self.h(key);
        if self.backyard.remove(&key).is_none() {
            self.blocks[b].retain(|&k| k != key);
        }
        match policy {
            CleaningPolicy::None => {}
            CleaningPolicy::Targeted => self.clean_targeted(b),
            CleaningPolicy::NaiveFull => self.clean_naive(),
        }
        true
    }

    fn clean_targeted(&mut self, b: usize) {
        loop {
            let t = self.thresholds[b];
            let free = Self::extent(&self.bounds, b) as usize - self.blocks[b].len();
            if t == 0 || free == 0 {
                return;
            }
            let level: Vec<u64> = self
                .backyard
                .keys()
                .copied()
                .filter(|&k| self.h(k) == (b, t - 1))
                .collect();
            if level.is_empty() || level.len() > free {
                return;
            }
            for k in level {
                self.backyard.remove(&k);
                self.blocks[b].push(k);
            }
            self.thresholds[b] = t - 1;
        }
    }

    fn clean_naive(&mut self) {
        let main: usize = self.blocks.iter().map(Vec::len).sum();
        let by = self.backyard.len();
        if by == 0 || self.cfg.capacity - main < by {
            return;
        }
        let mut pending: Vec<(usize, u64, u64)> = std::mem::take(&mut self.backyard)
            .into_iter()
            .map(|(k, v)| (self.h(k).0, k, v))
            .collect();
        pending.sort();
        for &(home, _, _) in &pending {
            self.thresholds[home] = 0;
        }
        for (_, k, v) in pending {
            self.place(k, v);
        }
    }

    fn assert_matches(&self, t: &SlickTable) {
        for i in 0..self.m {
            let (s, e) = t.block_extent(i);
            assert_eq!(
                (s as i64, e as i64),
                (self.bounds[i], self.bounds[i + 1]),
                "extent of block {i}"
            );
            assert_eq!(
                t.meta(i).threshold,
                self.thresholds[i],
                "threshold of block {i}"
            );
            let got: BTreeSet<u64> = t.block_entries(i).map(|(k, _)| k).collect();
            let want: BTreeSet<u64> = self.blocks[i].iter().copied().collect();
            assert_eq!(got, want, "members of block {i}");
        }
        let got: BTreeMap<u64, u64> = t.backyard_entries().collect();
        assert_eq!(got, self.backyard);
        let all: BTreeMap<u64, u64> = t.iter().collect();
        assert_eq!(all, self.values);
    }
}

fn mini_config(seed: u64) -> SlickConfig {
    SlickConfig {
        block_size: 2,
        sliding_block_size: 4,
        max_offset: 2,
        max_threshold: 4,
        capacity: 8,
        seed,
    }
}

fn outcome_kind(o: InsertOutcome) -> RefOutcome {
    match o {
        InsertOutcome::PlacedMain { block, .. } => RefOutcome::Main(block),
        InsertOutcome::PlacedBackyard(r) => RefOutcome::Backyard(r),
        InsertOutcome::ReplacedExisting => RefOutcome::Replaced,
    }
}

#[test]
fn five_keys_into_one_block_of_a_mini_instance() {
    let cfg = mini_config(3);
    let home0: Vec<u64> = SplitMix64::new(77)
        .filter(|&k| hash_key(k, cfg.seed, &cfg).home_block == 0)
        .take(5)
        .collect();
    let others: Vec<u64> = SplitMix64::new(78)
        .filter(|&k| hash_key(k, cfg.seed, &cfg).home_block != 0)
        .take(3)
        .collect();
    let mut t = SlickTable::new(cfg).unwrap();
    let mut r = Reference::new(cfg);
    for &k in home0.iter().chain(&others) {
        let got = outcome_kind(t.try_insert(k, k + 1));
        assert_eq!(got, r.insert(k, k + 1));
        r.assert_matches(&t);
        t.check_invariants().unwrap();
    }
    let (_, end) = t.block_extent(0);
    assert!(end > 2 || (t.meta(0).threshold > 0 && t.backyard_len() > 0));
}

#[test]
fn bump_scenario_with_hand_checked_threshold() {
    // Resident priorities {0, 0, 1, 7}, incoming 5, t̂ = 10: candidates
    // t' = 1 already evicts both priority-0 residents, so t' = 1.
    let cfg = SlickConfig {
        block_size: 4,
        sliding_block_size: 4,
        max_offset: 0,
        max_threshold: 10,
        capacity: 8,
        seed: 1,
    };
    let pick = |prio: u32, n: usize, skip: u64| -> Vec<u64> {
        SplitMix64::new(skip)
            .filter(|&k| {
                hash_key(k, 1, &cfg)
                    == slick_core::HashedKey {
                        home_block: 0,
                        priority: prio,
                    }
            })
            .take(n)
            .collect()
    };
    let residents: Vec<u64> = [pick(0, 2, 1), pick(1, 1, 2), pick(7, 1, 3)].concat();
    let incoming = pick(5, 1, 4)[0];
    let mut t = SlickTable::new(cfg).unwrap();
    for &k in &residents {
        t.try_insert(k, k);
    }
    assert!(matches!(
        t.try_insert(incoming, 1),
        InsertOutcome::PlacedMain { block: 0, .. }
    ));
    assert_eq!(t.meta(0).threshold, 1);
    assert_eq!(t.backyard_len(), 2);
    assert_eq!(t.bump_events(), 2);
    // The evicted keys are still reachable, now through the backyard.
    for &k in &residents {
        assert_eq!(t.get(k), Some(k));
    }
    t.check_invariants().unwrap();
}

#[test]
fn degenerate_threshold_bumps_whole_block() {
    let cfg = SlickConfig {
        block_size: 2,
        sliding_block_size: 2,
        max_offset: 0,
        max_threshold: 1,
        capacity: 2,
        seed: 0,
    };
    let mut t = SlickTable::new(cfg).unwrap();
    t.try_insert(1, 1);
    t.try_insert(2, 2);
    assert_eq!(
        t.try_insert(3, 3),
        InsertOutcome::PlacedBackyard(BackyardReason::ThresholdRaised)
    );
    assert_eq!(t.meta(0).threshold, 1);
    assert_eq!(t.main_len(), 0);
    assert_eq!(t.backyard_len(), 3);
    assert_eq!(t.bump_events(), 3);
    for k in 1..=3 {
        assert_eq!(t.get(k), Some(k));
    }
}

#[derive(Debug, Clone)]
enum Op {
    Insert(u64, u64),
    Delete(u64, CleaningPolicy),
    Clean(Option<usize>),
}

fn ops(universe: u64, blocks: usize) -> impl Strategy<Value = Vec<Op>> {
    let policy = prop_oneof![
        Just(CleaningPolicy::None),
        Just(CleaningPolicy::Targeted),
        Just(CleaningPolicy::NaiveFull),
    ];
    let op = prop_oneof![
        6 => (0..universe, any::<u64>()).prop_map(|(k, v)| Op::Insert(k, v)),
        3 => (0..universe, policy).prop_map(|(k, p)| Op::Delete(k, p)),
        1 => proptest::option::of(0..blocks).prop_map(Op::Clean),
    ];
    proptest::collection::vec(op, 1..200)
}

fn run_against_reference(cfg: SlickConfig, ops: &[Op]) {
    let mut t = SlickTable::new(cfg).unwrap();
    let mut r = Reference::new(cfg);
    for op in ops {
        match *op {
            Op::Insert(k, v) => assert_eq!(outcome_kind(t.try_insert(k, v)), r.insert(k, v)),
            Op::Delete(k, p) => assert_eq!(t.delete_entry(k, p), r.delete(k, p)),
            Op::Clean(None) => {
                t.clean_backyard(Clean::NaiveFull);
                r.clean_naive();
            }
            Op::Clean(Some(b)) => {
                t.clean_backyard(Clean::Targeted(b));
                r.clean_targeted(b);
            }
        }
        r.assert_matches(&t);
        t.check_invariants().unwrap();
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn mini_instance_matches_reference(seed in any::<u64>(), ops in ops(24, 4)) {
        run_against_reference(mini_config(seed), &ops);
    }

    #[test]
    fn uneven_instance_matches_reference(seed in any::<u64>(), ops in ops(60, 5)) {
        let cfg = SlickConfig {
            block_size: 3,
            sliding_block_size: 5,
            max_offset: 1,
            max_threshold: 3,
            capacity: 17,
            seed,
        };
        run_against_reference(cfg, &ops);
    }

    #[test]
    fn wide_offsets_match_reference(seed in any::<u64>(), ops in ops(80, 6)) {
        let cfg = SlickConfig {
            block_size: 4,
            sliding_block_size: 12,
            max_offset: 6,
            max_threshold: 16,
            capacity: 24,
            seed,
        };
        run_against_reference(cfg, &ops);
    }
}
