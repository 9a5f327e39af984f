//! Incremental backtracking enumeration of subadditive functions.
//!
//! A function is built one input code at a time, in increasing code order,
//! and each subadditivity instance is checked once, at a step where all of
//! its codes are assigned. Since `X ∩ Y <= X, Y <= X ∪ Y` as codes, the union
//! instance of a pair `(X, Y)` is decided when `X ∪ Y` is assigned and the
//! intersection instance can be decided as early as `max(X, Y)`; see
//! [`CheckSchedule`]. Comparable pairs hold trivially and are skipped. Every
//! constraint is checked by the time the last code is assigned, so the
//! completed level does not depend on the schedule; the intermediate level
//! sizes do. Restricting a member of one level to a shorter prefix gives a
//! member of the earlier level.
//!
//! Levels are flat sorted arrays of packed prefixes (the [`FunctionCode`]
//! layout), so only widths up to 4 are supported.

use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::function::check_width;
use crate::{Error, FunctionCode, Result, RsFunction};

/// Per-code constraints on the search beyond subadditivity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSpace {
    n: u8,
    /// `allowed[x]` has bit `v` set when `v` may be the image of `x`.
    allowed: Vec<u32>,
    /// Input codes whose images must be pairwise distinct.
    injective: u32,
    kind: CensusKind,
    schedule: CheckSchedule,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CensusKind {
    /// All of `M(S)`.
    All,
    /// Members of `M(S)` sending `∅` and `S` to `∅`.
    Nondegenerate,
    /// Members of `M(S)` that permute `2^S`.
    Permutations,
    /// Nondegenerate members permuting the nonempty proper subsets.
    ProperPermuting,
}

impl SearchSpace {
    /// Unconstrained and nondegenerate censuses have no injectivity to
    /// prune with, so they stop at width 3; the others reach width 4.
    pub fn new(n: u8, kind: CensusKind) -> Result<Self> {
        check_width(n)?;
        let limit = match kind {
            CensusKind::All | CensusKind::Nondegenerate => 3,
            CensusKind::Permutations | CensusKind::ProperPermuting => 4,
        };
        if n > limit {
            return Err(Error::UnsupportedWidth(n));
        }
        let len = 1usize << n;
        let every = ((1u64 << len) - 1) as u32;
        let last = len - 1;
        let mut allowed = vec![every; len];
        let mut injective = 0u32;
        match kind {
            CensusKind::All => {}
            CensusKind::Nondegenerate => {
                allowed[0] = 1;
                allowed[last] = 1;
            }
            CensusKind::Permutations => injective = every,
            CensusKind::ProperPermuting => {
                let proper = every & !1 & !(1 << last);
                allowed.iter_mut().for_each(|a| *a = proper);
                allowed[0] = 1;
                allowed[last] = 1;
                injective = proper;
            }
        }
        Ok(SearchSpace {
            n,
            allowed,
            injective,
            kind,
            schedule: CheckSchedule::default(),
        })
    }

    pub fn with_schedule(mut self, schedule: CheckSchedule) -> Self {
        self.schedule = schedule;
        self
    }

    pub fn schedule(&self) -> CheckSchedule {
        self.schedule
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn kind(&self) -> CensusKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        1 << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// When intersection instances are checked.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum CheckSchedule {
    /// Every intersection instance at `max(X, Y)`.
    Earliest,
    /// As [`CheckSchedule::Earliest`], except that disjoint pairs whose sides
    /// both have at least two elements are checked at `X ∪ Y`. This is the
    /// schedule that yields the reference quaternary level sizes. Below width 4
    /// no such pair exists; for the width-4 permutation census the two
    /// schedules differ only in the size of `A_9`.
    #[default]
    DeferDisjoint,
}

impl CheckSchedule {
    /// The step at which the intersection instance of `(x, y)`, `x <= y`, is
    /// checked.
    pub fn intersection_step(self, x: u8, y: u8) -> u8 {
        match self {
            CheckSchedule::DeferDisjoint
                if x & y == 0 && x.count_ones() >= 2 && y.count_ones() >= 2 =>
            {
                x | y
            }
            _ => y,
        }
    }
}

/// The step at which each subadditivity instance is checked.
#[derive(Clone, Debug)]
pub struct PairSchedule {
    union_all: Vec<Vec<(u8, u8)>>,
    intersection_all: Vec<Vec<(u8, u8)>>,
    /// Incomparable pairs `X < Y` with `X ∪ Y = m`.
    union_checked: Vec<Vec<(u8, u8)>>,
    /// Codes `X < m` incomparable with `m` whose instance `(X, m)` is checked at `m`.
    intersection_with_new: Vec<Vec<u8>>,
    /// Incomparable pairs `X < Y < m` whose intersection instance is checked at `m`.
    intersection_deferred: Vec<Vec<(u8, u8)>>,
}

impl PairSchedule {
    pub fn new(n: u8, schedule: CheckSchedule) -> Self {
        let len = 1u16 << n;
        let empty = || vec![Vec::new(); len as usize];
        let mut out = PairSchedule {
            union_all: empty(),
            intersection_all: empty(),
            union_checked: empty(),
            intersection_with_new: vec![Vec::new(); len as usize],
            intersection_deferred: empty(),
        };
        for x in 0..len as u8 {
            for y in x..len as u8 {
                let step = schedule.intersection_step(x, y);
                out.union_all[(x | y) as usize].push((x, y));
                out.intersection_all[step as usize].push((x, y));
                if x & y == x {
                    continue;
                }
                out.union_checked[(x | y) as usize].push((x, y));
                if step == y {
                    out.intersection_with_new[y as usize].push(x);
                } else {
                    out.intersection_deferred[step as usize].push((x, y));
                }
            }
        }
        out
    }

    /// Pairs `X <= Y` whose union instance is checked at step `m`.
    pub fn union_at(&self, m: usize) -> &[(u8, u8)] {
        &self.union_all[m]
    }

    /// Pairs `X <= Y` whose intersection instance is checked at step `m`.
    pub fn intersection_at(&self, m: usize) -> &[(u8, u8)] {
        &self.intersection_all[m]
    }
}

/// An assignment of images to the codes `0..len`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialRsFunction {
    n: u8,
    len: u8,
    packed: u64,
}

impl PartialRsFunction {
    pub fn n(&self) -> u8 {
        self.n
    }

    /// Number of assigned codes.
    pub fn prefix_len(&self) -> usize {
        self.len as usize
    }

    pub fn get(&self, x: u8) -> u8 {
        assert!(x < self.len, "code {x} is not assigned");
        (self.packed >> (x as u32 * self.n as u32) & ((1 << self.n) - 1)) as u8
    }

    pub fn images(&self) -> Vec<u8> {
        (0..self.len).map(|x| self.get(x)).collect()
    }

    /// Bitmask of the images of those assigned codes selected by `codes`.
    pub fn used_mask(&self, codes: u32) -> u32 {
        (0..self.len)
            .filter(|&x| codes >> x & 1 == 1)
            .fold(0, |acc, x| acc | 1 << self.get(x))
    }

    /// Drops the last assigned code.
    pub fn restriction(&self) -> Option<PartialRsFunction> {
        (self.len > 0).then(|| {
            let len = self.len - 1;
            let bits = len as u32 * self.n as u32;
            PartialRsFunction {
                n: self.n,
                len,
                packed: self.packed & ((1u64 << bits) - 1),
            }
        })
    }

    pub fn to_function(&self) -> Option<RsFunction> {
        (self.len as usize == 1 << self.n).then(|| {
            FunctionCode(self.packed)
                .unpack(self.n)
                .expect("packed width fits")
        })
    }
}

/// All prefixes of one length that survive the constraints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    n: u8,
    prefix_len: usize,
    codes: Vec<u64>,
}

impl Level {
    /// The level before any code is assigned: one empty prefix.
    pub fn root(n: u8) -> Level {
        Level {
            n,
            prefix_len: 0,
            codes: vec![0],
        }
    }

    pub fn prefix_len(&self) -> usize {
        self.prefix_len
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn members(&self) -> impl Iterator<Item = PartialRsFunction> + '_ {
        self.codes.iter().map(|&packed| PartialRsFunction {
            n: self.n,
            len: self.prefix_len as u8,
            packed,
        })
    }

    pub fn contains(&self, p: &PartialRsFunction) -> bool {
        p.len as usize == self.prefix_len && self.codes.binary_search(&p.packed).is_ok()
    }
}

/// Precomputed tables for one search space.
struct Extender<'a> {
    space: &'a SearchSpace,
    schedule: PairSchedule,
    /// `subsets_of[u]`: bitmask of all codes `v ⊆ u`.
    subsets_of: Vec<u32>,
    /// `supersets_of[r]`: bitmask of all codes `v ⊇ r`.
    supersets_of: Vec<u32>,
}

impl<'a> Extender<'a> {
    fn new(space: &'a SearchSpace) -> Self {
        let len = space.len();
        let subsets_of = (0..len)
            .map(|u| {
                (0..len)
                    .filter(|&v| v & !u == 0)
                    .fold(0u32, |acc, v| acc | 1 << v)
            })
            .collect();
        let supersets_of = (0..len)
            .map(|r| {
                (0..len)
                    .filter(|&v| r & !v == 0)
                    .fold(0u32, |acc, v| acc | 1 << v)
            })
            .collect();
        Extender {
            space,
            schedule: PairSchedule::new(space.n, space.schedule),
            subsets_of,
            supersets_of,
        }
    }

    /// Admissible images for code `m` given the prefix `packed` of codes `0..m`.
    #[inline]
    fn candidates(&self, packed: u64, m: usize) -> u32 {
        let n = self.space.n as u32;
        let mask = (1u64 << n) - 1;
        let get = |x: u8| (packed >> (x as u32 * n) & mask) as u8;
        let mut cap = self.space.allowed[m];
        if self.space.injective >> m & 1 == 1 {
            let mut used = 0u32;
            let mut inj = self.space.injective & ((1u32 << m) - 1);
            while inj != 0 {
                let x = inj.trailing_zeros() as u8;
                used |= 1 << get(x);
                inj &= inj - 1;
            }
            cap &= !used;
        }
        for &(x, y) in &self.schedule.intersection_deferred[m] {
            if get(x & y) & !(get(x) | get(y)) != 0 {
                return 0;
            }
        }
        // Union instances at m: f(m) ⊆ f(X) ∪ f(Y) for X ∪ Y = m.
        for &(x, y) in &self.schedule.union_checked[m] {
            cap &= self.subsets_of[(get(x) | get(y)) as usize];
            if cap == 0 {
                return 0;
            }
        }
        // Intersection instances with Y = m: f(X ∩ m) ⊆ f(X) ∪ f(m), so f(m)
        // must cover what f(X) misses.
        let mut required = 0u8;
        for &x in &self.schedule.intersection_with_new[m] {
            required |= get(x & m as u8) & !get(x);
        }
        cap & self.supersets_of[required as usize]
    }

    fn extend(&self, level: &Level) -> Level {
        let m = level.prefix_len;
        let shift = m as u32 * self.space.n as u32;
        let mut codes: Vec<u64> = level
            .codes
            .par_iter()
            .flat_map_iter(|&packed| {
                let mut cap = self.candidates(packed, m);
                std::iter::from_fn(move || {
                    (cap != 0).then(|| {
                        let v = cap.trailing_zeros() as u64;
                        cap &= cap - 1;
                        packed | v << shift
                    })
                })
            })
            .collect();
        codes.par_sort_unstable();
        codes.dedup();
        Level {
            n: level.n,
            prefix_len: m + 1,
            codes,
        }
    }
}

/// Extends every prefix of `level` by one more code.
pub fn extend_level(level: &Level, space: &SearchSpace) -> Level {
    assert!(level.prefix_len < space.len(), "level is already complete");
    Extender::new(space).extend(level)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub n: u8,
    pub kind: CensusKind,
    /// Sizes of the levels with prefix lengths `1..=2^n`.
    pub level_sizes: Vec<u64>,
    pub final_count: u64,
    pub elapsed: Duration,
}

impl CensusReport {
    pub fn injective(&self) -> bool {
        matches!(
            self.kind,
            CensusKind::Permutations | CensusKind::ProperPermuting
        )
    }

    pub fn nondegenerate(&self) -> bool {
        matches!(
            self.kind,
            CensusKind::Nondegenerate | CensusKind::ProperPermuting
        )
    }

    pub fn proper_permuting(&self) -> bool {
        self.kind == CensusKind::ProperPermuting
    }
}

/// Runs the search to completion. Members come back sorted by function code.
pub fn run(space: &SearchSpace) -> (Vec<RsFunction>, CensusReport) {
    let start = Instant::now();
    let extender = Extender::new(space);
    let mut level = Level::root(space.n);
    let mut level_sizes = Vec::with_capacity(space.len());
    while level.prefix_len < space.len() {
        level = extender.extend(&level);
        level_sizes.push(level.len() as u64);
    }
    let members: Vec<RsFunction> = level
        .members()
        .map(|p| p.to_function().expect("level is complete"))
        .collect();
    let report = CensusReport {
        n: space.n,
        kind: space.kind,
        final_count: members.len() as u64,
        level_sizes,
        elapsed: start.elapsed(),
    };
    (members, report)
}

/// Permutations of `2^S` in `M(S)`; widths up to 4.
pub fn enumerate_permutations_in_m(n: u8) -> Result<(Vec<RsFunction>, CensusReport)> {
    Ok(run(&SearchSpace::new(n, CensusKind::Permutations)?))
}

/// All of `M(S)`; exhaustive mode is limited to widths up to 3.
pub fn enumerate_m(n: u8) -> Result<(Vec<RsFunction>, CensusReport)> {
    Ok(run(&SearchSpace::new(n, CensusKind::All)?))
}

/// Nondegenerate members of `M(S)`; widths up to 3.
pub fn enumerate_nondegenerate_m(n: u8) -> Result<(Vec<RsFunction>, CensusReport)> {
    Ok(run(&SearchSpace::new(n, CensusKind::Nondegenerate)?))
}

/// Nondegenerate members of `M(S)` permuting the nonempty proper subsets;
/// widths up to 4.
pub fn enumerate_proper_permuting_nondeg_m(n: u8) -> Result<(Vec<RsFunction>, CensusReport)> {
    Ok(run(&SearchSpace::new(n, CensusKind::ProperPermuting)?))
}

pub fn census(n: u8, kind: CensusKind) -> Result<(Vec<RsFunction>, CensusReport)> {
    match kind {
        CensusKind::All => enumerate_m(n),
        CensusKind::Nondegenerate => enumerate_nondegenerate_m(n),
        CensusKind::Permutations => enumerate_permutations_in_m(n),
        CensusKind::ProperPermuting => enumerate_proper_permuting_nondeg_m(n),
    }
}
