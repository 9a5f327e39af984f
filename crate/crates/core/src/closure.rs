//! Composition closures, N-genus statistics and permutation-group checks.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::classes::{in_m, is_nondegenerate, permutes_proper_subsets};
use crate::enumerate::enumerate_permutations_in_m;
use crate::{compose, CycleDecomposition, Error, FunctionCode, Parity, Result, RsFunction};

/// Counts of functions by N-genus; `counts[k]` is the number with N-genus `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NGenusHistogram {
    counts: Vec<u64>,
}

impl NGenusHistogram {
    pub fn new(n: u8) -> Self {
        NGenusHistogram {
            counts: vec![0; (1usize << n) - 1],
        }
    }

    pub fn add(&mut self, n_genus: usize) {
        self.counts[n_genus] += 1;
    }

    pub fn get(&self, n_genus: usize) -> u64 {
        self.counts.get(n_genus).copied().unwrap_or(0)
    }

    /// `(n_genus, count)` for every value from 1 to `2^n - 2`.
    pub fn rows(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.counts.iter().copied().enumerate().skip(1)
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

pub fn n_genus_distribution<'a>(
    n: u8,
    members: impl IntoIterator<Item = &'a RsFunction>,
) -> NGenusHistogram {
    let mut hist = NGenusHistogram::new(n);
    for f in members {
        hist.add(f.n_genus());
    }
    hist
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureResult {
    pub n: u8,
    /// Sorted, distinct.
    pub members: Vec<FunctionCode>,
    /// Number of frontier generations expanded, the generators being the first.
    pub rounds: usize,
    pub generator_count: usize,
    pub stats: Option<NGenusHistogram>,
}

impl ClosureResult {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, f: &RsFunction) -> bool {
        f.n() == self.n
            && f.pack()
                .is_ok_and(|c| self.members.binary_search(&c).is_ok())
    }

    pub fn functions(&self) -> impl Iterator<Item = RsFunction> + '_ {
        self.members
            .iter()
            .map(|c| c.unpack(self.n).expect("members fit the width"))
    }

    pub fn with_n_genus_stats(mut self) -> Self {
        let mut hist = NGenusHistogram::new(self.n);
        for f in self.functions() {
            hist.add(f.n_genus());
        }
        self.stats = Some(hist);
        self
    }
}

/// The smallest composition-closed set containing `generators`.
///
/// Built by frontier search: every new member is an existing member composed
/// on the right with a generator (`word ∘ generator`). The identity is not
/// added unless generated. Fails with [`Error::CapExceeded`], carrying the
/// partial set, once more than `cap` members are found.
pub fn semigroup_closure(generators: &[RsFunction], cap: Option<usize>) -> Result<ClosureResult> {
    let n = check_generators(generators)?;
    if n > 4 {
        return Err(Error::WidthOverflow(n));
    }
    let mut gens: Vec<FunctionCode> = generators.iter().map(|g| g.pack()).collect::<Result<_>>()?;
    gens.sort_unstable();
    gens.dedup();
    if n == 3 {
        dense3::closure(&gens, cap)
    } else {
        sparse_closure(n, &gens, cap)
    }
}

fn check_generators(generators: &[RsFunction]) -> Result<u8> {
    let first = generators.first().ok_or(Error::NoGenerators)?;
    for g in generators {
        if g.n() != first.n() {
            return Err(Error::WidthMismatch {
                left: first.n(),
                right: g.n(),
            });
        }
    }
    Ok(first.n())
}

fn sparse_closure(n: u8, gens: &[FunctionCode], cap: Option<usize>) -> Result<ClosureResult> {
    let cap = cap.unwrap_or(usize::MAX);
    let gen_fns: Vec<RsFunction> = gens.iter().map(|c| c.unpack(n)).collect::<Result<_>>()?;
    let mut seen: HashSet<FunctionCode> = gens.iter().copied().collect();
    let mut frontier = gen_fns.clone();
    let mut rounds = 0;
    let mut exceeded = seen.len() > cap;
    while !frontier.is_empty() && !exceeded {
        rounds += 1;
        let mut next = Vec::new();
        'outer: for word in &frontier {
            for g in &gen_fns {
                let product = word.compose(g)?;
                if seen.insert(product.pack()?) {
                    next.push(product);
                    if seen.len() > cap {
                        exceeded = true;
                        break 'outer;
                    }
                }
            }
        }
        next.sort_unstable();
        frontier = next;
    }
    let mut members: Vec<FunctionCode> = seen.into_iter().collect();
    members.sort_unstable();
    finish(n, members, rounds, gens.len(), exceeded.then_some(cap))
}

fn finish(
    n: u8,
    members: Vec<FunctionCode>,
    rounds: usize,
    generator_count: usize,
    exceeded: Option<usize>,
) -> Result<ClosureResult> {
    let result = ClosureResult {
        n,
        members,
        rounds,
        generator_count,
        stats: None,
    };
    match exceeded {
        Some(cap) => Err(Error::CapExceeded {
            cap,
            partial: Box::new(result),
        }),
        None => Ok(result),
    }
}

/// Width-3 closures on 24-bit codes with a flat membership bitset.
mod dense3 {
    use super::*;

    const SPACE: usize = 1 << 24;

    /// Above this many generators the per-word lookup table pays for itself.
    const TABLE_THRESHOLD: usize = 64;

    #[inline]
    fn compose_direct(word: u32, inner: u32) -> u32 {
        let mut out = 0;
        for i in 0..8 {
            let x = inner >> (3 * i) & 7;
            out |= (word >> (3 * x) & 7) << (3 * i);
        }
        out
    }

    /// Maps 12 bits of an inner function (four images) to 12 bits of `word ∘ inner`.
    fn table(word: u32) -> Vec<u16> {
        let pair: Vec<u16> = (0..64u32)
            .map(|a| ((word >> (3 * (a & 7)) & 7) | (word >> (3 * (a >> 3)) & 7) << 3) as u16)
            .collect();
        (0..4096usize)
            .map(|i| pair[i & 63] | pair[i >> 6] << 6)
            .collect()
    }

    struct Bitset(Vec<AtomicU64>);

    impl Bitset {
        fn new() -> Self {
            Bitset((0..SPACE / 64).map(|_| AtomicU64::new(0)).collect())
        }

        /// Sets the bit; true if it was clear.
        #[inline]
        fn claim(&self, code: u32) -> bool {
            let word = &self.0[(code >> 6) as usize];
            let bit = 1u64 << (code & 63);
            if word.load(Ordering::Relaxed) & bit != 0 {
                return false;
            }
            word.fetch_or(bit, Ordering::Relaxed) & bit == 0
        }
    }

    pub(super) fn closure(gens: &[FunctionCode], cap: Option<usize>) -> Result<ClosureResult> {
        let cap = cap.unwrap_or(usize::MAX);
        let gens: Vec<u32> = gens.iter().map(|c| c.0 as u32).collect();
        let seen = Bitset::new();
        let mut members: Vec<u32> = Vec::new();
        let mut frontier: Vec<u32> = gens.iter().copied().filter(|&g| seen.claim(g)).collect();
        let mut rounds = 0;
        let mut exceeded = false;
        while !frontier.is_empty() {
            members.extend_from_slice(&frontier);
            if members.len() > cap {
                exceeded = true;
                break;
            }
            rounds += 1;
            let use_table = gens.len() >= TABLE_THRESHOLD;
            let mut next: Vec<u32> = frontier
                .par_iter()
                .fold(Vec::new, |mut found, &word| {
                    if use_table {
                        let t = table(word);
                        for &g in &gens {
                            let product = t[(g & 0xfff) as usize] as u32
                                | (t[(g >> 12) as usize] as u32) << 12;
                            if seen.claim(product) {
                                found.push(product);
                            }
                        }
                    } else {
                        for &g in &gens {
                            let product = compose_direct(word, g);
                            if seen.claim(product) {
                                found.push(product);
                            }
                        }
                    }
                    found
                })
                .reduce(Vec::new, |mut a, mut b| {
                    a.append(&mut b);
                    a
                });
            next.par_sort_unstable();
            frontier = next;
        }
        members.par_sort_unstable();
        let members = members
            .into_iter()
            .map(|c| FunctionCode(c as u64))
            .collect();
        finish(3, members, rounds, gens.len(), exceeded.then_some(cap))
    }

}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupClosure {
    pub n: u8,
    pub order: u64,
    pub members: Vec<FunctionCode>,
}

/// The group generated by permutations of `2^S`. Inverses need no special
/// treatment: in a finite group `r^{-1} = r^{o(r)-1}`.
pub fn group_closure(generators: &[RsFunction], cap: Option<usize>) -> Result<GroupClosure> {
    if generators.iter().any(|g| !g.is_permutation()) {
        return Err(Error::NotAPermutation);
    }
    let closure = semigroup_closure(generators, cap)?;
    Ok(GroupClosure {
        n: closure.n,
        order: closure.members.len() as u64,
        members: closure.members,
    })
}

/// A 3-cycle `(a b c)` on `2^S`, stored with its smallest code first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThreeCycle([u8; 3]);

impl ThreeCycle {
    pub fn new(a: u8, b: u8, c: u8) -> Option<ThreeCycle> {
        if a == b || b == c || a == c {
            return None;
        }
        let cycle = if a < b && a < c {
            [a, b, c]
        } else if b < c {
            [b, c, a]
        } else {
            [c, a, b]
        };
        Some(ThreeCycle(cycle))
    }

    pub fn codes(&self) -> [u8; 3] {
        self.0
    }

    pub fn to_function(&self, n: u8) -> Result<RsFunction> {
        RsFunction::from_cycles(n, &[self.0])
    }

    /// `r ∘ (a b c) ∘ r^{-1}`, which is `(r(a) r(b) r(c))`.
    pub fn conjugate_by(&self, r: &RsFunction) -> ThreeCycle {
        let [a, b, c] = self.0;
        ThreeCycle::new(r.get(a), r.get(b), r.get(c)).expect("conjugating by a permutation")
    }
}

impl fmt::Display for ThreeCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {} {})", self.0[0], self.0[1], self.0[2])
    }
}

/// All `2^n (2^n - 1) (2^n - 2) / 3` 3-cycles on `2^S`.
pub fn all_three_cycles(n: u8) -> Vec<ThreeCycle> {
    let len = 1u8 << n;
    let mut out = Vec::new();
    for a in 0..len {
        for b in a + 1..len {
            for c in a + 1..len {
                if b != c {
                    out.push(ThreeCycle([a, b, c]));
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeCycleCoverage {
    pub covered: BTreeSet<ThreeCycle>,
    pub target_count: usize,
}

impl ThreeCycleCoverage {
    pub fn new(n: u8) -> Self {
        let len = 1usize << n;
        ThreeCycleCoverage {
            covered: BTreeSet::new(),
            target_count: len * (len - 1) * (len - 2) / 3,
        }
    }

    pub fn is_complete(&self) -> bool {
        self.covered.len() == self.target_count
    }
}

/// The outcome of replaying the alternating-group generation argument at width 4.
#[derive(Clone, Debug)]
pub struct AlternatingReport {
    pub p: RsFunction,
    pub q: RsFunction,
    pub p_in_m: bool,
    pub q_in_m: bool,
    /// `p ∘ q ∘ p ∘ q`.
    pub commutator: CycleDecomposition,
    pub base: ThreeCycle,
    pub coverage: ThreeCycleCoverage,
    /// Pair compositions `r = g_i ∘ g_j` examined before coverage completed.
    pub pairs_consumed: u64,
    pub generator_count: usize,
    pub odd_generators: usize,
}

/// Runs [`verify_alternating_generation_with`] on a freshly enumerated census.
pub fn verify_alternating_generation() -> Result<AlternatingReport> {
    let (perms, _) = enumerate_permutations_in_m(4)?;
    verify_alternating_generation_with(&perms)
}

/// Checks that the width-4 permutations in `M(S)` generate the alternating
/// group on `2^S`.
///
/// `p = (8 11)(12 15)` and `q = (4 13)(6 15)` are in `M(S)` and
/// `p ∘ q ∘ p ∘ q = (6 15 12)`. Conjugates `(r(6) r(15) r(12))` are then
/// collected for `r = g_i ∘ g_j` over pairs of generators in lexicographic
/// order of `(i, j)`, stopping once all 1120 3-cycles appear.
pub fn verify_alternating_generation_with(perms: &[RsFunction]) -> Result<AlternatingReport> {
    if perms.is_empty() {
        return Err(Error::NoGenerators);
    }
    if let Some(g) = perms.iter().find(|g| g.n() != 4) {
        return Err(Error::WidthMismatch {
            left: 4,
            right: g.n(),
        });
    }
    let p = RsFunction::from_cycles(4, &[[8u8, 11], [12, 15]])?;
    let q = RsFunction::from_cycles(4, &[[4u8, 13], [6, 15]])?;
    let pq = compose(&p, &q)?;
    let commutator = compose(&pq, &pq)?;
    let base = ThreeCycle::new(6, 15, 12).expect("distinct codes");
    let odd_generators = perms
        .iter()
        .map(RsFunction::parity)
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|&p| p == Parity::Odd)
        .count();

    let mut coverage = ThreeCycleCoverage::new(4);
    let mut pairs_consumed = 0u64;
    'sweep: for a in perms {
        for b in perms {
            let r = a.compose(b)?;
            pairs_consumed += 1;
            coverage.covered.insert(base.conjugate_by(&r));
            if coverage.is_complete() {
                break 'sweep;
            }
        }
    }
    if !coverage.is_complete() {
        return Err(Error::CoverageIncomplete {
            covered: coverage.covered.len(),
            target: coverage.target_count,
        });
    }
    Ok(AlternatingReport {
        p_in_m: in_m(&p),
        q_in_m: in_m(&q),
        commutator: commutator.cycle_decomposition()?,
        p,
        q,
        base,
        coverage,
        pairs_consumed,
        generator_count: perms.len(),
        odd_generators,
    })
}

/// 3-cycles on `2^S` that belong to `M(S)`.
pub fn three_cycles_in_m(n: u8) -> Result<Vec<ThreeCycle>> {
    let mut out = Vec::new();
    for c in all_three_cycles(n) {
        if in_m(&c.to_function(n)?) {
            out.push(c);
        }
    }
    Ok(out)
}

/// Nondegenerate functions at width 3 split by N-genus and by whether a
/// closure generates them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotGeneratedReport {
    /// All nondegenerate functions by N-genus.
    pub all: NGenusHistogram,
    /// Those missing from the closure, by N-genus.
    pub ungenerated: NGenusHistogram,
    /// Ungenerated functions that permute the nonempty proper subsets.
    pub ungenerated_proper_permuting: u64,
    pub max_n_genus: usize,
}

impl NotGeneratedReport {
    pub fn max_genus_total(&self) -> u64 {
        self.all.get(self.max_n_genus)
    }

    pub fn max_genus_ungenerated(&self) -> u64 {
        self.ungenerated.get(self.max_n_genus)
    }

    /// Nondegenerate functions below the maximal N-genus.
    pub fn below_max_total(&self) -> u64 {
        self.all.total() - self.max_genus_total()
    }

    pub fn below_max_ungenerated(&self) -> u64 {
        self.ungenerated.total() - self.max_genus_ungenerated()
    }
}

/// Compares a closure against every nondegenerate function of its width.
/// Only widths up to 3 are enumerable.
pub fn not_generated_census(closure: &ClosureResult) -> Result<NotGeneratedReport> {
    let n = closure.n;
    if n > 3 {
        return Err(Error::UnsupportedWidth(n));
    }
    let len = 1usize << n;
    let free = len - 2;
    let mut all = NGenusHistogram::new(n);
    let mut ungenerated = NGenusHistogram::new(n);
    let mut ungenerated_proper_permuting = 0;
    let mut images = vec![0u8; len];
    for k in 0..len.pow(free as u32) {
        let mut rest = k;
        for slot in &mut images[1..len - 1] {
            *slot = (rest % len) as u8;
            rest /= len;
        }
        let f = RsFunction::new(n, &images)?;
        debug_assert!(is_nondegenerate(&f));
        let genus = f.n_genus();
        all.add(genus);
        if !closure.contains(&f) {
            ungenerated.add(genus);
            if permutes_proper_subsets(&f) {
                ungenerated_proper_permuting += 1;
            }
        }
    }
    Ok(NotGeneratedReport {
        all,
        ungenerated,
        ungenerated_proper_permuting,
        max_n_genus: free,
    })
}
