//! Subsets, rs functions and the permutation utilities built on them.

use std::cmp::Ordering;
use std::fmt;

use crate::{Error, Result};

/// Largest supported background-set size.
pub const MAX_WIDTH: u8 = 6;

const MAX_LEN: usize = 1 << MAX_WIDTH;

pub(crate) fn check_width(n: u8) -> Result<()> {
    if (1..=MAX_WIDTH).contains(&n) {
        Ok(())
    } else {
        Err(Error::WidthOutOfRange(n))
    }
}

/// A subset of the background set, one bit per element.
///
/// Element `s_i` is bit `i`, so `{s0, s2}` is `5`. The width is carried by
/// whatever function or system the code belongs to.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetCode(pub u8);

impl SubsetCode {
    pub const EMPTY: SubsetCode = SubsetCode(0);

    /// The whole background set of width `n`.
    pub fn full(n: u8) -> SubsetCode {
        SubsetCode(((1u16 << n) - 1) as u8)
    }

    pub fn singleton(i: u8) -> SubsetCode {
        SubsetCode(1 << i)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn union(self, other: SubsetCode) -> SubsetCode {
        SubsetCode(self.0 | other.0)
    }

    pub fn intersection(self, other: SubsetCode) -> SubsetCode {
        SubsetCode(self.0 & other.0)
    }

    /// `S \ self` within width `n`.
    pub fn complement(self, n: u8) -> SubsetCode {
        SubsetCode(!self.0 & Self::full(n).0)
    }

    pub fn is_subset_of(self, other: SubsetCode) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: SubsetCode) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: u8) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    /// Element indices in increasing order.
    pub fn elements(self) -> impl Iterator<Item = u8> {
        (0..8u8).filter(move |&i| self.contains(i))
    }
}

impl fmt::Display for SubsetCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A function `2^S -> 2^S` in row-vector form: entry `i` is the image of the
/// subset with code `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct RsFunction {
    n: u8,
    // Entries past 2^n stay zero so the derived equality and hash are exact.
    images: [u8; MAX_LEN],
}

impl RsFunction {
    pub fn new(n: u8, images: &[u8]) -> Result<Self> {
        check_width(n)?;
        let len = 1usize << n;
        if images.len() != len {
            return Err(Error::LengthMismatch {
                expected: len,
                got: images.len(),
            });
        }
        let mut out = [0u8; MAX_LEN];
        for (index, &value) in images.iter().enumerate() {
            if value as usize >= len {
                return Err(Error::ImageOutOfRange { index, value, n });
            }
            out[index] = value;
        }
        Ok(RsFunction { n, images: out })
    }

    /// Builds a function from a per-input rule. Images are masked to width `n`.
    pub fn from_fn(n: u8, mut rule: impl FnMut(SubsetCode) -> SubsetCode) -> Result<Self> {
        check_width(n)?;
        let full = SubsetCode::full(n).0;
        let mut images = [0u8; MAX_LEN];
        for (x, slot) in images.iter_mut().enumerate().take(1 << n) {
            *slot = rule(SubsetCode(x as u8)).0 & full;
        }
        Ok(RsFunction { n, images })
    }

    pub fn identity(n: u8) -> Result<Self> {
        Self::from_fn(n, |x| x)
    }

    pub fn constant(n: u8, value: SubsetCode) -> Result<Self> {
        Self::from_fn(n, |_| value)
    }

    /// Builds a permutation of `2^S` from disjoint cycles; unmentioned codes
    /// are fixed. `[2, 5]` maps 2 to 5 and 5 to 2.
    pub fn from_cycles<C: AsRef<[u8]>>(n: u8, cycles: &[C]) -> Result<Self> {
        check_width(n)?;
        let len = 1usize << n;
        let mut images = [0u8; MAX_LEN];
        for (i, slot) in images.iter_mut().enumerate().take(len) {
            *slot = i as u8;
        }
        let mut seen = 0u64;
        for cycle in cycles {
            let cycle = cycle.as_ref();
            for (k, &a) in cycle.iter().enumerate() {
                if a as usize >= len {
                    return Err(Error::InvalidCycle(format!(
                        "{a} is out of range for width {n}"
                    )));
                }
                if seen >> a & 1 == 1 {
                    return Err(Error::InvalidCycle(format!("{a} appears twice")));
                }
                seen |= 1 << a;
                images[a as usize] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(RsFunction { n, images })
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    /// Number of inputs, `2^n`.
    pub fn len(&self) -> usize {
        1 << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn images(&self) -> &[u8] {
        &self.images[..self.len()]
    }

    /// Image of the subset with code `x`.
    #[inline]
    pub fn get(&self, x: u8) -> u8 {
        self.images[x as usize]
    }

    pub fn apply(&self, x: SubsetCode) -> SubsetCode {
        SubsetCode(self.images[x.0 as usize])
    }

    pub fn full(&self) -> SubsetCode {
        SubsetCode::full(self.n)
    }

    /// `self ∘ inner`: `inner` is applied first.
    pub fn compose(&self, inner: &RsFunction) -> Result<RsFunction> {
        if self.n != inner.n {
            return Err(Error::WidthMismatch {
                left: self.n,
                right: inner.n,
            });
        }
        let mut images = [0u8; MAX_LEN];
        for (slot, &y) in images.iter_mut().zip(inner.images()) {
            *slot = self.images[y as usize];
        }
        Ok(RsFunction { n: self.n, images })
    }

    /// `X ↦ f(S \ X)`. Its row vector is the reversal of this one.
    pub fn complement_dual(&self) -> RsFunction {
        let mut images = [0u8; MAX_LEN];
        for (slot, &y) in images.iter_mut().zip(self.images().iter().rev()) {
            *slot = y;
        }
        RsFunction { n: self.n, images }
    }

    /// Number of distinct images.
    pub fn genus(&self) -> usize {
        distinct(self.images())
    }

    /// Number of distinct images over the nonempty proper subsets.
    pub fn n_genus(&self) -> usize {
        let len = self.len();
        distinct(&self.images[1..len - 1])
    }

    pub fn is_permutation(&self) -> bool {
        let mut seen = 0u64;
        for &v in self.images() {
            seen |= 1 << v;
        }
        seen.count_ones() as usize == self.len()
    }

    pub fn inverse(&self) -> Result<RsFunction> {
        if !self.is_permutation() {
            return Err(Error::NotAPermutation);
        }
        let mut images = [0u8; MAX_LEN];
        for (x, &v) in self.images().iter().enumerate() {
            images[v as usize] = x as u8;
        }
        Ok(RsFunction { n: self.n, images })
    }

    pub fn cycle_decomposition(&self) -> Result<CycleDecomposition> {
        if !self.is_permutation() {
            return Err(Error::NotAPermutation);
        }
        let mut visited = 0u64;
        let mut cycles = Vec::new();
        // Starting each cycle at the smallest unvisited code yields the
        // canonical min-first, sorted form directly.
        for start in 0..self.len() as u8 {
            if visited >> start & 1 == 1 {
                continue;
            }
            let mut cycle = vec![SubsetCode(start)];
            visited |= 1 << start;
            let mut x = self.get(start);
            while x != start {
                visited |= 1 << x;
                cycle.push(SubsetCode(x));
                x = self.get(x);
            }
            if cycle.len() > 1 {
                cycles.push(cycle);
            }
        }
        Ok(CycleDecomposition { cycles })
    }

    pub fn parity(&self) -> Result<Parity> {
        Ok(self.cycle_decomposition()?.parity())
    }

    pub fn pack(&self) -> Result<FunctionCode> {
        FunctionCode::pack(self)
    }
}

fn distinct(values: &[u8]) -> usize {
    let mut seen = 0u64;
    for &v in values {
        seen |= 1 << v;
    }
    seen.count_ones() as usize
}

/// `f ∘ g`, with `g` applied first.
pub fn compose(f: &RsFunction, g: &RsFunction) -> Result<RsFunction> {
    f.compose(g)
}

/// Orders by width, then by the last entry first. For widths up to 4 this is
/// the numeric order of [`FunctionCode`]s.
impl Ord for RsFunction {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.images().iter().rev().cmp(other.images().iter().rev()))
    }
}

impl PartialOrd for RsFunction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RsFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.images().iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for RsFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RsFunction(n={}, {})", self.n, self)
    }
}

/// A function packed into one machine word, entry `i` in bits
/// `[i*n, (i+1)*n)`. Only widths up to 4 fit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FunctionCode(pub u64);

impl FunctionCode {
    pub fn pack(f: &RsFunction) -> Result<FunctionCode> {
        let n = f.n;
        if n > 4 {
            return Err(Error::WidthOverflow(n));
        }
        let mut code = 0u64;
        for (i, &v) in f.images().iter().enumerate() {
            code |= (v as u64) << (i * n as usize);
        }
        Ok(FunctionCode(code))
    }

    pub fn unpack(self, n: u8) -> Result<RsFunction> {
        check_width(n)?;
        if n > 4 {
            return Err(Error::WidthOverflow(n));
        }
        let bits = n as usize * (1 << n);
        if bits < 64 && self.0 >> bits != 0 {
            return Err(Error::CodeOutOfRange { code: self.0, n });
        }
        let mask = (1u64 << n) - 1;
        let mut images = [0u8; MAX_LEN];
        for (i, slot) in images.iter_mut().enumerate().take(1 << n) {
            *slot = (self.0 >> (i * n as usize) & mask) as u8;
        }
        Ok(RsFunction { n, images })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// Parity of a product.
    pub fn combine(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Disjoint cycles of a permutation, fixed points omitted. Each cycle starts
/// at its minimum and cycles are sorted by that minimum.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CycleDecomposition {
    cycles: Vec<Vec<SubsetCode>>,
}

impl CycleDecomposition {
    pub fn cycles(&self) -> &[Vec<SubsetCode>] {
        &self.cycles
    }

    pub fn is_identity(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn parity(&self) -> Parity {
        let transpositions: usize = self.cycles.iter().map(|c| c.len() - 1).sum();
        if transpositions.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Rebuilds the permutation of `2^S` for width `n`.
    pub fn to_function(&self, n: u8) -> Result<RsFunction> {
        let raw: Vec<Vec<u8>> = self
            .cycles
            .iter()
            .map(|c| c.iter().map(|x| x.0).collect())
            .collect();
        RsFunction::from_cycles(n, &raw)
    }
}

impl fmt::Display for CycleDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in &self.cycles {
            f.write_str("(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rs(n: u8, v: &[u8]) -> RsFunction {
        RsFunction::new(n, v).unwrap()
    }

    fn cyc(n: u8, c: &[&[u8]]) -> RsFunction {
        RsFunction::from_cycles(n, c).unwrap()
    }

    #[test]
    fn subset_algebra() {
        let a = SubsetCode(3);
        let b = SubsetCode(6);
        assert_eq!(a.intersection(b), SubsetCode(2));
        assert_eq!(a.union(b), SubsetCode(7));
        assert!(a.is_subset_of(SubsetCode(7)));
        assert_eq!(a.complement(3), SubsetCode(4));
        assert_eq!(SubsetCode::full(4), SubsetCode(15));
        assert_eq!(SubsetCode(13).elements().collect::<Vec<_>>(), vec![0, 2, 3]);
    }

    #[test]
    fn rejects_bad_vectors() {
        assert!(matches!(
            RsFunction::new(3, &[0; 7]),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            RsFunction::new(3, &[0, 0, 0, 8, 0, 0, 0, 0]),
            Err(Error::ImageOutOfRange { index: 3, .. })
        ));
        assert!(matches!(
            RsFunction::new(7, &[0; 128]),
            Err(Error::WidthOutOfRange(7))
        ));
        assert!(RsFunction::from_cycles(3, &[[1u8, 2], [2, 3]]).is_err());
        assert!(RsFunction::from_cycles(3, &[[1u8, 9]]).is_err());
    }

    #[test]
    fn compose_degenerate_example() {
        let f = cyc(3, &[&[2, 3], &[6, 7]]);
        let g = cyc(3, &[&[4, 6], &[5, 7]]);
        let h = compose(&f, &g).unwrap();
        assert_eq!(h, cyc(3, &[&[2, 3], &[4, 7, 5, 6]]));
        assert_eq!(
            h.cycle_decomposition().unwrap().to_string(),
            "(2 3)(4 7 5 6)"
        );
    }

    #[test]
    fn compose_identity_and_mismatch() {
        let f = rs(3, &[4, 1, 5, 2, 7, 2, 4, 6]);
        assert_eq!(compose(&f, &RsFunction::identity(3).unwrap()).unwrap(), f);
        let g = RsFunction::identity(4).unwrap();
        assert!(matches!(
            compose(&f, &g),
            Err(Error::WidthMismatch { left: 3, right: 4 })
        ));
    }

    #[test]
    fn quaternary_commutator_is_three_cycle() {
        let p = cyc(4, &[&[8, 11], &[12, 15]]);
        let q = cyc(4, &[&[4, 13], &[6, 15]]);
        let pq = compose(&p, &q).unwrap();
        let pqpq = compose(&pq, &pq).unwrap();
        assert_eq!(pqpq, cyc(4, &[&[6, 15, 12]]));
        assert_eq!(pqpq.parity().unwrap(), Parity::Even);
    }

    #[test]
    fn complement_dual_examples() {
        let f = rs(3, &[0, 1, 2, 3, 4, 5, 6, 0]);
        let c = f.complement_dual();
        assert_eq!(c, rs(3, &[0, 6, 5, 4, 3, 2, 1, 0]));
        assert_eq!(c.complement_dual(), f);
        let mut rev = f.images().to_vec();
        rev.reverse();
        assert_eq!(c.images(), &rev[..]);
    }

    #[test]
    fn genus_values() {
        let f = rs(3, &[0, 1, 2, 3, 4, 5, 6, 0]);
        assert_eq!(f.genus(), 7);
        assert_eq!(f.n_genus(), 6);
        let zero = RsFunction::constant(3, SubsetCode::EMPTY).unwrap();
        assert_eq!(zero.genus(), 1);
        assert_eq!(zero.n_genus(), 1);
        assert_eq!(cyc(4, &[&[6, 15, 12]]).genus(), 16);
    }

    #[test]
    fn permutation_checks() {
        assert!(cyc(3, &[&[2, 7]]).is_permutation());
        assert!(!rs(3, &[0, 1, 2, 3, 4, 5, 6, 0]).is_permutation());
        assert!(RsFunction::identity(3).unwrap().is_permutation());
    }

    #[test]
    fn cycle_decomposition_examples() {
        let f = rs(3, &[0, 1, 5, 3, 7, 2, 4, 6]);
        assert_eq!(f.cycle_decomposition().unwrap().to_string(), "(2 5)(4 7 6)");
        let id = RsFunction::identity(3).unwrap();
        assert!(id.cycle_decomposition().unwrap().is_identity());
        assert_eq!(id.cycle_decomposition().unwrap().to_string(), "()");
        let long = cyc(3, &[&[2, 7, 0, 1, 4, 3, 6, 5]]);
        let d = long.cycle_decomposition().unwrap();
        assert_eq!(d.to_string(), "(0 1 4 3 6 5 2 7)");
        assert_eq!(d.to_function(3).unwrap(), long);
        assert!(matches!(
            rs(3, &[0, 0, 0, 0, 0, 0, 0, 0]).cycle_decomposition(),
            Err(Error::NotAPermutation)
        ));
    }

    #[test]
    fn parity_examples() {
        assert_eq!(cyc(3, &[&[2, 7]]).parity().unwrap(), Parity::Odd);
        assert_eq!(cyc(4, &[&[6, 15, 12]]).parity().unwrap(), Parity::Even);
        assert_eq!(
            cyc(3, &[&[2, 7, 0, 1, 4, 3, 6, 5]]).parity().unwrap(),
            Parity::Odd
        );
        assert!(rs(3, &[1; 8]).parity().is_err());
    }

    #[test]
    fn pack_layout() {
        let id = RsFunction::identity(3).unwrap();
        let code = id.pack().unwrap();
        for i in 0..8u64 {
            assert_eq!(code.0 >> (3 * i) & 7, i);
        }
        assert!(matches!(
            RsFunction::identity(5).unwrap().pack(),
            Err(Error::WidthOverflow(5))
        ));
        assert!(matches!(
            FunctionCode(1 << 24).unpack(3),
            Err(Error::CodeOutOfRange { .. })
        ));
        let full = FunctionCode(u64::MAX).unpack(4).unwrap();
        assert_eq!(full, RsFunction::constant(4, SubsetCode(15)).unwrap());
    }

    #[test]
    fn inverse_round_trip() {
        let f = cyc(4, &[&[8, 11], &[12, 15]]);
        assert_eq!(
            compose(&f, &f.inverse().unwrap()).unwrap(),
            RsFunction::identity(4).unwrap()
        );
    }

    fn arb_function(n: u8) -> impl Strategy<Value = RsFunction> {
        let len = 1usize << n;
        prop::collection::vec(0u8..len as u8, len)
            .prop_map(move |v| RsFunction::new(n, &v).unwrap())
    }

    fn arb_permutation(n: u8) -> impl Strategy<Value = RsFunction> {
        let v: Vec<u8> = (0..1u8 << n).collect();
        Just(v)
            .prop_shuffle()
            .prop_map(move |v| RsFunction::new(n, &v).unwrap())
    }

    proptest! {
        #[test]
        fn compose_is_associative(f in arb_function(4), g in arb_function(4), h in arb_function(4)) {
            let left = compose(&f, &compose(&g, &h).unwrap()).unwrap();
            let right = compose(&compose(&f, &g).unwrap(), &h).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn parity_is_a_homomorphism(f in arb_permutation(4), g in arb_permutation(4)) {
            let fg = compose(&f, &g).unwrap();
            prop_assert_eq!(fg.parity().unwrap(), f.parity().unwrap().combine(g.parity().unwrap()));
        }

        #[test]
        fn pack_round_trips(code in 0u64..1 << 24) {
            let f = FunctionCode(code).unpack(3).unwrap();
            prop_assert_eq!(f.pack().unwrap(), FunctionCode(code));
        }

        #[test]
        fn pack_order_matches_function_order(f in arb_function(4), g in arb_function(4)) {
            prop_assert_eq!(f.cmp(&g), f.pack().unwrap().cmp(&g.pack().unwrap()));
        }

        #[test]
        fn genus_bounds(f in arb_function(3)) {
            let (g, ng) = (f.genus(), f.n_genus());
            prop_assert!(g >= ng && ng >= 1 && g - ng <= 2);
        }

        #[test]
        fn decomposition_round_trips(f in arb_permutation(5)) {
            let d = f.cycle_decomposition().unwrap();
            for c in d.cycles() {
                prop_assert!(c.len() >= 2);
                prop_assert_eq!(c[0], *c.iter().min().unwrap());
            }
            prop_assert_eq!(d.to_function(5).unwrap(), f);
        }
    }
}
