//! The point-map induced families `F_U` and `F_U^P`, and the membership
//! predicates used by every census.

use std::fmt;

use crate::function::check_width;
use crate::{Error, Result, RsFunction, SubsetCode};

/// A map `σ: S -> S` given by its table of element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointMap {
    table: Vec<u8>,
}

impl PointMap {
    pub fn new(table: Vec<u8>) -> Result<Self> {
        let n = u8::try_from(table.len()).map_err(|_| Error::WidthOutOfRange(u8::MAX))?;
        check_width(n)?;
        if let Some(&bad) = table.iter().find(|&&x| x >= n) {
            return Err(Error::InvalidPointMap(format!(
                "{bad} is not an element index below {n}"
            )));
        }
        Ok(PointMap { table })
    }

    pub fn identity(n: u8) -> Result<Self> {
        Self::new((0..n).collect())
    }

    /// Builds a permutation of `S` from element cycles; `[0, 1, 2]` sends
    /// `s0 -> s1 -> s2 -> s0`.
    pub fn from_cycles<C: AsRef<[u8]>>(n: u8, cycles: &[C]) -> Result<Self> {
        let mut table: Vec<u8> = (0..n).collect();
        for cycle in cycles {
            let cycle = cycle.as_ref();
            for (k, &a) in cycle.iter().enumerate() {
                if a >= n {
                    return Err(Error::InvalidPointMap(format!("{a} out of range")));
                }
                table[a as usize] = cycle[(k + 1) % cycle.len()];
            }
        }
        let map = Self::new(table)?;
        if !map.is_bijective() {
            return Err(Error::InvalidPointMap("cycles are not disjoint".into()));
        }
        Ok(map)
    }

    pub fn n(&self) -> u8 {
        self.table.len() as u8
    }

    pub fn get(&self, i: u8) -> u8 {
        self.table[i as usize]
    }

    pub fn is_bijective(&self) -> bool {
        let seen = self.table.iter().fold(0u8, |acc, &x| acc | 1 << x);
        seen.count_ones() as usize == self.table.len()
    }

    /// `σ[X]`.
    pub fn image(&self, x: SubsetCode) -> SubsetCode {
        SubsetCode(x.elements().fold(0, |acc, i| acc | 1 << self.get(i)))
    }

    /// `σ^{-1}[X]`.
    pub fn preimage(&self, x: SubsetCode) -> SubsetCode {
        let bits = (0..self.n())
            .filter(|&i| x.contains(self.get(i)))
            .fold(0, |acc, i| acc | 1 << i);
        SubsetCode(bits)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &PointMap) -> PointMap {
        PointMap {
            table: inner.table.iter().map(|&i| self.get(i)).collect(),
        }
    }

    /// All `n^n` maps, in lexicographic order of their tables.
    pub fn all_maps(n: u8) -> Vec<PointMap> {
        let count = (n as usize).pow(n as u32);
        (0..count)
            .map(|mut k| {
                let mut table = vec![0u8; n as usize];
                for slot in table.iter_mut() {
                    *slot = (k % n as usize) as u8;
                    k /= n as usize;
                }
                PointMap { table }
            })
            .collect()
    }

    /// The `n!` permutations of `S`.
    pub fn all_permutations(n: u8) -> Vec<PointMap> {
        Self::all_maps(n)
            .into_iter()
            .filter(PointMap::is_bijective)
            .collect()
    }
}

/// `f_σ`: the image map on nonempty proper subsets, sending `∅` and `S` to `∅`.
pub fn f_sigma(sigma: &PointMap) -> RsFunction {
    let n = sigma.n();
    let full = SubsetCode::full(n);
    RsFunction::from_fn(n, |x| {
        if x.is_empty() || x == full {
            SubsetCode::EMPTY
        } else {
            sigma.image(x)
        }
    })
    .expect("point map width is valid")
}

/// `f_σ^c(X) = f_σ(S \ X)`.
pub fn f_sigma_c(sigma: &PointMap) -> RsFunction {
    f_sigma(sigma).complement_dual()
}

/// The plain image map `X ↦ σ[X]`, defined on every subset including `S`.
pub fn image_map(sigma: &PointMap) -> RsFunction {
    RsFunction::from_fn(sigma.n(), |x| sigma.image(x)).expect("point map width is valid")
}

/// `F_U(S)`: `f_σ` for every `σ: S -> S`, sorted and deduplicated.
pub fn build_f_u(n: u8) -> Result<Vec<RsFunction>> {
    check_width(n)?;
    let mut out: Vec<RsFunction> = PointMap::all_maps(n).iter().map(f_sigma).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// `F_U^P(S)`: `f_σ` and `f_σ^c` for every permutation `σ`, sorted.
pub fn build_f_u_p(n: u8) -> Result<Vec<RsFunction>> {
    check_width(n)?;
    let perms = PointMap::all_permutations(n);
    let mut out: Vec<RsFunction> = perms
        .iter()
        .map(f_sigma)
        .chain(perms.iter().map(f_sigma_c))
        .collect();
    out.sort();
    out.dedup();
    assert_eq!(
        out.len(),
        2 * perms.len(),
        "F_U^P members must be pairwise distinct"
    );
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Law {
    /// `f(X ∪ Y) ⊆ f(X) ∪ f(Y)`
    Union,
    /// `f(X ∩ Y) ⊆ f(X) ∪ f(Y)`
    Intersection,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Law::Union => "union",
            Law::Intersection => "intersection",
        })
    }
}

/// A pair `X <= Y` on which a subadditivity law fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Witness {
    pub law: Law,
    pub x: SubsetCode,
    pub y: SubsetCode,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} law fails at X={}, Y={}", self.law, self.x, self.y)
    }
}

/// Whether `law` fails on the pair `(x, y)`.
pub fn violates(f: &RsFunction, law: Law, x: u8, y: u8) -> bool {
    let lhs = match law {
        Law::Union => f.get(x | y),
        Law::Intersection => f.get(x & y),
    };
    lhs & !(f.get(x) | f.get(y)) != 0
}

/// Every violating pair `X <= Y` in lexicographic order.
pub fn violations(f: &RsFunction, law: Law) -> impl Iterator<Item = Witness> + '_ {
    let len = f.len() as u16;
    (0..len)
        .flat_map(move |x| (x..len).map(move |y| (x as u8, y as u8)))
        .filter_map(move |(x, y)| {
            violates(f, law, x, y).then_some(Witness {
                law,
                x: SubsetCode(x),
                y: SubsetCode(y),
            })
        })
}

/// The lexicographically first violating pair, if any.
pub fn first_violation(f: &RsFunction, law: Law) -> Option<Witness> {
    violations(f, law).next()
}

pub fn is_union_subadditive(f: &RsFunction) -> bool {
    first_violation(f, Law::Union).is_none()
}

pub fn is_intersection_subadditive(f: &RsFunction) -> bool {
    first_violation(f, Law::Intersection).is_none()
}

/// Membership in `M(S)`: both subadditivity laws hold.
pub fn in_m(f: &RsFunction) -> bool {
    is_union_subadditive(f) && is_intersection_subadditive(f)
}

pub fn is_nondegenerate(f: &RsFunction) -> bool {
    f.get(0) == 0 && f.get(f.full().0) == 0
}

/// Whether `f` restricted to the nonempty proper subsets is a bijection onto them.
pub fn permutes_proper_subsets(f: &RsFunction) -> bool {
    let full = f.full().0;
    let mut seen = 0u64;
    for x in 1..full {
        let v = f.get(x);
        if v == 0 || v == full || seen >> v & 1 == 1 {
            return false;
        }
        seen |= 1 << v;
    }
    true
}
