//! Definitional oracles, written directly from the subadditivity laws and
//! kept independent of the library's predicates and search engine.

#![allow(dead_code)]

use rayon::prelude::*;

pub fn union_ok(f: &[u8]) -> bool {
    let len = f.len();
    (0..len).all(|x| (0..len).all(|y| f[x | y] & !(f[x] | f[y]) == 0))
}

pub fn intersection_ok(f: &[u8]) -> bool {
    let len = f.len();
    (0..len).all(|x| (0..len).all(|y| f[x & y] & !(f[x] | f[y]) == 0))
}

pub fn in_m(f: &[u8]) -> bool {
    union_ok(f) && intersection_ok(f)
}

pub fn is_perm(f: &[u8]) -> bool {
    let mut seen = vec![false; f.len()];
    f.iter()
        .all(|&v| !std::mem::replace(&mut seen[v as usize], true))
}

pub fn nondegenerate(f: &[u8]) -> bool {
    f[0] == 0 && f[f.len() - 1] == 0
}

pub fn permutes_proper(f: &[u8]) -> bool {
    let last = f.len() - 1;
    let mut mid: Vec<u8> = f[1..last].to_vec();
    mid.sort_unstable();
    mid == (1..last as u8).collect::<Vec<_>>()
}

/// The images of a width-3 function packed as 3 bits per entry.
pub fn unpack3(code: u32) -> [u8; 8] {
    std::array::from_fn(|i| (code >> (3 * i) & 7) as u8)
}

/// Every width-3 function code satisfying `keep`, ascending.
pub fn brute_force3(keep: impl Fn(&[u8]) -> bool + Sync) -> Vec<u32> {
    (0..1u32 << 24)
        .into_par_iter()
        .filter(|&c| keep(&unpack3(c)))
        .collect()
}

/// `[f(0), .., f(15)]` to a width-4 code, 4 bits per entry.
pub fn pack4(f: &[u8]) -> u64 {
    f.iter()
        .enumerate()
        .fold(0, |acc, (i, &v)| acc | (v as u64) << (4 * i))
}
