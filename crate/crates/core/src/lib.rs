//! Functions over the power set of a small background set, the reaction
//! systems that specify them, and the exhaustive machinery used to study
//! their behaviour under composition.
//!
//! A background set `S = {s0, .., s(n-1)}` is identified with bit positions;
//! a subset is an `n`-bit mask ([`SubsetCode`]) and a function `2^S -> 2^S`
//! is its row vector of `2^n` images ([`RsFunction`]).

mod error;

pub mod classes;
pub mod closure;
pub mod enumerate;
pub mod function;
pub mod reactions;
pub mod setfile;

pub use error::{Error, Result};
pub use function::{
    compose, CycleDecomposition, FunctionCode, Parity, RsFunction, SubsetCode, MAX_WIDTH,
};
