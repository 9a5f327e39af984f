//! Function literals: a row vector `"0 1 5 3 7 2 4 6"` (commas allowed) or
//! cycle notation `"(2 5)(4 7 6)"`.

use anyhow::{bail, Context, Result};
use minrs::{RsFunction, MAX_WIDTH};

pub fn parse(text: &str, n: Option<u8>) -> Result<RsFunction> {
    let text = text.trim();
    if text.starts_with('(') {
        parse_cycles(text, n)
    } else {
        parse_row(text, n)
    }
}

fn numbers(text: &str) -> Result<Vec<u8>> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<u8>()
                .with_context(|| format!("`{t}` is not a subset code"))
        })
        .collect()
}

fn parse_row(text: &str, n: Option<u8>) -> Result<RsFunction> {
    let text = text.trim_start_matches('[').trim_end_matches(']');
    let images = numbers(text)?;
    let len = images.len();
    if !len.is_power_of_two() || len < 2 {
        bail!("a row vector needs 2^n entries, got {len}");
    }
    let width = len.trailing_zeros() as u8;
    if let Some(n) = n {
        if n != width {
            bail!("width mismatch: --n {n} but the row vector has {len} entries");
        }
    }
    Ok(RsFunction::new(width, &images)?)
}

fn parse_cycles(text: &str, n: Option<u8>) -> Result<RsFunction> {
    let mut cycles = Vec::new();
    let mut rest = text;
    while !rest.is_empty() {
        let Some(body) = rest.strip_prefix('(') else {
            bail!("expected `(` at `{rest}`");
        };
        let Some(end) = body.find(')') else {
            bail!("unclosed cycle in `{text}`");
        };
        let cycle = numbers(&body[..end])?;
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
        rest = body[end + 1..].trim_start();
    }
    let largest = cycles.iter().flatten().copied().max().unwrap_or(0);
    let needed = (1..=MAX_WIDTH)
        .find(|&w| (largest as u16) < 1 << w)
        .unwrap_or(MAX_WIDTH + 1);
    let n = match n {
        Some(n) if n < needed => bail!("width mismatch: code {largest} does not fit --n {n}"),
        Some(n) => n,
        None => needed,
    };
    Ok(RsFunction::from_cycles(n, &cycles)?)
}
