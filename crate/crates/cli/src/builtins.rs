//! Named generator sets, computed on first use and cached as set files.

use std::env;
use std::path::PathBuf;

use anyhow::{bail, Result};
use minrs::classes::{f_sigma, PointMap};
use minrs::{enumerate, setfile, RsFunction};

pub const NAMES: [&str; 4] = ["nondeg-M3", "perm-M4", "piccard3", "sym-basis3"];

/// `MINRS_CACHE_DIR`, else `$XDG_CACHE_HOME/minrs`, else `~/.cache/minrs`.
pub fn cache_dir() -> PathBuf {
    if let Some(dir) = env::var_os("MINRS_CACHE_DIR") {
        return PathBuf::from(dir);
    }
    if let Some(dir) = env::var_os("XDG_CACHE_HOME") {
        return PathBuf::from(dir).join("minrs");
    }
    match env::var_os("HOME") {
        Some(home) => PathBuf::from(home).join(".cache").join("minrs"),
        None => env::temp_dir().join("minrs"),
    }
}

fn compute(name: &str) -> Result<Vec<RsFunction>> {
    let a = RsFunction::from_cycles(3, &[[2u8, 7, 0, 1, 4, 3, 6, 5]])?;
    let b = RsFunction::from_cycles(3, &[[2u8, 7]])?;
    Ok(match name {
        "nondeg-M3" => enumerate::enumerate_nondegenerate_m(3)?.0,
        "perm-M4" => enumerate::enumerate_permutations_in_m(4)?.0,
        "piccard3" => vec![f_sigma(&PointMap::identity(3)?), a, b],
        "sym-basis3" => vec![a, b],
        _ => bail!(
            "unknown builtin `{name}`; expected one of {}",
            NAMES.join(", ")
        ),
    })
}

/// Loads a builtin from the cache, computing and storing it when absent or
/// unreadable. A cache that cannot be written is not an error.
pub fn load(name: &str) -> Result<Vec<RsFunction>> {
    if !NAMES.contains(&name) {
        bail!(
            "unknown builtin `{name}`; expected one of {}",
            NAMES.join(", ")
        );
    }
    let path = cache_dir().join(format!("{name}.mrsf"));
    if let Ok((_, functions)) = setfile::load(&path) {
        return Ok(functions);
    }
    let mut functions = compute(name)?;
    functions.sort_unstable();
    let n = functions[0].n();
    // Written under a private name and renamed so readers never see a
    // partial file.
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    let stored = std::fs::create_dir_all(cache_dir())
        .map_err(minrs::Error::from)
        .and_then(|_| setfile::save(&tmp, n, &functions))
        .and_then(|_| Ok(std::fs::rename(&tmp, &path)?));
    if let Err(e) = stored {
        eprintln!("warning: could not cache {}: {e}", path.display());
    }
    Ok(functions)
}
