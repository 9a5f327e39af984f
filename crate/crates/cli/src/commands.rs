use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use minrs::classes::{self, Law};
use minrs::closure::{not_generated_census, semigroup_closure};
use minrs::enumerate::{self, CensusKind, CheckSchedule, SearchSpace};
use minrs::reactions::synthesize_minimal;
use minrs::{setfile, RsFunction};

use crate::report::{Record, Report};
use crate::{builtins, literal};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckLaw {
    Union,
    Intersection,
    Minimal,
    Nondegenerate,
    Permutation,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    /// Row vector ("0 1 5 3 7 2 4 6") or cycle notation ("(2 5)(4 7 6)").
    #[arg(required_unless_present = "file", conflicts_with = "file")]
    pub function: Option<String>,
    /// A set file, or a text file with one literal per line.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Width; inferred from the literal when omitted.
    #[arg(long)]
    pub n: Option<u8>,
    /// Laws to check; all of them by default.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub law: Vec<CheckLaw>,
    /// List every violating pair, not just the first.
    #[arg(long)]
    pub witnesses: bool,
}

fn read_functions(path: &Path, n: Option<u8>) -> Result<Vec<RsFunction>> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    if bytes.starts_with(&setfile::MAGIC) {
        let (width, functions) = setfile::decode(&bytes)?;
        if n.is_some_and(|n| n != width) {
            bail!(
                "width mismatch: --n {} but {} has width {width}",
                n.unwrap(),
                path.display()
            );
        }
        return Ok(functions);
    }
    let text = String::from_utf8(bytes).context("literal file is not UTF-8")?;
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| literal::parse(l, n))
        .collect()
}

pub fn check(args: &CheckArgs) -> Result<Report> {
    let functions = match (&args.function, &args.file) {
        (Some(text), _) => vec![literal::parse(text, args.n)?],
        (None, Some(path)) => read_functions(path, args.n)?,
        (None, None) => bail!("give a function literal or --file"),
    };
    let laws = if args.law.is_empty() {
        CheckLaw::value_variants().to_vec()
    } else {
        args.law.clone()
    };
    let mut report = Report::new();
    for (i, f) in functions.iter().enumerate() {
        let label = if functions.len() == 1 {
            "f".to_string()
        } else {
            format!("f{i}")
        };
        report.function(&label, f.images());
        for &law in &laws {
            check_law(&mut report, &label, f, law, args.witnesses)?;
        }
    }
    Ok(report)
}

fn check_law(
    report: &mut Report,
    label: &str,
    f: &RsFunction,
    law: CheckLaw,
    all: bool,
) -> Result<()> {
    match law {
        CheckLaw::Union | CheckLaw::Intersection => {
            let (law, name) = match law {
                CheckLaw::Union => (Law::Union, "union-subadditive"),
                _ => (Law::Intersection, "intersection-subadditive"),
            };
            let violations: Vec<_> = classes::violations(f, law).collect();
            let actual = match violations.first() {
                None => "true".to_string(),
                Some(w) => format!("false (X={}, Y={})", w.x, w.y),
            };
            report.verdict(&format!("{label} {name}"), true, actual);
            report.count(&format!("{label} {law} violations"), violations.len());
            if all {
                for w in &violations {
                    report.note(
                        &format!("{label} {law} witness"),
                        format!("X={}, Y={}", w.x, w.y),
                    );
                }
            }
        }
        CheckLaw::Minimal => match synthesize_minimal(f) {
            Ok(system) => {
                report.verdict(
                    &format!("{label} specified by a minimal system"),
                    true,
                    true,
                );
                report.note(&format!("{label} minimal system"), system);
            }
            Err(e) => {
                report.verdict(
                    &format!("{label} specified by a minimal system"),
                    true,
                    format!("false ({e})"),
                );
            }
        },
        CheckLaw::Nondegenerate => {
            let actual = if classes::is_nondegenerate(f) {
                "true".to_string()
            } else {
                format!(
                    "false (f(0)={}, f({})={})",
                    f.get(0),
                    f.full(),
                    f.get(f.full().0)
                )
            };
            report.verdict(&format!("{label} nondegenerate"), true, actual);
        }
        CheckLaw::Permutation => {
            if f.is_permutation() {
                report.verdict(&format!("{label} permutation"), true, true);
                report.note(&format!("{label} cycles"), f.cycle_decomposition()?);
                report.note(&format!("{label} parity"), f.parity()?);
            } else {
                report.verdict(&format!("{label} permutation"), true, false);
            }
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Census {
    /// Every member of M(S).
    #[value(name = "M", alias = "m")]
    M,
    /// Members mapping both the empty set and S to the empty set.
    Nondeg,
    /// Members that permute 2^S.
    Perm,
    /// Nondegenerate members permuting the nonempty proper subsets.
    Properperm,
}

impl From<Census> for CensusKind {
    fn from(c: Census) -> CensusKind {
        match c {
            Census::M => CensusKind::All,
            Census::Nondeg => CensusKind::Nondegenerate,
            Census::Perm => CensusKind::Permutations,
            Census::Properperm => CensusKind::ProperPermuting,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Schedule {
    DeferDisjoint,
    Earliest,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub n: u8,
    #[arg(long, value_enum)]
    pub census: Census,
    /// When intersection checks of disjoint pairs fire; changes level sizes
    /// only, never the final set.
    #[arg(long, value_enum, default_value = "defer-disjoint")]
    pub schedule: Schedule,
    /// Write the members as a set file.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Print every member; on by default for at most 64 members.
    #[arg(long)]
    pub list: bool,
}

pub fn enumerate(args: &EnumerateArgs) -> Result<Report> {
    let schedule = match args.schedule {
        Schedule::DeferDisjoint => CheckSchedule::DeferDisjoint,
        Schedule::Earliest => CheckSchedule::Earliest,
    };
    let space = SearchSpace::new(args.n, args.census.into())?.with_schedule(schedule);
    let (members, census) = enumerate::run(&space);
    let mut report = Report::new();
    report.note("census", format!("{:?}", census.kind));
    report.count("n", census.n);
    report.push(Record::Levels {
        name: "level sizes".into(),
        sizes: census.level_sizes.clone(),
    });
    report.count("members", census.final_count);
    if args.list || members.len() <= 64 {
        for f in &members {
            report.function("member", f.images());
        }
    }
    if let Some(path) = &args.out {
        setfile::save(path, args.n, &members)?;
        report.note("written", path.display());
    }
    report.timing("elapsed", census.elapsed);
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Stat {
    /// N-genus histogram of the closure.
    Ngenus,
    /// Nondegenerate functions the closure misses (width 3 and below).
    Ungenerated,
}

#[derive(Args, Debug)]
pub struct ClosureArgs {
    /// A set file, a literal file, or `builtin:NAME` with NAME one of
    /// nondeg-M3, perm-M4, piccard3, sym-basis3.
    #[arg(long)]
    pub generators: String,
    #[arg(long, value_enum, value_delimiter = ',')]
    pub stats: Vec<Stat>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Abort once the closure exceeds this many members.
    #[arg(long)]
    pub cap: Option<usize>,
    /// Use an evenly spaced sample of this many generators.
    #[arg(long)]
    pub sample: Option<usize>,
}

pub fn load_generators(spec: &str) -> Result<Vec<RsFunction>> {
    match spec.strip_prefix("builtin:") {
        Some(name) => builtins::load(name),
        None => read_functions(Path::new(spec), None),
    }
}

fn sample(mut gens: Vec<RsFunction>, size: usize) -> Vec<RsFunction> {
    if size == 0 || size >= gens.len() {
        return gens;
    }
    let step = gens.len() / size;
    gens = gens.into_iter().step_by(step).take(size).collect();
    gens
}

pub fn closure(args: &ClosureArgs) -> Result<Report> {
    let mut gens = load_generators(&args.generators)?;
    if let Some(size) = args.sample {
        gens = sample(gens, size);
    }
    let start = Instant::now();
    let mut result = semigroup_closure(&gens, args.cap)?;
    let elapsed = start.elapsed();
    let mut report = Report::new();
    report.note("generators", &args.generators);
    report.count("n", result.n);
    report.count("generator count", result.generator_count);
    report.count("members", result.len());
    report.count("rounds", result.rounds);
    if gens.iter().all(RsFunction::is_permutation) {
        report.count("group order", result.len());
    }
    if args.stats.contains(&Stat::Ngenus) {
        result = result.with_n_genus_stats();
        let rows = result
            .stats
            .as_ref()
            .expect("stats computed")
            .rows()
            .collect();
        report.push(Record::Histogram {
            name: "N-genus distribution".into(),
            rows,
        });
    }
    if args.stats.contains(&Stat::Ungenerated) {
        let census = not_generated_census(&result)?;
        report.count("nondegenerate at maximal N-genus", census.max_genus_total());
        report.count(
            "ungenerated at maximal N-genus",
            census.max_genus_ungenerated(),
        );
        report.count(
            "ungenerated permuting proper subsets",
            census.ungenerated_proper_permuting,
        );
        report.count(
            "ungenerated below maximal N-genus",
            census.below_max_ungenerated(),
        );
    }
    if let Some(path) = &args.out {
        let members: Vec<RsFunction> = result.functions().collect();
        setfile::save(path, result.n, &members)?;
        report.note("written", path.display());
    }
    report.timing("elapsed", elapsed);
    Ok(report)
}
