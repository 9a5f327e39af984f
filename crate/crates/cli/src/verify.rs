//! End-to-end replay of the reference ternary and quaternary counts.

use anyhow::Result;
use clap::ValueEnum;
use minrs::classes::{self, f_sigma, PointMap};
use minrs::closure::{
    all_three_cycles, group_closure, not_generated_census, semigroup_closure,
    verify_alternating_generation_with,
};
use minrs::{enumerate, Parity, RsFunction};

use crate::report::{Record, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Ternary,
    Quaternary,
    All,
}

pub const TABLE1: [(usize, u64); 6] = [
    (1, 8),
    (2, 1736),
    (3, 30240),
    (4, 109200),
    (5, 100800),
    (6, 15420),
];

pub const TABLE2: [u64; 16] = [
    16, 240, 1840, 17776, 74952, 223992, 360540, 1110864, 3463008, 2835240, 1337520, 855576,
    170592, 72216, 42456, 23424,
];

fn list<T: std::fmt::Debug>(items: &[T]) -> String {
    format!("{items:?}")
}

pub fn run(suite: Suite) -> Result<Report> {
    let mut report = Report::new();
    if matches!(suite, Suite::Ternary | Suite::All) {
        ternary(&mut report)?;
    }
    if matches!(suite, Suite::Quaternary | Suite::All) {
        quaternary(&mut report)?;
    }
    Ok(report)
}

fn ternary(r: &mut Report) -> Result<()> {
    let (m, _) = enumerate::enumerate_m(3)?;
    r.verdict("|M(S)| at n=3", 405224, m.len());
    let (nondeg, _) = enumerate::enumerate_nondegenerate_m(3)?;
    r.verdict("nondegenerate members at n=3", 24389, nondeg.len());
    let (perms, _) = enumerate::enumerate_permutations_in_m(3)?;
    r.verdict("permutation members at n=3", 408, perms.len());
    let (fup, _) = enumerate::enumerate_proper_permuting_nondeg_m(3)?;
    r.verdict(
        "proper-permuting nondegenerate members at n=3",
        12,
        fup.len(),
    );
    r.verdict("they form F_U^P(3)", true, fup == classes::build_f_u_p(3)?);

    let closure = semigroup_closure(&nondeg, None)?.with_n_genus_stats();
    r.verdict(
        "closure of the nondegenerate members",
        257404,
        closure.len(),
    );
    let rows: Vec<(usize, u64)> = closure
        .stats
        .as_ref()
        .expect("stats computed")
        .rows()
        .collect();
    r.verdict("closure N-genus histogram", list(&TABLE1), list(&rows));
    r.push(Record::Histogram {
        name: "N-genus distribution of the closure".into(),
        rows,
    });
    let missing = not_generated_census(&closure)?;
    r.verdict(
        "ungenerated at N-genus 6",
        4740,
        missing.max_genus_ungenerated(),
    );
    r.verdict(
        "of which permute proper subsets",
        708,
        missing.ungenerated_proper_permuting,
    );
    r.verdict(
        "ungenerated below N-genus 6",
        0,
        missing.below_max_ungenerated(),
    );

    let a = RsFunction::from_cycles(3, &[[2u8, 7, 0, 1, 4, 3, 6, 5]])?;
    let b = RsFunction::from_cycles(3, &[[2u8, 7]])?;
    r.verdict("(2 7 0 1 4 3 6 5) in M(S)", true, classes::in_m(&a));
    r.verdict("(2 7) in M(S)", true, classes::in_m(&b));
    r.verdict(
        "order of the group they generate",
        40320,
        group_closure(&[a, b], None)?.order,
    );
    let f_id = f_sigma(&PointMap::identity(3)?);
    r.verdict(
        "closure of f_identity with both",
        16777216,
        semigroup_closure(&[f_id, a, b], None)?.len(),
    );
    Ok(())
}

fn quaternary(r: &mut Report) -> Result<()> {
    let (perms, census) = enumerate::enumerate_permutations_in_m(4)?;
    r.verdict(
        "level sizes A_0..A_15",
        list(&TABLE2),
        list(&census.level_sizes),
    );
    r.push(Record::Levels {
        name: "permutation census levels at n=4".into(),
        sizes: census.level_sizes.clone(),
    });
    r.verdict("permutation members at n=4", 23424, perms.len());
    let odd = perms
        .iter()
        .filter(|f| f.parity().ok() == Some(Parity::Odd))
        .count();
    r.verdict("odd permutation members", 0, odd);
    let cycles = all_three_cycles(4);
    r.verdict("3-cycles on 2^S", 1120, cycles.len());
    let mut in_m = 0;
    for c in &cycles {
        in_m += usize::from(classes::in_m(&c.to_function(4)?));
    }
    r.verdict("3-cycles in M(S)", 0, in_m);
    let (fup, _) = enumerate::enumerate_proper_permuting_nondeg_m(4)?;
    r.verdict(
        "proper-permuting nondegenerate members at n=4",
        48,
        fup.len(),
    );
    r.verdict("they form F_U^P(4)", true, fup == classes::build_f_u_p(4)?);

    let alt = verify_alternating_generation_with(&perms)?;
    r.verdict("p in M(S)", true, alt.p_in_m);
    r.verdict("q in M(S)", true, alt.q_in_m);
    r.verdict("p∘q∘p∘q", "(6 15 12)", &alt.commutator);
    r.verdict(
        "conjugate 3-cycles covered",
        1120,
        alt.coverage.covered.len(),
    );
    r.count("generator pairs consumed", alt.pairs_consumed);
    Ok(())
}
