use std::path::Path;
use std::process::{Command, Output};

use minrs::{classes, setfile};
use serde_json::Value;

fn minrs(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_minrs"))
        .args(args)
        .env("MINRS_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn json(cache: &Path, args: &[&str]) -> (Option<i32>, Vec<Value>) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = minrs(cache, &full);
    let records = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).expect("each line is one JSON record"))
        .collect();
    (out.status.code(), records)
}

fn find<'a>(records: &'a [Value], kind: &str, name: &str) -> Option<&'a Value> {
    records
        .iter()
        .find(|r| r["record"] == kind && (r["name"] == name || r["check"] == name))
}

fn count(records: &[Value], name: &str) -> u64 {
    find(records, "count", name).unwrap_or_else(|| panic!("no count `{name}` in {records:?}"))
        ["value"]
        .as_u64()
        .unwrap()
}

#[test]
fn check_permutation_prints_cycles() {
    let dir = tempfile::tempdir().unwrap();
    let (code, records) = json(
        dir.path(),
        &["check", "0 1 5 3 7 2 4 6", "--law", "permutation"],
    );
    assert_eq!(code, Some(0));
    assert_eq!(
        find(&records, "note", "f cycles").unwrap()["value"],
        "(2 5)(4 7 6)"
    );
    assert_eq!(find(&records, "note", "f parity").unwrap()["value"], "odd");
}

#[test]
fn check_reports_intersection_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    let (code, records) = json(
        dir.path(),
        &[
            "check",
            "(2 3)(4 7 5 6)",
            "--law",
            "intersection",
            "--witnesses",
        ],
    );
    assert_eq!(code, Some(1));
    let verdict = find(&records, "verdict", "f intersection-subadditive").unwrap();
    assert_eq!(verdict["pass"], false);
    assert_eq!(verdict["expected"], "true");
    assert_eq!(verdict["actual"], "false (X=3, Y=5)");
    let witnesses: Vec<&Value> = records
        .iter()
        .filter(|r| r["name"] == "f intersection witness")
        .map(|r| &r["value"])
        .collect();
    assert!(
        witnesses.contains(&&Value::from("X=5, Y=6")),
        "{witnesses:?}"
    );
}

#[test]
fn check_minimal_on_the_zero_function() {
    let dir = tempfile::tempdir().unwrap();
    let (code, records) = json(
        dir.path(),
        &["check", "0 0 0 0 0 0 0 0", "--law", "minimal"],
    );
    assert_eq!(code, Some(0));
    assert_eq!(
        find(&records, "verdict", "f specified by a minimal system").unwrap()["pass"],
        true
    );
}

#[test]
fn check_rejects_bad_literals() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["check", "0 1 2"][..],
        &["check", "0 1 2 x"],
        &["check", "0 1 2 3", "--n", "3"],
        &["check", "(2 5"],
    ] {
        let out = minrs(dir.path(), args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    }
}

#[test]
fn check_reads_a_literal_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fs.txt");
    std::fs::write(&path, "# two functions\n(2 7)\n0 1 2 3 4 5 6 0\n").unwrap();
    let (code, records) = json(
        dir.path(),
        &[
            "check",
            "--file",
            path.to_str().unwrap(),
            "--law",
            "union,nondegenerate",
        ],
    );
    assert_eq!(code, Some(1));
    assert_eq!(
        find(&records, "verdict", "f0 union-subadditive").unwrap()["pass"],
        true
    );
    assert_eq!(
        find(&records, "verdict", "f0 nondegenerate").unwrap()["pass"],
        false
    );
    assert_eq!(
        find(&records, "verdict", "f1 nondegenerate").unwrap()["pass"],
        true
    );
}

#[test]
fn enumerate_nondegenerate_ternary() {
    let dir = tempfile::tempdir().unwrap();
    let (code, records) = json(dir.path(), &["enumerate", "--n", "3", "--census", "nondeg"]);
    assert_eq!(code, Some(0));
    assert_eq!(count(&records, "members"), 24389);
}

#[test]
fn enumerate_properperm_lists_the_twelve() {
    let dir = tempfile::tempdir().unwrap();
    let (_, records) = json(
        dir.path(),
        &["enumerate", "--n", "3", "--census", "properperm"],
    );
    let mut listed: Vec<Vec<u8>> = records
        .iter()
        .filter(|r| r["record"] == "function")
        .map(|r| serde_json::from_value(r["images"].clone()).unwrap())
        .collect();
    listed.sort();
    let mut expected: Vec<Vec<u8>> = classes::build_f_u_p(3)
        .unwrap()
        .iter()
        .map(|f| f.images().to_vec())
        .collect();
    expected.sort();
    assert_eq!(listed, expected);
}

#[test]
fn enumerate_quaternary_permutations_levels() {
    let dir = tempfile::tempdir().unwrap();
    let (code, records) = json(
        dir.path(),
        &[
            "--threads",
            "1",
            "enumerate",
            "--n",
            "4",
            "--census",
            "perm",
        ],
    );
    assert_eq!(code, Some(0));
    let levels = &find(&records, "levels", "level sizes").unwrap()["sizes"];
    let levels: Vec<u64> = serde_json::from_value(levels.clone()).unwrap();
    assert_eq!(
        levels,
        [
            16, 240, 1840, 17776, 74952, 223992, 360540, 1110864, 3463008, 2835240, 1337520,
            855576, 170592, 72216, 42456, 23424
        ]
    );
    assert_eq!(count(&records, "members"), 23424);
}

#[test]
fn enumerate_refuses_exhaustive_width_four() {
    let dir = tempfile::tempdir().unwrap();
    let out = minrs(dir.path(), &["enumerate", "--n", "4", "--census", "M"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn set_files_are_deterministic_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.mrsf");
    let b = dir.path().join("b.mrsf");
    for path in [&a, &b] {
        let out = minrs(
            dir.path(),
            &[
                "enumerate",
                "--n",
                "3",
                "--census",
                "perm",
                "--out",
                path.to_str().unwrap(),
            ],
        );
        assert!(out.status.success());
    }
    let bytes = std::fs::read(&a).unwrap();
    assert_eq!(bytes, std::fs::read(&b).unwrap());
    let (n, members) = setfile::decode(&bytes).unwrap();
    assert_eq!((n, members.len()), (3, 408));
    assert!(members
        .iter()
        .all(|f| f.is_permutation() && classes::in_m(f)));

    let (code, records) = json(
        dir.path(),
        &["check", "--file", a.to_str().unwrap(), "--law", "minimal"],
    );
    assert_eq!(code, Some(0));
    assert_eq!(
        records.iter().filter(|r| r["record"] == "verdict").count(),
        408
    );
}

#[test]
fn closure_of_the_symmetric_basis() {
    let dir = tempfile::tempdir().unwrap();
    let (code, records) = json(
        dir.path(),
        &["closure", "--generators", "builtin:sym-basis3"],
    );
    assert_eq!(code, Some(0));
    assert_eq!(count(&records, "group order"), 40320);
    assert!(dir.path().join("sym-basis3.mrsf").exists());
    let (_, again) = json(
        dir.path(),
        &["closure", "--generators", "builtin:sym-basis3"],
    );
    assert_eq!(count(&again, "members"), 40320);
}

#[test]
fn closure_sample_smoke_run() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("closure.mrsf");
    let (code, records) = json(
        dir.path(),
        &[
            "closure",
            "--generators",
            "builtin:nondeg-M3",
            "--sample",
            "20",
            "--stats",
            "ngenus",
            "--out",
            out.to_str().unwrap(),
        ],
    );
    assert_eq!(code, Some(0));
    assert_eq!(count(&records, "generator count"), 20);
    let members = count(&records, "members");
    let rows: Vec<(usize, u64)> = serde_json::from_value(
        find(&records, "histogram", "N-genus distribution").unwrap()["rows"].clone(),
    )
    .unwrap();
    assert_eq!(rows.iter().map(|r| r.1).sum::<u64>(), members);
    let (_, stored) = setfile::load(&out).unwrap();
    assert_eq!(stored.len() as u64, members);
    assert!(stored.iter().all(classes::is_nondegenerate));
}

#[test]
fn closure_errors() {
    let dir = tempfile::tempdir().unwrap();
    let out = minrs(
        dir.path(),
        &[
            "closure",
            "--generators",
            "builtin:piccard3",
            "--cap",
            "1000",
        ],
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("1000"));
    let out = minrs(dir.path(), &["closure", "--generators", "builtin:nope"]);
    assert_eq!(out.status.code(), Some(2));

    let mixed = dir.path().join("mixed.txt");
    std::fs::write(&mixed, "(2 7)\n(2 7)(8 9)\n").unwrap();
    let out = minrs(
        dir.path(),
        &["closure", "--generators", mixed.to_str().unwrap()],
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_quaternary_suite() {
    let dir = tempfile::tempdir().unwrap();
    let (code, records) = json(dir.path(), &["verify", "--suite", "quaternary"]);
    let failed: Vec<&Value> = records.iter().filter(|r| r["pass"] == false).collect();
    assert!(failed.is_empty(), "{failed:?}");
    assert_eq!(code, Some(0));
    assert_eq!(
        records.iter().filter(|r| r["record"] == "verdict").count(),
        11
    );
}

#[test]
fn verify_ternary_suite() {
    let dir = tempfile::tempdir().unwrap();
    let out = minrs(dir.path(), &["verify", "--suite", "ternary"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(out.status.success(), "{text}");
    assert!(!text.contains("FAIL"));
    assert!(text.contains("PASS closure of the nondegenerate members: expected 257404, got 257404"));
}
