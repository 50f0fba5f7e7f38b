use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use sparsepave::census::{count, counts_from_csv, parse_csv, write_matroid};
use sparsepave::minors::whirl3;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sparsepave"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn count_matches_pinned_tables() {
    for n in 1..=7 {
        let n = n.to_string();
        assert_eq!(
            stdout(&["count", "--n", &n]),
            golden(&format!("count_n{n}.csv"))
        );
    }
}

#[test]
fn count_round_trips_through_csv() {
    for n in 0..=6 {
        let table = count(n).unwrap();
        let parsed = counts_from_csv(&table.to_csv()).unwrap();
        assert_eq!(count(n).unwrap().to_csv(), table.to_csv());
        assert_eq!(parsed.n, n);
        assert_eq!(
            parsed.total,
            sparsepave::johnson::count_sparse_paving(n).unwrap().total
        );
    }
    assert_eq!(
        stdout(&["count", "--n", "1"]),
        "n,r,count\n1,0,1\n1,1,1\n1,all,2\n"
    );
}

#[test]
fn json_has_parameters_seed_and_rational_strings() {
    let text = stdout(&[
        "minor-census",
        "--target",
        "u:2:4",
        "--n",
        "5,6",
        "--format",
        "json",
    ]);
    let doc: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["experiment"], "minor-census");
    assert_eq!(doc["parameters"]["target"], "u:2:4");
    assert_eq!(doc["seed"], 0);
    assert_eq!(doc["rows"][1]["fraction"], "363/439");
    let f = doc["rows"][1]["fraction_float"].as_f64().unwrap();
    assert!((f - 363.0 / 439.0).abs() < 1e-12);
    assert!(doc.get("runtime_ms").is_none());
}

#[test]
fn timing_is_opt_in() {
    let plain = stdout(&["count", "--n", "3"]);
    assert!(!plain.contains("runtime_ms"));
    let timed = stdout(&["count", "--n", "3", "--timing"]);
    let rows = parse_csv(&timed).unwrap();
    assert_eq!(rows[0].last().unwrap(), "runtime_ms");
    assert!(rows[1..]
        .iter()
        .all(|r| r.last().unwrap().parse::<u64>().is_ok()));
}

#[test]
fn verify_passes_and_is_vacuous_at_zero() {
    for n in ["0", "4", "6"] {
        let out = run(&["verify", "--n", n]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn injected_fault_names_byskov() {
    let out = run(&["verify", "--n", "5", "--inject-fault", "byskov"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.starts_with("FAIL: byskov"), "{err}");
}

#[test]
fn exit_codes() {
    // Unknown target and malformed flags are usage errors.
    assert_eq!(
        run(&["minor-census", "--target", "w3", "--n", "5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["count"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--n", "x"]).status.code(), Some(2));
    assert_eq!(
        run(&[
            "minor-census",
            "--target",
            "file:/nonexistent/h.txt",
            "--n",
            "5"
        ])
        .status
        .code(),
        Some(2)
    );
    // Beyond the enumeration budget.
    assert_eq!(run(&["verify", "--n", "9"]).status.code(), Some(3));
    assert_eq!(
        run(&["minor-census", "--target", "u:2:4", "--n", "9"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        run(&[
            "minor-census",
            "--target",
            "whirl3",
            "--n",
            "7",
            "--samples",
            "5",
            "--budget",
            "1"
        ])
        .status
        .code(),
        Some(3)
    );
}

#[test]
fn file_target_matches_builtin() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.txt");
    write_matroid(&path, &whirl3()).unwrap();
    let spec = format!("file:{}", path.display());
    let from_file = stdout(&[
        "minor-census",
        "--target",
        &spec,
        "--n",
        "6,7",
        "--samples",
        "200",
        "--seed",
        "4",
    ]);
    let builtin = stdout(&[
        "minor-census",
        "--target",
        "whirl3",
        "--n",
        "6,7",
        "--samples",
        "200",
        "--seed",
        "4",
    ]);
    let rows = |t: &str| parse_csv(t).unwrap();
    assert_eq!(rows(&from_file), rows(&builtin));
}

#[test]
fn u12_census_at_five_is_pinned() {
    // Only the rank-0 and rank-5 free matroids lack a parallel pair.
    let text = stdout(&["minor-census", "--target", "u:1:2", "--n", "5"]);
    assert_eq!(text, golden("minor_u12_n5.csv"));
    assert!(text.contains("5,66,64,32/33"));
}

#[test]
fn nonbasis_bound_at_five_is_pinned() {
    let text = stdout(&["nonbasis-bound", "--n", "5"]);
    let pinned = golden("nonbasis_n5_7.csv");
    let mut lines = pinned.lines();
    let expected = format!("{}\n{}\n", lines.next().unwrap(), lines.next().unwrap());
    assert_eq!(text, expected);
}

#[test]
fn fast_mode_never_exceeds_exact() {
    let frac = |mode: &str| {
        let text = stdout(&["minor-census", "--target", "core:3:2", "--n", "6,7", mode]);
        parse_csv(&text).unwrap()[1..]
            .iter()
            .map(|r| r[2].parse::<u64>().unwrap())
            .collect::<Vec<_>>()
    };
    let fast = frac("--fast");
    let exact = frac("--exact");
    assert!(
        fast.iter().zip(&exact).all(|(f, e)| f <= e),
        "{fast:?} vs {exact:?}"
    );
}

#[test]
fn seeds_change_samples_but_not_layout() {
    let a = stdout(&[
        "nonbasis-bound",
        "--n",
        "7",
        "--samples",
        "300",
        "--seed",
        "1",
    ]);
    let b = stdout(&[
        "nonbasis-bound",
        "--n",
        "7",
        "--samples",
        "300",
        "--seed",
        "2",
    ]);
    assert_eq!(a.lines().next(), b.lines().next());
    assert_ne!(a, b);
    assert_eq!(
        a,
        stdout(&[
            "nonbasis-bound",
            "--n",
            "7",
            "--samples",
            "300",
            "--seed",
            "1",
            "--threads",
            "3"
        ])
    );
}

#[test]
fn count_single_rank() {
    assert_eq!(
        stdout(&["count", "--n", "7", "--r", "3"]),
        "n,r,count\n7,3,5596\n"
    );
    assert_eq!(
        run(&["count", "--n", "3", "--r", "5"]).status.code(),
        Some(2)
    );
}
