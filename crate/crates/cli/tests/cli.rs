use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use halfgap_cli::{exit_code, EXIT_INPUT, EXIT_INTERNAL};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_halfgap"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("halfgap-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn gen(path: &Path, n: &str, k: &str, planted: bool, seed: &str) {
    let mut args = vec!["--seed", seed, "gen-ksum", "--n", n, "--k", k, "--out", path.to_str().unwrap()];
    if planted {
        args.push("--planted");
    }
    let o = run(&args);
    assert!(o.status.success(), "{o:?}");
}

#[test]
fn decide_yes_and_verify_gap_no() {
    let yes = scratch("yes.json");
    let no = scratch("no.json");
    gen(&yes, "3", "3", true, "1");
    gen(&no, "3", "3", false, "2");

    let o = run(&["decide", "--ksum", yes.to_str().unwrap(), "--solver", "exact"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "YES\n");

    let o = run(&["verify-gap", "--ksum", no.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("distance "), "{text}");
    assert!(text.ends_with("NO side\n"), "{text}");

    let o = run(&["decide", "--ksum", no.to_str().unwrap(), "--solver", "estimate", "--seed", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "NO\n");
}

#[test]
fn reduce_then_verify_from_file() {
    let k = scratch("red-src.json");
    let red = scratch("red.json");
    gen(&k, "2", "4", true, "9");
    let o = run(&["reduce", "--ksum", k.to_str().unwrap(), "--out", red.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&red).unwrap();
    assert!(text.contains("\"meta\""));
    let o = run(&["verify-gap", "--reduced", red.to_str().unwrap(), "--format", "csv"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().nth(1).unwrap().ends_with(",YES"));
}

#[test]
fn conflicting_dataset_exits_2() {
    let bad = scratch("bad.json");
    std::fs::write(&bad, r#"{"d": 1, "points": [["5"], ["5"]], "labels": [0, 1]}"#).unwrap();
    let o = run(&["dist-exact", "--dataset", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(EXIT_INPUT));
    assert_eq!(run(&["dist-exact", "--dataset", "/nonexistent.json"]).status.code(), Some(EXIT_INPUT));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(EXIT_INPUT));
}

#[test]
fn internal_errors_exit_3() {
    let gap = anyhow::Error::from(halfgap_core::Error::GapViolation {
        exact: "1/2".into(),
        yes_bound: "1/3".into(),
        no_bound: "2/3".into(),
    })
    .context("verify-gap");
    assert_eq!(exit_code(&gap), EXIT_INTERNAL);
    let input = anyhow::Error::from(halfgap_core::Error::ConflictingLabels { index: 1 });
    assert_eq!(exit_code(&input), EXIT_INPUT);
}

#[test]
fn dist_exact_xor() {
    let xor = scratch("xor.json");
    std::fs::write(
        &xor,
        r#"{"d": 2, "points": [["0","0"],["1","1"],["1","0"],["0","1"]], "labels": [0,0,1,1]}"#,
    )
    .unwrap();
    for method in ["auto", "sep", "cand", "2d"] {
        let o = run(&["dist-exact", "--dataset", xor.to_str().unwrap(), "--method", method]);
        assert!(o.status.success(), "{method}");
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["distance"], serde_json::json!(["1", "4"]));
        assert_eq!(v["agreements"], 3);
    }
    let o = run(&["dist-est", "--dataset", xor.to_str().unwrap(), "--eps", "0.1", "--delta", "0.1"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["samples"], "38373");
}

#[test]
fn seeded_commands_are_reproducible() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["--seed", "11", "gen-ksum", "--n", "5", "--k", "4"],
        vec!["--seed", "11", "sq-pack", "--d", "3", "--m", "3", "--threshold", "0.502", "--trials", "5"],
        vec!["--seed", "11", "sq-f0", "--m", "200", "--tau", "0.2"],
        vec!["--seed", "11", "sq-adversary", "--s", "64", "--trials", "2"],
        vec!["--seed", "11", "sq-angles", "--trials", "20"],
    ];
    for args in cases {
        let a = run(&args);
        let b = run(&args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn sq_outputs_have_the_fixed_columns() {
    let o = run(&["sq-f0", "--m", "1000", "--tau", "0.1", "--num-queries", "5"]);
    let text = stdout(&o);
    assert!(text.starts_with("trial,value,bound,pass\n"));
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")), "{text}");
    let assignment = scratch("f0.json");
    let o = run(&["sq-f0", "--m", "10", "--tau", "0.1", "--assignment", assignment.to_str().unwrap()]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(assignment).unwrap()).unwrap();
    assert_eq!(v["values"].as_array().unwrap().len(), 20);
    let o = run(&["sq-pack", "--d", "2", "--m", "4", "--threshold", "0.3", "--trials", "2", "--retries", "5"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().skip(1).all(|l| l.ends_with(",false")));
}

#[test]
fn bench_trivial_grid_reports_undefined_slope() {
    let svg = scratch("bench.svg");
    let o = run(&["bench", "--task", "exact-cand", "--sizes", "1", "--reps", "1", "--svg", svg.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("slope undefined"));
    assert!(stdout(&o).starts_with("command,d,n,k,eps,seed,wall_time_ns,queries_or_samples,result\n"));
    assert!(std::fs::read_to_string(svg).unwrap().contains("<polyline"));
    let o = run(&["bench", "--task", "reduction-e2e", "--sizes", "100"]);
    assert_eq!(o.status.code(), Some(EXIT_INPUT));
}
