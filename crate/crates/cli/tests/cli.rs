use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn dynmono(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dynmono"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "bad JSON ({e}): {}\n{}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn solve_degenerate_p3() {
    let out = dynmono(&["solve", "--method", "degenerate", path(&fixture("p3.wtg"))]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["cost"], "1");
    assert_eq!(r["method"], "degenerate");
    assert!(r["wall_time_us"].is_u64());
}

#[test]
fn oracle_limit_exit_code() {
    let big = fixture("big25.wtg");
    let out = dynmono(&["oracle", "target-set", path(&big)]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr(&out).contains("limit is 20"));
    let out = dynmono(&[
        "oracle",
        "target-vector",
        path(&fixture("p3.wtg")),
        "--limit-n",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn reduce_then_oracle_agree() {
    let dir = tempfile::tempdir().unwrap();
    let image = dir.path().join("k3.wtg");
    let src = fixture("p3.wtg");
    let out = dynmono(&["reduce", "prop1", path(&src), "-o", image.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(json(&out)["image"], fs::read_to_string(&image).unwrap());
    let a = json(&dynmono(&["oracle", "target-set", path(&src)]));
    let b = json(&dynmono(&["oracle", "target-set", image.to_str().unwrap()]));
    assert_eq!(a["optimum"], "1");
    assert_eq!(a["optimum"], b["optimum"]);
}

#[test]
fn apex_reduction_adds_one() {
    let dir = tempfile::tempdir().unwrap();
    let image = dir.path().join("k4.wtg");
    let out = dynmono(&[
        "reduce",
        "prop3",
        path(&fixture("p3.wtg")),
        "-o",
        image.to_str().unwrap(),
    ]);
    assert_eq!(json(&out)["added_vertex"], 4);
    let b = json(&dynmono(&["oracle", "target-set", image.to_str().unwrap()]));
    assert_eq!(b["optimum"], "2");
    let out = dynmono(&["reduce", "prop3", path(&fixture("triangle.wtg"))]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn validation_errors_carry_position() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("loop.wtg");
    fs::write(&f, "wtg 1\nmode undirected\nn 2\nv 1 1\nv 2 1\ne 1 1 1\n").unwrap();
    let out = dynmono(&["validate", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr(&out).contains("line 6, column 5: self-loop"),
        "{}",
        stderr(&out)
    );

    fs::write(&f, "wtg 1\nmode undirected\nn 2\nv 1 1\nv 2 1\ne 1 2 3/0\n").unwrap();
    let out = dynmono(&["validate", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("zero denominator"));
}

#[test]
fn usage_errors() {
    assert_eq!(
        dynmono(&["solve", "/no/such/file.wtg"]).status.code(),
        Some(1)
    );
    assert_eq!(
        dynmono(&["solve", "--method", "magic", "x"]).status.code(),
        Some(1)
    );
    assert_eq!(dynmono(&[]).status.code(), Some(1));
    assert_eq!(
        dynmono(&["gen", "moebius", "--n", "3"]).status.code(),
        Some(1)
    );
    assert_eq!(
        dynmono(&["gen", "cubic", "--n", "5"]).status.code(),
        Some(1)
    );
    assert_eq!(dynmono(&["--help"]).status.code(), Some(0));
}

#[test]
fn precondition_exit_code() {
    let out = dynmono(&[
        "solve",
        "--method",
        "degenerate",
        path(&fixture("triangle.wtg")),
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("not degenerate"));
    let out = dynmono(&[
        "solve",
        "--method",
        "two-level",
        path(&fixture("fractional.wtg")),
    ]);
    assert_eq!(out.status.code(), Some(3));
    let out = dynmono(&["simulate", path(&fixture("p3.wtg")), "--seed-set", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn solve_witnesses_replay_through_simulate() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("degenerate", "p3.wtg"),
        ("degenerate", "fractional.wtg"),
        ("two-level", "two_level.wtg"),
        ("two-level", "two_level_low.wtg"),
        ("min-or-full", "min_or_full.wtg"),
        ("auto", "two_level_low.wtg"),
    ];
    for (method, file) in cases {
        let src = fixture(file);
        let r = json(&dynmono(&["solve", "--method", method, path(&src)]));
        let lines: String = r["witness"]
            .as_array()
            .unwrap()
            .iter()
            .enumerate()
            .map(|(i, v)| format!("p {} {}\n", i + 1, v.as_str().unwrap()))
            .collect();
        let p = dir.path().join("p.txt");
        fs::write(&p, lines).unwrap();
        let sim = json(&dynmono(&[
            "simulate",
            path(&src),
            "--incentives",
            p.to_str().unwrap(),
        ]));
        assert_eq!(sim["trace"]["activates_all"], true, "{method} on {file}");
        assert_eq!(sim["cost"], r["cost"]);

        let exact = json(&dynmono(&["oracle", "target-vector", path(&src)]));
        assert_eq!(exact["optimum"], r["cost"], "{method} on {file}");
    }

    for method in ["algorithm-one", "vc-bound"] {
        let src = fixture("p3.wtg");
        let r = json(&dynmono(&["solve", "--method", method, path(&src)]));
        let seed: Vec<String> = r["witness"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.to_string())
            .collect();
        let sim = json(&dynmono(&[
            "simulate",
            path(&src),
            "--seed-set",
            &seed.join(","),
        ]));
        assert_eq!(sim["trace"]["activates_all"], true, "{method}");
    }
}

#[test]
fn simulate_uses_embedded_incentives() {
    let r = json(&dynmono(&["simulate", path(&fixture("p3_incentive.wtg"))]));
    assert_eq!(r["cost"], "1");
    assert_eq!(r["trace"]["rounds"], serde_json::json!([[1], [2], [3]]));
}

#[test]
fn degeneracy_reports() {
    let r = json(&dynmono(&[
        "degeneracy",
        "--brute",
        path(&fixture("p3.wtg")),
    ]));
    assert_eq!(r["degenerate"], true);
    assert_eq!(r["brute_force"], true);
    assert_eq!(r["ordering"]["slacks"], serde_json::json!(["1", "0", "0"]));
    let r = json(&dynmono(&[
        "degeneracy",
        "--brute",
        path(&fixture("triangle.wtg")),
    ]));
    assert_eq!(r["degenerate"], false);
    assert_eq!(r["witness"], serde_json::json!([1, 2, 3]));
    let out = dynmono(&["degeneracy", path(&fixture("directed.wtg"))]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn gen_is_reproducible_and_parses() {
    for family in [
        "random",
        "degenerate",
        "cubic",
        "tournament",
        "two-level",
        "min-or-full",
        "unit-tss",
    ] {
        let args = [
            "gen",
            family,
            "--n",
            "8",
            "--seed",
            "17",
            "--weights",
            "half:3",
        ];
        let a = dynmono(&args);
        assert_eq!(a.status.code(), Some(0), "{family}: {}", stderr(&a));
        assert_eq!(a.stdout, dynmono(&args).stdout);
        let dir = tempfile::tempdir().unwrap();
        let f = dir.path().join("g.wtg");
        fs::write(&f, &a.stdout).unwrap();
        assert_eq!(
            dynmono(&["validate", f.to_str().unwrap()]).status.code(),
            Some(0)
        );
    }
    let a = dynmono(&["gen", "random", "--n", "8", "--seed", "1"]);
    let b = dynmono(&["gen", "random", "--n", "8", "--seed", "2"]);
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn check_subcommand() {
    let list = dynmono(&["check", "--list"]);
    assert!(String::from_utf8_lossy(&list.stdout).contains("otv-grid"));
    let out = dynmono(&["check", "kappa", "--cases", "20", "--deterministic"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["passed"], true);
    assert_eq!(r["sweeps"][0]["cases"], 20);
}
