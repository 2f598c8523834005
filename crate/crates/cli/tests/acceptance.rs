//! Acceptance criteria 1-12. Each test writes one PASS/FAIL line straight
//! to stderr (bypassing capture) and then asserts.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use dynmono::sweeps::{find, SweepConfig, SweepReport};
use dynmono::wtg::parse_wtg;
use dynmono::Execution;

fn line(id: u32, title: &str, ok: bool, detail: &str, took: Duration) {
    let verdict = if ok { "PASS" } else { "FAIL" };
    let _ = writeln!(
        std::io::stderr().lock(),
        "acceptance {id:>2} {verdict} {title}: {detail} ({:.2}s)",
        took.as_secs_f64()
    );
}

/// Runs the named sweep and checks the case count and required categories.
fn criterion(
    id: u32,
    sweep: &str,
    min_cases: usize,
    need: &[&str],
    budget: Duration,
) -> SweepReport {
    let started = Instant::now();
    let report = find(sweep).expect("sweep exists").run(&SweepConfig {
        cases: None,
        seed: 2024,
        exec: Execution::default(),
    });
    let took = started.elapsed();
    let missing: Vec<_> = need
        .iter()
        .filter(|t| !report.tally.contains_key(*t))
        .collect();
    let ok = report.passed() && report.cases >= min_cases && missing.is_empty() && took < budget;
    let detail = format!(
        "{} cases, {} failures, mix {:?}{}",
        report.cases,
        report.failures.len(),
        report.tally,
        report
            .failures
            .first()
            .map(|f| format!(", first: {f}"))
            .unwrap_or_default()
    );
    line(id, sweep, ok, &detail, took);
    assert!(
        report.passed(),
        "{sweep}: {:?}",
        &report.failures[..report.failures.len().min(5)]
    );
    assert!(
        report.cases >= min_cases,
        "{sweep}: only {} cases",
        report.cases
    );
    assert!(missing.is_empty(), "{sweep}: no cases of {missing:?}");
    assert!(took < budget, "{sweep}: took {took:?}");
    report
}

const MIN: Duration = Duration::from_secs(60);

#[test]
fn c01_peeling_matches_exhaustive_degeneracy_check() {
    criterion(
        1,
        "degeneracy",
        500,
        &["non-degenerate", "built-degenerate"],
        MIN,
    );
}

#[test]
fn c02_positive_slack_set_within_ratio_of_optimum() {
    criterion(2, "algorithm-one", 300, &["empty", "nonempty"], 2 * MIN);
}

#[test]
fn c03_slack_vector_is_optimal_on_degenerate_input() {
    criterion(3, "otvw-degenerate", 300, &[], 5 * MIN);
}

#[test]
fn c04_two_level_solver_is_optimal() {
    criterion(
        4,
        "two-level",
        200,
        &["all-low", "has-full-vertex"],
        5 * MIN,
    );
}

#[test]
fn c05_min_or_full_solver_is_optimal() {
    criterion(5, "min-or-full", 200, &[], 5 * MIN);
}

#[test]
fn c06_complete_graph_image_keeps_target_sets() {
    criterion(6, "tss-to-complete", 100, &["cubic", "unit"], 5 * MIN);
}

#[test]
fn c07_apex_image_optimum_is_one_larger() {
    criterion(7, "degenerate-to-complete", 100, &[], 5 * MIN);
}

#[test]
fn c08_vector_and_cover_bounds_hold() {
    criterion(
        8,
        "bounds",
        200,
        &["random", "tournament", "degenerate"],
        2 * MIN,
    );
}

#[test]
fn c09_bidirected_image_reproduces_traces() {
    criterion(9, "bidirected", 100, &[], 2 * MIN);
}

#[test]
fn c10_complement_peeling_matches_target_sets() {
    criterion(10, "kappa", 200, &["some-target", "no-target"], 2 * MIN);
}

#[test]
fn c11_order_dp_matches_grid_search() {
    // Every labelled instance of the enumerated family, both modes.
    criterion(
        11,
        "otv-grid",
        1_000_000,
        &["undirected", "directed"],
        2 * MIN,
    );
}

fn fixtures() -> Vec<PathBuf> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let mut files: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "wtg"))
        .collect();
    files.sort();
    files
}

fn dynmono(args: &[&str]) -> (Option<i32>, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_dynmono"))
        .args(args)
        .output()
        .unwrap();
    (out.status.code(), out.stdout)
}

#[test]
fn c12_round_trip_and_reproducible_reports() {
    let started = Instant::now();
    let mut problems = Vec::new();

    let files = fixtures();
    for f in &files {
        let text = fs::read_to_string(f).unwrap();
        match parse_wtg(&text) {
            Ok(doc) if doc.to_text() == text => {}
            Ok(_) => problems.push(format!("{} is not reproduced", f.display())),
            Err(e) => problems.push(format!("{}: {e}", f.display())),
        }
    }
    let sweep = find("wtg-roundtrip").unwrap().run(&SweepConfig::default());
    problems.extend(sweep.failures.iter().cloned());

    let p3 = files.iter().find(|f| f.ends_with("p3.wtg")).unwrap();
    let p3 = p3.to_str().unwrap();
    let commands: Vec<Vec<&str>> = vec![
        vec!["validate", p3],
        vec!["simulate", p3, "--seed-set", "1"],
        vec!["degeneracy", "--brute", p3],
        vec!["solve", "--method", "degenerate", p3],
        vec!["solve", "--method", "algorithm-one", p3],
        vec!["oracle", "target-set", p3],
        vec!["oracle", "target-vector", p3],
        vec!["reduce", "prop3", p3],
        vec!["check", "kappa", "--cases", "30"],
    ];
    for cmd in &commands {
        let mut args = cmd.clone();
        args.push("--deterministic");
        let (code, a) = dynmono(&args);
        let (_, b) = dynmono(&args);
        args.push("--sequential");
        let (_, c) = dynmono(&args);
        if code != Some(0) {
            problems.push(format!("{cmd:?} exited with {code:?}"));
        }
        if a != b || a != c {
            problems.push(format!("{cmd:?} output differs between runs"));
        }
        if String::from_utf8_lossy(&a).contains("wall_time") {
            problems.push(format!("{cmd:?} reports wall time"));
        }
    }

    let took = started.elapsed();
    let ok = problems.is_empty() && took < Duration::from_secs(30);
    let detail = format!(
        "{} fixture files, {} generated round trips, {} commands x3 runs, {} problems",
        files.len(),
        sweep.cases,
        commands.len(),
        problems.len()
    );
    line(
        12,
        "wtg round trip + deterministic reports",
        ok,
        &detail,
        took,
    );
    assert!(problems.is_empty(), "{problems:#?}");
    assert!(took < Duration::from_secs(30));
}
