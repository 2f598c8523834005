//! Command-line front end. [`run`] parses arguments, dispatches, writes the
//! report to `out` and diagnostics to `err`, and returns the exit code:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | usage error (bad flags, unreadable file) |
//! | 2 | input failed validation |
//! | 3 | solver precondition not met |
//! | 4 | oracle size limit exceeded |
//! | 5 | a `check` sweep found failures |

pub mod report;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dynmono::degeneracy::{brute_degeneracy_check, peel_ordering, DEFAULT_BRUTE_LIMIT};
use dynmono::engine::{run_activation, run_with_incentives, IncentiveVector};
use dynmono::generators::{generate, Family, GenSpec, ThresholdPolicy, WeightGrid};
use dynmono::oracles::{
    exact_min_target_set, exact_min_vertex_cover, exact_otv, OracleConfig, OracleLimits,
};
use dynmono::reductions::{degenerate_to_complete, to_bidirected, tss_to_complete};
use dynmono::solvers::{
    algorithm_one, classify_and_solve, otvw_degenerate, otvw_min_or_full, otvw_two_level_with,
    vertex_cover_target_set, Classified,
};
use dynmono::sweeps::{self, SweepConfig};
use dynmono::wtg::{parse_incentives, parse_wtg, serialize_wtg, WtgDocument};
use dynmono::{Error, Execution, Instance, Rational, VertexSet};

use report::Report;

#[derive(Parser, Debug)]
#[command(
    name = "dynmono",
    version,
    about = "Target sets and target vectors on weighted graphs"
)]
pub struct Cli {
    /// Leave wall time out of reports so reruns are byte-identical.
    #[arg(long, global = true)]
    deterministic: bool,
    /// Run enumerations on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and validate an instance file.
    Validate { file: PathBuf },
    /// Run the activation process from a seed set or an incentive vector.
    Simulate {
        file: PathBuf,
        /// Comma-separated vertex ids.
        #[arg(long, conflicts_with = "incentives")]
        seed_set: Option<String>,
        /// File of `p <id> <value>` lines.
        #[arg(long)]
        incentives: Option<PathBuf>,
    },
    /// Peel a degeneracy ordering or report the stuck set.
    Degeneracy {
        file: PathBuf,
        /// Also run the exhaustive subgraph check.
        #[arg(long)]
        brute: bool,
        #[arg(long, default_value_t = DEFAULT_BRUTE_LIMIT)]
        limit_n: usize,
    },
    /// Solve with a polynomial-time method.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = SolveMethod::Auto)]
        method: SolveMethod,
    },
    /// Exact exponential-time solver.
    Oracle {
        #[arg(value_enum)]
        kind: OracleKind,
        file: PathBuf,
        /// Largest n the oracle will accept.
        #[arg(long)]
        limit_n: Option<usize>,
    },
    /// Transform an instance.
    Reduce {
        #[arg(value_enum)]
        kind: ReduceKind,
        file: PathBuf,
        /// Also write the image instance here.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Generate an instance; prints it in WTG form.
    Gen(GenArgs),
    /// Run a named property sweep (`all` runs every one).
    Check {
        #[arg(required_unless_present = "list")]
        name: Option<String>,
        #[arg(long)]
        cases: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// List sweep names and exit.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Args, Debug)]
struct GenArgs {
    /// random | degenerate | cubic | tournament | two-level | min-or-full | unit-tss
    family: String,
    #[arg(long)]
    n: usize,
    /// Edge probability, `int` or `int/int`.
    #[arg(long, default_value = "1/2")]
    edge_prob: String,
    /// unit | int:MAX | half:MAX
    #[arg(long, default_value = "int:10")]
    weights: String,
    /// uniform | fixed:VALUE | slack | zero-slack
    #[arg(long)]
    thresholds: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SolveMethod {
    Auto,
    AlgorithmOne,
    Degenerate,
    TwoLevel,
    MinOrFull,
    VcBound,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OracleKind {
    TargetSet,
    TargetVector,
    VertexCover,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ReduceKind {
    /// Complete graph with the same target sets.
    #[value(alias = "complete")]
    Prop1,
    /// Complete graph plus an apex; optimum grows by one.
    #[value(alias = "apex")]
    Prop3,
    Bidirect,
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Validation(String),
    Precondition(String),
    OracleLimit(String),
    CheckFailed(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Validation(_) => 2,
            Failure::Precondition(_) => 3,
            Failure::OracleLimit(_) => 4,
            Failure::CheckFailed(_) => 5,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m)
            | Failure::Validation(m)
            | Failure::Precondition(m)
            | Failure::OracleLimit(m)
            | Failure::CheckFailed(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::Invalid(_)
            | Error::UnknownVertex(_)
            | Error::IncentiveLength { .. }
            | Error::NegativeIncentive(_) => Failure::Validation(msg),
            Error::TooLarge { .. } | Error::Overflow => Failure::OracleLimit(msg),
            Error::EmptySubset
            | Error::Edgeless
            | Error::Disconnected
            | Error::RequiresUndirected
            | Error::NotDegenerate { .. }
            | Error::Precondition(_)
            | Error::Unverified => Failure::Precondition(msg),
        }
    }
}

type CmdResult = Result<String, Failure>;

pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if code == 0 {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(Failure::CheckFailed(text)) => {
            let _ = out.write_all(text.as_bytes());
            let _ = writeln!(err, "error: property sweep failed");
            5
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<WtgDocument, Failure> {
    parse_wtg(&read(path)?).map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn parse_seed_set(text: &str, n: usize) -> Result<VertexSet, Failure> {
    let ids = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| Failure::Usage(format!("bad vertex id `{s}` in --seed-set")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    VertexSet::from_ids(n, ids).map_err(|v| Failure::Validation(format!("unknown vertex {v}")))
}

fn dispatch(cli: &Cli) -> CmdResult {
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    let started = Instant::now();
    let report = match &cli.command {
        Command::Validate { file } => validate(file)?,
        Command::Simulate {
            file,
            seed_set,
            incentives,
        } => simulate(file, seed_set.as_deref(), incentives.as_deref())?,
        Command::Degeneracy {
            file,
            brute,
            limit_n,
        } => degeneracy(file, *brute, *limit_n, exec)?,
        Command::Solve { file, method } => solve(file, *method, exec)?,
        Command::Oracle {
            kind,
            file,
            limit_n,
        } => oracle(*kind, file, *limit_n, exec)?,
        Command::Reduce { kind, file, output } => reduce(*kind, file, output.as_deref())?,
        Command::Gen(args) => return gen(args),
        Command::Check {
            name,
            cases,
            seed,
            list,
        } => {
            if *list {
                return Ok(sweeps::SWEEPS
                    .iter()
                    .map(|s| format!("{:<24}{}\n", s.name, s.description))
                    .collect());
            }
            return check(
                name.as_deref().unwrap_or("all"),
                *cases,
                *seed,
                exec,
                cli.deterministic,
                started,
            );
        }
    };
    Ok(report.render((!cli.deterministic).then(|| started.elapsed())))
}

fn validate(file: &Path) -> Result<Report, Failure> {
    let doc = load(file)?;
    let mut r = Report::new("validate");
    r.set("valid", true)
        .set("instance", report::instance_summary(&doc.instance))
        .set("has_incentives", doc.incentives.is_some());
    Ok(r)
}

fn simulate(
    file: &Path,
    seed_set: Option<&str>,
    incentives: Option<&Path>,
) -> Result<Report, Failure> {
    let doc = load(file)?;
    let g = &doc.instance;
    let mut r = Report::new("simulate");
    r.set("instance", report::instance_summary(g));
    let trace = if let Some(ids) = seed_set {
        let seed = parse_seed_set(ids, g.n())?;
        r.set("seed_set", &seed);
        run_activation(g, &seed)?
    } else {
        let p = match incentives {
            Some(path) => parse_incentives(&read(path)?, g.n())
                .map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))?,
            None => doc
                .incentives
                .clone()
                .unwrap_or_else(|| IncentiveVector::zeros(g.n())),
        };
        r.set("incentives", report::incentives(&p))
            .set("cost", p.cost());
        run_with_incentives(g, &p)?
    };
    r.set("trace", report::trace(&trace));
    Ok(r)
}

fn degeneracy(file: &Path, brute: bool, limit: usize, exec: Execution) -> Result<Report, Failure> {
    let doc = load(file)?;
    let peel = peel_ordering(&doc.instance)?;
    let mut r = Report::new("degeneracy");
    r.merge(report::peel(&peel));
    if brute {
        let answer = brute_degeneracy_check(&doc.instance, limit, exec)?;
        r.set("brute_force", answer);
    }
    Ok(r)
}

fn solve(file: &Path, method: SolveMethod, exec: Execution) -> Result<Report, Failure> {
    let doc = load(file)?;
    let g = &doc.instance;
    let mut r = Report::new("solve");
    let body = match method {
        SolveMethod::Auto => match classify_and_solve(g)? {
            Classified::Solved(s) => report::solve(&s),
            Classified::Unsupported => {
                return Err(Failure::Precondition(
                    "instance is not degenerate, two-level or min-or-full".into(),
                ))
            }
        },
        SolveMethod::AlgorithmOne => report::approx(&algorithm_one(g)?),
        SolveMethod::Degenerate => report::solve(&otvw_degenerate(g)?),
        SolveMethod::TwoLevel => report::solve(&otvw_two_level_with(g, exec)?),
        SolveMethod::MinOrFull => report::solve(&otvw_min_or_full(g)?),
        SolveMethod::VcBound => report::cover(&vertex_cover_target_set(g)?),
    };
    r.merge(body);
    Ok(r)
}

fn oracle(
    kind: OracleKind,
    file: &Path,
    limit: Option<usize>,
    exec: Execution,
) -> Result<Report, Failure> {
    let doc = load(file)?;
    let mut limits = OracleLimits::default();
    if let Some(l) = limit {
        match kind {
            OracleKind::TargetSet => limits.target_set = l,
            OracleKind::TargetVector => limits.target_vector = l,
            OracleKind::VertexCover => limits.vertex_cover = l,
        }
    }
    let cfg = OracleConfig { limits, exec };
    let (name, result) = match kind {
        OracleKind::TargetSet => ("target-set", exact_min_target_set(&doc.instance, &cfg)?),
        OracleKind::TargetVector => ("target-vector", exact_otv(&doc.instance, &cfg)?),
        OracleKind::VertexCover => ("vertex-cover", exact_min_vertex_cover(&doc.instance, &cfg)?),
    };
    let mut r = Report::new("oracle");
    r.merge(report::oracle(name, &result));
    Ok(r)
}

fn reduce(kind: ReduceKind, file: &Path, output: Option<&Path>) -> Result<Report, Failure> {
    let doc = load(file)?;
    let receipt = match kind {
        ReduceKind::Prop1 => tss_to_complete(&doc.instance)?,
        ReduceKind::Prop3 => degenerate_to_complete(&doc.instance)?,
        ReduceKind::Bidirect => to_bidirected(&doc.instance)?,
    };
    if let Some(path) = output {
        write_file(path, &serialize_wtg(&receipt.image, None))?;
    }
    let mut r = Report::new("reduce");
    r.merge(report::receipt(&receipt));
    Ok(r)
}

fn parse_rational(flag: &str, text: &str) -> Result<Rational, Failure> {
    text.parse()
        .map_err(|e| Failure::Usage(format!("--{flag}: `{text}`: {e}")))
}

fn gen_spec(args: &GenArgs) -> Result<GenSpec, Failure> {
    let family = Family::parse(&args.family)
        .ok_or_else(|| Failure::Usage(format!("unknown family `{}`", args.family)))?;
    let weights = match args.weights.split_once(':') {
        None if args.weights == "unit" => WeightGrid::Unit,
        Some(("int", m)) | Some(("half", m)) => {
            let max = m
                .parse()
                .map_err(|_| Failure::Usage(format!("--weights: bad maximum `{m}`")))?;
            if args.weights.starts_with("int") {
                WeightGrid::Integers { max }
            } else {
                WeightGrid::Halves { max }
            }
        }
        _ => {
            return Err(Failure::Usage(format!(
                "--weights: unknown grid `{}`",
                args.weights
            )))
        }
    };
    let mut spec = GenSpec::new(family, args.n, args.seed)
        .with_weights(weights)
        .with_edge_prob(parse_rational("edge-prob", &args.edge_prob)?);
    if let Some(t) = &args.thresholds {
        let policy = match t.split_once(':') {
            Some(("fixed", v)) => ThresholdPolicy::Fixed(parse_rational("thresholds", v)?),
            None if t == "uniform" => ThresholdPolicy::Uniform,
            None if t == "slack" => ThresholdPolicy::RandomSlack,
            None if t == "zero-slack" => ThresholdPolicy::ZeroSlack,
            _ => {
                return Err(Failure::Usage(format!(
                    "--thresholds: unknown policy `{t}`"
                )))
            }
        };
        spec = spec.with_thresholds(policy);
    }
    Ok(spec)
}

fn gen(args: &GenArgs) -> CmdResult {
    let spec = gen_spec(args)?;
    let inst: Instance = generate(&spec).map_err(|e| match e {
        Error::Precondition(m) => Failure::Usage(m),
        other => other.into(),
    })?;
    let text = serialize_wtg(&inst, None);
    match &args.output {
        Some(path) => {
            write_file(path, &text)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn check(
    name: &str,
    cases: Option<usize>,
    seed: u64,
    exec: Execution,
    deterministic: bool,
    started: Instant,
) -> CmdResult {
    let selected: Vec<_> = if name == "all" {
        sweeps::SWEEPS.iter().collect()
    } else {
        vec![sweeps::find(name).ok_or_else(|| {
            Failure::Usage(format!("unknown sweep `{name}` (see `check --list`)"))
        })?]
    };
    let cfg = SweepConfig { cases, seed, exec };
    let results: Vec<_> = selected.iter().map(|s| s.run(&cfg)).collect();
    let passed = results.iter().all(|r| r.passed());
    let mut r = Report::new("check");
    r.set("seed", seed).set("passed", passed).set(
        "sweeps",
        results.iter().map(report::sweep).collect::<Vec<_>>(),
    );
    let text = r.render((!deterministic).then(|| started.elapsed()));
    if passed {
        Ok(text)
    } else {
        Err(Failure::CheckFailed(text))
    }
}
