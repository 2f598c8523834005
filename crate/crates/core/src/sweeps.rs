//! Named property sweeps: seeded batches of generated instances, each case
//! checked against an exact oracle or an independent recomputation. The
//! `check` subcommand and the acceptance tests run these.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::degeneracy::{
    brute_degeneracy_check, kappa_complement_check, peel_ordering, DegeneracyOrdering, Peel,
};
use crate::engine::{is_target_set, is_target_vector, run_activation, IncentiveVector};
use crate::error::Error;
use crate::exec::{self, Execution};
use crate::fixtures;
use crate::generators::{self, Family, GenSpec, ThresholdPolicy, WeightGrid};
use crate::instance::{Edge, Instance, Mode};
use crate::oracles::{exact_min_target_set, exact_min_vertex_cover, exact_otv, OracleConfig};
use crate::rational::Rational;
use crate::reductions::{degenerate_to_complete, to_bidirected, tss_to_complete};
use crate::solvers::{
    algorithm_one, otvw_degenerate, otvw_min_or_full, otvw_two_level_removing, otvw_two_level_with,
    tv_lower_bound, vertex_cover_target_set,
};
use crate::vertex_set::VertexSet;
use crate::wtg::{parse_wtg, serialize_wtg};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SweepConfig {
    /// Overrides the sweep's default case count (ignored by exhaustive sweeps).
    pub cases: Option<usize>,
    pub seed: u64,
    pub exec: Execution,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub name: &'static str,
    pub cases: usize,
    /// Case counts per category, to show the mix actually covered.
    pub tally: BTreeMap<&'static str, usize>,
    pub failures: Vec<String>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub struct Sweep {
    pub name: &'static str,
    pub description: &'static str,
    /// `None` for exhaustive sweeps.
    pub default_cases: Option<usize>,
    run: fn(&SweepConfig, usize) -> Outcomes,
}

impl Sweep {
    pub fn run(&self, cfg: &SweepConfig) -> SweepReport {
        let cases = cfg.cases.or(self.default_cases).unwrap_or(0);
        let outcomes = (self.run)(cfg, cases);
        let mut tally = BTreeMap::new();
        let mut failures = Vec::new();
        for (i, outcome) in outcomes.iter().enumerate() {
            match outcome {
                Ok(Some(tag)) => *tally.entry(*tag).or_insert(0) += 1,
                Ok(None) => {}
                Err(Failure(msg)) => failures.push(format!("case {i}: {msg}")),
            }
        }
        SweepReport {
            name: self.name,
            cases: outcomes.len(),
            tally,
            failures,
        }
    }
}

pub const SWEEPS: &[Sweep] = &[
    Sweep {
        name: "degeneracy",
        description: "peeling succeeds exactly when no induced subgraph is a counterexample",
        default_cases: Some(500),
        run: |cfg, cases| per_case(cfg, cases, degeneracy_case),
    },
    Sweep {
        name: "algorithm-one",
        description: "positive-slack set is a target set within tau_max/c of the optimum",
        default_cases: Some(300),
        run: |cfg, cases| per_case(cfg, cases, algorithm_one_case),
    },
    Sweep {
        name: "otvw-degenerate",
        description: "slack vector cost equals the exact optimum and the lower bound",
        default_cases: Some(300),
        run: |cfg, cases| per_case(cfg, cases, otvw_degenerate_case),
    },
    Sweep {
        name: "two-level",
        description: "two-level solver is optimal and independent of the removed edge",
        default_cases: Some(200),
        run: |cfg, cases| per_case(cfg, cases, two_level_case),
    },
    Sweep {
        name: "min-or-full",
        description: "contraction solver is optimal and its vector activates the graph",
        default_cases: Some(200),
        run: |cfg, cases| per_case(cfg, cases, min_or_full_case),
    },
    Sweep {
        name: "tss-to-complete",
        description: "complete-graph image has exactly the same target sets",
        default_cases: Some(100),
        run: |cfg, cases| per_case(cfg, cases, tss_to_complete_case),
    },
    Sweep {
        name: "degenerate-to-complete",
        description: "apex image is degenerate and its optimum is one larger",
        default_cases: Some(100),
        run: |cfg, cases| per_case(cfg, cases, degenerate_to_complete_case),
    },
    Sweep {
        name: "bounds",
        description: "lower bound <= optimal vector <= total threshold; dyn <= vertex cover",
        default_cases: Some(200),
        run: |cfg, cases| per_case(cfg, cases, bounds_case),
    },
    Sweep {
        name: "bidirected",
        description: "directed engine on the bidirected image reproduces every trace",
        default_cases: Some(100),
        run: |cfg, cases| per_case(cfg, cases, bidirected_case),
    },
    Sweep {
        name: "kappa",
        description: "complement peeling agrees with target-set verification",
        default_cases: Some(200),
        run: |cfg, cases| per_case(cfg, cases, kappa_case),
    },
    Sweep {
        name: "otv-grid",
        description: "order DP agrees with incentive grid search on all small integer instances",
        default_cases: None,
        run: |cfg, _| otv_grid(cfg.exec),
    },
    Sweep {
        name: "wtg-roundtrip",
        description: "text format round-trips fixtures and generated instances",
        default_cases: Some(200),
        run: |cfg, cases| per_case(cfg, cases, wtg_case),
    },
];

pub fn find(name: &str) -> Option<&'static Sweep> {
    SWEEPS.iter().find(|s| s.name == name)
}

struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(format!("error: {e}"))
    }
}

type Outcome = Result<Option<&'static str>, Failure>;
type Outcomes = Vec<Outcome>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(Failure(format!($($fmt)+)));
        }
    };
}

fn per_case(cfg: &SweepConfig, cases: usize, f: fn(&mut ChaCha8Rng) -> Outcome) -> Outcomes {
    let indices: Vec<u64> = (0..cases as u64).collect();
    exec::map(cfg.exec, &indices, |&i| {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(i);
        f(&mut rng)
    })
}

fn oracle() -> OracleConfig {
    OracleConfig::sequential()
}

fn any_grid(rng: &mut ChaCha8Rng) -> WeightGrid {
    match rng.gen_range(0..3) {
        0 => WeightGrid::Unit,
        1 => WeightGrid::Integers { max: 3 },
        _ => WeightGrid::Halves { max: 2 },
    }
}

fn any_prob(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(1..=3), 4)
}

fn spec(rng: &mut ChaCha8Rng, family: Family, n: usize) -> GenSpec {
    GenSpec::new(family, n, rng.gen())
        .with_weights(any_grid(rng))
        .with_edge_prob(any_prob(rng))
}

fn degenerate_instance(rng: &mut ChaCha8Rng, max_n: usize) -> Result<Instance, Failure> {
    let n = rng.gen_range(1..=max_n);
    let policy = if rng.gen_ratio(1, 5) {
        ThresholdPolicy::ZeroSlack
    } else {
        ThresholdPolicy::RandomSlack
    };
    Ok(generators::gen_degenerate(
        &spec(rng, Family::Degenerate, n).with_thresholds(policy),
    )?)
}

/// Slack of each vertex along `order`, recomputed from the edge list.
fn slacks_along(instance: &Instance, order: &[usize]) -> Vec<Rational> {
    let mut position = vec![0; instance.n() + 1];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let mut slack: Vec<Rational> = order.iter().map(|&v| instance.threshold(v)).collect();
    for e in instance.edges() {
        let later = position[e.u].max(position[e.v]);
        slack[later] -= e.weight;
    }
    slack
}

fn all_subsets(n: usize) -> impl Iterator<Item = VertexSet> {
    (0..1u64 << n).map(move |m| VertexSet::from_mask(n, m))
}

fn degeneracy_case(rng: &mut ChaCha8Rng) -> Outcome {
    let n = rng.gen_range(1..=12);
    let (inst, tag) = match rng.gen_range(0..3) {
        0 => (
            generators::gen_random_weighted(&spec(rng, Family::Random, n))?,
            "random",
        ),
        1 => (
            generators::gen_degenerate(&spec(rng, Family::Degenerate, n))?,
            "built-degenerate",
        ),
        _ => {
            // Lower one threshold of a degenerate instance to land near the boundary.
            let base = generators::gen_degenerate(&spec(rng, Family::Degenerate, n))?;
            let v = rng.gen_range(1..=n);
            let cut = Rational::new(rng.gen_range(1..=4), 2);
            let mut taus = base.thresholds().to_vec();
            taus[v - 1] = (taus[v - 1] - cut).clamp_nonneg();
            (
                base.with_thresholds(taus).map_err(Error::from)?,
                "perturbed",
            )
        }
    };
    let brute = brute_degeneracy_check(&inst, 12, Execution::Sequential)?;
    match peel_ordering(&inst)? {
        Peel::Ordering(ord) => {
            ensure!(
                brute,
                "peel succeeded but brute force found a counterexample"
            );
            let slacks = slacks_along(&inst, ord.order());
            ensure!(
                slacks.iter().all(|s| !s.is_negative()),
                "negative slack {slacks:?}"
            );
            ensure!(
                slacks == ord.slacks_in_order(),
                "reported slacks differ from recomputed"
            );
            DegeneracyOrdering::from_order(&inst, ord.order().to_vec())?;
        }
        Peel::Stuck(h) => {
            ensure!(!brute, "peel got stuck on a degenerate instance");
            ensure!(!h.is_empty(), "empty stuck set");
            for x in h.iter() {
                ensure!(
                    inst.threshold(x) < inst.incident_weight_sum(x, &h)?,
                    "stuck set {h:?} has a removable vertex {x}"
                );
            }
        }
    }
    Ok(Some(if brute { tag } else { "non-degenerate" }))
}

fn algorithm_one_case(rng: &mut ChaCha8Rng) -> Outcome {
    let inst = degenerate_instance(rng, 10)?;
    let r = algorithm_one(&inst)?;
    ensure!(is_target_set(&inst, &r.set)?, "output is not a target set");
    let opt = exact_min_target_set(&inst, &oracle())?.optimum;

    let slacks = slacks_along(&inst, r.ordering.order());
    let selected: Vec<usize> = r
        .ordering
        .order()
        .iter()
        .zip(&slacks)
        .filter(|(_, s)| s.is_positive())
        .map(|(&v, _)| v)
        .collect();
    ensure!(
        r.set.to_vec() == {
            let mut s = selected.clone();
            s.sort_unstable();
            s
        },
        "selected set differs from positive-slack vertices"
    );

    if r.set.is_empty() {
        let trace = run_activation(&inst, &VertexSet::empty(inst.n()))?;
        ensure!(
            trace.activates_all(),
            "empty output but empty seed does not activate"
        );
        return Ok(Some("empty"));
    }
    let c = slacks
        .iter()
        .filter(|s| s.is_positive())
        .min()
        .copied()
        .unwrap();
    let ratio = inst.max_threshold() / c;
    ensure!(
        r.c == Some(c) && r.claimed_ratio == Some(ratio),
        "reported c or ratio differs"
    );
    let size = Rational::from(r.set.len() as i64);
    ensure!(size <= ratio * opt, "|S| = {size} > ({ratio}) * {opt}");
    Ok(Some("nonempty"))
}

fn otvw_degenerate_case(rng: &mut ChaCha8Rng) -> Outcome {
    let inst = degenerate_instance(rng, 9)?;
    let r = otvw_degenerate(&inst)?;
    ensure!(is_target_vector(&inst, &r.p)?, "vector does not activate");
    let exact = exact_otv(&inst, &oracle())?.optimum;
    let formula = inst.total_threshold() - inst.total_weight();
    ensure!(
        r.cost == exact && exact == formula,
        "solver {} oracle {exact} formula {formula}",
        r.cost
    );
    Ok(None)
}

fn two_level_case(rng: &mut ChaCha8Rng) -> Outcome {
    let n = rng.gen_range(2..=9);
    let inst = generators::gen_two_level(&spec(rng, Family::TwoLevel, n))?;
    ensure!(
        inst.is_connected(),
        "generator produced a disconnected graph"
    );
    let r = otvw_two_level_with(&inst, Execution::Sequential)?;
    let exact = exact_otv(&inst, &oracle())?.optimum;
    let mu = inst.min_edge_weight()?;
    let all_low = inst
        .vertices()
        .all(|v| inst.threshold(v) < inst.full_incident_sum(v));
    let mut formula = inst.total_threshold() - inst.total_weight();
    if all_low {
        formula += mu;
    }
    ensure!(
        r.cost == exact && exact == formula,
        "solver {} oracle {exact} formula {formula}",
        r.cost
    );
    if !all_low {
        return Ok(Some("has-full-vertex"));
    }
    for e in inst.edges().iter().filter(|e| e.weight == mu) {
        let alt = otvw_two_level_removing(&inst, e.u, e.v)?;
        ensure!(
            alt.cost == r.cost,
            "removing ({},{}) costs {}",
            e.u,
            e.v,
            alt.cost
        );
    }
    Ok(Some("all-low"))
}

fn min_or_full_case(rng: &mut ChaCha8Rng) -> Outcome {
    let n = rng.gen_range(2..=9);
    let inst = generators::gen_min_or_full(&spec(rng, Family::MinOrFull, n))?;
    let r = otvw_min_or_full(&inst)?;
    ensure!(
        is_target_vector(&inst, &r.p)?,
        "mapped-back vector does not activate"
    );
    let exact = exact_otv(&inst, &oracle())?.optimum;
    ensure!(r.cost == exact, "solver {} oracle {exact}", r.cost);
    Ok(None)
}

fn tss_to_complete_case(rng: &mut ChaCha8Rng) -> Outcome {
    let (src, tag) = if rng.gen_ratio(1, 4) {
        let n = if rng.gen_ratio(1, 2) { 4 } else { 6 };
        (
            generators::gen_cubic_t12(&GenSpec::new(Family::CubicT12, n, rng.gen()))?,
            "cubic",
        )
    } else {
        let n = rng.gen_range(2..=7);
        let spec = GenSpec::new(Family::UnitTss, n, rng.gen()).with_edge_prob(any_prob(rng));
        (generators::gen_unit_tss(&spec)?, "unit")
    };
    let rec = tss_to_complete(&src)?;
    let img = &rec.image;
    ensure!(
        img.n() == src.n() && img.num_edges() == src.n() * (src.n() - 1) / 2,
        "image is not complete"
    );
    ensure!(
        img.edges().iter().all(|e| e.weight.is_positive()),
        "non-positive image weight"
    );
    for d in all_subsets(src.n()) {
        ensure!(
            is_target_set(&src, &d)? == is_target_set(img, &d)?,
            "seed {d:?} disagrees"
        );
    }
    let a = exact_min_target_set(&src, &oracle())?.optimum;
    let b = exact_min_target_set(img, &oracle())?.optimum;
    ensure!(a == b, "dyn {a} vs image {b}");
    Ok(Some(tag))
}

fn degenerate_to_complete_case(rng: &mut ChaCha8Rng) -> Outcome {
    let n = rng.gen_range(2..=6);
    let spec = GenSpec::new(Family::Degenerate, n, rng.gen())
        .with_weights(WeightGrid::Unit)
        .with_edge_prob(any_prob(rng));
    let built = generators::gen_degenerate(&spec)?;
    // Capping at the degree keeps the generating order valid: a vertex's
    // covered weight never exceeds its degree.
    let capped = built
        .vertices()
        .map(|v| {
            built
                .threshold(v)
                .min(Rational::from(built.degree(v) as i64))
        })
        .collect();
    let src = built.with_thresholds(capped).map_err(Error::from)?;
    let rec = degenerate_to_complete(&src)?;
    ensure!(
        peel_ordering(&rec.image)?.is_degenerate(),
        "image is not degenerate"
    );
    ensure!(
        rec.image.edges().iter().all(|e| e.weight.is_positive()),
        "non-positive image weight"
    );
    let a = exact_min_target_set(&src, &oracle())?.optimum;
    let b = exact_min_target_set(&rec.image, &oracle())?.optimum;
    ensure!(b == a + Rational::ONE, "dyn {a} but image dyn {b}");
    Ok(None)
}

fn bounds_case(rng: &mut ChaCha8Rng) -> Outcome {
    let n = rng.gen_range(2..=9);
    let (inst, tag) = match rng.gen_range(0..3) {
        0 => (
            generators::gen_random_weighted(&spec(rng, Family::Random, n))?,
            "random",
        ),
        1 => (
            generators::gen_tournament(&spec(rng, Family::Tournament, n))?,
            "tournament",
        ),
        _ => (
            generators::gen_degenerate(&spec(rng, Family::Degenerate, n))?,
            "degenerate",
        ),
    };
    let otv = exact_otv(&inst, &oracle())?.optimum;
    let lb = tv_lower_bound(&inst);
    let diff = inst.total_threshold() - inst.total_weight();
    ensure!(lb == diff.max(Rational::ZERO), "lower bound {lb} vs {diff}");
    ensure!(
        lb <= otv && otv <= inst.total_threshold(),
        "{lb} <= {otv} <= {} fails",
        inst.total_threshold()
    );
    let bounded = inst
        .vertices()
        .all(|v| inst.threshold(v) <= inst.full_incident_sum(v));
    if bounded {
        let dyn_ = exact_min_target_set(&inst, &oracle())?.size();
        let beta = exact_min_vertex_cover(&inst, &oracle())?.size();
        ensure!(dyn_ <= beta, "dyn {dyn_} > beta {beta}");
        let cover = vertex_cover_target_set(&inst)?;
        ensure!(is_target_set(&inst, &cover)?, "cover is not a target set");
    }
    Ok(Some(tag))
}

fn bidirected_case(rng: &mut ChaCha8Rng) -> Outcome {
    let n = rng.gen_range(1..=8);
    let inst = generators::gen_random_weighted(&spec(rng, Family::Random, n))?;
    let img = to_bidirected(&inst)?.image;
    let mut seeds: Vec<VertexSet> = (1..=n)
        .map(|v| VertexSet::from_ids(n, [v]).unwrap())
        .collect();
    seeds.push(VertexSet::empty(n));
    for _ in 0..3 {
        seeds.push(VertexSet::from_mask(n, rng.gen_range(0..1u64 << n)));
    }
    for d in &seeds {
        let a = run_activation(&inst, d)?;
        let b = run_activation(&img, d)?;
        ensure!(a == b, "traces differ for seed {d:?}");
    }
    let a = exact_min_target_set(&inst, &oracle())?;
    let b = exact_min_target_set(&img, &oracle())?;
    ensure!(
        a.optimum == b.optimum,
        "dyn {} vs directed {}",
        a.optimum,
        b.optimum
    );
    Ok(None)
}

fn kappa_case(rng: &mut ChaCha8Rng) -> Outcome {
    let n = rng.gen_range(1..=10);
    let base = generators::gen_random_weighted(
        &GenSpec::new(Family::Random, n, rng.gen())
            .with_weights(WeightGrid::Unit)
            .with_edge_prob(any_prob(rng)),
    )?;
    let taus = base
        .vertices()
        .map(|v| Rational::from(rng.gen_range(0..=base.degree(v) as i64 + 1)))
        .collect();
    let inst = base.with_thresholds(taus).map_err(Error::from)?;
    let mut hits = 0;
    for _ in 0..5 {
        let d = VertexSet::from_mask(n, rng.gen_range(0..1u64 << n));
        let target = is_target_set(&inst, &d)?;
        ensure!(
            kappa_complement_check(&inst, &d)? == target,
            "seed {d:?} disagrees"
        );
        hits += target as usize;
    }
    Ok(Some(if hits > 0 { "some-target" } else { "no-target" }))
}

fn wtg_case(rng: &mut ChaCha8Rng) -> Outcome {
    let n = rng.gen_range(2..=10);
    let family = match rng.gen_range(0..4) {
        0 => Family::Random,
        1 => Family::Degenerate,
        2 => Family::Tournament,
        _ => Family::MinOrFull,
    };
    let inst = generators::generate(&spec(rng, family, n))?;
    let incentives = rng.gen_ratio(1, 2).then(|| {
        IncentiveVector::new(
            (0..n)
                .map(|_| Rational::new(rng.gen_range(0..4), rng.gen_range(1..4)))
                .collect(),
        )
        .unwrap()
    });
    let text = serialize_wtg(&inst, incentives.as_ref());
    let doc = parse_wtg(&text).map_err(|e| Failure(e.to_string()))?;
    ensure!(doc.instance == inst, "instance changed");
    let zero_free = incentives
        .as_ref()
        .map(|p| p.values().iter().any(|x| !x.is_zero()));
    if zero_free == Some(true) {
        ensure!(doc.incentives == incentives, "incentives changed");
    }
    ensure!(doc.to_text() == text, "second serialization differs");

    // A scrambled but equivalent file parses to the same canonical text.
    let scrambled = scramble(&text, rng);
    let again = parse_wtg(&scrambled).map_err(|e| Failure(format!("{e}\n{scrambled}")))?;
    ensure!(
        again.to_text() == text,
        "scrambled file canonicalizes differently"
    );

    if rng.gen_ratio(1, 10) {
        for fixture in [
            fixtures::path3(),
            fixtures::triangle(1, 1),
            fixtures::star(3, 1, 4),
        ] {
            let t = serialize_wtg(&fixture, None);
            ensure!(
                parse_wtg(&t).map_err(|e| Failure(e.to_string()))?.instance == fixture,
                "fixture"
            );
        }
    }
    Ok(Some(family_name(family)))
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::Random => "random",
        Family::Degenerate => "degenerate",
        Family::Tournament => "tournament",
        _ => "min-or-full",
    }
}

/// Reverses body lines, un-reduces fractions, swaps undirected endpoints and
/// sprinkles comments. Header lines stay first.
fn scramble(text: &str, rng: &mut ChaCha8Rng) -> String {
    let mut lines: Vec<&str> = text.lines().collect();
    let body = lines.split_off(3);
    let undirected = lines[1] == "mode undirected";
    let mut out: Vec<String> = lines.iter().map(|l| format!("  {l}  # header")).collect();
    for line in body.iter().rev() {
        let mut f: Vec<String> = line.split(' ').map(str::to_owned).collect();
        let last = f.len() - 1;
        let x: Rational = f[last].parse().unwrap();
        let k = rng.gen_range(1..=3);
        f[last] = format!("{}/{}", x.numer() * k, x.denom() * k);
        if f[0] == "e" && undirected && rng.gen_ratio(1, 2) {
            f.swap(1, 2);
        }
        out.push(f.join("\t"));
        if rng.gen_ratio(1, 3) {
            out.push("# note".into());
        }
    }
    out.join("\n")
}

/// Every instance with at most four vertices, integer thresholds in 0..=3
/// and integer weights in 1..=3 (0..=3 for n <= 3), undirected; directed
/// with n <= 3 and weights in 1..=3.
fn otv_grid(exec: Execution) -> Outcomes {
    let mut classes = Vec::new();
    for n in 1..=4 {
        let weights: &[u8] = if n <= 3 { &[0, 1, 2, 3] } else { &[1, 2, 3] };
        classes.extend(small_instances(Mode::Undirected, n, weights));
    }
    for n in 2..=3 {
        classes.extend(small_instances(Mode::Directed, n, &[1, 2, 3]));
    }
    exec::map(exec, &classes, |inst| {
        let dp = exact_otv(inst, &oracle())?.optimum;
        let grid = grid_search(inst)?;
        ensure!(
            dp == grid,
            "order DP {dp} vs grid {grid} on\n{}",
            serialize_wtg(inst, None)
        );
        Ok(Some(match inst.mode() {
            Mode::Undirected => "undirected",
            Mode::Directed => "directed",
        }))
    })
}

/// Cheapest integer vector with `0 <= p(v) <= τ(v)` that activates the graph,
/// by scanning all of them with the engine.
fn grid_search(inst: &Instance) -> Result<Rational, Failure> {
    let caps: Vec<i64> = inst.thresholds().iter().map(|t| t.numer()).collect();
    let mut vectors: Vec<Vec<i64>> = vec![vec![]];
    for &cap in &caps {
        vectors = vectors
            .into_iter()
            .flat_map(|p| (0..=cap).map(move |x| [p.as_slice(), &[x]].concat()))
            .collect();
    }
    vectors.sort_by_key(|p| p.iter().sum::<i64>());
    for p in vectors {
        let p = IncentiveVector::new(p.into_iter().map(Rational::from).collect())?;
        if is_target_vector(inst, &p)? {
            return Ok(p.cost());
        }
    }
    Err(Failure(
        "paying every threshold in full did not activate".into(),
    ))
}

/// Every labelled instance on `n` vertices whose edge slots are empty or
/// carry one of `weights`, with thresholds in 0..=3.
fn small_instances(mode: Mode, n: usize, weights: &[u8]) -> Vec<Instance> {
    let slots: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .filter(|&(u, v)| match mode {
            Mode::Undirected => u < v,
            Mode::Directed => u != v,
        })
        .collect();
    let choices: Vec<Option<u8>> = std::iter::once(None)
        .chain(weights.iter().map(|&w| Some(w)))
        .collect();
    let mut out = Vec::new();
    let radix = choices.len();
    let total_w = radix.pow(slots.len() as u32);
    for wi in 0..total_w {
        let mut k = wi;
        let w: Vec<Option<u8>> = slots
            .iter()
            .map(|_| {
                let c = choices[k % radix];
                k /= radix;
                c
            })
            .collect();
        for ti in 0..4usize.pow(n as u32) {
            let taus: Vec<u8> = (0..n)
                .map(|i| (ti / 4usize.pow(i as u32) % 4) as u8)
                .collect();
            let edges = slots
                .iter()
                .zip(&w)
                .filter_map(|(&(u, v), x)| {
                    x.map(|x| Edge::new(u + 1, v + 1, Rational::from(x as i64)))
                })
                .collect();
            let taus = taus.iter().map(|&t| Rational::from(t as i64)).collect();
            out.push(Instance::new(mode, taus, edges).expect("enumerated instances are valid"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique() {
        let mut names: Vec<_> = SWEEPS.iter().map(|s| s.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), SWEEPS.len());
        assert!(find("kappa").is_some());
        assert!(find("nope").is_none());
    }

    #[test]
    fn small_sweeps_pass_in_both_modes() {
        for sweep in SWEEPS.iter().filter(|s| s.default_cases.is_some()) {
            let mut reports = Vec::new();
            for exec in [Execution::Sequential, Execution::Parallel] {
                let cfg = SweepConfig {
                    cases: Some(6),
                    seed: 11,
                    exec,
                };
                reports.push(sweep.run(&cfg));
            }
            assert!(
                reports[0].passed(),
                "{}: {:?}",
                sweep.name,
                reports[0].failures
            );
            assert_eq!(reports[0], reports[1]);
        }
    }

    #[test]
    fn small_instance_counts() {
        // Edge absent or weight 1, thresholds 0..=3 on each vertex.
        assert_eq!(small_instances(Mode::Undirected, 2, &[1]).len(), 2 * 16);
        assert_eq!(small_instances(Mode::Directed, 2, &[1, 2]).len(), 9 * 16);
    }
}
