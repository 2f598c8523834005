//! Seeded instance generators. The same [`GenSpec`] always yields the same
//! instance (ChaCha8 stream seeded from `seed`).

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::instance::{Edge, Instance, Mode};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Erdős–Rényi graph, thresholds by policy.
    Random,
    /// Degenerate by construction (ordering drawn first).
    Degenerate,
    /// 3-regular, unit weights, thresholds in {1, 2}.
    CubicT12,
    /// Orientation of `K_n` with positive weights.
    Tournament,
    /// Connected graph with every `τ(u) ∈ {Σ_u − μ, Σ_u}`.
    TwoLevel,
    /// Graph with at least one edge and every `τ(u) ∈ {μ, Σ_u}`.
    MinOrFull,
    /// Unit weights, no isolated vertices, integer `1 ≤ τ(v) ≤ d(v)`.
    UnitTss,
}

impl Family {
    pub fn parse(s: &str) -> Option<Family> {
        Some(match s {
            "random" => Family::Random,
            "degenerate" => Family::Degenerate,
            "cubic" | "cubic-t12" => Family::CubicT12,
            "tournament" => Family::Tournament,
            "two-level" => Family::TwoLevel,
            "min-or-full" => Family::MinOrFull,
            "unit-tss" => Family::UnitTss,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightGrid {
    Unit,
    /// Uniform over `1..=max`.
    Integers {
        max: i64,
    },
    /// Uniform over `k/2` for `k` in `1..=2·max`.
    Halves {
        max: i64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThresholdPolicy {
    /// Uniform over multiples of 1/2 in `[0, Σ_v]`.
    Uniform,
    Fixed(Rational),
    /// Degenerate family: random slack on top of the covered weight.
    RandomSlack,
    /// Degenerate family: no slack anywhere.
    ZeroSlack,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenSpec {
    pub family: Family,
    pub n: usize,
    /// Edge probability for the families that draw a random graph.
    pub edge_prob: Rational,
    pub weights: WeightGrid,
    pub thresholds: ThresholdPolicy,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(family: Family, n: usize, seed: u64) -> Self {
        GenSpec {
            family,
            n,
            edge_prob: Rational::new(1, 2),
            weights: WeightGrid::Integers { max: 10 },
            thresholds: match family {
                Family::Degenerate => ThresholdPolicy::RandomSlack,
                _ => ThresholdPolicy::Uniform,
            },
            seed,
        }
    }

    pub fn with_edge_prob(mut self, p: Rational) -> Self {
        self.edge_prob = p;
        self
    }

    pub fn with_weights(mut self, w: WeightGrid) -> Self {
        self.weights = w;
        self
    }

    pub fn with_thresholds(mut self, t: ThresholdPolicy) -> Self {
        self.thresholds = t;
        self
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

pub fn generate(spec: &GenSpec) -> Result<Instance> {
    match spec.family {
        Family::Random => gen_random_weighted(spec),
        Family::Degenerate => gen_degenerate(spec),
        Family::CubicT12 => gen_cubic_t12(spec),
        Family::Tournament => gen_tournament(spec),
        Family::TwoLevel => gen_two_level(spec),
        Family::MinOrFull => gen_min_or_full(spec),
        Family::UnitTss => gen_unit_tss(spec),
    }
}

fn check_spec(spec: &GenSpec, min_n: usize) -> Result<()> {
    if spec.n < min_n {
        return Err(Error::Precondition(format!(
            "family needs n >= {min_n}, got {}",
            spec.n
        )));
    }
    let p = spec.edge_prob;
    if p.is_negative() || p > Rational::ONE {
        return Err(Error::Precondition(format!(
            "edge probability {p} outside [0, 1]"
        )));
    }
    match spec.weights {
        WeightGrid::Integers { max } | WeightGrid::Halves { max } if max < 1 => Err(
            Error::Precondition(format!("weight grid maximum {max} must be positive")),
        ),
        _ => Ok(()),
    }
}

fn coin(rng: &mut ChaCha8Rng, p: Rational) -> bool {
    if p.is_zero() {
        return false;
    }
    if p == Rational::ONE {
        return true;
    }
    rng.gen_ratio(p.numer() as u32, p.denom() as u32)
}

fn draw_weight(rng: &mut ChaCha8Rng, grid: WeightGrid) -> Rational {
    match grid {
        WeightGrid::Unit => Rational::ONE,
        WeightGrid::Integers { max } => Rational::from(rng.gen_range(1..=max)),
        WeightGrid::Halves { max } => Rational::new(rng.gen_range(1..=2 * max), 2),
    }
}

/// Uniform over multiples of 1/2 in `[0, cap]`.
fn draw_half_step(rng: &mut ChaCha8Rng, cap: Rational) -> Rational {
    let doubled = cap * Rational::from(2);
    let steps = doubled.numer().div_euclid(doubled.denom());
    Rational::new(rng.gen_range(0..=steps.max(0)), 2)
}

fn random_edges(rng: &mut ChaCha8Rng, n: usize, p: Rational, grid: WeightGrid) -> Vec<Edge> {
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            if coin(rng, p) {
                edges.push(Edge::new(u, v, draw_weight(rng, grid)));
            }
        }
    }
    edges
}

fn incident_sums(n: usize, edges: &[Edge]) -> Vec<Rational> {
    let mut sums = vec![Rational::ZERO; n + 1];
    for e in edges {
        sums[e.u] += e.weight;
        sums[e.v] += e.weight;
    }
    sums
}

pub fn gen_random_weighted(spec: &GenSpec) -> Result<Instance> {
    check_spec(spec, 1)?;
    let mut rng = spec.rng();
    let edges = random_edges(&mut rng, spec.n, spec.edge_prob, spec.weights);
    let sums = incident_sums(spec.n, &edges);
    let thresholds = (1..=spec.n)
        .map(|v| match spec.thresholds {
            ThresholdPolicy::Fixed(t) => t,
            _ => draw_half_step(&mut rng, sums[v]),
        })
        .collect();
    Ok(Instance::new(Mode::Undirected, thresholds, edges)?)
}

/// Thresholds that make `order` a degeneracy ordering: each vertex gets the
/// weight to its predecessors plus its slack (`slacks[i]` for `order[i]`).
pub fn degenerate_from_order(
    n: usize,
    order: &[usize],
    edges: Vec<Edge>,
    slacks: &[Rational],
) -> Result<Instance> {
    let mut position = vec![usize::MAX; n + 1];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let mut thresholds = vec![Rational::ZERO; n];
    for (i, &v) in order.iter().enumerate() {
        thresholds[v - 1] = slacks[i];
    }
    for e in &edges {
        let later = if position[e.u] > position[e.v] {
            e.u
        } else {
            e.v
        };
        thresholds[later - 1] += e.weight;
    }
    Ok(Instance::new(Mode::Undirected, thresholds, edges)?)
}

pub fn gen_degenerate(spec: &GenSpec) -> Result<Instance> {
    check_spec(spec, 1)?;
    let mut rng = spec.rng();
    let mut order: Vec<usize> = (1..=spec.n).collect();
    order.shuffle(&mut rng);
    let edges = random_edges(&mut rng, spec.n, spec.edge_prob, spec.weights);
    let slacks: Vec<Rational> = (0..spec.n)
        .map(|_| match spec.thresholds {
            ThresholdPolicy::ZeroSlack => Rational::ZERO,
            ThresholdPolicy::Fixed(t) => t,
            _ => {
                if rng.gen_ratio(1, 2) {
                    Rational::ZERO
                } else {
                    draw_weight(&mut rng, spec.weights)
                }
            }
        })
        .collect();
    degenerate_from_order(spec.n, &order, edges, &slacks)
}

/// Random 3-regular simple graph by the pairing model, rejecting pairings
/// with loops or repeated edges.
pub fn gen_cubic_t12(spec: &GenSpec) -> Result<Instance> {
    let n = spec.n;
    if n < 4 || n % 2 == 1 {
        return Err(Error::Precondition(format!(
            "3-regular graphs need an even n >= 4, got {n}"
        )));
    }
    let mut rng = spec.rng();
    let edges = loop {
        let mut points: Vec<usize> = (1..=n).flat_map(|v| [v, v, v]).collect();
        points.shuffle(&mut rng);
        let mut pairs: Vec<(usize, usize)> = points
            .chunks(2)
            .map(|c| (c[0].min(c[1]), c[0].max(c[1])))
            .collect();
        pairs.sort_unstable();
        let simple = pairs.iter().all(|(u, v)| u != v) && pairs.windows(2).all(|w| w[0] != w[1]);
        if simple {
            break pairs;
        }
    };
    let thresholds = (0..n)
        .map(|_| Rational::from(rng.gen_range(1..=2)))
        .collect();
    let edges = edges
        .into_iter()
        .map(|(u, v)| Edge::new(u, v, Rational::ONE))
        .collect();
    Ok(Instance::new(Mode::Undirected, thresholds, edges)?)
}

pub fn gen_tournament(spec: &GenSpec) -> Result<Instance> {
    check_spec(spec, 2)?;
    let mut rng = spec.rng();
    let n = spec.n;
    let mut arcs = Vec::new();
    let mut in_sum = vec![Rational::ZERO; n + 1];
    for u in 1..=n {
        for v in u + 1..=n {
            let w = draw_weight(&mut rng, spec.weights);
            let (a, b) = if rng.gen_ratio(1, 2) { (u, v) } else { (v, u) };
            in_sum[b] += w;
            arcs.push(Edge::new(a, b, w));
        }
    }
    let thresholds = (1..=n)
        .map(|v| match spec.thresholds {
            ThresholdPolicy::Fixed(t) => t.min(in_sum[v]),
            _ => draw_half_step(&mut rng, in_sum[v]),
        })
        .collect();
    Ok(Instance::new(Mode::Directed, thresholds, arcs)?)
}

/// Random spanning tree (each vertex attaches to an earlier one) plus
/// independent extra edges.
fn connected_edges(rng: &mut ChaCha8Rng, n: usize, p: Rational, grid: WeightGrid) -> Vec<Edge> {
    let mut edges = Vec::new();
    let mut order: Vec<usize> = (1..=n).collect();
    order.shuffle(rng);
    let mut present = std::collections::HashSet::new();
    for i in 1..n {
        let u = order[i];
        let v = order[rng.gen_range(0..i)];
        present.insert((u.min(v), u.max(v)));
    }
    for u in 1..=n {
        for v in u + 1..=n {
            if present.contains(&(u, v)) || coin(rng, p) {
                edges.push(Edge::new(u, v, draw_weight(rng, grid)));
            }
        }
    }
    edges
}

pub fn gen_two_level(spec: &GenSpec) -> Result<Instance> {
    check_spec(spec, 2)?;
    let mut rng = spec.rng();
    let edges = connected_edges(&mut rng, spec.n, spec.edge_prob, spec.weights);
    let sums = incident_sums(spec.n, &edges);
    let mu = edges.iter().map(|e| e.weight).min().expect("n >= 2");
    // Half of the instances exercise the all-low branch.
    let all_low = rng.gen_ratio(1, 2);
    let thresholds = (1..=spec.n)
        .map(|v| {
            if all_low || rng.gen_ratio(1, 2) {
                sums[v] - mu
            } else {
                sums[v]
            }
        })
        .collect();
    Ok(Instance::new(Mode::Undirected, thresholds, edges)?)
}

pub fn gen_min_or_full(spec: &GenSpec) -> Result<Instance> {
    check_spec(spec, 2)?;
    let mut rng = spec.rng();
    let mut edges = random_edges(&mut rng, spec.n, spec.edge_prob, spec.weights);
    if edges.is_empty() {
        let u = rng.gen_range(1..=spec.n);
        let v = loop {
            let v = rng.gen_range(1..=spec.n);
            if v != u {
                break v;
            }
        };
        edges.push(Edge::new(
            u.min(v),
            u.max(v),
            draw_weight(&mut rng, spec.weights),
        ));
    }
    let sums = incident_sums(spec.n, &edges);
    let mu = edges.iter().map(|e| e.weight).min().unwrap();
    let thresholds = (1..=spec.n)
        .map(|v| if rng.gen_ratio(1, 2) { mu } else { sums[v] })
        .collect();
    Ok(Instance::new(Mode::Undirected, thresholds, edges)?)
}

pub fn gen_unit_tss(spec: &GenSpec) -> Result<Instance> {
    check_spec(spec, 2)?;
    let mut rng = spec.rng();
    let n = spec.n;
    let mut edges = random_edges(&mut rng, n, spec.edge_prob, WeightGrid::Unit);
    let mut degree = vec![0usize; n + 1];
    for e in &edges {
        degree[e.u] += 1;
        degree[e.v] += 1;
    }
    for v in 1..=n {
        if degree[v] == 0 {
            let u = loop {
                let u = rng.gen_range(1..=n);
                if u != v {
                    break u;
                }
            };
            edges.push(Edge::new(u.min(v), u.max(v), Rational::ONE));
            degree[u] += 1;
            degree[v] += 1;
        }
    }
    let thresholds = (1..=n)
        .map(|v| Rational::from(rng.gen_range(1..=degree[v] as i64)))
        .collect();
    Ok(Instance::new(Mode::Undirected, thresholds, edges)?)
}
