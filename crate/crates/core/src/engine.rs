//! Round-based activation process, with and without incentives.
//!
//! Round 0 activates the seed plus every vertex whose own incentive already
//! covers its threshold (with no incentives that is every `τ(v) ≤ 0`). In
//! round `t + 1` an inactive vertex `x` activates when the weight arriving
//! from all vertices active after round `t`, plus its incentive, reaches
//! `τ(x)`. Activation within a round is simultaneous and irreversible. In
//! directed mode only arcs into `x` count.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::rational::Rational;
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ActivationTrace {
    rounds: Vec<VertexSet>,
    final_active: VertexSet,
}

impl ActivationTrace {
    /// Newly activated vertices per round; `rounds()[0]` is the seed round.
    pub fn rounds(&self) -> &[VertexSet] {
        &self.rounds
    }

    pub fn final_active(&self) -> &VertexSet {
        &self.final_active
    }

    /// Index `t` of the last round.
    pub fn num_rounds(&self) -> usize {
        self.rounds.len() - 1
    }

    pub fn activates_all(&self) -> bool {
        self.final_active.is_full()
    }
}

/// Per-vertex incentives `p(v) ≥ 0`; entry `i` belongs to vertex `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct IncentiveVector(Vec<Rational>);

impl IncentiveVector {
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        if let Some(i) = values.iter().position(Rational::is_negative) {
            return Err(Error::NegativeIncentive(i + 1));
        }
        Ok(IncentiveVector(values))
    }

    pub fn zeros(n: usize) -> Self {
        IncentiveVector(vec![Rational::ZERO; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: usize) -> Rational {
        self.0[v - 1]
    }

    pub fn set(&mut self, v: usize, value: Rational) {
        assert!(!value.is_negative());
        self.0[v - 1] = value;
    }

    pub fn add(&mut self, v: usize, value: Rational) {
        self.set(v, self.get(v) + value);
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    /// `p(V) = Σ p(v)`.
    pub fn cost(&self) -> Rational {
        self.0.iter().sum()
    }

    /// Vertices with a nonzero incentive.
    pub fn support(&self) -> Vec<usize> {
        (1..=self.len())
            .filter(|&v| !self.get(v).is_zero())
            .collect()
    }
}

pub fn incentive_cost(p: &IncentiveVector) -> Rational {
    p.cost()
}

fn spread(
    instance: &Instance,
    seed: &VertexSet,
    bonus: Option<&IncentiveVector>,
) -> ActivationTrace {
    let n = instance.n();
    let bonus_of = |v: usize| bonus.map_or(Rational::ZERO, |p| p.get(v));
    let mut received = vec![Rational::ZERO; n + 1];
    let mut active = VertexSet::empty(n);
    let mut rounds = Vec::new();

    let mut current = seed.clone();
    for v in instance.vertices() {
        if bonus_of(v) >= instance.threshold(v) {
            current.insert(v);
        }
    }
    loop {
        active.union_with(&current);
        for u in current.iter() {
            for &(v, w) in instance.out_neighbors(u) {
                received[v] += w;
            }
        }
        rounds.push(current);
        let mut next = VertexSet::empty(n);
        for v in instance.vertices() {
            if !active.contains(v) && received[v] + bonus_of(v) >= instance.threshold(v) {
                next.insert(v);
            }
        }
        if next.is_empty() {
            break;
        }
        current = next;
    }
    ActivationTrace {
        rounds,
        final_active: active,
    }
}

fn check_seed(instance: &Instance, seed: &VertexSet) -> Result<()> {
    if let Some(v) = seed.iter().find(|&v| v > instance.n()) {
        return Err(Error::UnknownVertex(v));
    }
    if seed.universe() != instance.n() {
        return Err(Error::Precondition(format!(
            "seed set over {} vertices used with an instance of {}",
            seed.universe(),
            instance.n()
        )));
    }
    Ok(())
}

fn check_incentives(instance: &Instance, p: &IncentiveVector) -> Result<()> {
    if p.len() != instance.n() {
        return Err(Error::IncentiveLength {
            expected: instance.n(),
            got: p.len(),
        });
    }
    Ok(())
}

pub fn run_activation(instance: &Instance, seed: &VertexSet) -> Result<ActivationTrace> {
    check_seed(instance, seed)?;
    Ok(spread(instance, seed, None))
}

pub fn run_with_incentives(instance: &Instance, p: &IncentiveVector) -> Result<ActivationTrace> {
    check_incentives(instance, p)?;
    Ok(spread(instance, &VertexSet::empty(instance.n()), Some(p)))
}

pub fn is_target_set(instance: &Instance, seed: &VertexSet) -> Result<bool> {
    Ok(run_activation(instance, seed)?.activates_all())
}

pub fn is_target_vector(instance: &Instance, p: &IncentiveVector) -> Result<bool> {
    Ok(run_with_incentives(instance, p)?.activates_all())
}
