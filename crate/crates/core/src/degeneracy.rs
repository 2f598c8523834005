//! Degenerate threshold assignments.
//!
//! `τ` is degenerate when every nonempty induced subgraph `H` has a vertex
//! `x` with `τ(x) ≥ Σ_{e ∈ E(x,H)} ω(e)`. Equivalently there is an ordering
//! `u_1..u_n` in which each vertex's threshold covers the weight to its
//! predecessors; the difference is the vertex's slack.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::compiled::Compiled;
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::instance::{Instance, Mode};
use crate::rational::Rational;
use crate::vertex_set::VertexSet;

pub const DEFAULT_BRUTE_LIMIT: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegeneracyOrdering {
    order: Vec<usize>,
    // slacks[v - 1]
    slacks: Vec<Rational>,
}

impl DegeneracyOrdering {
    /// Checks a proposed ordering and computes its slacks. Fails if `order`
    /// is not a permutation of the vertices or some slack is negative.
    pub fn from_order(instance: &Instance, order: Vec<usize>) -> Result<Self> {
        require_undirected(instance)?;
        let n = instance.n();
        let mut placed = VertexSet::empty(n);
        let mut slacks = vec![Rational::ZERO; n];
        if order.len() != n {
            return Err(Error::Precondition(format!(
                "ordering has {} entries, instance has {n} vertices",
                order.len()
            )));
        }
        for &v in &order {
            if !instance.contains_vertex(v) || placed.contains(v) {
                return Err(Error::Precondition(format!(
                    "ordering is not a permutation (vertex {v})"
                )));
            }
            let slack = instance.threshold(v) - instance.incident_weight_sum(v, &placed)?;
            if slack.is_negative() {
                return Err(Error::Precondition(format!(
                    "vertex {v} has negative slack {slack} in the ordering"
                )));
            }
            slacks[v - 1] = slack;
            placed.insert(v);
        }
        Ok(DegeneracyOrdering { order, slacks })
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// `τ(v)` minus the weight from `v` to its predecessors.
    pub fn slack(&self, v: usize) -> Rational {
        self.slacks[v - 1]
    }

    pub fn slacks_in_order(&self) -> Vec<Rational> {
        self.order.iter().map(|&v| self.slack(v)).collect()
    }

    pub fn total_slack(&self) -> Rational {
        self.slacks.iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Peel {
    Ordering(DegeneracyOrdering),
    /// Induced subgraph where no vertex qualifies for deletion.
    Stuck(VertexSet),
}

impl Peel {
    pub fn ordering(self) -> Result<DegeneracyOrdering> {
        match self {
            Peel::Ordering(o) => Ok(o),
            Peel::Stuck(witness) => Err(Error::NotDegenerate { witness }),
        }
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self, Peel::Ordering(_))
    }
}

fn require_undirected(instance: &Instance) -> Result<()> {
    match instance.mode() {
        Mode::Undirected => Ok(()),
        Mode::Directed => Err(Error::RequiresUndirected),
    }
}

/// Greedy reverse peeling: repeatedly delete the smallest-id vertex whose
/// threshold covers its residual incident weight. The reversed deletion order
/// is a degeneracy ordering.
pub fn peel_ordering(instance: &Instance) -> Result<Peel> {
    require_undirected(instance)?;
    let n = instance.n();
    let mut residual: Vec<Rational> = instance
        .vertices()
        .map(|v| instance.full_incident_sum(v))
        .collect();
    let mut removed = vec![false; n];
    let qualifies = |v: usize, residual: &[Rational]| instance.threshold(v) >= residual[v - 1];
    let mut ready: BTreeSet<usize> = instance
        .vertices()
        .filter(|&v| qualifies(v, &residual))
        .collect();
    let mut deletion = Vec::with_capacity(n);
    let mut slacks = vec![Rational::ZERO; n];

    while let Some(x) = ready.pop_first() {
        removed[x - 1] = true;
        slacks[x - 1] = instance.threshold(x) - residual[x - 1];
        deletion.push(x);
        for &(y, w) in instance.in_neighbors(x) {
            if removed[y - 1] {
                continue;
            }
            residual[y - 1] -= w;
            if qualifies(y, &residual) {
                ready.insert(y);
            }
        }
    }

    if deletion.len() < n {
        let stuck = VertexSet::from_ids(n, (1..=n).filter(|v| !removed[v - 1])).unwrap();
        return Ok(Peel::Stuck(stuck));
    }
    deletion.reverse();
    Ok(Peel::Ordering(DegeneracyOrdering {
        order: deletion,
        slacks,
    }))
}

/// First (smallest mask) nonempty induced subgraph with no qualifying vertex.
pub fn brute_degeneracy_witness(
    instance: &Instance,
    limit: usize,
    exec: Execution,
) -> Result<Option<VertexSet>> {
    require_undirected(instance)?;
    let n = instance.n();
    if n > limit {
        return Err(Error::TooLarge { n, limit });
    }
    let c = Compiled::new(instance)?;
    let bad = exec::min_over_range(exec, 1u64 << n, |mask| {
        if mask == 0 {
            return None;
        }
        let mut bits = mask;
        while bits != 0 {
            let x = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if c.thresholds[x] >= c.weight_from(x, mask) {
                return None;
            }
        }
        Some(mask)
    });
    Ok(bad.map(|m| VertexSet::from_mask(n, m)))
}

/// Checks all `2^n - 1` nonempty induced subgraphs directly.
pub fn brute_degeneracy_check(instance: &Instance, limit: usize, exec: Execution) -> Result<bool> {
    Ok(brute_degeneracy_witness(instance, limit, exec)?.is_none())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FullVertexCondition {
    Holds,
    HypothesisFailed,
}

/// Sufficient condition for degeneracy on a connected graph: every vertex
/// has `τ(u) ≥ Σ_u − μ` and some vertex has `τ(x) ≥ Σ_x`.
pub fn full_vertex_condition(instance: &Instance) -> Result<FullVertexCondition> {
    require_undirected(instance)?;
    let mu = instance.min_edge_weight()?;
    if !instance.is_connected() {
        return Err(Error::Disconnected);
    }
    let low_ok = instance
        .vertices()
        .all(|u| instance.threshold(u) >= instance.full_incident_sum(u) - mu);
    let some_full = instance
        .vertices()
        .any(|x| instance.threshold(x) >= instance.full_incident_sum(x));
    Ok(if low_ok && some_full {
        FullVertexCondition::Holds
    } else {
        FullVertexCondition::HypothesisFailed
    })
}

/// For unit weights and integer thresholds: whether `V \ D` orders as
/// `v_1..v_k` with each `v_i` having at most `κ(v_i) = d(v_i) − τ(v_i)`
/// neighbors among `v_1..v_{i-1}`.
pub fn kappa_complement_check(instance: &Instance, d: &VertexSet) -> Result<bool> {
    if !instance.has_unit_weights() {
        return Err(Error::Precondition("kappa check needs unit weights".into()));
    }
    if !instance.has_integer_thresholds() {
        return Err(Error::Precondition(
            "kappa check needs integer thresholds".into(),
        ));
    }
    if let Some(v) = d.iter().find(|&v| !instance.contains_vertex(v)) {
        return Err(Error::UnknownVertex(v));
    }
    let n = instance.n();
    let kappa: Vec<i64> = instance
        .vertices()
        .map(|v| instance.degree(v) as i64 - instance.threshold(v).numer())
        .collect();
    let mut remaining = d.complement();
    let mut inner_degree: Vec<i64> = instance
        .vertices()
        .map(|v| {
            instance
                .in_neighbors(v)
                .iter()
                .filter(|(u, _)| remaining.contains(*u))
                .count() as i64
        })
        .collect();
    // Peel from the back: the last vertex of the ordering sees all of its
    // remaining neighbors as predecessors.
    let mut ready: BTreeSet<usize> = remaining
        .iter()
        .filter(|&v| inner_degree[v - 1] <= kappa[v - 1])
        .collect();
    let mut peeled = 0;
    let target = remaining.len();
    while let Some(x) = ready.pop_first() {
        remaining.remove(x);
        peeled += 1;
        for &(y, _) in instance.in_neighbors(x) {
            if remaining.contains(y) {
                inner_degree[y - 1] -= 1;
                if inner_degree[y - 1] <= kappa[y - 1] {
                    ready.insert(y);
                }
            }
        }
    }
    debug_assert!(peeled <= n);
    Ok(peeled == target)
}
