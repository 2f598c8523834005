//! JSON reports. Every rational is written as an exact string ("3/2"), sets
//! as ascending id arrays. Key order is fixed, so equal inputs give
//! byte-identical output once `wall_time_us` is dropped.

use std::time::Duration;

use dynmono::degeneracy::{DegeneracyOrdering, Peel};
use dynmono::engine::{ActivationTrace, IncentiveVector};
use dynmono::oracles::OracleResult;
use dynmono::reductions::ReductionReceipt;
use dynmono::solvers::{ApproxTargetSetResult, SolveReport};
use dynmono::sweeps::SweepReport;
use dynmono::wtg::serialize_wtg;
use dynmono::{Instance, VertexSet};
use serde_json::{json, Map, Value};

/// A report under construction: an ordered key/value object.
pub struct Report {
    fields: Map<String, Value>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut fields = Map::new();
        fields.insert("command".into(), json!(command));
        Report { fields }
    }

    pub fn set(&mut self, key: &str, value: impl serde::Serialize) -> &mut Self {
        let value = serde_json::to_value(value).expect("report values serialize");
        self.fields.insert(key.into(), value);
        self
    }

    pub fn merge(&mut self, other: Value) -> &mut Self {
        if let Value::Object(map) = other {
            self.fields.extend(map);
        }
        self
    }

    /// Pretty JSON with a trailing newline; `wall_time` is appended unless
    /// `None`.
    pub fn render(mut self, wall_time: Option<Duration>) -> String {
        if let Some(t) = wall_time {
            self.fields
                .insert("wall_time_us".into(), json!(t.as_micros() as u64));
        }
        let mut text =
            serde_json::to_string_pretty(&Value::Object(self.fields)).expect("valid JSON");
        text.push('\n');
        text
    }
}

pub fn instance_summary(inst: &Instance) -> Value {
    json!({
        "mode": inst.mode(),
        "n": inst.n(),
        "edges": inst.num_edges(),
        "total_threshold": inst.total_threshold(),
        "total_weight": inst.total_weight(),
    })
}

pub fn trace(t: &ActivationTrace) -> Value {
    json!({
        "rounds": t.rounds(),
        "num_rounds": t.num_rounds(),
        "final_active": t.final_active(),
        "activates_all": t.activates_all(),
    })
}

pub fn ordering(o: &DegeneracyOrdering) -> Value {
    json!({
        "order": o.order(),
        "slacks": o.slacks_in_order(),
        "total_slack": o.total_slack(),
    })
}

pub fn peel(p: &Peel) -> Value {
    match p {
        Peel::Ordering(o) => json!({ "degenerate": true, "ordering": ordering(o) }),
        Peel::Stuck(h) => json!({ "degenerate": false, "witness": h }),
    }
}

pub fn solve(r: &SolveReport) -> Value {
    json!({
        "method": r.method.as_str(),
        "cost": r.cost,
        "witness": incentives(&r.p),
        "certificate": r.certificate,
    })
}

pub fn incentives(p: &IncentiveVector) -> Value {
    json!(p.values())
}

pub fn approx(r: &ApproxTargetSetResult) -> Value {
    json!({
        "method": "algorithm-one",
        "size": r.set.len(),
        "witness": r.set,
        "tau_max": r.tau_max,
        "c": r.c,
        "claimed_ratio": r.claimed_ratio,
        "ordering": ordering(&r.ordering),
    })
}

pub fn cover(set: &VertexSet) -> Value {
    json!({ "method": "vc-bound", "size": set.len(), "witness": set })
}

pub fn oracle(kind: &str, r: &OracleResult) -> Value {
    json!({
        "oracle": kind,
        "optimum": r.optimum,
        "witness": r.witness,
        "explored": r.explored,
    })
}

pub fn receipt(r: &ReductionReceipt) -> Value {
    json!({
        "reduction": r.kind,
        "weight_scheme": r.weight_scheme,
        "correspondence": r.correspondence,
        "added_vertex": r.added_vertex,
        "image_summary": instance_summary(&r.image),
        "image": serialize_wtg(&r.image, None),
    })
}

pub fn sweep(r: &SweepReport) -> Value {
    json!({
        "name": r.name,
        "passed": r.passed(),
        "cases": r.cases,
        "tally": r.tally,
        "failures": r.failures,
    })
}
