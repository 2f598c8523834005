//! Polynomial-time algorithms for target sets and optimal target vectors on
//! special threshold patterns.
//!
//! * [`algorithm_one`]: approximate minimum target set for degenerate `τ`.
//! * [`otvw_degenerate`]: exact optimal target vector for degenerate `τ`.
//! * [`otvw_two_level`]: exact, when every `τ(u)` is `Σ_u − μ` or `Σ_u`.
//! * [`otvw_min_or_full`]: exact, when every `τ(u)` is `μ` or `Σ_u`.
//!
//! Here `Σ_u` is the total weight incident to `u` and `μ` the minimum edge
//! weight. Every [`SolveReport`] is checked through the activation engine
//! when it is built.

use serde::Serialize;

use crate::degeneracy::{peel_ordering, DegeneracyOrdering, Peel};
use crate::engine::{is_target_set, is_target_vector, IncentiveVector};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::instance::{Edge, Instance, Mode};
use crate::rational::Rational;
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ApproxTargetSetResult {
    pub set: VertexSet,
    pub tau_max: Rational,
    /// Minimum positive slack among selected vertices; `None` when nothing
    /// was selected.
    pub c: Option<Rational>,
    /// `tau_max / c`.
    pub claimed_ratio: Option<Rational>,
    pub ordering: DegeneracyOrdering,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Degenerate,
    TwoLevel,
    MinOrFull,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Degenerate => "degenerate",
            Method::TwoLevel => "two-level",
            Method::MinOrFull => "min-or-full",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Certificate {
    /// Degeneracy ordering whose slacks are the incentives.
    Ordering { order: Vec<usize> },
    /// Two-level input with a vertex whose threshold equals its incident sum;
    /// solved as degenerate.
    FullVertex { vertex: usize, order: Vec<usize> },
    /// Two-level input with all thresholds low: one minimum-weight edge was
    /// dropped and every remaining component solved as degenerate.
    RemovedEdge {
        u: usize,
        v: usize,
        weight: Rational,
        components: Vec<Vec<usize>>,
    },
    /// Min-or-full input solved on the subdivided contraction graph.
    Contraction {
        mu: Rational,
        components: Vec<Vec<usize>>,
        subdivisions: usize,
        aux_vertices: usize,
        aux_cost: Rational,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveReport {
    pub method: Method,
    pub p: IncentiveVector,
    pub cost: Rational,
    pub certificate: Certificate,
}

impl SolveReport {
    /// Fails with [`Error::Unverified`] unless `p` activates the instance.
    pub fn new(
        instance: &Instance,
        method: Method,
        p: IncentiveVector,
        certificate: Certificate,
    ) -> Result<Self> {
        if !is_target_vector(instance, &p)? {
            return Err(Error::Unverified);
        }
        Ok(SolveReport {
            method,
            cost: p.cost(),
            p,
            certificate,
        })
    }
}

fn require_undirected(instance: &Instance) -> Result<()> {
    match instance.mode() {
        Mode::Undirected => Ok(()),
        Mode::Directed => Err(Error::RequiresUndirected),
    }
}

/// Selects every vertex with positive slack in a degeneracy ordering.
pub fn algorithm_one(instance: &Instance) -> Result<ApproxTargetSetResult> {
    let ordering = peel_ordering(instance)?.ordering()?;
    let n = instance.n();
    let selected: Vec<usize> = ordering
        .order()
        .iter()
        .copied()
        .filter(|&v| ordering.slack(v).is_positive())
        .collect();
    let c = selected.iter().map(|&v| ordering.slack(v)).min();
    let tau_max = instance.max_threshold();
    let set = VertexSet::from_ids(n, selected).expect("ids come from the instance");
    if !is_target_set(instance, &set)? {
        return Err(Error::Unverified);
    }
    Ok(ApproxTargetSetResult {
        claimed_ratio: c.map(|c| tau_max / c),
        set,
        tau_max,
        c,
        ordering,
    })
}

/// Optimal target vector along a degeneracy ordering: pay each vertex its
/// slack. The cost is `Στ − Σω`.
pub fn otvw_degenerate(instance: &Instance) -> Result<SolveReport> {
    let ordering = peel_ordering(instance)?.ordering()?;
    let p = slack_vector(instance, &ordering);
    SolveReport::new(
        instance,
        Method::Degenerate,
        p,
        Certificate::Ordering {
            order: ordering.order().to_vec(),
        },
    )
}

fn slack_vector(instance: &Instance, ordering: &DegeneracyOrdering) -> IncentiveVector {
    IncentiveVector::new(instance.vertices().map(|v| ordering.slack(v)).collect())
        .expect("slacks of a degeneracy ordering are nonnegative")
}

/// `max(0, Στ − Σω)`; no target vector is cheaper.
pub fn tv_lower_bound(instance: &Instance) -> Rational {
    (instance.total_threshold() - instance.total_weight()).clamp_nonneg()
}

/// Which threshold level each vertex sits at in a two-level input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoLevelShape {
    pub mu: Rational,
    /// Vertices whose threshold equals their full incident sum.
    pub full: Vec<usize>,
}

/// Checks the two-level pattern `τ(u) ∈ {Σ_u − μ, Σ_u}` on a connected
/// undirected instance with at least one edge.
pub fn two_level_shape(instance: &Instance) -> Result<TwoLevelShape> {
    require_undirected(instance)?;
    let mu = instance.min_edge_weight()?;
    if !instance.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut full = Vec::new();
    for u in instance.vertices() {
        let sum = instance.full_incident_sum(u);
        let tau = instance.threshold(u);
        if tau == sum {
            full.push(u);
        } else if tau != sum - mu {
            return Err(Error::Precondition(format!(
                "vertex {u} has threshold {tau}, expected {sum} or {}",
                sum - mu
            )));
        }
    }
    Ok(TwoLevelShape { mu, full })
}

/// Optimal target vector for two-level thresholds.
///
/// If some vertex has `τ = Σ`, the assignment is degenerate and solved as
/// such. Otherwise the smallest minimum-weight edge is dropped and each
/// remaining component is solved as degenerate; the cost is
/// `Στ − Σω + μ`.
pub fn otvw_two_level(instance: &Instance) -> Result<SolveReport> {
    otvw_two_level_with(instance, Execution::default())
}

pub fn otvw_two_level_with(instance: &Instance, exec: Execution) -> Result<SolveReport> {
    let shape = two_level_shape(instance)?;
    if let Some(&x) = shape.full.first() {
        let ordering = peel_ordering(instance)?.ordering()?;
        return SolveReport::new(
            instance,
            Method::TwoLevel,
            slack_vector(instance, &ordering),
            Certificate::FullVertex {
                vertex: x,
                order: ordering.order().to_vec(),
            },
        );
    }
    let e = *instance
        .edges()
        .iter()
        .find(|e| e.weight == shape.mu)
        .expect("μ is attained");
    solve_without_edge(instance, e, exec)
}

/// All-low two-level case with a caller-chosen minimum-weight edge.
pub fn otvw_two_level_removing(instance: &Instance, u: usize, v: usize) -> Result<SolveReport> {
    let shape = two_level_shape(instance)?;
    if !shape.full.is_empty() {
        return Err(Error::Precondition(
            "some vertex has threshold equal to its incident sum".into(),
        ));
    }
    let w = instance
        .weight(u, v)
        .ok_or_else(|| Error::Precondition(format!("no edge ({u},{v})")))?;
    if w != shape.mu {
        return Err(Error::Precondition(format!(
            "edge ({u},{v}) has weight {w}, minimum is {}",
            shape.mu
        )));
    }
    solve_without_edge(
        instance,
        Edge::new(u.min(v), u.max(v), w),
        Execution::default(),
    )
}

fn solve_without_edge(instance: &Instance, e: Edge, exec: Execution) -> Result<SolveReport> {
    let reduced = instance.without_edge(e.u, e.v);
    let components = reduced.components();
    let parts = exec::map(
        exec,
        &components,
        |members| -> Result<Vec<(usize, Rational)>> {
            let keep = VertexSet::from_ids(reduced.n(), members.iter().copied()).unwrap();
            let sub = reduced.induced_subinstance(&keep)?;
            let ordering = peel_ordering(&sub.instance)?.ordering()?;
            Ok(sub
                .labels
                .iter()
                .enumerate()
                .map(|(i, &orig)| (orig, ordering.slack(i + 1)))
                .collect())
        },
    );
    let mut p = IncentiveVector::zeros(instance.n());
    for part in parts {
        for (v, value) in part? {
            p.set(v, value);
        }
    }
    SolveReport::new(
        instance,
        Method::TwoLevel,
        p,
        Certificate::RemovedEdge {
            u: e.u,
            v: e.v,
            weight: e.weight,
            components,
        },
    )
}

/// Auxiliary simple graph for min-or-full inputs: each component of the
/// `τ = μ` vertices contracted to one vertex, and every remaining edge
/// subdivided by a vertex whose threshold is the edge weight.
#[derive(Debug, Clone)]
pub struct ContractionGraph {
    pub mu: Rational,
    pub graph: Instance,
    /// Components of `G[V_1]`, each sorted; component `i` is vertex `i + 1`.
    pub components: Vec<Vec<usize>>,
    /// For each subdivision vertex (ids after the components): the endpoints
    /// in `G` of the edge it replaces, as `(x, y)` with `x` the `G`-vertex
    /// on the component side or the smaller id.
    pub subdivided: Vec<(usize, usize)>,
    /// Original ids of the `τ = Σ` vertices, placed last.
    pub full_vertices: Vec<usize>,
}

impl ContractionGraph {
    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    /// Contracted vertices, then subdivision vertices, then full vertices.
    pub fn ordering(&self) -> Vec<usize> {
        self.graph.vertices().collect()
    }
}

pub fn contraction_graph(instance: &Instance) -> Result<ContractionGraph> {
    require_undirected(instance)?;
    let mu = instance.min_edge_weight()?;
    let n = instance.n();
    let mut low = VertexSet::empty(n);
    for u in instance.vertices() {
        let tau = instance.threshold(u);
        if tau == mu {
            low.insert(u);
        } else if tau != instance.full_incident_sum(u) {
            return Err(Error::Precondition(format!(
                "vertex {u} has threshold {tau}, expected {mu} or {}",
                instance.full_incident_sum(u)
            )));
        }
    }

    let components: Vec<Vec<usize>> = if low.is_empty() {
        Vec::new()
    } else {
        let sub = instance.induced_subinstance(&low)?;
        sub.instance
            .components()
            .into_iter()
            .map(|c| c.into_iter().map(|i| sub.labels[i - 1]).collect())
            .collect()
    };
    let mut component_of = vec![usize::MAX; n + 1];
    for (i, c) in components.iter().enumerate() {
        for &v in c {
            component_of[v] = i;
        }
    }
    let full_vertices: Vec<usize> = instance.vertices().filter(|&v| !low.contains(v)).collect();
    let k = components.len();

    // Multigraph edges (component or full vertex, full vertex, weight).
    let mut multi: Vec<(usize, usize, Rational)> = Vec::new();
    let mut subdivided = Vec::new();
    for e in instance.edges() {
        match (low.contains(e.u), low.contains(e.v)) {
            (true, true) => {}
            (true, false) => {
                multi.push((e.u, e.v, e.weight));
                subdivided.push((e.u, e.v));
            }
            (false, true) => {
                multi.push((e.v, e.u, e.weight));
                subdivided.push((e.v, e.u));
            }
            (false, false) => {
                multi.push((e.u, e.v, e.weight));
                subdivided.push((e.u, e.v));
            }
        }
    }
    let m = multi.len();
    let mut full_id = vec![0usize; n + 1];
    for (i, &v) in full_vertices.iter().enumerate() {
        full_id[v] = k + m + i + 1;
    }
    let aux_id = |g: usize| {
        if low.contains(g) {
            component_of[g] + 1
        } else {
            full_id[g]
        }
    };

    let mut thresholds = vec![mu; k];
    thresholds.extend(multi.iter().map(|&(_, _, w)| w));
    thresholds.extend(full_vertices.iter().map(|&v| instance.threshold(v)));
    let mut edges = Vec::with_capacity(2 * m);
    for (i, &(x, y, w)) in multi.iter().enumerate() {
        let s = k + i + 1;
        edges.push(Edge::new(aux_id(x), s, w));
        edges.push(Edge::new(s, aux_id(y), w));
    }
    let graph = Instance::new(Mode::Undirected, thresholds, edges)?;
    Ok(ContractionGraph {
        mu,
        graph,
        components,
        subdivided,
        full_vertices,
    })
}

/// Optimal target vector for thresholds `τ(u) ∈ {μ, Σ_u}`.
pub fn otvw_min_or_full(instance: &Instance) -> Result<SolveReport> {
    let aux = contraction_graph(instance)?;
    let ordering = DegeneracyOrdering::from_order(&aux.graph, aux.ordering())?;
    let k = aux.num_components();
    let m = aux.subdivided.len();
    let mut p = IncentiveVector::zeros(instance.n());
    for (i, comp) in aux.components.iter().enumerate() {
        p.add(comp[0], ordering.slack(i + 1));
    }
    for (i, &(x, y)) in aux.subdivided.iter().enumerate() {
        let slack = ordering.slack(k + i + 1);
        if slack.is_zero() {
            continue;
        }
        // Only edges between two full vertices carry a payment here.
        let payer = if aux.full_vertices.binary_search(&x).is_ok() {
            x.min(y)
        } else {
            y
        };
        p.add(payer, slack);
    }
    for (i, &v) in aux.full_vertices.iter().enumerate() {
        p.add(v, ordering.slack(k + m + i + 1));
    }
    let aux_cost = ordering.total_slack();
    debug_assert_eq!(p.cost(), aux_cost);
    SolveReport::new(
        instance,
        Method::MinOrFull,
        p,
        Certificate::Contraction {
            mu: aux.mu,
            components: aux.components,
            subdivisions: m,
            aux_vertices: aux.graph.n(),
            aux_cost,
        },
    )
}

/// Greedy 2-approximate vertex cover (both endpoints of each uncovered edge,
/// in canonical edge order), which is a target set whenever no threshold
/// exceeds its incident sum.
pub fn vertex_cover_target_set(instance: &Instance) -> Result<VertexSet> {
    if let Some(v) = instance
        .vertices()
        .find(|&v| instance.threshold(v) > instance.full_incident_sum(v))
    {
        return Err(Error::Precondition(format!(
            "vertex {v} has threshold {} above its incident weight {}",
            instance.threshold(v),
            instance.full_incident_sum(v)
        )));
    }
    let mut cover = VertexSet::empty(instance.n());
    for e in instance.edges() {
        if !cover.contains(e.u) && !cover.contains(e.v) {
            cover.insert(e.u);
            cover.insert(e.v);
        }
    }
    if !is_target_set(instance, &cover)? {
        return Err(Error::Unverified);
    }
    Ok(cover)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "status")]
pub enum Classified {
    Solved(SolveReport),
    Unsupported,
}

fn matches_min_or_full(instance: &Instance) -> bool {
    let Ok(mu) = instance.min_edge_weight() else {
        return false;
    };
    instance.vertices().all(|u| {
        let tau = instance.threshold(u);
        tau == mu || tau == instance.full_incident_sum(u)
    })
}

/// Dispatches to the cheapest applicable exact solver: degenerate, then
/// two-level, then min-or-full.
pub fn classify_and_solve(instance: &Instance) -> Result<Classified> {
    if instance.mode() == Mode::Directed {
        return Ok(Classified::Unsupported);
    }
    if let Peel::Ordering(ordering) = peel_ordering(instance)? {
        let p = slack_vector(instance, &ordering);
        let report = SolveReport::new(
            instance,
            Method::Degenerate,
            p,
            Certificate::Ordering {
                order: ordering.order().to_vec(),
            },
        )?;
        return Ok(Classified::Solved(report));
    }
    if two_level_shape(instance).is_ok() {
        return otvw_two_level(instance).map(Classified::Solved);
    }
    if matches_min_or_full(instance) {
        return otvw_min_or_full(instance).map(Classified::Solved);
    }
    Ok(Classified::Unsupported)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    fn r(x: i64) -> Rational {
        Rational::from(x)
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| r(x)).collect()
    }

    #[test]
    fn algorithm_one_on_path() {
        let a = algorithm_one(&path3()).unwrap();
        assert_eq!(a.set.len(), 1);
        assert_eq!(a.tau_max, r(1));
        assert_eq!(a.c, Some(r(1)));
        assert_eq!(a.claimed_ratio, Some(r(1)));
    }

    #[test]
    fn algorithm_one_on_triangle() {
        let a = algorithm_one(&triangle(1, 2)).unwrap();
        // Any degeneracy ordering has slacks (2, 1, 0) in order.
        assert_eq!(a.ordering.slacks_in_order(), ints(&[2, 1, 0]));
        assert_eq!(a.set.len(), 2);
        assert_eq!(a.c, Some(r(1)));
        assert_eq!(a.claimed_ratio, Some(r(2)));
        // The stated ordering (1, 2, 3) selects {1, 2}.
        let given = DegeneracyOrdering::from_order(&triangle(1, 2), vec![1, 2, 3]).unwrap();
        assert_eq!(given.slacks_in_order(), ints(&[2, 1, 0]));
    }

    #[test]
    fn algorithm_one_zero_thresholds() {
        // τ ≡ 0 is degenerate only when no induced subgraph has positive
        // incident weight.
        for g in [triangle(0, 0), edgeless(&ints(&[0, 0, 0]))] {
            let a = algorithm_one(&g).unwrap();
            assert!(a.set.is_empty());
            assert_eq!(a.c, None);
            assert_eq!(a.claimed_ratio, None);
        }
        assert!(matches!(
            algorithm_one(&triangle(1, 1)),
            Err(Error::NotDegenerate { .. })
        ));
    }

    #[test]
    fn degenerate_solver_examples() {
        let s = otvw_degenerate(&path3()).unwrap();
        assert_eq!(s.cost, r(1));
        assert_eq!(s.p.support().len(), 1);
        assert_eq!(otvw_degenerate(&triangle(1, 2)).unwrap().cost, r(3));
        let taus = ints(&[3, 0, 2]);
        let e = otvw_degenerate(&edgeless(&taus)).unwrap();
        assert_eq!(e.p.values(), taus.as_slice());
        assert_eq!(e.cost, r(5));
    }

    #[test]
    fn lower_bound_examples() {
        assert_eq!(tv_lower_bound(&path3()), r(1));
        assert_eq!(tv_lower_bound(&triangle(1, 1)), r(0));
        assert_eq!(tv_lower_bound(&edgeless(&ints(&[2, 3]))), r(5));
        assert_eq!(tv_lower_bound(&triangle(3, 1)), r(0));
    }

    #[test]
    fn two_level_examples() {
        let s = otvw_two_level(&triangle(1, 1)).unwrap();
        assert_eq!(s.cost, r(1));
        assert!(matches!(
            s.certificate,
            Certificate::RemovedEdge { u: 1, v: 2, .. }
        ));
        for (u, v) in [(1, 2), (1, 3), (2, 3)] {
            assert_eq!(
                otvw_two_level_removing(&triangle(1, 1), u, v).unwrap().cost,
                r(1)
            );
        }

        let s = otvw_two_level(&triangle_with(1, [2, 1, 1])).unwrap();
        assert_eq!(s.cost, r(1));
        assert!(matches!(
            s.certificate,
            Certificate::FullVertex { vertex: 1, .. }
        ));

        let e = single_edge(Rational::ONE, [r(0), r(0)]);
        assert_eq!(otvw_two_level(&e).unwrap().cost, r(0));
    }

    #[test]
    fn two_level_rejects_other_patterns() {
        assert!(matches!(
            otvw_two_level(&triangle(1, 5)),
            Err(Error::Precondition(_))
        ));
        let disconnected = path3().without_edge(1, 2);
        assert_eq!(
            otvw_two_level(&disconnected).unwrap_err(),
            Error::Disconnected
        );
        let heavy =
            Instance::from_triples(Mode::Undirected, [1, 2, 1], [(1, 2, 1), (2, 3, 2)]).unwrap();
        assert!(otvw_two_level_removing(&heavy, 2, 3).is_err());
    }

    #[test]
    fn min_or_full_triangle() {
        let s = otvw_min_or_full(&triangle_with(1, [1, 2, 2])).unwrap();
        assert_eq!(s.p.values(), ints(&[1, 1, 0]).as_slice());
        assert_eq!(s.cost, r(2));
    }

    #[test]
    fn min_or_full_star() {
        let s = otvw_min_or_full(&star(2, 1, 2)).unwrap();
        assert_eq!(s.p.values(), ints(&[0, 1, 1]).as_slice());
        assert_eq!(s.cost, r(2));
        match s.certificate {
            Certificate::Contraction {
                components,
                subdivisions,
                ..
            } => {
                assert_eq!(components, vec![vec![2], vec![3]]);
                assert_eq!(subdivisions, 2);
            }
            other => panic!("unexpected certificate {other:?}"),
        }
    }

    #[test]
    fn min_or_full_single_edge() {
        let s = otvw_min_or_full(&single_edge(Rational::ONE, [r(1), r(1)])).unwrap();
        assert_eq!(s.cost, r(1));
    }

    #[test]
    fn contraction_graph_is_degenerate_in_its_order() {
        let g = triangle_with(1, [1, 2, 2]);
        let aux = contraction_graph(&g).unwrap();
        // One component {1}, three subdivisions, two full vertices.
        assert_eq!(aux.graph.n(), 6);
        let o = DegeneracyOrdering::from_order(&aux.graph, aux.ordering()).unwrap();
        assert_eq!(o.slacks_in_order(), ints(&[1, 0, 0, 1, 0, 0]));
    }

    #[test]
    fn vertex_cover_examples() {
        let c = vertex_cover_target_set(&path3()).unwrap();
        assert_eq!(c.to_vec(), vec![1, 2]);
        let e = edgeless(&ints(&[0, 0]));
        assert!(vertex_cover_target_set(&e).unwrap().is_empty());
        let c = vertex_cover_target_set(&triangle(1, 2)).unwrap();
        assert_eq!(c.to_vec(), vec![1, 2]);
        assert!(matches!(
            vertex_cover_target_set(&triangle(1, 3)),
            Err(Error::Precondition(msg)) if msg.contains("vertex 1")
        ));
    }

    #[test]
    fn classify_examples() {
        match classify_and_solve(&path3()).unwrap() {
            Classified::Solved(s) => {
                assert_eq!(s.method, Method::Degenerate);
                assert_eq!(s.cost, r(1));
            }
            Classified::Unsupported => panic!(),
        }
        match classify_and_solve(&triangle(1, 1)).unwrap() {
            Classified::Solved(s) => {
                assert_eq!(s.method, Method::TwoLevel);
                assert_eq!(s.cost, r(1));
            }
            Classified::Unsupported => panic!(),
        }
        let k4 = Instance::from_triples(
            Mode::Undirected,
            [1, 2, 2, 2],
            [
                (1, 2, 1),
                (1, 3, 1),
                (1, 4, 1),
                (2, 3, 1),
                (2, 4, 1),
                (3, 4, 1),
            ],
        )
        .unwrap();
        assert_eq!(classify_and_solve(&k4).unwrap(), Classified::Unsupported);
    }

    #[test]
    fn report_rejects_non_target_vectors() {
        let err = SolveReport::new(
            &path3(),
            Method::Degenerate,
            IncentiveVector::zeros(3),
            Certificate::Ordering {
                order: vec![1, 2, 3],
            },
        );
        assert_eq!(err, Err(Error::Unverified));
    }
}
