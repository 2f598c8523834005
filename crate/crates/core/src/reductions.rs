//! Instance transformations that carry target sets across.
//!
//! * [`tss_to_complete`]: unit-weight `(G, τ)` on `n` vertices to a weighted
//!   `K_n` with `τ' = nτ`, `ω = n` on edges of `G` and `1` elsewhere. The two
//!   instances have exactly the same target sets.
//! * [`degenerate_to_complete`]: the same weighting plus an apex vertex
//!   `n + 1` joined with weight `n`; `τ'' = nτ + n` and `τ''(apex) = n²`. The
//!   image is degenerate and its minimum target set is one larger.
//! * [`to_bidirected`]: each edge becomes two opposite arcs of equal weight.

use serde::Serialize;

use crate::degeneracy::peel_ordering;
use crate::error::{Error, Result};
use crate::instance::{Edge, Instance, Mode};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReductionKind {
    TssToComplete,
    DegenerateToComplete,
    Bidirect,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionReceipt {
    pub kind: ReductionKind,
    pub source: Instance,
    pub image: Instance,
    /// `correspondence[i]` is the image id of source vertex `i + 1`.
    pub correspondence: Vec<usize>,
    /// Vertex added by the construction, if any.
    pub added_vertex: Option<usize>,
    pub weight_scheme: String,
}

impl ReductionReceipt {
    pub fn image_of(&self, v: usize) -> usize {
        self.correspondence[v - 1]
    }
}

fn require_unit_source(g: &Instance) -> Result<()> {
    if g.mode() != Mode::Undirected {
        return Err(Error::RequiresUndirected);
    }
    if g.n() < 2 {
        return Err(Error::Precondition(
            "source needs at least 2 vertices".into(),
        ));
    }
    if !g.has_unit_weights() {
        return Err(Error::Precondition("source must have unit weights".into()));
    }
    if !g.has_integer_thresholds() {
        return Err(Error::Precondition(
            "source thresholds must be integers".into(),
        ));
    }
    Ok(())
}

/// Complete graph on `n` vertices: weight `n` on edges of `g`, `1` otherwise.
fn complete_weights(g: &Instance, order: usize) -> Vec<Edge> {
    let heavy = Rational::from(order as i64);
    let mut edges = Vec::new();
    for u in 1..=g.n() {
        for v in u + 1..=g.n() {
            let w = if g.weight(u, v).is_some() {
                heavy
            } else {
                Rational::ONE
            };
            edges.push(Edge::new(u, v, w));
        }
    }
    edges
}

/// Requires unit weights, integer thresholds with `1 ≤ τ(v) ≤ d(v)`, and
/// `n ≥ 2`.
pub fn tss_to_complete(g: &Instance) -> Result<ReductionReceipt> {
    require_unit_source(g)?;
    let n = g.n();
    if let Some(v) = g.vertices().find(|&v| {
        let t = g.threshold(v);
        t < Rational::ONE || t > Rational::from(g.degree(v) as i64)
    }) {
        return Err(Error::Precondition(format!(
            "vertex {v} has threshold {} outside [1, {}]",
            g.threshold(v),
            g.degree(v)
        )));
    }
    let scale = Rational::from(n as i64);
    let thresholds = g.vertices().map(|v| scale * g.threshold(v)).collect();
    let image = Instance::new(Mode::Undirected, thresholds, complete_weights(g, n))?;
    Ok(ReductionReceipt {
        kind: ReductionKind::TssToComplete,
        source: g.clone(),
        image,
        correspondence: g.vertices().collect(),
        added_vertex: None,
        weight_scheme: format!("K{n}: weight {n} on source edges, 1 elsewhere; thresholds x{n}"),
    })
}

/// Requires unit weights, integer thresholds with `0 ≤ τ(v) ≤ d(v)`, a
/// degenerate assignment, and `n ≥ 2`.
pub fn degenerate_to_complete(g: &Instance) -> Result<ReductionReceipt> {
    require_unit_source(g)?;
    if let Some(v) = g
        .vertices()
        .find(|&v| g.threshold(v) > Rational::from(g.degree(v) as i64))
    {
        return Err(Error::Precondition(format!(
            "vertex {v} has threshold {} above its degree {}",
            g.threshold(v),
            g.degree(v)
        )));
    }
    peel_ordering(g)?.ordering()?;
    let n = g.n();
    let nr = Rational::from(n as i64);
    let apex = n + 1;
    let mut thresholds: Vec<Rational> = g.vertices().map(|v| nr * g.threshold(v) + nr).collect();
    thresholds.push(nr * nr);
    let mut edges = complete_weights(g, n);
    edges.extend((1..=n).map(|v| Edge::new(v, apex, nr)));
    let image = Instance::new(Mode::Undirected, thresholds, edges)?;
    Ok(ReductionReceipt {
        kind: ReductionKind::DegenerateToComplete,
        source: g.clone(),
        image,
        correspondence: g.vertices().collect(),
        added_vertex: Some(apex),
        weight_scheme: format!(
            "K{}: weight {n} on source edges and apex edges, 1 elsewhere; thresholds x{n} + {n}, apex {}",
            n + 1,
            n * n
        ),
    })
}

pub fn to_bidirected(g: &Instance) -> Result<ReductionReceipt> {
    if g.mode() != Mode::Undirected {
        return Err(Error::Precondition("instance is already directed".into()));
    }
    let arcs = g
        .edges()
        .iter()
        .flat_map(|e| [Edge::new(e.u, e.v, e.weight), Edge::new(e.v, e.u, e.weight)])
        .collect();
    let image = Instance::new(Mode::Directed, g.thresholds().to_vec(), arcs)?;
    Ok(ReductionReceipt {
        kind: ReductionKind::Bidirect,
        source: g.clone(),
        image,
        correspondence: g.vertices().collect(),
        added_vertex: None,
        weight_scheme: "each edge uv becomes arcs (u,v) and (v,u) of weight w(uv)".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degeneracy::Peel;
    use crate::fixtures::*;

    fn r(x: i64) -> Rational {
        Rational::from(x)
    }

    #[test]
    fn path_to_k3() {
        let rec = tss_to_complete(&path3()).unwrap();
        let k3 = &rec.image;
        assert_eq!(k3.thresholds(), &[r(3), r(3), r(3)]);
        assert_eq!(k3.weight(1, 2), Some(r(3)));
        assert_eq!(k3.weight(2, 3), Some(r(3)));
        assert_eq!(k3.weight(1, 3), Some(r(1)));
        assert_eq!(k3.min_edge_weight().unwrap(), r(1));
    }

    #[test]
    fn k2_and_c4() {
        let k2 = single_edge(Rational::ONE, [r(1), r(1)]);
        let rec = tss_to_complete(&k2).unwrap();
        assert_eq!(rec.image.weight(1, 2), Some(r(2)));
        assert_eq!(rec.image.thresholds(), &[r(2), r(2)]);

        let c4 = cycle(&[1, 2, 1, 2]);
        let rec = tss_to_complete(&c4).unwrap();
        assert_eq!(rec.image.thresholds(), &[r(4), r(8), r(4), r(8)]);
        assert_eq!(rec.image.num_edges(), 6);
        for (u, v) in [(1, 2), (2, 3), (3, 4), (1, 4)] {
            assert_eq!(rec.image.weight(u, v), Some(r(4)));
        }
        assert_eq!(rec.image.weight(1, 3), Some(r(1)));
        assert_eq!(rec.image.weight(2, 4), Some(r(1)));
    }

    #[test]
    fn complete_rejects_bad_sources() {
        assert!(tss_to_complete(&edgeless(&[r(1)])).is_err());
        assert!(tss_to_complete(&triangle(2, 1)).is_err());
        assert!(tss_to_complete(&triangle(1, 3)).is_err());
    }

    #[test]
    fn apex_construction_p2() {
        let p2 = single_edge(Rational::ONE, [r(1), r(1)]);
        let rec = degenerate_to_complete(&p2).unwrap();
        assert_eq!(rec.added_vertex, Some(3));
        assert_eq!(rec.image.thresholds(), &[r(4), r(4), r(4)]);
        assert_eq!(rec.image.weight(1, 2), Some(r(2)));
        assert_eq!(rec.image.weight(1, 3), Some(r(2)));
        assert_eq!(rec.image.weight(2, 3), Some(r(2)));
    }

    #[test]
    fn apex_construction_p3() {
        let rec = degenerate_to_complete(&path3()).unwrap();
        assert_eq!(rec.image.thresholds(), &[r(6), r(6), r(6), r(9)]);
        assert_eq!(rec.image.weight(1, 2), Some(r(3)));
        assert_eq!(rec.image.weight(2, 3), Some(r(3)));
        assert_eq!(rec.image.weight(1, 3), Some(r(1)));
        for v in 1..=3 {
            assert_eq!(rec.image.weight(v, 4), Some(r(3)));
        }
        assert!(matches!(
            peel_ordering(&rec.image).unwrap(),
            Peel::Ordering(_)
        ));
    }

    #[test]
    fn apex_rejects_non_degenerate() {
        assert!(matches!(
            degenerate_to_complete(&triangle(1, 1)),
            Err(Error::NotDegenerate { .. })
        ));
    }

    #[test]
    fn bidirected_arcs() {
        let e = single_edge(Rational::new(1, 2), [r(1), r(1)]);
        let rec = to_bidirected(&e).unwrap();
        assert_eq!(rec.image.mode(), Mode::Directed);
        assert_eq!(rec.image.weight(1, 2), Some(Rational::new(1, 2)));
        assert_eq!(rec.image.weight(2, 1), Some(Rational::new(1, 2)));
        assert_eq!(to_bidirected(&triangle(1, 1)).unwrap().image.num_edges(), 6);
        assert!(to_bidirected(&rec.image).is_err());
    }
}
