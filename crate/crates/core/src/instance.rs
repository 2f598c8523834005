//! Instance model: a simple graph (undirected or directed) with exact edge
//! weights and vertex thresholds. Vertex ids are dense, `1..=n`.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Undirected,
    Directed,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Undirected => "undirected",
            Mode::Directed => "directed",
        })
    }
}

/// An edge `u - v` (undirected, stored with `u < v`) or an arc `u -> v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: Rational,
}

impl Edge {
    pub fn new(u: usize, v: usize, weight: Rational) -> Self {
        Edge { u, v, weight }
    }
}

/// First invariant violation found by [`RawInstance::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("instance has no vertices")]
    NoVertices,
    #[error("expected {expected} thresholds, got {got}")]
    ThresholdCount { expected: usize, got: usize },
    #[error("vertex {vertex} has negative threshold {tau}")]
    NegativeThreshold { vertex: usize, tau: Rational },
    #[error("edge #{edge} references unknown vertex {vertex}")]
    UnknownVertex { edge: usize, vertex: usize },
    #[error("edge #{edge} is a self-loop at vertex {vertex}")]
    SelfLoop { edge: usize, vertex: usize },
    #[error("edge #{edge} ({u},{v}) has negative weight {weight}")]
    NegativeWeight {
        edge: usize,
        u: usize,
        v: usize,
        weight: Rational,
    },
    #[error("edge #{edge} duplicates ({u},{v})")]
    DuplicateEdge { edge: usize, u: usize, v: usize },
}

impl Violation {
    /// Index of the offending edge in input order, if the violation is about an edge.
    pub fn edge_index(&self) -> Option<usize> {
        match *self {
            Violation::UnknownVertex { edge, .. }
            | Violation::SelfLoop { edge, .. }
            | Violation::NegativeWeight { edge, .. }
            | Violation::DuplicateEdge { edge, .. } => Some(edge),
            _ => None,
        }
    }
}

/// Unvalidated instance data, as read from a file or assembled by hand.
/// `thresholds[i]` belongs to vertex `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawInstance {
    pub mode: Mode,
    pub n: usize,
    pub thresholds: Vec<Rational>,
    pub edges: Vec<Edge>,
}

impl RawInstance {
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        if self.n == 0 {
            return Err(Violation::NoVertices);
        }
        if self.thresholds.len() != self.n {
            return Err(Violation::ThresholdCount {
                expected: self.n,
                got: self.thresholds.len(),
            });
        }
        if let Some((i, tau)) = self
            .thresholds
            .iter()
            .enumerate()
            .find(|(_, t)| t.is_negative())
        {
            return Err(Violation::NegativeThreshold {
                vertex: i + 1,
                tau: *tau,
            });
        }
        let mut seen = HashSet::with_capacity(self.edges.len());
        for (idx, e) in self.edges.iter().enumerate() {
            for x in [e.u, e.v] {
                if x == 0 || x > self.n {
                    return Err(Violation::UnknownVertex {
                        edge: idx,
                        vertex: x,
                    });
                }
            }
            if e.u == e.v {
                return Err(Violation::SelfLoop {
                    edge: idx,
                    vertex: e.u,
                });
            }
            if e.weight.is_negative() {
                return Err(Violation::NegativeWeight {
                    edge: idx,
                    u: e.u,
                    v: e.v,
                    weight: e.weight,
                });
            }
            let key = match self.mode {
                Mode::Undirected => (e.u.min(e.v), e.u.max(e.v)),
                Mode::Directed => (e.u, e.v),
            };
            if !seen.insert(key) {
                return Err(Violation::DuplicateEdge {
                    edge: idx,
                    u: e.u,
                    v: e.v,
                });
            }
        }
        Ok(())
    }
}

/// A validated, immutable instance `(G, ω, τ)`.
#[derive(Clone, PartialEq, Eq)]
pub struct Instance {
    mode: Mode,
    thresholds: Vec<Rational>,
    edges: Vec<Edge>,
    // in_adj[v-1]: (u, ω) for every edge that lets u influence v.
    in_adj: Vec<Vec<(usize, Rational)>>,
    out_adj: Vec<Vec<(usize, Rational)>>,
}

impl fmt::Debug for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Instance")
            .field("mode", &self.mode)
            .field("thresholds", &self.thresholds)
            .field("edges", &self.edges)
            .finish()
    }
}

impl TryFrom<RawInstance> for Instance {
    type Error = Violation;

    fn try_from(raw: RawInstance) -> std::result::Result<Self, Violation> {
        raw.validate()?;
        let n = raw.n;
        let mut edges: Vec<Edge> = raw
            .edges
            .into_iter()
            .map(|e| match raw.mode {
                Mode::Undirected if e.u > e.v => Edge::new(e.v, e.u, e.weight),
                _ => e,
            })
            .collect();
        edges.sort_by_key(|e| (e.u, e.v));
        let mut in_adj = vec![Vec::new(); n];
        let mut out_adj = vec![Vec::new(); n];
        for e in &edges {
            in_adj[e.v - 1].push((e.u, e.weight));
            out_adj[e.u - 1].push((e.v, e.weight));
            if raw.mode == Mode::Undirected {
                in_adj[e.u - 1].push((e.v, e.weight));
                out_adj[e.v - 1].push((e.u, e.weight));
            }
        }
        for list in in_adj.iter_mut().chain(out_adj.iter_mut()) {
            list.sort_by_key(|&(x, _)| x);
        }
        Ok(Instance {
            mode: raw.mode,
            thresholds: raw.thresholds,
            edges,
            in_adj,
            out_adj,
        })
    }
}

/// Result of restricting an instance to a vertex subset; `labels[i]` is the
/// original id of new vertex `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subinstance {
    pub instance: Instance,
    pub labels: Vec<usize>,
}

impl Instance {
    pub fn new(
        mode: Mode,
        thresholds: Vec<Rational>,
        edges: Vec<Edge>,
    ) -> std::result::Result<Self, Violation> {
        Instance::try_from(RawInstance {
            mode,
            n: thresholds.len(),
            thresholds,
            edges,
        })
    }

    /// Convenience constructor from `(u, v, ω)` triples.
    pub fn from_triples<T, W>(
        mode: Mode,
        thresholds: impl IntoIterator<Item = T>,
        edges: impl IntoIterator<Item = (usize, usize, W)>,
    ) -> std::result::Result<Self, Violation>
    where
        T: Into<Rational>,
        W: Into<Rational>,
    {
        Instance::new(
            mode,
            thresholds.into_iter().map(Into::into).collect(),
            edges
                .into_iter()
                .map(|(u, v, w)| Edge::new(u, v, w.into()))
                .collect(),
        )
    }

    pub fn to_raw(&self) -> RawInstance {
        RawInstance {
            mode: self.mode,
            n: self.n(),
            thresholds: self.thresholds.clone(),
            edges: self.edges.clone(),
        }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn n(&self) -> usize {
        self.thresholds.len()
    }

    pub fn vertices(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.n()
    }

    pub fn threshold(&self, v: usize) -> Rational {
        self.thresholds[v - 1]
    }

    pub fn thresholds(&self) -> &[Rational] {
        &self.thresholds
    }

    /// Canonical order: lexicographic by `(u, v)`; undirected edges have `u < v`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Vertices whose activation feeds `v`, with the edge weight.
    pub fn in_neighbors(&self, v: usize) -> &[(usize, Rational)] {
        &self.in_adj[v - 1]
    }

    pub fn out_neighbors(&self, v: usize) -> &[(usize, Rational)] {
        &self.out_adj[v - 1]
    }

    /// Number of in-neighbors (undirected: degree).
    pub fn degree(&self, v: usize) -> usize {
        self.in_adj[v - 1].len()
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<Rational> {
        self.in_adj
            .get(v.wrapping_sub(1))?
            .iter()
            .find(|&&(x, _)| x == u)
            .map(|&(_, w)| w)
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        v >= 1 && v <= self.n()
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if self.contains_vertex(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    /// Σ ω over edges joining `v` to members of `within` (directed: arcs
    /// from `within` into `v`).
    pub fn incident_weight_sum(&self, v: usize, within: &VertexSet) -> Result<Rational> {
        self.check_vertex(v)?;
        Ok(self.in_adj[v - 1]
            .iter()
            .filter(|(u, _)| within.contains(*u))
            .map(|(_, w)| *w)
            .sum())
    }

    /// Incident weight sum over the whole graph.
    pub fn full_incident_sum(&self, v: usize) -> Rational {
        self.in_adj[v - 1].iter().map(|(_, w)| *w).sum()
    }

    pub fn total_weight(&self) -> Rational {
        self.edges.iter().map(|e| e.weight).sum()
    }

    pub fn total_threshold(&self) -> Rational {
        self.thresholds.iter().sum()
    }

    pub fn max_threshold(&self) -> Rational {
        self.thresholds
            .iter()
            .copied()
            .max()
            .unwrap_or(Rational::ZERO)
    }

    /// μ(G, ω): the minimum edge weight.
    pub fn min_edge_weight(&self) -> Result<Rational> {
        self.edges
            .iter()
            .map(|e| e.weight)
            .min()
            .ok_or(Error::Edgeless)
    }

    pub fn has_unit_weights(&self) -> bool {
        self.edges.iter().all(|e| e.weight == Rational::ONE)
    }

    pub fn has_integer_thresholds(&self) -> bool {
        self.thresholds.iter().all(Rational::is_integer)
    }

    /// Restricts to `keep`, renumbering kept vertices in ascending order.
    pub fn induced_subinstance(&self, keep: &VertexSet) -> Result<Subinstance> {
        if keep.is_empty() {
            return Err(Error::EmptySubset);
        }
        if let Some(bad) = keep.iter().find(|&v| v > self.n()) {
            return Err(Error::UnknownVertex(bad));
        }
        let labels = keep.to_vec();
        let mut new_id = vec![0usize; self.n() + 1];
        for (i, &v) in labels.iter().enumerate() {
            new_id[v] = i + 1;
        }
        let thresholds = labels.iter().map(|&v| self.threshold(v)).collect();
        let edges = self
            .edges
            .iter()
            .filter(|e| keep.contains(e.u) && keep.contains(e.v))
            .map(|e| Edge::new(new_id[e.u], new_id[e.v], e.weight))
            .collect();
        let instance =
            Instance::new(self.mode, thresholds, edges).expect("restriction keeps invariants");
        Ok(Subinstance { instance, labels })
    }

    /// Same graph and weights, new thresholds.
    pub fn with_thresholds(
        &self,
        thresholds: Vec<Rational>,
    ) -> std::result::Result<Self, Violation> {
        Instance::new(self.mode, thresholds, self.edges.clone())
    }

    /// Same vertices and thresholds, without the edge `(u, v)`.
    pub fn without_edge(&self, u: usize, v: usize) -> Instance {
        let (a, b) = match self.mode {
            Mode::Undirected => (u.min(v), u.max(v)),
            Mode::Directed => (u, v),
        };
        let edges = self
            .edges
            .iter()
            .filter(|e| !(e.u == a && e.v == b))
            .copied()
            .collect();
        Instance::new(self.mode, self.thresholds.clone(), edges)
            .expect("edge removal keeps invariants")
    }

    /// Connected components of the underlying undirected graph, each sorted,
    /// ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut comp = vec![usize::MAX; n + 1];
        let mut out = Vec::new();
        for start in 1..=n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp[start] = id;
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for &(y, _) in self.in_adj[x - 1].iter().chain(&self.out_adj[x - 1]) {
                    if comp[y] == usize::MAX {
                        comp[y] = id;
                        members.push(y);
                        stack.push(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }
}
