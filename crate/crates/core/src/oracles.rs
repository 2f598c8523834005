//! Exponential-time exact solvers for small instances. They serve as ground
//! truth for the polynomial algorithms.
//!
//! Every oracle returns a witness that is re-checked through the rational
//! activation engine (or an edge scan) before it is handed out. Ties are
//! broken toward the lexicographically smallest witness, so results do not
//! depend on the execution mode.

use serde::Serialize;

use crate::compiled::Compiled;
use crate::engine::{is_target_set, is_target_vector, IncentiveVector};
use crate::error::{Error, Result};
use crate::exec::{self, lex_key, masks_of_size, Execution};
use crate::instance::Instance;
use crate::rational::Rational;
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub target_set: usize,
    pub target_vector: usize,
    pub vertex_cover: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            target_set: 20,
            target_vector: 9,
            vertex_cover: 20,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OracleConfig {
    pub limits: OracleLimits,
    pub exec: Execution,
}

impl OracleConfig {
    pub fn sequential() -> Self {
        OracleConfig {
            exec: Execution::Sequential,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "value")]
pub enum Witness {
    Set(VertexSet),
    Vector(IncentiveVector),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub optimum: Rational,
    pub witness: Witness,
    /// Candidates (subsets or DP states) examined.
    pub explored: u64,
}

impl OracleResult {
    pub fn witness_set(&self) -> Option<&VertexSet> {
        match &self.witness {
            Witness::Set(s) => Some(s),
            Witness::Vector(_) => None,
        }
    }

    pub fn witness_vector(&self) -> Option<&IncentiveVector> {
        match &self.witness {
            Witness::Vector(p) => Some(p),
            Witness::Set(_) => None,
        }
    }

    /// Optimum as a count (target sets, vertex covers).
    pub fn size(&self) -> usize {
        self.optimum.numer() as usize
    }
}

fn check_limit(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        Err(Error::TooLarge { n, limit })
    } else {
        Ok(())
    }
}

/// Smallest size `k` and lexicographically smallest `k`-subset satisfying
/// `accept`, scanning sizes upward.
fn smallest_subset<F>(n: usize, exec: Execution, accept: F) -> (u64, u64)
where
    F: Fn(u64) -> bool + Sync + Send,
{
    let mut explored = 0u64;
    for k in 0..=n {
        let masks = masks_of_size(n, k);
        explored += masks.len() as u64;
        let best = exec::max_of(exec, &masks, |&m| accept(m).then(|| (lex_key(n, m), m)));
        if let Some((_, m)) = best {
            return (m, explored);
        }
    }
    unreachable!("the full vertex set is always accepted")
}

/// `dyn(G, ω, τ)`: minimum target set size, by subset enumeration in order of
/// increasing cardinality. Works for directed instances too.
pub fn exact_min_target_set(instance: &Instance, cfg: &OracleConfig) -> Result<OracleResult> {
    let n = instance.n();
    check_limit(n, cfg.limits.target_set)?;
    let c = Compiled::new(instance)?;
    let full = c.full_mask();
    let (mask, explored) = smallest_subset(n, cfg.exec, |m| c.closure(m, None) == full);
    let set = VertexSet::from_mask(n, mask);
    if !is_target_set(instance, &set)? {
        return Err(Error::Unverified);
    }
    Ok(OracleResult {
        optimum: Rational::from(set.len() as i64),
        witness: Witness::Set(set),
        explored,
    })
}

/// `β(G)`: minimum vertex cover (arcs count as edges in directed mode).
pub fn exact_min_vertex_cover(instance: &Instance, cfg: &OracleConfig) -> Result<OracleResult> {
    let n = instance.n();
    check_limit(n, cfg.limits.vertex_cover)?;
    check_limit(n, crate::compiled::MAX_MASK_VERTICES)?;
    let edges: Vec<u64> = instance
        .edges()
        .iter()
        .map(|e| (1u64 << (e.u - 1)) | (1u64 << (e.v - 1)))
        .collect();
    let (mask, explored) = smallest_subset(n, cfg.exec, |m| edges.iter().all(|&e| e & m != 0));
    let cover = VertexSet::from_mask(n, mask);
    if !is_vertex_cover(instance, &cover) {
        return Err(Error::Unverified);
    }
    Ok(OracleResult {
        optimum: Rational::from(cover.len() as i64),
        witness: Witness::Set(cover),
        explored,
    })
}

pub fn is_vertex_cover(instance: &Instance, cover: &VertexSet) -> bool {
    instance
        .edges()
        .iter()
        .all(|e| cover.contains(e.u) || cover.contains(e.v))
}

/// Deficit of `u` when the vertices of `before` are already active.
#[inline]
fn deficit(c: &Compiled, u: usize, before: u64) -> i64 {
    (c.thresholds[u] - c.weight_from(u, before)).max(0)
}

/// Optimal target vector.
///
/// For a vertex order σ, paying each vertex its deficit
/// `max(0, τ(u) − Σ_{v before u} ω(uv))` activates the graph along σ, and
/// every target vector costs at least the deficit sum of the order in which
/// its activation rounds list the vertices. So the optimum is the minimum
/// deficit sum over all orders. A vertex's deficit depends only on the *set*
/// of its predecessors, so the minimum over the `n!` orders is computed by a
/// dynamic program over the `2^n` prefix sets.
pub fn exact_otv(instance: &Instance, cfg: &OracleConfig) -> Result<OracleResult> {
    let n = instance.n();
    check_limit(n, cfg.limits.target_vector)?;
    let c = Compiled::new(instance)?;
    let full = c.full_mask();
    // rest[S]: cheapest way to finish once exactly S is active.
    let mut rest = vec![0i64; 1usize << n];
    for k in (0..n).rev() {
        let masks = masks_of_size(n, k);
        let values = exec::map(cfg.exec, &masks, |&s| {
            (0..n)
                .filter(|&u| s >> u & 1 == 0)
                .map(|u| deficit(&c, u, s) + rest[(s | 1 << u) as usize])
                .min()
                .expect("k < n leaves a vertex to add")
        });
        for (s, v) in masks.into_iter().zip(values) {
            rest[s as usize] = v;
        }
    }

    // Lexicographically smallest optimal order.
    let mut p = vec![0i64; n];
    let mut s = 0u64;
    while s != full {
        let u = (0..n)
            .find(|&u| {
                s >> u & 1 == 0
                    && deficit(&c, u, s) + rest[(s | 1 << u) as usize] == rest[s as usize]
            })
            .expect("some extension attains the optimum");
        p[u] = deficit(&c, u, s);
        s |= 1 << u;
    }
    let p = IncentiveVector::new(p.into_iter().map(|x| c.unscale(x)).collect())?;
    if !is_target_vector(instance, &p)? || p.cost() != c.unscale(rest[0]) {
        return Err(Error::Unverified);
    }
    Ok(OracleResult {
        optimum: p.cost(),
        witness: Witness::Vector(p),
        explored: 1u64 << n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::instance::Mode;

    fn cfg() -> OracleConfig {
        OracleConfig::sequential()
    }

    #[test]
    fn min_target_set_examples() {
        let r = exact_min_target_set(&path3(), &cfg()).unwrap();
        assert_eq!(r.size(), 1);
        assert_eq!(r.witness_set().unwrap().to_vec(), vec![1]);

        let zero = Instance::from_triples(Mode::Undirected, [0, 0, 0], [(1, 2, 1)]).unwrap();
        let r = exact_min_target_set(&zero, &cfg()).unwrap();
        assert_eq!(r.size(), 0);
        assert!(r.witness_set().unwrap().is_empty());

        let arc = Instance::from_triples(Mode::Directed, [1, 1], [(1, 2, 1)]).unwrap();
        let r = exact_min_target_set(&arc, &cfg()).unwrap();
        assert_eq!(r.size(), 1);
        assert_eq!(r.witness_set().unwrap().to_vec(), vec![1]);
    }

    #[test]
    fn lexicographic_witness() {
        let p4 = Instance::from_triples(
            Mode::Undirected,
            [2, 1, 1, 2],
            [(1, 2, 1), (2, 3, 1), (3, 4, 1)],
        )
        .unwrap();
        let r = exact_min_target_set(&p4, &cfg()).unwrap();
        // Ends need τ=2 > degree 1, so both must be seeded.
        assert_eq!(r.witness_set().unwrap().to_vec(), vec![1, 4]);
    }

    #[test]
    fn otv_examples() {
        let single = edgeless(&[Rational::from(5)]);
        assert_eq!(
            exact_otv(&single, &cfg()).unwrap().optimum,
            Rational::from(5)
        );
        let r = exact_otv(&triangle(1, 1), &cfg()).unwrap();
        assert_eq!(r.optimum, Rational::ONE);
        assert_eq!(
            r.witness_vector().unwrap().values(),
            &[Rational::ONE, Rational::ZERO, Rational::ZERO]
        );
        let r = exact_otv(&triangle_with(1, [1, 2, 2]), &cfg()).unwrap();
        assert_eq!(r.optimum, Rational::from(2));
    }

    #[test]
    fn otv_handles_fractions() {
        let g = single_edge(
            Rational::new(1, 2),
            [Rational::new(3, 4), Rational::new(1, 3)],
        );
        // Order (2,1): pay 1/3, then 3/4 - 1/2 = 1/4; order (1,2): 3/4 + 0.
        assert_eq!(exact_otv(&g, &cfg()).unwrap().optimum, Rational::new(7, 12));
    }

    #[test]
    fn vertex_cover_examples() {
        let r = exact_min_vertex_cover(&path3(), &cfg()).unwrap();
        assert_eq!(r.size(), 1);
        assert_eq!(r.witness_set().unwrap().to_vec(), vec![2]);
        assert_eq!(
            exact_min_vertex_cover(&triangle(1, 1), &cfg())
                .unwrap()
                .size(),
            2
        );
        let e = edgeless(&[Rational::ZERO; 3]);
        assert_eq!(exact_min_vertex_cover(&e, &cfg()).unwrap().size(), 0);
    }

    #[test]
    fn limits_enforced() {
        let big = edgeless(&[Rational::ONE; 10]);
        assert_eq!(
            exact_otv(&big, &cfg()),
            Err(Error::TooLarge { n: 10, limit: 9 })
        );
        let mut c = cfg();
        c.limits.target_vector = 10;
        assert_eq!(exact_otv(&big, &c).unwrap().optimum, Rational::from(10));
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let g = cycle(&[2, 1, 2, 1, 2, 1, 1]);
        let par = OracleConfig::default();
        assert_eq!(
            exact_min_target_set(&g, &cfg()).unwrap(),
            exact_min_target_set(&g, &par).unwrap()
        );
        assert_eq!(exact_otv(&g, &cfg()).unwrap(), exact_otv(&g, &par).unwrap());
    }
}
