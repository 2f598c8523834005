//! Integer-scaled copy of an instance for the bitmask inner loops of the
//! oracles. All weights and thresholds are multiplied by the common
//! denominator, so comparisons stay exact.

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::rational::{common_denominator, Rational};

pub(crate) const MAX_MASK_VERTICES: usize = 64;

#[derive(Debug, Clone)]
pub(crate) struct Compiled {
    pub n: usize,
    pub scale: i64,
    pub thresholds: Vec<i64>,
    // in_adj[v]: (u, ω) with 0-based ids.
    pub in_adj: Vec<Vec<(usize, i64)>>,
    pub out_adj: Vec<Vec<(usize, i64)>>,
}

impl Compiled {
    pub fn new(instance: &Instance) -> Result<Self> {
        Self::with_extra(instance, &[])
    }

    /// Also folds `extra` (e.g. incentives) into the common scale.
    pub fn with_extra(instance: &Instance, extra: &[Rational]) -> Result<Self> {
        let n = instance.n();
        if n > MAX_MASK_VERTICES {
            return Err(Error::TooLarge {
                n,
                limit: MAX_MASK_VERTICES,
            });
        }
        let weights = instance.edges().iter().map(|e| &e.weight);
        let scale = common_denominator(
            instance
                .thresholds()
                .iter()
                .chain(weights)
                .chain(extra.iter()),
        )
        .ok_or(Error::Overflow)?;
        let to_int = |r: &Rational| r.scaled_to_integer(scale).ok_or(Error::Overflow);
        let thresholds = instance
            .thresholds()
            .iter()
            .map(to_int)
            .collect::<Result<Vec<_>>>()?;
        let mut in_adj = vec![Vec::new(); n];
        let mut out_adj = vec![Vec::new(); n];
        for v in instance.vertices() {
            for (u, w) in instance.in_neighbors(v) {
                let w = to_int(w)?;
                in_adj[v - 1].push((u - 1, w));
                out_adj[u - 1].push((v - 1, w));
            }
        }
        Ok(Compiled {
            n,
            scale,
            thresholds,
            in_adj,
            out_adj,
        })
    }

    pub fn unscale(&self, v: i64) -> Rational {
        Rational::new(v, self.scale)
    }

    pub fn full_mask(&self) -> u64 {
        crate::vertex_set::low_bits(self.n)
    }

    /// Σ ω over arcs from `mask` into `v`.
    #[inline]
    pub fn weight_from(&self, v: usize, mask: u64) -> i64 {
        self.in_adj[v]
            .iter()
            .filter(|(u, _)| mask >> u & 1 == 1)
            .map(|(_, w)| w)
            .sum()
    }

    /// Final active set of the activation process started from `seed`, with
    /// optional per-vertex incentive (already scaled).
    pub fn closure(&self, seed: u64, bonus: Option<&[i64]>) -> u64 {
        let n = self.n;
        let bonus_of = |v: usize| bonus.map_or(0, |b| b[v]);
        let mut received = vec![0i64; n];
        let mut active = seed;
        for v in 0..n {
            if bonus_of(v) >= self.thresholds[v] {
                active |= 1 << v;
            }
        }
        let mut frontier = active;
        while frontier != 0 {
            let mut bits = frontier;
            while bits != 0 {
                let u = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                for &(v, w) in &self.out_adj[u] {
                    received[v] += w;
                }
            }
            let mut next = 0u64;
            for v in 0..n {
                if active >> v & 1 == 0 && received[v] + bonus_of(v) >= self.thresholds[v] {
                    next |= 1 << v;
                }
            }
            active |= next;
            frontier = next;
        }
        active
    }
}
