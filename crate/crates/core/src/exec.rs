//! Sequential / data-parallel dispatch for the enumeration loops.
//!
//! With the `parallel` feature disabled every call runs sequentially and
//! `Execution::Parallel` is accepted but ignored. Results never depend on the
//! choice: reductions are order-independent (min / max / all / ordered
//! collect).

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Ordered map.
pub(crate) fn map<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Largest `Some` value produced by `f`.
pub(crate) fn max_of<T, R, F>(exec: Execution, items: &[T], f: F) -> Option<R>
where
    T: Sync,
    R: Ord + Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().filter_map(f).max();
    }
    let _ = exec;
    items.iter().filter_map(f).max()
}

/// Smallest `Some` value produced by `f` over `0..len`.
pub(crate) fn min_over_range<R, F>(exec: Execution, len: u64, f: F) -> Option<R>
where
    R: Ord + Send,
    F: Fn(u64) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..len).into_par_iter().filter_map(f).min();
    }
    let _ = exec;
    (0..len).filter_map(f).min()
}

/// Masks of `n`-bit words with exactly `k` bits set, in increasing order.
pub(crate) fn masks_of_size(n: usize, k: usize) -> Vec<u64> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    if k == 0 {
        out.push(0);
        return out;
    }
    let limit = if n == 64 { u64::MAX } else { 1u64 << n };
    let mut m: u64 = crate::vertex_set::low_bits(k);
    loop {
        out.push(m);
        // Gosper's hack
        let c = m & m.wrapping_neg();
        let r = m.wrapping_add(c);
        if r == 0 {
            break;
        }
        m = (((r ^ m) >> 2) / c) | r;
        if m >= limit {
            break;
        }
    }
    out
}

/// Order-preserving key for equal-size masks: the larger key belongs to the
/// lexicographically smaller sorted id list.
pub(crate) fn lex_key(n: usize, mask: u64) -> u64 {
    mask.reverse_bits() >> (64 - n.max(1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn mask_enumeration_counts() {
        for n in 0..=10usize {
            for k in 0..=n {
                let ms = masks_of_size(n, k);
                assert_eq!(ms.len() as u64, binom(n as u64, k as u64), "n={n} k={k}");
                assert!(ms.iter().all(|m| m.count_ones() as usize == k));
                assert!(ms.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn lex_key_orders_sets() {
        // {1,4} precedes {2,3} lexicographically.
        assert!(lex_key(4, 0b1001) > lex_key(4, 0b0110));
        // {1,2} precedes {1,3}.
        assert!(lex_key(4, 0b0011) > lex_key(4, 0b0101));
    }

    #[test]
    fn both_modes_agree() {
        let items: Vec<u64> = (0..1000).collect();
        for exec in [Execution::Sequential, Execution::Parallel] {
            assert_eq!(map(exec, &items, |x| x * 2)[999], 1998);
            assert_eq!(
                max_of(exec, &items, |&x| (x % 7 == 3).then_some(x)),
                Some(997)
            );
            assert_eq!(
                min_over_range(exec, 100, |x| (x > 10).then_some(x)),
                Some(11)
            );
        }
    }
}
