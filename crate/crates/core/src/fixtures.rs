//! Small named instances used throughout the tests and docs.

use crate::instance::{Instance, Mode};
use crate::rational::Rational;

/// Path 1 - 2 - 3, unit weights, all thresholds 1.
pub fn path3() -> Instance {
    Instance::from_triples(Mode::Undirected, [1, 1, 1], [(1, 2, 1), (2, 3, 1)]).unwrap()
}

/// Triangle with uniform weight and uniform threshold.
pub fn triangle(weight: i64, tau: i64) -> Instance {
    triangle_with(weight, [tau, tau, tau])
}

pub fn triangle_with(weight: i64, taus: [i64; 3]) -> Instance {
    Instance::from_triples(
        Mode::Undirected,
        taus,
        [(1, 2, weight), (1, 3, weight), (2, 3, weight)],
    )
    .unwrap()
}

pub fn single_edge(weight: Rational, taus: [Rational; 2]) -> Instance {
    Instance::from_triples(Mode::Undirected, taus, [(1, 2, weight)]).unwrap()
}

/// Star with center 1 and leaves `2..=leaves+1`, unit weights.
pub fn star(center_tau: i64, leaf_tau: i64, leaves: usize) -> Instance {
    let mut taus = vec![center_tau];
    taus.extend(std::iter::repeat_n(leaf_tau, leaves));
    Instance::from_triples(Mode::Undirected, taus, (2..=leaves + 1).map(|l| (1, l, 1))).unwrap()
}

/// Cycle 1 - 2 - ... - n - 1, unit weights.
pub fn cycle(taus: &[i64]) -> Instance {
    let n = taus.len();
    Instance::from_triples(
        Mode::Undirected,
        taus.iter().copied(),
        (1..=n).map(|i| (i, i % n + 1, 1)),
    )
    .unwrap()
}

pub fn edgeless(taus: &[Rational]) -> Instance {
    Instance::new(Mode::Undirected, taus.to_vec(), Vec::new()).unwrap()
}
