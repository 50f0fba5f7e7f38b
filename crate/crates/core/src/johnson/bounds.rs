//! Closed-form bounds on stable sets of Johnson graphs and the objects that
//! attain or witness them.

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, Pow};

use super::enumerate::StableSets;
use super::graph::DenseJohnson;
use crate::subset::{binomial, ElementSet};

/// `C(n, r) / (n + 1 - r)`, the largest possible stable set in `J(n, r)`.
pub fn max_stable_bound(n: u64, r: u64) -> Ratio<u128> {
    assert!(r <= n, "rank {r} exceeds ground set size {n}");
    Ratio::new(binomial(n, r), (n + 1 - r) as u128)
}

/// Upper bound on the number of maximal stable sets of size `k` in any graph
/// on `vertices` vertices: `⌊N/k⌋^(k-α) · ⌊N/k + 1⌋^α` with `α = N mod k`.
pub fn byskov_bound(vertices: u64, k: u64) -> BigUint {
    assert!(k >= 1, "maximal stable set size must be positive");
    let q = vertices / k;
    let alpha = vertices % k;
    let low = Pow::pow(BigUint::from(q), (k - alpha) as u32);
    let high = Pow::pow(BigUint::from(q + 1), alpha as u32);
    low * high
}

/// `2^((1/n)·C(n, ⌊n/2⌋))` is below `count`, checked exactly as
/// `count^n > 2^C(n, ⌊n/2⌋)`.
pub fn exceeds_graham_sloane(n: u64, count: u128) -> bool {
    if n == 0 {
        return count >= 1;
    }
    let exponent = binomial(n, n / 2);
    let lhs = Pow::pow(BigUint::from(count), n as u32);
    let rhs = BigUint::one() << (exponent as usize);
    lhs > rhs
}

/// The Fano plane as the Steiner triple system `S(7, 3, 2)`: the seven
/// translates of `{1, 2, 4}` mod 7.
pub fn steiner_triple_system_7() -> Vec<ElementSet> {
    let mut blocks: Vec<ElementSet> = (0..7u32)
        .map(|shift| [0u32, 1, 3].iter().map(|&b| (b + shift) % 7 + 1).collect())
        .collect();
    blocks.sort_unstable();
    blocks
}

/// Histogram of maximal stable set sizes: entry `k` counts the maximal
/// stable sets with `k` vertices.
pub fn maximal_stable_set_sizes(graph: &DenseJohnson) -> Vec<u128> {
    let mut hist = vec![0u128; graph.vertex_count() + 1];
    for s in StableSets::new(graph, None) {
        if graph.is_maximal_stable(s) {
            hist[s.len()] += 1;
        }
    }
    hist
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::johnson::graph::is_stable;

    #[test]
    fn max_stable_examples() {
        assert_eq!(max_stable_bound(4, 2), Ratio::from_integer(2));
        assert_eq!(max_stable_bound(7, 3), Ratio::from_integer(7));
        for n in 1..10 {
            assert_eq!(max_stable_bound(n, 1), Ratio::from_integer(1));
        }
    }

    #[test]
    fn fano_attains_bound() {
        let fano = steiner_triple_system_7();
        assert_eq!(fano.len(), 7);
        assert!(is_stable(&fano));
        // every pair of [7] lies in exactly one block
        for pair in ElementSet::full(7).subsets_of_size(2) {
            assert_eq!(fano.iter().filter(|b| pair.is_subset(**b)).count(), 1);
        }
    }

    #[test]
    fn byskov_examples() {
        assert_eq!(byskov_bound(10, 3), BigUint::from(36u32));
        for k in 1..12 {
            assert_eq!(byskov_bound(k, k), BigUint::from(1u32));
        }
    }

    #[test]
    fn byskov_holds_on_j52() {
        let g = DenseJohnson::new(5, 2).unwrap();
        let hist = maximal_stable_set_sizes(&g);
        // J(5,2) is the complement of the Petersen graph, so its maximal
        // stable sets are the 15 Petersen edges
        assert_eq!(hist[2], 15);
        for (k, &count) in hist.iter().enumerate().skip(1) {
            assert!(BigUint::from(count) <= byskov_bound(10, k as u64), "k={k}");
        }
        assert_eq!(hist[0], 0);
    }

    #[test]
    fn graham_sloane_small() {
        assert!(exceeds_graham_sloane(4, 22));
        assert!(!exceeds_graham_sloane(4, 2));
    }
}
