//! Extremal constructions without large matchings.
//!
//! * `H(s)`: all k-sets meeting a fixed set of `s − 1` vertices (here the
//!   lowest-indexed ones). Every edge uses a fixed vertex, so no matching has
//!   `s` edges, and weight 1 on the fixed set is a fractional cover of size
//!   `s − 1`.
//! * `H′`: all k-sets meeting a near-half set `A` in an odd number of vertices,
//!   with `|A|` of the other parity than `n/k`. A perfect matching would write
//!   `|A|` as a sum of `n/k` odd numbers, which the parity choice forbids.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{domain, Result};
use crate::fractional::{self, FractionalCover};
use crate::hypergraph::Hypergraph;

/// `H(s) = K_n^{(k)} − K_{n−s+1}^{(k)}` with fixed set `{0, .., s−2}`.
pub fn build_h_s(n: usize, k: usize, s: usize) -> Result<Hypergraph> {
    if k < 2 {
        return domain(format!("H(s) needs k ≥ 2, got k = {k}"));
    }
    if s == 0 || (s - 1) * k > n {
        return domain(format!(
            "H(s) needs 1 ≤ s ≤ n/k + 1, got n = {n}, k = {k}, s = {s}"
        ));
    }
    // build the full edge list through the validated path so n is range-checked
    let complete = Hypergraph::complete(n, k)?;
    let fixed = s - 1;
    let edges = complete
        .edges()
        .iter()
        .filter(|e| e[0] < fixed)
        .cloned()
        .collect();
    Ok(Hypergraph::from_canonical(n, k, edges))
}

/// Size of the odd-intersection part `A = {0, .., |A|−1}` used by [`build_h_prime`]:
/// the value closest to `n/2` with `||A| − |B|| ≤ 2` and parity different
/// from `n/k`, ties going to the smaller value.
pub fn parity_split(n: usize, k: usize) -> Result<usize> {
    if k < 2 {
        return domain(format!("H′ needs k ≥ 2, got k = {k}"));
    }
    if n == 0 || !n.is_multiple_of(k) {
        return domain(format!(
            "H′ needs n a positive multiple of k, got n = {n}, k = {k}"
        ));
    }
    let parity = (n / k) % 2;
    let split = (0..=n)
        .filter(|a| a % 2 != parity && (2 * a).abs_diff(n) <= 2)
        .min_by_key(|a| ((2 * a).abs_diff(n), *a))
        .expect("both parities occur within distance 2 of n/2");
    Ok(split)
}

/// `H′`: k-sets with an odd number of vertices in `A = {0, .., |A|−1}`.
pub fn build_h_prime(n: usize, k: usize) -> Result<Hypergraph> {
    let a = parity_split(n, k)?;
    let complete = Hypergraph::complete(n, k)?;
    let edges = complete
        .edges()
        .iter()
        .filter(|e| e.iter().filter(|&&v| v < a).count() % 2 == 1)
        .cloned()
        .collect();
    Ok(Hypergraph::from_canonical(n, k, edges))
}

/// Exact finite-n data behind the lower bound `m_d^s ≥ f_d^s ≥ δ_d(H(s)) + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub hypergraph: Hypergraph,
    pub degree_order: usize,
    /// `δ_d(H(s))`.
    pub min_degree: usize,
    /// `s − 1`: the largest matching (integer or fractional) `H(s)` admits.
    pub claimed_max_matching: usize,
    /// Weight 1 on each fixed vertex, 0 elsewhere.
    pub witness_cover: FractionalCover,
    /// `ν*(H(s))` from the exact LP.
    pub fractional_matching_number: BigRational,
}

impl Certificate {
    /// The implied lower bound `δ_d(H(s)) + 1` on both thresholds.
    pub fn lower_bound(&self) -> usize {
        self.min_degree + 1
    }
}

pub fn eq1_certificate(n: usize, k: usize, d: usize, s: usize) -> Result<Certificate> {
    if k < 2 || d >= k {
        return domain(format!("need k ≥ 2 and 0 ≤ d ≤ k−1, got k = {k}, d = {d}"));
    }
    if s == 0 || s * k > n {
        return domain(format!("need 1 ≤ s ≤ n/k, got n = {n}, k = {k}, s = {s}"));
    }
    let h = build_h_s(n, k, s)?;
    let min_degree = h.min_d_degree(d)?;
    let weights = (0..n)
        .map(|v| {
            if v + 1 < s {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        })
        .collect();
    let witness_cover = FractionalCover::new(&h, weights)?;
    let nu_star = fractional::fractional_matching_number(&h);
    let claimed = BigRational::from_integer(BigInt::from(s - 1));
    assert_eq!(
        *witness_cover.size(),
        claimed,
        "witness cover has size s − 1"
    );
    assert_eq!(nu_star, claimed, "ν*(H(s)) must equal s − 1");
    Ok(Certificate {
        hypergraph: h,
        degree_order: d,
        min_degree,
        claimed_max_matching: s - 1,
        witness_cover,
        fractional_matching_number: nu_star,
    })
}

/// The closed form `C(n−d, k−d) − C(n−s+1−d, k−d)` for `δ_d(H(s))`.
pub fn h_s_min_degree_formula(n: usize, k: usize, d: usize, s: usize) -> u64 {
    use crate::combinatorics::binomial_i;
    let (n, k, d, s) = (n as i64, k as i64, d as i64, s as i64);
    binomial_i(n - d, k - d) - binomial_i(n - s + 1 - d, k - d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::int;
    use crate::hypergraph::VertexSet;

    #[test]
    fn h_s_examples() {
        let h = build_h_s(9, 3, 3).unwrap();
        assert_eq!(h.edge_count(), 49);
        assert_eq!(h.degree(&[2].into()).unwrap(), 13);
        assert_eq!(h.min_d_degree(1).unwrap(), 13);
        assert_eq!(build_h_s(7, 3, 1).unwrap().edge_count(), 0);
        let h = build_h_s(6, 3, 2).unwrap();
        assert_eq!(h.edge_count(), 10);
        assert!(h.edges().iter().all(|e| e.contains(&0)));
        let link = h.neighbourhood(&[0].into()).unwrap();
        assert_eq!(link.hypergraph, Hypergraph::complete(5, 2).unwrap());
        let avoid = h.induced(&VertexSet::new(1..6)).unwrap();
        assert_eq!(avoid.hypergraph.edge_count(), 0);
        let h = build_h_s(9, 3, 3).unwrap();
        assert_eq!(
            h.induced(&VertexSet::new(2..9))
                .unwrap()
                .hypergraph
                .edge_count(),
            0
        );
    }

    #[test]
    fn h_s_rejects() {
        assert!(build_h_s(9, 1, 2).is_err());
        assert!(build_h_s(9, 3, 0).is_err());
        assert!(build_h_s(9, 3, 5).is_err());
        assert!(build_h_s(9, 3, 4).is_ok());
    }

    #[test]
    fn parity_splits() {
        assert_eq!(parity_split(6, 3).unwrap(), 3);
        assert_eq!(parity_split(6, 2).unwrap(), 2);
        assert_eq!(parity_split(4, 2).unwrap(), 1);
        assert_eq!(parity_split(4, 4).unwrap(), 2);
        assert_eq!(parity_split(12, 3).unwrap(), 5);
        assert!(parity_split(7, 3).is_err());
        assert!(parity_split(0, 3).is_err());
    }

    #[test]
    fn h_prime_examples() {
        let h = build_h_prime(6, 3).unwrap();
        // |A| = 3: 3·C(3,2) edges meeting A once plus A itself
        assert_eq!(h.edge_count(), 10);
        assert_eq!(build_h_prime(12, 3).unwrap().edge_count(), 115);
        assert_eq!(build_h_prime(4, 4).unwrap().edge_count(), 0);
    }

    #[test]
    fn certificates() {
        let c = eq1_certificate(9, 3, 1, 3).unwrap();
        assert_eq!(c.min_degree, 13);
        assert_eq!(*c.witness_cover.size(), int(2));
        assert_eq!(c.fractional_matching_number, int(2));
        let c = eq1_certificate(6, 3, 0, 2).unwrap();
        assert_eq!(c.min_degree, 10);
        assert_eq!(c.fractional_matching_number, int(1));
        assert_eq!(c.witness_cover.weights()[0], int(1));
        let c = eq1_certificate(8, 4, 2, 1).unwrap();
        assert_eq!(c.hypergraph.edge_count(), 0);
        assert_eq!(c.fractional_matching_number, int(0));
        assert_eq!(c.lower_bound(), 1);
        assert!(eq1_certificate(9, 3, 3, 2).is_err());
        assert!(eq1_certificate(9, 3, 1, 4).is_err());
    }

    #[test]
    fn degree_formula_matches_examples() {
        assert_eq!(h_s_min_degree_formula(9, 3, 1, 3), 13);
        assert_eq!(h_s_min_degree_formula(9, 3, 0, 3), 49);
    }
}
