//! Test-side oracles and generators, independent of the library's solvers.

#![allow(dead_code)]

use hypermatch::combinatorics::subsets_of_range;
use hypermatch::Hypergraph;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Random k-graph on `n` vertices keeping each k-set with probability `p`.
pub fn random_hypergraph(rng: &mut ChaCha8Rng, n: usize, k: usize, p: f64) -> Hypergraph {
    let edges: Vec<Vec<usize>> = subsets_of_range(n, k)
        .into_iter()
        .filter(|_| rng.gen_bool(p))
        .collect();
    Hypergraph::new(n, k, edges).unwrap()
}

/// Random k-graph with exactly `m` distinct edges (or all of them if fewer).
pub fn random_with_edges(rng: &mut ChaCha8Rng, n: usize, k: usize, m: usize) -> Hypergraph {
    let mut all = subsets_of_range(n, k);
    let mut picked = Vec::new();
    while picked.len() < m && !all.is_empty() {
        let i = rng.gen_range(0..all.len());
        picked.push(all.swap_remove(i));
    }
    Hypergraph::new(n, k, picked).unwrap()
}

/// Largest matching by trying every subset of edges, no pruning.
pub fn brute_matching_number(edges: &[Vec<usize>]) -> usize {
    assert!(edges.len() <= 24, "exhaustive oracle limited to 24 edges");
    let mut best = 0;
    for bits in 0u32..(1u32 << edges.len()) {
        let size = bits.count_ones() as usize;
        if size <= best {
            continue;
        }
        let mut used = std::collections::HashSet::new();
        let disjoint = (0..edges.len())
            .filter(|i| bits >> i & 1 == 1)
            .all(|i| edges[i].iter().all(|v| used.insert(*v)));
        if disjoint {
            best = size;
        }
    }
    best
}

/// Number of edges of `edges` that contain every vertex of `set`.
pub fn brute_degree(edges: &[Vec<usize>], set: &[usize]) -> usize {
    edges
        .iter()
        .filter(|e| set.iter().all(|v| e.contains(v)))
        .count()
}

/// `C(n, k)` by the multiplicative formula in `u128`.
pub fn choose(n: i64, k: i64) -> u64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..k as u128 {
        r = r * (n as u128 - i) / (i + 1);
    }
    r as u64
}
