//! Integer matchings: exact maximum matching by branch-and-bound, a bounded
//! existence query, and an LP-guided greedy rounding heuristic.
//!
//! The search branches on a maximum-degree vertex `v` of the residual
//! hypergraph: one child per edge through `v`, tried in order of decreasing
//! fractional weight (canonical order breaks ties), and a final child in which
//! `v` stays unmatched. A node is discarded when a cheap counting bound or
//! `⌊ν*⌋` of the residual hypergraph shows it cannot beat the incumbent.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::combinatorics::floor_u64;
use crate::error::{domain, Result};
use crate::fractional::{self, FractionalMatching};
use crate::hypergraph::Hypergraph;

/// Pairwise disjoint edges, as strictly increasing indices into the
/// hypergraph's canonical edge list.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Matching {
    edge_indices: Vec<usize>,
}

impl Matching {
    /// Validates disjointness and index range.
    pub fn new(g: &Hypergraph, mut edge_indices: Vec<usize>) -> Result<Self> {
        edge_indices.sort_unstable();
        if edge_indices.windows(2).any(|w| w[0] == w[1]) {
            return domain("repeated edge index in matching");
        }
        let mut used = 0u128;
        for &i in &edge_indices {
            let Some(&m) = g.masks().get(i) else {
                return domain(format!("edge index {i} out of range"));
            };
            if used & m != 0 {
                return domain(format!("edge {:?} overlaps an earlier edge", g.edge(i)));
            }
            used |= m;
        }
        Ok(Matching { edge_indices })
    }

    fn from_sorted(mut edge_indices: Vec<usize>) -> Self {
        edge_indices.sort_unstable();
        Matching { edge_indices }
    }

    pub fn edge_indices(&self) -> &[usize] {
        &self.edge_indices
    }

    pub fn size(&self) -> usize {
        self.edge_indices.len()
    }

    pub fn edges<'g>(&'g self, g: &'g Hypergraph) -> impl Iterator<Item = &'g [usize]> + 'g {
        self.edge_indices.iter().map(move |&i| g.edge(i))
    }

    pub fn is_valid_for(&self, g: &Hypergraph) -> bool {
        Matching::new(g, self.edge_indices.clone()).is_ok()
    }
}

struct Search<'g> {
    g: &'g Hypergraph,
    /// prune any node whose bound does not exceed this
    floor: usize,
    best: Vec<usize>,
    stop_at: Option<usize>,
    nodes: u64,
}

impl Search<'_> {
    fn done(&self) -> bool {
        self.stop_at.is_some_and(|t| self.best.len() >= t)
    }

    fn run(&mut self, alive: &[usize], chosen: &mut Vec<usize>) {
        self.nodes += 1;
        if chosen.len() > self.best.len() {
            self.best = chosen.clone();
            self.floor = self.floor.max(chosen.len());
        }
        if alive.is_empty() || self.done() {
            return;
        }
        let masks = self.g.masks();
        let k = self.g.k();

        let covered = alive.iter().fold(0u128, |m, &i| m | masks[i]);
        let cheap = alive.len().min(covered.count_ones() as usize / k);
        if chosen.len() + cheap <= self.floor {
            return;
        }

        let residual = self.g.subhypergraph(alive);
        let lp = fractional::max_fractional_matching(&residual);
        let lp_bound = floor_u64(lp.size()) as usize;
        if chosen.len() + lp_bound <= self.floor {
            return;
        }

        // branching vertex: maximum residual degree, lowest label on ties
        let mut degree = [0usize; 128];
        for &i in alive {
            for &v in self.g.edge(i) {
                degree[v] += 1;
            }
        }
        let v = (0..self.g.n())
            .max_by_key(|&v| (degree[v], std::cmp::Reverse(v)))
            .expect("alive edges imply vertices");
        let vbit = 1u128 << v;

        // `residual` lists `alive` in canonical order, so positions line up
        let mut through: Vec<(usize, &BigRational)> = alive
            .iter()
            .enumerate()
            .filter(|(_, &i)| masks[i] & vbit != 0)
            .map(|(pos, &i)| (i, lp.weight(pos)))
            .collect();
        through.sort_by(|a, b| b.1.cmp(a.1).then(a.0.cmp(&b.0)));

        for (e, _) in through {
            let em = masks[e];
            let next: Vec<usize> = alive
                .iter()
                .copied()
                .filter(|&i| masks[i] & em == 0)
                .collect();
            chosen.push(e);
            self.run(&next, chosen);
            chosen.pop();
            if self.done() {
                return;
            }
        }
        let next: Vec<usize> = alive
            .iter()
            .copied()
            .filter(|&i| masks[i] & vbit == 0)
            .collect();
        self.run(&next, chosen);
    }
}

fn search(g: &Hypergraph, target: Option<usize>) -> (Matching, u64) {
    let alive: Vec<usize> = (0..g.edge_count()).collect();
    // a greedy matching in canonical order is the first incumbent
    let mut used = 0u128;
    let mut greedy = Vec::new();
    for (i, &m) in g.masks().iter().enumerate() {
        if used & m == 0 {
            used |= m;
            greedy.push(i);
        }
    }
    let mut s = Search {
        g,
        floor: greedy.len().max(target.map_or(0, |t| t.saturating_sub(1))),
        best: greedy,
        stop_at: target,
        nodes: 0,
    };
    s.run(&alive, &mut Vec::new());
    (Matching::from_sorted(s.best), s.nodes)
}

/// A maximum matching; deterministic under the canonical edge order.
pub fn max_matching(g: &Hypergraph) -> Matching {
    search(g, None).0
}

/// `ν(G)`.
pub fn matching_number(g: &Hypergraph) -> usize {
    max_matching(g).size()
}

/// Number of search nodes the exact solver visits on `g` (diagnostics).
pub fn search_nodes(g: &Hypergraph) -> u64 {
    search(g, None).1
}

/// A matching of exactly `s` edges when `ν(G) ≥ s`; the search stops as soon
/// as one is found.
pub fn has_matching_of_size(g: &Hypergraph, s: usize) -> Option<Matching> {
    if s == 0 {
        return Some(Matching::default());
    }
    let (m, _) = search(g, Some(s));
    if m.size() >= s {
        let mut idx = m.edge_indices;
        idx.truncate(s);
        Some(Matching::from_sorted(idx))
    } else {
        None
    }
}

/// Output of [`round_fractional`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rounding {
    pub matching: Matching,
    /// `shrink · size(F)`, the size a proportional rounding would aim for.
    pub scaled_fractional_size: BigRational,
}

/// Greedy rounding: scan the edges with positive weight in order of
/// decreasing weight (canonical order on ties) and keep every edge disjoint
/// from those already kept. Only validity is guaranteed, not size.
pub fn round_fractional(
    g: &Hypergraph,
    f: &FractionalMatching,
    shrink: &BigRational,
) -> Result<Rounding> {
    if !f.is_feasible_for(g) {
        return domain("F is not a fractional matching of G");
    }
    if !shrink.is_positive() || *shrink > BigRational::from_integer(BigInt::from(1)) {
        return domain("shrink factor must lie in (0, 1]");
    }
    let mut order: Vec<usize> = (0..g.edge_count())
        .filter(|&i| !f.weight(i).is_zero())
        .collect();
    order.sort_by(|&a, &b| f.weight(b).cmp(f.weight(a)).then(a.cmp(&b)));
    let mut used = 0u128;
    let mut picked = Vec::new();
    for i in order {
        let m = g.masks()[i];
        if used & m == 0 {
            used |= m;
            picked.push(i);
        }
    }
    Ok(Rounding {
        matching: Matching::from_sorted(picked),
        scaled_fractional_size: f.size() * shrink,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{int, ratio};
    use crate::constructions::{build_h_prime, build_h_s};

    fn cycle(n: usize) -> Hypergraph {
        Hypergraph::new(n, 2, (0..n).map(|i| vec![i, (i + 1) % n])).unwrap()
    }

    #[test]
    fn maximum_matchings() {
        let k63 = Hypergraph::complete(6, 3).unwrap();
        let m = max_matching(&k63);
        assert_eq!(m.size(), 2);
        assert!(m.is_valid_for(&k63));
        assert_eq!(matching_number(&build_h_s(9, 3, 3).unwrap()), 2);
        assert_eq!(matching_number(&build_h_prime(6, 3).unwrap()), 1);
        assert_eq!(matching_number(&cycle(5)), 2);
        assert_eq!(matching_number(&Hypergraph::new(3, 2, vec![]).unwrap()), 0);
    }

    #[test]
    fn bounded_queries() {
        let c5 = cycle(5);
        assert_eq!(has_matching_of_size(&c5, 0), Some(Matching::default()));
        assert_eq!(has_matching_of_size(&c5, 2).unwrap().size(), 2);
        assert!(has_matching_of_size(&c5, 3).is_none());
        let h = build_h_s(9, 3, 3).unwrap();
        assert!(has_matching_of_size(&h, 3).is_none());
        let w = has_matching_of_size(&h, 2).unwrap();
        assert!(w.is_valid_for(&h));
    }

    #[test]
    fn matching_validation() {
        let c5 = cycle(5);
        assert!(Matching::new(&c5, vec![0, 3]).is_ok());
        assert!(Matching::new(&c5, vec![0, 1]).is_err());
        assert!(Matching::new(&c5, vec![0, 0]).is_err());
        assert!(Matching::new(&c5, vec![9]).is_err());
    }

    #[test]
    fn rounding_examples() {
        let c5 = cycle(5);
        let f = FractionalMatching::new(&c5, vec![ratio(1, 2); 5]).unwrap();
        let r = round_fractional(&c5, &f, &int(1)).unwrap();
        assert_eq!(r.matching.size(), 2);
        assert_eq!(r.scaled_fractional_size, ratio(5, 2));

        // integral F on a non-maximal matching is recovered exactly
        let p = Hypergraph::new(4, 2, vec![vec![0, 1], vec![1, 2], vec![2, 3]]).unwrap();
        let f = FractionalMatching::new(&p, vec![int(0), int(1), int(0)]).unwrap();
        let r = round_fractional(&p, &f, &ratio(1, 2)).unwrap();
        assert_eq!(r.matching.edge_indices(), &[1]);

        let k63 = Hypergraph::complete(6, 3).unwrap();
        let f = FractionalMatching::new(&k63, vec![ratio(1, 10); 20]).unwrap();
        let r = round_fractional(&k63, &f, &int(1)).unwrap();
        assert_eq!(r.matching.size(), 2);

        assert!(round_fractional(&k63, &f, &int(0)).is_err());
        assert!(round_fractional(&k63, &f, &int(2)).is_err());
    }
}
