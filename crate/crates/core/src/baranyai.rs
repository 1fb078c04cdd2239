//! Baranyai decompositions of `K_n^{(ℓ)}` into perfect matchings, and the
//! uniform cross-edge sets built from them.
//!
//! The decomposition follows the integral-flow induction. Keep `C(n−1, ℓ−1)`
//! rows, each a multiset of `n/ℓ` parts partitioning the vertices added so far.
//! After `m` vertices every set `T ⊆ [m]` occurs as a part exactly
//! `C(n−m, ℓ−|T|)` times over all rows. To add vertex `m`, every row must grow
//! exactly one of its parts. Giving each occurrence of `T` the fractional
//! amount `(ℓ−|T|)/(n−m)` is a flow of value one per row that sends
//! `C(n−m−1, ℓ−|T|−1)` units into each `T`. Flow integrality therefore yields a
//! 0/1 choice with the same totals, which restores the invariant for `m + 1`.
//! At `m = n` every part is an ℓ-set and every ℓ-set occurs exactly once.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::combinatorics::{binomial, binomial_i, combinations, floor_u64};
use crate::error::{domain, Error, Result};
use crate::hypergraph::VertexSet;

/// Edge-disjoint perfect matchings whose union is every ℓ-subset of `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub n: usize,
    pub l: usize,
    pub matchings: Vec<Vec<Vec<usize>>>,
}

impl Decomposition {
    /// Checks every invariant: matching count, perfectness, and that each
    /// ℓ-set occurs exactly once overall.
    pub fn verify(&self) -> Result<()> {
        let (n, l) = (self.n, self.l);
        let expected = binomial(n as u64 - 1, l as u64 - 1) as usize;
        if self.matchings.len() != expected {
            return domain(format!(
                "{} matchings, expected {expected}",
                self.matchings.len()
            ));
        }
        let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
        for (i, m) in self.matchings.iter().enumerate() {
            let mut covered = vec![false; n];
            for e in m {
                if e.len() != l || e.windows(2).any(|w| w[0] >= w[1]) || e.iter().any(|&v| v >= n) {
                    return domain(format!(
                        "matching {i}: {e:?} is not a sorted {l}-set of 0..{n}"
                    ));
                }
                for &v in e {
                    if std::mem::replace(&mut covered[v], true) {
                        return domain(format!("matching {i} covers vertex {v} twice"));
                    }
                }
                *seen.entry(e.clone()).or_default() += 1;
            }
            if let Some(v) = covered.iter().position(|c| !c) {
                return domain(format!("matching {i} misses vertex {v}"));
            }
        }
        let total = binomial(n as u64, l as u64) as usize;
        if seen.len() != total || seen.values().any(|&c| c != 1) {
            return domain("matchings do not partition the complete edge set");
        }
        Ok(())
    }
}

/// Dinic max-flow on a small graph with integer capacities.
struct Flow {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
}

impl Flow {
    fn new(nodes: usize) -> Self {
        Flow {
            head: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    /// Returns the arc index; its reverse is `index ^ 1`.
    fn add(&mut self, u: usize, v: usize, c: i64) -> usize {
        let id = self.to.len();
        self.head[u].push(id);
        self.to.push(v);
        self.cap.push(c);
        self.head[v].push(id + 1);
        self.to.push(u);
        self.cap.push(0);
        id
    }

    fn levels(&self, s: usize, t: usize) -> Option<Vec<i64>> {
        let mut level = vec![-1; self.head.len()];
        level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &a in &self.head[u] {
                let v = self.to[a];
                if self.cap[a] > 0 && level[v] < 0 {
                    level[v] = level[u] + 1;
                    q.push_back(v);
                }
            }
        }
        (level[t] >= 0).then_some(level)
    }

    fn push(&mut self, u: usize, t: usize, f: i64, level: &[i64], it: &mut [usize]) -> i64 {
        if u == t {
            return f;
        }
        while it[u] < self.head[u].len() {
            let a = self.head[u][it[u]];
            let v = self.to[a];
            if self.cap[a] > 0 && level[v] == level[u] + 1 {
                let got = self.push(v, t, f.min(self.cap[a]), level, it);
                if got > 0 {
                    self.cap[a] -= got;
                    self.cap[a ^ 1] += got;
                    return got;
                }
            }
            it[u] += 1;
        }
        0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        while let Some(level) = self.levels(s, t) {
            let mut it = vec![0; self.head.len()];
            loop {
                let f = self.push(s, t, i64::MAX, &level, &mut it);
                if f == 0 {
                    break;
                }
                total += f;
            }
        }
        total
    }
}

/// Decomposes all ℓ-subsets of `0..n` into `C(n−1, ℓ−1)` perfect matchings.
pub fn decompose(n: usize, l: usize) -> Result<Decomposition> {
    if l == 0 {
        return Err(Error::InvalidUniformity(0));
    }
    if n == 0 || !n.is_multiple_of(l) {
        return domain(format!("n = {n} must be a positive multiple of ℓ = {l}"));
    }
    let rows = binomial(n as u64 - 1, l as u64 - 1) as usize;
    let parts_per_row = n / l;
    let mut table: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); parts_per_row]; rows];

    for m in 0..n {
        // distinct growable parts (|T| < ℓ) become flow nodes
        let mut part_id: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut parts: Vec<Vec<usize>> = Vec::new();
        for row in &table {
            for p in row {
                if p.len() < l && !part_id.contains_key(p) {
                    part_id.insert(p.clone(), parts.len());
                    parts.push(p.clone());
                }
            }
        }
        let source = 0;
        let sink = 1;
        let row_node = |r: usize| 2 + r;
        let part_node = |p: usize| 2 + rows + p;
        let mut flow = Flow::new(2 + rows + parts.len());
        for r in 0..rows {
            flow.add(source, row_node(r), 1);
        }
        let mut choice_arcs: Vec<Vec<(usize, usize)>> = vec![Vec::new(); rows];
        for (r, row) in table.iter().enumerate() {
            let mut mult: Vec<(usize, i64)> = Vec::new();
            for p in row.iter().filter(|p| p.len() < l) {
                let id = part_id[p];
                match mult.iter_mut().find(|(q, _)| *q == id) {
                    Some((_, c)) => *c += 1,
                    None => mult.push((id, 1)),
                }
            }
            for (id, c) in mult {
                let arc = flow.add(row_node(r), part_node(id), c);
                choice_arcs[r].push((arc, id));
            }
        }
        let remaining = (n - m - 1) as i64;
        for (id, p) in parts.iter().enumerate() {
            let need = binomial_i(remaining, (l - p.len()) as i64 - 1);
            flow.add(part_node(id), sink, need as i64);
        }
        let value = flow.max_flow(source, sink);
        if value != rows as i64 {
            return domain(format!("flow step {m} reached {value} of {rows} units"));
        }
        for (r, arcs) in choice_arcs.iter().enumerate() {
            let (_, id) = *arcs
                .iter()
                .find(|(arc, _)| flow.cap[arc ^ 1] > 0)
                .expect("every row routes one unit");
            let slot = table[r]
                .iter()
                .position(|p| *p == parts[id])
                .expect("chosen part occurs in its row");
            table[r][slot].push(m);
        }
    }

    let matchings = table
        .into_iter()
        .map(|mut row| {
            row.sort();
            row
        })
        .collect();
    let dec = Decomposition { n, l, matchings };
    dec.verify()?;
    Ok(dec)
}

/// k-sets each meeting `S` in exactly ℓ vertices, with every vertex of `S` in
/// exactly `target` of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossEdgeSet {
    pub edges: Vec<Vec<usize>>,
    pub target: u64,
}

impl CrossEdgeSet {
    /// Number of edges through each vertex of `s`, in the order of `s`.
    pub fn per_vertex_counts(&self, s: &VertexSet) -> Vec<u64> {
        s.members()
            .iter()
            .map(|v| self.edges.iter().filter(|e| e.contains(v)).count() as u64)
            .collect()
    }
}

/// `⌊η · C(|S|, ℓ−1) · C(n−|S|, k−ℓ)⌋`.
pub fn cross_edge_target(n: usize, k: usize, l: usize, s_size: usize, eta: &BigRational) -> u64 {
    let raw = binomial(s_size as u64, l as u64 - 1) * binomial((n - s_size) as u64, (k - l) as u64);
    floor_u64(&(eta * BigRational::from_integer(BigInt::from(raw))))
}

/// A set of cross edges with exactly `⌊η·C(|S|,ℓ−1)·C(n−|S|,k−ℓ)⌋` edges at
/// every vertex of `S`.
///
/// Each perfect matching of the decomposition of `S` raises every vertex of
/// `S` by the same amount, so the first `q` matchings are taken with all
/// `C(n−|S|, k−ℓ)` extensions per ℓ-set and matching `q+1` with the first `r`
/// extensions (lexicographic over `V∖S`) per ℓ-set.
pub fn uniform_cross_edges(
    n: usize,
    k: usize,
    l: usize,
    s: &VertexSet,
    eta: &BigRational,
) -> Result<CrossEdgeSet> {
    if k < 2 || l == 0 || l > k {
        return domain(format!("need k ≥ 2 and 1 ≤ ℓ ≤ k, got k = {k}, ℓ = {l}"));
    }
    if eta.is_negative() || *eta >= BigRational::one() {
        return domain("η must lie in [0, 1)");
    }
    let sz = s.len();
    if sz == 0 || !sz.is_multiple_of(l) || sz > n {
        return domain(format!(
            "|S| = {sz} must be a positive multiple of ℓ = {l} and at most n = {n}"
        ));
    }
    if let Some(&v) = s.members().iter().find(|&&v| v >= n) {
        return Err(Error::VertexOutOfRange {
            edge: s.members().to_vec(),
            vertex: v,
            n,
        });
    }
    if n - sz < k - l {
        return domain(format!("n − |S| = {} is below k − ℓ = {}", n - sz, k - l));
    }

    let target = cross_edge_target(n, k, l, sz, eta);
    let extensions_per_set = binomial((n - sz) as u64, (k - l) as u64);
    let capacity = binomial(sz as u64 - 1, l as u64 - 1) * extensions_per_set;
    if target > capacity {
        return Err(Error::CapacityExceeded { target, capacity });
    }
    if target == 0 {
        return Ok(CrossEdgeSet {
            edges: Vec::new(),
            target,
        });
    }

    let outside: Vec<usize> = (0..n).filter(|v| !s.contains(*v)).collect();
    let extensions = combinations(&outside, k - l);
    let dec = decompose(sz, l)?;
    let full = (target / extensions_per_set) as usize;
    let rest = (target % extensions_per_set) as usize;

    let mut edges = Vec::new();
    let extend = |block: &[usize], count: usize, edges: &mut Vec<Vec<usize>>| {
        for ext in &extensions[..count] {
            let mut e: Vec<usize> = block.iter().map(|&i| s.members()[i]).collect();
            e.extend_from_slice(ext);
            e.sort_unstable();
            edges.push(e);
        }
    };
    for matching in &dec.matchings[..full] {
        for block in matching {
            extend(block, extensions.len(), &mut edges);
        }
    }
    if rest > 0 {
        for block in &dec.matchings[full] {
            extend(block, rest, &mut edges);
        }
    }
    edges.sort();
    let set = CrossEdgeSet { edges, target };
    if set.per_vertex_counts(s).iter().any(|&c| c != target) {
        return domain("constructed edge set is not uniform on S");
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{int, ratio};

    #[test]
    fn small_decompositions() {
        let d = decompose(4, 2).unwrap();
        assert_eq!(d.matchings.len(), 3);
        assert!(d.matchings.iter().all(|m| m.len() == 2));
        let d = decompose(6, 3).unwrap();
        assert_eq!(d.matchings.len(), 10);
        assert!(d.matchings.iter().all(|m| m.len() == 2));
        let d = decompose(6, 2).unwrap();
        assert_eq!(d.matchings.len(), 5);
        assert!(d.matchings.iter().all(|m| m.len() == 3));
        let d = decompose(5, 1).unwrap();
        assert_eq!(
            d.matchings,
            vec![vec![vec![0], vec![1], vec![2], vec![3], vec![4]]]
        );
        let d = decompose(3, 3).unwrap();
        assert_eq!(d.matchings, vec![vec![vec![0, 1, 2]]]);
    }

    #[test]
    fn decompose_rejects() {
        assert!(decompose(7, 2).is_err());
        assert!(decompose(0, 2).is_err());
        assert!(decompose(4, 0).is_err());
    }

    #[test]
    fn verifier_catches_corruption() {
        let mut d = decompose(4, 2).unwrap();
        d.matchings[0][0] = vec![0, 2];
        assert!(d.verify().is_err());
        let mut d = decompose(4, 2).unwrap();
        d.matchings.pop();
        assert!(d.verify().is_err());
    }

    #[test]
    fn cross_edges_examples() {
        let s = VertexSet::new(0..4);
        let set = uniform_cross_edges(8, 3, 2, &s, &ratio(1, 2)).unwrap();
        assert_eq!(set.target, 8);
        assert_eq!(set.per_vertex_counts(&s), vec![8; 4]);
        assert!(set
            .edges
            .iter()
            .all(|e| e.iter().filter(|v| s.contains(**v)).count() == 2));

        let empty = uniform_cross_edges(8, 3, 2, &s, &int(0)).unwrap();
        assert!(empty.edges.is_empty());

        // ℓ = 1: ⌊η·C(n−|S|, k−1)⌋ per vertex
        let one = uniform_cross_edges(7, 3, 1, &[0, 1, 2].into(), &ratio(3, 4)).unwrap();
        assert_eq!(one.target, 4);
        assert_eq!(one.per_vertex_counts(&[0, 1, 2].into()), vec![4; 3]);
    }

    #[test]
    fn cross_edges_rejects() {
        let s = VertexSet::new(0..4);
        assert!(uniform_cross_edges(8, 3, 2, &s, &int(1)).is_err());
        assert!(uniform_cross_edges(8, 3, 3, &s, &ratio(1, 2)).is_err());
        assert!(uniform_cross_edges(4, 3, 2, &s, &ratio(1, 2)).is_err());
        // one 4-set, ℓ = 4: capacity 1 but ⌊(1/2)·C(4,3)⌋ = 2
        assert_eq!(
            uniform_cross_edges(4, 4, 4, &s, &ratio(1, 2)),
            Err(Error::CapacityExceeded {
                target: 2,
                capacity: 1
            })
        );
    }
}
