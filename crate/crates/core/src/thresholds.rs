//! Exact small-case degree thresholds for integer and fractional matchings.
//!
//! The threshold for a target is `1 + max δ_d(H)` over all k-graphs `H` on
//! `n` vertices without the target matching. The maximum is found by a
//! depth-first search over the k-sets in lexicographic order that always
//! tries to include the next k-set first. Included k-sets keep the family
//! free of the target (adding edges never removes matchings, so only such
//! families matter), and a branch is cut once the best `δ_d` it could still
//! reach is no better than the incumbent. The incumbent starts at the best
//! verified construction (`H(s)` or a clique).
//!
//! When even `K_n^{(k)}` lacks the target, no hypergraph has minimum
//! d-degree above `C(n−d, k−d)` and the threshold is `C(n−d, k−d) + 1`.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::combinatorics::{binomial, combinations, subsets_of_range};
use crate::constructions::{build_h_s, eq1_certificate};
use crate::error::{domain, Error, Result};
use crate::fractional::{fractional_matching_number, min_fractional_cover};
use crate::hypergraph::{mask_of, Hypergraph};
use crate::matching::has_matching_of_size;

pub const DEFAULT_EDGE_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    /// An integer matching with `s` edges.
    Integer(usize),
    /// A fractional matching of at least this size.
    Fractional(BigRational),
}

impl Target {
    fn is_trivial(&self) -> bool {
        match self {
            Target::Integer(s) => *s == 0,
            Target::Fractional(t) => !t.is_positive(),
        }
    }

    /// Whether `g` contains a matching of the target size.
    pub fn present_in(&self, g: &Hypergraph) -> bool {
        match self {
            Target::Integer(s) => has_matching_of_size(g, *s).is_some(),
            Target::Fractional(t) => fractional_matching_number(g) >= *t,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdQuery {
    pub k: usize,
    pub n: usize,
    pub d: usize,
    pub target: Target,
    pub edge_cap: usize,
    pub workers: usize,
}

impl ThresholdQuery {
    /// `m_d^s(k, n)`.
    pub fn integer(k: usize, n: usize, d: usize, s: usize) -> Self {
        Self::with_target(k, n, d, Target::Integer(s))
    }

    /// `f_d^t(k, n)` for a rational target `t`.
    pub fn fractional(k: usize, n: usize, d: usize, t: BigRational) -> Self {
        Self::with_target(k, n, d, Target::Fractional(t))
    }

    fn with_target(k: usize, n: usize, d: usize, target: Target) -> Self {
        ThresholdQuery {
            k,
            n,
            d,
            target,
            edge_cap: DEFAULT_EDGE_CAP,
            workers: 1,
        }
    }

    pub fn edge_cap(mut self, cap: usize) -> Self {
        self.edge_cap = cap;
        self
    }

    pub fn workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    fn validate(&self) -> Result<()> {
        let (k, n, d) = (self.k, self.n, self.d);
        if k < 2 || k > n {
            return domain(format!("need 2 ≤ k ≤ n, got k = {k}, n = {n}"));
        }
        if d >= k {
            return Err(Error::DegreeOrder { d, max: k - 1 });
        }
        if let Target::Integer(s) = self.target {
            if s * k > n {
                return domain(format!("need 0 ≤ s ≤ n/k, got s = {s}, n = {n}, k = {k}"));
            }
        }
        if self.workers == 0 {
            return domain("workers must be at least 1");
        }
        let count = binomial(n as u64, k as u64);
        if count > self.edge_cap as u64 {
            return Err(Error::Infeasible(format!(
                "C({n},{k}) = {count} k-sets exceed the edge cap {}",
                self.edge_cap
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdResult {
    pub value: usize,
    /// A hypergraph with `δ_d = value − 1` and no target matching; absent
    /// for the trivial target.
    pub witness: Option<Hypergraph>,
    /// Search nodes visited.
    pub checked_count: u64,
}

struct Space {
    n: usize,
    k: usize,
    d: usize,
    target: Target,
    masks: Vec<u128>,
    /// indices of the d-subsets of each k-set
    dsets: Vec<Vec<usize>>,
    dset_count: usize,
}

impl Space {
    fn new(q: &ThresholdQuery) -> Self {
        let edges = subsets_of_range(q.n, q.k);
        let index: HashMap<u128, usize> = subsets_of_range(q.n, q.d)
            .iter()
            .enumerate()
            .map(|(i, s)| (mask_of(s), i))
            .collect();
        let dsets = edges
            .iter()
            .map(|e| {
                combinations(e, q.d)
                    .iter()
                    .map(|s| index[&mask_of(s)])
                    .collect()
            })
            .collect();
        Space {
            n: q.n,
            k: q.k,
            d: q.d,
            target: q.target.clone(),
            masks: edges.iter().map(|e| mask_of(e)).collect(),
            dsets,
            dset_count: index.len(),
        }
    }

    fn hypergraph(&self, included: &[usize]) -> Hypergraph {
        let edges = included
            .iter()
            .map(|&i| {
                (0..self.n)
                    .filter(|v| self.masks[i] >> v & 1 == 1)
                    .collect()
            })
            .collect();
        Hypergraph::from_canonical(self.n, self.k, edges)
    }

    /// Whether adding k-set `e` keeps the node's family target-free. On
    /// success returns the cover the child carries: for fractional targets a
    /// fractional cover of size below the target, reused while it still
    /// covers the new k-sets.
    fn extend(&self, node: &Node, e: usize) -> Option<Vec<BigRational>> {
        match &self.target {
            Target::Integer(s) => {
                let others: Vec<u128> = node.included.iter().map(|&i| self.masks[i]).collect();
                (!packs(&others, self.masks[e], s - 1)).then(Vec::new)
            }
            Target::Fractional(t) => {
                let load: BigRational = (0..self.n)
                    .filter(|v| self.masks[e] >> v & 1 == 1)
                    .map(|v| &node.cover[v])
                    .sum();
                if load >= BigRational::one() {
                    return Some(node.cover.clone());
                }
                let mut with = node.included.clone();
                with.push(e);
                let cover = min_fractional_cover(&self.hypergraph(&with));
                (cover.size() < t).then(|| cover.weights().to_vec())
            }
        }
    }
}

/// Whether `need` pairwise disjoint masks avoid `used`.
fn packs(masks: &[u128], used: u128, need: usize) -> bool {
    if need == 0 {
        return true;
    }
    masks
        .iter()
        .enumerate()
        .any(|(i, &m)| m & used == 0 && packs(&masks[i + 1..], used | m, need - 1))
}

#[derive(Clone)]
struct Node {
    next: usize,
    included: Vec<usize>,
    /// d-degrees of the included family
    have: Vec<usize>,
    /// d-degrees if every undecided k-set were included
    reach: Vec<usize>,
    cover: Vec<BigRational>,
}

struct Shared {
    best: AtomicUsize,
    witness: Mutex<(usize, Vec<usize>)>,
    nodes: AtomicU64,
}

impl Shared {
    fn offer(&self, value: usize, included: &[usize]) {
        let mut w = self.witness.lock().expect("witness lock");
        if value > w.0 {
            *w = (value, included.to_vec());
            self.best.store(value, Ordering::Relaxed);
        }
    }
}

enum Step {
    Leaf,
    Pruned,
    Children(Vec<Node>),
}

impl Space {
    fn step(&self, node: &Node, shared: &Shared) -> Step {
        let best = shared.best.load(Ordering::Relaxed);
        let have = node.have.iter().copied().min().unwrap_or(0);
        if have > best {
            shared.offer(have, &node.included);
        }
        let best = shared.best.load(Ordering::Relaxed);
        if node.reach.iter().copied().min().unwrap_or(0) <= best {
            return Step::Pruned;
        }
        let e = node.next;
        if e == self.masks.len() {
            return Step::Leaf;
        }
        let mut children = Vec::with_capacity(2);
        if let Some(cover) = self.extend(node, e) {
            let mut child = node.clone();
            child.next += 1;
            child.included.push(e);
            child.cover = cover;
            for &s in &self.dsets[e] {
                child.have[s] += 1;
            }
            children.push(child);
        }
        let mut child = node.clone();
        child.next += 1;
        for &s in &self.dsets[e] {
            child.reach[s] -= 1;
        }
        children.push(child);
        Step::Children(children)
    }

    fn dfs(&self, node: Node, shared: &Shared) -> u64 {
        let mut visited = 0;
        let mut stack = vec![node];
        while let Some(node) = stack.pop() {
            visited += 1;
            if let Step::Children(children) = self.step(&node, shared) {
                // push in reverse so the include child is explored first
                stack.extend(children.into_iter().rev());
            }
        }
        visited
    }
}

/// Best verified construction without the target: the `H(j)` family and
/// cliques on a prefix of the vertices.
fn seed(space: &Space) -> (usize, Hypergraph) {
    let (n, k, d) = (space.n, space.k, space.d);
    let mut candidates = Vec::new();
    for j in 1..=n / k + 1 {
        if let Ok(h) = build_h_s(n, k, j) {
            candidates.push(h);
        }
    }
    for m in k..=n {
        let clique = subsets_of_range(m, k);
        candidates.push(Hypergraph::from_canonical(n, k, clique));
    }
    candidates
        .into_iter()
        .filter(|h| !space.target.present_in(h))
        .map(|h| (h.min_d_degree(d).expect("d < k ≤ n"), h))
        .max_by_key(|(deg, _)| *deg)
        .expect("H(1) is empty and never contains a non-trivial target")
}

/// Exact threshold for `q` with an extremal witness.
pub fn threshold_exact(q: &ThresholdQuery) -> Result<ThresholdResult> {
    q.validate()?;
    if q.target.is_trivial() {
        return Ok(ThresholdResult {
            value: 0,
            witness: None,
            checked_count: 0,
        });
    }
    let space = Space::new(q);
    let (seed_degree, seed_graph) = seed(&space);
    let shared = Shared {
        best: AtomicUsize::new(seed_degree),
        witness: Mutex::new((seed_degree, Vec::new())),
        nodes: AtomicU64::new(0),
    };
    let full = binomial((q.n - q.d) as u64, (q.k - q.d) as u64) as usize;
    let root = Node {
        next: 0,
        included: Vec::new(),
        have: vec![0; space.dset_count],
        reach: vec![full; space.dset_count],
        cover: match q.target {
            Target::Integer(_) => Vec::new(),
            Target::Fractional(_) => vec![BigRational::zero(); q.n],
        },
    };

    if q.workers == 1 {
        shared
            .nodes
            .store(space.dfs(root, &shared), Ordering::Relaxed);
    } else {
        // expand breadth-first into enough independent subtrees
        let mut frontier = vec![root];
        let mut expanded = 0u64;
        while frontier.len() < 4 * q.workers {
            let mut next = Vec::new();
            let mut grew = false;
            for node in frontier {
                expanded += 1;
                match space.step(&node, &shared) {
                    Step::Children(c) => {
                        grew = true;
                        next.extend(c);
                    }
                    Step::Leaf => {}
                    Step::Pruned => {}
                }
            }
            frontier = next;
            if !grew {
                break;
            }
        }
        shared.nodes.store(expanded, Ordering::Relaxed);
        frontier.reverse();
        let queue = Mutex::new(frontier);
        std::thread::scope(|scope| {
            for _ in 0..q.workers {
                scope.spawn(|| loop {
                    let Some(node) = queue.lock().expect("queue lock").pop() else {
                        break;
                    };
                    let visited = space.dfs(node, &shared);
                    shared.nodes.fetch_add(visited, Ordering::Relaxed);
                });
            }
        });
    }

    let (best, included) = shared.witness.into_inner().expect("witness lock");
    let witness = if best == seed_degree {
        seed_graph
    } else {
        space.hypergraph(&included)
    };
    Ok(ThresholdResult {
        value: best + 1,
        witness: Some(witness),
        checked_count: shared.nodes.into_inner(),
    })
}

/// How the `H(s)` certificate compares with exact thresholds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBoundReport {
    /// `δ_d(H(s)) + 1`.
    pub lower_bound: usize,
    /// Exact `m_d^s` when the instance fits the default edge cap.
    pub exact_integer: Option<usize>,
    /// Exact `f_d^s` when the instance fits the default edge cap.
    pub exact_fractional: Option<usize>,
    /// `lower_bound ≤ f ≤ m` on whatever was computed.
    pub consistent: bool,
}

impl LowerBoundReport {
    pub fn tight(&self) -> Option<bool> {
        self.exact_integer.map(|m| m == self.lower_bound)
    }
}

pub fn verify_lower_bound(n: usize, k: usize, d: usize, s: usize) -> Result<LowerBoundReport> {
    let cert = eq1_certificate(n, k, d, s)?;
    let lower_bound = cert.lower_bound();
    let (exact_integer, exact_fractional) =
        if binomial(n as u64, k as u64) <= DEFAULT_EDGE_CAP as u64 {
            let m = threshold_exact(&ThresholdQuery::integer(k, n, d, s))?.value;
            let t = BigRational::from_integer(BigInt::from(s));
            let f = threshold_exact(&ThresholdQuery::fractional(k, n, d, t))?.value;
            (Some(m), Some(f))
        } else {
            (None, None)
        };
    let consistent = match (exact_fractional, exact_integer) {
        (Some(f), Some(m)) => lower_bound <= f && f <= m,
        _ => true,
    };
    Ok(LowerBoundReport {
        lower_bound,
        exact_integer,
        exact_fractional,
        consistent,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmoothnessReport {
    /// `f_0^s(k, n)`.
    pub at_s: usize,
    /// `f_0^{s+1}(k, n)`.
    pub at_next: usize,
    /// `k·C(n−1, k−1) + 1`: removing the edges at `k` vertices lowers the
    /// fractional matching number by at most one.
    pub allowance: usize,
    pub holds: bool,
}

/// Checks `f_0^{s+1} ≤ f_0^s + k·C(n−1, k−1) + 1` by exact enumeration.
pub fn smoothness_check(k: usize, n: usize, s: usize) -> Result<SmoothnessReport> {
    let at = |t: usize| {
        let t = BigRational::from_integer(BigInt::from(t));
        threshold_exact(&ThresholdQuery::fractional(k, n, 0, t)).map(|r| r.value)
    };
    let (at_s, at_next) = (at(s)?, at(s + 1)?);
    let allowance = k * binomial(n as u64 - 1, k as u64 - 1) as usize + 1;
    Ok(SmoothnessReport {
        at_s,
        at_next,
        allowance,
        holds: at_next <= at_s + allowance,
    })
}

impl ThresholdResult {
    /// Re-checks the witness: `δ_d = value − 1` and no target matching.
    pub fn witness_valid(&self, q: &ThresholdQuery) -> bool {
        match &self.witness {
            None => self.value == 0 && q.target.is_trivial(),
            Some(h) => h.min_d_degree(q.d).ok() == Some(self.value - 1) && !q.target.present_in(h),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{int, ratio};

    #[test]
    fn graph_thresholds() {
        let q = ThresholdQuery::integer(2, 5, 0, 2);
        let r = threshold_exact(&q).unwrap();
        assert_eq!(r.value, 5);
        let star = Hypergraph::new(5, 2, (1..5).map(|v| vec![0, v])).unwrap();
        assert_eq!(r.witness.as_ref(), Some(&star));
        assert!(r.witness_valid(&q));

        let q = ThresholdQuery::fractional(2, 4, 0, int(2));
        let r = threshold_exact(&q).unwrap();
        assert_eq!(r.value, 4);
        assert!(r.witness_valid(&q));

        let r = threshold_exact(&ThresholdQuery::integer(2, 6, 0, 0)).unwrap();
        assert_eq!((r.value, r.witness), (0, None));
    }

    #[test]
    fn vacuous_targets() {
        // K_5 has ν* = 5/2 < 3, so no graph on 5 vertices reaches the target
        let q = ThresholdQuery::fractional(2, 5, 0, int(3));
        let r = threshold_exact(&q).unwrap();
        assert_eq!(r.value, 11);
        assert_eq!(r.witness.unwrap().edge_count(), 10);
    }

    #[test]
    fn positive_degree_orders() {
        // the star is the best 2-matching-free graph, with minimum degree 1
        let q = ThresholdQuery::integer(2, 5, 1, 2);
        let r = threshold_exact(&q).unwrap();
        assert!(r.witness_valid(&q));
        assert_eq!(r.value, 2);
        let q = ThresholdQuery::integer(3, 6, 1, 2);
        let r = threshold_exact(&q).unwrap();
        assert!(r.witness_valid(&q));
    }

    #[test]
    fn workers_agree() {
        for workers in [1, 2, 3] {
            let q = ThresholdQuery::integer(2, 6, 0, 3).workers(workers);
            assert_eq!(threshold_exact(&q).unwrap().value, 11);
            let q = ThresholdQuery::fractional(2, 5, 1, ratio(5, 2)).workers(workers);
            let r = threshold_exact(&q).unwrap();
            assert!(r.witness_valid(&q));
        }
    }

    #[test]
    fn refusals() {
        assert!(matches!(
            threshold_exact(&ThresholdQuery::integer(3, 7, 0, 2)),
            Err(Error::Infeasible(_))
        ));
        assert!(threshold_exact(&ThresholdQuery::integer(3, 7, 0, 2).edge_cap(35)).is_ok());
        assert!(threshold_exact(&ThresholdQuery::integer(2, 5, 2, 1)).is_err());
        assert!(threshold_exact(&ThresholdQuery::integer(2, 5, 0, 3)).is_err());
        assert!(threshold_exact(&ThresholdQuery::integer(2, 5, 0, 1).workers(0)).is_err());
    }

    #[test]
    fn lower_bound_reports() {
        let r = verify_lower_bound(5, 2, 0, 2).unwrap();
        assert_eq!((r.lower_bound, r.exact_integer), (5, Some(5)));
        assert_eq!(r.tight(), Some(true));
        assert!(r.consistent);
        let r = verify_lower_bound(9, 3, 1, 3).unwrap();
        assert_eq!(r.lower_bound, 14);
        assert_eq!(r.tight(), None);
    }

    #[test]
    fn smoothness_examples() {
        let r = smoothness_check(2, 4, 1).unwrap();
        assert_eq!((r.at_s, r.at_next), (1, 4));
        assert!(r.holds);
        let r = smoothness_check(2, 5, 2).unwrap();
        assert_eq!((r.at_s, r.at_next), (5, 11));
        assert!(r.holds);
    }
}
