//! Fractional matchings and fractional vertex covers.
//!
//! The maximum fractional matching is the LP `max Σ x_e` subject to
//! `Σ_{e ∋ v} x_e ≤ 1` for every vertex; its dual is the minimum fractional
//! vertex cover. Both are solved in one exact simplex run and every returned
//! pair is checked for feasibility and equal size before it leaves this module.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::combinatorics::combinations;
use crate::error::{domain, Error, Result};
use crate::hypergraph::{Hypergraph, VertexSet};
use crate::simplex;

fn one() -> BigRational {
    BigRational::one()
}

/// Edge weights in `[0, 1]`, indexed like the hypergraph's canonical edge list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalMatching {
    weights: Vec<BigRational>,
    size: BigRational,
}

impl FractionalMatching {
    /// Builds and validates a fractional matching of `g`.
    pub fn new(g: &Hypergraph, weights: Vec<BigRational>) -> Result<Self> {
        if weights.len() != g.edge_count() {
            return domain(format!(
                "{} weights given for {} edges",
                weights.len(),
                g.edge_count()
            ));
        }
        let fm = Self::unchecked(weights);
        if let Some(v) = fm.overloaded_vertex(g) {
            return domain(format!("vertex {v} carries load above 1"));
        }
        if fm.weights.iter().any(|w| w.is_negative() || *w > one()) {
            return domain("edge weight outside [0, 1]");
        }
        Ok(fm)
    }

    fn unchecked(weights: Vec<BigRational>) -> Self {
        let size = weights.iter().fold(BigRational::zero(), |acc, w| acc + w);
        FractionalMatching { weights, size }
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    pub fn weight(&self, edge: usize) -> &BigRational {
        &self.weights[edge]
    }

    pub fn size(&self) -> &BigRational {
        &self.size
    }

    fn overloaded_vertex(&self, g: &Hypergraph) -> Option<usize> {
        let mut load = vec![BigRational::zero(); g.n()];
        for (e, w) in g.edges().iter().zip(&self.weights) {
            for &v in e {
                load[v] += w;
            }
        }
        load.iter().position(|l| *l > one())
    }

    pub fn is_feasible_for(&self, g: &Hypergraph) -> bool {
        self.weights.len() == g.edge_count()
            && self.weights.iter().all(|w| !w.is_negative() && *w <= one())
            && self.overloaded_vertex(g).is_none()
    }
}

/// Vertex weights in `[0, 1]` covering every edge with total weight at least 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalCover {
    weights: Vec<BigRational>,
    size: BigRational,
}

impl FractionalCover {
    /// Builds and validates a fractional vertex cover of `g`.
    pub fn new(g: &Hypergraph, weights: Vec<BigRational>) -> Result<Self> {
        if weights.len() != g.n() {
            return domain(format!(
                "{} weights given for {} vertices",
                weights.len(),
                g.n()
            ));
        }
        let c = Self::unchecked(weights);
        if c.weights.iter().any(|w| w.is_negative() || *w > one()) {
            return domain("vertex weight outside [0, 1]");
        }
        if let Some(e) = c.uncovered_edge(g) {
            return domain(format!("edge {:?} has weight sum below 1", g.edge(e)));
        }
        Ok(c)
    }

    fn unchecked(weights: Vec<BigRational>) -> Self {
        let size = weights.iter().fold(BigRational::zero(), |acc, w| acc + w);
        FractionalCover { weights, size }
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    pub fn weight(&self, v: usize) -> &BigRational {
        &self.weights[v]
    }

    pub fn size(&self) -> &BigRational {
        &self.size
    }

    pub fn edge_sum(&self, edge: &[usize]) -> BigRational {
        edge.iter()
            .fold(BigRational::zero(), |acc, &v| acc + &self.weights[v])
    }

    fn uncovered_edge(&self, g: &Hypergraph) -> Option<usize> {
        g.edges().iter().position(|e| self.edge_sum(e) < one())
    }

    pub fn covers(&self, g: &Hypergraph) -> bool {
        self.weights.len() == g.n()
            && self.weights.iter().all(|w| !w.is_negative() && *w <= one())
            && self.uncovered_edge(g).is_none()
    }

    /// `E_w`: every k-subset of the vertex set whose weight sum reaches 1.
    pub fn closure(&self, k: usize) -> Hypergraph {
        let vertices: Vec<usize> = (0..self.weights.len()).collect();
        let edges = combinations(&vertices, k)
            .into_iter()
            .filter(|e| self.edge_sum(e) >= one())
            .collect();
        Hypergraph::from_canonical(self.weights.len(), k, edges)
    }
}

/// An optimal primal/dual pair of equal size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpCertificate {
    pub matching: FractionalMatching,
    pub cover: FractionalCover,
}

/// Solves the fractional matching LP and its dual exactly.
///
/// Panics if the solver's own certificate fails to verify; that can only be a
/// solver bug.
pub fn solve(g: &Hypergraph) -> LpCertificate {
    // isolated vertices give empty rows: their slack stays basic with dual 0
    let active: Vec<usize> = {
        let mut seen = vec![false; g.n()];
        for e in g.edges() {
            for &v in e {
                seen[v] = true;
            }
        }
        (0..g.n()).filter(|&v| seen[v]).collect()
    };
    let mut row_of = vec![usize::MAX; g.n()];
    for (r, &v) in active.iter().enumerate() {
        row_of[v] = r;
    }
    let mut a = vec![vec![BigRational::zero(); g.edge_count()]; active.len()];
    for (j, e) in g.edges().iter().enumerate() {
        for &v in e {
            a[row_of[v]][j] = one();
        }
    }
    let b = vec![one(); active.len()];
    let c = vec![one(); g.edge_count()];
    let sol = simplex::maximize(&a, &b, &c).expect("matching LP is bounded with b = 1");

    let mut cover = vec![BigRational::zero(); g.n()];
    for (r, &v) in active.iter().enumerate() {
        cover[v] = sol.dual[r].clone();
    }
    let matching = FractionalMatching::unchecked(sol.primal);
    let cover = FractionalCover::unchecked(cover);
    assert!(
        matching.is_feasible_for(g),
        "simplex returned an infeasible matching"
    );
    assert!(cover.covers(g), "simplex returned an infeasible cover");
    assert_eq!(matching.size, sol.value, "objective bookkeeping drifted");
    assert_eq!(matching.size, cover.size, "primal and dual sizes differ");
    LpCertificate { matching, cover }
}

pub fn max_fractional_matching(g: &Hypergraph) -> FractionalMatching {
    solve(g).matching
}

pub fn min_fractional_cover(g: &Hypergraph) -> FractionalCover {
    solve(g).cover
}

/// `ν*(G)`.
pub fn fractional_matching_number(g: &Hypergraph) -> BigRational {
    solve(g).matching.size
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityReport {
    pub primal: BigRational,
    pub dual: BigRational,
    pub equal: bool,
}

/// Largest fractional matching versus smallest fractional cover, compared
/// exactly. Both objects are re-validated against `g` independently of the
/// solver.
pub fn check_duality(g: &Hypergraph) -> DualityReport {
    let cert = solve(g);
    let feasible = cert.matching.is_feasible_for(g) && cert.cover.covers(g);
    let primal = cert.matching.size().clone();
    let dual = cert.cover.size().clone();
    DualityReport {
        equal: feasible && primal == dual,
        primal,
        dual,
    }
}

/// Output of [`transform_cover`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformedCover {
    /// Weights on `V∖L`, relabeled as in `index_map`.
    pub cover: FractionalCover,
    /// `index_map[new] = old`, matching `Hypergraph::neighbourhood(L)`.
    pub index_map: Vec<usize>,
    /// The common (averaged) weight of the vertices of `L`.
    pub link_weight: BigRational,
    /// Link of `L` inside the cover closure `E_w`, on the relabeled vertices.
    pub closure_link: Hypergraph,
    /// Whether `cover` covers every edge of `closure_link` (exact check).
    pub feasible: bool,
}

/// Shifts and rescales a cover so that it covers the link of `l`:
/// `w'(v) = clamp((w(v) − w(L)) / (1 − k·w(L)), 0, 1)` on `V∖L`, after the
/// weights on `L` have been replaced by their average `w(L)`.
pub fn transform_cover(
    g: &Hypergraph,
    w: &FractionalCover,
    l: &VertexSet,
) -> Result<TransformedCover> {
    let k = g.k();
    let d = l.len();
    if d == 0 || d + 2 > k {
        return domain(format!(
            "|L| = {d} must satisfy 1 ≤ |L| ≤ k−2 = {}",
            k as i64 - 2
        ));
    }
    if let Some(&v) = l.members().iter().find(|&&v| v >= g.n()) {
        return Err(Error::VertexOutOfRange {
            edge: l.members().to_vec(),
            vertex: v,
            n: g.n(),
        });
    }
    if w.weights().len() != g.n() {
        return domain("cover has the wrong number of vertices");
    }
    let total_l = l
        .members()
        .iter()
        .fold(BigRational::zero(), |acc, &v| acc + w.weight(v));
    let wl = total_l / BigRational::from_integer(BigInt::from(d));
    let kq = BigRational::from_integer(BigInt::from(k));
    if &wl * &kq >= one() {
        return domain("w(L) must be strictly below 1/k");
    }
    let denom = one() - &kq * &wl;

    let index_map: Vec<usize> = (0..g.n()).filter(|v| !l.contains(*v)).collect();
    let weights: Vec<BigRational> = index_map
        .iter()
        .map(|&v| {
            let star = (w.weight(v) - &wl) / &denom;
            if star.is_negative() {
                BigRational::zero()
            } else if star > one() {
                one()
            } else {
                star
            }
        })
        .collect();

    let shifted_l = BigRational::from_integer(BigInt::from(d)) * &wl;
    let local: Vec<usize> = (0..index_map.len()).collect();
    let closure_edges: Vec<Vec<usize>> = combinations(&local, k - d)
        .into_iter()
        .filter(|f| {
            let s = f
                .iter()
                .fold(shifted_l.clone(), |acc, &i| acc + w.weight(index_map[i]));
            s >= one()
        })
        .collect();
    let closure_link = Hypergraph::from_canonical(index_map.len(), k - d, closure_edges);
    let cover = FractionalCover::unchecked(weights);
    let feasible = cover.covers(&closure_link);
    Ok(TransformedCover {
        cover,
        index_map,
        link_weight: wl,
        closure_link,
        feasible,
    })
}

/// Both sides of `e(G) ≤ Σ_E Σ_{e∖S} w + Σ_{E'} Σ_{e∩S} w + |E∖E'|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverEdgeBound {
    pub lhs: usize,
    pub rhs: BigRational,
    pub holds: bool,
}

pub fn cover_edge_bound(
    g: &Hypergraph,
    w: &FractionalCover,
    e_prime: &[Vec<usize>],
    s: &VertexSet,
) -> Result<CoverEdgeBound> {
    if !w.covers(g) {
        return domain("w is not a fractional vertex cover of G");
    }
    let mut in_prime = vec![false; g.edge_count()];
    for e in e_prime {
        match g.index_of(e) {
            Some(i) => in_prime[i] = true,
            None => return domain(format!("E′ is not a subset of E: {e:?} is not an edge")),
        }
    }
    let mut rhs = BigRational::zero();
    for (i, e) in g.edges().iter().enumerate() {
        for &v in e {
            if !s.contains(v) || in_prime[i] {
                rhs += w.weight(v);
            }
        }
        if !in_prime[i] {
            rhs += one();
        }
    }
    let lhs = g.edge_count();
    let holds = BigRational::from_integer(BigInt::from(lhs)) <= rhs;
    Ok(CoverEdgeBound { lhs, rhs, holds })
}
