//! Canonical k-uniform hypergraphs.
//!
//! Vertices are `0..n`. Every edge is stored as a sorted vertex list and the
//! edge list itself is kept in strictly increasing lexicographic order, so two
//! hypergraphs with the same edge set compare equal and serialize identically.
//! A parallel `u128` bitmask per edge backs the search routines, which caps
//! the vertex count at [`MAX_VERTICES`].

use std::fmt;

use crate::combinatorics::subsets_of_range;
use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 128;

/// A sorted, duplicate-free set of vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(members: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = members.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }

    pub fn empty() -> Self {
        VertexSet(Vec::new())
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub(crate) fn mask(&self) -> u128 {
        self.0.iter().fold(0u128, |m, &v| m | (1u128 << v))
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        VertexSet::new(v)
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(v: [usize; N]) -> Self {
        VertexSet::new(v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    n: usize,
    k: usize,
    edges: Vec<Vec<usize>>,
    masks: Vec<u128>,
}

/// A hypergraph derived from another one on a subset of its vertices, with
/// `index_map[new] = old` translating the new labels back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relabeled {
    pub hypergraph: Hypergraph,
    pub index_map: Vec<usize>,
}

pub(crate) fn mask_of(edge: &[usize]) -> u128 {
    edge.iter().fold(0u128, |m, &v| m | (1u128 << v))
}

impl Hypergraph {
    /// Validates and canonicalizes an edge list. Input order is irrelevant;
    /// vertex order inside an edge is irrelevant.
    pub fn new(n: usize, k: usize, edges: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidUniformity(k));
        }
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                n,
                max: MAX_VERTICES,
            });
        }
        let mut canon = Vec::new();
        for raw in edges {
            let mut edge = raw.clone();
            edge.sort_unstable();
            edge.dedup();
            if edge.len() != k || raw.len() != k {
                return Err(Error::WrongArity {
                    edge: raw,
                    expected: k,
                    found: edge.len(),
                });
            }
            if let Some(&vertex) = edge.iter().find(|&&v| v >= n) {
                return Err(Error::VertexOutOfRange {
                    edge: raw,
                    vertex,
                    n,
                });
            }
            canon.push(edge);
        }
        canon.sort();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge { edge: w[0].clone() });
        }
        Ok(Self::from_canonical(n, k, canon))
    }

    /// Caller guarantees the edges are valid and already in canonical order.
    pub(crate) fn from_canonical(n: usize, k: usize, edges: Vec<Vec<usize>>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        let masks = edges.iter().map(|e| mask_of(e)).collect();
        Hypergraph { n, k, edges, masks }
    }

    /// `K_n^{(k)}`: every k-subset of `0..n`.
    pub fn complete(n: usize, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidUniformity(k));
        }
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                n,
                max: MAX_VERTICES,
            });
        }
        Ok(Self::from_canonical(n, k, subsets_of_range(n, k)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &[usize] {
        &self.edges[i]
    }

    pub(crate) fn masks(&self) -> &[u128] {
        &self.masks
    }

    /// `e(G)`.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn index_of(&self, edge: &[usize]) -> Option<usize> {
        let mut e = edge.to_vec();
        e.sort_unstable();
        self.edges.binary_search(&e).ok()
    }

    fn check_set(&self, s: &VertexSet) -> Result<()> {
        if let Some(&v) = s.members().iter().find(|&&v| v >= self.n) {
            return Err(Error::VertexOutOfRange {
                edge: s.members().to_vec(),
                vertex: v,
                n: self.n,
            });
        }
        Ok(())
    }

    /// Number of edges containing `s`; `degree(∅) = e(G)`.
    pub fn degree(&self, s: &VertexSet) -> Result<usize> {
        if s.len() > self.k {
            return Err(Error::SetTooLarge {
                size: s.len(),
                max: self.k,
            });
        }
        self.check_set(s)?;
        let m = s.mask();
        Ok(self.masks.iter().filter(|&&e| e & m == m).count())
    }

    /// `δ_d(G)`, the minimum degree over all d-subsets of the vertex set.
    pub fn min_d_degree(&self, d: usize) -> Result<usize> {
        if d > self.k || d > self.n {
            return Err(Error::DegreeOrder {
                d,
                max: self.k.min(self.n),
            });
        }
        if d == 0 {
            return Ok(self.edge_count());
        }
        Ok(self
            .d_degrees(d)
            .into_iter()
            .min()
            .expect("at least one d-subset"))
    }

    /// Degrees of all d-subsets, indexed in lexicographic order of the subsets.
    pub(crate) fn d_degrees(&self, d: usize) -> Vec<usize> {
        let sets = subsets_of_range(self.n, d);
        let mut index = std::collections::HashMap::with_capacity(sets.len());
        for (i, s) in sets.iter().enumerate() {
            index.insert(mask_of(s), i);
        }
        let mut deg = vec![0usize; sets.len()];
        let local: Vec<usize> = (0..self.k).collect();
        let picks = crate::combinatorics::combinations(&local, d);
        for e in &self.edges {
            for p in &picks {
                let m = p.iter().fold(0u128, |m, &i| m | (1u128 << e[i]));
                deg[index[&m]] += 1;
            }
        }
        deg
    }

    /// The (k−|S|)-uniform link of `s` on `V∖S`, relabeled to `0..n−|S|`.
    pub fn neighbourhood(&self, s: &VertexSet) -> Result<Relabeled> {
        if s.len() >= self.k {
            return Err(Error::SetTooLarge {
                size: s.len(),
                max: self.k - 1,
            });
        }
        self.check_set(s)?;
        let index_map: Vec<usize> = (0..self.n).filter(|v| !s.contains(*v)).collect();
        let new_label = relabel_table(self.n, &index_map);
        let m = s.mask();
        let mut edges: Vec<Vec<usize>> = self
            .edges
            .iter()
            .zip(&self.masks)
            .filter(|(_, &em)| em & m == m)
            .map(|(e, _)| {
                e.iter()
                    .filter(|v| !s.contains(**v))
                    .map(|&v| new_label[v])
                    .collect()
            })
            .collect();
        edges.sort();
        Ok(Relabeled {
            hypergraph: Self::from_canonical(index_map.len(), self.k - s.len(), edges),
            index_map,
        })
    }

    /// `G[U]`, relabeled to `0..|U|` in increasing order of the original labels.
    pub fn induced(&self, u: &VertexSet) -> Result<Relabeled> {
        self.check_set(u)?;
        let index_map = u.members().to_vec();
        let new_label = relabel_table(self.n, &index_map);
        let m = u.mask();
        let mut edges: Vec<Vec<usize>> = self
            .edges
            .iter()
            .zip(&self.masks)
            .filter(|(_, &em)| em & !m == 0)
            .map(|(e, _)| e.iter().map(|&v| new_label[v]).collect())
            .collect();
        edges.sort();
        Ok(Relabeled {
            hypergraph: Self::from_canonical(index_map.len(), self.k, edges),
            index_map,
        })
    }

    /// Applies a vertex permutation (`perm[old] = new`) and re-canonicalizes.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.n];
        if perm.len() != self.n
            || perm
                .iter()
                .any(|&p| p >= self.n || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::Domain(format!("not a permutation of 0..{}", self.n)));
        }
        Self::new(
            self.n,
            self.k,
            self.edges
                .iter()
                .map(|e| e.iter().map(|&v| perm[v]).collect()),
        )
    }

    /// The hypergraph formed by the listed edges of `self` (indices into the
    /// canonical list).
    pub fn subhypergraph(&self, edge_indices: &[usize]) -> Self {
        let mut idx = edge_indices.to_vec();
        idx.sort_unstable();
        idx.dedup();
        Self::from_canonical(
            self.n,
            self.k,
            idx.iter().map(|&i| self.edges[i].clone()).collect(),
        )
    }

    /// Text form: header `n k`, then one edge per line.
    pub fn serialize(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.k);
        for e in &self.edges {
            let line: Vec<String> = e.iter().map(|v| v.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            detail: "missing `n k` header".into(),
        })?;
        let head = parse_ints(hline, header)?;
        if head.len() != 2 {
            return Err(Error::Parse {
                line: hline,
                detail: format!("header must be `n k`, found {} tokens", head.len()),
            });
        }
        let (n, k) = (head[0], head[1]);
        let mut edges = Vec::new();
        for (line, l) in lines {
            edges.push(parse_ints(line, l)?);
        }
        Self::new(n, k, edges)
    }
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

fn relabel_table(n: usize, index_map: &[usize]) -> Vec<usize> {
    let mut table = vec![usize::MAX; n];
    for (new, &old) in index_map.iter().enumerate() {
        table[old] = new;
    }
    table
}

fn parse_ints(line: usize, text: &str) -> Result<Vec<usize>> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>().map_err(|_| Error::Parse {
                line,
                detail: format!("`{tok}` is not a non-negative integer"),
            })
        })
        .collect()
}
