//! Exact tools for matchings in k-uniform hypergraphs: hypergraph basics,
//! extremal constructions, an exact rational LP for fractional matchings and
//! covers, branch-and-bound integer matchings, Baranyai decompositions,
//! threshold formulas and small-case exact thresholds.

pub mod baranyai;
pub mod bounds;
pub mod combinatorics;
pub mod constructions;
pub mod error;
pub mod fractional;
pub mod hypergraph;
pub mod matching;
pub mod simplex;
pub mod thresholds;

pub use error::{Error, Result};
pub use hypergraph::{Hypergraph, Relabeled, VertexSet};
pub use num_rational::BigRational;
