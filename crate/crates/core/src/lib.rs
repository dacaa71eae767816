//! Combinatorial machinery for sparse configurations in r-uniform
//! hypergraphs.
//!
//! An `(s, k)`-configuration is a set of `k` edges spanning at most `s`
//! vertices; with an ambient intersection order `t`, a `k`-configuration
//! means `s = k(r-t) + t` and the minus variant tightens `s` by one. The
//! crate provides:
//!
//! - canonical hypergraph representation with spans, shadows, cover
//!   profiles and t-tight components ([`hypergraph`]);
//! - pruned exhaustive configuration search and freeness predicates
//!   ([`search`]);
//! - the edge-removal cleaning pipeline with an auditable ledger
//!   ([`cleaning`]);
//! - supporting t-graphs, non-edge girth and the density-reduction loops
//!   for k = 5 and k = 7 with per-step audit traces ([`reduction`]);
//! - exact-rational closed-form bounds and inequality sweeps ([`bounds`]);
//! - an exact branch-and-bound solver for the extremal edge count and a
//!   seeded greedy packer ([`solver`]).
//!
//! Everything is exact: integer and rational arithmetic only.

pub mod bitset;
pub mod bounds;
pub mod cleaning;
mod combi;
pub mod error;
pub mod hypergraph;
pub mod params;
pub mod reduction;
pub mod search;
pub mod solver;

pub use error::{Error, Result};
pub use hypergraph::{CoverProfile, Hypergraph, TGraph};
pub use params::Params;
pub use search::{ConfigQuery, Configuration, SearchBudget};
