//! Executable constructions and verification kernels for maximal
//! `C_{2k+1}`-free graphs.
//!
//! The crate is organised by capability:
//!
//! - [`graph`]: the simple-graph model, set predicates, exact max-cut and `D_2`.
//! - [`graph6`]: graph6 interchange.
//! - [`cycles`]: exact fixed-length path and cycle search.
//! - [`constructions`]: bipartite Turán graphs, the `G_{k,α}(n)` family,
//!   cycle blowups and the saturation engine.
//! - [`stability`]: min-degree peeling, classification around a `2k`-cycle,
//!   greedy complete-bipartite extraction and the decomposition report.
//! - [`oracles`]: brute-force references used to cross-check everything else.
//! - [`bounds`]: exact rational helpers and closed-form thresholds.
//! - [`harness`]: the command-line surface shared by the `c2k1` binary.
//!
//! Runnable walkthroughs for each capability live in `examples/`.

pub mod bounds;
pub mod constructions;
pub mod cycles;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod harness;
pub mod oracles;
pub mod stability;

pub use error::{Error, Result};
pub use graph::{Bipartition, Graph, Vertex, VertexSet};
