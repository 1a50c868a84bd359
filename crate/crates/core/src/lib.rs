//! Loose 6-cycle tilings of 3-uniform hypergraphs.
//!
//! The crate covers the whole toolchain around C6-factors in 3-graphs with
//! codegree near n/3: the [`Hypergraph3`] host, copy recognition and
//! enumeration ([`cycle`]), exact factor search ([`factor`]), the extremal
//! families ([`construct`]), index-vector and reachability tools
//! ([`lattice`]), absorbing sets ([`absorb`]), the almost-perfect matching
//! dichotomy ([`almost`]) and the constructive extremal-case solver
//! ([`extremal`]).

pub mod absorb;
pub mod almost;
pub mod bits;
pub mod budget;
pub mod construct;
pub mod cycle;
pub mod extremal;
pub mod factor;
pub mod hypergraph;
pub mod io;
pub mod lattice;
pub mod matching;
pub mod rng;

pub use bits::VertexSet;
pub use budget::Budget;
pub use construct::LabeledInstance;
pub use cycle::{CycleCopy, K332Copy};
pub use factor::{Matching3, SearchOutcome, Tiling};
pub use hypergraph::{DegreeReport, Hypergraph3, HypergraphError, Triple};
pub use lattice::{IndexVector, Partition};
