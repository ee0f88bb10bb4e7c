//! Exact forcing and anti-forcing numbers of perfect matchings on small graphs,
//! the extremal families that attain the classical bounds, and a harness that
//! checks those bounds graph by graph.

pub mod bounds;
pub mod classify;
pub mod enumerate;
pub mod error;
pub mod families;
pub mod forcing;
pub mod graph;
pub mod graph6;
pub mod hitting;
pub mod iso;
pub mod matching;
pub mod report;
pub mod verifier;

pub use error::{Error, Result};
pub use forcing::{ForcingResult, Limits, SpectrumReport};
pub use graph::{Edge, Graph};
pub use matching::Matching;
