#![no_std]

//! Generic rigidity of graphs, decided by randomized rank computations over
//! the prime field `F_q` with `q = 2^61 - 1`, together with partition-based
//! certificates of rigidity, the connector pipeline that extracts a large
//! rigid subgraph, and seeded random graph models.
//!
//! The crate only needs `alloc`. File formats, JSON, the command line and
//! the Monte Carlo harness live in the `rigidity-tools` crate.

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod certify;
pub mod connector;
pub mod error;
pub mod field;
pub mod graph;
pub mod matrix;
pub mod oracles;
pub mod randgraph;
pub mod rigidity;
pub mod seed;

pub use crate::error::{Error, Result};
pub use crate::field::Fq;
pub use crate::graph::{Graph, Partition};
pub use crate::matrix::FFMatrix;
pub use crate::rigidity::RigidityVerdict;
