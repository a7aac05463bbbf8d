//! File formats, Monte Carlo suites and plotting for the `rigid` CLI.

pub mod config;
pub mod edgelist;
pub mod error;
pub mod experiments;
pub mod formats;
pub mod plot;
pub mod table;

pub use error::{Error, Result};
