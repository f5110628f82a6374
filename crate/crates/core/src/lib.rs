//! Exact character theory of finite permutation groups: cyclotomic
//! arithmetic, character tables, conductors, p-rationality levels,
//! principal p-blocks, and checkers for statements about them.

pub mod arith;
pub mod blocks;
pub mod chartab;
pub mod cyclotomic;
pub mod error;
pub mod group;
pub mod lab;
pub mod par;

pub use error::{Error, Result};

/// Engine version; part of every cache key and report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
