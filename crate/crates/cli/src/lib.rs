//! Front end for the charlab engine: group files, corpus manifests, a
//! content-addressed table cache, and versioned reports.

pub mod cache;
pub mod corpus;
pub mod groupfile;
pub mod report;
pub mod run;

use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Engine(#[from] charlab::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, CliError>;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const COUNTEREXAMPLE: i32 = 1;
    pub const INPUT_ERROR: i32 = 2;
}
