//! Crate-wide error types.

use thiserror::Error;

/// Errors surfaced by table construction, scans, and certified checks.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} out of range: got {got}, allowed {allowed}")]
    Range {
        what: &'static str,
        got: String,
        allowed: String,
    },

    #[error("k must be a finite integer >= 2 or \"inf\" (got {0})")]
    InvalidK(String),

    #[error("brute-force oracle is limited to n <= {limit} (got {n})")]
    OracleLimit { n: usize, limit: usize },

    #[error(transparent)]
    Cache(#[from] CacheError),

    #[error("sign still undecided at {bits} bits of working precision")]
    PrecisionExhausted { bits: u32 },

    #[error("invalid configuration: {0}")]
    Config(String),
}

/// Errors from the on-disk table cache. Mismatch (wrong k or n_max in the
/// header) and corruption (anything malformed) are deliberately distinct so
/// callers can decide whether to rebuild or to report a damaged file.
#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache io: {0}")]
    Io(#[from] std::io::Error),

    #[error("bad magic line {found:?}, expected {expected:?}")]
    BadMagic { found: String, expected: &'static str },

    #[error("unparseable cache header line {0:?}")]
    BadHeader(String),

    #[error("cache mismatch: file holds k={found_k} nmax={found_nmax}, requested k={want_k} nmax={want_nmax}")]
    Mismatch {
        want_k: String,
        found_k: String,
        want_nmax: usize,
        found_nmax: usize,
    },

    #[error("corrupted cache file: {0}")]
    Corrupt(String),
}

pub type Result<T> = std::result::Result<T, Error>;
