//! Exact arithmetic for k-regular partition functions and the verification
//! machinery built on top of them.
//!
//! A partition of `n` is *k-regular* when none of its parts is divisible by
//! `k`; `p_k(n)` counts them, and `p_inf(n) = p(n)` is the ordinary partition
//! function. This crate provides:
//!
//! - [`arith`] — exact `p_k` tables by recurrence, truncated generating
//!   function product, and brute-force enumeration, plus an on-disk cache;
//! - [`bo`] — Bessenrodt–Ono classification `p_k(a) p_k(b)` vs `p_k(a+b)`:
//!   exception-set enumeration, threshold checks, the stabilization scan,
//!   and the exhaustive induction campaign;
//! - [`logconc`] — log-concavity defects, failure enumeration, and the
//!   stabilization conjecture scan;
//! - [`bounds`] — certified (interval-arithmetic) verification of explicit
//!   analytic bounds, with sign decisions that are provable, not floating
//!   point guesses;
//! - [`golden`] — bundled reference tables the scanners are diffed against;
//! - [`cli`] — the `regpart` command-line front end.
//!
//! Start with the `examples/` directory: each example is a runnable tour of
//! one capability.

pub mod arith;
pub mod bo;
pub mod bounds;
pub mod cli;
pub mod error;
pub mod golden;
pub mod logconc;
pub mod report;

pub use arith::{
    brute_force_count, build_table_recurrence, build_table_series, g_k, sigma, CountMode, KIndex,
    Nat, PartitionTable,
};
pub use arith::cache::TableStore;
pub use bo::{delta, enumerate_exceptions, DeltaSign, ExceptionReport, Pair};
pub use error::{CacheError, Error, Result};
