//! Numerical laboratory for the growth of quantum circuit complexity.
//!
//! Two halves share this crate:
//!
//! * the continuous half measures the accessible dimension `d^B(k)` of
//!   circuits built from `k` copies of a block architecture `B`, as the
//!   generic rank of the differential of the construction map
//!   `SU(4)^{k|B|} -> SU(2^n)` ([`architecture`], [`dimension`]);
//! * the discrete half computes exact word-length complexity of random
//!   Clifford+T products ([`exact`]) and of walks on other finitely
//!   generated groups, with Kingman-rate and return-probability estimators
//!   ([`walk`]).
//!
//! [`experiment`] ties both halves into reproducible CSV/JSON artifacts,
//! driven by the `circuit-growth` binary.

pub mod architecture;
pub mod dimension;
pub mod error;
pub mod exact;
pub mod exec;
pub mod experiment;
pub mod linalg;
pub mod walk;

pub use error::{Error, Result};
