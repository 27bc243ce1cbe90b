//! Exact verification toolkit for the four-parameter key identity and its
//! colored-partition theorems.
//!
//! - [`algebra`]: big-integer parameter polynomials, truncated `q`-series,
//!   Pochhammer symbols, Gaussian binomials, Laurent-in-`z` series and
//!   rational functions of `q`.
//! - [`partitions`]: color schemes, Type-1 partitions, brute-force counters
//!   and dilations to ordinary partitions.
//! - [`identities`]: the verification battery producing [`identities::IdentityReport`]s.

pub mod algebra;
pub mod identities;
pub mod partitions;
