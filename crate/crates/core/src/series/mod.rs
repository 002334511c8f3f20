//! Finite-support Puiseux series over the field tower, with precision
//! certificates, and lazy monotone term streams.
//!
//! Precision is an exponent bound, not a term count: a series with precision
//! `r` agrees with the mathematical object it represents on all exponents
//! below `r` (`∞` means exact). All error reasoning downstream is done in
//! valuation units, which matches the ultrametric estimates this engine runs
//! on.

mod puiseux;
mod stream;

pub use puiseux::{CertifiedVal, PuiseuxSeries};
pub use stream::SeriesStream;
