//! Exact arithmetic engine for MacLane-Vaquie valuations on `K[x]`, where `K`
//! is the Newton-Puiseux field over the algebraic closure of `F_p`.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactmath`] -- rationals, the value semiring `Q ∪ {∞}`, base-`p`
//!   binomial tests and finite-field towers of Artin-Schreier extensions;
//! * [`series`] -- finite-support Puiseux series with precision certificates
//!   and lazy term streams;
//! * [`polyring`] -- univariate polynomials over series coefficients,
//!   phi-expansions, Hasse derivatives and certified valuation evaluation;
//! * [`valuations`] -- depth-zero, ordinary-augmented and limit-augmented
//!   valuations, comparison probes and MacLane-Vaquie chain validation;
//! * [`tower`] -- the concrete Artin-Schreier tower over `K`, the series
//!   `s_m`, `s`, their truncations, the limit key polynomials `phi_n`, the
//!   valuation families `C_n` and the verification suites.
//!
//! Everything is exact: values are rationals, coefficients live in finite
//! fields, and every reported valuation is either `Exact` or a certified
//! lower bound. No floating point anywhere.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod exactmath;
pub mod series;
pub mod polyring;
pub mod valuations;
pub mod tower;

mod caps;
mod error;

pub use caps::Caps;
pub use error::Error;
