//! Valuation constructors and probes: depth-zero valuations, ordinary and
//! limit augmentations, the oracle valuation of a series point, comparison
//! and minimality probes, and MacLane-Vaquie chain validation.
//!
//! Everything here is generic over how a center point evaluates polynomials
//! ([`CenterEval`]) and over families of valuations ([`ContinuousFamily`]);
//! the concrete Artin-Schreier tower plugs in from [`crate::tower`].

mod center;
mod chain;
mod probes;
mod valuation;

pub use center::{CenterEval, ContinuousFamily, FiniteCenter, SharedTower};
pub use chain::{chain_validate, ChainCheck, ChainStep, MLVChain, StepKind};
pub use probes::{ball_leq, divisibility_probe, is_minimal_witness, MinimalityReport};
pub use valuation::{certified_min, Valuation};
