//! Exact scalar arithmetic: rationals, the value semiring `Q ∪ {∞}`,
//! base-`p` binomial coefficient tests and finite-field tower arithmetic.

mod fq;
mod lucas;
mod rat;

pub use fq::{FieldTower, FqElem};
pub use lucas::{binom_mod_p, lucas_nonzero};
pub use rat::{Rat, ValOrInf};
