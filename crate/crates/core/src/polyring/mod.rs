//! Univariate polynomials in `x` over series coefficients: arithmetic,
//! division by monic polynomials, phi-expansions, Hasse derivatives, and
//! certified evaluation of valuations at lazily-given series.

mod eval;
mod poly;

pub use eval::eval_valuation_at_stream;
pub use poly::Poly;

// CertifiedVal originates with series valuations but is the working result
// type of every evaluation in this module.
pub use crate::series::CertifiedVal;
