use crate::exactmath::Rat;

/// Resource limits for certified computations.
///
/// Every evaluation that could in principle run forever (valuation of a
/// polynomial at a transcendental series, witness searches along a family of
/// valuations) is bounded by these caps. Hitting a cap never produces a wrong
/// answer: evaluations degrade to certified lower bounds or report budget
/// exhaustion.
#[derive(Clone, Debug)]
pub struct Caps {
    /// Exponent bound past which no further precision is requested.
    pub max_precision: Rat,
    /// Hard bound on terms pulled from a single stream truncation.
    pub max_terms: usize,
    /// Number of family indices tried during a stability witness search.
    pub index_budget: usize,
    /// Deepest truncation row of `s` used by the oracle valuation.
    pub max_rows: u32,
    /// When false, exact vanishing detected through the symbolic route is
    /// reported as a lower bound at `max_precision` instead of `∞`.
    pub allow_symbolic_infinity: bool,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_precision: Rat::int(64),
            max_terms: 256,
            index_budget: 16,
            max_rows: 16,
            allow_symbolic_infinity: true,
        }
    }
}

impl Caps {
    /// Same caps with the symbolic-infinity path disabled.
    pub fn truncation_only(mut self) -> Self {
        self.allow_symbolic_infinity = false;
        self
    }

    pub fn with_max_precision(mut self, r: Rat) -> Self {
        self.max_precision = r;
        self
    }

    pub fn with_index_budget(mut self, b: usize) -> Self {
        self.index_budget = b;
        self
    }
}
