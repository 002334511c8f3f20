use alloc::rc::Rc;
use alloc::string::String;
use core::any::Any;
use core::cell::RefCell;

use crate::exactmath::{FieldTower, Rat, ValOrInf};
use crate::polyring::{CertifiedVal, Poly};
use crate::series::{PuiseuxSeries, SeriesStream};
use crate::{Caps, Error};

/// Shared handle to the field tower. The tower grows append-only (new
/// Artin-Schreier levels); single-threaded interior mutability with
/// fine-grained borrows, cloned per worker for parallel runs.
pub type SharedTower = Rc<RefCell<FieldTower>>;

/// A center point for valuations: something a polynomial can be evaluated at
/// with a certified valuation.
pub trait CenterEval {
    /// Certified `v(f(center))`.
    fn value_of(&self, f: &Poly, caps: &Caps) -> Result<CertifiedVal, Error>;

    /// Fresh term stream of the center's series expansion.
    fn stream(&self) -> SeriesStream;

    /// Exact `v(self - other)` when it is structurally known
    /// (e.g. both centers are truncations of the same master series).
    fn structural_diff(&self, other: &dyn CenterEval) -> Option<ValOrInf>;

    /// Degree of the center over the base field `K`.
    fn center_degree(&self) -> usize;

    fn tower(&self) -> SharedTower;

    fn describe(&self) -> String;

    fn as_any(&self) -> &dyn Any;
}

/// Center given by an exact finite Puiseux series (an element of `K`).
///
/// Evaluation is plain series arithmetic, so every valuation it reports is
/// exact; `∞` arises only from genuinely zero results.
pub struct FiniteCenter {
    tower: SharedTower,
    point: PuiseuxSeries,
}

impl FiniteCenter {
    pub fn new(tower: SharedTower, point: PuiseuxSeries) -> FiniteCenter {
        assert!(point.is_exact(), "finite centers must be exact series");
        FiniteCenter { tower, point }
    }

    pub fn point(&self) -> &PuiseuxSeries {
        &self.point
    }
}

impl CenterEval for FiniteCenter {
    fn value_of(&self, f: &Poly, _caps: &Caps) -> Result<CertifiedVal, Error> {
        let tw = self.tower.borrow();
        Ok(f.eval_series(&self.point, &tw).valuation())
    }

    fn stream(&self) -> SeriesStream {
        SeriesStream::from_series(&self.point)
    }

    fn structural_diff(&self, other: &dyn CenterEval) -> Option<ValOrInf> {
        let other = other.as_any().downcast_ref::<FiniteCenter>()?;
        let tw = self.tower.borrow();
        let diff = self.point.sub(&other.point, &tw);
        match diff.valuation() {
            CertifiedVal::Exact(v) => Some(v),
            CertifiedVal::LowerBound(_) => None,
        }
    }

    fn center_degree(&self) -> usize {
        1
    }

    fn tower(&self) -> SharedTower {
        self.tower.clone()
    }

    fn describe(&self) -> String {
        let tw = self.tower.borrow();
        self.point.render(&tw)
    }

    fn as_any(&self) -> &dyn Any {
        self
    }
}

/// A totally ordered family of valuations without a maximum, exposed through
/// the two services limit augmentation needs: pointwise values at sampled
/// indices (ordered by ordinal) and the stability value with a witness.
pub trait ContinuousFamily {
    fn tower(&self) -> SharedTower;

    /// The eventual common degree of the family members.
    fn stable_degree(&self) -> usize;

    /// Value of the `ordinal`-th member of the family on `f`.
    fn value_at(&self, ordinal: usize, f: &Poly, caps: &Caps) -> Result<CertifiedVal, Error>;

    /// Stability value `ρ_C(f) = max_i ρ_i(f)` for a family-stable `f`,
    /// together with a rendered witness index. Errors when no witness is
    /// found within the index budget.
    fn stability_value(&self, f: &Poly, caps: &Caps) -> Result<(Rat, String), Error>;

    fn describe(&self) -> String;
}
