use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;
use core::any::Any;

use crate::exactmath::{Rat, ValOrInf};
use crate::polyring::{CertifiedVal, Poly};
use crate::series::SeriesStream;
use crate::tower::context::TowerContext;
use crate::tower::sindex::{delta, index_successor, row_indices, support_coeff, IndexPair};
use crate::tower::towerfield::TowerElem;
use crate::valuations::{CenterEval, SharedTower};
use crate::{Caps, Error};

/// Which series of the construction a center refers to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CenterSpec {
    /// The truncation `s_(n,i)` of the master series (`i = n` is the limit
    /// truncation `s_(n,n)`; `(0,0)` is the zero series).
    Truncation { n: u32, i: u64 },
    /// The row series `s_m = Σ_(j>=m) C(j,m) t^(-1/p^(j+1))`.
    Row { m: u32 },
    /// The master series `s = Σ_n t^n s_n` itself.
    Full,
}

/// A center of the construction, usable wherever a valuation needs a point.
///
/// Algebraic centers (truncations and rows) evaluate polynomials by exact
/// symbolic arithmetic in the tower field, so their reported valuations are
/// always exact; vanishing is decidable there. The master series is
/// transcendental and evaluates through the certified oracle walk.
pub struct Center {
    ctx: Rc<TowerContext>,
    spec: CenterSpec,
}

impl Center {
    pub fn new(ctx: Rc<TowerContext>, spec: CenterSpec) -> Center {
        if let CenterSpec::Truncation { n, i } = spec {
            assert!(
                crate::tower::sindex::in_s(ctx.p(), IndexPair::new(n, i)),
                "({n},{i}) is not in S"
            );
        }
        Center { ctx, spec }
    }

    pub fn spec(&self) -> CenterSpec {
        self.spec
    }

    pub fn ctx(&self) -> &Rc<TowerContext> {
        &self.ctx
    }

    /// The center as an exact tower element. `None` for the master series.
    pub fn elem(&self) -> Result<Option<TowerElem>, Error> {
        match self.spec {
            CenterSpec::Truncation { n, i } => Ok(Some(self.ctx.truncation_elem(n, i)?)),
            CenterSpec::Row { m } => {
                let tw = self.ctx.tower();
                let tw = tw.borrow();
                Ok(Some(TowerElem::sigma(
                    self.ctx.p(),
                    m as usize + 1,
                    m as usize,
                    &tw,
                )))
            }
            CenterSpec::Full => Ok(None),
        }
    }

    /// Minimal polynomial over `K` of an algebraic center.
    pub fn minpoly(&self) -> Result<Option<Poly>, Error> {
        match self.spec {
            CenterSpec::Truncation { n, i } => Ok(Some(self.ctx.truncation_minpoly(n, i)?)),
            CenterSpec::Row { m } => {
                let tw = self.ctx.tower();
                let tw = tw.borrow();
                Ok(Some(Poly::as_iterate_minus_tinv(m + 1, &tw)))
            }
            CenterSpec::Full => Ok(None),
        }
    }

    /// The S-index at which this center truncates `s`, if it is one of the
    /// truncations.
    fn cut_index(&self) -> Option<IndexPair> {
        match self.spec {
            CenterSpec::Truncation { n, i } => Some(IndexPair::new(n, i)),
            _ => None,
        }
    }
}

impl CenterEval for Center {
    fn value_of(&self, f: &Poly, caps: &Caps) -> Result<CertifiedVal, Error> {
        match self.spec {
            CenterSpec::Full => crate::tower::oracle::vs_value(&self.ctx, f, caps),
            _ => {
                let elem = self.elem()?.expect("algebraic center");
                let g = {
                    let tw = self.ctx.tower();
                    let tw = tw.borrow();
                    TowerElem::eval_poly(f, &elem, &tw)
                };
                if g.is_zero() {
                    // exact symbolic vanishing, equivalent to divisibility by
                    // the center's minimal polynomial
                    return Ok(if caps.allow_symbolic_infinity {
                        CertifiedVal::Exact(ValOrInf::Infinity)
                    } else {
                        CertifiedVal::LowerBound(caps.max_precision.clone())
                    });
                }
                Ok(CertifiedVal::Exact(self.ctx.elem_valuation(&g)?))
            }
        }
    }

    fn stream(&self) -> SeriesStream {
        let ctx = self.ctx.clone();
        let p = ctx.p();
        match self.spec {
            CenterSpec::Row { m } => {
                let mut next = Some(IndexPair::new(m, m as u64));
                SeriesStream::from_fn(move || {
                    let idx = next?;
                    next = index_successor(p, idx).ok();
                    let c = support_coeff(p, idx).ok()?;
                    let tw = ctx.tower();
                    let coeff = tw.borrow().from_int(c as i64);
                    debug_assert!(idx.i < u32::MAX as u64);
                    Some((-Rat::inv_pow(p, idx.i as u32 + 1), coeff))
                })
            }
            CenterSpec::Truncation { .. } | CenterSpec::Full => {
                // lexicographic S-walk; for a truncation it stops at the cut.
                // Row boundaries are limit points, so the flat walk inside an
                // infinite row never reaches the next row -- which is the
                // honest pull semantics of these supports.
                let limit = self.cut_index();
                let mut cur = Some(IndexPair::new(0, 0));
                SeriesStream::from_fn(move || {
                    let idx = cur?;
                    if let Some(lim) = limit {
                        if idx >= lim {
                            cur = None;
                            return None;
                        }
                    }
                    cur = index_successor(p, idx).ok();
                    let c = support_coeff(p, idx).ok()?;
                    let tw = ctx.tower();
                    let coeff = tw.borrow().from_int(c as i64);
                    Some((delta(p, idx).ok()?, coeff))
                })
            }
        }
    }

    fn structural_diff(&self, other: &dyn CenterEval) -> Option<ValOrInf> {
        let other = other.as_any().downcast_ref::<Center>()?;
        let p = self.ctx.p();
        match (self.spec, other.spec) {
            (CenterSpec::Full, CenterSpec::Full) => Some(ValOrInf::Infinity),
            (CenterSpec::Row { m }, CenterSpec::Row { m: m2 }) => {
                if m == m2 {
                    Some(ValOrInf::Infinity)
                } else {
                    // the head of the earlier row survives
                    Some(ValOrInf::Finite(-Rat::inv_pow(p, m.min(m2) + 1)))
                }
            }
            (CenterSpec::Row { .. }, _) | (_, CenterSpec::Row { .. }) => None,
            (a, b) => {
                // truncations of s and s itself: the difference is the
                // window of s between the two cuts, whose first term sits at
                // the smaller cut (its support coefficient is a unit by
                // membership in S)
                let ca = Center { ctx: self.ctx.clone(), spec: a }.cut_index();
                let cb = Center { ctx: self.ctx.clone(), spec: b }.cut_index();
                match (ca, cb) {
                    (Some(x), Some(y)) if x == y => Some(ValOrInf::Infinity),
                    (Some(x), Some(y)) => {
                        Some(ValOrInf::Finite(delta(p, x.min(y)).ok()?))
                    }
                    (Some(x), None) | (None, Some(x)) => {
                        Some(ValOrInf::Finite(delta(p, x).ok()?))
                    }
                    (None, None) => Some(ValOrInf::Infinity),
                }
            }
        }
    }

    fn center_degree(&self) -> usize {
        match self.spec {
            CenterSpec::Truncation { n, .. } => self.ctx.row_degree(n),
            CenterSpec::Row { m } => self.ctx.row_degree(m + 1),
            // the master series is transcendental; no key polynomial bound
            CenterSpec::Full => usize::MAX,
        }
    }

    fn tower(&self) -> SharedTower {
        self.ctx.tower()
    }

    fn describe(&self) -> String {
        match self.spec {
            CenterSpec::Truncation { n, i } => format!("s({n},{i})"),
            CenterSpec::Row { m } => format!("s_{m}"),
            CenterSpec::Full => String::from("s"),
        }
    }

    fn as_any(&self) -> &dyn Any {
        self
    }
}

/// Stream of the row series `s_m`.
pub fn stream_s_m(ctx: Rc<TowerContext>, m: u32) -> SeriesStream {
    Center::new(ctx, CenterSpec::Row { m }).stream()
}

/// Stream of the master series `s`.
pub fn stream_s(ctx: Rc<TowerContext>) -> SeriesStream {
    Center::new(ctx, CenterSpec::Full).stream()
}

/// Stream of the truncation `s_(n,i)`.
pub fn stream_s_trunc(ctx: Rc<TowerContext>, n: u32, i: u64) -> SeriesStream {
    Center::new(ctx, CenterSpec::Truncation { n, i }).stream()
}

/// Terms of `s` with exponents in `[lo, hi)`, by walking the index set
/// directly (the flat stream cannot cross the limit points of the support).
pub fn s_terms_in_window(
    ctx: &Rc<TowerContext>,
    lo: &Rat,
    hi: &Rat,
    max: usize,
) -> Result<alloc::vec::Vec<(Rat, u32)>, Error> {
    let p = ctx.p();
    let mut out = alloc::vec::Vec::new();
    // rows n contribute exponents in [n - 1, n); scan the relevant rows
    let mut n = 0u32;
    loop {
        let row_low = Rat::int(n as i64 - 1);
        let row_high = Rat::int(n as i64);
        if &row_low >= hi || out.len() >= max {
            break;
        }
        if &row_high > lo {
            for idx in row_indices(p, n) {
                let d = delta(p, idx)?;
                if &d >= hi || out.len() >= max {
                    break;
                }
                if &d >= lo {
                    out.push((d, support_coeff(p, idx)?));
                }
            }
        }
        n += 1;
    }
    Ok(out)
}
