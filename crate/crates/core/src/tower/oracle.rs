use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec::Vec;

use crate::exactmath::{Rat, ValOrInf};
use crate::polyring::{CertifiedVal, Poly};
use crate::tower::context::TowerContext;
use crate::tower::sindex::IndexPair;
use crate::tower::towerfield::TowerElem;
use crate::{Caps, Error};

/// Certified oracle valuation `v_s(f) = v(f(s))` for the transcendental
/// master series `s`.
///
/// The series is cut at its limit truncations `s_(n,n)`; the cut is an exact
/// algebraic object and the remaining tail has exact valuation
/// `δ(n,n) = n - 1/p^(n+1)`. With `f_k` the Hasse derivatives,
///
/// `v( f(s) - f(s_(n,n)) ) >= min_(k>=1) ( v(f_k(s_(n,n))) + k δ(n,n) )`,
///
/// where every `v(f_k(s_(n,n)))` is exact (symbolic norm route). The value
/// `v(f(s_(n,n)))` is certified as `v_s(f)` once it falls strictly below
/// that bound; the bound grows without bound along the walk, so the loop
/// terminates for every nonzero `f` unless the caps stop it first, in which
/// case the best certified lower bound is returned.
pub fn vs_value(ctx: &Rc<TowerContext>, f: &Poly, caps: &Caps) -> Result<CertifiedVal, Error> {
    if f.is_zero() {
        return Ok(CertifiedVal::Exact(ValOrInf::Infinity));
    }
    if !f.is_exact() {
        return Err(Error::Precondition(String::from(
            "oracle evaluation needs exact coefficients",
        )));
    }
    if f.degree() == Some(0) {
        return Ok(f.coeff(0).valuation());
    }
    let hasse: Vec<Poly> = {
        let tw = ctx.tower();
        let tw = tw.borrow();
        f.hasse_derivatives(&tw)
    };
    let mut best_low: Option<Rat> = None;
    for n in 1..=caps.max_rows {
        let cut_delta = ctx.delta(IndexPair::new(n, n as u64))?;
        let cut = ctx.limit_truncation_elem(n);
        let eval = |g: &Poly| -> Result<ValOrInf, Error> {
            let val = {
                let tw = ctx.tower();
                let tw = tw.borrow();
                TowerElem::eval_poly(g, &cut, &tw)
            };
            ctx.elem_valuation(&val)
        };
        let v0 = eval(f)?;
        let mut tail_bound: Option<Rat> = None;
        for (k, fk) in hasse.iter().enumerate().skip(1) {
            if fk.is_zero() {
                continue;
            }
            if let ValOrInf::Finite(v) = eval(fk)? {
                let b = &v + &cut_delta.scale(k as u64);
                tail_bound = Some(match tail_bound {
                    Some(t) => t.min(b),
                    None => b,
                });
            }
        }
        // the leading Hasse coefficient is a nonzero constant, so the tail
        // bound always exists for deg f >= 1
        let bound = tail_bound.ok_or_else(|| {
            Error::Internal(String::from("all higher Hasse values infinite"))
        })?;
        if let ValOrInf::Finite(v) = &v0 {
            if *v < bound {
                return Ok(CertifiedVal::Exact(v0));
            }
        }
        let low = match &v0 {
            ValOrInf::Finite(v) => v.clone().min(bound),
            ValOrInf::Infinity => bound,
        };
        best_low = Some(match best_low {
            Some(b) => b.max(low),
            None => low,
        });
        if cut_delta > caps.max_precision {
            break;
        }
    }
    Ok(CertifiedVal::LowerBound(best_low.expect("at least one cut")))
}
