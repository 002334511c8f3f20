use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;

use crate::exactmath::{Rat, ValOrInf};
use crate::polyring::{CertifiedVal, Poly};
use crate::tower::centers::{Center, CenterSpec};
use crate::tower::context::TowerContext;
use crate::tower::oracle::vs_value;
use crate::tower::sindex::{row_indices, IndexPair};
use crate::valuations::{ContinuousFamily, SharedTower, Valuation};
use crate::{Caps, Error};

/// The depth-zero valuation `ρ_(n,i) = ω_(s_(n,i), δ(n,i))` restricted to
/// `K[x]`.
pub fn rho(ctx: &Rc<TowerContext>, n: u32, i: u64) -> Result<Valuation, Error> {
    let d = ctx.delta(IndexPair::new(n, i))?;
    let center = Rc::new(Center::new(ctx.clone(), CenterSpec::Truncation { n, i }));
    Ok(Valuation::depth_zero(center, d))
}

/// `μ_n = ρ_(n,n)`, the valuation at the limit truncation.
pub fn mu(ctx: &Rc<TowerContext>, n: u32) -> Result<Valuation, Error> {
    rho(ctx, n, n as u64)
}

/// The oracle valuation `v_s` as a [`Valuation`].
pub fn vs(ctx: &Rc<TowerContext>) -> Valuation {
    Valuation::oracle(Rc::new(Center::new(ctx.clone(), CenterSpec::Full)))
}

pub fn rho_value(
    ctx: &Rc<TowerContext>,
    n: u32,
    i: u64,
    f: &Poly,
    caps: &Caps,
) -> Result<CertifiedVal, Error> {
    rho(ctx, n, i)?.value(f, caps)
}

pub fn mu_value(ctx: &Rc<TowerContext>, n: u32, f: &Poly, caps: &Caps) -> Result<CertifiedVal, Error> {
    mu(ctx, n)?.value(f, caps)
}

/// Stability value of `f` over the family `C_n = (ρ_(n,i))_i`: computes the
/// oracle value `v* = v_s(f)` and walks the row until some `ρ_(n,i)(f)`
/// reaches it, returning the value and the witness index.
///
/// Sound for family-stable `f` (in particular `deg f < p^(n+1)`), where the
/// stable value equals the oracle value; budget exhaustion means either an
/// unstable input or insufficient caps, and is reported as an error.
pub fn stability_value(
    ctx: &Rc<TowerContext>,
    n: u32,
    f: &Poly,
    caps: &Caps,
) -> Result<(Rat, IndexPair), Error> {
    let vstar = match vs_value(ctx, f, caps)? {
        CertifiedVal::Exact(ValOrInf::Finite(r)) => r,
        CertifiedVal::Exact(ValOrInf::Infinity) => {
            return Err(Error::Internal(String::from(
                "oracle value infinite on a nonzero polynomial",
            )))
        }
        CertifiedVal::LowerBound(b) => {
            return Err(Error::Uncertified {
                bound: b,
                context: String::from("stability oracle value"),
            })
        }
    };
    for idx in row_indices(ctx.p(), n).take(caps.index_budget) {
        let v = rho_value(ctx, idx.n, idx.i, f, caps)?;
        if let Some(r) = v.as_exact_rat() {
            if *r == vstar {
                return Ok((vstar, idx));
            }
        }
    }
    Err(Error::BudgetExhausted {
        what: format!(
            "stability witness in row {n} within {} indices (oracle value {vstar})",
            caps.index_budget
        ),
    })
}

/// The essential continuous family `C_n = (ρ_(n,i))_(i)`, of stable degree
/// `p^n`, exposed through the services limit augmentation needs.
pub struct RowFamily {
    ctx: Rc<TowerContext>,
    n: u32,
}

impl RowFamily {
    pub fn new(ctx: Rc<TowerContext>, n: u32) -> RowFamily {
        RowFamily { ctx, n }
    }

    pub fn row(&self) -> u32 {
        self.n
    }
}

impl ContinuousFamily for RowFamily {
    fn tower(&self) -> SharedTower {
        self.ctx.tower()
    }

    fn stable_degree(&self) -> usize {
        self.ctx.row_degree(self.n)
    }

    fn value_at(&self, ordinal: usize, f: &Poly, caps: &Caps) -> Result<CertifiedVal, Error> {
        let idx = row_indices(self.ctx.p(), self.n)
            .nth(ordinal)
            .expect("rows of S are infinite");
        rho_value(&self.ctx, idx.n, idx.i, f, caps)
    }

    fn stability_value(&self, f: &Poly, caps: &Caps) -> Result<(Rat, String), Error> {
        let (v, idx) = stability_value(&self.ctx, self.n, f, caps)?;
        Ok((v, format!("{idx}")))
    }

    fn describe(&self) -> String {
        format!("C_{}", self.n)
    }
}

/// The limit augmentation `[C_n; φ_(n+1), γ_(n+1)]` built from the row
/// family; by the construction's main identity it coincides with `μ_(n+1)`.
pub fn limit_augmentation(ctx: &Rc<TowerContext>, n: u32, caps: &Caps) -> Result<Valuation, Error> {
    let phi = ctx.phi_n(n + 1)?;
    let gamma = ctx.gamma_n(n + 1, caps)?;
    let family = Rc::new(RowFamily::new(ctx.clone(), n));
    Valuation::limit(family, phi, gamma, caps)
}
