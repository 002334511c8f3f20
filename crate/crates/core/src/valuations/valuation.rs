use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec::Vec;

use crate::exactmath::{Rat, ValOrInf};
use crate::polyring::{CertifiedVal, Poly};
use crate::valuations::{CenterEval, ContinuousFamily, SharedTower};
use crate::{Caps, Error};

/// A valuation on `K[x]`, in one of the four shapes the engine constructs.
///
/// * `DepthZero`: `ω_{a,δ}`, acting through `(x - a)`-expansions by
///   `min_k ( v(f_k(a)) + k δ )`;
/// * `Ordinary`: `[μ; φ, γ]`, acting through `φ`-expansions by
///   `min_n ( μ(a_n) + n γ )`, requires `μ(φ) < γ`;
/// * `Limit`: `[C; φ, γ]`, acting through `φ`-expansions by
///   `min_n ( ρ_C(a_n) + n γ )` with `ρ_C` the stability value of the family;
/// * `Oracle`: `f -> v(f(s))` for a series point `s`.
pub enum Valuation {
    DepthZero {
        center: Rc<dyn CenterEval>,
        delta: Rat,
    },
    Ordinary {
        base: Rc<Valuation>,
        phi: Poly,
        gamma: Rat,
    },
    Limit {
        family: Rc<dyn ContinuousFamily>,
        phi: Poly,
        gamma: Rat,
    },
    Oracle {
        center: Rc<dyn CenterEval>,
    },
}

impl Valuation {
    pub fn depth_zero(center: Rc<dyn CenterEval>, delta: Rat) -> Valuation {
        Valuation::DepthZero { center, delta }
    }

    /// Ordinary augmentation `[base; phi, gamma]`. Checks the construction
    /// precondition `base(phi) < gamma` with a certified exact value.
    pub fn ordinary(
        base: Rc<Valuation>,
        phi: Poly,
        gamma: Rat,
        caps: &Caps,
    ) -> Result<Valuation, Error> {
        {
            let tw = base.tower();
            let tw = tw.borrow();
            if !phi.is_monic(&tw) || phi.degree().unwrap_or(0) < 1 {
                return Err(Error::Precondition(String::from(
                    "ordinary augmentation needs a monic phi of degree >= 1",
                )));
            }
        }
        let v = base.value(&phi, caps)?;
        match v.as_exact() {
            Some(ValOrInf::Finite(b)) if *b < gamma => Ok(Valuation::Ordinary { base, phi, gamma }),
            other => Err(Error::Precondition(format!(
                "ordinary augmentation needs base(phi) < gamma; got {other:?} vs {gamma}",
            ))),
        }
    }

    /// Limit augmentation `[C; phi, gamma]`. Samples a few family members to
    /// check `ρ_i(phi) < gamma`.
    pub fn limit(
        family: Rc<dyn ContinuousFamily>,
        phi: Poly,
        gamma: Rat,
        caps: &Caps,
    ) -> Result<Valuation, Error> {
        {
            let tw = family.tower();
            let tw = tw.borrow();
            if !phi.is_monic(&tw) || phi.degree().unwrap_or(0) < 1 {
                return Err(Error::Precondition(String::from(
                    "limit augmentation needs a monic phi of degree >= 1",
                )));
            }
        }
        for ordinal in 0..3 {
            let v = family.value_at(ordinal, &phi, caps)?;
            match v.guaranteed_low() {
                // an exact value >= gamma, or a vanishing phi, breaks the family ordering
                None => {
                    return Err(Error::Precondition(String::from(
                        "family value of phi is infinite",
                    )))
                }
                Some(low) => {
                    if let Some(exact) = v.as_exact_rat() {
                        if *exact >= gamma {
                            return Err(Error::Precondition(format!(
                                "limit augmentation needs rho_i(phi) < gamma; got {exact} at ordinal {ordinal}",
                            )));
                        }
                    } else if low >= gamma {
                        return Err(Error::Precondition(String::from(
                            "family lower bound for phi already exceeds gamma",
                        )));
                    }
                }
            }
        }
        Ok(Valuation::Limit { family, phi, gamma })
    }

    pub fn oracle(center: Rc<dyn CenterEval>) -> Valuation {
        Valuation::Oracle { center }
    }

    pub fn tower(&self) -> SharedTower {
        match self {
            Valuation::DepthZero { center, .. } | Valuation::Oracle { center } => center.tower(),
            Valuation::Ordinary { base, .. } => base.tower(),
            Valuation::Limit { family, .. } => family.tower(),
        }
    }

    /// Degree of the valuation (minimal degree of a key polynomial).
    pub fn degree(&self) -> usize {
        match self {
            Valuation::DepthZero { center, .. } => center.center_degree(),
            Valuation::Ordinary { phi, .. } | Valuation::Limit { phi, .. } => {
                phi.degree().unwrap_or(1)
            }
            Valuation::Oracle { center } => center.center_degree(),
        }
    }

    /// Certified value `μ(f)`.
    pub fn value(&self, f: &Poly, caps: &Caps) -> Result<CertifiedVal, Error> {
        if f.is_zero() {
            return Ok(CertifiedVal::Exact(ValOrInf::Infinity));
        }
        match self {
            Valuation::DepthZero { center, delta } => {
                let hasse = {
                    let tw = center.tower();
                    let tw = tw.borrow();
                    f.hasse_derivatives(&tw)
                };
                let mut terms = Vec::new();
                for (k, fk) in hasse.iter().enumerate() {
                    if fk.is_zero() {
                        continue;
                    }
                    let v = center.value_of(fk, caps)?;
                    terms.push(v.add_rat(&delta.scale(k as u64)));
                }
                Ok(certified_min(terms))
            }
            Valuation::Ordinary { base, phi, gamma } => {
                let parts = {
                    let tw = base.tower();
                    let tw = tw.borrow();
                    f.phi_expansion(phi, &tw)?
                };
                let mut terms = Vec::new();
                for (n, a) in parts.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    let v = base.value(a, caps)?;
                    terms.push(v.add_rat(&gamma.scale(n as u64)));
                }
                Ok(certified_min(terms))
            }
            Valuation::Limit { family, phi, gamma } => {
                let parts = {
                    let tw = family.tower();
                    let tw = tw.borrow();
                    f.phi_expansion(phi, &tw)?
                };
                let mut terms = Vec::new();
                for (n, a) in parts.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    let (v, _witness) = family.stability_value(a, caps)?;
                    terms.push(CertifiedVal::exact_rat(&v + &gamma.scale(n as u64)));
                }
                Ok(certified_min(terms))
            }
            Valuation::Oracle { center } => center.value_of(f, caps),
        }
    }

    /// Like [`Valuation::value`] but demands an exact finite value.
    pub fn exact_value(&self, f: &Poly, caps: &Caps) -> Result<Rat, Error> {
        match self.value(f, caps)? {
            CertifiedVal::Exact(ValOrInf::Finite(r)) => Ok(r),
            CertifiedVal::Exact(ValOrInf::Infinity) => Err(Error::Precondition(String::from(
                "expected a finite valuation, got infinity",
            ))),
            CertifiedVal::LowerBound(b) => Err(Error::Uncertified {
                bound: b,
                context: String::from("exact_value"),
            }),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Valuation::DepthZero { center, delta } => {
                format!("w({}, {delta})", center.describe())
            }
            Valuation::Ordinary { base, gamma, .. } => {
                format!("[{}; phi, {gamma}]", base.describe())
            }
            Valuation::Limit { family, gamma, .. } => {
                format!("[{}; phi, {gamma}]", family.describe())
            }
            Valuation::Oracle { center } => format!("v_({})", center.describe()),
        }
    }
}

/// Certified minimum of a list of certified values.
///
/// Infinite entries never achieve the minimum of a valuation of a nonzero
/// polynomial and are skipped; the minimum of an empty list is `∞`. The
/// result is exact when some exact entry is at or below every other entry's
/// guaranteed lower bound; otherwise it degrades to the combined lower bound.
pub fn certified_min(terms: Vec<CertifiedVal>) -> CertifiedVal {
    let mut best_exact: Option<Rat> = None;
    let mut bounds: Vec<Rat> = Vec::new();
    for t in terms {
        match t {
            CertifiedVal::Exact(ValOrInf::Finite(r)) => {
                best_exact = Some(match best_exact {
                    Some(b) => b.min(r),
                    None => r,
                });
            }
            CertifiedVal::Exact(ValOrInf::Infinity) => {}
            CertifiedVal::LowerBound(b) => bounds.push(b),
        }
    }
    match best_exact {
        None if bounds.is_empty() => CertifiedVal::Exact(ValOrInf::Infinity),
        None => CertifiedVal::LowerBound(bounds.into_iter().reduce(Rat::min).unwrap()),
        Some(m) => {
            if bounds.iter().all(|b| *b >= m) {
                CertifiedVal::exact_rat(m)
            } else {
                let low = bounds.into_iter().reduce(Rat::min).unwrap().min(m);
                CertifiedVal::LowerBound(low)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::FieldTower;
    use crate::series::PuiseuxSeries;
    use crate::valuations::FiniteCenter;
    use alloc::vec;
    use core::cell::RefCell;

    fn shared(p: u32) -> SharedTower {
        Rc::new(RefCell::new(FieldTower::new(p)))
    }

    fn mono(tw: &SharedTower, num: i64, den: i64) -> PuiseuxSeries {
        PuiseuxSeries::monomial(Rat::frac(num, den), tw.borrow().one())
    }

    fn depth_zero_at(tw: &SharedTower, point: PuiseuxSeries, delta: Rat) -> Valuation {
        Valuation::depth_zero(Rc::new(FiniteCenter::new(tw.clone(), point)), delta)
    }

    #[test]
    fn depth_zero_on_x_and_shifted_x() {
        let tw = shared(2);
        let caps = Caps::default();
        let mu = depth_zero_at(&tw, PuiseuxSeries::zero(), Rat::frac(-1, 2));
        let x = Poly::x(&tw.borrow());
        assert_eq!(
            mu.value(&x, &caps).unwrap(),
            CertifiedVal::exact_rat(Rat::frac(-1, 2))
        );
        // x - t^(-1/2): min(v(t^(-1/2)), delta) = -1/2
        let f = Poly::x_minus(&mono(&tw, -1, 2), &tw.borrow().clone());
        assert_eq!(
            mu.value(&f, &caps).unwrap(),
            CertifiedVal::exact_rat(Rat::frac(-1, 2))
        );
    }

    #[test]
    fn depth_zero_achieves_gamma_on_its_key_polynomial() {
        let tw = shared(2);
        let caps = Caps::default();
        let center = mono(&tw, -1, 2);
        let mu = depth_zero_at(&tw, center.clone(), Rat::frac(-1, 4));
        let f = Poly::x_minus(&center, &tw.borrow().clone());
        // the k = 0 term vanishes symbolically; min over k >= 1 gives delta
        assert_eq!(
            mu.value(&f, &caps).unwrap(),
            CertifiedVal::exact_rat(Rat::frac(-1, 4))
        );
    }

    #[test]
    fn depth_zero_is_multiplicative_and_ultrametric_on_samples() {
        use rand_core::{RngCore, SeedableRng};
        let tw = shared(2);
        let caps = Caps::default();
        let mu = depth_zero_at(&tw, mono(&tw, -1, 2), Rat::frac(1, 4));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let sample = |rng: &mut rand_chacha::ChaCha8Rng| {
            let deg = (rng.next_u32() % 3) as usize;
            let coeffs: Vec<PuiseuxSeries> = (0..=deg)
                .map(|_| {
                    let mut terms = vec![];
                    for _ in 0..(rng.next_u32() % 3) {
                        let num = (rng.next_u32() % 9) as i64 - 4;
                        terms.push((Rat::frac(num, 2), tw.borrow().one()));
                    }
                    PuiseuxSeries::from_terms(terms, ValOrInf::Infinity, &tw.borrow())
                })
                .collect();
            Poly::from_coeffs(coeffs)
        };
        for _ in 0..40 {
            let f = sample(&mut rng);
            let g = sample(&mut rng);
            if f.is_zero() || g.is_zero() {
                continue;
            }
            let (vf, vg) = (
                mu.exact_value(&f, &caps).unwrap(),
                mu.exact_value(&g, &caps).unwrap(),
            );
            let prod = f.mul(&g, &tw.borrow());
            assert_eq!(mu.exact_value(&prod, &caps).unwrap(), &vf + &vg);
            let sum = f.add(&g, &tw.borrow());
            if !sum.is_zero() {
                assert!(mu.exact_value(&sum, &caps).unwrap() >= vf.min(vg));
            }
        }
    }

    #[test]
    fn ordinary_augmentation_examples() {
        let tw = shared(2);
        let caps = Caps::default();
        let base = Rc::new(depth_zero_at(&tw, PuiseuxSeries::zero(), Rat::frac(-1, 2)));
        let phi = Poly::x(&tw.borrow());
        let gamma = Rat::frac(-1, 4);
        let mu = Valuation::ordinary(base.clone(), phi.clone(), gamma.clone(), &caps).unwrap();
        // mu(phi) = gamma, mu(phi^2) = 2 gamma
        assert_eq!(mu.exact_value(&phi, &caps).unwrap(), gamma);
        let phi2 = phi.pow(2, &tw.borrow());
        assert_eq!(mu.exact_value(&phi2, &caps).unwrap(), Rat::frac(-1, 2));
        // deg f < deg phi falls through to the base valuation
        let c = Poly::constant(mono(&tw, 3, 1));
        assert_eq!(mu.exact_value(&c, &caps).unwrap(), Rat::int(3));
        // the rejected degenerate construction: gamma <= mu(phi)
        assert!(Valuation::ordinary(base, phi, Rat::frac(-1, 2), &caps).is_err());
    }

    #[test]
    fn ordinary_augmentation_of_depth_zero_is_the_larger_ball() {
        use rand_core::{RngCore, SeedableRng};
        let tw = shared(2);
        let caps = Caps::default();
        let base = Rc::new(depth_zero_at(&tw, PuiseuxSeries::zero(), Rat::frac(-1, 2)));
        let phi = Poly::x(&tw.borrow());
        let mu = Valuation::ordinary(base, phi, Rat::frac(-1, 4), &caps).unwrap();
        let omega = depth_zero_at(&tw, PuiseuxSeries::zero(), Rat::frac(-1, 4));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for _ in 0..30 {
            let deg = (rng.next_u32() % 4) as usize;
            let coeffs: Vec<PuiseuxSeries> = (0..=deg)
                .map(|_| {
                    let num = (rng.next_u32() % 9) as i64 - 4;
                    if rng.next_u32() % 4 == 0 {
                        PuiseuxSeries::zero()
                    } else {
                        PuiseuxSeries::monomial(Rat::frac(num, 4), tw.borrow().one())
                    }
                })
                .collect();
            let f = Poly::from_coeffs(coeffs);
            if f.is_zero() {
                continue;
            }
            assert_eq!(
                mu.value(&f, &caps).unwrap(),
                omega.value(&f, &caps).unwrap()
            );
        }
    }

    #[test]
    fn certified_min_logic() {
        let exact = |n, d| CertifiedVal::exact_rat(Rat::frac(n, d));
        // exact wins over clearing bounds
        assert_eq!(
            certified_min(vec![exact(1, 2), CertifiedVal::LowerBound(Rat::int(3))]),
            exact(1, 2)
        );
        // a bound below the exact candidate blocks certification
        assert_eq!(
            certified_min(vec![exact(1, 2), CertifiedVal::LowerBound(Rat::int(-1))]),
            CertifiedVal::LowerBound(Rat::int(-1))
        );
        // infinities are skipped; empty means infinity
        assert_eq!(
            certified_min(vec![CertifiedVal::Exact(ValOrInf::Infinity), exact(2, 1)]),
            exact(2, 1)
        );
        assert_eq!(
            certified_min(vec![]),
            CertifiedVal::Exact(ValOrInf::Infinity)
        );
    }
}
