use crate::exactmath::{FieldTower, Rat, ValOrInf};
use crate::polyring::Poly;
use crate::series::{CertifiedVal, SeriesStream};
use crate::{Caps, Error};

/// Certified valuation `v(f(s))` of a polynomial at a lazily-given series.
///
/// The stream is truncated below a growing bound `r`; for the truncation `a`
/// with exact next exponent `rhat`, the ultrametric tail estimate
///
/// `v(f(s) - f(a)) >= min_{k>=1} ( v(f_k(a)) + k * rhat )`
///
/// (with `f_k` the Hasse derivatives) certifies `v(f(s)) = v(f(a))` as soon
/// as `v(f(a))` falls strictly below that bound. Otherwise `r` follows a
/// doubling schedule up to `caps.max_precision` and the best certified lower
/// bound is returned. Hasse derivatives rather than ordinary ones keep the
/// estimate alive in characteristic `p`, where `f'` dies on `p`-th powers.
///
/// `Exact(∞)` is claimed in two situations only: the stream exhausts (the
/// point is a finite series and the evaluation is exact symbolic arithmetic),
/// or `f` is exactly divisible by a supplied minimal polynomial of the
/// stream. Truncation never certifies `∞`.
pub fn eval_valuation_at_stream(
    f: &Poly,
    stream: &mut SeriesStream,
    minpoly: Option<&Poly>,
    tw: &FieldTower,
    caps: &Caps,
) -> Result<CertifiedVal, Error> {
    let mut f = f.clone();
    if let Some(m) = minpoly {
        if f.is_exact() && m.is_exact() && f.degree() >= m.degree() {
            let (_, r) = f.divmod_monic(m, tw)?;
            if r.is_zero() {
                return Ok(CertifiedVal::Exact(ValOrInf::Infinity));
            }
            // v(f(s)) = v(r(s)) since the minimal polynomial kills the rest
            f = r;
        }
    }
    if f.is_zero() {
        return Ok(CertifiedVal::Exact(ValOrInf::Infinity));
    }

    let first = stream.next_exponent();
    let mut r = match first {
        // empty stream: the point is the zero series
        ValOrInf::Infinity => {
            return Ok(f.coeff(0).valuation());
        }
        ValOrInf::Finite(e) => &e + &Rat::int(1),
    };

    let hasse = f.hasse_derivatives(tw);
    // the term budget doubles along with the precision request, so cheap
    // certifications stay cheap on streams with accumulating supports
    let mut budget = 8usize.min(caps.max_terms);
    loop {
        let (a, next) = stream.truncate_below(&r, budget, tw);
        // The truncation is an exactly known finite series; the omitted tail
        // is accounted for by the Hasse bound below, not by the precision
        // tag (which would double-count the error and lose the sharp
        // characteristic-p cancellations).
        let a = a.as_exact();
        let g0 = f.eval_series(&a, tw);
        let v0 = g0.valuation();
        let rhat = match &next {
            // exhausted: f(s) = f(a) exactly
            ValOrInf::Infinity => return Ok(v0),
            ValOrInf::Finite(e) => e.clone(),
        };
        // certified tail bound from the Hasse terms k >= 1
        let mut tail_bound: Option<Rat> = None; // None = all terms vanish
        for (k, fk) in hasse.iter().enumerate().skip(1) {
            if fk.is_zero() {
                continue;
            }
            let gk = fk.eval_series(&a, tw);
            if let Some(low) = gk.valuation().guaranteed_low() {
                let b = &low + &rhat.scale(k as u64);
                tail_bound = Some(match tail_bound {
                    Some(t) => t.min(b),
                    None => b,
                });
            }
        }
        let bound = match tail_bound {
            Some(b) => b,
            // all higher Hasse terms vanish identically at a; f(s) = f(a)
            None => return Ok(v0),
        };
        if let Some(v) = v0.as_exact_rat() {
            if *v < bound {
                return Ok(CertifiedVal::Exact(ValOrInf::Finite(v.clone())));
            }
        }
        // not certified at this depth; if the binding cap cannot be raised,
        // settle for the combined certified lower bound
        let saturated_below_r = matches!(&next, ValOrInf::Finite(e) if e >= &r);
        let progress = if saturated_below_r {
            r < caps.max_precision
        } else {
            budget < caps.max_terms
        };
        if !progress {
            let low = match v0.guaranteed_low() {
                Some(l) => l.min(bound),
                None => bound,
            };
            return Ok(CertifiedVal::LowerBound(low));
        }
        budget = (budget * 2).min(caps.max_terms);
        r = if r <= Rat::zero() { &r + &Rat::int(1) } else { r.scale(2) };
        if r > caps.max_precision {
            r = caps.max_precision.clone();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::PuiseuxSeries;

    fn tw2() -> FieldTower {
        FieldTower::new(2)
    }

    /// `Σ_{j>=0} t^(-1/2^(j+1))`, the Abhyankar root.
    fn s0_stream(tw: &FieldTower) -> SeriesStream {
        let one = tw.one();
        let mut j = 0u32;
        SeriesStream::from_fn(move || {
            let e = -Rat::inv_pow(2, j + 1);
            j += 1;
            Some((e, one.clone()))
        })
    }

    #[test]
    fn linear_polynomial_reads_off_the_valuation() {
        let tw = tw2();
        let f = Poly::x(&tw);
        let mut st = s0_stream(&tw);
        let got = eval_valuation_at_stream(&f, &mut st, None, &tw, &Caps::default()).unwrap();
        assert_eq!(got, CertifiedVal::exact_rat(Rat::frac(-1, 2)));
    }

    #[test]
    fn root_without_minpoly_gives_a_lower_bound_that_grows() {
        let tw = tw2();
        let f = Poly::as_iterate_minus_tinv(1, &tw);
        let small = Caps { max_terms: 8, ..Caps::default() };
        let mut st = s0_stream(&tw);
        let got = eval_valuation_at_stream(&f, &mut st, None, &tw, &small).unwrap();
        let CertifiedVal::LowerBound(b1) = got else {
            panic!("expected a lower bound, got {got:?}")
        };
        let bigger = Caps { max_terms: 20, ..Caps::default() };
        let mut st = s0_stream(&tw);
        let got = eval_valuation_at_stream(&f, &mut st, None, &tw, &bigger).unwrap();
        let CertifiedVal::LowerBound(b2) = got else {
            panic!("expected a lower bound, got {got:?}")
        };
        assert!(b2 > b1, "deeper truncation must certify more: {b1} vs {b2}");
    }

    #[test]
    fn root_with_minpoly_reports_infinity_symbolically() {
        let tw = tw2();
        let f = Poly::as_iterate_minus_tinv(1, &tw);
        let mut st = s0_stream(&tw);
        let got = eval_valuation_at_stream(&f, &mut st, Some(&f), &tw, &Caps::default()).unwrap();
        assert_eq!(got, CertifiedVal::Exact(ValOrInf::Infinity));
    }

    #[test]
    fn minpoly_reduction_evaluates_the_remainder() {
        // f = x * phi + x has the same valuation as x at the root of phi
        let tw = tw2();
        let phi = Poly::as_iterate_minus_tinv(1, &tw);
        let x = Poly::x(&tw);
        let f = x.mul(&phi, &tw).add(&x, &tw);
        let mut st = s0_stream(&tw);
        let got = eval_valuation_at_stream(&f, &mut st, Some(&phi), &tw, &Caps::default()).unwrap();
        assert_eq!(got, CertifiedVal::exact_rat(Rat::frac(-1, 2)));
    }

    #[test]
    fn exhausted_stream_is_exact_even_for_roots() {
        let tw = tw2();
        let a = PuiseuxSeries::monomial(Rat::frac(-1, 2), tw.one());
        let f = Poly::x_minus(&a, &tw);
        let mut st = SeriesStream::from_series(&a);
        let got = eval_valuation_at_stream(&f, &mut st, None, &tw, &Caps::default()).unwrap();
        assert_eq!(got, CertifiedVal::Exact(ValOrInf::Infinity));
    }

    #[test]
    fn value_of_a_product_of_linear_factors_is_the_sum_over_roots() {
        // roots r1 = t^(-1/2), r2 = t^(-1/2) + t^(-1/4):
        // v(s0 - r1) = -1/4, v(s0 - r2) = -1/8, so the product gives -3/8
        let tw = tw2();
        let r1 = PuiseuxSeries::monomial(Rat::frac(-1, 2), tw.one());
        let r2 = r1.add(&PuiseuxSeries::monomial(Rat::frac(-1, 4), tw.one()), &tw);
        let f = Poly::x_minus(&r1, &tw).mul(&Poly::x_minus(&r2, &tw), &tw);
        let mut st = s0_stream(&tw);
        let got = eval_valuation_at_stream(&f, &mut st, None, &tw, &Caps::default()).unwrap();
        assert_eq!(got, CertifiedVal::exact_rat(Rat::frac(-3, 8)));
    }

    #[test]
    fn exact_results_are_invariant_under_cap_raise() {
        let tw = tw2();
        let phi = Poly::as_iterate_minus_tinv(1, &tw);
        let x_shift = Poly::x_minus(&PuiseuxSeries::monomial(Rat::frac(-1, 2), tw.one()), &tw);
        let f = phi.add(&x_shift, &tw);
        for max_terms in [32usize, 64, 128] {
            let caps = Caps { max_terms, ..Caps::default() };
            let mut st = s0_stream(&tw);
            let got = eval_valuation_at_stream(&f, &mut st, None, &tw, &caps).unwrap();
            assert_eq!(got, CertifiedVal::exact_rat(Rat::frac(-1, 4)));
        }
    }
}
