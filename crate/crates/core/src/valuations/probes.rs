use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::exactmath::{FqElem, Rat, ValOrInf};
use crate::polyring::{CertifiedVal, Poly};
use crate::valuations::{certified_min, CenterEval, Valuation};
use crate::{Caps, Error};

/// Whether `ω_{a,δ} <= ω_{b,ε}`, i.e. `v(a - b) >= δ` and `ε >= δ`.
///
/// The difference test needs only the finitely many terms of both streams
/// below `δ`: if everything cancels there the inequality is certified
/// exactly, otherwise the first surviving exponent refutes it. A structural
/// difference (both centers truncations of one master series) short-circuits
/// the merge.
pub fn ball_leq(
    a: &dyn CenterEval,
    delta: &Rat,
    b: &dyn CenterEval,
    eps: &Rat,
    caps: &Caps,
) -> Result<bool, Error> {
    if eps < delta {
        return Ok(false);
    }
    let vdiff_ge_delta = match a.structural_diff(b) {
        Some(ValOrInf::Infinity) => true,
        Some(ValOrInf::Finite(v)) => &v >= delta,
        None => {
            // merge both term streams below delta and look for a survivor
            let tw = a.tower();
            let mut acc: BTreeMap<Rat, FqElem> = BTreeMap::new();
            for (stream, negate) in [(&mut a.stream(), false), (&mut b.stream(), true)] {
                let mut pulled = 0usize;
                loop {
                    match stream.next_exponent() {
                        ValOrInf::Finite(e) if &e < delta => {
                            if pulled >= caps.max_terms {
                                return Err(Error::Uncertified {
                                    bound: e.clone(),
                                    context: format!(
                                        "ball_leq difference stream exceeded {} terms below {delta}",
                                        caps.max_terms
                                    ),
                                });
                            }
                            let (_, c) = stream.next_term().unwrap();
                            pulled += 1;
                            let tw = tw.borrow();
                            let c = if negate { tw.neg(&c) } else { c };
                            let entry = acc.entry(e).or_insert_with(|| tw.zero());
                            *entry = tw.add(entry, &c);
                        }
                        _ => break,
                    }
                }
            }
            acc.values().all(|c| c.is_zero())
        }
    };
    Ok(vdiff_ge_delta)
}

/// Report of a sampled minimality test (Lemma-style criterion: `μ` acts as
/// the minimum over `g`-expansions iff `g` is `μ`-minimal).
#[derive(Clone, Debug)]
pub struct MinimalityReport {
    pub checked: usize,
    /// Samples whose values could not be certified, with reasons.
    pub skipped: Vec<String>,
    /// First counterexample found: (rendered f, mu(f), expansion minimum).
    /// Any counterexample certifies that `g` is not `μ`-minimal.
    pub counterexample: Option<(String, Rat, Rat)>,
}

impl MinimalityReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Tests `μ(f) = min_n μ(a_n g^n)` over the `g`-expansions of the samples.
///
/// A failure certifies non-minimality of `g`; all-pass is evidence, not
/// proof (the criterion quantifies over all polynomials).
pub fn is_minimal_witness(
    mu: &Valuation,
    g: &Poly,
    samples: &[Poly],
    caps: &Caps,
) -> Result<MinimalityReport, Error> {
    let tw = mu.tower();
    {
        let tw = tw.borrow();
        if !g.is_monic(&tw) || g.degree().unwrap_or(0) < 1 {
            return Err(Error::Precondition(String::from(
                "minimality test needs a monic g of degree >= 1",
            )));
        }
    }
    let vg = mu.exact_value(g, caps)?;
    let mut report = MinimalityReport { checked: 0, skipped: Vec::new(), counterexample: None };
    for f in samples {
        if f.is_zero() {
            continue;
        }
        let direct = match mu.value(f, caps)? {
            CertifiedVal::Exact(ValOrInf::Finite(r)) => r,
            other => {
                report.skipped.push(format!("mu(f) not exact: {other:?}"));
                continue;
            }
        };
        let parts = {
            let tw = tw.borrow();
            f.phi_expansion(g, &tw)?
        };
        let mut terms = Vec::new();
        let mut fine = true;
        for (n, a) in parts.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            match mu.value(a, caps)? {
                CertifiedVal::Exact(v) => {
                    terms.push(CertifiedVal::Exact(v.add_rat(&vg.scale(n as u64))))
                }
                other => {
                    report.skipped.push(format!("mu(a_{n}) not exact: {other:?}"));
                    fine = false;
                    break;
                }
            }
        }
        if !fine {
            continue;
        }
        report.checked += 1;
        if let CertifiedVal::Exact(ValOrInf::Finite(expansion_min)) = certified_min(terms) {
            if expansion_min != direct {
                let rendered = {
                    let tw = tw.borrow();
                    f.render(&tw)
                };
                report.counterexample = Some((rendered, direct, expansion_min));
                return Ok(report);
            }
        }
    }
    Ok(report)
}

/// Divisibility probe between comparable valuations `μ < ν`.
///
/// For `φ` in the tangent set of `(μ, ν)`, the value equality `μ(f) = ν(f)`
/// holds iff `φ` does not `μ`-divide `f`; so strict increase of the value is
/// exactly `μ`-divisibility by the tangent direction. Returns `true` for
/// "divisible" (`μ(f) < ν(f)`).
pub fn divisibility_probe(
    mu: &Valuation,
    nu: &Valuation,
    f: &Poly,
    caps: &Caps,
) -> Result<bool, Error> {
    let a = mu.exact_value(f, caps)?;
    let b = nu.exact_value(f, caps)?;
    if a > b {
        return Err(Error::Precondition(format!(
            "valuations are not ordered on f: mu(f) = {a} > nu(f) = {b}"
        )));
    }
    Ok(a < b)
}
