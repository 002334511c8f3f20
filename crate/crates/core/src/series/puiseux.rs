use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::exactmath::{FieldTower, FqElem, Rat, ValOrInf};

/// A certified valuation: either an exact value or a lower bound.
///
/// `Exact(∞)` is only ever produced from symbolically known vanishing (an
/// exactly zero object), never from truncation. `LowerBound(b)` asserts the
/// true value is `>= b`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CertifiedVal {
    Exact(ValOrInf),
    LowerBound(Rat),
}

impl CertifiedVal {
    pub fn exact_rat(r: Rat) -> CertifiedVal {
        CertifiedVal::Exact(ValOrInf::Finite(r))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, CertifiedVal::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&ValOrInf> {
        match self {
            CertifiedVal::Exact(v) => Some(v),
            CertifiedVal::LowerBound(_) => None,
        }
    }

    pub fn as_exact_rat(&self) -> Option<&Rat> {
        self.as_exact().and_then(|v| v.as_finite())
    }

    /// Guaranteed lower bound carried by either variant (`None` means `∞`).
    pub fn guaranteed_low(&self) -> Option<Rat> {
        match self {
            CertifiedVal::Exact(ValOrInf::Finite(r)) => Some(r.clone()),
            CertifiedVal::Exact(ValOrInf::Infinity) => None,
            CertifiedVal::LowerBound(b) => Some(b.clone()),
        }
    }

    pub fn add_rat(&self, r: &Rat) -> CertifiedVal {
        match self {
            CertifiedVal::Exact(v) => CertifiedVal::Exact(v.add_rat(r)),
            CertifiedVal::LowerBound(b) => CertifiedVal::LowerBound(b + r),
        }
    }

    pub fn wire(&self) -> String {
        match self {
            CertifiedVal::Exact(v) => v.wire(),
            CertifiedVal::LowerBound(b) => format!(">={}", b.wire()),
        }
    }
}

impl core::fmt::Display for CertifiedVal {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            CertifiedVal::Exact(v) => write!(f, "{v}"),
            CertifiedVal::LowerBound(b) => write!(f, ">= {b}"),
        }
    }
}

/// Finite-support Puiseux series with a precision certificate.
///
/// Invariants: exponents strictly increasing, no zero coefficients, every
/// stored exponent below `prec`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PuiseuxSeries {
    terms: Vec<(Rat, FqElem)>,
    prec: ValOrInf,
}

impl PuiseuxSeries {
    /// The exact zero series.
    pub fn zero() -> PuiseuxSeries {
        PuiseuxSeries { terms: Vec::new(), prec: ValOrInf::Infinity }
    }

    pub fn one(tw: &FieldTower) -> PuiseuxSeries {
        PuiseuxSeries::monomial(Rat::zero(), tw.one())
    }

    /// `coeff * t^exp`; the zero series if `coeff` is zero.
    pub fn monomial(exp: Rat, coeff: FqElem) -> PuiseuxSeries {
        if coeff.is_zero() {
            PuiseuxSeries::zero()
        } else {
            PuiseuxSeries { terms: vec![(exp, coeff)], prec: ValOrInf::Infinity }
        }
    }

    /// An empty series known only up to `prec`.
    pub fn unknown_below(prec: Rat) -> PuiseuxSeries {
        PuiseuxSeries { terms: Vec::new(), prec: ValOrInf::Finite(prec) }
    }

    /// Normalising constructor: sorts, merges equal exponents, drops zeros
    /// and terms at or above the precision bound.
    pub fn from_terms(mut terms: Vec<(Rat, FqElem)>, prec: ValOrInf, tw: &FieldTower) -> PuiseuxSeries {
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Rat, FqElem)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            if let ValOrInf::Finite(b) = &prec {
                if &e >= b {
                    continue;
                }
            }
            match out.last_mut() {
                Some((le, lc)) if *le == e => {
                    *lc = tw.add(lc, &c);
                }
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        PuiseuxSeries { terms: out, prec }
    }

    pub fn terms(&self) -> &[(Rat, FqElem)] {
        &self.terms
    }

    pub fn precision(&self) -> &ValOrInf {
        &self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_infinite()
    }

    /// Exactly the zero series (empty support and infinite precision).
    pub fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && self.is_exact()
    }

    pub fn leading(&self) -> Option<&(Rat, FqElem)> {
        self.terms.first()
    }

    /// The valuation `v(s) = min(supp(s))`, certified.
    ///
    /// An empty series with finite precision is *not* zero: its valuation is
    /// only known to be at least the precision bound, and is reported so.
    pub fn valuation(&self) -> CertifiedVal {
        match (self.terms.first(), &self.prec) {
            (Some((e, _)), _) => CertifiedVal::exact_rat(e.clone()),
            (None, ValOrInf::Infinity) => CertifiedVal::Exact(ValOrInf::Infinity),
            (None, ValOrInf::Finite(b)) => CertifiedVal::LowerBound(b.clone()),
        }
    }

    /// First exponent when the support is nonempty, else the precision
    /// bound. A sound lower bound on the valuation in every case.
    pub fn valuation_floor(&self) -> ValOrInf {
        match self.terms.first() {
            Some((e, _)) => ValOrInf::Finite(e.clone()),
            None => self.prec.clone(),
        }
    }

    pub fn add(&self, other: &PuiseuxSeries, tw: &FieldTower) -> PuiseuxSeries {
        let prec = self.prec.clone().min(other.prec.clone());
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        PuiseuxSeries::from_terms(terms, prec, tw)
    }

    pub fn neg(&self, tw: &FieldTower) -> PuiseuxSeries {
        PuiseuxSeries {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), tw.neg(c))).collect(),
            prec: self.prec.clone(),
        }
    }

    pub fn sub(&self, other: &PuiseuxSeries, tw: &FieldTower) -> PuiseuxSeries {
        self.add(&other.neg(tw), tw)
    }

    /// Product with precision propagation
    /// `prec = min(prec_a + v(b), prec_b + v(a))`; exact inputs propagate `∞`.
    pub fn mul(&self, other: &PuiseuxSeries, tw: &FieldTower) -> PuiseuxSeries {
        if self.is_exact_zero() || other.is_exact_zero() {
            return PuiseuxSeries::zero();
        }
        let prec = mul_precision(self, other).min(mul_precision(other, self));
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                terms.push((ea + eb, tw.mul(ca, cb)));
            }
        }
        PuiseuxSeries::from_terms(terms, prec, tw)
    }

    pub fn scalar_mul(&self, c: &FqElem, tw: &FieldTower) -> PuiseuxSeries {
        if c.is_zero() {
            return PuiseuxSeries::zero();
        }
        PuiseuxSeries {
            terms: self.terms.iter().map(|(e, a)| (e.clone(), tw.mul(a, c))).collect(),
            prec: self.prec.clone(),
        }
    }

    /// Multiplication by the monomial `c * t^e` (exact shift).
    pub fn mul_monomial(&self, e: &Rat, c: &FqElem, tw: &FieldTower) -> PuiseuxSeries {
        if c.is_zero() {
            return PuiseuxSeries::zero();
        }
        PuiseuxSeries {
            terms: self.terms.iter().map(|(q, a)| (q + e, tw.mul(a, c))).collect(),
            prec: self.prec.add_rat(e),
        }
    }

    /// `k`-fold Frobenius: `(Σ a_q t^q)^(p^k) = Σ a_q^(p^k) t^(q p^k)`,
    /// exact term-by-term; precision scales by `p^k`.
    pub fn frobenius_pow(&self, k: u32, tw: &FieldTower) -> PuiseuxSeries {
        let pk = Rat::int((tw.p() as i64).pow(k));
        let e = (tw.p() as u64).pow(k);
        let terms = self
            .terms
            .iter()
            .map(|(q, a)| (q * &pk, tw.pow(a, e)))
            .collect();
        let prec = match &self.prec {
            ValOrInf::Finite(b) => ValOrInf::Finite(b * &pk),
            ValOrInf::Infinity => ValOrInf::Infinity,
        };
        PuiseuxSeries { terms, prec }
    }

    /// The Artin-Schreier operator `s -> s^p - s`, via the Frobenius
    /// shortcut. The shortcut is load-bearing for precision: the cross terms
    /// of `(prefix + err)^p` vanish in characteristic `p`, so the result is
    /// certified below `p * prec`, much sharper than the generic product
    /// rule.
    pub fn artin_schreier(&self, tw: &FieldTower) -> PuiseuxSeries {
        self.frobenius_pow(1, tw).sub(self, tw)
    }

    /// Integer power by repeated multiplication (tests and small expansions).
    pub fn pow(&self, mut k: u64, tw: &FieldTower) -> PuiseuxSeries {
        let mut base = self.clone();
        let mut acc = PuiseuxSeries::one(tw);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base, tw);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base, tw);
            }
        }
        acc
    }

    /// The same support, reinterpreted as an exact series. Correct only when
    /// the caller accounts for the omitted tail by other means.
    pub fn as_exact(&self) -> PuiseuxSeries {
        PuiseuxSeries { terms: self.terms.clone(), prec: ValOrInf::Infinity }
    }

    /// Terms with exponent below `r`; precision tightens to at most `r`.
    pub fn truncate_below(&self, r: &Rat) -> PuiseuxSeries {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e < r)
            .cloned()
            .collect();
        let prec = self.prec.clone().min(ValOrInf::Finite(r.clone()));
        PuiseuxSeries { terms, prec }
    }

    /// Renders per the shared literal grammar, `c*t^(a/b) + ...`.
    pub fn render(&self, tw: &FieldTower) -> String {
        if self.terms.is_empty() {
            return String::from("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let coeff = tw.render(c);
                let plain = c.level() == 0;
                if e.is_zero() {
                    if plain { coeff } else { format!("({coeff})") }
                } else if plain && coeff == "1" {
                    format!("t^({e})")
                } else if plain {
                    format!("{coeff}*t^({e})")
                } else {
                    format!("({coeff})*t^({e})")
                }
            })
            .collect();
        parts.join(" + ")
    }
}

fn mul_precision(a: &PuiseuxSeries, b: &PuiseuxSeries) -> ValOrInf {
    match &a.prec {
        ValOrInf::Infinity => ValOrInf::Infinity,
        ValOrInf::Finite(pa) => match b.valuation_floor() {
            ValOrInf::Finite(vb) => ValOrInf::Finite(pa + &vb),
            // b is exactly zero; the product is exact
            ValOrInf::Infinity => ValOrInf::Infinity,
        },
    }
}
