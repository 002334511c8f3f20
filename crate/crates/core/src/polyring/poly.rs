use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::exactmath::{binom_mod_p, FieldTower, Rat};
use crate::series::PuiseuxSeries;
use crate::Error;

/// Dense univariate polynomial over Puiseux-series coefficients,
/// degree 0 upward. The zero polynomial is the empty coefficient list.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    coeffs: Vec<PuiseuxSeries>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: PuiseuxSeries) -> Poly {
        Poly::from_coeffs(vec![c])
    }

    pub fn one(tw: &FieldTower) -> Poly {
        Poly::constant(PuiseuxSeries::one(tw))
    }

    /// The monomial `x`.
    pub fn x(tw: &FieldTower) -> Poly {
        Poly { coeffs: vec![PuiseuxSeries::zero(), PuiseuxSeries::one(tw)] }
    }

    /// `c * x^k`.
    pub fn monomial(k: usize, c: PuiseuxSeries) -> Poly {
        if c.is_exact_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![PuiseuxSeries::zero(); k];
        coeffs.push(c);
        Poly { coeffs }
    }

    /// Trims trailing exactly-zero coefficients. An empty-but-imprecise
    /// leading coefficient is not zero and is kept.
    pub fn from_coeffs(mut coeffs: Vec<PuiseuxSeries>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_exact_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[PuiseuxSeries] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> PuiseuxSeries {
        self.coeffs.get(k).cloned().unwrap_or_else(PuiseuxSeries::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&PuiseuxSeries> {
        self.coeffs.last()
    }

    pub fn is_monic(&self, tw: &FieldTower) -> bool {
        self.leading().is_some_and(|c| *c == PuiseuxSeries::one(tw))
    }

    /// All coefficients exact (infinite precision).
    pub fn is_exact(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_exact())
    }

    pub fn add(&self, other: &Poly, tw: &FieldTower) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|k| self.coeff(k).add(&other.coeff(k), tw))
            .collect();
        Poly::from_coeffs(coeffs)
    }

    pub fn neg(&self, tw: &FieldTower) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| c.neg(tw)).collect() }
    }

    pub fn sub(&self, other: &Poly, tw: &FieldTower) -> Poly {
        self.add(&other.neg(tw), tw)
    }

    pub fn mul(&self, other: &Poly, tw: &FieldTower) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![PuiseuxSeries::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_exact_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_exact_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b, tw), tw);
            }
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn scalar_mul(&self, s: &PuiseuxSeries, tw: &FieldTower) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| c.mul(s, tw)).collect())
    }

    pub fn pow(&self, mut k: u64, tw: &FieldTower) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(tw);
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

    /// Horner evaluation at a series point.
    pub fn eval_series(&self, a: &PuiseuxSeries, tw: &FieldTower) -> PuiseuxSeries {
        let mut acc = PuiseuxSeries::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(a, tw).add(c, tw);
        }
        acc
    }

    /// Exact division with remainder by a monic polynomial:
    /// `self = q * phi + r`, `deg r < deg phi`.
    pub fn divmod_monic(&self, phi: &Poly, tw: &FieldTower) -> Result<(Poly, Poly), Error> {
        if !phi.is_monic(tw) || phi.degree().unwrap_or(0) < 1 {
            return Err(Error::NonMonicDivisor);
        }
        let dphi = phi.degree().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dphi {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![PuiseuxSeries::zero(); rem.len() - dphi];
        for k in (dphi..rem.len()).rev() {
            let lead = core::mem::replace(&mut rem[k], PuiseuxSeries::zero());
            if lead.is_exact_zero() {
                continue;
            }
            for (j, pc) in phi.coeffs.iter().enumerate().take(dphi) {
                rem[k - dphi + j] = rem[k - dphi + j].sub(&lead.mul(pc, tw), tw);
            }
            quot[k - dphi] = lead;
        }
        rem.truncate(dphi);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    /// The phi-adic expansion `self = Σ a_n phi^n` with `deg a_n < deg phi`,
    /// returned as `(a_0, a_1, ...)`.
    pub fn phi_expansion(&self, phi: &Poly, tw: &FieldTower) -> Result<Vec<Poly>, Error> {
        let mut out = Vec::new();
        let mut rest = self.clone();
        if rest.is_zero() {
            return Ok(vec![Poly::zero()]);
        }
        while !rest.is_zero() {
            let (q, r) = rest.divmod_monic(phi, tw)?;
            out.push(r);
            rest = q;
        }
        Ok(out)
    }

    /// Rebuilds `Σ a_n phi^n`; the round-trip oracle for [`Poly::phi_expansion`].
    pub fn assemble(parts: &[Poly], phi: &Poly, tw: &FieldTower) -> Poly {
        let mut acc = Poly::zero();
        for a in parts.iter().rev() {
            acc = acc.mul(phi, tw).add(a, tw);
        }
        acc
    }

    /// Hasse derivatives: the polynomials `f_k` with
    /// `f(x) = Σ_k f_k(a) (x - a)^k` for every point `a`.
    ///
    /// `f_k = Σ_m C(m, k) c_m x^(m-k)` with the binomials reduced mod `p`.
    /// In characteristic `p` this is not `k!`-normalised differentiation;
    /// it stays exact where ordinary derivatives vanish on `p`-th powers.
    pub fn hasse_derivatives(&self, tw: &FieldTower) -> Vec<Poly> {
        let Some(deg) = self.degree() else {
            return vec![Poly::zero()];
        };
        (0..=deg)
            .map(|k| {
                let coeffs = (k..=deg)
                    .map(|m| {
                        let b = binom_mod_p(m as u64, k as u64, tw.p())
                            .expect("m >= k by construction");
                        self.coeff(m).scalar_mul(&tw.from_int(b as i64), tw)
                    })
                    .collect();
                Poly::from_coeffs(coeffs)
            })
            .collect()
    }

    /// `x - a` for a series point `a`.
    pub fn x_minus(a: &PuiseuxSeries, tw: &FieldTower) -> Poly {
        Poly::from_coeffs(vec![a.neg(tw), PuiseuxSeries::one(tw)])
    }

    /// Renders per the shared polynomial grammar, highest degree first,
    /// e.g. `x^2 + x + t^(-1)`.
    pub fn render(&self, tw: &FieldTower) -> String {
        let Some(deg) = self.degree() else {
            return String::from("0");
        };
        let mut parts: Vec<String> = Vec::new();
        for k in (0..=deg).rev() {
            let c = self.coeff(k);
            if c.is_exact_zero() {
                continue;
            }
            let xpow = match k {
                0 => String::new(),
                1 => String::from("x"),
                _ => format!("x^{k}"),
            };
            let coeff = render_coeff(&c, tw);
            let part = if k == 0 {
                coeff
            } else if is_one(&c, tw) {
                xpow
            } else {
                format!("{coeff}*{xpow}")
            };
            parts.push(part);
        }
        if parts.is_empty() {
            String::from("0")
        } else {
            parts.join(" + ")
        }
    }
}

fn is_one(c: &PuiseuxSeries, tw: &FieldTower) -> bool {
    *c == PuiseuxSeries::one(tw)
}

fn render_coeff(c: &PuiseuxSeries, tw: &FieldTower) -> String {
    let body = c.render(tw);
    if c.terms().len() > 1 {
        format!("({body})")
    } else {
        body
    }
}

/// Convenience constructors for tests and fixtures.
impl Poly {
    /// `x^p - x - t^(-1)` iterated: `AS^k(x) - t^(-1)`, the minimal
    /// polynomial of the `k-1`-th row series.
    pub fn as_iterate_minus_tinv(k: u32, tw: &FieldTower) -> Poly {
        let mut f = Poly::x(tw);
        for _ in 0..k {
            f = f.artin_schreier(tw);
        }
        let tinv = PuiseuxSeries::monomial(Rat::int(-1), tw.one());
        f.sub(&Poly::constant(tinv), tw)
    }

    /// `self^p - self`, coefficient-exact.
    pub fn artin_schreier(&self, tw: &FieldTower) -> Poly {
        self.pow(tw.p() as u64, tw).sub(self, tw)
    }

    /// Applies Frobenius coefficient-wise and multiplies exponents of `x`
    /// by `p^k`; the polynomial analogue of the series Frobenius shortcut.
    pub fn substitute_x_pow(&self, pk: usize) -> Poly {
        let Some(deg) = self.degree() else {
            return Poly::zero();
        };
        let mut coeffs = vec![PuiseuxSeries::zero(); deg * pk + 1];
        for (m, c) in self.coeffs.iter().enumerate() {
            coeffs[m * pk] = c.clone();
        }
        Poly::from_coeffs(coeffs)
    }
}
