use alloc::vec;
use alloc::vec::Vec;

use crate::exactmath::{binom_mod_p, FieldTower, FqElem, Rat};
use crate::polyring::Poly;
use crate::series::PuiseuxSeries;
use crate::Error;

/// Exact element of the Artin-Schreier tower field `K(s_0, ..., s_{N-1})`,
/// in normal form on the monomial basis `σ^α = Π σ_m^(α_m)`, `0 <= α_m < p`,
/// where `σ_m` stands for the row series `s_m` and the defining relations are
///
/// `σ_0^p = σ_0 + t^(-1)`, and `σ_m^p = σ_m + σ_(m-1)` for `m >= 1`.
///
/// Coefficients are exact finite Puiseux series; the basis has `p^N`
/// monomials indexed in mixed radix `p`. Elements of this field are exactly
/// the truncations of the master series and everything polynomial in them,
/// so evaluation of `K[x]`-polynomials at truncations is exact symbolic
/// arithmetic here, including a decidable zero test.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TowerElem {
    rows: usize,
    coeffs: Vec<PuiseuxSeries>,
}

fn dim(p: u32, rows: usize) -> usize {
    (p as usize).pow(rows as u32)
}

fn digits(p: u32, rows: usize, mut idx: usize) -> Vec<u32> {
    let mut d = vec![0u32; rows];
    for slot in d.iter_mut() {
        *slot = (idx % p as usize) as u32;
        idx /= p as usize;
    }
    d
}

fn index_of(p: u32, d: &[u32]) -> usize {
    d.iter().rev().fold(0usize, |acc, &v| acc * p as usize + v as usize)
}

impl TowerElem {
    pub fn zero(p: u32, rows: usize) -> TowerElem {
        TowerElem { rows, coeffs: vec![PuiseuxSeries::zero(); dim(p, rows)] }
    }

    pub fn constant(p: u32, rows: usize, c: PuiseuxSeries) -> TowerElem {
        assert!(c.is_exact(), "tower elements carry exact coefficients");
        let mut e = TowerElem::zero(p, rows);
        e.coeffs[0] = c;
        e
    }

    /// The generator `σ_m` viewed in `rows >= m + 1` rows.
    pub fn sigma(p: u32, rows: usize, m: usize, tw: &FieldTower) -> TowerElem {
        assert!(m < rows);
        let mut e = TowerElem::zero(p, rows);
        e.coeffs[(p as usize).pow(m as u32)] = PuiseuxSeries::one(tw);
        e
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn coeffs(&self) -> &[PuiseuxSeries] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_exact_zero())
    }

    /// `Some(c)` when the normal form is the constant `c` (lies in `K`).
    pub fn as_constant(&self) -> Option<&PuiseuxSeries> {
        if self.coeffs[1..].iter().all(|c| c.is_exact_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// View in a deeper tower (same digits, higher rows).
    pub fn promote(&self, p: u32, rows: usize) -> TowerElem {
        assert!(rows >= self.rows);
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(dim(p, rows), PuiseuxSeries::zero());
        TowerElem { rows, coeffs }
    }

    pub fn add(&self, other: &TowerElem, tw: &FieldTower) -> TowerElem {
        let rows = self.rows.max(other.rows);
        let mut a = self.promote(tw.p(), rows);
        let b = other.promote(tw.p(), rows);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x = x.add(y, tw);
        }
        a
    }

    pub fn neg(&self, tw: &FieldTower) -> TowerElem {
        TowerElem {
            rows: self.rows,
            coeffs: self.coeffs.iter().map(|c| c.neg(tw)).collect(),
        }
    }

    pub fn sub(&self, other: &TowerElem, tw: &FieldTower) -> TowerElem {
        self.add(&other.neg(tw), tw)
    }

    pub fn scalar_mul(&self, s: &PuiseuxSeries, tw: &FieldTower) -> TowerElem {
        TowerElem {
            rows: self.rows,
            coeffs: self.coeffs.iter().map(|c| c.mul(s, tw)).collect(),
        }
    }

    pub fn mul(&self, other: &TowerElem, tw: &FieldTower) -> TowerElem {
        let p = tw.p();
        let rows = self.rows.max(other.rows);
        let a = self.promote(p, rows);
        let b = other.promote(p, rows);
        let mut acc = TowerElem::zero(p, rows);
        for (ia, ca) in a.coeffs.iter().enumerate() {
            if ca.is_exact_zero() {
                continue;
            }
            for (ib, cb) in b.coeffs.iter().enumerate() {
                if cb.is_exact_zero() {
                    continue;
                }
                let mut exps = digits(p, rows, ia);
                for (e, d) in exps.iter_mut().zip(digits(p, rows, ib)) {
                    *e += d;
                }
                reduce_into(p, exps, ca.mul(cb, tw), &mut acc, tw);
            }
        }
        acc
    }

    /// Frobenius `x -> x^p`: coefficient-wise Frobenius and `σ^α -> σ^(pα)`,
    /// then reduction. Exact because `p`-th power is additive here.
    pub fn frobenius(&self, tw: &FieldTower) -> TowerElem {
        let p = tw.p();
        let mut acc = TowerElem::zero(p, self.rows);
        for (ia, ca) in self.coeffs.iter().enumerate() {
            if ca.is_exact_zero() {
                continue;
            }
            let exps: Vec<u32> = digits(p, self.rows, ia).iter().map(|d| d * p).collect();
            reduce_into(p, exps, ca.frobenius_pow(1, tw), &mut acc, tw);
        }
        acc
    }

    /// The Artin-Schreier operator `x -> x^p - x`.
    pub fn artin_schreier(&self, tw: &FieldTower) -> TowerElem {
        self.frobenius(tw).sub(self, tw)
    }

    /// Galois conjugate determined by the shift vector
    /// `σ_m -> σ_m + e_m` with `e_m` in the algebraic closure of `F_p`.
    pub fn conjugate(&self, shifts: &[FqElem], tw: &FieldTower) -> TowerElem {
        assert_eq!(shifts.len(), self.rows);
        let p = tw.p();
        let mut acc = TowerElem::zero(p, self.rows);
        for (ia, ca) in self.coeffs.iter().enumerate() {
            if ca.is_exact_zero() {
                continue;
            }
            let alpha = digits(p, self.rows, ia);
            // expand Π_m (σ_m + e_m)^(α_m); all exponents stay < p
            let mut terms: Vec<(Vec<u32>, FqElem)> = vec![(vec![0; self.rows], tw.one())];
            for (m, &am) in alpha.iter().enumerate() {
                let mut next = Vec::with_capacity(terms.len() * (am as usize + 1));
                for (beta, factor) in &terms {
                    for bm in 0..=am {
                        let binom = binom_mod_p(am as u64, bm as u64, p).unwrap();
                        if binom == 0 {
                            continue;
                        }
                        let epow = tw.pow(&shifts[m], (am - bm) as u64);
                        let f = tw.mul(factor, &tw.scalar_mul(binom, &epow));
                        if f.is_zero() {
                            continue;
                        }
                        let mut b = beta.clone();
                        b[m] = bm;
                        next.push((b, f));
                    }
                }
                terms = next;
            }
            for (beta, factor) in terms {
                let idx = index_of(p, &beta);
                let contrib = ca.scalar_mul(&factor, tw);
                acc.coeffs[idx] = acc.coeffs[idx].add(&contrib, tw);
            }
        }
        acc
    }

    /// Field norm down to `K`: the product over all conjugates. The result
    /// must land in `K`; anything else is an internal inconsistency.
    pub fn norm(&self, conj_shifts: &[Vec<FqElem>], tw: &FieldTower) -> Result<PuiseuxSeries, Error> {
        let mut acc = TowerElem::constant(tw.p(), self.rows, PuiseuxSeries::one(tw));
        for shifts in conj_shifts {
            acc = acc.mul(&self.conjugate(shifts, tw), tw);
        }
        match acc.as_constant() {
            Some(c) => Ok(c.clone()),
            None => Err(Error::Internal(alloc::string::String::from(
                "norm did not land in the base field",
            ))),
        }
    }

    /// Relative norm one level down the tower: the product over the
    /// conjugates fixing `K(s_0, ..., s_(rows-2))`, which shift only the top
    /// generator, `σ_(rows-1) -> σ_(rows-1) + l` for `l` in `F_p`. The
    /// result must be free of the top generator.
    pub fn relative_norm(&self, tw: &FieldTower) -> Result<TowerElem, Error> {
        let p = tw.p();
        let n = self.rows;
        assert!(n >= 1, "relative norm needs at least one row");
        let mut acc = self.clone();
        for c in 1..p {
            let mut shifts = vec![tw.zero(); n];
            shifts[n - 1] = tw.from_int(c as i64);
            acc = acc.mul(&self.conjugate(&shifts, tw), tw);
        }
        // the product is Galois-invariant for the top step: the top digit
        // must vanish everywhere
        let block = dim(p, n - 1);
        if acc.coeffs[block..].iter().any(|c| !c.is_exact_zero()) {
            return Err(Error::Internal(alloc::string::String::from(
                "relative norm kept the top generator",
            )));
        }
        Ok(TowerElem { rows: n - 1, coeffs: acc.coeffs[..block].to_vec() })
    }

    /// Horner evaluation of a polynomial at this element.
    pub fn eval_poly(f: &Poly, at: &TowerElem, tw: &FieldTower) -> TowerElem {
        let p = tw.p();
        let mut acc = TowerElem::zero(p, at.rows);
        for c in f.coeffs().iter().rev() {
            acc = acc.mul(at, tw);
            acc = acc.add(&TowerElem::constant(p, at.rows, c.clone()), tw);
        }
        acc
    }
}

/// Rewrites a raw monomial (exponents possibly >= p) into the normal form,
/// accumulating into `acc`. Uses `σ_m^p = σ_m + σ_(m-1)` (with `σ_(-1)`
/// read as `t^(-1)`), always at the highest offending position, which makes
/// the rewriting terminate.
fn reduce_into(p: u32, exps: Vec<u32>, coeff: PuiseuxSeries, acc: &mut TowerElem, tw: &FieldTower) {
    let mut work: Vec<(Vec<u32>, PuiseuxSeries)> = vec![(exps, coeff)];
    while let Some((e, c)) = work.pop() {
        if c.is_exact_zero() {
            continue;
        }
        match (0..e.len()).rev().find(|&m| e[m] >= p) {
            None => {
                let idx = index_of(p, &e);
                acc.coeffs[idx] = acc.coeffs[idx].add(&c, tw);
            }
            Some(m) => {
                let mut e1 = e.clone();
                e1[m] -= p - 1;
                work.push((e1, c.clone()));
                let mut e2 = e;
                e2[m] -= p;
                if m >= 1 {
                    e2[m - 1] += 1;
                    work.push((e2, c));
                } else {
                    let tinv = PuiseuxSeries::monomial(Rat::int(-1), tw.one());
                    work.push((e2, c.mul(&tinv, tw)));
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tw2() -> FieldTower {
        FieldTower::new(2)
    }

    fn tinv(tw: &FieldTower) -> PuiseuxSeries {
        PuiseuxSeries::monomial(Rat::int(-1), tw.one())
    }

    #[test]
    fn defining_relation_row_zero() {
        let tw = tw2();
        let s0 = TowerElem::sigma(2, 1, 0, &tw);
        let sq = s0.mul(&s0, &tw);
        let expect = s0.add(&TowerElem::constant(2, 1, tinv(&tw)), &tw);
        assert_eq!(sq, expect);
        // AS(s0) = t^(-1)
        assert_eq!(
            s0.artin_schreier(&tw),
            TowerElem::constant(2, 1, tinv(&tw))
        );
    }

    #[test]
    fn defining_relation_row_one() {
        let tw = tw2();
        let s1 = TowerElem::sigma(2, 2, 1, &tw);
        let s0 = TowerElem::sigma(2, 2, 0, &tw);
        assert_eq!(s1.artin_schreier(&tw), s0);
        // frobenius matches squaring
        assert_eq!(s1.frobenius(&tw), s1.mul(&s1, &tw));
    }

    #[test]
    fn deep_power_reduction_terminates_and_matches_iterated_as() {
        // AS^2(s_1) = AS(s_0) = t^(-1)
        let tw = tw2();
        let s1 = TowerElem::sigma(2, 2, 1, &tw);
        let as2 = s1.artin_schreier(&tw).artin_schreier(&tw);
        assert_eq!(as2, TowerElem::constant(2, 2, tinv(&tw)));
    }

    #[test]
    fn conjugation_respects_the_relations() {
        let tw = tw2();
        // sigma_0 -> sigma_0 + 1 must still satisfy AS(x) = t^(-1)
        let s0 = TowerElem::sigma(2, 1, 0, &tw);
        let conj = s0.conjugate(&[tw.one()], &tw);
        assert_eq!(
            conj.artin_schreier(&tw),
            TowerElem::constant(2, 1, tinv(&tw))
        );
    }

    #[test]
    fn norm_of_the_abhyankar_root() {
        let tw = tw2();
        let s0 = TowerElem::sigma(2, 1, 0, &tw);
        // Galois group of K(s_0)/K: sigma_0 -> sigma_0 + l, l in F_2
        let shifts = vec![vec![tw.zero()], vec![tw.one()]];
        let n = s0.norm(&shifts, &tw).unwrap();
        assert_eq!(n, tinv(&tw));
    }

    #[test]
    fn eval_poly_finds_symbolic_roots() {
        let tw = tw2();
        let phi1 = Poly::as_iterate_minus_tinv(1, &tw);
        let s0 = TowerElem::sigma(2, 1, 0, &tw);
        assert!(TowerElem::eval_poly(&phi1, &s0, &tw).is_zero());
        // and x^4 + x at s_1 reduces to AS^2(s_1) + ... sanity: nonzero
        let x = Poly::x(&tw);
        let s1 = TowerElem::sigma(2, 2, 1, &tw);
        assert!(!TowerElem::eval_poly(&x, &s1, &tw).is_zero());
    }

    #[test]
    fn p3_relations() {
        let tw = FieldTower::new(3);
        let s0 = TowerElem::sigma(3, 1, 0, &tw);
        assert_eq!(
            s0.artin_schreier(&tw),
            TowerElem::constant(3, 1, tinv(&tw))
        );
        let s1 = TowerElem::sigma(3, 2, 1, &tw);
        assert_eq!(s1.artin_schreier(&tw), TowerElem::sigma(3, 2, 0, &tw));
    }
}
