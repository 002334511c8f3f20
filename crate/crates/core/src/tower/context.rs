use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec::Vec;

use core::cell::RefCell;

use crate::exactmath::{FieldTower, FqElem, Rat, ValOrInf};
use crate::polyring::Poly;
use crate::series::PuiseuxSeries;
use crate::tower::sindex::{delta, row_indices, support_coeff, IndexPair};
use crate::tower::towerfield::TowerElem;
use crate::valuations::SharedTower;
use crate::{Caps, Error};

/// Shared context for the whole construction over one prime `p`: the field
/// tower, the Artin-Schreier kernel ladder, and caches for the conjugation
/// data, the additive polynomials `Ψ_n`, the limit key polynomials `φ_n` and
/// their values `γ_n`. All caches are reproducible from `p` alone.
pub struct TowerContext {
    p: u32,
    tower: SharedTower,
    /// θ_1, θ_2, ...: AS(θ_(k+1)) = θ_k, θ_1 = 1.
    kernel: RefCell<Vec<FqElem>>,
    psi: RefCell<Vec<Option<Poly>>>,
    phi: RefCell<Vec<Option<Poly>>>,
    gamma: RefCell<Vec<Option<Rat>>>,
}

impl TowerContext {
    pub fn new(p: u32) -> Rc<TowerContext> {
        Rc::new(TowerContext {
            p,
            tower: Rc::new(RefCell::new(FieldTower::new(p))),
            kernel: RefCell::new(Vec::new()),
            psi: RefCell::new(Vec::new()),
            phi: RefCell::new(Vec::new()),
            gamma: RefCell::new(Vec::new()),
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn tower(&self) -> SharedTower {
        self.tower.clone()
    }

    pub fn delta(&self, idx: IndexPair) -> Result<Rat, Error> {
        delta(self.p, idx)
    }

    /// `deg_K` of the truncations in row `n`, i.e. `p^n`.
    pub fn row_degree(&self, n: u32) -> usize {
        (self.p as usize).pow(n)
    }

    /// The kernel ladder `θ_1, ..., θ_k` with `AS(θ_(j+1)) = θ_j`; built by
    /// solving the Artin-Schreier equation at the top level and extending
    /// the tower with the modulus `x^p - x - θ` exactly when unsolvable.
    pub fn kernel_basis(&self, k: usize) -> Vec<FqElem> {
        self.ensure_kernel(k);
        self.kernel.borrow()[..k].to_vec()
    }

    fn ensure_kernel(&self, k: usize) {
        let mut kernel = self.kernel.borrow_mut();
        if kernel.is_empty() {
            let one = self.tower.borrow().one();
            kernel.push(one);
        }
        while kernel.len() < k {
            let theta = kernel.last().unwrap().clone();
            let mut tw = self.tower.borrow_mut();
            let top = tw.top_level();
            let next = match tw.as_solve(top, &theta) {
                Some(x) => x,
                None => tw.extend(&theta),
            };
            kernel.push(next);
        }
    }

    /// All `p^n` elements of `Ker(AS^n)`, as the `F_p`-span of the ladder,
    /// in deterministic mixed-radix order over the ladder coefficients.
    pub fn kernel_elements(&self, n: usize) -> Vec<FqElem> {
        let basis = self.kernel_basis(n);
        let tw = self.tower.borrow();
        let total = (self.p as usize).pow(n as u32);
        (0..total)
            .map(|mut idx| {
                let mut acc = tw.zero();
                for theta in basis.iter() {
                    let d = (idx % self.p as usize) as u32;
                    idx /= self.p as usize;
                    if d != 0 {
                        acc = tw.add(&acc, &tw.scalar_mul(d, theta));
                    }
                }
                acc
            })
            .collect()
    }

    /// Conjugation shift vectors for `rows = n`: for each `l` in
    /// `Ker(AS^n)`, the vector `(e_0, ..., e_(n-1))` with
    /// `e_m = AS^(n-1-m)(l)`, defining the automorphism `σ_m -> σ_m + e_m`.
    pub fn conjugation_shifts(&self, n: usize) -> Vec<Vec<FqElem>> {
        let elems = self.kernel_elements(n);
        let tw = self.tower.borrow();
        elems
            .iter()
            .map(|l| {
                (0..n)
                    .map(|m| tw.artin_schreier_iter(l, (n - 1 - m) as u32))
                    .collect()
            })
            .collect()
    }

    /// The additive-shift constants `c_l = Σ_m t^m AS^(n-1-m)(l)` over all
    /// kernel elements: the differences between the conjugates of the limit
    /// truncation `s_(n,n)` and itself.
    pub fn conjugate_offsets(&self, n: usize) -> Vec<PuiseuxSeries> {
        let shifts = self.conjugation_shifts(n);
        let tw = self.tower.borrow();
        shifts
            .iter()
            .map(|shifts| {
                let terms = shifts
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| !e.is_zero())
                    .map(|(m, e)| (Rat::int(m as i64), e.clone()))
                    .collect();
                PuiseuxSeries::from_terms(terms, ValOrInf::Infinity, &tw)
            })
            .collect()
    }

    /// Krasner constant of the limit truncation `s_(n,n)`: the largest
    /// valuation of a difference to a proper conjugate, read off the
    /// conjugate offsets.
    pub fn krasner_delta(&self, n: u32) -> Result<Rat, Error> {
        if n == 0 {
            return Err(Error::Precondition(String::from("krasner_delta needs n >= 1")));
        }
        let offsets = self.conjugate_offsets(n as usize);
        offsets
            .iter()
            .skip(1) // offset 0 belongs to the identity
            .map(|c| {
                c.leading()
                    .map(|(e, _)| e.clone())
                    .ok_or_else(|| Error::Internal(String::from("zero offset for a nonidentity conjugate")))
            })
            .try_fold(None::<Rat>, |acc, v| {
                let v = v?;
                Ok(Some(match acc {
                    Some(a) => a.max(v),
                    None => v,
                }))
            })?
            .ok_or_else(|| Error::Internal(String::from("no nonidentity conjugates")))
    }

    /// `Ψ_n(y) = Π_l (y - c_l)`, the Galois-orbit product over the kernel.
    /// Being a product over an additive group, the result must be an
    /// additive polynomial (only `y^(p^k)` monomials); anything else
    /// indicates a kernel-ladder bug and is reported as an internal error.
    pub fn psi_polynomial(&self, n: u32) -> Result<Poly, Error> {
        if n == 0 {
            return Err(Error::Precondition(String::from("psi needs n >= 1")));
        }
        if let Some(Some(p)) = self.psi.borrow().get(n as usize) {
            return Ok(p.clone());
        }
        let offsets = self.conjugate_offsets(n as usize);
        let tw = self.tower.borrow();
        let mut acc = Poly::one(&tw);
        for c in &offsets {
            let factor = Poly::x_minus(c, &tw);
            acc = acc.mul(&factor, &tw);
        }
        for (k, coeff) in acc.coeffs().iter().enumerate() {
            let is_p_power = k > 0 && {
                let mut k = k;
                while k % self.p as usize == 0 {
                    k /= self.p as usize;
                }
                k == 1
            };
            if !coeff.is_exact_zero() && !is_p_power {
                return Err(Error::Internal(format!(
                    "psi_{n} has a non-additive monomial y^{k}"
                )));
            }
        }
        drop(tw);
        let mut cache = self.psi.borrow_mut();
        if cache.len() <= n as usize {
            cache.resize(n as usize + 1, None);
        }
        cache[n as usize] = Some(acc.clone());
        Ok(acc)
    }

    /// The limit truncation `s_(n,n) = Σ_(m<n) t^m s_m` as a tower element.
    pub fn limit_truncation_elem(&self, n: u32) -> TowerElem {
        let tw = self.tower.borrow();
        let mut acc = TowerElem::zero(self.p, n as usize);
        for m in 0..n as usize {
            let tm = PuiseuxSeries::monomial(Rat::int(m as i64), tw.one());
            let s = TowerElem::sigma(self.p, n as usize, m, &tw).scalar_mul(&tm, &tw);
            acc = acc.add(&s, &tw);
        }
        acc
    }

    /// The finite tail `t^n Σ_(n<=j<i) C(j,n) t^(-1/p^(j+1))` of `s_(n,i)`.
    pub fn truncation_tail(&self, n: u32, i: u64) -> Result<PuiseuxSeries, Error> {
        let tw = self.tower.borrow();
        let mut terms = Vec::new();
        for idx in row_indices(self.p, n) {
            if idx.i >= i {
                break;
            }
            let c = support_coeff(self.p, idx)?;
            terms.push((self.delta(idx)?, tw.from_int(c as i64)));
        }
        Ok(PuiseuxSeries::from_terms(terms, ValOrInf::Infinity, &tw))
    }

    /// `s_(n,i)` as a tower element: the limit truncation plus its tail.
    pub fn truncation_elem(&self, n: u32, i: u64) -> Result<TowerElem, Error> {
        let tail = self.truncation_tail(n, i)?;
        let tw = self.tower.borrow();
        Ok(self
            .limit_truncation_elem(n)
            .add(&TowerElem::constant(self.p, n as usize, tail), &tw))
    }

    /// Exact valuation of a tower element. The base field is henselian, so
    /// `v` is conjugation-invariant and `v(x) = v(Norm(x)) / p^rows`; the
    /// norm is taken by a chain of relative norms down the tower, one
    /// generator at a time. Infinite exactly for zero.
    pub fn elem_valuation(&self, e: &TowerElem) -> Result<ValOrInf, Error> {
        if e.is_zero() {
            return Ok(ValOrInf::Infinity);
        }
        let degree = self.row_degree(e.rows() as u32);
        let tw = self.tower.borrow();
        let mut cur = e.clone();
        while cur.as_constant().is_none() {
            cur = cur.relative_norm(&tw)?;
        }
        let remaining = self.row_degree(cur.rows() as u32);
        let c = cur.as_constant().expect("constant after norm chain");
        match c.valuation() {
            crate::polyring::CertifiedVal::Exact(ValOrInf::Finite(v)) => Ok(ValOrInf::Finite(
                &v / &Rat::int((degree / remaining) as i64),
            )),
            crate::polyring::CertifiedVal::Exact(ValOrInf::Infinity) => {
                Err(Error::Internal(String::from("zero norm of a nonzero element")))
            }
            _ => Err(Error::Internal(String::from("imprecise tower coefficient"))),
        }
    }

    /// `φ_n = Irr_K(s_(n,n)) = Ψ_n(x) - Ψ_n(s_(n,n))`, with the constant
    /// term computed exactly by symbolic reduction: `Ψ_n(s_(n,n))` must be a
    /// constant normal form (support exhaustion is detected, not assumed).
    pub fn phi_n(&self, n: u32) -> Result<Poly, Error> {
        if n == 0 {
            return Err(Error::Precondition(String::from("phi needs n >= 1")));
        }
        if let Some(Some(p)) = self.phi.borrow().get(n as usize) {
            return Ok(p.clone());
        }
        let psi = self.psi_polynomial(n)?;
        let snn = self.limit_truncation_elem(n);
        let value = self.eval_additive(&psi, &snn);
        let tw = self.tower.borrow();
        let constant = value.as_constant().cloned().ok_or_else(|| {
            Error::Internal(format!("psi_{n}(s_{n},{n}) did not reduce to the base field"))
        })?;
        let phi = psi.sub(&Poly::constant(constant), &tw);
        drop(tw);
        let mut cache = self.phi.borrow_mut();
        if cache.len() <= n as usize {
            cache.resize(n as usize + 1, None);
        }
        cache[n as usize] = Some(phi.clone());
        Ok(phi)
    }

    /// Evaluates an additive polynomial `Σ b_k y^(p^k)` at a tower element
    /// through iterated Frobenius.
    fn eval_additive(&self, psi: &Poly, at: &TowerElem) -> TowerElem {
        let tw = self.tower.borrow();
        let mut acc = TowerElem::zero(self.p, at.rows());
        let mut power = at.clone(); // at^(p^k)
        let mut idx = 1usize; // p^k
        let deg = psi.degree().unwrap_or(0);
        loop {
            let b = psi.coeff(idx);
            if !b.is_exact_zero() {
                acc = acc.add(&power.scalar_mul(&b, &tw), &tw);
            }
            if idx >= deg {
                break;
            }
            power = power.frobenius(&tw);
            idx *= self.p as usize;
        }
        acc
    }

    /// Minimal polynomial of `s_(n,i)` over `K`:
    /// `Ψ_n(x) - Ψ_n(s_(n,i))`, sharing `Ψ_n` with the limit index and
    /// splitting the constant as `Ψ_n(s_(n,n)) + Ψ_n(tail)` by additivity.
    pub fn truncation_minpoly(&self, n: u32, i: u64) -> Result<Poly, Error> {
        if n == 0 {
            // s_(0,i) lies in K; the minimal polynomial is x - s_(0,i)
            let tail = self.truncation_tail(0, i)?;
            let tw = self.tower.borrow();
            return Ok(Poly::x_minus(&tail, &tw));
        }
        let phi = self.phi_n(n)?;
        let psi = self.psi_polynomial(n)?;
        let tail = self.truncation_tail(n, i)?;
        let tw = self.tower.borrow();
        let psi_tail = psi.eval_series(&tail, &tw);
        Ok(phi.sub(&Poly::constant(psi_tail), &tw))
    }

    /// `γ_n = v_s(φ_n)`, cached. Errors if the oracle cannot certify an
    /// exact value within caps.
    pub fn gamma_n(self: &Rc<Self>, n: u32, caps: &Caps) -> Result<Rat, Error> {
        if let Some(Some(g)) = self.gamma.borrow().get(n as usize) {
            return Ok(g.clone());
        }
        let phi = self.phi_n(n)?;
        let v = crate::tower::oracle::vs_value(self, &phi, caps)?;
        let g = match v {
            crate::polyring::CertifiedVal::Exact(ValOrInf::Finite(r)) => r,
            crate::polyring::CertifiedVal::Exact(ValOrInf::Infinity) => {
                return Err(Error::Internal(String::from("gamma_n came out infinite")))
            }
            crate::polyring::CertifiedVal::LowerBound(b) => {
                return Err(Error::Uncertified { bound: b, context: format!("gamma_{n}") })
            }
        };
        let mut cache = self.gamma.borrow_mut();
        if cache.len() <= n as usize {
            cache.resize(n as usize + 1, None);
        }
        cache[n as usize] = Some(g.clone());
        Ok(g)
    }
}
