use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::exactmath::{FieldTower, Rat, ValOrInf};
use crate::polyring::{CertifiedVal, Poly};
use crate::series::PuiseuxSeries;
use crate::tower::centers::{Center, CenterSpec};
use crate::tower::context::TowerContext;
use crate::tower::oracle::vs_value;
use crate::tower::rho::{limit_augmentation, mu, mu_value, rho_value, stability_value};
use crate::tower::sindex::{delta, in_s, row_indices, IndexPair};
use crate::tower::towerfield::TowerElem;
use crate::valuations::{chain_validate, CenterEval, ChainStep, MLVChain, StepKind, Valuation};
use crate::{Caps, Error};

/// Verification suites keyed to the construction's supporting lemmas.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Suite {
    /// Depth-zero values on differences of truncations follow the index
    /// order: `v_(n,i)(x - s_(m,j)) = min(δ(n,i), δ(m,j))`.
    Vivs,
    /// The family values are pointwise nondecreasing and bounded by `v_s`.
    Monotone,
    /// Low-degree monic polynomials are family-stable with early witnesses.
    Stability,
    /// `ρ_(n,i)(φ_(n+1)) < γ_(n+1)` for all sampled `i`.
    Unstable,
    /// The limit augmentation over `C_n` equals `μ_(n+1)`.
    LimitEquality,
    /// `μ_n(φ_n) = γ_n = v_s(φ_n)` and the recorded chain validates.
    Mlv,
    /// `μ_n(f) = v_s(f)` for `deg f < p^n`.
    StableLimit,
    /// Degree-bounded elements stay away from the limit truncations:
    /// `v(s_(n,n) - a) < n - 1` for sampled lower-degree `a`.
    BallDegreeEvidence,
    /// `v_s` certifies finite values on a corpus of low-degree polynomials.
    TranscendenceEvidence,
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::Vivs => "vivs",
            Suite::Monotone => "monotone",
            Suite::Stability => "stability",
            Suite::Unstable => "unstable",
            Suite::LimitEquality => "limit-equality",
            Suite::Mlv => "mlv",
            Suite::StableLimit => "stable-limit",
            Suite::BallDegreeEvidence => "ball-degree-evidence",
            Suite::TranscendenceEvidence => "transcendence-evidence",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Some(match name {
            "vivs" => Suite::Vivs,
            "monotone" => Suite::Monotone,
            "stability" => Suite::Stability,
            "unstable" => Suite::Unstable,
            "limit-equality" => Suite::LimitEquality,
            "mlv" => Suite::Mlv,
            "stable-limit" => Suite::StableLimit,
            "ball-degree-evidence" => Suite::BallDegreeEvidence,
            "transcendence-evidence" => Suite::TranscendenceEvidence,
            _ => return None,
        })
    }

    pub fn all() -> &'static [Suite] {
        &[
            Suite::Vivs,
            Suite::Monotone,
            Suite::Stability,
            Suite::Unstable,
            Suite::LimitEquality,
            Suite::Mlv,
            Suite::StableLimit,
            Suite::BallDegreeEvidence,
            Suite::TranscendenceEvidence,
        ]
    }
}

pub fn suite_names() -> Vec<&'static str> {
    Suite::all().iter().map(|s| s.name()).collect()
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub levels: u32,
    pub samples: usize,
    pub seed: u64,
    pub caps: Caps,
    /// Negative-control hook: overrides `γ_n` in the recorded chain.
    pub gamma_override: Option<(u32, Rat)>,
}

impl VerifyConfig {
    pub fn new(levels: u32) -> VerifyConfig {
        VerifyConfig {
            levels,
            samples: 30,
            seed: 7,
            caps: Caps::default(),
            gamma_override: None,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CheckStatus {
    Pass,
    Fail,
    Error(String),
}

impl CheckStatus {
    pub fn passed(&self) -> bool {
        *self == CheckStatus::Pass
    }

    pub fn label(&self) -> &str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Error(_) => "error",
        }
    }
}

/// One verification check: inputs, expected and computed renderings, verdict
/// and wall time. Records merge deterministically because suites emit them
/// in construction order.
#[derive(Clone, Debug)]
pub struct CheckRecord {
    pub suite: String,
    pub check_id: String,
    pub inputs: String,
    pub expected: String,
    pub computed: String,
    pub status: CheckStatus,
    pub millis: u64,
}

struct Recorder<'a> {
    suite: &'static str,
    clock: &'a mut dyn FnMut() -> u64,
    out: Vec<CheckRecord>,
}

impl<'a> Recorder<'a> {
    fn new(suite: &'static str, clock: &'a mut dyn FnMut() -> u64) -> Recorder<'a> {
        Recorder { suite, clock, out: Vec::new() }
    }

    fn check(
        &mut self,
        check_id: String,
        inputs: String,
        body: impl FnOnce() -> Result<(String, String, bool), Error>,
    ) {
        let start = (self.clock)();
        let (expected, computed, status) = match body() {
            Ok((expected, computed, ok)) => {
                (expected, computed, if ok { CheckStatus::Pass } else { CheckStatus::Fail })
            }
            Err(e) => (String::new(), String::new(), CheckStatus::Error(format!("{e}"))),
        };
        let millis = (self.clock)().saturating_sub(start);
        self.out.push(CheckRecord {
            suite: String::from(self.suite),
            check_id,
            inputs,
            expected,
            computed,
            status,
            millis,
        });
    }
}

fn grid_exponent(rng: &mut ChaCha8Rng) -> Rat {
    // the sampling grid (1/8) Z ∩ [-2, 2]
    let num = (rng.next_u32() % 33) as i64 - 16;
    Rat::frac(num, 8)
}

fn sample_series(rng: &mut ChaCha8Rng, tw: &FieldTower, max_terms: u32) -> PuiseuxSeries {
    let k = rng.next_u32() % (max_terms + 1);
    let terms = (0..k)
        .map(|_| {
            let c = 1 + rng.next_u32() % (tw.p() - 1).max(1);
            (grid_exponent(rng), tw.from_int(c as i64))
        })
        .collect();
    PuiseuxSeries::from_terms(terms, ValOrInf::Infinity, tw)
}

fn sample_poly(rng: &mut ChaCha8Rng, tw: &FieldTower, deg: usize, monic: bool) -> Poly {
    let mut coeffs: Vec<PuiseuxSeries> = (0..deg).map(|_| sample_series(rng, tw, 2)).collect();
    if monic {
        coeffs.push(PuiseuxSeries::one(tw));
        return Poly::from_coeffs(coeffs);
    }
    let mut lead = sample_series(rng, tw, 2);
    if lead.is_exact_zero() {
        lead = PuiseuxSeries::one(tw);
    }
    coeffs.push(lead);
    Poly::from_coeffs(coeffs)
}

/// Nonzero sample polynomial of degree at most `maxdeg`.
fn sample_poly_upto(rng: &mut ChaCha8Rng, tw: &FieldTower, maxdeg: usize) -> Poly {
    let deg = (rng.next_u32() as usize) % (maxdeg + 1);
    sample_poly(rng, tw, deg, false)
}

/// Builds the recorded MacLane-Vaquie chain for `n <= levels` together with
/// its realizing valuations `μ_n = ρ_(n,n)`. Step 0 is the depth-zero node
/// `[v; x, δ(0,0)]`; every later step is a limit augmentation.
pub fn build_chain(
    ctx: &Rc<TowerContext>,
    levels: u32,
    caps: &Caps,
) -> Result<(MLVChain, Vec<Valuation>), Error> {
    let mut steps = Vec::new();
    let mut realizers = Vec::new();
    let tw = ctx.tower();
    let phi0 = Poly::x(&tw.borrow());
    steps.push(ChainStep {
        kind: StepKind::Ordinary,
        phi: phi0,
        gamma: ctx.delta(IndexPair::new(0, 0))?,
        degree: 1,
    });
    realizers.push(mu(ctx, 0)?);
    for n in 1..=levels {
        steps.push(ChainStep {
            kind: StepKind::Limit,
            phi: ctx.phi_n(n)?,
            gamma: ctx.gamma_n(n, caps)?,
            degree: ctx.row_degree(n),
        });
        realizers.push(mu(ctx, n)?);
    }
    Ok((MLVChain { steps }, realizers))
}

pub fn run_suite(
    ctx: &Rc<TowerContext>,
    suite: Suite,
    cfg: &VerifyConfig,
    clock: &mut dyn FnMut() -> u64,
) -> Vec<CheckRecord> {
    let mut rec = Recorder::new(suite.name(), clock);
    match suite {
        Suite::Vivs => vivs_suite(ctx, cfg, &mut rec),
        Suite::Monotone => monotone_suite(ctx, cfg, &mut rec),
        Suite::Stability => stability_suite(ctx, cfg, &mut rec),
        Suite::Unstable => unstable_suite(ctx, cfg, &mut rec),
        Suite::LimitEquality => limit_equality_suite(ctx, cfg, &mut rec),
        Suite::Mlv => mlv_suite(ctx, cfg, &mut rec),
        Suite::StableLimit => stable_limit_suite(ctx, cfg, &mut rec),
        Suite::BallDegreeEvidence => ball_degree_suite(ctx, cfg, &mut rec),
        Suite::TranscendenceEvidence => transcendence_suite(ctx, cfg, &mut rec),
    }
    rec.out
}

pub fn run_all_suites(
    ctx: &Rc<TowerContext>,
    cfg: &VerifyConfig,
    clock: &mut dyn FnMut() -> u64,
) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for suite in Suite::all() {
        out.extend(run_suite(ctx, *suite, cfg, clock));
    }
    out
}

fn s_grid(ctx: &Rc<TowerContext>, max_n: u32, max_i: u64) -> Vec<IndexPair> {
    let mut grid = Vec::new();
    for n in 0..=max_n {
        for i in n as u64..=max_i {
            let idx = IndexPair::new(n, i);
            if in_s(ctx.p(), idx) {
                grid.push(idx);
            }
        }
    }
    grid
}

fn vivs_suite(ctx: &Rc<TowerContext>, cfg: &VerifyConfig, rec: &mut Recorder) {
    let grid = s_grid(ctx, cfg.levels.min(2), 6);
    for &a in &grid {
        for &b in &grid {
            let id = format!("vivs/v({},{})(x-s({},{}))", a.n, a.i, b.n, b.i);
            let inputs = format!("(n,i)={a}, (m,j)={b}");
            let ctx = ctx.clone();
            rec.check(id, inputs, move || {
                let da = delta(ctx.p(), a)?;
                let db = delta(ctx.p(), b)?;
                let expected = da.clone().min(db);
                // depth-zero value on x - s_(m,j) through the structural
                // difference: min(v(s_(n,i) - s_(m,j)), delta(n,i))
                let ca = Center::new(ctx.clone(), CenterSpec::Truncation { n: a.n, i: a.i });
                let cb = Center::new(ctx.clone(), CenterSpec::Truncation { n: b.n, i: b.i });
                let vdiff = ca
                    .structural_diff(&cb)
                    .ok_or_else(|| Error::Internal(String::from("no structural diff")))?;
                let computed = match vdiff {
                    ValOrInf::Finite(v) => v.min(da),
                    ValOrInf::Infinity => da,
                };
                Ok((format!("{expected}"), format!("{computed}"), computed == expected))
            });
        }
    }
    // secondary route: the full Hasse machinery on literal differences,
    // available when the subtrahend lies in K (row-zero truncations)
    let caps = cfg.caps.clone();
    for &a in &grid {
        for j in 0..=4u64 {
            let b = IndexPair::new(0, j);
            let id = format!("vivs/poly/v({},{})(x-s(0,{j}))", a.n, a.i);
            let inputs = format!("(n,i)={a}, (m,j)={b}");
            let ctx = ctx.clone();
            let caps = caps.clone();
            rec.check(id, inputs, move || {
                let da = delta(ctx.p(), a)?;
                let db = delta(ctx.p(), b)?;
                let expected = CertifiedVal::exact_rat(da.min(db));
                let tail = ctx.truncation_tail(0, j)?;
                let f = {
                    let tw = ctx.tower();
                    let tw = tw.borrow();
                    Poly::x_minus(&tail, &tw)
                };
                let computed = rho_value(&ctx, a.n, a.i, &f, &caps)?;
                Ok((expected.wire(), computed.wire(), computed == expected))
            });
        }
    }
}

fn monotone_suite(ctx: &Rc<TowerContext>, cfg: &VerifyConfig, rec: &mut Recorder) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let chain: Vec<IndexPair> = {
        let mut v = Vec::new();
        for n in 0..=cfg.levels {
            v.extend(row_indices(ctx.p(), n).take(3));
        }
        v
    };
    for s in 0..cfg.samples {
        let f = {
            let tw = ctx.tower();
            let tw = tw.borrow();
            sample_poly_upto(&mut rng, &tw, 3)
        };
        if f.is_zero() {
            continue;
        }
        let id = format!("monotone/sample-{s}");
        let inputs = {
            let tw = ctx.tower();
            let tw = tw.borrow();
            f.render(&tw)
        };
        let ctx = ctx.clone();
        let caps = cfg.caps.clone();
        let chain = chain.clone();
        rec.check(id, inputs, move || {
            let vstar = match vs_value(&ctx, &f, &caps)? {
                CertifiedVal::Exact(ValOrInf::Finite(r)) => r,
                other => {
                    return Ok((String::from("exact oracle value"), other.wire(), false));
                }
            };
            let mut prev: Option<Rat> = None;
            let mut ok = true;
            let mut rendered = Vec::new();
            for idx in &chain {
                let v = rho_value(&ctx, idx.n, idx.i, &f, &caps)?;
                let v = match v.as_exact_rat() {
                    Some(r) => r.clone(),
                    None => {
                        ok = false;
                        break;
                    }
                };
                if let Some(p) = &prev {
                    ok &= p <= &v;
                }
                ok &= v <= vstar;
                rendered.push(format!("{v}"));
                prev = Some(v);
            }
            Ok((
                format!("nondecreasing chain <= {vstar}"),
                rendered.join(" <= "),
                ok,
            ))
        });
    }
}

fn stability_suite(ctx: &Rc<TowerContext>, cfg: &VerifyConfig, rec: &mut Recorder) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for n in 0..=cfg.levels {
        for s in 0..cfg.samples {
            let g = {
                let tw = ctx.tower();
                let tw = tw.borrow();
                let deg = 1 + (rng.next_u32() as usize) % ctx.row_degree(n).max(1);
                sample_poly(&mut rng, &tw, deg, true)
            };
            let id = format!("stability/n{n}/sample-{s}");
            let inputs = {
                let tw = ctx.tower();
                let tw = tw.borrow();
                format!("row {n}, g = {}", g.render(&tw))
            };
            let ctx = ctx.clone();
            let caps = cfg.caps.clone();
            rec.check(id, inputs, move || {
                let (v, witness) = stability_value(&ctx, n, &g, &caps)?;
                // recompute both sides of the witness equality independently
                let vstar = vs_value(&ctx, &g, &caps)?;
                let at_witness = rho_value(&ctx, witness.n, witness.i, &g, &caps)?;
                let ok = vstar == CertifiedVal::exact_rat(v.clone())
                    && at_witness == CertifiedVal::exact_rat(v.clone())
                    && witness.i <= 12;
                Ok((
                    format!("witness with i <= 12 and value v_s(g) = {v}"),
                    format!("value {v} at witness {witness}"),
                    ok,
                ))
            });
        }
    }
}

fn unstable_suite(ctx: &Rc<TowerContext>, cfg: &VerifyConfig, rec: &mut Recorder) {
    for n in 0..=cfg.levels {
        let id_base = format!("unstable/row{n}");
        let ctx_phi = ctx.clone();
        let caps = cfg.caps.clone();
        let phi = match ctx_phi.phi_n(n + 1) {
            Ok(p) => p,
            Err(e) => {
                rec.check(id_base, String::new(), move || Err(e));
                continue;
            }
        };
        let gamma = match ctx.gamma_n(n + 1, &caps) {
            Ok(g) => g,
            Err(e) => {
                rec.check(format!("unstable/row{n}/gamma"), String::new(), move || Err(e));
                continue;
            }
        };
        for idx in row_indices(ctx.p(), n) {
            if idx.i > 10 {
                break;
            }
            let id = format!("unstable/rho({},{})(phi_{})", idx.n, idx.i, n + 1);
            let inputs = format!("gamma_{} = {gamma}", n + 1);
            let ctx = ctx.clone();
            let caps = caps.clone();
            let phi = phi.clone();
            let gamma = gamma.clone();
            rec.check(id, inputs, move || {
                let v = rho_value(&ctx, idx.n, idx.i, &phi, &caps)?;
                let Some(r) = v.as_exact_rat() else {
                    return Ok((String::from("exact value"), v.wire(), false));
                };
                let mut ok = r < &gamma;
                let mut expected = format!("< {gamma}");
                if ctx.p() == 2 && idx.n == 0 {
                    let closed = -Rat::inv_pow(2, idx.i as u32);
                    expected = format!("-1/2^{} and < {gamma}", idx.i);
                    ok &= *r == closed;
                }
                Ok((expected, format!("{r}"), ok))
            });
        }
    }
}

fn limit_equality_suite(ctx: &Rc<TowerContext>, cfg: &VerifyConfig, rec: &mut Recorder) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for n in 0..=cfg.levels.min(1) {
        let lim = match limit_augmentation(ctx, n, &cfg.caps) {
            Ok(v) => v,
            Err(e) => {
                rec.check(format!("limit-equality/n{n}"), String::new(), move || Err(e));
                continue;
            }
        };
        let maxdeg = ctx.row_degree(n + 2) - 1;
        for s in 0..cfg.samples {
            let f = {
                let tw = ctx.tower();
                let tw = tw.borrow();
                sample_poly_upto(&mut rng, &tw, maxdeg)
            };
            if f.is_zero() {
                continue;
            }
            let id = format!("limit-equality/n{n}/sample-{s}");
            let inputs = {
                let tw = ctx.tower();
                let tw = tw.borrow();
                format!("[C_{n}; phi_{}, gamma_{}] vs mu_{} on {}", n + 1, n + 1, n + 1, f.render(&tw))
            };
            let ctx = ctx.clone();
            let caps = cfg.caps.clone();
            let lim = &lim;
            rec.check(id, inputs, move || {
                let via_family = lim.value(&f, &caps)?;
                let via_mu = mu_value(&ctx, n + 1, &f, &caps)?;
                Ok((via_mu.wire(), via_family.wire(), via_family == via_mu))
            });
        }
    }
}

fn mlv_suite(ctx: &Rc<TowerContext>, cfg: &VerifyConfig, rec: &mut Recorder) {
    for n in 1..=cfg.levels {
        let id = format!("mlv/mu_{n}(phi_{n})=gamma_{n}=v_s(phi_{n})");
        let ctx2 = ctx.clone();
        let caps = cfg.caps.clone();
        let over = cfg.gamma_override.clone();
        rec.check(id, format!("level {n}"), move || {
            let phi = ctx2.phi_n(n)?;
            let gamma = match &over {
                Some((m, g)) if *m == n => g.clone(),
                _ => ctx2.gamma_n(n, &caps)?,
            };
            let via_mu = mu_value(&ctx2, n, &phi, &caps)?;
            let via_vs = vs_value(&ctx2, &phi, &caps)?;
            let expect = CertifiedVal::exact_rat(gamma.clone());
            let ok = via_mu == expect && via_vs == expect;
            Ok((
                format!("{gamma}"),
                format!("mu: {}, v_s: {}", via_mu.wire(), via_vs.wire()),
                ok,
            ))
        });
    }
    let ctx2 = ctx.clone();
    let caps = cfg.caps.clone();
    let over = cfg.gamma_override.clone();
    let levels = cfg.levels;
    rec.check(String::from("mlv/chain-validate"), format!("levels {levels}"), move || {
        let (mut chain, realizers) = build_chain(&ctx2, levels, &caps)?;
        if let Some((m, g)) = over {
            if let Some(step) = chain.steps.get_mut(m as usize) {
                step.gamma = g;
            }
        }
        let checks = chain_validate(&chain, &realizers, &caps)?;
        let bad: Vec<&crate::valuations::ChainCheck> =
            checks.iter().filter(|c| !c.ok).collect();
        Ok((
            String::from("all chain checks pass"),
            if bad.is_empty() {
                format!("{} checks pass", checks.len())
            } else {
                format!("{} failing: {}", bad.len(), bad[0].detail)
            },
            bad.is_empty(),
        ))
    });
}

fn stable_limit_suite(ctx: &Rc<TowerContext>, cfg: &VerifyConfig, rec: &mut Recorder) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let top = (cfg.levels + 1).min(3);
    for n in 1..=top {
        for s in 0..cfg.samples {
            let f = {
                let tw = ctx.tower();
                let tw = tw.borrow();
                sample_poly_upto(&mut rng, &tw, ctx.row_degree(n) - 1)
            };
            if f.is_zero() {
                continue;
            }
            let id = format!("stable-limit/n{n}/sample-{s}");
            let inputs = format!("deg f = {:?} < {}", f.degree(), ctx.row_degree(n));
            let ctx = ctx.clone();
            let caps = cfg.caps.clone();
            rec.check(id, inputs, move || {
                let via_mu = mu_value(&ctx, n, &f, &caps)?;
                let via_vs = vs_value(&ctx, &f, &caps)?;
                Ok((via_vs.wire(), via_mu.wire(), via_mu == via_vs && via_mu.is_exact()))
            });
        }
    }
}

fn ball_degree_suite(ctx: &Rc<TowerContext>, cfg: &VerifyConfig, rec: &mut Recorder) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for n in 1..=cfg.levels.max(1) {
        let radius = Rat::int(n as i64 - 1);
        // finite series of degree one over K
        for s in 0..cfg.samples {
            let a = {
                let tw = ctx.tower();
                let tw = tw.borrow();
                sample_series(&mut rng, &tw, 4)
            };
            let id = format!("ball-degree/n{n}/finite-{s}");
            let inputs = {
                let tw = ctx.tower();
                let tw = tw.borrow();
                format!("a = {}", a.render(&tw))
            };
            let ctx = ctx.clone();
            let radius = radius.clone();
            rec.check(id, inputs, move || {
                let snn = ctx.limit_truncation_elem(n);
                let diff = {
                    let tw = ctx.tower();
                    let tw = tw.borrow();
                    snn.sub(&TowerElem::constant(ctx.p(), n as usize, a.clone()), &tw)
                };
                let v = ctx.elem_valuation(&diff)?;
                let ok = match &v {
                    ValOrInf::Finite(r) => r < &radius,
                    ValOrInf::Infinity => false,
                };
                Ok((format!("< {radius}"), format!("{v}"), ok))
            });
        }
        // family members of strictly smaller row
        for m in 0..n {
            for idx in row_indices(ctx.p(), m).take(4) {
                let id = format!("ball-degree/n{n}/family-({},{})", idx.n, idx.i);
                let ctx = ctx.clone();
                let radius = radius.clone();
                rec.check(id, format!("s({},{})", idx.n, idx.i), move || {
                    let snn = ctx.truncation_elem(n, n as u64)?;
                    let other = ctx.truncation_elem(idx.n, idx.i)?;
                    let tw = ctx.tower();
                    let diff = {
                        let tw = tw.borrow();
                        snn.sub(&other, &tw)
                    };
                    let v = ctx.elem_valuation(&diff)?;
                    let ok = match &v {
                        ValOrInf::Finite(r) => r < &radius,
                        ValOrInf::Infinity => false,
                    };
                    Ok((format!("< {radius} (no counterexample)"), format!("{v}"), ok))
                });
            }
        }
    }
}

fn transcendence_suite(ctx: &Rc<TowerContext>, cfg: &VerifyConfig, rec: &mut Recorder) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for s in 0..cfg.samples {
        let f = {
            let tw = ctx.tower();
            let tw = tw.borrow();
            sample_poly_upto(&mut rng, &tw, 4)
        };
        if f.is_zero() {
            continue;
        }
        let id = format!("transcendence/sample-{s}");
        let inputs = {
            let tw = ctx.tower();
            let tw = tw.borrow();
            f.render(&tw)
        };
        let ctx = ctx.clone();
        let caps = cfg.caps.clone();
        rec.check(id, inputs, move || {
            let v = vs_value(&ctx, &f, &caps)?;
            let ok = matches!(v, CertifiedVal::Exact(ValOrInf::Finite(_)));
            Ok((String::from("certified finite value"), v.wire(), ok))
        });
    }
}

