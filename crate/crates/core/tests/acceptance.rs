//! Acceptance suite: one test per criterion, exact values throughout.
//! Everything here is either a pinned hand-derived value, a structural
//! formula check, or a seeded property over the construction.

use std::rc::Rc;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use mlv_core::exactmath::{FieldTower, Rat, ValOrInf};
use mlv_core::polyring::{eval_valuation_at_stream, CertifiedVal, Poly};
use mlv_core::series::PuiseuxSeries;
use mlv_core::tower::{
    build_chain, delta, in_s, limit_augmentation, mu_value, rho_value, run_suite,
    stability_value, stream_s_m, vs_value, Center, CenterSpec, IndexPair, Suite, TowerContext,
    VerifyConfig,
};
use mlv_core::valuations::{chain_validate, is_minimal_witness, CenterEval, FiniteCenter, Valuation};
use mlv_core::Caps;

const SEED: u64 = 7;

fn exact(num: i64, den: i64) -> CertifiedVal {
    CertifiedVal::exact_rat(Rat::frac(num, den))
}

fn grid_exponent(rng: &mut ChaCha8Rng) -> Rat {
    // (1/8) Z ∩ [-2, 2]
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

fn sample_monic(rng: &mut ChaCha8Rng, tw: &FieldTower, deg: usize) -> Poly {
    let mut coeffs: Vec<PuiseuxSeries> = (0..deg).map(|_| sample_series(rng, tw, 2)).collect();
    coeffs.push(PuiseuxSeries::one(tw));
    Poly::from_coeffs(coeffs)
}

fn sample_poly_upto(rng: &mut ChaCha8Rng, tw: &FieldTower, maxdeg: usize) -> Poly {
    let deg = (rng.next_u32() as usize) % (maxdeg + 1);
    let mut coeffs: Vec<PuiseuxSeries> = (0..deg).map(|_| sample_series(rng, tw, 2)).collect();
    let mut lead = sample_series(rng, tw, 2);
    if lead.is_exact_zero() {
        lead = PuiseuxSeries::one(tw);
    }
    coeffs.push(lead);
    Poly::from_coeffs(coeffs)
}

/// Criterion 1: `v(s_n) = -1/p^(n+1)` and `delta(n,i) = n - 1/p^(i+1)`
/// for `n <= 3`, `i <= 8`, exact, with `delta` order-preserving.
fn formulas_for(p: u32) {
    let ctx = TowerContext::new(p);
    for n in 0..=3u32 {
        // first exponent of the row stream
        let mut st = stream_s_m(ctx.clone(), n);
        let (e, _) = st.next_term().unwrap();
        assert_eq!(e, -Rat::inv_pow(p, n + 1), "v(s_{n}) via stream");
        // and the exact valuation of the row element by the norm route
        let row = Center::new(ctx.clone(), CenterSpec::Row { m: n });
        let tw = ctx.tower();
        let x = Poly::x(&tw.borrow());
        assert_eq!(
            row.value_of(&x, &Caps::default()).unwrap(),
            CertifiedVal::exact_rat(-Rat::inv_pow(p, n + 1)),
            "v(s_{n}) via norm"
        );
    }
    let mut grid = Vec::new();
    for n in 0..=3u32 {
        for i in n as u64..=8 {
            let idx = IndexPair::new(n, i);
            if in_s(p, idx) {
                let d = delta(p, idx).unwrap();
                assert_eq!(
                    d,
                    Rat::int(n as i64) - Rat::inv_pow(p, i as u32 + 1),
                    "delta({n},{i})"
                );
                grid.push((idx, d));
            }
        }
    }
    for a in &grid {
        for b in &grid {
            assert_eq!(a.0 < b.0, a.1 < b.1, "delta order-preserving");
        }
    }
}

#[test]
fn criterion_01_formula_reproduction() {
    formulas_for(2);
    println!("criterion 1: PASS - v(s_n) and delta(n,i) formulas exact for p=2, n<=3, i<=8");
}

/// Criterion 2: `phi_1 = AS(x) - t^(-1) = x^2 + x + t^(-1)` for p = 2.
#[test]
fn criterion_02_phi_one_reproduction() {
    let ctx = TowerContext::new(2);
    let phi1 = ctx.phi_n(1).unwrap();
    let tw = ctx.tower();
    let expect = Poly::as_iterate_minus_tinv(1, &tw.borrow());
    assert_eq!(phi1, expect);
    assert_eq!(phi1.render(&tw.borrow()), "x^2 + x + t^(-1)");
    println!("criterion 2: PASS - phi_1 = x^2 + x + t^(-1) exactly");
}

/// Criterion 3: the truncation path certifies `v(Irr_K(s_n)(s_n)) > 10`
/// without ever claiming infinity; the symbolic-root path reports infinity.
#[test]
fn criterion_03_root_certification() {
    let ctx = TowerContext::new(2);
    for n in 0..=2u32 {
        let tw = ctx.tower();
        let irr = Poly::as_iterate_minus_tinv(n + 1, &tw.borrow());
        let row = Center::new(ctx.clone(), CenterSpec::Row { m: n });
        // truncation-only mode: a certified lower bound beyond 10
        let bound_caps = Caps::default().truncation_only();
        match row.value_of(&irr, &bound_caps).unwrap() {
            CertifiedVal::LowerBound(b) => assert!(b > Rat::int(10), "bound {b} for n={n}"),
            other => panic!("expected a lower bound, got {other:?}"),
        }
        // symbolic path: exact infinity
        assert_eq!(
            row.value_of(&irr, &Caps::default()).unwrap(),
            CertifiedVal::Exact(ValOrInf::Infinity)
        );
        // the stream evaluator agrees through minimal-polynomial division
        let minpoly = row.minpoly().unwrap().unwrap();
        let mut st = row.stream();
        let got = {
            let tw = tw.borrow();
            eval_valuation_at_stream(&irr, &mut st, Some(&minpoly), &tw, &Caps::default()).unwrap()
        };
        assert_eq!(got, CertifiedVal::Exact(ValOrInf::Infinity));
    }
    println!("criterion 3: PASS - root bounds exceed 10; symbolic path reports inf");
}

/// Criterion 4: `v_(n,i)(x - s_(m,j)) = min(delta(n,i), delta(m,j))` on the
/// full S-grid with `n,m <= levels`, `i,j <= 6` - zero tolerance.
fn vivs_grid_for(p: u32, levels: u32) {
    let ctx = TowerContext::new(p);
    let cfg = VerifyConfig { levels, ..VerifyConfig::new(levels) };
    let records = run_suite(&ctx, Suite::Vivs, &cfg, &mut || 0);
    assert!(!records.is_empty());
    for r in &records {
        assert!(
            r.status.passed(),
            "{}: expected {}, computed {} ({:?})",
            r.check_id,
            r.expected,
            r.computed,
            r.status
        );
    }
}

#[test]
fn criterion_04_vivs_grid() {
    vivs_grid_for(2, 2);
    println!("criterion 4: PASS - depth-zero values on the S-grid match min(delta, delta)");
}

/// Criterion 5: 50 seeded random monic `g` per row with `deg g <= p^n`,
/// coefficient supports in `(1/8)Z ∩ [-2,2]`: a stability witness exists
/// with index `i <= 12` and the rho-value equals `v_s(g)` exactly.
fn stability_for(p: u32, max_row: u32) {
    let ctx = TowerContext::new(p);
    let caps = Caps::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for n in 0..=max_row {
        for sample in 0..50 {
            let g = {
                let tw = ctx.tower();
                let tw = tw.borrow();
                let deg = 1 + (rng.next_u32() as usize) % ctx.row_degree(n);
                sample_monic(&mut rng, &tw, deg)
            };
            let (v, witness) = stability_value(&ctx, n, &g, &caps)
                .unwrap_or_else(|e| panic!("row {n} sample {sample}: {e}"));
            assert!(witness.i <= 12, "witness {witness} exceeds i = 12");
            // recompute both sides independently
            assert_eq!(vs_value(&ctx, &g, &caps).unwrap(), CertifiedVal::exact_rat(v.clone()));
            assert_eq!(
                rho_value(&ctx, witness.n, witness.i, &g, &caps).unwrap(),
                CertifiedVal::exact_rat(v)
            );
        }
    }
}

#[test]
fn criterion_05_stability() {
    stability_for(2, 2);
    println!("criterion 5: PASS - 50 seeded monic g per row are C_n-stable with witness i <= 12");
}

/// Criterion 6: `rho_(n,i)(phi_(n+1)) < gamma_(n+1)` exactly for all
/// `i <= 10`, `n <= 2`; for p=2, n=0 the sequence is `-1/2^i`.
#[test]
fn criterion_06_instability() {
    let ctx = TowerContext::new(2);
    let caps = Caps::default();
    for n in 0..=2u32 {
        let phi = ctx.phi_n(n + 1).unwrap();
        let gamma = ctx.gamma_n(n + 1, &caps).unwrap();
        for i in n as u64..=10 {
            if !in_s(2, IndexPair::new(n, i)) {
                continue;
            }
            let v = rho_value(&ctx, n, i, &phi, &caps).unwrap();
            let r = v.as_exact_rat().unwrap_or_else(|| panic!("rho({n},{i}) not exact"));
            assert!(r < &gamma, "rho({n},{i})(phi_{}) = {r} >= {gamma}", n + 1);
            if n == 0 {
                assert_eq!(*r, -Rat::inv_pow(2, i as u32), "closed form at i={i}");
            }
        }
    }
    println!("criterion 6: PASS - rho_(n,i)(phi_(n+1)) < gamma_(n+1); row 0 follows -1/2^i");
}

/// Criterion 7 (central): the limit augmentation over `C_n` equals
/// `mu_(n+1)` exactly on 30 seeded random `f`, `deg f <= p^(n+2) - 1`,
/// for `n <= 1`.
#[test]
fn criterion_07_limit_augmentation_identity() {
    let ctx = TowerContext::new(2);
    let caps = Caps::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for n in 0..=1u32 {
        let lim = limit_augmentation(&ctx, n, &caps).unwrap();
        for sample in 0..30 {
            let f = {
                let tw = ctx.tower();
                let tw = tw.borrow();
                sample_poly_upto(&mut rng, &tw, ctx.row_degree(n + 2) - 1)
            };
            if f.is_zero() {
                continue;
            }
            let via_family = lim.value(&f, &caps).unwrap();
            let via_mu = mu_value(&ctx, n + 1, &f, &caps).unwrap();
            assert_eq!(via_family, via_mu, "n={n} sample={sample}");
            assert!(via_family.is_exact());
        }
    }
    println!("criterion 7: PASS - [C_n; phi_(n+1), gamma_(n+1)] = mu_(n+1) on 30 samples per level");
}

/// Criterion 8: `mu_n(phi_n) = gamma_n = v_s(phi_n)` exactly for `n <= 2`.
#[test]
fn criterion_08_mlv_condition() {
    let ctx = TowerContext::new(2);
    let caps = Caps::default();
    for n in 1..=2u32 {
        let phi = ctx.phi_n(n).unwrap();
        let gamma = ctx.gamma_n(n, &caps).unwrap();
        assert_eq!(mu_value(&ctx, n, &phi, &caps).unwrap(), CertifiedVal::exact_rat(gamma.clone()));
        assert_eq!(vs_value(&ctx, &phi, &caps).unwrap(), CertifiedVal::exact_rat(gamma));
    }
    // and the recorded chain validates end to end
    let (chain, realizers) = build_chain(&ctx, 2, &caps).unwrap();
    let checks = chain_validate(&chain, &realizers, &caps).unwrap();
    assert!(checks.iter().all(|c| c.ok), "{checks:?}");
    println!("criterion 8: PASS - mu_n(phi_n) = gamma_n = v_s(phi_n) for n <= 2; chain validates");
}

/// Criterion 9: `mu_n(f) = v_s(f)` exactly for 30 seeded random `f` with
/// `deg f < p^n`, for `n <= 3`.
#[test]
fn criterion_09_stable_limit() {
    let ctx = TowerContext::new(2);
    let caps = Caps::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for n in 1..=3u32 {
        for sample in 0..30 {
            let f = {
                let tw = ctx.tower();
                let tw = tw.borrow();
                sample_poly_upto(&mut rng, &tw, ctx.row_degree(n) - 1)
            };
            if f.is_zero() {
                continue;
            }
            let via_mu = mu_value(&ctx, n, &f, &caps).unwrap();
            let via_vs = vs_value(&ctx, &f, &caps).unwrap();
            assert_eq!(via_mu, via_vs, "n={n} sample={sample}");
            assert!(via_mu.is_exact());
        }
    }
    println!("criterion 9: PASS - mu_n(f) = v_s(f) below degree p^n for n <= 3");
}

/// Criterion 10: `gamma_1 = 3/4` for p=2 by two independent routes.
#[test]
fn criterion_10_gamma_one_two_routes() {
    let ctx = TowerContext::new(2);
    let caps = Caps::default();
    let phi1 = ctx.phi_n(1).unwrap();
    // oracle route
    assert_eq!(vs_value(&ctx, &phi1, &caps).unwrap(), exact(3, 4));
    // depth-zero route at (s_(1,1), delta(1,1))
    assert_eq!(mu_value(&ctx, 1, &phi1, &caps).unwrap(), exact(3, 4));
    println!("criterion 10: PASS - gamma_1 = 3/4 by oracle and depth-zero routes");
}

/// Criterion 11: `krasner_delta(n) = n - 1` for n = 1, 2, 3.
#[test]
fn criterion_11_krasner_values() {
    let ctx = TowerContext::new(2);
    for n in 1..=3u32 {
        assert_eq!(ctx.krasner_delta(n).unwrap(), Rat::int(n as i64 - 1));
    }
    println!("criterion 11: PASS - krasner_delta(n) = n-1 for n = 1, 2, 3");
}

/// Criterion 12: `psi_n` is additive for n <= 3; for p=2, n=2 it equals
/// `y^4 + (t+1) y^2 + (t^3+t^2+t) y`, cross-checked against a brute-force
/// product over an exhaustively enumerated kernel.
#[test]
fn criterion_12_psi_structure() {
    let ctx = TowerContext::new(2);
    for n in 1..=3u32 {
        // the constructor rejects non-additive products internally
        let psi = ctx.psi_polynomial(n).unwrap();
        assert_eq!(psi.degree(), Some(ctx.row_degree(n)));
        for (k, c) in psi.coeffs().iter().enumerate() {
            if c.is_exact_zero() {
                continue;
            }
            let mut k = k.max(1);
            while k % 2 == 0 {
                k /= 2;
            }
            assert_eq!(k, 1, "non p-power monomial in psi_{n}");
        }
    }
    // independent brute-force product over Ker(AS^2), enumerated exhaustively
    let psi2 = ctx.psi_polynomial(2).unwrap();
    ctx.kernel_basis(2); // make sure the F_4 level exists
    let tw = ctx.tower();
    let tw = tw.borrow();
    let kernel: Vec<_> = tw
        .elements(1)
        .filter(|x| tw.artin_schreier_iter(x, 2).is_zero())
        .collect();
    assert_eq!(kernel.len(), 4);
    let mut brute = Poly::one(&tw);
    for l in &kernel {
        // c_l = AS(l) + t * l
        let c = PuiseuxSeries::from_terms(
            vec![
                (Rat::zero(), tw.artin_schreier(l)),
                (Rat::int(1), l.clone()),
            ],
            ValOrInf::Infinity,
            &tw,
        );
        brute = brute.mul(&Poly::x_minus(&c, &tw), &tw);
    }
    assert_eq!(psi2, brute);
    assert_eq!(
        psi2.render(&tw),
        "x^4 + (1 + t^(1))*x^2 + (t^(1) + t^(2) + t^(3))*x"
    );
    println!("criterion 12: PASS - psi_n additive for n <= 3; psi_2 matches the brute-force product");
}

/// Criterion 13: negative controls. A corrupted `gamma_1` fails the MLV
/// suite; a non-minimal `(g, mu)` pair produces a counterexample.
#[test]
fn criterion_13_negative_controls() {
    let ctx = TowerContext::new(2);
    let cfg = VerifyConfig {
        gamma_override: Some((1, Rat::frac(1, 2))),
        ..VerifyConfig::new(2)
    };
    let records = run_suite(&ctx, Suite::Mlv, &cfg, &mut || 0);
    assert!(
        records.iter().any(|r| !r.status.passed()),
        "corrupted gamma must fail the mlv suite"
    );
    // and the honest configuration passes
    let records = run_suite(&ctx, Suite::Mlv, &VerifyConfig::new(2), &mut || 0);
    assert!(records.iter().all(|r| r.status.passed()));

    // non-minimal pair: mu = w(t^(-1/2), -1/4), g = x, f = x + t^(-1/2)
    let tower = ctx.tower();
    let point = PuiseuxSeries::monomial(Rat::frac(-1, 2), tower.borrow().one());
    let mu = Valuation::depth_zero(
        Rc::new(FiniteCenter::new(tower.clone(), point.clone())),
        Rat::frac(-1, 4),
    );
    let g = Poly::x(&tower.borrow());
    let f = Poly::x(&tower.borrow()).add(&Poly::constant(point), &tower.borrow());
    let report = is_minimal_witness(&mu, &g, &[f], &Caps::default()).unwrap();
    let (_, direct, expansion) = report.counterexample.expect("counterexample expected");
    assert_eq!((direct, expansion), (Rat::frac(-1, 4), Rat::frac(-1, 2)));
    println!("criterion 13: PASS - corrupted gamma fails; non-minimal pair is certified");
}

/// Criterion 14: p = 3 smoke - criteria 1, 4 and 5 at `n <= 1`.
#[test]
fn criterion_14_p3_smoke() {
    formulas_for(3);
    vivs_grid_for(3, 1);
    stability_for(3, 1);
    println!("criterion 14: PASS - p=3 smoke for formulas, vivs grid, and stability");
}
