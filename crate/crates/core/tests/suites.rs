//! The verification suites must pass wholesale at desk scale and replay
//! byte-identically under a fixed seed.

use mlv_core::tower::{run_all_suites, TowerContext, VerifyConfig};

#[test]
fn all_suites_pass_at_level_two() {
    let ctx = TowerContext::new(2);
    let cfg = VerifyConfig::new(2);
    let records = run_all_suites(&ctx, &cfg, &mut || 0);
    assert!(records.len() > 300, "expected a few hundred checks");
    let failed: Vec<_> = records.iter().filter(|r| !r.status.passed()).collect();
    for f in &failed {
        eprintln!(
            "FAIL {}/{}: expected {}, computed {} ({:?})",
            f.suite, f.check_id, f.expected, f.computed, f.status
        );
    }
    assert!(failed.is_empty());
}

#[test]
fn suite_runs_are_deterministic_under_a_seed() {
    let run = || {
        let ctx = TowerContext::new(2);
        let cfg = VerifyConfig { levels: 1, samples: 8, ..VerifyConfig::new(1) };
        run_all_suites(&ctx, &cfg, &mut || 0)
            .into_iter()
            .map(|r| (r.suite, r.check_id, r.inputs, r.expected, r.computed, r.status))
            .collect::<Vec<_>>()
    };
    let a = run();
    let b = run();
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(b.iter()) {
        assert_eq!(x, y);
    }
}
