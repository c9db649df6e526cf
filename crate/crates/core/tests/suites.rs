use std::time::Instant;

use dioph_core::suites::{run_suite, Suite, DEFAULT_CASES};

#[test]
fn every_suite_passes_with_seed_zero() {
    for suite in Suite::ALL {
        let start = Instant::now();
        let report = run_suite(suite, 0, DEFAULT_CASES).unwrap();
        println!("{} ({:.2?})", report.summary(), start.elapsed());
        assert!(report.passed(), "{:?}", report.examples);
        assert!(report.skipped < DEFAULT_CASES / 2, "{}", report.summary());
    }
}

#[test]
fn other_seeds_pass_too() {
    for seed in [1, 2, 0xdead_beef] {
        for suite in Suite::ALL {
            let report = run_suite(suite, seed, 100).unwrap();
            assert!(report.passed(), "{} {:?}", report.summary(), report.examples);
        }
    }
}
