//! One test per acceptance criterion. Each prints a single PASS/FAIL line.

use std::process::Command;
use std::time::{Duration, Instant};

use dioph_core::arith::RealOracle;
use dioph_core::minimal::{
    brute_force_minimal_points, enumerate_minimal_points, estimate_exponents, EnumerateOptions,
    MinimalPointRecord,
};
use dioph_core::suites::{run_suite, Suite};
use serde_json::Value;

const TABLE_BUDGET: Duration = Duration::from_secs(1);
const THM11_BUDGET: Duration = Duration::from_secs(10);
const BRACKET_BUDGET: Duration = Duration::from_secs(2);
const ORACLE_BUDGET: Duration = Duration::from_secs(30);
const EXPONENT_BUDGET: Duration = Duration::from_secs(60);
const SUITES_BUDGET: Duration = Duration::from_secs(60);

const ORACLE_X_MAX: u64 = 200;
const EXPONENT_X_MAX: u64 = 1_000_000;
const EXPONENT_TOLERANCE: f64 = 0.02;
const EXPONENT_WINDOW: usize = 8;
const SUITE_CASES: usize = 500;
const SUITE_SEED: u64 = 0;
const FIBONACCI_X_MAX: u64 = 100_000_000;
const FIBONACCI_TOLERANCE: f64 = 0.05;

fn report(id: u32, name: &str, ok: bool, detail: String) -> bool {
    println!("{} criterion {id} ({name}): {detail}", if ok { "PASS" } else { "FAIL" });
    ok
}

fn dioph(args: &[&str]) -> (i32, String, Duration) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_dioph"))
        .args(args)
        .output()
        .expect("run dioph");
    let elapsed = start.elapsed();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        elapsed,
    )
}

fn json_lines(text: &str) -> Vec<Value> {
    text.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn criterion_1_table() {
    let new = [
        "0.3370", "0.2807", "0.2444", "0.2152", "0.1919", "0.1753", "0.1587", "0.1483", "0.1357",
        "0.1286",
    ];
    let laurent = [
        (5, "0.3333"),
        (7, "0.2500"),
        (9, "0.2000"),
        (11, "0.1666"),
        (13, "0.1428"),
    ];
    let (code, out, elapsed) = dioph(&["bounds", "table", "--digits", "4"]);
    let rows = json_lines(&out);
    let got_new: Vec<&str> = rows.iter().map(|r| r["new"].as_str().unwrap()).collect();
    let laurent_ok = laurent.iter().all(|(n, v)| {
        rows.iter()
            .any(|r| r["n"] == *n && r["laurent"].as_str() == Some(*v))
    });
    let ok = code == 0 && got_new == new && laurent_ok && elapsed < TABLE_BUDGET;
    assert!(report(
        1,
        "table",
        ok,
        format!("new={got_new:?} laurent_ok={laurent_ok} time={elapsed:.2?}")
    ));
}

#[test]
fn criterion_2_large_n_conditions() {
    let (code, out, elapsed) = dioph(&["bounds", "verify-thm11", "--from", "12", "--to", "899"]);
    let rows = json_lines(&out);
    let passing = rows.iter().filter(|r| r["pass"] == true).count();
    let covered: Vec<u64> = rows.iter().map(|r| r["n"].as_u64().unwrap()).collect();
    let ok = code == 0
        && rows.len() == 888
        && passing == 888
        && covered == (12..=899).collect::<Vec<u64>>()
        && elapsed < THM11_BUDGET;
    assert!(report(
        2,
        "large-n conditions",
        ok,
        format!("{passing}/888 certified, time={elapsed:.2?}")
    ));
}

#[test]
fn criterion_3_bracketing() {
    let (code, out, elapsed) = dioph(&["bounds", "bracket", "--from", "2", "--to", "100"]);
    let rows = json_lines(&out);
    let passing = rows.iter().filter(|r| r["pass"] == true).count();
    let ok = code == 0 && rows.len() == 99 && passing == 99 && elapsed < BRACKET_BUDGET;
    assert!(report(
        3,
        "bracketing",
        ok,
        format!("{passing}/99 values of m, time={elapsed:.2?}")
    ));
}

fn coords(records: &[MinimalPointRecord]) -> Vec<String> {
    records.iter().map(|r| r.x.to_string()).collect()
}

#[test]
fn criterion_4_oracle_equivalence() {
    let start = Instant::now();
    let opts = EnumerateOptions {
        allow_degenerate: true,
        ..EnumerateOptions::default()
    };
    let mut mismatches = Vec::new();
    let mut total = 0;
    for lit in ["alg:-2,0,1:1,2", "alg:-2,0,0,1:1,2", "alg:-1,-1,1:1,2"] {
        let xi: RealOracle = lit.parse().unwrap();
        for n in 1..=3 {
            let fast = enumerate_minimal_points(&xi, n, ORACLE_X_MAX, &opts).unwrap();
            let slow = brute_force_minimal_points(&xi, n, ORACLE_X_MAX, opts.max_bits).unwrap();
            total += fast.len();
            // identical points, flags and certified enclosures
            if fast != slow {
                mismatches.push(format!("{lit} n={n}: {:?} vs {:?}", coords(&fast), coords(&slow)));
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = mismatches.is_empty() && elapsed < ORACLE_BUDGET;
    assert!(report(
        4,
        "oracle equivalence",
        ok,
        format!("9 cases, {total} records, mismatches={mismatches:?}, time={elapsed:.2?}")
    ));
}

#[test]
fn criterion_5_exponent_sanity() {
    let start = Instant::now();
    let xi: RealOracle = "alg:-2,0,1:1,2".parse().unwrap();
    let records = enumerate_minimal_points(&xi, 1, EXPONENT_X_MAX, &EnumerateOptions::default()).unwrap();
    let est = estimate_exponents(&records, EXPONENT_WINDOW).unwrap();
    let hat = est.lambda_hat_secant.as_ref().unwrap().to_f64();
    let plain = est.lambda_secant.as_ref().unwrap().to_f64();
    let elapsed = start.elapsed();
    let ok = (hat - 1.0).abs() < EXPONENT_TOLERANCE
        && (plain - 1.0).abs() < EXPONENT_TOLERANCE
        && elapsed < EXPONENT_BUDGET;
    assert!(report(
        5,
        "exponent sanity",
        ok,
        format!(
            "{} records, lambda_hat~{hat:.5} lambda~{plain:.5} (raw window min {:.5}), time={elapsed:.2?}",
            records.len(),
            est.lambda_hat_min.to_f64(),
        )
    ));
}

#[test]
fn criterion_6_structural_suites() {
    let start = Instant::now();
    let wanted = [
        Suite::Profile,
        Suite::Corollary,
        Suite::Composition,
        Suite::Duality,
        Suite::Schmidt,
        Suite::Avoiding,
        Suite::Construct,
    ];
    let mut lines = Vec::new();
    let mut ok = true;
    for s in wanted {
        let r = run_suite(s, SUITE_SEED, SUITE_CASES).unwrap();
        ok &= r.passed();
        lines.push(format!("{}:{}/{}", s, r.cases - r.failures, r.cases));
    }
    let elapsed = start.elapsed();
    ok &= elapsed < SUITES_BUDGET;
    assert!(report(
        6,
        "structural suites",
        ok,
        format!("{} time={elapsed:.2?}", lines.join(" "))
    ));
}

/// `[0; 1, 2, 1, 1, 2, ...]` with partial quotients read from the Fibonacci word, to 200 digits.
fn fibonacci_word_number() -> String {
    use num_bigint::BigInt;
    let (mut prev, mut word) = (vec![1u8], vec![1u8, 2]);
    while word.len() < 600 {
        let next = [word.clone(), prev].concat();
        prev = word;
        word = next;
    }
    let (mut p, mut p_prev) = (BigInt::from(0), BigInt::from(1));
    let (mut q, mut q_prev) = (BigInt::from(1), BigInt::from(0));
    for &a in &word {
        let a = BigInt::from(a);
        (p, p_prev) = (&a * &p + &p_prev, p);
        (q, q_prev) = (&a * &q + &q_prev, q);
    }
    // q grows like 1.8^k, so 600 quotients pin far more than 200 digits
    let digits = (p * BigInt::from(10).pow(200)) / q;
    format!("0.{digits:0>200}")
}

#[test]
fn criterion_7_fibonacci_word() {
    let start = Instant::now();
    let xi = RealOracle::decimal(&fibonacci_word_number(), None).unwrap();
    let records = enumerate_minimal_points(&xi, 2, FIBONACCI_X_MAX, &EnumerateOptions::default()).unwrap();
    let est = estimate_exponents(&records, EXPONENT_WINDOW).unwrap();
    let hat = est.lambda_hat_secant.as_ref().unwrap().to_f64();
    let target = (5f64.sqrt() - 1.0) / 2.0;
    let ok = (hat - target).abs() < FIBONACCI_TOLERANCE;
    assert!(report(
        7,
        "fibonacci word",
        ok,
        format!(
            "{} records, lambda_hat~{hat:.5} (target {target:.5}), time={:.2?}",
            records.len(),
            start.elapsed()
        )
    ));
}

#[test]
fn cli_examples_and_exit_codes() {
    let (code, out, _) = dioph(&["minimal", "run", "--xi", "alg:-2,0,1:1,2", "--n", "1", "--xmax", "51"]);
    let rows = json_lines(&out);
    assert_eq!(code, 0);
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[4]["x"], serde_json::json!([29, 41]));
    let (code, out, _) = dioph(&["proptest", "--suite", "heights", "--seed", "0", "--emit", "pretty"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("PASS suite=heights seed=0 cases=500"));
    assert_eq!(dioph(&["minimal", "run", "--n", "1"]).0, 1);
    assert_eq!(dioph(&["no-such-command"]).0, 1);
    assert_eq!(dioph(&["--help"]).0, 0);
    // shard count does not change a single byte
    let args = ["minimal", "run", "--xi", "alg:-2,0,0,1:1,2", "--n", "2", "--xmax", "100000"];
    let one = dioph(&args).1;
    let four = dioph(&[&args[..], &["--shards", "4"]].concat()).1;
    assert_eq!(one, four);
}
