use dioph_core::arith::RealOracle;
use dioph_core::lattice::IntegerVector;
use dioph_core::minimal::{
    brute_force_minimal_points, build_structure, candidate, check_p, check_staircase,
    construct_c, enumerate_minimal_points, estimate_exponents, EnumerateOptions,
    MinimalPointRecord,
};
use dioph_core::Error;
use num_bigint::BigInt;

fn oracle(s: &str) -> RealOracle {
    s.parse().unwrap()
}

const SQRT2: &str = "alg:-2,0,1:1,2";
const CBRT2: &str = "alg:-2,0,0,1:1,2";
const GOLDEN: &str = "alg:-1,-1,1:1,2";

fn points(records: &[MinimalPointRecord]) -> Vec<Vec<i64>> {
    records
        .iter()
        .map(|r| {
            r.x.coords()
                .iter()
                .map(|c| i64::try_from(c).unwrap())
                .collect()
        })
        .collect()
}

fn degenerate_ok() -> EnumerateOptions {
    EnumerateOptions {
        allow_degenerate: true,
        ..EnumerateOptions::default()
    }
}

/// Plain floating-point record scan, good enough for small heights away from ties.
fn float_records(xi: f64, n: usize, x_max: i64) -> Vec<Vec<i64>> {
    let mut found: Vec<(i64, f64, Vec<i64>)> = Vec::new();
    for x0 in 1..=x_max {
        let x: Vec<i64> = (0..=n)
            .map(|j| (x0 as f64 * xi.powi(j as i32)).round() as i64)
            .collect();
        let norm2: i64 = x.iter().map(|c| c * c).sum();
        if norm2 > x_max * x_max {
            break;
        }
        let l = (0..=n)
            .map(|j| (x0 as f64 * xi.powi(j as i32) - x[j] as f64).abs())
            .fold(0.0, f64::max);
        if l < 0.5 {
            found.push((norm2, l, x));
        }
    }
    found.sort_by_key(|f| f.0);
    let mut best = f64::INFINITY;
    let mut out = Vec::new();
    for (_, l, x) in found {
        if l < best {
            best = l;
            out.push(x);
        }
    }
    out
}

#[test]
fn candidates_round_each_power() {
    let s = oracle(SQRT2);
    let c = |x0: i64, n| candidate(&BigInt::from(x0), &s, n, 4096).unwrap();
    assert_eq!(c(2, 2), IntegerVector::from_i64(&[2, 3, 4]));
    assert_eq!(c(1, 1), IntegerVector::from_i64(&[1, 1]));
    assert_eq!(c(12, 1), IntegerVector::from_i64(&[12, 17]));
}

#[test]
fn sqrt2_sequences() {
    let s = oracle(SQRT2);
    let opts = EnumerateOptions::default();
    let one = enumerate_minimal_points(&s, 1, 51, &opts).unwrap();
    assert_eq!(
        points(&one),
        vec![vec![1, 1], vec![2, 3], vec![5, 7], vec![12, 17], vec![29, 41]]
    );
    // |(29,41)|^2 = 2522 > 50^2
    assert_eq!(enumerate_minimal_points(&s, 1, 50, &opts).unwrap().len(), 4);
    let two = enumerate_minimal_points(&s, 2, 32, &degenerate_ok()).unwrap();
    assert_eq!(
        points(&two),
        vec![vec![1, 1, 2], vec![2, 3, 4], vec![5, 7, 10], vec![12, 17, 24]]
    );
    // |(12,17,24)|^2 = 1009 > 30^2
    assert_eq!(enumerate_minimal_points(&s, 2, 31, &degenerate_ok()).unwrap().len(), 3);
    check_staircase(&one).unwrap();
    check_staircase(&two).unwrap();
}

#[test]
fn degenerate_input_is_refused_by_default() {
    let err = enumerate_minimal_points(&oracle(SQRT2), 2, 30, &EnumerateOptions::default());
    assert!(matches!(err, Err(Error::DegenerateXi { .. })));
}

#[test]
fn small_brute_force_cases() {
    let s = oracle(SQRT2);
    let ten = brute_force_minimal_points(&s, 1, 10, 4096).unwrap();
    assert_eq!(points(&ten), vec![vec![1, 1], vec![2, 3], vec![5, 7]]);
    assert!(brute_force_minimal_points(&s, 1, 0, 4096).unwrap().is_empty());
    assert!(enumerate_minimal_points(&s, 1, 0, &EnumerateOptions::default())
        .unwrap()
        .is_empty());
}

#[test]
fn golden_ratio_matches_float_scan() {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let expected = float_records(phi, 1, 20);
    assert_eq!(
        expected,
        vec![vec![1, 2], vec![2, 3], vec![3, 5], vec![5, 8], vec![8, 13]]
    );
    let g = oracle(GOLDEN);
    assert_eq!(points(&brute_force_minimal_points(&g, 1, 20, 4096).unwrap()), expected);
    assert_eq!(
        points(&enumerate_minimal_points(&g, 1, 20, &EnumerateOptions::default()).unwrap()),
        expected
    );
}

#[test]
fn cube_root_matches_float_scan() {
    let c = 2f64.cbrt();
    let expected = float_records(c, 2, 150);
    let got = enumerate_minimal_points(&oracle(CBRT2), 2, 150, &EnumerateOptions::default()).unwrap();
    assert_eq!(points(&got), expected);
}

#[test]
fn shard_count_does_not_change_output() {
    let g = oracle(CBRT2);
    let one = enumerate_minimal_points(&g, 2, 5000, &EnumerateOptions::default()).unwrap();
    let four = enumerate_minimal_points(
        &g,
        2,
        5000,
        &EnumerateOptions {
            shards: 4,
            ..EnumerateOptions::default()
        },
    )
    .unwrap();
    assert_eq!(one, four);
}

#[test]
fn enumeration_agrees_with_exhaustive_scan() {
    for lit in [SQRT2, CBRT2, GOLDEN] {
        let xi = oracle(lit);
        for n in 1..=3 {
            let fast = enumerate_minimal_points(&xi, n, 120, &degenerate_ok()).unwrap();
            let slow = brute_force_minimal_points(&xi, n, 120, 4096).unwrap();
            assert_eq!(points(&fast), points(&slow), "{lit} n={n}");
        }
    }
}

#[test]
fn records_round_trip_through_json() {
    let recs = enumerate_minimal_points(&oracle(SQRT2), 1, 1000, &EnumerateOptions::default()).unwrap();
    for r in &recs {
        let back = MinimalPointRecord::from_json(&r.to_json()).unwrap();
        assert_eq!(back.x, r.x);
        assert_eq!(back.i, r.i);
        assert!(back.l.encloses(&r.l));
    }
}

#[test]
fn exponent_of_second_record() {
    let recs = enumerate_minimal_points(&oracle(SQRT2), 1, 50, &EnumerateOptions::default()).unwrap();
    let est = estimate_exponents(&recs, 4).unwrap();
    // -ln(3 - 2 sqrt 2) / ln sqrt 74 = 0.819108...
    let v = est.lambda_hat_running[1].to_f64();
    assert!((0.81910..0.81911).contains(&v), "{v}");
    for (hat, plain) in est.lambda_hat_running.iter().zip(&est.lambda_running) {
        assert!(hat.hi() <= plain.hi() && hat.lo() <= plain.lo());
    }
}

#[test]
fn exponents_of_sqrt2_approach_one() {
    let recs =
        enumerate_minimal_points(&oracle(SQRT2), 1, 1_000_000, &EnumerateOptions::default()).unwrap();
    let est = estimate_exponents(&recs, 8).unwrap();
    let hat = est.lambda_hat_secant.unwrap().to_f64();
    let plain = est.lambda_secant.unwrap().to_f64();
    assert!((hat - 1.0).abs() < 0.02, "{hat}");
    assert!((plain - 1.0).abs() < 0.02, "{plain}");
}

#[test]
fn structure_of_one_dimensional_sequence() {
    let recs = enumerate_minimal_points(&oracle(SQRT2), 1, 1000, &EnumerateOptions::default()).unwrap();
    let s = build_structure(&recs).unwrap();
    assert!(s.i_set.is_empty());
    for i in 0..recs.len() - 1 {
        assert_eq!(s.sigma(0, i), Some(i));
        assert_eq!(s.y_squared(0, i), Some(&recs[i + 1].x_squared));
        assert_eq!(s.y_squared(-1, i), Some(&recs[i].x_squared));
    }
}

#[test]
fn structure_in_higher_dimension() {
    let recs = enumerate_minimal_points(&oracle(CBRT2), 2, 100_000, &EnumerateOptions::default()).unwrap();
    assert!(recs.len() >= 3);
    let s = build_structure(&recs).unwrap();
    for r in &recs[1..recs.len() - 1] {
        assert_eq!(r.in_i, s.i_set.contains(&r.i));
    }
    assert!(!s.i_set.is_empty());
    for i in 0..recs.len() - 1 {
        assert_eq!(s.sigma(0, i), Some(i));
        assert_eq!(s.a_subspace(1, i).map(|a| a.dim()).unwrap_or(2), 2);
    }
    let full = check_p(&s, 2, 0, 0).unwrap();
    assert!(full.passes());
    let line = check_p(&s, 0, 2, 0).unwrap();
    assert!(!line.passes());
    assert!(build_structure(&recs[..2]).is_err());
}

#[test]
fn construct_example() {
    let v = dioph_core::lattice::Subspace::from_spanning_set(2, &[IntegerVector::from_i64(&[0, 1])])
        .unwrap();
    let c = construct_c(&v, &IntegerVector::from_i64(&[1, 2, 3]), 1, 1).unwrap();
    assert_eq!(c, IntegerVector::from_i64(&[-1, -2]));
}
