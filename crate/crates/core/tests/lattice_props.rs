use dioph_core::lattice::{matrix, IntegerVector, Subspace};
use num_bigint::BigInt;
use proptest::prelude::*;

fn subspace_strategy(max_ambient: usize) -> impl Strategy<Value = Subspace> {
    (1..=max_ambient)
        .prop_flat_map(|m| {
            (Just(m), prop::collection::vec(prop::collection::vec(-9i64..=9, m), 0..=m))
        })
        .prop_map(|(m, rows)| {
            let vs: Vec<IntegerVector> = rows.iter().map(|r| IntegerVector::from_i64(r)).collect();
            Subspace::from_spanning_set(m, &vs).unwrap()
        })
}

fn pair_strategy(max_ambient: usize) -> impl Strategy<Value = (Subspace, Subspace)> {
    (1..=max_ambient).prop_flat_map(|m| {
        let rows = prop::collection::vec(prop::collection::vec(-9i64..=9, m), 0..=m);
        (rows.clone(), rows).prop_map(move |(a, b)| {
            let mk = |rs: &Vec<Vec<i64>>| {
                let vs: Vec<IntegerVector> = rs.iter().map(|r| IntegerVector::from_i64(r)).collect();
                Subspace::from_spanning_set(m, &vs).unwrap()
            };
            (mk(&a), mk(&b))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn duality_is_exact(v in subspace_strategy(9)) {
        let p = v.orthogonal_complement();
        prop_assert_eq!(p.dim() + v.dim(), v.ambient_dim());
        prop_assert_eq!(p.height_squared(), v.height_squared());
    }

    #[test]
    fn complement_is_an_involution(v in subspace_strategy(7)) {
        prop_assert_eq!(v.orthogonal_complement().orthogonal_complement(), v);
    }

    #[test]
    fn saturation_is_idempotent(v in subspace_strategy(7)) {
        let again = Subspace::from_spanning_set(v.ambient_dim(), v.basis()).unwrap();
        prop_assert!(v.basis_is_saturated());
        prop_assert_eq!(again, v);
    }

    #[test]
    fn schmidt_inequality((u, v) in pair_strategy(6)) {
        let s = u.sum(&v).unwrap();
        let i = u.intersect(&v).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + v.dim());
        prop_assert!(s.height_squared() * i.height_squared() <= u.height_squared() * v.height_squared());
        prop_assert!(s.contains_subspace(&u) && s.contains_subspace(&v));
        prop_assert!(u.contains_subspace(&i) && v.contains_subspace(&i));
    }

    #[test]
    fn height_bounded_by_wedge_norm(rows in prop::collection::vec(prop::collection::vec(-9i64..=9, 5), 1..=4)) {
        let vs: Vec<IntegerVector> = rows.iter().map(|r| IntegerVector::from_i64(r)).collect();
        let raw: Vec<Vec<BigInt>> = vs.iter().map(|v| v.coords().to_vec()).collect();
        prop_assume!(matrix::rank(&raw) == vs.len());
        let s = Subspace::from_spanning_set(5, &vs).unwrap();
        let wedge = matrix::gram_det(&raw);
        prop_assert!(s.height_squared() <= &wedge);
        // the index of the span in its saturation is a square root of the ratio
        prop_assert_eq!(&wedge % s.height_squared(), BigInt::from(0));
    }
}
