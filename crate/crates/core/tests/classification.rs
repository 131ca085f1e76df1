mod common;

use painleve_core::classify::{classify, lattice_vectors, normalize_real, Status, DEFAULT_MAX_DEPTH};
use painleve_core::hierarchy::{is_solution, ParamVector, SystemSpec};
use painleve_core::weyl::{apply_word_params, reflect_params};
use proptest::prelude::*;

// vectors of length 3 with denominator dividing `d`, summing to 1
fn lattice_point() -> impl Strategy<Value = ParamVector> {
    (1i64..=4, -8i64..=8, -8i64..=8).prop_map(|(d, a, b)| {
        ParamVector::from_ratios(&[(a, d), (b, d), (d - a - b, d)])
    })
}

proptest! {
    #![proptest_config(common::config(100))]

    #[test]
    fn status_is_constant_on_orbits(p in lattice_point(), i in 0usize..3) {
        let spec = SystemSpec::p4ny(3);
        let a = classify(&spec, &p, DEFAULT_MAX_DEPTH).unwrap();
        let b = classify(&spec, &reflect_params(i, &p), DEFAULT_MAX_DEPTH).unwrap();
        prop_assume!(a.status != Status::UndecidedAtDepth && b.status != Status::UndecidedAtDepth);
        prop_assert_eq!(a.status, b.status);
    }

    #[test]
    fn normalization_is_idempotent(p in lattice_point()) {
        // entries up to 8 in size can need more than the default depth
        let (q, w) = normalize_real(&p, 64).unwrap();
        prop_assert_eq!(apply_word_params(&w, &p), q.clone());
        let (again, w2) = normalize_real(&q, DEFAULT_MAX_DEPTH).unwrap();
        prop_assert_eq!(again, q);
        prop_assert!(w2.is_empty());
    }

    #[test]
    fn witnesses_are_independently_verified(p in lattice_point()) {
        let v = classify(&SystemSpec::p4ny(3), &p, DEFAULT_MAX_DEPTH).unwrap();
        if v.status == Status::Admits {
            let w = v.witness.expect("small orbits stay under the degree cap");
            prop_assert_eq!(&w.solution.params, &p);
            prop_assert!(is_solution(&w.solution).unwrap());
        }
    }
}

#[test]
fn denominator_two_orbit_of_half_half_zero_is_empty_of_rows() {
    let spec = SystemSpec::p4ny(3);
    for p in lattice_vectors(3, 2, -4, 6) {
        let v = classify(&spec, &p, DEFAULT_MAX_DEPTH).unwrap();
        let integral = p.as_slice().iter().all(|a| a.is_integer());
        let expected = if integral { Status::Admits } else { Status::NotInTables };
        assert_eq!(v.status, expected, "{:?}", p);
    }
}
