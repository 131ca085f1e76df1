#![allow(dead_code)]

use painleve_core::exactalg::{int, Poly, RatFunc, Scalar};
use proptest::prelude::*;

pub fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

pub fn poly(max_degree: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(-9i64..=9, 0..=max_degree + 1).prop_map(|c| Poly::from_i64(&c))
}

pub fn nonzero_poly(max_degree: usize) -> impl Strategy<Value = Poly> {
    poly(max_degree).prop_filter("nonzero", |p| !p.is_zero())
}

pub fn ratfunc(max_degree: usize) -> impl Strategy<Value = RatFunc> {
    (poly(max_degree), nonzero_poly(max_degree)).prop_map(|(n, d)| RatFunc::new(n, d).unwrap())
}

/// Laurent polynomials without an `x^-1` term: the class with elementary
/// antiderivatives.
pub fn integrable() -> impl Strategy<Value = RatFunc> {
    prop::collection::vec(-9i64..=9, 12).prop_map(|c| {
        c.into_iter()
            .zip(-5i32..=6)
            .filter(|&(_, k)| k != -1)
            .map(|(c, k)| RatFunc::monomial(int(c), k))
            .sum()
    })
}

pub fn small_rational() -> impl Strategy<Value = Scalar> {
    (-12i64..=12, 1i64..=6).prop_map(|(p, q)| Scalar::new(p.into(), q.into()))
}
