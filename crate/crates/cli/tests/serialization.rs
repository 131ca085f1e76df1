use painleve_cli::json::{
    parse_document, ratfunc_from_json, ratfunc_to_json, render, tuple_from_json, tuple_to_json,
};
use painleve_core::exactalg::{Poly, RatFunc, Scalar};
use painleve_core::hierarchy::{CouplingVariant, ParamVector, SolutionTuple, SystemSpec};
use proptest::prelude::*;
use proptest::test_runner::Config;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-10_000i64..10_000, 1i64..500).prop_map(|(p, q)| Scalar::new(p.into(), q.into()))
}

fn poly(max_len: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(scalar(), 0..max_len).prop_map(Poly::from_coeffs)
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (poly(6), poly(4)).prop_map(|(n, d)| {
        let d = if d.is_zero() { Poly::one() } else { d };
        RatFunc::new(n, d).unwrap()
    })
}

fn spec() -> impl Strategy<Value = SystemSpec> {
    prop_oneof![
        (0usize..3).prop_map(|k| SystemSpec::p4ny(2 * k + 3)),
        (0usize..3).prop_map(|k| SystemSpec::p4dc(2 * k + 3)),
        (1usize..4, scalar(), scalar(), any::<bool>()).prop_map(|(n, c0, c1, lit)| {
            let variant = if lit { CouplingVariant::LiteralF0 } else { CouplingVariant::DiagonalFi };
            SystemSpec::p5ny(n, c0, c1, variant)
        }),
        (1usize..4).prop_map(SystemSpec::p5dc),
    ]
}

fn tuple() -> impl Strategy<Value = SolutionTuple> {
    spec().prop_flat_map(|s| {
        let m = s.arity();
        (
            Just(s),
            prop::collection::vec(scalar(), m),
            prop::collection::vec(ratfunc(), m),
        )
            .prop_map(|(s, alphas, comps)| SolutionTuple::new(s, ParamVector::new(alphas), comps).unwrap())
    })
}

fn config() -> Config {
    Config { cases: 200, failure_persistence: None, ..Config::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn rational_functions_round_trip(f in ratfunc()) {
        let text = render(&ratfunc_to_json(&f));
        let back = ratfunc_from_json(&parse_document(&text).unwrap(), "$").unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(render(&ratfunc_to_json(&back)), text);
    }

    #[test]
    fn tuples_round_trip_byte_for_byte(s in tuple()) {
        let text = render(&tuple_to_json(&s));
        let back = tuple_from_json(&parse_document(&text).unwrap()).unwrap();
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(render(&tuple_to_json(&back)), text);
    }
}
