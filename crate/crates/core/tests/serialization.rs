use euler_measure::prelude::*;
use proptest::prelude::*;

proptest! {
    #[test]
    fn prefixes_round_trip_through_json(
        coeffs in prop::collection::vec((-1_000_000i64..1_000_000, 1i64..10_000), 1..12)
    ) {
        let qs: Vec<Rational> = coeffs.iter().map(|&(p, q)| rat(p, q)).collect();
        let prefix = SeriesPrefix::new(qs, "k").unwrap();
        let json = serde_json::to_string(&prefix).unwrap();
        let back: SeriesPrefix = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, prefix);
    }
}

#[test]
fn rationals_are_exact_strings() {
    let rf = RationalFunction::new(
        Polynomial::from_ints(&[0, -1]),
        Polynomial::from_ints(&[1, 4, 3]),
    )
    .unwrap();
    let json = serde_json::to_value(&rf).unwrap();
    assert_eq!(json["numerator"], serde_json::json!(["0", "-1"]));
    let back: RationalFunction = serde_json::from_value(json).unwrap();
    assert_eq!(back, rf);

    let big = rat(i64::MAX, 3) * rat(i64::MAX, 7);
    let p = SeriesPrefix::new(vec![big.clone()], "k").unwrap();
    let back: SeriesPrefix = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
    assert_eq!(back.coeffs()[0], big);
}

#[test]
fn zero_denominator_is_rejected_on_load() {
    let text = r#"{"numerator":["1"],"denominator":["0"]}"#;
    assert!(serde_json::from_str::<RationalFunction>(text).is_err());
}

#[test]
fn empty_prefix_is_rejected_on_load() {
    let text = r#"{"coeffs":[],"grading":"k","terminating":false}"#;
    assert!(serde_json::from_str::<SeriesPrefix>(text).is_err());
}
