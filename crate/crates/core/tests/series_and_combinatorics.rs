use euler_measure::partitions::{binomial, factorial, iterated_binomial_polynomial};
use euler_measure::prelude::*;
use euler_measure::rational::{from_bigint, pow_i64};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-30i64..30, 1i64..9).prop_map(|(p, q)| rat(p, q))
}

fn poly(coeffs: Vec<Rational>) -> Polynomial {
    Polynomial::new(coeffs)
}

fn rational_function() -> impl Strategy<Value = RationalFunction> {
    (
        prop::collection::vec(small_rational(), 1..4),
        prop::collection::vec(small_rational(), 1..4),
    )
        .prop_filter_map("degenerate denominator", |(num, mut den)| {
            den.insert(0, Rational::one());
            if den.last().is_some_and(|c| c.is_zero()) {
                return None;
            }
            RationalFunction::new(poly(num), poly(den)).ok()
        })
}

proptest! {
    #[test]
    fn recurrence_recovers_rational_function(rf in rational_function()) {
        let num_len = rf.numerator().degree().map_or(0, |d| d + 1);
        let order = num_len.max(rf.denominator().degree().unwrap_or(0));
        let prefix = SeriesPrefix::new(rf.expand(4 * order + 4), "t").unwrap();
        let rec = min_recurrence(&prefix, order).unwrap().expect("recurrence exists");
        prop_assert!(rec.order <= order);
        prop_assert_eq!(to_rational_function(&prefix, &rec).unwrap(), rf);
    }

    #[test]
    fn binomial_series_matches_generalized_binomial(m in -6i64..6, lam in small_rational()) {
        let s = binomial_prefix(m, &lam, 10);
        for (k, c) in s.prefix.coeffs().iter().enumerate() {
            prop_assert_eq!(c.clone(), gen_binomial(&int(m), k) * pow_i64(&lam, k as i64).unwrap());
        }
        prop_assert_eq!(s.closed_form.expand(11), s.prefix.coeffs().to_vec());
    }

    #[test]
    fn mobius_sum_is_falling_factorial(x in small_rational(), k in 0usize..7) {
        let total = partitions_of(k, 10)
            .unwrap()
            .iter()
            .map(|pi| from_bigint(pi.mobius_bottom()) * pow_i64(&x, pi.block_count() as i64).unwrap())
            .fold(Rational::zero(), |acc, v| acc + v);
        prop_assert_eq!(total, falling_factorial(&x, k));
    }

    #[test]
    fn pascal_rule(x in small_rational(), k in 1usize..9) {
        let one = Rational::one();
        prop_assert_eq!(
            gen_binomial(&x, k),
            gen_binomial(&(&x - &one), k) + gen_binomial(&(&x - &one), k - 1)
        );
    }

    #[test]
    fn iterated_binomial_polynomial_evaluates_pointwise(
        x in small_rational(),
        ks in prop::collection::vec(1usize..4, 0..3),
    ) {
        prop_assert_eq!(iterated_binomial_polynomial(&ks).eval(&x), iterated_binomial(&x, &ks));
    }
}

#[test]
fn pole_at_one_is_a_regularization_failure() {
    let p = SeriesPrefix::from_ints(&[1, 2, 3, 4, 5, 6, 7, 8, 9, 10], "t").unwrap();
    let e = regularize(&p, 4).unwrap_err();
    assert_eq!(e.class(), ErrorClass::RegularizationFailure);
}

#[test]
fn unfittable_prefix_reports_no_recurrence() {
    // 2^k - 1 for k ≤ 5 then breaks the pattern at the end
    let p = SeriesPrefix::from_ints(&[0, 1, 3, 7, 15, 31, 63, 127, 255, 500], "t").unwrap();
    assert_eq!(min_recurrence(&p, 3).unwrap(), None);
    assert!(matches!(regularize(&p, 3), Err(Error::NoRecurrence { .. })));
}

#[test]
fn partition_counts_are_bell_numbers() {
    let bell = [1, 1, 2, 5, 15, 52, 203, 877];
    for (k, &b) in bell.iter().enumerate() {
        assert_eq!(partitions_of(k, 10).unwrap().len(), b);
    }
    assert_eq!(
        partitions_of(11, 10).unwrap_err().class(),
        ErrorClass::Resource
    );
}

#[test]
fn choose_matches_binomial_family() {
    for p in 0..5i64 {
        for n in 0..4i64 {
            // p open intervals and n isolated points
            let mut s: PolyhedralSet = PolyhedralSet::points((0..n).map(|i| int(100 + i)));
            for i in 0..p {
                s = s.union(&PolyhedralSet::open(2 * i, 2 * i + 1).unwrap());
            }
            let chi = n - p;
            for k in 0..=6 {
                let sketch = choose_cells(&s, k, DEFAULT_CHOOSE_CAP).unwrap();
                assert_eq!(
                    int(sketch.measure()),
                    gen_binomial(&int(chi), k),
                    "p={p} n={n} k={k}"
                );
                let ordered = ordered_distinct_measure(&s, k, 10).unwrap();
                assert_eq!(ordered, factorial(k) * sketch.measure());
                assert_eq!(from_bigint(ordered), falling_factorial(&int(chi), k));
            }
        }
    }
}

#[test]
fn choose_on_finite_sets_counts_subsets() {
    for n in 0..=6usize {
        let s = PolyhedralSet::points((0..n as i64).map(int));
        for k in 0..=7 {
            let m = choose_cells(&s, k, DEFAULT_CHOOSE_CAP).unwrap().measure();
            assert_eq!(num_bigint::BigInt::from(m), binomial(n, k));
        }
    }
}
