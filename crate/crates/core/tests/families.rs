use euler_measure::fibonacci::{default_policy, parity_strata_coefficient, DEFAULT_FIB_CAP};
use euler_measure::gizmos::gizmo_support_histogram;
use euler_measure::map_spaces::{finite_map_count_multi, map_pair_count};
use euler_measure::partitions::binomial;
use euler_measure::prelude::*;
use euler_measure::rational::pow_i64;
use euler_measure::verify::{brute_parity_count, set_with_measure};
use num_bigint::BigInt;
use proptest::prelude::*;

fn spec(ks: &[usize]) -> GizmoSpec {
    GizmoSpec::new(ks.to_vec()).unwrap()
}

#[test]
fn gizmo_oracles_agree() {
    for ks in [&[1][..], &[2], &[3], &[2, 2]] {
        let s = spec(ks);
        for k in 0..=4 {
            assert_eq!(
                gizmo_support_count(&s, k),
                gizmo_brute_force(&s, k, DEFAULT_BRUTE_CAP).unwrap(),
                "ks {ks:?}, k = {k}"
            );
        }
    }
}

#[test]
fn finite_ground_sets_give_iterated_binomials_of_two_powers() {
    for m in 0..=3usize {
        for ks in [&[1][..], &[2], &[3], &[2, 2], &[2, 3]] {
            let total: u64 = gizmo_support_histogram(&spec(ks), m, DEFAULT_BRUTE_CAP)
                .map(|h| h.values().sum())
                .unwrap_or_else(|e| panic!("m = {m}, ks {ks:?}: {e}"));
            let want = iterated_binomial(&int(1 << m), ks);
            assert_eq!(int(total as i64), want, "m = {m}, ks {ks:?}");
        }
    }
}

#[test]
fn gizmo_brute_force_respects_cap() {
    let err = gizmo_brute_force(&spec(&[2, 2]), 4, 10).unwrap_err();
    assert_eq!(err.class(), ErrorClass::Resource);
}

#[test]
fn gizmo_spec_rejects_zero() {
    assert_eq!(
        GizmoSpec::new(vec![2, 0]).unwrap_err().class(),
        ErrorClass::Input
    );
}

#[test]
fn empty_gizmo_is_the_power_set() {
    for chi in -2..=2 {
        let m = gizmo_measure(&set_with_measure(chi), &spec(&[]), SeriesPolicy::default()).unwrap();
        assert_eq!(*m.value(), pow_i64(&int(2), chi).unwrap());
    }
}

#[test]
fn map_counts_do_not_depend_on_breakpoint_distribution() {
    for b in 1..=3 {
        for dist in [[0usize, 0], [2, 0], [1, 1], [0, 2]] {
            let brute =
                finite_map_count_multi(b, &dist, CountMode::Brute, DEFAULT_BRUTE_CAP).unwrap();
            let bb = BigInt::from(b);
            let want = &bb * &bb * num_traits::pow(&bb * &bb - 1, dist.iter().sum());
            assert_eq!(brute, want, "b = {b}, {dist:?}");
        }
    }
}

#[test]
fn hedral_measure_is_power_of_codomain_size() {
    for p in 1..=3i64 {
        let a = set_with_measure(-p);
        for b in 1..=4usize {
            let m = hedral_map_measure(&a, b, SeriesPolicy::default()).unwrap();
            assert_eq!(
                *m.value(),
                pow_i64(&int(b as i64), -p).unwrap(),
                "p = {p}, b = {b}"
            );
        }
    }
    let closed = "[0,1]".parse::<PolyhedralSet>().unwrap();
    assert_eq!(
        hedral_map_measure(&closed, 2, SeriesPolicy::default())
            .unwrap_err()
            .class(),
        ErrorClass::Input
    );
}

#[test]
fn map_pairs_for_larger_codomains() {
    // b²(b⁴ - 1)^k / 2 - b(b² - 1)^k / 2
    for b in 1..=3i64 {
        for k in 0..=2u32 {
            let want = (b * b * (b.pow(4) - 1).pow(k) - b * (b * b - 1).pow(k)) / 2;
            assert_eq!(
                map_pair_count(b as usize, k as usize, DEFAULT_BRUTE_CAP).unwrap(),
                BigInt::from(want)
            );
        }
    }
}

#[test]
fn polyhedral_maps_into_finite_sets_match_hedral_counts() {
    for b in 1..=4usize {
        let set = PolyhedralSet::points((0..b as i64).map(int));
        let m =
            schanuel_measure(&SchanuelCodomain::Concrete(set), SeriesPolicy::default()).unwrap();
        for k in 0..=3 {
            assert_eq!(
                m.breakpoint_counts[k],
                finite_map_count(b, k, CountMode::Formula, DEFAULT_BRUTE_CAP).unwrap()
            );
        }
        assert_eq!(*m.value(), rat(1, b as i64));
    }
}

#[test]
fn affine_map_space_of_mixed_compact_set() {
    let b: PolyhedralSet = "[0,1] u {2} u [3,5]".parse().unwrap();
    let sketch = affine_pair_space(&b).unwrap();
    assert_eq!(sketch.measure(), b.euler_measure());
    let open: PolyhedralSet = "(0,1)".parse().unwrap();
    assert_eq!(
        affine_pair_space(&open).unwrap_err().class(),
        ErrorClass::Input
    );
}

#[test]
fn boolean_inversion_identity() {
    for k in 0..=8usize {
        for x in -4i64..=4 {
            let inverted: BigInt = (0..=k)
                .map(|j| {
                    let t = binomial(k, j) * BigInt::from(x).pow(2 * j as u32 + 1);
                    if (k - j) % 2 == 0 {
                        t
                    } else {
                        -t
                    }
                })
                .sum();
            assert_eq!(
                inverted,
                BigInt::from(x) * BigInt::from(x * x - 1).pow(k as u32)
            );
        }
    }
}

#[test]
fn fibonacci_family_values() {
    for chi in -3..=4 {
        let p = set_with_measure(chi);
        let m = fibonacci_measure(&p, default_policy(), DEFAULT_FIB_CAP).unwrap();
        assert_eq!(
            *m.value(),
            euler_measure::rational::from_bigint(extended_fibonacci(chi + 1))
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn finite_parity_subsets_match_exhaustive_search(
        mut xs in prop::collection::vec(-40i64..40, 0..7)
    ) {
        xs.sort();
        xs.dedup();
        let points: Vec<Rational> = xs.iter().map(|&x| rat(x, 4)).collect();
        let (total, by_size) = brute_parity_count(&points);
        let p = PolyhedralSet::points(points.iter().cloned());
        for (k, &c) in by_size.iter().enumerate() {
            prop_assert_eq!(parity_strata_coefficient(&p, k, DEFAULT_FIB_CAP).unwrap(), BigInt::from(c));
        }
        let m = fibonacci_measure(&p, default_policy(), DEFAULT_FIB_CAP).unwrap();
        prop_assert_eq!(m.value().clone(), int(total as i64));
    }

    #[test]
    fn fibonacci_measure_depends_only_on_chi(
        opens in 0i64..4,
        points in 0i64..4,
        closed in 0i64..3,
    ) {
        let mut p = PolyhedralSet::empty();
        for i in 0..opens {
            p = p.union(&PolyhedralSet::open(10 * i, 10 * i + 1).unwrap());
        }
        for i in 0..points {
            p = p.union(&PolyhedralSet::point(int(100 + 2 * i)));
        }
        for i in 0..closed {
            p = p.union(&PolyhedralSet::closed(200 + 10 * i, 201 + 10 * i).unwrap());
        }
        let m = fibonacci_measure(&p, default_policy(), DEFAULT_FIB_CAP).unwrap();
        prop_assert!(m.matches_expected(), "{} gives {}", p, m.value());
    }
}
