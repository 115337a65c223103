use euler_measure::prelude::*;
use euler_measure::rational::ExtendedRational::{NegInfinity, PosInfinity};
use proptest::prelude::*;

fn literal() -> impl Strategy<Value = Literal> {
    (-12i64..12, 1i64..8, 0u8..5, any::<bool>(), any::<bool>()).prop_map(
        |(a, len, kind, lc, hc)| {
            let (lo, hi) = (rat(a, 3), rat(a + len, 3));
            match kind {
                0 => Literal::Point(lo),
                1 => Literal::Interval {
                    lo: NegInfinity,
                    hi: hi.into(),
                    lo_closed: false,
                    hi_closed: hc,
                },
                2 => Literal::Interval {
                    lo: lo.into(),
                    hi: PosInfinity,
                    lo_closed: lc,
                    hi_closed: false,
                },
                _ => Literal::Interval {
                    lo: lo.into(),
                    hi: hi.into(),
                    lo_closed: lc,
                    hi_closed: hc,
                },
            }
        },
    )
}

fn set() -> impl Strategy<Value = PolyhedralSet> {
    prop::collection::vec(literal(), 0..5)
        .prop_map(|lits| PolyhedralSet::canonicalize(&lits).unwrap())
}

/// Euler measure computed independently of the piece list: sample the set on
/// every breakpoint and between consecutive breakpoints, then count isolated
/// points (+1) and maximal open runs (-1) directly from membership.
fn sampled_measure(s: &PolyhedralSet) -> i64 {
    let mut cuts: Vec<Rational> = Vec::new();
    for p in s.pieces() {
        match p {
            Piece::Point(q) => cuts.push(q.clone()),
            Piece::Open(lo, hi) => {
                cuts.extend(lo.finite().cloned());
                cuts.extend(hi.finite().cloned());
            }
        }
    }
    cuts.sort();
    cuts.dedup();
    // alternate gap / cut samples, gaps at both ends
    let mut samples = Vec::new();
    let first = cuts.first().cloned().unwrap_or_else(|| int(0));
    samples.push((false, first - int(1)));
    for (i, c) in cuts.iter().enumerate() {
        samples.push((true, c.clone()));
        let next = cuts.get(i + 1).cloned().unwrap_or_else(|| c + int(2));
        samples.push((false, (c + &next) / int(2)));
    }
    let inside: Vec<(bool, bool)> = samples
        .iter()
        .map(|(is_cut, x)| (*is_cut, s.contains(x)))
        .collect();
    let mut chi = 0;
    for (is_cut, member) in &inside {
        if *member {
            chi += if *is_cut { 1 } else { -1 };
        }
    }
    chi
}

proptest! {
    #[test]
    fn measure_matches_sampled_oracle(a in set()) {
        prop_assert_eq!(a.euler_measure(), sampled_measure(&a));
    }

    #[test]
    fn valuation_law(a in set(), b in set()) {
        prop_assert_eq!(
            a.union(&b).euler_measure() + a.intersection(&b).euler_measure(),
            a.euler_measure() + b.euler_measure()
        );
    }

    #[test]
    fn complement_law(a in set()) {
        prop_assert_eq!(a.euler_measure() + a.complement().euler_measure(), -1);
        prop_assert_eq!(a.complement().complement(), a);
    }

    #[test]
    fn difference_is_intersection_with_complement(a in set(), b in set()) {
        prop_assert_eq!(a.difference(&b), a.intersection(&b.complement()));
    }

    #[test]
    fn canonical_form_is_stable(a in set(), b in set()) {
        let u = a.union(&b);
        prop_assert_eq!(PolyhedralSet::from_pieces(u.pieces()).unwrap(), u.clone());
        let reparsed: PolyhedralSet = u.to_string().parse().unwrap();
        prop_assert_eq!(reparsed, u);
    }

    #[test]
    fn membership_follows_operations(a in set(), b in set(), n in -40i64..40) {
        let x = rat(n, 6);
        prop_assert_eq!(a.union(&b).contains(&x), a.contains(&x) || b.contains(&x));
        prop_assert_eq!(a.intersection(&b).contains(&x), a.contains(&x) && b.contains(&x));
        prop_assert_eq!(a.complement().contains(&x), !a.contains(&x));
    }

    #[test]
    fn translation_invariance(a in set(), p in -30i64..30, q in 1i64..7) {
        let shift = rat(p, q);
        prop_assert_eq!(a.shifted(&shift).euler_measure(), a.euler_measure());
    }

    #[test]
    fn finite_sets_measure_cardinality(xs in prop::collection::vec(-20i64..20, 0..10)) {
        let s = PolyhedralSet::points(xs.iter().map(|&x| int(x)));
        let mut distinct = xs.clone();
        distinct.sort();
        distinct.dedup();
        prop_assert_eq!(s.euler_measure(), distinct.len() as i64);
        prop_assert_eq!(s.classify().cardinality, Some(distinct.len()));
    }
}

#[test]
fn grammar_examples() {
    let cases = [
        ("(0,1) u (2,3)", -2),
        ("[0,1)", 0),
        ("[0,1]", 1),
        ("{1/2, 3} & (0,1)", 1),
        ("!(0,1)", 0),
        ("(-inf,inf) \\ {0}", -2),
        ("(0,2) \\ [1/2,1]", -2),
    ];
    for (text, chi) in cases {
        let s: PolyhedralSet = text.parse().unwrap();
        assert_eq!(s.euler_measure(), chi, "{text}");
    }
    let s: PolyhedralSet = "{1/2, 3} & (0,1)".parse().unwrap();
    assert_eq!(s, PolyhedralSet::point(rat(1, 2)));
}

#[test]
fn malformed_input_is_rejected() {
    for bad in ["(1,0)", "[2,2)", "(0,1", "{1/0}", "(0,1) u", "[0,inf]"] {
        let err = bad.parse::<PolyhedralSet>().unwrap_err();
        assert_eq!(err.class(), ErrorClass::Input, "{bad}");
    }
}
