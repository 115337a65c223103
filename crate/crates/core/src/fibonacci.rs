//! Finite subsets `S ⊂ P` for which every gap `(P \ S) ∩ (t, t')` between
//! consecutive elements of `S ∪ {±∞}` has even Euler measure.
//!
//! Graded by `|S|`, the family continues to the extended Fibonacci number
//! `F(χ(P) + 1)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::choose::placements;
use crate::error::{Error, Result};
use crate::interval_sets::{Piece, PolyhedralSet};
use crate::rational::{from_bigint, Rational};
use crate::series::{regularize, Regularization, SeriesPolicy, SeriesPrefix};

pub const DEFAULT_FIB_TERMS: usize = 16;
pub const DEFAULT_FIB_CAP: usize = 16;

/// `F(n)` for any integer `n`, with `F(1) = F(2) = 1` and the recurrence run
/// backwards for `n ≤ 0`.
pub fn extended_fibonacci(n: i64) -> BigInt {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one()); // F(0), F(1)
    if n >= 0 {
        for _ in 0..n {
            let next = &a + &b;
            a = std::mem::replace(&mut b, next);
        }
        a
    } else {
        for _ in 0..n.unsigned_abs() {
            // (F(i-1), F(i)) from (F(i), F(i+1))
            let prev = &b - &a;
            b = std::mem::replace(&mut a, prev);
        }
        a
    }
}

/// Whether the stratum with the given per-piece point counts satisfies the
/// parity condition. Only consecutive gaps are checked; longer gaps are sums
/// of consecutive ones.
pub fn placement_is_valid(pieces: &[Piece], placement: &[usize]) -> bool {
    let mut gap: i64 = 0;
    for (piece, &count) in pieces.iter().zip(placement) {
        match piece {
            Piece::Point(_) if count == 1 => {
                if gap % 2 != 0 {
                    return false;
                }
                gap = 0;
            }
            Piece::Point(_) => gap += 1,
            Piece::Open(..) => {
                // `count` points cut the interval into `count + 1` open pieces
                gap -= 1;
                for _ in 0..count {
                    if gap % 2 != 0 {
                        return false;
                    }
                    gap = -1;
                }
            }
        }
    }
    gap % 2 == 0
}

/// Signed count of the valid `k`-point strata: each contributes
/// `(-1)^(points placed inside open intervals)`.
pub fn parity_strata_coefficient(set: &PolyhedralSet, k: usize, cap: usize) -> Result<BigInt> {
    if k > cap {
        return Err(Error::ResourceLimit(format!(
            "parity strata with k = {k} exceed the cap of {cap}"
        )));
    }
    let pieces = set.pieces();
    let mut total = BigInt::zero();
    for placement in placements(pieces, k) {
        if !placement_is_valid(pieces, &placement) {
            continue;
        }
        let dim: usize = placement
            .iter()
            .zip(pieces)
            .filter(|(_, p)| !p.is_point())
            .map(|(c, _)| c)
            .sum();
        if dim.is_multiple_of(2) {
            total += 1;
        } else {
            total -= 1;
        }
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibonacciMeasure {
    pub chi: i64,
    pub prefix: SeriesPrefix,
    pub regularization: Regularization,
    /// `F(χ(P) + 1)`.
    pub expected: BigInt,
}

impl FibonacciMeasure {
    pub fn value(&self) -> &Rational {
        &self.regularization.value
    }

    pub fn matches_expected(&self) -> bool {
        *self.value() == from_bigint(self.expected.clone())
    }
}

/// Assembles `c_0..c_K`, continues the series and evaluates it at `t = 1`.
pub fn fibonacci_measure(
    set: &PolyhedralSet,
    policy: SeriesPolicy,
    cap: usize,
) -> Result<FibonacciMeasure> {
    let coeffs = (0..=policy.terms)
        .map(|k| parity_strata_coefficient(set, k, cap).map(from_bigint))
        .collect::<Result<Vec<_>>>()?;
    let prefix = SeriesPrefix::new(coeffs, "subset size")?;
    let regularization = regularize(&prefix, policy.max_order)?;
    let chi = set.euler_measure();
    Ok(FibonacciMeasure {
        chi,
        prefix,
        regularization,
        expected: extended_fibonacci(chi + 1),
    })
}

/// Default policy for the Fibonacci family: 16 terms, order up to 8.
pub fn default_policy() -> SeriesPolicy {
    SeriesPolicy {
        terms: DEFAULT_FIB_TERMS,
        ..SeriesPolicy::default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn fibonacci_values() {
        assert_eq!(extended_fibonacci(5), BigInt::from(5));
        assert_eq!(extended_fibonacci(0), BigInt::from(0));
        assert_eq!(extended_fibonacci(-2), BigInt::from(-1));
        assert_eq!(extended_fibonacci(-1), BigInt::from(1));
        assert_eq!(extended_fibonacci(1), BigInt::from(1));
    }

    #[test]
    fn cassini() {
        for n in -8..=8 {
            let lhs = extended_fibonacci(n + 1) * extended_fibonacci(n - 1)
                - extended_fibonacci(n) * extended_fibonacci(n);
            let sign = if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(lhs, BigInt::from(sign), "n = {n}");
        }
    }

    #[test]
    fn coefficients() {
        let cap = DEFAULT_FIB_CAP;
        let unit = PolyhedralSet::open(0, 1).unwrap();
        for k in 0..6 {
            assert!(parity_strata_coefficient(&unit, k, cap).unwrap().is_zero());
        }
        let one = PolyhedralSet::point(int(0));
        assert_eq!(
            parity_strata_coefficient(&one, 0, cap).unwrap(),
            BigInt::zero()
        );
        assert_eq!(
            parity_strata_coefficient(&one, 1, cap).unwrap(),
            BigInt::one()
        );
        let two = PolyhedralSet::points([int(0), int(1)]);
        assert_eq!(
            parity_strata_coefficient(&two, 0, cap).unwrap(),
            BigInt::one()
        );
        assert_eq!(
            parity_strata_coefficient(&two, 1, cap).unwrap(),
            BigInt::zero()
        );
        assert_eq!(
            parity_strata_coefficient(&two, 2, cap).unwrap(),
            BigInt::one()
        );
        assert!(parity_strata_coefficient(&two, 17, cap).is_err());
    }

    #[test]
    fn anchor_measures() {
        let cases = [
            (PolyhedralSet::point(int(0)), 1),
            (PolyhedralSet::open(0, 1).unwrap(), 0),
            (PolyhedralSet::points([int(0), int(1)]), 2),
        ];
        for (set, want) in cases {
            let m = fibonacci_measure(&set, default_policy(), DEFAULT_FIB_CAP).unwrap();
            assert_eq!(*m.value(), int(want), "{set}");
            assert!(m.matches_expected());
        }
    }
}
