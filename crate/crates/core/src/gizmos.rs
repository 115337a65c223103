//! Euler series of the small power set `2^A` and of iterated selection
//! gizmos `G(2^A; k_1, …, k_r)`.
//!
//! Elements of a gizmo are graded by the size of their support. Over a
//! `j`-point ground set the gizmo has `C(2^j; ks)` elements, so the number
//! `n_k` with support exactly a fixed `k`-set follows by Möbius inversion on
//! the Boolean lattice. The regularized measure is then obtained two ways:
//!
//! * route A writes `C(x; ks) = Σ_j a_j x^j` (fitted from `n_1..n_J` against
//!   the bases `2^j - 1`) and evaluates at `x = 2^χ(A)`;
//! * route B builds the series `Σ binom(χ(A), k)·n_k·t^k`, fits a recurrence,
//!   and evaluates the resulting rational function at `t = 1`.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::interval_sets::PolyhedralSet;
use crate::partitions::{binomial, gen_binomial, iterated_binomial, iterated_binomial_polynomial};
use crate::rational::{from_bigint, int, pow_i64, Rational};
use crate::series::{
    binomial_prefix, regularize, Polynomial, RationalFunction, Regularization, SeriesPolicy,
    SeriesPrefix,
};

pub const DEFAULT_BRUTE_CAP: u64 = 10_000_000;

/// Number of held-out support counts the exponential fit is checked against.
const FIT_HOLDOUT: usize = 4;

/// The selection sizes `k_1..k_r` applied to `2^A`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GizmoSpec {
    ks: Vec<usize>,
}

impl GizmoSpec {
    pub fn new(ks: Vec<usize>) -> Result<Self> {
        if ks.contains(&0) {
            return Err(Error::InvalidInput(
                "selection sizes must be positive".into(),
            ));
        }
        Ok(Self { ks })
    }

    pub fn ks(&self) -> &[usize] {
        &self.ks
    }

    /// `J = Π k_i`, the degree of `C(x; ks)` in `x`.
    pub fn dimension(&self) -> usize {
        self.ks.iter().product()
    }

    /// `C(2^j; ks)`: the size of the gizmo over a `j`-point ground set.
    pub fn finite_total(&self, j: usize) -> BigInt {
        let base = from_bigint(BigInt::one() << j);
        iterated_binomial(&base, &self.ks).to_integer()
    }
}

/// `χ(2^A)`: the series `Σ binom(χ, k) t^k` continued as `(1 + t)^χ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowersetSeries {
    pub chi: i64,
    pub prefix: SeriesPrefix,
    pub closed_form: RationalFunction,
    pub value: Rational,
}

pub fn powerset_series(set: &PolyhedralSet, terms: usize) -> Result<PowersetSeries> {
    let chi = set.euler_measure();
    let series = binomial_prefix(chi, &Rational::one(), terms);
    let value = series.closed_form.eval_at_one()?;
    Ok(PowersetSeries {
        chi,
        prefix: series.prefix,
        closed_form: series.closed_form,
        value,
    })
}

/// Support counts `n_0..n_K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportCountTable {
    pub ks: Vec<usize>,
    pub counts: Vec<BigInt>,
}

/// `n_k`, by inclusion–exclusion over the sub-supports of a `k`-set.
pub fn gizmo_support_count(spec: &GizmoSpec, k: usize) -> BigInt {
    (0..=k)
        .map(|j| {
            let term = binomial(k, j) * spec.finite_total(j);
            if (k - j).is_multiple_of(2) {
                term
            } else {
                -term
            }
        })
        .sum()
}

pub fn support_count_table(spec: &GizmoSpec, upto: usize) -> SupportCountTable {
    let totals: Vec<BigInt> = (0..=upto).map(|j| spec.finite_total(j)).collect();
    let counts = (0..=upto)
        .map(|k| {
            let mut acc = BigInt::zero();
            let mut coef = BigInt::one();
            // binom(k, j) walks j = 0..=k
            for (j, total) in totals.iter().enumerate().take(k + 1) {
                let term = &coef * total;
                if (k - j) % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
                coef = coef * BigInt::from(k - j) / BigInt::from(j + 1);
            }
            acc
        })
        .collect();
    SupportCountTable {
        ks: spec.ks.clone(),
        counts,
    }
}

/// `S < T` iff the least element of `S △ T` lies in `S`.
fn subset_order(s: u32, t: u32) -> Ordering {
    let diff = s ^ t;
    if diff == 0 {
        Ordering::Equal
    } else if s & diff & diff.wrapping_neg() != 0 {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// Builds the gizmo over the ground set `{1..ground}` explicitly and returns
/// how many elements have each support (as a bitmask).
pub fn gizmo_support_histogram(
    spec: &GizmoSpec,
    ground: usize,
    cap: u64,
) -> Result<BTreeMap<u32, u64>> {
    if ground > 20 {
        return Err(Error::ResourceLimit(format!(
            "brute-force ground set of {ground} points is too large"
        )));
    }
    let mut level: Vec<u32> = (0..1u32 << ground).collect();
    level.sort_by(|&s, &t| subset_order(s, t));

    let mut budget = cap;
    for &k in &spec.ks {
        let size = binomial(level.len(), k);
        let size: u64 = u64::try_from(&size).unwrap_or(u64::MAX);
        if size > budget {
            return Err(Error::ResourceLimit(format!(
                "brute force would build more than {cap} candidate tuples; use the \
                 inclusion-exclusion support count instead"
            )));
        }
        budget -= size;
        level = sorted_tuple_supports(&level, k);
    }

    let mut hist = BTreeMap::new();
    for support in level {
        *hist.entry(support).or_insert(0u64) += 1;
    }
    Ok(hist)
}

/// Supports of all strictly increasing `k`-tuples of `level`, in
/// lexicographic order of the tuples.
fn sorted_tuple_supports(level: &[u32], k: usize) -> Vec<u32> {
    let n = level.len();
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().fold(0u32, |acc, &i| acc | level[i]));
        let Some(i) = (0..k).rev().find(|&i| idx[i] < i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// `n_k` by explicit construction over `{1..k}`.
pub fn gizmo_brute_force(spec: &GizmoSpec, k: usize, cap: u64) -> Result<BigInt> {
    let hist = gizmo_support_histogram(spec, k, cap)?;
    let full = if k == 0 { 0 } else { u32::MAX >> (32 - k) };
    Ok(BigInt::from(hist.get(&full).copied().unwrap_or(0)))
}

/// `n_k = Σ_j a_j·(2^j - 1)^k`, equivalently `C(x; ks) = Σ_j a_j x^j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentialFit {
    pub bases: Vec<BigInt>,
    pub weights: Vec<Rational>,
}

impl ExponentialFit {
    pub fn predict(&self, k: usize) -> Rational {
        self.bases
            .iter()
            .zip(&self.weights)
            .map(|(b, a)| a * from_bigint(num_traits::pow(b.clone(), k)))
            .fold(Rational::zero(), |acc, x| acc + x)
    }

    /// `Σ_j a_j x^j`.
    pub fn polynomial(&self) -> Polynomial {
        let mut coeffs = vec![Rational::zero()];
        coeffs.extend(self.weights.iter().cloned());
        Polynomial::new(coeffs)
    }

    pub fn evaluate(&self, x: &Rational) -> Rational {
        self.polynomial().eval(x)
    }
}

/// Solves `m·x = rhs` exactly; `None` if `m` is singular.
fn solve_exact(mut m: Vec<Vec<Rational>>, mut rhs: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = rhs.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = m[col][col].recip();
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] * &inv;
            let pivot_row = m[col].clone();
            for (cell, p) in m[r].iter_mut().zip(&pivot_row).skip(col) {
                *cell -= &factor * p;
            }
            let delta = &factor * &rhs[col];
            rhs[r] -= delta;
        }
    }
    Some((0..n).map(|i| &rhs[i] / &m[i][i]).collect())
}

/// Fits the weights on `n_1..n_J`, checks `n_{J+1}..n_{J+4}`, and compares
/// the fitted polynomial with `C(x; ks)` coefficient by coefficient.
pub fn gizmo_fit(spec: &GizmoSpec) -> Result<ExponentialFit> {
    let dim = spec.dimension();
    let table = support_count_table(spec, dim + FIT_HOLDOUT);
    let bases: Vec<BigInt> = (1..=dim).map(|j| (BigInt::one() << j) - 1).collect();
    let matrix: Vec<Vec<Rational>> = (1..=dim)
        .map(|k| {
            bases
                .iter()
                .map(|b| from_bigint(num_traits::pow(b.clone(), k)))
                .collect()
        })
        .collect();
    let rhs: Vec<Rational> = (1..=dim)
        .map(|k| from_bigint(table.counts[k].clone()))
        .collect();
    let weights = solve_exact(matrix, rhs)
        .ok_or_else(|| Error::Internal("Vandermonde system in bases 2^j - 1 is singular".into()))?;
    let fit = ExponentialFit { bases, weights };

    for k in dim + 1..=dim + FIT_HOLDOUT {
        if fit.predict(k) != from_bigint(table.counts[k].clone()) {
            return Err(Error::Internal(format!(
                "exponential fit for ks {:?} mispredicts held-out support count n_{k}",
                spec.ks
            )));
        }
    }
    if fit.polynomial() != iterated_binomial_polynomial(&spec.ks) {
        return Err(Error::Internal(format!(
            "fitted weights for ks {:?} do not reproduce the iterated binomial polynomial",
            spec.ks
        )));
    }
    Ok(fit)
}

/// Both routes to the regularized measure of `G(2^A; ks)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GizmoMeasure {
    pub chi: i64,
    pub ks: Vec<usize>,
    pub fit: ExponentialFit,
    /// `Σ a_j (2^χ)^j`.
    pub exponential_value: Rational,
    pub support_counts: Vec<BigInt>,
    pub prefix: SeriesPrefix,
    pub regularization: Regularization,
    pub policy: SeriesPolicy,
    /// `C(2^χ; ks)` evaluated directly.
    pub iterated_value: Rational,
}

impl GizmoMeasure {
    pub fn value(&self) -> &Rational {
        &self.regularization.value
    }
}

pub fn gizmo_measure(
    set: &PolyhedralSet,
    spec: &GizmoSpec,
    policy: SeriesPolicy,
) -> Result<GizmoMeasure> {
    let chi = set.euler_measure();
    let fit = gizmo_fit(spec)?;
    let base = pow_i64(&int(2), chi).expect("2^χ is always defined");
    let exponential_value = fit.evaluate(&base);

    // The series is a polynomial of degree ≤ χ for χ ≥ 0 and has a
    // denominator of degree J·|χ| otherwise.
    let order_bound = spec.dimension() * chi.unsigned_abs() as usize + 1;
    let policy = policy.widened_for(order_bound);
    let table = support_count_table(spec, policy.terms);
    let chi_q = int(chi);
    let coeffs: Vec<Rational> = table
        .counts
        .iter()
        .enumerate()
        .map(|(k, n)| gen_binomial(&chi_q, k) * from_bigint(n.clone()))
        .collect();
    let prefix = SeriesPrefix::new(coeffs, "support size")?;
    let regularization = regularize(&prefix, policy.max_order)?;

    let iterated_value = iterated_binomial(&base, spec.ks());
    if exponential_value != regularization.value || exponential_value != iterated_value {
        return Err(Error::Internal(format!(
            "routes disagree for χ = {chi}, ks {:?}: exponential fit {}, series {}, iterated binomial {}",
            spec.ks(),
            exponential_value,
            regularization.value,
            iterated_value
        )));
    }
    Ok(GizmoMeasure {
        chi,
        ks: spec.ks.clone(),
        fit,
        exponential_value,
        support_counts: table.counts,
        prefix,
        regularization,
        policy,
        iterated_value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn spec(ks: &[usize]) -> GizmoSpec {
        GizmoSpec::new(ks.to_vec()).unwrap()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn powerset_examples() {
        let unit = PolyhedralSet::open(0, 1).unwrap();
        let ps = powerset_series(&unit, 6).unwrap();
        assert_eq!(ps.prefix.coeffs()[..4], [int(1), int(-1), int(1), int(-1)]);
        assert_eq!(ps.value, rat(1, 2));

        let two = PolyhedralSet::points([int(0), int(1)]);
        let ps = powerset_series(&two, 6).unwrap();
        assert!(ps.closed_form.is_polynomial());
        assert_eq!(ps.value, int(4));

        let chi_minus_two = unit.union(&PolyhedralSet::open(2, 3).unwrap());
        let ps = powerset_series(&chi_minus_two, 6).unwrap();
        assert_eq!(ps.closed_form.to_string(), "1/(1 + 2t + t^2)");
        assert_eq!(ps.value, rat(1, 4));
    }

    #[test]
    fn support_counts_for_pairs() {
        let s = spec(&[2]);
        let counts: Vec<BigInt> = (0..=3).map(|k| gizmo_support_count(&s, k)).collect();
        assert_eq!(counts, big(&[0, 1, 4, 13]));
        assert_eq!(support_count_table(&s, 3).counts, counts);
    }

    #[test]
    fn support_counts_for_pairs_of_pairs() {
        let s = spec(&[2, 2]);
        let counts: Vec<BigInt> = (2..=4).map(|k| gizmo_support_count(&s, k)).collect();
        assert_eq!(counts, big(&[15, 333, 5718]));
    }

    #[test]
    fn brute_force_small() {
        let cap = DEFAULT_BRUTE_CAP;
        assert_eq!(
            gizmo_brute_force(&spec(&[2]), 2, cap).unwrap(),
            BigInt::from(4)
        );
        assert_eq!(
            gizmo_brute_force(&spec(&[2, 2]), 2, cap).unwrap(),
            BigInt::from(15)
        );
        assert_eq!(
            gizmo_brute_force(&spec(&[1]), 1, cap).unwrap(),
            BigInt::from(1)
        );
        assert!(matches!(
            gizmo_brute_force(&spec(&[2, 2]), 8, cap),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn subset_order_matches_sorted_sequences() {
        // {1,3} < {2,3}: first differing sorted entry 1 < 2
        assert_eq!(subset_order(0b101, 0b110), Ordering::Less);
        // {1} < {} across sizes: least element of the difference is in S
        assert_eq!(subset_order(0b1, 0), Ordering::Less);
        assert_eq!(subset_order(0b10, 0b10), Ordering::Equal);
    }

    #[test]
    fn lexicographic_combinations() {
        let got = sorted_tuple_supports(&[1, 2, 4, 8], 2);
        assert_eq!(got, vec![3, 5, 9, 6, 10, 12]);
        assert!(sorted_tuple_supports(&[1], 2).is_empty());
        assert_eq!(sorted_tuple_supports(&[1, 2], 0), vec![0]);
    }

    #[test]
    fn fit_for_pairs() {
        let fit = gizmo_fit(&spec(&[2])).unwrap();
        assert_eq!(fit.bases, big(&[1, 3]));
        assert_eq!(fit.weights, vec![rat(-1, 2), rat(1, 2)]);
        assert_eq!(
            fit.polynomial(),
            Polynomial::new(vec![int(0), rat(-1, 2), rat(1, 2)])
        );
    }

    #[test]
    fn fit_for_pairs_of_pairs_and_empty() {
        let fit = gizmo_fit(&spec(&[2, 2])).unwrap();
        assert_eq!(fit.polynomial(), iterated_binomial_polynomial(&[2, 2]));
        let fit = gizmo_fit(&spec(&[])).unwrap();
        assert_eq!(fit.weights, vec![int(1)]);
    }

    #[test]
    fn measures() {
        let unit = PolyhedralSet::open(0, 1).unwrap();
        let m = gizmo_measure(&unit, &spec(&[2]), SeriesPolicy::default()).unwrap();
        assert_eq!(*m.value(), rat(-1, 8));
        assert_eq!(
            m.regularization.closed_form.to_string(),
            "-t/(1 + 4t + 3t^2)"
        );

        let m = gizmo_measure(&unit, &spec(&[2, 2]), SeriesPolicy::default()).unwrap();
        assert_eq!(*m.value(), rat(9, 128));

        let two = PolyhedralSet::points([int(0), int(1)]);
        let m = gizmo_measure(&two, &spec(&[2]), SeriesPolicy::default()).unwrap();
        assert_eq!(*m.value(), int(6));
    }

    #[test]
    fn zero_selection_rejected() {
        assert!(GizmoSpec::new(vec![2, 0]).is_err());
    }
}
