//! Exact power-series prefixes and their rational continuation.
//!
//! An Euler series is only ever known through a finite prefix `c_0..c_K`.
//! [`min_recurrence`] runs Berlekamp–Massey over the rationals on the first
//! half of the prefix and accepts the result only if it reproduces every
//! remaining coefficient exactly; [`to_rational_function`] turns the verified
//! recurrence into a closed form, and [`RationalFunction::eval_at_one`] gives
//! the regularized value.

mod polynomial;
mod rational_function;

pub use polynomial::Polynomial;
pub use rational_function::RationalFunction;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{exact_string, int, Rational};

/// Highest coefficient index used when none is requested.
pub const DEFAULT_TERMS: usize = 24;
pub const DEFAULT_MAX_ORDER: usize = 8;

/// How much of a series to compute and how large a recurrence to look for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesPolicy {
    /// Highest coefficient index `K`; prefixes hold `K + 1` terms.
    pub terms: usize,
    pub max_order: usize,
}

impl Default for SeriesPolicy {
    fn default() -> Self {
        Self {
            terms: DEFAULT_TERMS,
            max_order: DEFAULT_MAX_ORDER,
        }
    }
}

impl SeriesPolicy {
    /// Widens the policy so that a recurrence of order `order_bound` is fitted
    /// on a window of at least twice its order and checked on as many again.
    pub fn widened_for(self, order_bound: usize) -> Self {
        Self {
            terms: self.terms.max(4 * order_bound + 4),
            max_order: self.max_order.max(order_bound),
        }
    }
}

/// Known coefficients `c_0..c_K` of a series in a named grading variable.
///
/// A terminating prefix is a polynomial: every coefficient past the end is
/// known to be zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSeriesPrefix")]
pub struct SeriesPrefix {
    #[serde(with = "exact_string::vec")]
    coeffs: Vec<Rational>,
    grading: String,
    terminating: bool,
}

#[derive(Deserialize)]
struct RawSeriesPrefix {
    #[serde(with = "exact_string::vec")]
    coeffs: Vec<Rational>,
    grading: String,
    terminating: bool,
}

impl TryFrom<RawSeriesPrefix> for SeriesPrefix {
    type Error = Error;

    fn try_from(raw: RawSeriesPrefix) -> Result<Self> {
        let mut prefix = Self::new(raw.coeffs, raw.grading)?;
        prefix.terminating = raw.terminating;
        Ok(prefix)
    }
}

impl SeriesPrefix {
    pub fn new(coeffs: Vec<Rational>, grading: impl Into<String>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput(
                "a series prefix needs at least one term".into(),
            ));
        }
        Ok(Self {
            coeffs,
            grading: grading.into(),
            terminating: false,
        })
    }

    /// A finite series: coefficients beyond the given ones are zero.
    pub fn polynomial(coeffs: Vec<Rational>, grading: impl Into<String>) -> Result<Self> {
        let mut prefix = Self::new(coeffs, grading)?;
        prefix.terminating = true;
        Ok(prefix)
    }

    pub fn from_ints(coeffs: &[i64], grading: impl Into<String>) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| int(c)).collect(), grading)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn grading(&self) -> &str {
        &self.grading
    }

    pub fn is_terminating(&self) -> bool {
        self.terminating
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    fn check_grading(&self, other: &Self) -> Result<()> {
        if self.grading != other.grading {
            return Err(Error::InvalidInput(format!(
                "grading mismatch: {} vs {}",
                self.grading, other.grading
            )));
        }
        Ok(())
    }

    /// Number of coefficients that are determined when combining two prefixes.
    fn known_len(&self, other: &Self, full: usize) -> usize {
        match (self.terminating, other.terminating) {
            (true, true) => full,
            (true, false) => other.len(),
            (false, true) => self.len(),
            (false, false) => self.len().min(other.len()),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_grading(other)?;
        let n = self.known_len(other, self.len().max(other.len()));
        Ok(Self {
            coeffs: (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect(),
            grading: self.grading.clone(),
            terminating: self.terminating && other.terminating,
        })
    }

    pub fn scale(&self, by: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * by).collect(),
            grading: self.grading.clone(),
            terminating: self.terminating,
        }
    }

    /// Product of the two series, kept only as far as both factors are known.
    pub fn cauchy_multiply(&self, other: &Self) -> Result<Self> {
        self.check_grading(other)?;
        let n = self.known_len(other, self.len() + other.len() - 1);
        let coeffs = (0..n)
            .map(|k| {
                (0..=k)
                    .map(|i| self.coeff(i) * other.coeff(k - i))
                    .fold(Rational::zero(), |acc, x| acc + x)
            })
            .collect();
        Ok(Self {
            coeffs,
            grading: self.grading.clone(),
            terminating: self.terminating && other.terminating,
        })
    }

    pub fn truncate(&self, len: usize) -> Result<Self> {
        let len = len.min(self.len());
        if len == 0 {
            return Err(Error::InvalidInput("cannot truncate to zero terms".into()));
        }
        Ok(Self {
            coeffs: self.coeffs[..len].to_vec(),
            grading: self.grading.clone(),
            terminating: false,
        })
    }
}

/// The binomial series `(1 + lam·t)^m` with its closed form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinomialSeries {
    pub prefix: SeriesPrefix,
    pub closed_form: RationalFunction,
}

/// Coefficients `binom(m, k)·lam^k` for `k = 0..=terms`, and the closed form
/// (a polynomial for `m ≥ 0`, otherwise `1/(1 + lam·t)^(-m)`).
pub fn binomial_prefix(m: i64, lam: &Rational, terms: usize) -> BinomialSeries {
    let mut coeffs = Vec::with_capacity(terms + 1);
    let mut c = Rational::one();
    for k in 0..=terms {
        coeffs.push(c.clone());
        c = c * lam * int(m - k as i64) / int(k as i64 + 1);
    }
    let base = Polynomial::linear(lam.clone());
    let power = base.pow(m.unsigned_abs() as u32);
    let closed_form = if m >= 0 {
        RationalFunction::from_polynomial(power)
    } else {
        RationalFunction::new(Polynomial::one(), power).expect("1 + lam·t has unit constant term")
    };
    let prefix = if m >= 0 && terms as i64 >= m {
        SeriesPrefix::polynomial(coeffs, "t")
    } else {
        SeriesPrefix::new(coeffs, "t")
    }
    .expect("binomial prefix is non-empty");
    BinomialSeries {
        prefix,
        closed_form,
    }
}

/// `c_k = Σ taps[i-1]·c_{k-i}` for every `k ≥ order`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Recurrence {
    pub order: usize,
    #[serde(with = "exact_string::vec")]
    pub taps: Vec<Rational>,
    /// Number of leading coefficients the recurrence was fitted on.
    pub fit_terms: usize,
    /// Total number of coefficients it was checked against.
    pub verified_terms: usize,
}

impl Recurrence {
    pub fn predicts(&self, coeffs: &[Rational], k: usize) -> Rational {
        self.taps
            .iter()
            .enumerate()
            .map(|(i, tap)| tap * &coeffs[k - i - 1])
            .fold(Rational::zero(), |acc, x| acc + x)
    }

    /// The denominator `1 - Σ taps[i-1]·t^i` encoding this recurrence.
    pub fn characteristic(&self) -> Polynomial {
        let mut coeffs = vec![Rational::one()];
        coeffs.extend(self.taps.iter().map(|t| -t));
        Polynomial::new(coeffs)
    }
}

/// Berlekamp–Massey over the rationals: the shortest linear recurrence
/// generating `seq`, as `(length, taps)`.
fn berlekamp_massey(seq: &[Rational]) -> (usize, Vec<Rational>) {
    let mut conn = vec![Rational::one()];
    let mut prev = vec![Rational::one()];
    let mut len = 0usize;
    let mut shift = 1usize;
    let mut prev_disc = Rational::one();

    for n in 0..seq.len() {
        let disc = (1..=len)
            .filter(|&i| i < conn.len())
            .map(|i| &conn[i] * &seq[n - i])
            .fold(seq[n].clone(), |acc, x| acc + x);
        if disc.is_zero() {
            shift += 1;
            continue;
        }
        let factor = &disc / &prev_disc;
        let mut next = conn.clone();
        if next.len() < prev.len() + shift {
            next.resize(prev.len() + shift, Rational::zero());
        }
        for (i, p) in prev.iter().enumerate() {
            next[i + shift] -= &factor * p;
        }
        if 2 * len <= n {
            prev = std::mem::replace(&mut conn, next);
            len = n + 1 - len;
            prev_disc = disc;
            shift = 1;
        } else {
            conn = next;
            shift += 1;
        }
    }

    let taps = (1..=len)
        .map(|i| conn.get(i).map(|c| -c).unwrap_or_else(Rational::zero))
        .collect();
    (len, taps)
}

/// The minimal recurrence of order at most `max_order` that is fitted on the
/// first `max(⌈n/2⌉, 2·max_order)` coefficients and reproduces all `n`
/// supplied coefficients. At least two coefficients are always held out.
///
/// Returns `Ok(None)` when the recurrence fitted on the window is longer than
/// `max_order` or mispredicts a held-out coefficient.
pub fn min_recurrence(prefix: &SeriesPrefix, max_order: usize) -> Result<Option<Recurrence>> {
    let n = prefix.len();
    if n < 2 * max_order + 2 {
        return Err(Error::InvalidInput(format!(
            "prefix of {n} terms is too short for max_order {max_order} (need {})",
            2 * max_order + 2
        )));
    }
    let coeffs = prefix.coeffs();
    let window = n.div_ceil(2).max(2 * max_order);
    let (order, taps) = berlekamp_massey(&coeffs[..window]);
    if order > max_order {
        return Ok(None);
    }
    let rec = Recurrence {
        order,
        taps,
        fit_terms: window,
        verified_terms: n,
    };
    let verified = (order..n).all(|k| rec.predicts(coeffs, k) == coeffs[k]);
    Ok(verified.then_some(rec))
}

/// The rational function whose denominator encodes `rec` and whose Taylor
/// expansion starts with `prefix`.
pub fn to_rational_function(prefix: &SeriesPrefix, rec: &Recurrence) -> Result<RationalFunction> {
    if prefix.len() < rec.order {
        return Err(Error::Internal(format!(
            "prefix of {} terms shorter than recurrence order {}",
            prefix.len(),
            rec.order
        )));
    }
    let den = rec.characteristic();
    let num: Vec<Rational> = (0..rec.order)
        .map(|k| {
            (0..=k)
                .map(|i| den.coeff(i) * &prefix.coeffs()[k - i])
                .fold(Rational::zero(), |acc, x| acc + x)
        })
        .collect();
    let rf = RationalFunction::new(Polynomial::new(num), den)?;
    if rf.expand(prefix.len()) != prefix.coeffs() {
        return Err(Error::Internal(format!(
            "closed form {rf} does not re-expand to the supplied prefix"
        )));
    }
    Ok(rf)
}

/// Outcome of continuing a series prefix to `t = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Regularization {
    pub recurrence: Recurrence,
    pub closed_form: RationalFunction,
    pub value: Rational,
}

/// Fits, converts and evaluates at `t = 1`, clamping `max_order` to what the
/// prefix length can support.
pub fn regularize(prefix: &SeriesPrefix, max_order: usize) -> Result<Regularization> {
    let supported = prefix.len().saturating_sub(2) / 2;
    let max_order = max_order.min(supported);
    let recurrence = min_recurrence(prefix, max_order)?.ok_or(Error::NoRecurrence {
        max_order,
        terms: prefix.len(),
    })?;
    let closed_form = to_rational_function(prefix, &recurrence)?;
    let value = closed_form.eval_at_one()?;
    Ok(Regularization {
        recurrence,
        closed_form,
        value,
    })
}
