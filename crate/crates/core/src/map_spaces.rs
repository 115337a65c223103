//! Graded measures of map spaces from one-dimensional domains.
//!
//! A map out of an open interval is graded by its number of breakpoints.
//! With the breakpoints fixed at `x_1 < … < x_k`, a map into a finite set is
//! the word `v_0, (u_1, v_1), …, (u_k, v_k)` of values on the pieces
//! `(·, x_1), {x_1}, (x_1, x_2), …`, and `x_i` is a breakpoint unless
//! `u_i = v_i = v_{i-1}`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::choose::CellSketch;
use crate::error::{Error, Result};
use crate::interval_sets::PolyhedralSet;
use crate::partitions::{binomial, gen_binomial};
use crate::rational::{from_bigint, int, pow_i64, Rational};
use crate::series::{
    regularize, Polynomial, RationalFunction, Regularization, SeriesPolicy, SeriesPrefix,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMode {
    Formula,
    Brute,
}

/// Breakpoint masks of every map into `{0..bsize}` whose breakpoints lie among
/// the given fixed points. `segments[c]` is the number of fixed points in the
/// `c`-th domain interval; mask bits run over all fixed points in order.
fn breakpoint_masks(bsize: usize, segments: &[usize], cap: u64) -> Result<Vec<u32>> {
    let total_breaks: usize = segments.iter().sum();
    if total_breaks > 31 {
        return Err(Error::ResourceLimit(
            "too many breakpoints for brute force".into(),
        ));
    }
    let word_len: usize = segments.iter().map(|k| 2 * k + 1).sum();
    let size = (bsize as u128).checked_pow(word_len as u32);
    if size.is_none_or(|s| s > cap as u128) {
        return Err(Error::ResourceLimit(format!(
            "{bsize}^{word_len} maps exceeds the brute-force cap of {cap}"
        )));
    }
    let mut masks = Vec::new();
    let mut word = vec![0usize; word_len];
    loop {
        let mut mask = 0u32;
        let mut pos = 0;
        let mut bit = 0;
        for &k in segments {
            let mut prev = word[pos];
            pos += 1;
            for _ in 0..k {
                let (at, after) = (word[pos], word[pos + 1]);
                if !(at == prev && after == prev) {
                    mask |= 1 << bit;
                }
                prev = after;
                pos += 2;
                bit += 1;
            }
        }
        masks.push(mask);

        // odometer step
        let mut i = 0;
        loop {
            if i == word_len {
                return Ok(masks);
            }
            word[i] += 1;
            if word[i] < bsize {
                break;
            }
            word[i] = 0;
            i += 1;
        }
    }
}

fn full_mask(bits: usize) -> u32 {
    if bits == 0 {
        0
    } else {
        u32::MAX >> (32 - bits)
    }
}

/// Maps from one open interval into a `bsize`-point set with exactly `k`
/// given breakpoints: `bsize·(bsize² - 1)^k`.
pub fn finite_map_count(bsize: usize, k: usize, mode: CountMode, cap: u64) -> Result<BigInt> {
    finite_map_count_multi(bsize, &[k], mode, cap)
}

/// As [`finite_map_count`] for a domain of several open intervals, with
/// `distribution[c]` breakpoints fixed in the `c`-th interval.
pub fn finite_map_count_multi(
    bsize: usize,
    distribution: &[usize],
    mode: CountMode,
    cap: u64,
) -> Result<BigInt> {
    if bsize == 0 {
        return Err(Error::InvalidInput("codomain must be non-empty".into()));
    }
    match mode {
        CountMode::Formula => {
            let b = BigInt::from(bsize);
            let k: usize = distribution.iter().sum();
            Ok(num_traits::pow(b.clone(), distribution.len()) * num_traits::pow(&b * &b - 1, k))
        }
        CountMode::Brute => {
            let full = full_mask(distribution.iter().sum());
            let masks = breakpoint_masks(bsize, distribution, cap)?;
            Ok(BigInt::from(masks.iter().filter(|&&m| m == full).count()))
        }
    }
}

/// Series data and regularized value for a map space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapSpaceMeasure {
    pub domain_chi: i64,
    pub codomain_chi: i64,
    /// `n_k`: measure of the maps with a fixed `k`-point breakpoint set.
    pub breakpoint_counts: Vec<BigInt>,
    pub prefix: SeriesPrefix,
    /// Closed form derived by hand, when one is known.
    pub expected_closed_form: Option<RationalFunction>,
    pub regularization: Regularization,
}

impl MapSpaceMeasure {
    pub fn value(&self) -> &Rational {
        &self.regularization.value
    }
}

fn series_from_counts(domain_chi: i64, counts: &[BigInt], grading: &str) -> Result<SeriesPrefix> {
    let chi = int(domain_chi);
    let coeffs = counts
        .iter()
        .enumerate()
        .map(|(k, n)| gen_binomial(&chi, k) * from_bigint(n.clone()))
        .collect();
    SeriesPrefix::new(coeffs, grading)
}

fn check_closed_form(found: &RationalFunction, expected: &RationalFunction) -> Result<()> {
    if found != expected {
        return Err(Error::Internal(format!(
            "fitted closed form {found} differs from the derived form {expected}"
        )));
    }
    Ok(())
}

/// Hedral maps from a union of `p` open intervals into a `bsize`-point set.
///
/// Regularized value `bsize^(-p) = χ(B)^χ(A)`.
pub fn hedral_map_measure(
    domain: &PolyhedralSet,
    bsize: usize,
    policy: SeriesPolicy,
) -> Result<MapSpaceMeasure> {
    if bsize == 0 {
        return Err(Error::InvalidInput("codomain must be non-empty".into()));
    }
    if domain.classify().has_isolated_points || domain.point_count() > 0 {
        return Err(Error::Unsupported(format!(
            "domain {domain} must be a union of open intervals (no isolated or boundary points)"
        )));
    }
    let p = domain.open_count();
    let b = BigInt::from(bsize);
    let lam: BigInt = &b * &b - 1;
    let policy = policy.widened_for(p + 1);
    let scale = num_traits::pow(b.clone(), p);
    let counts: Vec<BigInt> = (0..=policy.terms)
        .map(|k| &scale * num_traits::pow(lam.clone(), k))
        .collect();
    let prefix = series_from_counts(-(p as i64), &counts, "breakpoints")?;
    let regularization = regularize(&prefix, policy.max_order)?;

    let expected = RationalFunction::new(
        Polynomial::constant(from_bigint(scale)),
        Polynomial::linear(from_bigint(lam)).pow(p as u32),
    )?;
    check_closed_form(&regularization.closed_form, &expected)?;
    Ok(MapSpaceMeasure {
        domain_chi: -(p as i64),
        codomain_chi: bsize as i64,
        breakpoint_counts: counts,
        prefix,
        expected_closed_form: Some(expected),
        regularization,
    })
}

/// Largest `k` whose brute-force map enumeration stays within `cap`.
pub fn max_brute_breakpoints(bsize: usize, cap: u64) -> usize {
    let mut k = 0;
    while k < 20
        && (bsize as u128)
            .checked_pow(2 * (k as u32 + 1) + 1)
            .is_some_and(|s| s <= cap as u128)
    {
        k += 1;
    }
    k
}

/// Unordered pairs `{f, g}`, `f ≠ g`, of maps `(0,1) → {0..bsize}` whose
/// breakpoint sets together cover exactly `k` fixed points.
pub fn map_pair_count(bsize: usize, k: usize, cap: u64) -> Result<BigInt> {
    let masks = breakpoint_masks(bsize, &[k], cap)?;
    let mut hist = vec![0u64; 1 << k];
    for m in masks {
        hist[m as usize] += 1;
    }
    let full = full_mask(k) as usize;
    let mut ordered: u128 = 0;
    for (m1, &h1) in hist.iter().enumerate() {
        if h1 == 0 {
            continue;
        }
        for (m2, &h2) in hist.iter().enumerate() {
            if m1 | m2 == full {
                ordered += h1 as u128 * h2 as u128;
            }
        }
    }
    // drop f = g (only possible when f alone covers the full set)
    ordered -= hist[full] as u128;
    Ok(BigInt::from(ordered / 2))
}

/// Pairs of distinct maps from `(0,1)` into a `bsize`-point set, graded by
/// the size of the union of their breakpoint sets, counted by brute force
/// for `k = 0..=terms`.
pub fn map_pair_measure(
    bsize: usize,
    terms: usize,
    max_order: usize,
    cap: u64,
) -> Result<MapSpaceMeasure> {
    if bsize == 0 {
        return Err(Error::InvalidInput("codomain must be non-empty".into()));
    }
    let counts = (0..=terms)
        .map(|k| map_pair_count(bsize, k, cap))
        .collect::<Result<Vec<_>>>()?;
    let prefix = series_from_counts(-1, &counts, "breakpoints")?;
    let regularization = regularize(&prefix, max_order)?;
    Ok(MapSpaceMeasure {
        domain_chi: -1,
        codomain_chi: bsize as i64,
        breakpoint_counts: counts,
        prefix,
        expected_closed_form: None,
        regularization,
    })
}

/// The space of affine maps `(0,1) → B`, as pairs of endpoint values
/// `(w, w')` whose segment stays in `B`.
///
/// For compact `B` this is the disjoint union over components `C` of `C × C`:
/// a closed square per interval component, a point per point component.
pub fn affine_pair_space(codomain: &PolyhedralSet) -> Result<CellSketch> {
    let info = codomain.classify();
    if !info.compact {
        return Err(Error::Unsupported(format!(
            "codomain {codomain} must be compact"
        )));
    }
    let mut sketch = CellSketch::new();
    for component in &info.components {
        if component.is_point() {
            sketch.push_cells(0, 1);
        } else {
            sketch.push_cells(2, 1);
            sketch.push_cells(1, 4);
            sketch.push_cells(0, 4);
        }
    }
    Ok(sketch)
}

/// Codomain of a polyhedral map space out of `(0,1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SchanuelCodomain {
    Concrete(PolyhedralSet),
    Symbolic(i64),
}

/// Polyhedral maps `(0,1) → B` for bounded `B`.
///
/// With breakpoints allowed in a `k`-set the space has measure `χ(B)^(2k+1)`;
/// inverting over subsets gives `χ(B)·(χ(B)² - 1)^k` for an exact breakpoint
/// set, and the series continues to `χ(B)/(1 + (χ(B)² - 1)t)`.
pub fn schanuel_measure(
    codomain: &SchanuelCodomain,
    policy: SeriesPolicy,
) -> Result<MapSpaceMeasure> {
    let chi_b = match codomain {
        SchanuelCodomain::Symbolic(chi) => *chi,
        SchanuelCodomain::Concrete(set) => {
            let per_interval = affine_pair_space(set)?.measure();
            if per_interval != set.euler_measure() {
                return Err(Error::Internal(format!(
                    "affine map space of {set} has measure {per_interval}, expected χ(B) = {}",
                    set.euler_measure()
                )));
            }
            per_interval
        }
    };
    let policy = policy.widened_for(2);
    let x = BigInt::from(chi_b);
    let counts: Vec<BigInt> = (0..=policy.terms)
        .map(|k| {
            (0..=k)
                .map(|j| {
                    let term = binomial(k, j) * num_traits::pow(x.clone(), 2 * j + 1);
                    if (k - j) % 2 == 0 {
                        term
                    } else {
                        -term
                    }
                })
                .sum()
        })
        .collect();
    let prefix = series_from_counts(-1, &counts, "breakpoints")?;
    let regularization = regularize(&prefix, policy.max_order)?;

    let expected = RationalFunction::new(
        Polynomial::constant(int(chi_b)),
        Polynomial::linear(int(chi_b * chi_b - 1)),
    )?;
    check_closed_form(&regularization.closed_form, &expected)?;
    let target = if chi_b == 0 {
        Rational::zero()
    } else {
        pow_i64(&int(chi_b), -1).unwrap_or_else(Rational::one)
    };
    if regularization.value != target {
        return Err(Error::Internal(format!(
            "regularized value {} differs from {target}",
            regularization.value
        )));
    }
    Ok(MapSpaceMeasure {
        domain_chi: -1,
        codomain_chi: chi_b,
        breakpoint_counts: counts,
        prefix,
        expected_closed_form: Some(expected),
        regularization,
    })
}
