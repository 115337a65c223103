//! Runs the library's invariants at desk scale and reports pass/fail per
//! invariant. Random inputs come from a fixed seed so runs are reproducible.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::choose::{choose_cells, ordered_distinct_measure};
use crate::error::Error;
use crate::fibonacci::{default_policy, extended_fibonacci, fibonacci_measure, placement_is_valid};
use crate::gizmos::{
    gizmo_brute_force, gizmo_fit, gizmo_measure, gizmo_support_count, gizmo_support_histogram,
    GizmoSpec,
};
use crate::interval_sets::{Literal, PolyhedralSet};
use crate::map_spaces::{
    finite_map_count, finite_map_count_multi, hedral_map_measure, map_pair_count, schanuel_measure,
    CountMode, SchanuelCodomain,
};
use crate::partitions::{
    binomial, factorial, falling_factorial, gen_binomial, iterated_binomial,
    iterated_binomial_polynomial, partitions_of,
};
use crate::rational::{from_bigint, int, pow_i64, rat, ExtendedRational, Rational};
use crate::series::{
    binomial_prefix, min_recurrence, to_rational_function, Polynomial, RationalFunction,
    SeriesPolicy, SeriesPrefix,
};
use crate::Limits;

const SEED: u64 = 0x5eed_e1e7;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    IntervalSets,
    ExactSeries,
    PartitionCombinatorics,
    ChooseConstruction,
    PowerGizmos,
    MapSpaces,
    FibonacciSubsets,
}

impl Scope {
    pub const ALL: [Scope; 7] = [
        Scope::IntervalSets,
        Scope::ExactSeries,
        Scope::PartitionCombinatorics,
        Scope::ChooseConstruction,
        Scope::PowerGizmos,
        Scope::MapSpaces,
        Scope::FibonacciSubsets,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scope::IntervalSets => "interval_sets",
            Scope::ExactSeries => "exact_series",
            Scope::PartitionCombinatorics => "partition_combinatorics",
            Scope::ChooseConstruction => "choose_construction",
            Scope::PowerGizmos => "power_gizmos",
            Scope::MapSpaces => "map_spaces",
            Scope::FibonacciSubsets => "fibonacci_subsets",
        }
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Scope::ALL
            .into_iter()
            .find(|scope| scope.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Scope::ALL.iter().map(|s| s.name()).collect();
                Error::InvalidInput(format!(
                    "unknown scope {s:?}; expected one of {}",
                    names.join(", ")
                ))
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub scope: Scope,
    pub name: String,
    pub passed: bool,
    /// Summary on success, counterexample on failure.
    pub detail: String,
}

struct Recorder {
    scope: Scope,
    checks: Vec<Check>,
}

impl Recorder {
    fn new(scope: Scope) -> Self {
        Self {
            scope,
            checks: Vec::new(),
        }
    }

    /// Records the outcome of `body`, which returns a summary or a
    /// counterexample description.
    fn check(&mut self, name: &str, body: impl FnOnce() -> Result<String, String>) {
        let (passed, detail) = match body() {
            Ok(summary) => (true, summary),
            Err(counterexample) => (false, counterexample),
        };
        self.checks.push(Check {
            scope: self.scope,
            name: name.to_string(),
            passed,
            detail,
        });
    }
}

fn fail_on<E: fmt::Display>(e: E) -> String {
    format!("error: {e}")
}

/// Runs every invariant of the given scopes.
pub fn run(scopes: &[Scope], limits: &Limits) -> Vec<Check> {
    let mut out = Vec::new();
    for &scope in scopes {
        let mut rec = Recorder::new(scope);
        match scope {
            Scope::IntervalSets => interval_checks(&mut rec),
            Scope::ExactSeries => series_checks(&mut rec),
            Scope::PartitionCombinatorics => partition_checks(&mut rec, limits),
            Scope::ChooseConstruction => choose_checks(&mut rec, limits),
            Scope::PowerGizmos => gizmo_checks(&mut rec, limits),
            Scope::MapSpaces => map_checks(&mut rec, limits),
            Scope::FibonacciSubsets => fibonacci_checks(&mut rec, limits),
        }
        out.extend(rec.checks);
    }
    out
}

/// A random set built from up to four literals with half-integer endpoints
/// in `[-4, 4]`.
pub fn random_set(rng: &mut impl Rng) -> PolyhedralSet {
    let n = rng.gen_range(0..=4);
    let mut literals = Vec::with_capacity(n);
    for _ in 0..n {
        let a = rng.gen_range(-8..8);
        let b = rng.gen_range(a + 1..=8);
        let (lo, hi) = (rat(a, 2), rat(b, 2));
        let literal = match rng.gen_range(0..4) {
            0 => Literal::Point(lo),
            1 => Literal::open(lo, hi),
            2 => Literal::closed(lo, hi),
            _ => Literal::Interval {
                lo: if rng.gen_bool(0.2) {
                    ExtendedRational::NegInfinity
                } else {
                    lo.into()
                },
                hi: hi.into(),
                lo_closed: false,
                hi_closed: true,
            },
        };
        literals.push(literal);
    }
    PolyhedralSet::canonicalize(&literals).expect("generated literals are well-formed")
}

/// Sets with Euler measure from -4 to 4 and varied structure.
pub fn sample_family() -> Vec<PolyhedralSet> {
    [
        "{}",
        "(0,1)",
        "(0,1) u (2,3)",
        "(0,1) u (2,3) u (4,5)",
        "(0,1) u (2,3) u (4,5) u (6,7)",
        "{0}",
        "{0, 1}",
        "{0, 1, 2}",
        "{0, 1, 2, 3}",
        "[0,1]",
        "[0,1)",
        "(0,1) u {5}",
        "[0,1] u [2,3]",
        "[0,1] u (2,3) u (4,5) u (6,7) u {9}",
        "(-inf,0) u {1, 2}",
        "(-inf,inf)",
    ]
    .iter()
    .map(|s| s.parse().expect("family literal parses"))
    .collect()
}

fn interval_checks(rec: &mut Recorder) {
    let mut rng = StdRng::seed_from_u64(SEED);
    let pairs: Vec<(PolyhedralSet, PolyhedralSet)> = (0..300)
        .map(|_| (random_set(&mut rng), random_set(&mut rng)))
        .collect();

    rec.check("valuation law on random pairs", || {
        for (a, b) in &pairs {
            let lhs = a.union(b).euler_measure();
            let rhs = a.euler_measure() + b.euler_measure() - a.intersection(b).euler_measure();
            if lhs != rhs {
                return Err(format!("A = {a}, B = {b}: χ(A∪B) = {lhs}, expected {rhs}"));
            }
        }
        Ok(format!("{} random pairs", pairs.len()))
    });

    rec.check("m-ary inclusion-exclusion (m = 3, 4)", || {
        let mut rng = StdRng::seed_from_u64(SEED + 1);
        for trial in 0..200 {
            let m = 3 + trial % 2;
            let sets: Vec<PolyhedralSet> = (0..m).map(|_| random_set(&mut rng)).collect();
            let union = sets
                .iter()
                .fold(PolyhedralSet::empty(), |acc, s| acc.union(s));
            let mut total = 0i64;
            for mask in 1u32..(1 << m) {
                let inter = (0..m)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| sets[i].clone())
                    .reduce(|acc, s| acc.intersection(&s))
                    .expect("non-empty selection");
                let sign = if mask.count_ones() % 2 == 1 { 1 } else { -1 };
                total += sign * inter.euler_measure();
            }
            if total != union.euler_measure() {
                let shown: Vec<String> = sets.iter().map(|s| s.to_string()).collect();
                return Err(format!(
                    "sets {shown:?}: sum {total} vs χ(union) {}",
                    union.euler_measure()
                ));
            }
        }
        Ok("200 random families".into())
    });

    rec.check("complement law χ(A) + χ(!A) = -1", || {
        for (a, _) in &pairs {
            let total = a.euler_measure() + a.complement().euler_measure();
            if total != -1 {
                return Err(format!("A = {a}: got {total}"));
            }
        }
        Ok(format!("{} random sets", pairs.len()))
    });

    rec.check(
        "canonical form is idempotent and closed under operations",
        || {
            for (a, b) in &pairs {
                for result in [
                    a.union(b),
                    a.intersection(b),
                    a.difference(b),
                    a.complement(),
                ] {
                    let again = PolyhedralSet::from_pieces(result.pieces()).map_err(fail_on)?;
                    if again != result {
                        return Err(format!("{result} re-canonicalizes to {again}"));
                    }
                    let reparsed: PolyhedralSet = result.to_string().parse().map_err(fail_on)?;
                    if reparsed != result {
                        return Err(format!("{result} re-parses to {reparsed}"));
                    }
                }
            }
            Ok(format!(
                "{} random pairs, four operations each",
                pairs.len()
            ))
        },
    );

    rec.check("finite sets: measure equals cardinality", || {
        let mut rng = StdRng::seed_from_u64(SEED + 2);
        for _ in 0..100 {
            let n = rng.gen_range(0..8);
            let set = PolyhedralSet::points((0..n).map(|_| rat(rng.gen_range(-20..20), 3)));
            let card = set
                .classify()
                .cardinality
                .ok_or("finite set not classified finite")?;
            if set.euler_measure() != card as i64 {
                return Err(format!("{set}: χ {} vs |A| {card}", set.euler_measure()));
            }
        }
        Ok("100 random finite sets".into())
    });

    rec.check("translation invariance", || {
        let mut rng = StdRng::seed_from_u64(SEED + 3);
        for (a, _) in &pairs {
            let shift = rat(rng.gen_range(-50..50), rng.gen_range(1..7));
            if a.shifted(&shift).euler_measure() != a.euler_measure() {
                return Err(format!("A = {a}, shift {shift}"));
            }
        }
        Ok(format!("{} random sets", pairs.len()))
    });
}

fn random_polynomial(rng: &mut impl Rng, degree: usize, unit_constant: bool) -> Polynomial {
    let mut coeffs: Vec<Rational> = (0..=degree)
        .map(|_| rat(rng.gen_range(-5..=5), rng.gen_range(1..=3)))
        .collect();
    if unit_constant {
        coeffs[0] = Rational::one();
    }
    if coeffs[degree].is_zero() {
        coeffs[degree] = Rational::one();
    }
    Polynomial::new(coeffs)
}

fn series_checks(rec: &mut Recorder) {
    rec.check("recurrence round trip on random rational functions", || {
        let mut rng = StdRng::seed_from_u64(SEED + 10);
        for _ in 0..60 {
            let (dn, dd) = (rng.gen_range(0..=3), rng.gen_range(1..=3));
            let num = random_polynomial(&mut rng, dn, false);
            let den = random_polynomial(&mut rng, dd, true);
            let rf = RationalFunction::new(num, den).map_err(fail_on)?;
            let num_len = rf.numerator().degree().map_or(0, |d| d + 1);
            let den_deg = rf.denominator().degree().unwrap_or(0);
            let order = num_len.max(den_deg);
            let n = 4 * order + 4;
            let prefix = SeriesPrefix::new(rf.expand(n), "t").map_err(fail_on)?;
            let found = min_recurrence(&prefix, order)
                .map_err(fail_on)?
                .ok_or_else(|| format!("{rf}: no recurrence found"))?;
            let back = to_rational_function(&prefix, &found).map_err(fail_on)?;
            if back != rf {
                return Err(format!("{rf} came back as {back}"));
            }
        }
        Ok("60 random rational functions".into())
    });

    rec.check("binomial coefficients satisfy the ratio recurrence", || {
        for m in -4..=4i64 {
            for lam in [int(1), int(3), rat(-1, 2), rat(5, 3)] {
                let s = binomial_prefix(m, &lam, 12);
                let c = s.prefix.coeffs();
                for k in 0..12 {
                    let next = &c[k] * &lam * int(m - k as i64) / int(k as i64 + 1);
                    if c[k + 1] != next {
                        return Err(format!("m = {m}, lam = {lam}, k = {k}"));
                    }
                    if c[k] != gen_binomial(&int(m), k) * pow_i64(&lam, k as i64).unwrap() {
                        return Err(format!(
                            "m = {m}, lam = {lam}, k = {k}: not binom(m,k)·lam^k"
                        ));
                    }
                }
            }
        }
        Ok("m in -4..4, four values of lam".into())
    });

    rec.check("continued binomial series evaluates to (1 + lam)^m", || {
        for m in -4..0i64 {
            for lam in [int(1), int(3), int(15), rat(1, 2), rat(-1, 3)] {
                let s = binomial_prefix(m, &lam, 24);
                let reg = crate::series::regularize(&s.prefix, 8).map_err(fail_on)?;
                let want = pow_i64(&(Rational::one() + &lam), m).unwrap();
                if reg.value != want || reg.closed_form != s.closed_form {
                    return Err(format!("m = {m}, lam = {lam}: got {}", reg.value));
                }
            }
        }
        Ok("m in -4..-1, five values of lam".into())
    });
}

fn partition_checks(rec: &mut Recorder, limits: &Limits) {
    rec.check(
        "Möbius sum over Π_k equals the falling factorial (k ≤ 6)",
        || {
            let mut rng = StdRng::seed_from_u64(SEED + 20);
            let xs: Vec<Rational> = (0..20)
                .map(|_| rat(rng.gen_range(-30..30), rng.gen_range(1..8)))
                .collect();
            for k in 0..=6 {
                let parts = partitions_of(k, limits.partitions).map_err(fail_on)?;
                for x in &xs {
                    let sum = parts
                        .iter()
                        .map(|pi| {
                            from_bigint(pi.mobius_bottom())
                                * pow_i64(x, pi.block_count() as i64).unwrap()
                        })
                        .fold(Rational::zero(), |acc, v| acc + v);
                    if sum != falling_factorial(x, k) {
                        return Err(format!("k = {k}, x = {x}: {sum}"));
                    }
                }
            }
            Ok("k = 0..6 at 20 random rationals".into())
        },
    );

    rec.check("generalized binomial agrees with integer binomial", || {
        for m in 0..=12usize {
            for k in 0..=14usize {
                if gen_binomial(&int(m as i64), k) != from_bigint(binomial(m, k)) {
                    return Err(format!("binom({m}, {k})"));
                }
            }
        }
        Ok("0 ≤ m ≤ 12, 0 ≤ k ≤ 14".into())
    });

    rec.check("Pascal's rule at random rationals", || {
        let mut rng = StdRng::seed_from_u64(SEED + 21);
        for _ in 0..100 {
            let x = rat(rng.gen_range(-40..40), rng.gen_range(1..9));
            let k = rng.gen_range(1..8);
            let one = Rational::one();
            let rhs = gen_binomial(&(&x - &one), k) + gen_binomial(&(&x - &one), k - 1);
            if gen_binomial(&x, k) != rhs {
                return Err(format!("x = {x}, k = {k}"));
            }
        }
        Ok("100 random (x, k)".into())
    });
}

fn choose_checks(rec: &mut Recorder, limits: &Limits) {
    let family = sample_family();

    rec.check("cell measure of A choose k equals binom(χ(A), k)", || {
        for a in &family {
            for k in 0..=6 {
                let m = choose_cells(a, k, limits.choose)
                    .map_err(fail_on)?
                    .measure();
                if int(m) != gen_binomial(&int(a.euler_measure()), k) {
                    return Err(format!("A = {a}, k = {k}: {m}"));
                }
            }
        }
        Ok(format!("{} sets, k ≤ 6", family.len()))
    });

    rec.check(
        "ordered distinct tuples: k! copies and falling factorial",
        || {
            for a in &family {
                for k in 0..=6 {
                    let ordered =
                        ordered_distinct_measure(a, k, limits.partitions).map_err(fail_on)?;
                    let cells = choose_cells(a, k, limits.choose)
                        .map_err(fail_on)?
                        .measure();
                    if ordered != factorial(k) * BigInt::from(cells) {
                        return Err(format!("A = {a}, k = {k}: {ordered} vs k!·{cells}"));
                    }
                    if from_bigint(ordered.clone()) != falling_factorial(&int(a.euler_measure()), k)
                    {
                        return Err(format!(
                            "A = {a}, k = {k}: {ordered} is not the falling factorial"
                        ));
                    }
                }
            }
            Ok(format!("{} sets, k ≤ 6", family.len()))
        },
    );

    rec.check("finite sets: cell measure counts k-subsets", || {
        for n in 0..=7usize {
            let a = PolyhedralSet::points((0..n as i64).map(int));
            for k in 0..=n + 1 {
                let brute = (0u32..1 << n)
                    .filter(|s| s.count_ones() as usize == k)
                    .count();
                let m = choose_cells(&a, k, limits.choose)
                    .map_err(fail_on)?
                    .measure();
                if m != brute as i64 {
                    return Err(format!("|A| = {n}, k = {k}: {m} vs {brute}"));
                }
            }
        }
        Ok("|A| ≤ 7".into())
    });
}

pub const ROUTE_CHECK_KS: [&[usize]; 4] = [&[2], &[3], &[2, 2], &[2, 3]];

/// A set with Euler measure `chi`: `chi` points, or `-chi` open intervals.
pub fn set_with_measure(chi: i64) -> PolyhedralSet {
    if chi >= 0 {
        PolyhedralSet::points((0..chi).map(int))
    } else {
        (0..-chi)
            .map(|i| PolyhedralSet::open(2 * i, 2 * i + 1).expect("valid interval"))
            .fold(PolyhedralSet::empty(), |acc, s| acc.union(&s))
    }
}

fn gizmo_checks(rec: &mut Recorder, limits: &Limits) {
    rec.check("support counts match brute-force construction", || {
        for ks in [&[1][..], &[2], &[3], &[2, 2]] {
            let spec = GizmoSpec::new(ks.to_vec()).map_err(fail_on)?;
            for k in 0..=4 {
                let formula = gizmo_support_count(&spec, k);
                let brute = gizmo_brute_force(&spec, k, limits.brute).map_err(fail_on)?;
                if formula != brute {
                    return Err(format!("ks {ks:?}, k = {k}: {formula} vs brute {brute}"));
                }
            }
        }
        Ok("ks ∈ {[1],[2],[3],[2,2]}, k ≤ 4".into())
    });

    rec.check("support count does not depend on the support", || {
        let spec = GizmoSpec::new(vec![2]).map_err(fail_on)?;
        let hist = gizmo_support_histogram(&spec, 3, limits.brute).map_err(fail_on)?;
        let counts: Vec<u64> = [0b011u32, 0b101, 0b110]
            .iter()
            .map(|m| hist.get(m).copied().unwrap_or(0))
            .collect();
        if counts.iter().any(|&c| c != counts[0]) {
            return Err(format!("2-subsets of {{1,2,3}} have counts {counts:?}"));
        }
        Ok(format!("each 2-subset supports {} pairs", counts[0]))
    });

    rec.check(
        "finite A: regularized measure is the exhaustive count",
        || {
            for m in 0..=3usize {
                let a = PolyhedralSet::points((0..m as i64).map(int));
                for ks in [&[2][..], &[3], &[2, 2]] {
                    let spec = GizmoSpec::new(ks.to_vec()).map_err(fail_on)?;
                    let total: u64 = gizmo_support_histogram(&spec, m, limits.brute)
                        .map_err(fail_on)?
                        .values()
                        .sum();
                    let measure =
                        gizmo_measure(&a, &spec, SeriesPolicy::default()).map_err(fail_on)?;
                    if *measure.value() != int(total as i64) {
                        return Err(format!(
                            "|A| = {m}, ks {ks:?}: {} vs {total}",
                            measure.value()
                        ));
                    }
                }
            }
            Ok("|A| ≤ 3".into())
        },
    );

    rec.check(
        "both routes equal the iterated binomial (χ in -3..3)",
        || {
            for chi in -3..=3 {
                let a = set_with_measure(chi);
                for ks in ROUTE_CHECK_KS {
                    let spec = GizmoSpec::new(ks.to_vec()).map_err(fail_on)?;
                    let m = gizmo_measure(&a, &spec, SeriesPolicy::default()).map_err(fail_on)?;
                    let want = iterated_binomial(&pow_i64(&int(2), chi).unwrap(), ks);
                    if m.exponential_value != want || *m.value() != want {
                        return Err(format!(
                            "χ = {chi}, ks {ks:?}: fit {}, series {}, expected {want}",
                            m.exponential_value,
                            m.value()
                        ));
                    }
                }
            }
            Ok("7 Euler measures × 4 gizmos".into())
        },
    );

    rec.check(
        "fitted weights reproduce the iterated binomial polynomial",
        || {
            for ks in [
                &[][..],
                &[1],
                &[2],
                &[3],
                &[2, 2],
                &[2, 3],
                &[3, 2],
                &[2, 2, 2],
            ] {
                let spec = GizmoSpec::new(ks.to_vec()).map_err(fail_on)?;
                let fit = gizmo_fit(&spec).map_err(fail_on)?;
                if fit.polynomial() != iterated_binomial_polynomial(ks) {
                    return Err(format!("ks {ks:?}"));
                }
            }
            Ok("8 gizmo shapes".into())
        },
    );
}

fn map_checks(rec: &mut Recorder, limits: &Limits) {
    rec.check("finite map counts: formula equals brute force", || {
        for b in 1..=4 {
            for k in 0..=3 {
                let brute =
                    finite_map_count(b, k, CountMode::Brute, limits.brute).map_err(fail_on)?;
                let formula =
                    finite_map_count(b, k, CountMode::Formula, limits.brute).map_err(fail_on)?;
                if brute != formula {
                    return Err(format!("|B| = {b}, k = {k}: {brute} vs {formula}"));
                }
            }
        }
        Ok("|B| ≤ 4, k ≤ 3".into())
    });

    rec.check(
        "two-interval domains: breakpoint distribution does not matter",
        || {
            for b in 1..=3 {
                for dist in [[0, 0], [1, 0], [0, 1], [2, 0], [1, 1], [0, 2]] {
                    let brute = finite_map_count_multi(b, &dist, CountMode::Brute, limits.brute)
                        .map_err(fail_on)?;
                    let formula =
                        finite_map_count_multi(b, &dist, CountMode::Formula, limits.brute)
                            .map_err(fail_on)?;
                    if brute != formula {
                        return Err(format!(
                            "|B| = {b}, distribution {dist:?}: {brute} vs {formula}"
                        ));
                    }
                }
            }
            Ok("|B| ≤ 3, k ≤ 2".into())
        },
    );

    rec.check("Boolean-lattice inversion gives x(x²-1)^k", || {
        for k in 0..=8usize {
            let mut inverted = Polynomial::zero();
            for j in 0..=k {
                let sign = if (k - j) % 2 == 0 { 1 } else { -1 };
                let coef = from_bigint(binomial(k, j)) * int(sign);
                inverted = &inverted + &Polynomial::x().pow(2 * j as u32 + 1).scale(&coef);
            }
            let target = &Polynomial::x() * &Polynomial::from_ints(&[-1, 0, 1]).pow(k as u32);
            if inverted != target {
                return Err(format!("k = {k}: {}", inverted.display_in("x")));
            }
        }
        Ok("k ≤ 8".into())
    });

    rec.check("hedral maps: regularized measure is |B|^χ(A)", || {
        for p in 1..=3i64 {
            let a = set_with_measure(-p);
            for b in 1..=4usize {
                let m = hedral_map_measure(&a, b, SeriesPolicy::default()).map_err(fail_on)?;
                let want = pow_i64(&int(b as i64), -p).unwrap();
                if *m.value() != want {
                    return Err(format!("p = {p}, |B| = {b}: {}", m.value()));
                }
            }
        }
        Ok("p ≤ 3, |B| ≤ 4".into())
    });

    rec.check("distinct map pairs into two points: 2·15^k - 3^k", || {
        for k in 0..=3u32 {
            let count = map_pair_count(2, k as usize, limits.brute).map_err(fail_on)?;
            let want = BigInt::from(2 * 15i64.pow(k) - 3i64.pow(k));
            if count != want {
                return Err(format!("k = {k}: {count} vs {want}"));
            }
        }
        Ok("k ≤ 3".into())
    });

    rec.check(
        "finite codomains: polyhedral counts equal hedral counts",
        || {
            for b in 1..=3usize {
                let set = PolyhedralSet::points((0..b as i64).map(int));
                let m = schanuel_measure(&SchanuelCodomain::Concrete(set), SeriesPolicy::default())
                    .map_err(fail_on)?;
                for k in 0..=3 {
                    let brute =
                        finite_map_count(b, k, CountMode::Brute, limits.brute).map_err(fail_on)?;
                    if m.breakpoint_counts[k] != brute {
                        return Err(format!(
                            "|B| = {b}, k = {k}: {} vs {brute}",
                            m.breakpoint_counts[k]
                        ));
                    }
                }
            }
            Ok("|B| ≤ 3, k ≤ 3".into())
        },
    );
}

/// Every subset of a finite set satisfying the parity condition, checked
/// over all pairs `t < t'` with real set operations.
pub fn brute_parity_count(points: &[Rational]) -> (u64, Vec<usize>) {
    let set = PolyhedralSet::points(points.iter().cloned());
    let n = points.len();
    let mut by_size = vec![0usize; n + 1];
    let mut total = 0u64;
    for mask in 0u32..1 << n {
        let chosen: Vec<Rational> = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| points[i].clone())
            .collect();
        let rest = set.difference(&PolyhedralSet::points(chosen.iter().cloned()));
        let mut marks = vec![ExtendedRational::NegInfinity];
        marks.extend(chosen.iter().cloned().map(ExtendedRational::Finite));
        marks.push(ExtendedRational::PosInfinity);
        let ok = marks.iter().enumerate().all(|(i, t)| {
            marks[i + 1..].iter().all(|u| {
                rest.restrict_open(t, u)
                    .map(|g| g.euler_measure() % 2 == 0)
                    .unwrap_or(true)
            })
        });
        if ok {
            total += 1;
            by_size[chosen.len()] += 1;
        }
    }
    (total, by_size)
}

fn fibonacci_checks(rec: &mut Recorder, limits: &Limits) {
    let family = sample_family();

    rec.check("regularized measure is F(χ(P) + 1)", || {
        for p in &family {
            let m = fibonacci_measure(p, default_policy(), limits.fibonacci).map_err(fail_on)?;
            if !m.matches_expected() {
                return Err(format!(
                    "P = {p}: {} vs F({}) = {}",
                    m.value(),
                    m.chi + 1,
                    m.expected
                ));
            }
        }
        Ok(format!("{} sets, χ from -4 to 4", family.len()))
    });

    rec.check("Cassini identity for extended Fibonacci numbers", || {
        for n in -8..=8i64 {
            let lhs = extended_fibonacci(n + 1) * extended_fibonacci(n - 1)
                - extended_fibonacci(n) * extended_fibonacci(n);
            let want = if n % 2 == 0 { 1 } else { -1 };
            if lhs != BigInt::from(want) {
                return Err(format!("n = {n}: {lhs}"));
            }
        }
        Ok("n in -8..8".into())
    });

    rec.check("finite P: exhaustive all-pairs count", || {
        for n in 0..=6usize {
            let points: Vec<Rational> = (0..n as i64).map(int).collect();
            let (total, by_size) = brute_parity_count(&points);
            let set = PolyhedralSet::points(points.iter().cloned());
            let m = fibonacci_measure(&set, default_policy(), limits.fibonacci).map_err(fail_on)?;
            if *m.value() != int(total as i64) {
                return Err(format!("|P| = {n}: {} vs exhaustive {total}", m.value()));
            }
            for (k, &c) in by_size.iter().enumerate() {
                if m.prefix.coeffs()[k] != int(c as i64) {
                    return Err(format!(
                        "|P| = {n}, k = {k}: stratum count {} vs {c}",
                        m.prefix.coeffs()[k]
                    ));
                }
            }
        }
        Ok("|P| ≤ 6".into())
    });

    rec.check("consecutive-gap parity implies all-gap parity", || {
        // realize every placement concretely and compare with the all-pairs test
        for p in &family {
            let pieces = p.pieces();
            for k in 0..=4 {
                for placement in crate::choose::placements(pieces, k) {
                    let chosen = realize(pieces, &placement);
                    let rest = p.difference(&PolyhedralSet::points(chosen.iter().cloned()));
                    let mut marks = vec![ExtendedRational::NegInfinity];
                    marks.extend(chosen.iter().cloned().map(ExtendedRational::Finite));
                    marks.push(ExtendedRational::PosInfinity);
                    let all_pairs = marks.iter().enumerate().all(|(i, t)| {
                        marks[i + 1..].iter().all(|u| {
                            rest.restrict_open(t, u)
                                .map(|g| g.euler_measure() % 2 == 0)
                                .unwrap_or(true)
                        })
                    });
                    if all_pairs != placement_is_valid(pieces, &placement) {
                        return Err(format!("P = {p}, placement {placement:?}"));
                    }
                }
            }
        }
        Ok(format!("{} sets, k ≤ 4", family.len()))
    });

    rec.check("measure depends only on χ(P)", || {
        let mut seen: Vec<(i64, Rational, String)> = Vec::new();
        for p in &family {
            let m = fibonacci_measure(p, default_policy(), limits.fibonacci).map_err(fail_on)?;
            for (chi, value, name) in &seen {
                if *chi == m.chi && value != m.value() {
                    return Err(format!("{name} and {p} share χ = {chi} but differ"));
                }
            }
            seen.push((m.chi, m.value().clone(), p.to_string()));
        }
        Ok(format!("{} sets compared pairwise", family.len()))
    });
}

/// Concrete points for a placement: evenly spaced inside open pieces.
fn realize(pieces: &[crate::interval_sets::Piece], placement: &[usize]) -> Vec<Rational> {
    use crate::interval_sets::Piece;
    let mut out = Vec::new();
    for (piece, &c) in pieces.iter().zip(placement) {
        match piece {
            Piece::Point(q) if c == 1 => out.push(q.clone()),
            Piece::Point(_) => {}
            Piece::Open(lo, hi) => {
                let (a, b) = match (lo.finite(), hi.finite()) {
                    (Some(a), Some(b)) => (a.clone(), b.clone()),
                    (Some(a), None) => (a.clone(), a + int(1)),
                    (None, Some(b)) => (b - int(1), b.clone()),
                    (None, None) => (int(0), int(1)),
                };
                for i in 1..=c {
                    out.push(&a + (&b - &a) * rat(i as i64, c as i64 + 1));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scope_names_round_trip() {
        for scope in Scope::ALL {
            assert_eq!(scope.name().parse::<Scope>().unwrap(), scope);
        }
        assert!("nope".parse::<Scope>().is_err());
    }

    #[test]
    fn family_spans_measures() {
        let chis: Vec<i64> = sample_family().iter().map(|s| s.euler_measure()).collect();
        for chi in -4..=4 {
            assert!(chis.contains(&chi), "missing χ = {chi}");
        }
    }

    #[test]
    fn set_with_measure_has_measure() {
        for chi in -3..=3 {
            assert_eq!(set_with_measure(chi).euler_measure(), chi);
        }
    }
}
