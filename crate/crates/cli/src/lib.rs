//! Command runner and report types behind the `euler` binary.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use euler_measure::fibonacci::fibonacci_measure;
use euler_measure::gizmos::{gizmo_brute_force, gizmo_measure, powerset_series, GizmoSpec};
use euler_measure::map_spaces::{
    affine_pair_space, finite_map_count, hedral_map_measure, map_pair_measure,
    max_brute_breakpoints, schanuel_measure, CountMode, MapSpaceMeasure, SchanuelCodomain,
};
use euler_measure::partitions::gen_binomial;
use euler_measure::prelude::*;
use euler_measure::rational::{exact_string, from_bigint, pow_i64};
use euler_measure::series::Regularization;
use euler_measure::verify::{self, Scope};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

/// Environment variable that overrides the brute-force enumeration cap.
pub const CAP_ENV: &str = "EULER_ENUM_CAP";

/// Largest `k` checked against a brute-force count in map-space reports.
const BRUTE_CHECK_DEPTH: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapTarget {
    /// Hedral maps into a finite set of this size.
    Finite(usize),
    /// Polyhedral maps into a concrete compact set.
    Concrete(PolyhedralSet),
    /// Polyhedral maps into a codomain known only by its Euler measure.
    Symbolic(i64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verb {
    Measure {
        set: PolyhedralSet,
    },
    Choose {
        set: PolyhedralSet,
        k: usize,
        cells: bool,
    },
    Powerset {
        set: PolyhedralSet,
    },
    Gizmo {
        set: PolyhedralSet,
        spec: GizmoSpec,
    },
    MapSpace {
        domain: PolyhedralSet,
        target: MapTarget,
        pairs: bool,
    },
    Fib {
        set: PolyhedralSet,
    },
    Verify {
        scopes: Vec<Scope>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Command {
    pub verb: Verb,
    pub policy: SeriesPolicy,
    pub limits: Limits,
}

/// An exact value together with the route that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledValue {
    pub label: String,
    pub route: String,
    #[serde(with = "exact_string")]
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesReport {
    pub grading: String,
    #[serde(with = "exact_string::vec")]
    pub coefficients: Vec<Rational>,
    pub recurrence_order: usize,
    pub fit_terms: usize,
    pub verified_terms: usize,
    pub closed_form: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub euler_measure: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series: Option<SeriesReport>,
    pub values: Vec<LabeledValue>,
    pub checks: Vec<CheckReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub details: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl Report {
    fn new(command: &str) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            command: command.to_string(),
            inputs: BTreeMap::new(),
            euler_measure: None,
            series: None,
            values: Vec::new(),
            checks: Vec::new(),
            details: Vec::new(),
            warnings: Vec::new(),
        }
    }

    fn input(&mut self, key: &str, value: impl ToString) {
        self.inputs.insert(key.to_string(), value.to_string());
    }

    fn value(&mut self, label: &str, route: &str, value: Rational) {
        self.values.push(LabeledValue {
            label: label.to_string(),
            route: route.to_string(),
            value,
        });
    }

    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(CheckReport {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    fn series(&mut self, prefix: &SeriesPrefix, reg: &Regularization) {
        self.series = Some(SeriesReport {
            grading: prefix.grading().to_string(),
            coefficients: prefix.coeffs().to_vec(),
            recurrence_order: reg.recurrence.order,
            fit_terms: reg.recurrence.fit_terms,
            verified_terms: reg.recurrence.verified_terms,
            closed_form: reg.closed_form.to_string(),
        });
    }

    pub fn all_checks_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Human-readable rendering.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.command);
        for (k, v) in &self.inputs {
            let _ = writeln!(out, "  {k}: {v}");
        }
        if let Some(chi) = self.euler_measure {
            let _ = writeln!(out, "euler measure: {chi}");
        }
        if let Some(s) = &self.series {
            let shown: Vec<String> = s.coefficients.iter().map(|q| q.to_string()).collect();
            let _ = writeln!(
                out,
                "series (graded by {}): {}, ...",
                s.grading,
                shown.join(", ")
            );
            let _ = writeln!(
                out,
                "closed form: {} (order {} recurrence fitted on {} terms, verified on {})",
                s.closed_form, s.recurrence_order, s.fit_terms, s.verified_terms
            );
        }
        for v in &self.values {
            let _ = writeln!(out, "{} = {}  [{}]", v.label, v.value, v.route);
        }
        for line in &self.details {
            let _ = writeln!(out, "  {line}");
        }
        for c in &self.checks {
            let mark = if c.passed { "pass" } else { "FAIL" };
            let _ = writeln!(out, "{mark}: {} ({})", c.name, c.detail);
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        out
    }
}

/// JSON body printed when a command fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub schema: u32,
    pub error: ErrorBody,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub class: String,
    pub message: String,
}

impl ErrorReport {
    pub fn new(err: &Error) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            error: ErrorBody {
                class: err.class().to_string(),
                message: err.to_string(),
            },
        }
    }
}

/// Process exit status for an error class.
pub fn exit_code(class: ErrorClass) -> i32 {
    match class {
        ErrorClass::Input => 2,
        ErrorClass::Resource => 3,
        ErrorClass::RegularizationFailure => 4,
        ErrorClass::Internal => 5,
    }
}

pub fn run(command: &Command) -> Result<Report> {
    let policy = command.policy;
    let limits = &command.limits;
    match &command.verb {
        Verb::Measure { set } => {
            let mut r = Report::new("measure");
            r.input("set", set);
            let chi = set.euler_measure();
            r.euler_measure = Some(chi);
            r.value("euler_measure", "cell decomposition", int(chi));
            let info = set.classify();
            r.details.push(format!(
                "{} point(s), {} open interval(s), {} component(s), {}{}",
                set.point_count(),
                set.open_count(),
                info.components.len(),
                if info.compact {
                    "compact"
                } else {
                    "not compact"
                },
                match info.cardinality {
                    Some(n) => format!(", finite with {n} element(s)"),
                    None => String::new(),
                }
            ));
            Ok(r)
        }
        Verb::Choose { set, k, cells } => {
            let mut r = Report::new("choose");
            r.input("set", set);
            r.input("k", k);
            let chi = set.euler_measure();
            r.euler_measure = Some(chi);
            let sketch = choose_cells(set, *k, limits.choose)?;
            let by_cells = int(sketch.measure());
            let by_binomial = gen_binomial(&int(chi), *k);
            r.value("euler_measure", "cell enumeration", by_cells.clone());
            r.value("euler_measure", "generalized binomial", by_binomial.clone());
            r.check(
                "cell enumeration agrees with binom(χ, k)",
                by_cells == by_binomial,
                format!("{by_cells} vs {by_binomial}"),
            );
            let hist: Vec<String> = sketch
                .histogram()
                .iter()
                .map(|(d, n)| format!("{n} cell(s) of dimension {d}"))
                .collect();
            r.details.push(hist.join(", "));
            if *cells {
                for (dim, placement) in sketch.dims().iter().zip(sketch.placements()) {
                    r.details
                        .push(format!("cell {placement:?}: dimension {dim}"));
                }
            }
            Ok(r)
        }
        Verb::Powerset { set } => {
            let mut r = Report::new("powerset");
            r.input("set", set);
            r.euler_measure = Some(set.euler_measure());
            let ps = powerset_series(set, policy.terms)?;
            let reg = regularize(&ps.prefix, policy.max_order)?;
            r.series(&ps.prefix, &reg);
            r.value(
                "regularized_measure",
                "series regularization",
                reg.value.clone(),
            );
            r.value(
                "regularized_measure",
                "closed form (1 + t)^χ",
                ps.value.clone(),
            );
            r.check(
                "fitted closed form matches (1 + t)^χ",
                reg.closed_form == ps.closed_form,
                format!("{} vs {}", reg.closed_form, ps.closed_form),
            );
            Ok(r)
        }
        Verb::Gizmo { set, spec } => {
            let mut r = Report::new("gizmo");
            r.input("set", set);
            r.input("ks", format!("{:?}", spec.ks()));
            r.euler_measure = Some(set.euler_measure());
            let m = gizmo_measure(set, spec, policy)?;
            if m.policy != policy {
                r.warnings.push(format!(
                    "series policy widened to {} terms, max order {}",
                    m.policy.terms, m.policy.max_order
                ));
            }
            r.series(&m.prefix, &m.regularization);
            r.value(
                "regularized_measure",
                "exponential fit",
                m.exponential_value.clone(),
            );
            r.value(
                "regularized_measure",
                "series regularization",
                m.value().clone(),
            );
            r.value(
                "regularized_measure",
                "iterated binomial",
                m.iterated_value.clone(),
            );
            let agree = m.exponential_value == *m.value() && *m.value() == m.iterated_value;
            r.check("routes agree", agree, m.value().to_string());
            let weights: Vec<String> = m
                .fit
                .bases
                .iter()
                .zip(&m.fit.weights)
                .filter(|(_, w)| !w.is_zero())
                .map(|(b, w)| format!("({w})·{b}^k"))
                .collect();
            r.details.push(format!("n_k = {}", weights.join(" + ")));
            let counts: Vec<String> = m
                .support_counts
                .iter()
                .take(6)
                .map(|n| n.to_string())
                .collect();
            r.details
                .push(format!("n_0.. = {}, ...", counts.join(", ")));
            for k in 0..=4 {
                match gizmo_brute_force(spec, k, limits.brute) {
                    Ok(brute) => {
                        let formula = &m.support_counts[k];
                        r.check(
                            format!("n_{k} matches brute-force construction"),
                            *formula == brute,
                            format!("{formula} vs {brute}"),
                        );
                    }
                    Err(Error::ResourceLimit(_)) => break,
                    Err(e) => return Err(e),
                }
            }
            Ok(r)
        }
        Verb::MapSpace {
            domain,
            target,
            pairs,
        } => run_mapspace(domain, target, *pairs, policy, limits),
        Verb::Fib { set } => {
            let mut r = Report::new("fib");
            r.input("set", set);
            r.euler_measure = Some(set.euler_measure());
            let fib_policy = SeriesPolicy {
                terms: policy.terms.min(limits.fibonacci),
                ..policy
            };
            let m = fibonacci_measure(set, fib_policy, limits.fibonacci)?;
            r.series(&m.prefix, &m.regularization);
            r.value(
                "regularized_measure",
                "series regularization",
                m.value().clone(),
            );
            r.value(
                "regularized_measure",
                "extended Fibonacci F(χ + 1)",
                from_bigint(m.expected.clone()),
            );
            r.check(
                "series value equals F(χ + 1)",
                m.matches_expected(),
                format!("{} vs {}", m.value(), m.expected),
            );
            Ok(r)
        }
        Verb::Verify { scopes } => {
            let mut r = Report::new("verify");
            let names: Vec<&str> = scopes.iter().map(|s| s.name()).collect();
            r.input("scope", names.join(", "));
            for c in verify::run(scopes, limits) {
                r.check(format!("{}: {}", c.scope, c.name), c.passed, c.detail);
            }
            let passed = r.checks.iter().filter(|c| c.passed).count();
            r.details
                .push(format!("{passed} of {} invariants passed", r.checks.len()));
            Ok(r)
        }
    }
}

fn record_map_measure(r: &mut Report, m: &MapSpaceMeasure) {
    r.series(&m.prefix, &m.regularization);
    r.value(
        "regularized_measure",
        "series regularization",
        m.value().clone(),
    );
    if let Some(expected) = &m.expected_closed_form {
        r.check(
            "fitted closed form matches the derived form",
            *expected == m.regularization.closed_form,
            expected.to_string(),
        );
    }
}

fn run_mapspace(
    domain: &PolyhedralSet,
    target: &MapTarget,
    pairs: bool,
    policy: SeriesPolicy,
    limits: &Limits,
) -> Result<Report> {
    let mut r = Report::new("mapspace");
    r.input("domain", domain);
    r.euler_measure = Some(domain.euler_measure());
    let unit = PolyhedralSet::open(0, 1)?;
    let unit_only = pairs || matches!(target, MapTarget::Concrete(_) | MapTarget::Symbolic(_));
    if unit_only && *domain != unit {
        return Err(Error::Unsupported(format!(
            "this map space is only available for the domain (0,1), not {domain}"
        )));
    }
    match target {
        MapTarget::Finite(b) if pairs => {
            r.input("codomain", format!("{b} points"));
            r.input("maps", "unordered pairs of distinct maps");
            let terms = max_brute_breakpoints(*b, limits.brute).min(policy.terms);
            let max_order = policy.max_order.min(terms.saturating_sub(1) / 2);
            let m = map_pair_measure(*b, terms, max_order, limits.brute)?;
            if terms < policy.terms {
                r.warnings.push(format!(
                    "brute-force counts limited to {} terms by the enumeration cap",
                    terms + 1
                ));
            }
            record_map_measure(&mut r, &m);
            let b2 = BigInt::from(*b as u64 * *b as u64);
            for (k, n) in m
                .breakpoint_counts
                .iter()
                .enumerate()
                .take(BRUTE_CHECK_DEPTH + 1)
            {
                let want = (&b2 * num_traits::pow(&b2 * &b2 - 1, k)
                    - BigInt::from(*b) * num_traits::pow(&b2 - 1, k))
                    / 2;
                r.check(
                    format!("pair count for k = {k} matches the closed count"),
                    *n == want,
                    format!("{n} vs {want}"),
                );
            }
        }
        MapTarget::Finite(b) => {
            r.input("codomain", format!("{b} points"));
            let m = hedral_map_measure(domain, *b, policy)?;
            record_map_measure(&mut r, &m);
            r.value(
                "regularized_measure",
                "χ(B)^χ(A)",
                pow_i64(&int(*b as i64), domain.euler_measure()).unwrap_or_else(Rational::zero),
            );
            if domain.open_count() == 1 {
                let depth = BRUTE_CHECK_DEPTH.min(max_brute_breakpoints(*b, limits.brute));
                for k in 0..=depth {
                    let brute = finite_map_count(*b, k, CountMode::Brute, limits.brute)?;
                    let n = &m.breakpoint_counts[k];
                    r.check(
                        format!("count for k = {k} matches brute force"),
                        *n == brute,
                        format!("{n} vs {brute}"),
                    );
                }
            }
        }
        MapTarget::Concrete(b) => {
            r.input("codomain", b);
            let sketch = affine_pair_space(b)?;
            r.value(
                "affine_map_space",
                "cell decomposition",
                int(sketch.measure()),
            );
            let m = schanuel_measure(&SchanuelCodomain::Concrete(b.clone()), policy)?;
            record_map_measure(&mut r, &m);
        }
        MapTarget::Symbolic(chi) => {
            r.input("codomain", format!("χ(B) = {chi}"));
            let m = schanuel_measure(&SchanuelCodomain::Symbolic(*chi), policy)?;
            record_map_measure(&mut r, &m);
        }
    }
    Ok(r)
}
