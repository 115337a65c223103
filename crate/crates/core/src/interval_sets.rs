//! Polyhedral subsets of the real line and their Euler measure.
//!
//! A set is stored as a sorted list of disjoint pieces, each a rational point
//! (measure `+1`) or an open interval with extended-rational endpoints
//! (measure `-1`). The stored form is canonical: a point that sits between two
//! included open intervals is absorbed, so `(a,b) ∪ {b} ∪ (b,c)` is `(a,c)`.
//! Two sets are equal exactly when their piece lists are equal.
//!
//! Every Boolean operation goes through [`PolyhedralSet::from_predicate`]: the
//! finite coordinates of the inputs cut the line into elementary cells, each
//! cell is kept or dropped by testing one sample point, and maximal runs of
//! kept cells are rebuilt into pieces.

use std::fmt;

use crate::error::{Error, Result};
use crate::rational::{sample_between, ExtendedRational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Piece {
    Point(Rational),
    Open(ExtendedRational, ExtendedRational),
}

impl Piece {
    pub fn contains(&self, x: &Rational) -> bool {
        match self {
            Piece::Point(q) => q == x,
            Piece::Open(lo, hi) => {
                let x = ExtendedRational::Finite(x.clone());
                *lo < x && x < *hi
            }
        }
    }

    /// Dimension of the piece as an open cell.
    pub fn dimension(&self) -> u32 {
        match self {
            Piece::Point(_) => 0,
            Piece::Open(..) => 1,
        }
    }

    pub fn is_point(&self) -> bool {
        matches!(self, Piece::Point(_))
    }

    fn lower(&self) -> ExtendedRational {
        match self {
            Piece::Point(q) => ExtendedRational::Finite(q.clone()),
            Piece::Open(lo, _) => lo.clone(),
        }
    }

    fn upper(&self) -> ExtendedRational {
        match self {
            Piece::Point(q) => ExtendedRational::Finite(q.clone()),
            Piece::Open(_, hi) => hi.clone(),
        }
    }

    fn finite_coords(&self, out: &mut Vec<Rational>) {
        match self {
            Piece::Point(q) => out.push(q.clone()),
            Piece::Open(lo, hi) => {
                out.extend(lo.finite().cloned());
                out.extend(hi.finite().cloned());
            }
        }
    }
}

/// Input literal for [`PolyhedralSet::canonicalize`]; closed and half-open
/// intervals are accepted here and decomposed into points and open intervals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Literal {
    Point(Rational),
    Interval {
        lo: ExtendedRational,
        hi: ExtendedRational,
        lo_closed: bool,
        hi_closed: bool,
    },
}

impl Literal {
    pub fn open(lo: impl Into<ExtendedRational>, hi: impl Into<ExtendedRational>) -> Self {
        Literal::Interval {
            lo: lo.into(),
            hi: hi.into(),
            lo_closed: false,
            hi_closed: false,
        }
    }

    pub fn closed(lo: impl Into<ExtendedRational>, hi: impl Into<ExtendedRational>) -> Self {
        Literal::Interval {
            lo: lo.into(),
            hi: hi.into(),
            lo_closed: true,
            hi_closed: true,
        }
    }

    fn decompose(&self) -> Result<Vec<Piece>> {
        match self {
            Literal::Point(q) => Ok(vec![Piece::Point(q.clone())]),
            Literal::Interval {
                lo,
                hi,
                lo_closed,
                hi_closed,
            } => {
                if lo >= hi {
                    return Err(Error::InvalidInput(format!(
                        "interval endpoints must satisfy a < b, got a = {lo}, b = {hi}"
                    )));
                }
                let mut pieces = Vec::with_capacity(3);
                if *lo_closed {
                    let q = lo.finite().ok_or_else(|| {
                        Error::InvalidInput(format!("closed endpoint must be finite, got {lo}"))
                    })?;
                    pieces.push(Piece::Point(q.clone()));
                }
                pieces.push(Piece::Open(lo.clone(), hi.clone()));
                if *hi_closed {
                    let q = hi.finite().ok_or_else(|| {
                        Error::InvalidInput(format!("closed endpoint must be finite, got {hi}"))
                    })?;
                    pieces.push(Piece::Point(q.clone()));
                }
                Ok(pieces)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetOp {
    Union,
    Intersect,
    Difference,
}

/// A finite union of rational points and open intervals, in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyhedralSet {
    pieces: Vec<Piece>,
}

/// A maximal connected subset of a [`PolyhedralSet`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub lower: ExtendedRational,
    pub upper: ExtendedRational,
    pub lower_closed: bool,
    pub upper_closed: bool,
}

impl Component {
    pub fn is_point(&self) -> bool {
        self.lower == self.upper
    }

    pub fn is_closed_bounded(&self) -> bool {
        self.lower.is_finite() && self.upper.is_finite() && self.lower_closed && self.upper_closed
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub finite: bool,
    pub cardinality: Option<usize>,
    pub compact: bool,
    pub components: Vec<Component>,
    pub has_isolated_points: bool,
}

impl PolyhedralSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn real_line() -> Self {
        Self {
            pieces: vec![Piece::Open(
                ExtendedRational::NegInfinity,
                ExtendedRational::PosInfinity,
            )],
        }
    }

    pub fn point(q: Rational) -> Self {
        Self {
            pieces: vec![Piece::Point(q)],
        }
    }

    pub fn points<I: IntoIterator<Item = Rational>>(qs: I) -> Self {
        let pieces: Vec<Piece> = qs.into_iter().map(Piece::Point).collect();
        Self::from_pieces(&pieces).expect("points are always valid pieces")
    }

    /// The open interval `(lo, hi)`.
    pub fn open(lo: impl Into<ExtendedRational>, hi: impl Into<ExtendedRational>) -> Result<Self> {
        Self::canonicalize(&[Literal::open(lo, hi)])
    }

    /// The closed interval `[lo, hi]`.
    pub fn closed(
        lo: impl Into<ExtendedRational>,
        hi: impl Into<ExtendedRational>,
    ) -> Result<Self> {
        Self::canonicalize(&[Literal::closed(lo, hi)])
    }

    /// Canonical form of the union of the given literals.
    pub fn canonicalize(literals: &[Literal]) -> Result<Self> {
        let mut pieces = Vec::new();
        for literal in literals {
            pieces.extend(literal.decompose()?);
        }
        Self::from_pieces(&pieces)
    }

    /// Canonical form of the union of arbitrary (possibly overlapping) pieces.
    pub fn from_pieces(pieces: &[Piece]) -> Result<Self> {
        for piece in pieces {
            if let Piece::Open(lo, hi) = piece {
                if lo >= hi {
                    return Err(Error::InvalidInput(format!(
                        "open interval ({lo},{hi}) is empty or reversed"
                    )));
                }
            }
        }
        let mut coords = Vec::new();
        for piece in pieces {
            piece.finite_coords(&mut coords);
        }
        Ok(Self::from_predicate(coords, |x| {
            pieces.iter().any(|p| p.contains(x))
        }))
    }

    /// Builds the canonical set `{x : member(x)}`, assuming `member` is constant
    /// on every elementary cell cut out by `coords`.
    pub fn from_predicate<F>(mut coords: Vec<Rational>, member: F) -> Self
    where
        F: Fn(&Rational) -> bool,
    {
        coords.sort();
        coords.dedup();

        let mut cells: Vec<Piece> = Vec::with_capacity(2 * coords.len() + 1);
        let mut lo = ExtendedRational::NegInfinity;
        for q in &coords {
            let hi = ExtendedRational::Finite(q.clone());
            cells.push(Piece::Open(lo, hi.clone()));
            cells.push(Piece::Point(q.clone()));
            lo = hi;
        }
        cells.push(Piece::Open(lo, ExtendedRational::PosInfinity));

        let mut pieces = Vec::new();
        let mut run: Vec<Piece> = Vec::new();
        for cell in cells {
            let sample = match &cell {
                Piece::Point(q) => q.clone(),
                Piece::Open(a, b) => sample_between(a, b),
            };
            if member(&sample) {
                run.push(cell);
            } else {
                flush_run(&mut run, &mut pieces);
            }
        }
        flush_run(&mut run, &mut pieces);
        Self { pieces }
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.pieces.iter().any(|p| p.contains(x))
    }

    pub fn point_count(&self) -> usize {
        self.pieces.iter().filter(|p| p.is_point()).count()
    }

    pub fn open_count(&self) -> usize {
        self.pieces.len() - self.point_count()
    }

    fn coords(&self) -> Vec<Rational> {
        let mut coords = Vec::new();
        for piece in &self.pieces {
            piece.finite_coords(&mut coords);
        }
        coords
    }

    pub fn combine(&self, other: &Self, op: SetOp) -> Self {
        let mut coords = self.coords();
        coords.extend(other.coords());
        Self::from_predicate(coords, |x| {
            let (a, b) = (self.contains(x), other.contains(x));
            match op {
                SetOp::Union => a || b,
                SetOp::Intersect => a && b,
                SetOp::Difference => a && !b,
            }
        })
    }

    pub fn union(&self, other: &Self) -> Self {
        self.combine(other, SetOp::Union)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.combine(other, SetOp::Intersect)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.combine(other, SetOp::Difference)
    }

    /// Complement within the real line.
    pub fn complement(&self) -> Self {
        Self::from_predicate(self.coords(), |x| !self.contains(x))
    }

    /// `self ∩ (a, b)`.
    pub fn restrict_open(&self, a: &ExtendedRational, b: &ExtendedRational) -> Result<Self> {
        if a >= b {
            return Err(Error::InvalidInput(format!(
                "restriction window ({a},{b}) is empty"
            )));
        }
        let window = Self {
            pieces: vec![Piece::Open(a.clone(), b.clone())],
        };
        Ok(self.intersection(&window))
    }

    pub fn shifted(&self, by: &Rational) -> Self {
        Self {
            pieces: self
                .pieces
                .iter()
                .map(|p| match p {
                    Piece::Point(q) => Piece::Point(q + by),
                    Piece::Open(lo, hi) => Piece::Open(lo.shifted(by), hi.shifted(by)),
                })
                .collect(),
        }
    }

    /// Points count `+1`, open intervals `-1`.
    pub fn euler_measure(&self) -> i64 {
        self.pieces
            .iter()
            .map(|p| if p.is_point() { 1 } else { -1 })
            .sum()
    }

    pub fn components(&self) -> Vec<Component> {
        let mut components: Vec<Component> = Vec::new();
        let mut prev: Option<&Piece> = None;
        for piece in &self.pieces {
            let joins = prev
                .is_some_and(|p| p.upper() == piece.lower() && (p.is_point() || piece.is_point()));
            if joins {
                let last = components
                    .last_mut()
                    .expect("joined onto an existing component");
                last.upper = piece.upper();
                last.upper_closed = piece.is_point();
            } else {
                components.push(Component {
                    lower: piece.lower(),
                    upper: piece.upper(),
                    lower_closed: piece.is_point(),
                    upper_closed: piece.is_point(),
                });
            }
            prev = Some(piece);
        }
        components
    }

    pub fn classify(&self) -> Classification {
        let components = self.components();
        let finite = self.open_count() == 0;
        Classification {
            finite,
            cardinality: finite.then_some(self.pieces.len()),
            compact: components.iter().all(Component::is_closed_bounded),
            has_isolated_points: components.iter().any(Component::is_point),
            components,
        }
    }
}

fn flush_run(run: &mut Vec<Piece>, out: &mut Vec<Piece>) {
    match run.len() {
        0 => {}
        1 => out.push(run.pop().expect("run has one cell")),
        _ => {
            let first = run.first().expect("non-empty run");
            let last = run.last().expect("non-empty run");
            let lo = first.lower();
            let hi = last.upper();
            let lead = first.is_point().then(|| first.clone());
            let trail = last.is_point().then(|| last.clone());
            out.extend(lead);
            out.push(Piece::Open(lo, hi));
            out.extend(trail);
            run.clear();
        }
    }
}

impl fmt::Display for PolyhedralSet {
    /// Prints in the set-literal grammar; the output re-parses to the same set.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let components = self.components();
        if components.is_empty() {
            return f.write_str("{}");
        }
        let mut parts: Vec<String> = Vec::new();
        let mut pending_points: Vec<String> = Vec::new();
        for c in &components {
            if c.is_point() {
                pending_points.push(c.lower.to_string());
                continue;
            }
            if !pending_points.is_empty() {
                parts.push(format!("{{{}}}", pending_points.join(", ")));
                pending_points.clear();
            }
            parts.push(format!(
                "{}{},{}{}",
                if c.lower_closed { '[' } else { '(' },
                c.lower,
                c.upper,
                if c.upper_closed { ']' } else { ')' }
            ));
        }
        if !pending_points.is_empty() {
            parts.push(format!("{{{}}}", pending_points.join(", ")));
        }
        f.write_str(&parts.join(" u "))
    }
}
