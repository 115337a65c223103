//! `A choose k` for a one-dimensional set, as a disjoint union of open cells.
//!
//! A sorted `k`-tuple in `A` is determined, up to an open-cell stratum, by how
//! many of its points land in each piece of `A`. `c` ordered points inside one
//! open interval form an open `c`-simplex, and a point piece takes at most
//! one, so each count vector is one open cell of dimension
//! `Σ c_i` over the interval pieces.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::interval_sets::{Piece, PolyhedralSet};
use crate::partitions::partitions_of;

pub const DEFAULT_CHOOSE_CAP: usize = 12;

/// A formal disjoint union of open cells, recorded by dimension.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CellSketch {
    dims: Vec<u32>,
    placements: Vec<Vec<usize>>,
}

impl CellSketch {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, dim: u32, placement: Vec<usize>) {
        self.dims.push(dim);
        self.placements.push(placement);
    }

    pub fn push_cells(&mut self, dim: u32, count: usize) {
        for _ in 0..count {
            self.push(dim, Vec::new());
        }
    }

    pub fn dims(&self) -> &[u32] {
        &self.dims
    }

    /// Per-cell point counts for each piece of the source set (may be empty).
    pub fn placements(&self) -> &[Vec<usize>] {
        &self.placements
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    /// `Σ (-1)^dim` over the cells.
    pub fn measure(&self) -> i64 {
        self.dims
            .iter()
            .map(|d| if d % 2 == 0 { 1 } else { -1 })
            .sum()
    }

    /// Dimension → number of cells of that dimension.
    pub fn histogram(&self) -> BTreeMap<u32, usize> {
        let mut hist = BTreeMap::new();
        for &d in &self.dims {
            *hist.entry(d).or_insert(0) += 1;
        }
        hist
    }
}

/// Every way of distributing `k` points over the pieces, with at most one
/// point on each point piece. Vectors come out in lexicographic order.
pub(crate) fn placements(pieces: &[Piece], k: usize) -> Vec<Vec<usize>> {
    fn go(
        pieces: &[Piece],
        i: usize,
        left: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == pieces.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let most = if pieces[i].is_point() {
            left.min(1)
        } else {
            left
        };
        for c in 0..=most {
            cur.push(c);
            go(pieces, i + 1, left - c, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(
        pieces,
        0,
        k,
        &mut Vec::with_capacity(pieces.len()),
        &mut out,
    );
    out
}

/// The open-cell decomposition of `A choose k`.
pub fn choose_cells(set: &PolyhedralSet, k: usize, cap: usize) -> Result<CellSketch> {
    if k > cap {
        return Err(Error::ResourceLimit(format!(
            "choose with k = {k} exceeds the cap of {cap}"
        )));
    }
    let pieces = set.pieces();
    let mut sketch = CellSketch::new();
    for placement in placements(pieces, k) {
        let dim: usize = placement
            .iter()
            .zip(pieces)
            .filter(|(_, p)| !p.is_point())
            .map(|(c, _)| c)
            .sum();
        sketch.push(dim as u32, placement);
    }
    Ok(sketch)
}

/// Euler measure of the ordered `k`-tuples of pairwise distinct points:
/// `Σ_{π ∈ Π_k} μ(0̂, π)·χ(A)^N(π)`.
pub fn ordered_distinct_measure(set: &PolyhedralSet, k: usize, cap: usize) -> Result<BigInt> {
    let chi = BigInt::from(set.euler_measure());
    let mut total = BigInt::zero();
    for pi in partitions_of(k, cap)? {
        total += pi.mobius_bottom() * num_traits::pow(chi.clone(), pi.block_count());
    }
    Ok(total)
}
