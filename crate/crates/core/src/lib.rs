//! Exact Euler measures of polyhedral subsets of the real line, and
//! regularized Euler measures of the infinite families built from them:
//! small power sets, iterated selection gizmos, map spaces, and
//! parity-constrained subset families.
//!
//! All arithmetic is exact. A regularized measure is computed by producing a
//! prefix of the family's graded Euler series, fitting a linear recurrence
//! that is confirmed on held-out coefficients, and evaluating the resulting
//! rational function at `t = 1`.
//!
//! ```
//! use euler_measure::prelude::*;
//!
//! let a: PolyhedralSet = "(0,1) u (2,3)".parse().unwrap();
//! assert_eq!(a.euler_measure(), -2);
//! assert_eq!(choose_cells(&a, 3, DEFAULT_CHOOSE_CAP).unwrap().measure(), -4);
//! ```

pub mod choose;
pub mod error;
pub mod fibonacci;
pub mod gizmos;
pub mod interval_sets;
pub mod map_spaces;
pub mod parse;
pub mod partitions;
pub mod rational;
pub mod series;
pub mod verify;

pub use error::{Error, ErrorClass, Result};

/// Enumeration caps shared by the brute-force and stratum enumerators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest `k` for partition-lattice enumeration.
    pub partitions: usize,
    /// Largest `k` for `A choose k` cell enumeration.
    pub choose: usize,
    /// Largest number of candidate objects a brute-force oracle may build.
    pub brute: u64,
    /// Largest subset size for parity-strata enumeration.
    pub fibonacci: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            partitions: partitions::DEFAULT_PARTITION_CAP,
            choose: choose::DEFAULT_CHOOSE_CAP,
            brute: gizmos::DEFAULT_BRUTE_CAP,
            fibonacci: fibonacci::DEFAULT_FIB_CAP,
        }
    }
}

pub mod prelude {
    pub use crate::choose::{
        choose_cells, ordered_distinct_measure, CellSketch, DEFAULT_CHOOSE_CAP,
    };
    pub use crate::error::{Error, ErrorClass, Result};
    pub use crate::fibonacci::{extended_fibonacci, fibonacci_measure, parity_strata_coefficient};
    pub use crate::gizmos::{
        gizmo_brute_force, gizmo_fit, gizmo_measure, gizmo_support_count, powerset_series,
        GizmoSpec, DEFAULT_BRUTE_CAP,
    };
    pub use crate::interval_sets::{Literal, Piece, PolyhedralSet, SetOp};
    pub use crate::map_spaces::{
        affine_pair_space, finite_map_count, hedral_map_measure, map_pair_measure,
        schanuel_measure, CountMode, SchanuelCodomain,
    };
    pub use crate::parse::parse_set_expression;
    pub use crate::partitions::{
        falling_factorial, gen_binomial, iterated_binomial, partitions_of, SetPartition,
    };
    pub use crate::rational::{int, rat, ExtendedRational, Rational};
    pub use crate::series::{
        binomial_prefix, min_recurrence, regularize, to_rational_function, Polynomial,
        RationalFunction, Recurrence, SeriesPolicy, SeriesPrefix,
    };
    pub use crate::Limits;
}
