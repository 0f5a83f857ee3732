//! Exact rational linear feasibility, extrema, and arrangement cells.

mod affine;
mod cells;
mod fm;
mod system;

pub use affine::AffineForm;
pub use cells::{cell_samples, Cell, Sign, DEFAULT_DIMENSION_CAP};
pub use fm::{affine_extrema, fm_feasible, Extrema, Feasibility};
pub use system::{Constraint, LinearSystem, Relation};

pub(crate) use cells::{arrangement_samples, crossing_hyperplanes};
pub(crate) use fm::{feasible_point, maximize_min, Ineq};

/// The closed box as non-strict inequalities.
pub(crate) fn fm_box(bounds: &[(crate::Rational, crate::Rational)]) -> Vec<Ineq> {
    fm::box_ineqs(bounds, false)
}

/// The open box as strict inequalities.
pub(crate) fn strict_box(bounds: &[(crate::Rational, crate::Rational)]) -> Vec<Ineq> {
    fm::box_ineqs(bounds, true)
}
