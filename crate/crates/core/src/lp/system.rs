use crate::error::{Error, Result};
use crate::lp::AffineForm;
use crate::rational::{self, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `form >= 0`
    NonNegative,
    /// `form > 0`
    Positive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub form: AffineForm,
    pub relation: Relation,
}

impl Constraint {
    pub fn non_negative(form: AffineForm) -> Self {
        Constraint {
            form,
            relation: Relation::NonNegative,
        }
    }

    pub fn positive(form: AffineForm) -> Self {
        Constraint {
            form,
            relation: Relation::Positive,
        }
    }

    pub fn is_strict(&self) -> bool {
        self.relation == Relation::Positive
    }

    pub fn holds_at(&self, point: &[Rational]) -> bool {
        let v = self.form.eval_unchecked(point);
        match self.relation {
            Relation::NonNegative => v >= rational::int(0),
            Relation::Positive => v > rational::int(0),
        }
    }
}

/// Finitely many affine constraints intersected with a closed box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem {
    constraints: Vec<Constraint>,
    bounds: Vec<(Rational, Rational)>,
}

impl LinearSystem {
    pub fn new(constraints: Vec<Constraint>, bounds: Vec<(Rational, Rational)>) -> Result<Self> {
        for (index, (lo, hi)) in bounds.iter().enumerate() {
            if lo > hi {
                return Err(Error::InvalidInterval {
                    index,
                    lower: rational::to_text(lo),
                    upper: rational::to_text(hi),
                });
            }
        }
        for c in &constraints {
            if c.form.dim() != bounds.len() {
                return Err(Error::DimensionMismatch {
                    expected: bounds.len(),
                    found: c.form.dim(),
                });
            }
        }
        Ok(LinearSystem {
            constraints,
            bounds,
        })
    }

    /// The unit cube `[0, 1]^dim` with no further constraints.
    pub fn unit_cube(dim: usize) -> Self {
        LinearSystem {
            constraints: Vec::new(),
            bounds: vec![(rational::int(0), rational::int(1)); dim],
        }
    }

    pub fn with(mut self, constraint: Constraint) -> Result<Self> {
        if constraint.form.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: constraint.form.dim(),
            });
        }
        self.constraints.push(constraint);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.bounds.len()
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn bounds(&self) -> &[(Rational, Rational)] {
        &self.bounds
    }

    pub fn has_strict(&self) -> bool {
        self.constraints.iter().any(Constraint::is_strict)
    }

    /// Direct substitution check, box included.
    pub fn satisfied_by(&self, point: &[Rational]) -> bool {
        point.len() == self.dim()
            && point
                .iter()
                .zip(&self.bounds)
                .all(|(x, (lo, hi))| lo <= x && x <= hi)
            && self.constraints.iter().all(|c| c.holds_at(point))
    }
}
