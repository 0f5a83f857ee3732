use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// A closed rational box `[l_0, u_0] × … × [l_{n-1}, u_{n-1}]` with every
/// side nondegenerate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoxDomain {
    bounds: Vec<(Rational, Rational)>,
}

impl BoxDomain {
    pub fn new(bounds: Vec<(Rational, Rational)>) -> Result<Self> {
        if bounds.is_empty() {
            return Err(Error::precondition(
                "a domain needs at least one coordinate",
            ));
        }
        for (index, (lo, hi)) in bounds.iter().enumerate() {
            if lo >= hi {
                return Err(Error::InvalidInterval {
                    index,
                    lower: rational::to_text(lo),
                    upper: rational::to_text(hi),
                });
            }
        }
        Ok(BoxDomain { bounds })
    }

    pub fn unit_cube(dim: usize) -> Self {
        assert!(dim >= 1, "unit cube of dimension zero");
        BoxDomain {
            bounds: vec![(rational::int(0), rational::int(1)); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.bounds.len()
    }

    pub fn bounds(&self) -> &[(Rational, Rational)] {
        &self.bounds
    }

    pub fn center(&self) -> Vec<Rational> {
        self.bounds
            .iter()
            .map(|(lo, hi)| rational::midpoint(lo, hi))
            .collect()
    }

    /// All `2^n` corners, in binary counting order.
    pub fn vertices(&self) -> Vec<Vec<Rational>> {
        let n = self.dim();
        (0..1usize << n)
            .map(|mask| {
                self.bounds
                    .iter()
                    .enumerate()
                    .map(|(i, (lo, hi))| {
                        if mask >> i & 1 == 1 {
                            hi.clone()
                        } else {
                            lo.clone()
                        }
                    })
                    .collect()
            })
            .collect()
    }

    pub fn check_point(&self, point: &[Rational]) -> Result<()> {
        if point.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: point.len(),
            });
        }
        for (index, (x, (lo, hi))) in point.iter().zip(&self.bounds).enumerate() {
            if x < lo || x > hi {
                return Err(Error::OutsideBox { index });
            }
        }
        Ok(())
    }
}
