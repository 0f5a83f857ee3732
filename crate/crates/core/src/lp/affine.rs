use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// An affine functional `c_0 x_0 + … + c_{n-1} x_{n-1} + constant`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineForm {
    coeffs: Vec<Rational>,
    constant: Rational,
}

impl AffineForm {
    pub fn new(coeffs: Vec<Rational>, constant: Rational) -> Self {
        AffineForm { coeffs, constant }
    }

    pub fn constant(dim: usize, value: Rational) -> Self {
        AffineForm {
            coeffs: vec![Rational::zero(); dim],
            constant: value,
        }
    }

    pub fn zero(dim: usize) -> Self {
        Self::constant(dim, Rational::zero())
    }

    /// The coordinate function `x_index`.
    pub fn variable(dim: usize, index: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); dim];
        coeffs[index] = rational::int(1);
        AffineForm {
            coeffs,
            constant: Rational::zero(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn constant_term(&self) -> &Rational {
        &self.constant
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: point.len(),
            });
        }
        Ok(self.eval_unchecked(point))
    }

    pub(crate) fn eval_unchecked(&self, point: &[Rational]) -> Rational {
        self.coeffs
            .iter()
            .zip(point)
            .filter(|(c, _)| !c.is_zero())
            .fold(self.constant.clone(), |acc, (c, x)| acc + c * x)
    }

    pub fn add(&self, other: &AffineForm) -> AffineForm {
        debug_assert_eq!(self.dim(), other.dim());
        AffineForm {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
            constant: &self.constant + &other.constant,
        }
    }

    pub fn sub(&self, other: &AffineForm) -> AffineForm {
        self.add(&other.scale(&rational::int(-1)))
    }

    pub fn scale(&self, q: &Rational) -> AffineForm {
        AffineForm {
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
            constant: &self.constant * q,
        }
    }

    pub fn neg(&self) -> AffineForm {
        self.scale(&rational::int(-1))
    }

    /// Exact minimum over a box; attained at a vertex.
    pub fn min_over_box(&self, bounds: &[(Rational, Rational)]) -> Rational {
        self.coeffs
            .iter()
            .zip(bounds)
            .fold(self.constant.clone(), |acc, (c, (lo, hi))| {
                if c.is_positive() {
                    acc + c * lo
                } else if c.is_negative() {
                    acc + c * hi
                } else {
                    acc
                }
            })
    }

    pub fn max_over_box(&self, bounds: &[(Rational, Rational)]) -> Rational {
        -self.neg().min_over_box(bounds)
    }

    /// Representative of the zero set: scaled so the first nonzero
    /// coefficient is one. `None` for constant forms.
    pub fn hyperplane_key(&self) -> Option<AffineForm> {
        let lead = self.coeffs.iter().find(|c| !c.is_zero())?;
        Some(self.scale(&lead.recip()))
    }
}

impl fmt::Display for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            write!(f, "{}*x{}", rational::to_text(c), i)?;
            wrote = true;
        }
        if !wrote || !self.constant.is_zero() {
            if wrote {
                write!(f, " + ")?;
            }
            write!(f, "{}", rational::to_text(&self.constant))?;
        }
        Ok(())
    }
}
