use std::fmt;

use ndarray::{Array2, Zip};
use num_complex::Complex64;

use super::Grid;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Representation {
    Momentum,
    Position,
}

impl Representation {
    pub fn conjugate(self) -> Self {
        match self {
            Representation::Momentum => Representation::Position,
            Representation::Position => Representation::Momentum,
        }
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Representation::Momentum => "momentum",
            Representation::Position => "position",
        })
    }
}

/// Complex single-photon amplitude sampled on a [`Grid`].
///
/// `values[[ix, iy]]` is the amplitude at `(grid.sample(ix), grid.sample(iy))`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransverseMode {
    grid: Grid,
    representation: Representation,
    values: Array2<Complex64>,
}

impl TransverseMode {
    pub fn new(grid: Grid, representation: Representation, values: Array2<Complex64>) -> Result<Self> {
        if values.dim() != (grid.n(), grid.n()) {
            return Err(Error::InvalidGrid(format!(
                "value array {:?} does not match {} points per axis",
                values.dim(),
                grid.n()
            )));
        }
        Ok(TransverseMode {
            grid,
            representation,
            values,
        })
    }

    pub fn from_fn(grid: Grid, representation: Representation, mut f: impl FnMut(f64, f64) -> Complex64) -> Self {
        let values = Array2::from_shape_fn((grid.n(), grid.n()), |(i, j)| f(grid.sample(i), grid.sample(j)));
        TransverseMode {
            grid,
            representation,
            values,
        }
    }

    pub fn constant(grid: Grid, representation: Representation, value: Complex64) -> Self {
        TransverseMode {
            grid,
            representation,
            values: Array2::from_elem((grid.n(), grid.n()), value),
        }
    }

    #[inline]
    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    #[inline]
    pub fn representation(&self) -> Representation {
        self.representation
    }

    #[inline]
    pub fn values(&self) -> &Array2<Complex64> {
        &self.values
    }

    pub fn into_values(self) -> Array2<Complex64> {
        self.values
    }

    pub fn norm_sqr(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.grid.weight()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn normalized(&self) -> Result<Self> {
        let norm = self.norm();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::ZeroNorm);
        }
        Ok(self.scaled(Complex64::from(1.0 / norm)))
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        TransverseMode {
            grid: self.grid,
            representation: self.representation,
            values: self.values.mapv(|v| v * factor),
        }
    }

    pub fn conj(&self) -> Self {
        TransverseMode {
            grid: self.grid,
            representation: self.representation,
            values: self.values.mapv(|v| v.conj()),
        }
    }

    /// The y-reflection `f(x, y) -> f(x, -y)`.
    pub fn reflect_y(&self) -> Self {
        let n = self.grid.n();
        let values = Array2::from_shape_fn((n, n), |(i, j)| self.values[[i, n - 1 - j]]);
        TransverseMode {
            grid: self.grid,
            representation: self.representation,
            values,
        }
    }

    /// Pointwise product with another mode on the same grid.
    pub fn multiply(&self, other: &TransverseMode) -> Result<Self> {
        self.check_compatible(other)?;
        let mut values = self.values.clone();
        Zip::from(&mut values).and(&other.values).for_each(|a, &b| *a *= b);
        Ok(TransverseMode {
            grid: self.grid,
            representation: self.representation,
            values,
        })
    }

    pub fn linear_combination(terms: &[(Complex64, &TransverseMode)]) -> Result<Self> {
        let (_, first) = terms.first().ok_or(Error::ZeroNorm)?;
        let mut values = Array2::zeros(first.values.dim());
        for (c, mode) in terms {
            first.check_compatible(mode)?;
            values.scaled_add(*c, &mode.values);
        }
        Ok(TransverseMode {
            grid: first.grid,
            representation: first.representation,
            values,
        })
    }

    pub fn check_compatible(&self, other: &TransverseMode) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        if self.representation != other.representation {
            return Err(Error::RepresentationMismatch {
                expected: self.representation,
                found: other.representation,
            });
        }
        Ok(())
    }

    pub fn max_abs_diff(&self, other: &TransverseMode) -> f64 {
        self.values
            .iter()
            .zip(other.values.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// `Σ conj(a) b · spacing²`.
pub fn inner_product_2d(a: &TransverseMode, b: &TransverseMode) -> Result<Complex64> {
    a.check_compatible(b)?;
    let sum: Complex64 = a.values.iter().zip(b.values.iter()).map(|(x, y)| x.conj() * y).sum();
    Ok(sum * a.grid.weight())
}
