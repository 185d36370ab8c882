use ndarray::{Array2, Array4, Zip};
use num_complex::Complex64;

use super::Biphoton;
use crate::error::{Error, Result};
use crate::numerics::{Grid, Representation, TransverseMode};

/// Largest grid (points per axis) accepted by the dense form.
pub const MAX_DENSE_POINTS: usize = 32;

/// The full amplitude `values[[i1, j1, i2, j2]] = Φ(x_{i1}, y_{j1}, x_{i2}, y_{j2})`.
///
/// Every observable here is a direct 4D sum, kept independent of the
/// product-sum algebra so that the two can check each other.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseAmplitude {
    grid: Grid,
    representation: Representation,
    values: Array4<Complex64>,
}

impl DenseAmplitude {
    fn check_size(grid: &Grid) -> Result<()> {
        if grid.n() > MAX_DENSE_POINTS {
            return Err(Error::GridTooLarge {
                n: grid.n(),
                max: MAX_DENSE_POINTS,
            });
        }
        Ok(())
    }

    pub fn from_fn(
        grid: Grid,
        representation: Representation,
        f: impl Fn(f64, f64, f64, f64) -> Complex64,
    ) -> Result<Self> {
        Self::check_size(&grid)?;
        let n = grid.n();
        let values = Array4::from_shape_fn((n, n, n, n), |(i1, j1, i2, j2)| {
            f(grid.sample(i1), grid.sample(j1), grid.sample(i2), grid.sample(j2))
        });
        Ok(DenseAmplitude {
            grid,
            representation,
            values,
        })
    }

    /// Builds from the `n² x n²` matrix `Φ[(i1, j1), (i2, j2)]`.
    pub fn from_matrix(grid: Grid, representation: Representation, matrix: Array2<Complex64>) -> Result<Self> {
        Self::check_size(&grid)?;
        let n = grid.n();
        let values = matrix
            .as_standard_layout()
            .into_owned()
            .into_shape_with_order((n, n, n, n))
            .map_err(|e| Error::InvalidGrid(e.to_string()))?;
        Ok(DenseAmplitude {
            grid,
            representation,
            values,
        })
    }

    pub fn values(&self) -> &Array4<Complex64> {
        &self.values
    }

    /// The `n² x n²` matrix view `Φ[(i1, j1), (i2, j2)]`.
    pub fn to_matrix(&self) -> Array2<Complex64> {
        let m = self.grid.len();
        self.values
            .as_standard_layout()
            .into_owned()
            .into_shape_with_order((m, m))
            .expect("square layout")
    }

    /// `σΦ(x1, y1, x2, y2) = Φ(x2, -y2, x1, -y1)`.
    pub fn apply_sigma(&self) -> Self {
        let n = self.grid.n();
        let values = Array4::from_shape_fn((n, n, n, n), |(i1, j1, i2, j2)| {
            self.values[[i2, n - 1 - j2, i1, n - 1 - j1]]
        });
        DenseAmplitude {
            grid: self.grid,
            representation: self.representation,
            values,
        }
    }

    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        let sum: Complex64 = self
            .values
            .iter()
            .zip(other.values.iter())
            .map(|(a, b)| a.conj() * b)
            .sum();
        Ok(sum * self.grid.weight().powi(2))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(other.values.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn map_photon(&self, multiplier: &TransverseMode, photon: usize) -> Result<Self> {
        self.check_multiplier(multiplier)?;
        let m = multiplier.values();
        let mut values = self.values.clone();
        Zip::indexed(&mut values).for_each(|(i1, j1, i2, j2), v| {
            *v *= if photon == 1 { m[[i1, j1]] } else { m[[i2, j2]] };
        });
        Ok(DenseAmplitude {
            grid: self.grid,
            representation: self.representation,
            values,
        })
    }
}

impl Biphoton for DenseAmplitude {
    fn grid(&self) -> &Grid {
        &self.grid
    }

    fn representation(&self) -> Representation {
        self.representation
    }

    fn norm_sqr(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.grid.weight().powi(2)
    }

    fn sigma_inner(&self) -> Complex64 {
        let n = self.grid.n();
        let mut acc = Complex64::default();
        for ((i1, j1, i2, j2), v) in self.values.indexed_iter() {
            acc += self.values[[i2, n - 1 - j2, i1, n - 1 - j1]].conj() * v;
        }
        acc * self.grid.weight().powi(2)
    }

    fn scaled(&self, factor: Complex64) -> Self {
        DenseAmplitude {
            grid: self.grid,
            representation: self.representation,
            values: self.values.mapv(|v| v * factor),
        }
    }

    fn map_photon1(&self, multiplier: &TransverseMode) -> Result<Self> {
        self.map_photon(multiplier, 1)
    }

    fn map_photon2(&self, multiplier: &TransverseMode) -> Result<Self> {
        self.map_photon(multiplier, 2)
    }
}
