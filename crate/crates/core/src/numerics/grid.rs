use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Smallest accepted number of samples per axis.
pub const MIN_POINTS: usize = 8;

/// Square, uniform sampling lattice shared by both transverse axes.
///
/// Samples sit at cell midpoints, `x_i = -h + (i + 1/2) d` with `d = 2h / n`.
/// With `n` even the origin is never sampled and the lattice is closed under
/// negation (`x_{n-1-i} = -x_i`), which makes the y-reflection an exact index
/// permutation.
#[derive(Debug, Clone, Copy)]
pub struct Grid {
    n: usize,
    half_width: f64,
    spacing: f64,
}

/// Builds a [`Grid`] with `n` points per axis spanning `(-half_width, half_width)`.
pub fn make_grid(n: usize, half_width: f64) -> Result<Grid> {
    Grid::new(n, half_width)
}

impl Grid {
    pub fn new(n: usize, half_width: f64) -> Result<Self> {
        if n < MIN_POINTS || n % 2 != 0 {
            return Err(Error::InvalidGrid(format!(
                "points per axis must be even and at least {MIN_POINTS}, got {n}"
            )));
        }
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(Error::InvalidGrid(format!(
                "half width must be positive and finite, got {half_width}"
            )));
        }
        Ok(Grid {
            n,
            half_width,
            spacing: 2.0 * half_width / n as f64,
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    #[inline]
    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    /// Number of samples in the 2D lattice.
    #[inline]
    pub fn len(&self) -> usize {
        self.n * self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Midpoint quadrature weight of one 2D cell.
    #[inline]
    pub fn weight(&self) -> f64 {
        self.spacing * self.spacing
    }

    #[inline]
    pub fn sample(&self, i: usize) -> f64 {
        (2.0 * i as f64 + 1.0 - self.n as f64) * (0.5 * self.spacing)
    }

    pub fn samples(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.sample(i)).collect()
    }

    /// Index of the sample at `-sample(i)`.
    #[inline]
    pub fn mirror(&self, i: usize) -> usize {
        self.n - 1 - i
    }

    /// Value of `x_i + x_j`, which lies on the integer lattice `s d` with
    /// `s = i + j - (n - 1)`.
    #[inline]
    pub fn pair_sum(&self, i: usize, j: usize) -> f64 {
        (i as f64 + j as f64 - (self.n as f64 - 1.0)) * self.spacing
    }

    /// The reciprocal lattice reached by the discrete Fourier transform:
    /// same `n`, spacing `π / half_width`.
    pub fn conjugate(&self) -> Grid {
        Grid {
            n: self.n,
            half_width: self.n as f64 * PI / (2.0 * self.half_width),
            spacing: PI / self.half_width,
        }
    }
}

impl PartialEq for Grid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && (self.half_width - other.half_width).abs() <= 1e-12 * self.half_width.max(other.half_width)
    }
}
