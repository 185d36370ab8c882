use std::f64::consts::PI;
use std::sync::Arc;

use ndarray::{Array2, Axis};
use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};

use super::{Grid, Representation, TransverseMode};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Momentum to position, kernel `exp(+i x·q) / 2π`.
    Forward,
    /// Position to momentum; the adjoint of [`Direction::Forward`].
    Inverse,
}

/// Discrete 2D Fourier transform between conjugate half-cell grids.
///
/// On midpoint lattices `x_j q_k = (2π/n)(j - c)(k - c)` with `c = (n-1)/2`,
/// so the kernel is a DFT wrapped in two diagonal phase ramps. The discrete
/// map is exactly unitary in the weighted norm and commutes exactly with the
/// y-reflection.
pub fn fourier_2d(mode: &TransverseMode, direction: Direction) -> Result<TransverseMode> {
    let expected = match direction {
        Direction::Forward => Representation::Momentum,
        Direction::Inverse => Representation::Position,
    };
    if mode.representation() != expected {
        return Err(Error::RepresentationMismatch {
            expected,
            found: mode.representation(),
        });
    }
    let grid_in = *mode.grid();
    let grid_out = grid_in.conjugate();
    let transform = AxisTransform::new(grid_in.n(), direction);
    let mut values = mode.values().as_standard_layout().into_owned();
    transform.apply_2d(
        values.as_slice_mut().expect("standard layout"),
        grid_in.spacing() / grid_out.spacing(),
    );
    TransverseMode::new(grid_out, expected.conjugate(), values)
}

/// Transforms every flattened mode stored as a row of `rows`; returns the
/// transformed rows and the conjugate grid.
pub(crate) fn transform_rows(rows: &Array2<Complex64>, grid: &Grid, direction: Direction) -> (Array2<Complex64>, Grid) {
    let grid_out = grid.conjugate();
    let transform = AxisTransform::new(grid.n(), direction);
    let scale = grid.spacing() / grid_out.spacing();
    let mut out = rows.as_standard_layout().into_owned();
    out.axis_iter_mut(Axis(0)).into_par_iter().for_each(|mut row| {
        transform.apply_2d(row.as_slice_mut().expect("contiguous row"), scale);
    });
    (out, grid_out)
}

struct AxisTransform {
    fft: Arc<dyn Fft<f64>>,
    ramp: Vec<Complex64>,
    global: Complex64,
    norm: f64,
}

impl AxisTransform {
    fn new(n: usize, direction: Direction) -> Self {
        let sign = match direction {
            Direction::Forward => 1.0,
            Direction::Inverse => -1.0,
        };
        let mut planner = FftPlanner::new();
        let fft = match direction {
            Direction::Forward => planner.plan_fft_inverse(n),
            Direction::Inverse => planner.plan_fft_forward(n),
        };
        let c = (n as f64 - 1.0) / 2.0;
        let ramp = (0..n)
            .map(|j| Complex64::from_polar(1.0, -sign * 2.0 * PI * c * j as f64 / n as f64))
            .collect();
        AxisTransform {
            fft,
            ramp,
            global: Complex64::from_polar(1.0, sign * 2.0 * PI * c * c / n as f64),
            norm: 1.0 / (n as f64).sqrt(),
        }
    }

    /// Transforms a row-major `n x n` block along both axes and applies the
    /// physical scale `d_in / d_out`.
    fn apply_2d(&self, block: &mut [Complex64], scale: f64) {
        let n = self.ramp.len();
        for row in block.chunks_exact_mut(n) {
            self.apply(row);
        }
        let mut column = vec![Complex64::default(); n];
        for j in 0..n {
            for i in 0..n {
                column[i] = block[i * n + j];
            }
            self.apply(&mut column);
            for i in 0..n {
                block[i * n + j] = column[i] * scale;
            }
        }
    }

    fn apply(&self, data: &mut [Complex64]) {
        for (v, r) in data.iter_mut().zip(&self.ramp) {
            *v *= r;
        }
        self.fft.process(data);
        let post = self.global * self.norm;
        for (v, r) in data.iter_mut().zip(&self.ramp) {
            *v *= r * post;
        }
    }
}
