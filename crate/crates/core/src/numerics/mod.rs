//! Grids, midpoint quadrature, single-photon transverse modes and the 2D
//! Fourier transform linking the momentum and position representations.

pub(crate) mod fourier;
mod grid;
mod mode;

pub use fourier::{fourier_2d, Direction};
pub use grid::{make_grid, Grid, MIN_POINTS};
pub use mode::{inner_product_2d, Representation, TransverseMode};

/// Azimuthal angle of `(x, y)` mapped into `[0, 2π)`.
pub fn azimuth(x: f64, y: f64) -> f64 {
    let theta = y.atan2(x);
    if theta < 0.0 {
        theta + std::f64::consts::TAU
    } else {
        theta
    }
}
