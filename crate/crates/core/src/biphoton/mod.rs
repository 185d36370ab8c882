//! Two-photon amplitudes Φ(1, 2), the exchange-reflection involution
//!
//! ```text
//! σ: Φ(x1, y1, x2, y2) ↦ Φ(x2, -y2, x1, -y1)
//! ```
//!
//! and the symmetry observables built on `J = ⟨σΦ, Φ⟩`.
//!
//! Three storage forms share the [`Biphoton`] interface:
//!
//! * [`TwoPhotonAmplitude`]: a finite sum of product terms `Σ_r c_r f_r ⊗ g_r`,
//!   the working representation.
//! * [`DenseAmplitude`]: the full 4D array, restricted to small grids and used
//!   as a brute-force oracle.
//! * [`SumKernelAmplitude`]: `m1(x1) m2(x2) kx(x1 + x2) ky(y1 + y2)`, the
//!   exact structured form of sum-correlated Gaussian states whose product-sum
//!   rank is too large for wide apertures.

mod amplitude;
mod dense;
mod kernel;
pub(crate) mod linalg;

pub use amplitude::{CompressedAmplitude, Term, TwoPhotonAmplitude, RECOMPRESS_TOLERANCE};
pub use dense::{DenseAmplitude, MAX_DENSE_POINTS};
pub use kernel::SumKernelAmplitude;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{Grid, Representation, TransverseMode};

/// Normalization slack accepted by the observables.
pub const NORM_TOLERANCE: f64 = 1e-6;

/// Largest imaginary part of `J` treated as round-off.
pub const IMAG_TOLERANCE: f64 = 1e-10;

/// Common interface of the two-photon amplitude forms.
pub trait Biphoton: Clone + Sized {
    fn grid(&self) -> &Grid;

    fn representation(&self) -> Representation;

    /// `‖Φ‖²` with the midpoint weights of both photons.
    fn norm_sqr(&self) -> f64;

    /// `⟨σΦ, Φ⟩`, unnormalized.
    fn sigma_inner(&self) -> Complex64;

    fn scaled(&self, factor: Complex64) -> Self;

    /// Multiplies photon 1 pointwise by `multiplier`.
    fn map_photon1(&self, multiplier: &TransverseMode) -> Result<Self>;

    /// Multiplies photon 2 pointwise by `multiplier`.
    fn map_photon2(&self, multiplier: &TransverseMode) -> Result<Self>;

    /// Returns `Φ / ‖Φ‖`.
    fn normalize(&self) -> Result<Self> {
        let norm = self.norm_sqr().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::ZeroNorm);
        }
        Ok(self.scaled(Complex64::from(1.0 / norm)))
    }

    fn check_multiplier(&self, multiplier: &TransverseMode) -> Result<()> {
        if multiplier.grid() != self.grid() {
            return Err(Error::GridMismatch);
        }
        if multiplier.representation() != self.representation() {
            return Err(Error::RepresentationMismatch {
                expected: self.representation(),
                found: multiplier.representation(),
            });
        }
        Ok(())
    }
}

pub fn normalize<A: Biphoton>(amp: &A) -> Result<A> {
    amp.normalize()
}

/// `J = ⟨σΦ, Φ⟩` for a normalized amplitude; real and within `[-1, 1]`.
pub fn sigma_overlap<A: Biphoton>(amp: &A) -> Result<f64> {
    let norm = amp.norm_sqr();
    if (norm - 1.0).abs() > NORM_TOLERANCE {
        return Err(Error::NotNormalized(norm));
    }
    let j = amp.sigma_inner();
    if j.im.abs() > IMAG_TOLERANCE {
        return Err(Error::NonRealOverlap(j.im));
    }
    Ok(j.re)
}

/// Weights `(‖Φ_s‖², ‖Φ_a‖²)` of `Φ_s = (Φ + σΦ)/2` and `Φ_a = (Φ - σΦ)/2`,
/// equal to `((1 + J)/2, (1 - J)/2)`.
pub fn symmetry_decompose<A: Biphoton>(amp: &A) -> Result<(f64, f64)> {
    let j = sigma_overlap(amp)?;
    Ok(((1.0 + j) / 2.0, (1.0 - j) / 2.0))
}
