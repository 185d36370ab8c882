//! The Mach-Zehnder scheme: photon 1 passes an interferometer whose arms carry
//! spiral phase plates `e^{±iζθ}`, which leaves it with the real envelope
//! `sin[ζ(θ1 - π) + α+]` before both photons meet at the last beamsplitter.

mod oracle;
mod scan;
mod scheme;

pub use oracle::{delta_limit_oracle, ORACLE_NODES};
pub use scan::{scan, RowFlag, ScanParameter, ScanResult, ScanRow, ScanSpec, REFERENCE_PC};
pub use scheme::{mzi_coincidence, MziResult, MziScheme, Source, SourceForm};

use num_complex::Complex64;

use crate::biphoton::Biphoton;
use crate::error::{Error, Result};
use crate::numerics::{azimuth, Grid, Representation, TransverseMode, MIN_POINTS};

/// Throughput below which no photon reaches the last beamsplitter.
pub const MIN_THROUGHPUT: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SppParams {
    pub zeta: f64,
}

impl SppParams {
    pub fn new(zeta: f64) -> Self {
        SppParams { zeta }
    }
}

/// The aggregate interferometer phases `α±`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct MziPhases {
    pub alpha_plus: f64,
    pub alpha_minus: f64,
}

/// Individual phases of the phase shifter (`φ`) and of the two
/// interferometer beamsplitters (`φ_jτ`, `φ_jρ`).
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RawMziPhases {
    pub phi: f64,
    pub phi1_tau: f64,
    pub phi1_rho: f64,
    pub phi2_tau: f64,
    pub phi2_rho: f64,
}

impl MziPhases {
    pub fn new(alpha_plus: f64, alpha_minus: f64) -> Self {
        MziPhases {
            alpha_plus,
            alpha_minus,
        }
    }

    /// `α± = [φ + φ1τ + φ2τ ± (φ1ρ - φ2ρ)] / 2`.
    pub fn from_raw(raw: RawMziPhases) -> Self {
        let common = raw.phi + raw.phi1_tau + raw.phi2_tau;
        let diff = raw.phi1_rho - raw.phi2_rho;
        MziPhases {
            alpha_plus: 0.5 * (common + diff),
            alpha_minus: 0.5 * (common - diff),
        }
    }
}

/// Source distances, wavenumber and the position grid of the last stage.
///
/// The grid is square with `grid_n` points per axis and half-width
/// `aperture_factor · w(z)`; a circular aperture of that radius is inscribed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MziGeometry {
    pub z1: f64,
    pub z2: f64,
    /// Photon wavenumber `k`; the pump has `k_p = 2k`.
    pub k: f64,
    /// Aperture radius in units of the spot size `w(z)`.
    pub aperture_factor: f64,
    pub grid_n: usize,
}

impl Default for MziGeometry {
    fn default() -> Self {
        MziGeometry {
            z1: 1.0,
            z2: 1.0,
            k: 1.0,
            aperture_factor: 40.0,
            grid_n: 64,
        }
    }
}

impl MziGeometry {
    pub fn validate(&self) -> Result<()> {
        for (name, z) in [("z1", self.z1), ("z2", self.z2)] {
            if !(z.is_finite() && z >= 0.0) {
                return Err(Error::param(name, format!("must be non-negative, got {z}")));
            }
        }
        if !(self.k.is_finite() && self.k > 0.0) {
            return Err(Error::param("k", format!("must be positive, got {}", self.k)));
        }
        if !(self.aperture_factor.is_finite() && self.aperture_factor > 0.0) {
            return Err(Error::param(
                "aperture_factor",
                format!("must be positive, got {}", self.aperture_factor),
            ));
        }
        if self.grid_n < MIN_POINTS || self.grid_n % 2 != 0 {
            return Err(Error::param(
                "grid_n",
                format!("must be even and at least {MIN_POINTS}, got {}", self.grid_n),
            ));
        }
        Ok(())
    }

    /// Non-fatal remarks about the geometry.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.aperture_factor < 4.0 {
            out.push(format!(
                "aperture_factor {} is below 4; the two photons are far from the δ-correlated limit",
                self.aperture_factor
            ));
        }
        out
    }
}

/// Multiplies photon `j` by `exp(i k z_j - i |q|² z_j / (2k))`.
pub fn fresnel_phase<A: Biphoton>(amp: &A, z1: f64, z2: f64, k: f64) -> Result<A> {
    if amp.representation() != Representation::Momentum {
        return Err(Error::RepresentationMismatch {
            expected: Representation::Momentum,
            found: amp.representation(),
        });
    }
    let grid = *amp.grid();
    let propagator = |z: f64| {
        TransverseMode::from_fn(grid, Representation::Momentum, move |qx, qy| {
            Complex64::from_polar(1.0, k * z - (qx * qx + qy * qy) * z / (2.0 * k))
        })
    };
    amp.map_photon1(&propagator(z1))?.map_photon2(&propagator(z2))
}

/// Pointwise `e^{iζθ}` with `θ ∈ [0, 2π)`.
pub fn spp_phase(mode: &TransverseMode, zeta: f64) -> TransverseMode {
    let grid = *mode.grid();
    let phase = TransverseMode::from_fn(grid, mode.representation(), |x, y| {
        Complex64::from_polar(1.0, zeta * azimuth(x, y))
    });
    mode.multiply(&phase).expect("same grid and representation")
}

/// The real multiplier `sin[ζ(θ - π) + α+]` left on photon 1 by the interferometer.
pub fn envelope(grid: Grid, representation: Representation, spp: SppParams, phases: MziPhases) -> TransverseMode {
    TransverseMode::from_fn(grid, representation, |x, y| {
        Complex64::from((spp.zeta * (azimuth(x, y) - std::f64::consts::PI) + phases.alpha_plus).sin())
    })
}

/// Indicator of the disc `|x| <= radius` on a position grid.
pub fn circular_aperture(grid: Grid, radius: f64) -> TransverseMode {
    let r2 = radius * radius;
    TransverseMode::from_fn(grid, Representation::Position, |x, y| {
        Complex64::from(if x * x + y * y <= r2 { 1.0 } else { 0.0 })
    })
}

/// Applies the envelope to photon 1 of a normalized position amplitude.
/// Returns the renormalized amplitude and the throughput `η`, the squared
/// norm that survived.
pub fn mzi_effective_amplitude<A: Biphoton>(amp: &A, spp: SppParams, phases: MziPhases) -> Result<(A, f64)> {
    if amp.representation() != Representation::Position {
        return Err(Error::RepresentationMismatch {
            expected: Representation::Position,
            found: amp.representation(),
        });
    }
    let before = amp.norm_sqr();
    if !(before.is_finite() && before > 0.0) {
        return Err(Error::ZeroNorm);
    }
    let out = amp.map_photon1(&envelope(*amp.grid(), Representation::Position, spp, phases))?;
    let eta = out.norm_sqr() / before;
    if eta.is_nan() || eta < MIN_THROUGHPUT {
        return Err(Error::Degenerate(format!(
            "throughput {eta:e} at zeta = {}, alpha_plus = {}: no photon reaches the last beamsplitter",
            spp.zeta, phases.alpha_plus
        )));
    }
    Ok((out.scaled(Complex64::from(1.0 / (eta * before).sqrt())), eta))
}
