//! The lossless 50/50 beamsplitter, the coincidence probability and the
//! one-sided entanglement witness `P_c > 1/2`.
//!
//! Input modes transform as
//!
//! ```text
//! a1†(q) -> [e^{iφτ} b1†(q) - e^{-iφρ} b2†(Πq)] / √2
//! a2†(q) -> [e^{iφρ} b1†(Πq) + e^{-iφτ} b2†(q)] / √2
//! ```
//!
//! where `Π` flips the sign of the y-component (the reflected beam is
//! mirrored). The phases only dress amplitudes; no probability depends on them.

use num_complex::Complex64;

use crate::biphoton::{sigma_overlap, Biphoton, TwoPhotonAmplitude};
use crate::error::{Error, Result};

/// Default margin of the entanglement witness above `1/2`.
pub const DEFAULT_WITNESS_MARGIN: f64 = 1e-6;

/// Transmission and reflection phases of the beamsplitter.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct BsPhases {
    pub phi_tau: f64,
    pub phi_rho: f64,
}

impl BsPhases {
    pub fn new(phi_tau: f64, phi_rho: f64) -> Self {
        BsPhases { phi_tau, phi_rho }
    }

    /// `φ = φτ + φρ`.
    pub fn phi(&self) -> f64 {
        self.phi_tau + self.phi_rho
    }
}

/// Output port statistics of the beamsplitter.
#[derive(Debug, Clone)]
pub struct BsOutput {
    pub p_both_port1: f64,
    pub p_both_port2: f64,
    pub p_coincidence: f64,
    /// `(Φ - σΦ)/2`, the `b1† b2†` amplitude; its squared norm is `p_coincidence`.
    pub coincidence_amplitude: TwoPhotonAmplitude,
}

impl BsOutput {
    pub fn total(&self) -> f64 {
        self.p_both_port1 + self.p_both_port2 + self.p_coincidence
    }
}

/// `P_c = (1 - J)/2` for a normalized amplitude.
pub fn coincidence_probability<A: Biphoton>(amp: &A) -> Result<f64> {
    Ok((1.0 - sigma_overlap(amp)?) / 2.0)
}

fn check_normalized<A: Biphoton>(amp: &A) -> Result<()> {
    let norm = amp.norm_sqr();
    if (norm - 1.0).abs() > crate::biphoton::NORM_TOLERANCE {
        return Err(Error::NotNormalized(norm));
    }
    Ok(())
}

/// The full output state, with each port probability evaluated from its own
/// amplitude:
///
/// ```text
/// B1(1, 2) =  e^{iφ}  Φ(1, Π2) / 2       on b1† b1†
/// B2(1, 2) = -e^{-iφ} Φ(Π1, 2) / 2       on b2† b2†
/// C(1, 2)  = (Φ - σΦ)(1, 2) / 2          on b1† b2†
/// ```
///
/// A bunched port holding `∫ B b†b†|0⟩` has probability `⟨B, B + Bᵀ⟩`.
pub fn beamsplitter_output(amp: &TwoPhotonAmplitude, phases: BsPhases) -> Result<BsOutput> {
    check_normalized(amp)?;
    let phi = phases.phi();
    let b1 = amp.reflect_photon2().scaled(Complex64::from_polar(0.5, phi));
    let b2 = amp.reflect_photon1().scaled(Complex64::from_polar(-0.5, -phi));
    let bunched = |b: &TwoPhotonAmplitude| -> Result<f64> { Ok(b.inner(&b.add(&b.swap_photons())?)?.re) };
    let coincidence_amplitude = amp.antisymmetric_part();
    Ok(BsOutput {
        p_both_port1: bunched(&b1)?,
        p_both_port2: bunched(&b2)?,
        p_coincidence: coincidence_amplitude.norm_sqr(),
        coincidence_amplitude,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// `P_c > 1/2 + margin`: no product state can produce this.
    Entangled,
    /// The witness does not fire; the state may still be entangled.
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Entangled => "entangled",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

pub fn entanglement_witness<A: Biphoton>(amp: &A, margin: f64) -> Result<Verdict> {
    if !(margin.is_finite() && margin >= 0.0) {
        return Err(Error::param("margin", format!("must be non-negative, got {margin}")));
    }
    Ok(if coincidence_probability(amp)? > 0.5 + margin {
        Verdict::Entangled
    } else {
        Verdict::Inconclusive
    })
}
