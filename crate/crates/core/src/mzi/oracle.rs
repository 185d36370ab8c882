use std::f64::consts::{PI, TAU};

use super::{MziPhases, SppParams, MIN_THROUGHPUT};
use crate::error::{Error, Result};

/// Midpoint nodes used by [`delta_limit_oracle`].
pub const ORACLE_NODES: usize = 8192;

/// Coincidence probability in the limit of perfectly anti-correlated photon
/// positions (`x2 = -x1`), where the amplitude reduces to the envelope on a
/// ring:
///
/// ```text
/// P_c = (1 - I)/2,   I = ∫ s(θ) s(θ') dθ / ∫ s(θ)² dθ,
/// s(θ) = sin[ζ(θ - π) + α+],   θ' = (π - θ) mod 2π.
/// ```
///
/// `θ'` is the azimuth of the reflected partner `(-x1, y1)`.
pub fn delta_limit_oracle(spp: SppParams, phases: MziPhases) -> Result<f64> {
    let s = |theta: f64| (spp.zeta * (theta - PI) + phases.alpha_plus).sin();
    let h = TAU / ORACLE_NODES as f64;
    let (mut cross, mut norm) = (0.0, 0.0);
    for k in 0..ORACLE_NODES {
        let theta = (k as f64 + 0.5) * h;
        let v = s(theta);
        cross += v * s((PI - theta).rem_euclid(TAU));
        norm += v * v;
    }
    if norm * h < MIN_THROUGHPUT {
        return Err(Error::Degenerate(format!(
            "envelope vanishes at zeta = {}, alpha_plus = {}",
            spp.zeta, phases.alpha_plus
        )));
    }
    Ok(0.5 * (1.0 - cross / norm))
}
