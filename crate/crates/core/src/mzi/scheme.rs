use super::{circular_aperture, fresnel_phase, mzi_effective_amplitude, MziGeometry, MziPhases, SppParams};
use crate::biphoton::{Biphoton, SumKernelAmplitude, TwoPhotonAmplitude};
use crate::error::{Error, Result};
use crate::interference::coincidence_probability;
use crate::numerics::{make_grid, Grid, Representation};
use crate::states::{thin_crystal_kernel, GaussianBeamParams};

/// How the thin-crystal state is held during the computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SourceForm {
    /// The exact sum-kernel form; cost independent of the Schmidt rank.
    Structured,
    /// A product-sum expansion truncated at the given relative tail.
    ProductSum { tolerance: f64 },
}

#[derive(Debug, Clone)]
pub enum Source {
    /// The Gaussian-pumped thin-crystal biphoton observed at `z = z1 = z2`.
    ThinCrystal {
        w0: f64,
        keep_phase: bool,
        form: SourceForm,
    },
    /// An arbitrary normalized momentum amplitude, propagated to `z1`, `z2`
    /// and then Fourier transformed onto the conjugate position grid.
    Momentum(TwoPhotonAmplitude),
}

impl Default for Source {
    fn default() -> Self {
        Source::ThinCrystal {
            w0: 1.0,
            keep_phase: true,
            form: SourceForm::Structured,
        }
    }
}

#[derive(Debug, Clone)]
enum Prepared {
    Kernel(SumKernelAmplitude),
    Terms(TwoPhotonAmplitude),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MziResult {
    pub zeta: f64,
    pub alpha_plus: f64,
    /// Coincidence probability given that photon 1 reached the last beamsplitter.
    pub conditional_pc: f64,
    /// Probability that photon 1 reaches the last beamsplitter.
    pub throughput: f64,
}

impl MziResult {
    /// Unconditional coincidence rate `η · P_c`.
    pub fn absolute_pc(&self) -> f64 {
        self.throughput * self.conditional_pc
    }
}

/// The two-photon state at the SPP plane, prepared once and then evaluated
/// for any `ζ` and `α±`.
#[derive(Debug, Clone)]
pub struct MziScheme {
    prepared: Prepared,
    geometry: MziGeometry,
    truncation_error: f64,
}

impl MziScheme {
    pub fn prepare(source: &Source, geometry: &MziGeometry) -> Result<Self> {
        geometry.validate()?;
        let (prepared, truncation_error) = match source {
            Source::ThinCrystal { w0, keep_phase, form } => {
                if geometry.z1 != geometry.z2 {
                    return Err(Error::param(
                        "z2",
                        format!(
                            "the thin-crystal source needs z1 = z2, got {} and {}",
                            geometry.z1, geometry.z2
                        ),
                    ));
                }
                let beam = GaussianBeamParams {
                    w0: *w0,
                    z: geometry.z1,
                    pump_wavenumber: 2.0 * geometry.k,
                };
                beam.validate()?;
                let grid = make_grid(geometry.grid_n, geometry.aperture_factor * beam.spot_size())?;
                let kernel = thin_crystal_kernel(&beam, grid, *keep_phase)?;
                let kernel = apply_aperture(&kernel, grid)?;
                match *form {
                    SourceForm::Structured => (Prepared::Kernel(kernel), 0.0),
                    SourceForm::ProductSum { tolerance } => {
                        let c = kernel.to_product_sum(tolerance, usize::MAX)?;
                        (Prepared::Terms(c.amplitude.normalize()?), c.truncation_error)
                    }
                }
            }
            Source::Momentum(amp) => {
                let propagated = fresnel_phase(amp, geometry.z1, geometry.z2, geometry.k)?;
                let position = propagated.position_representation()?;
                let grid = *position.grid();
                (Prepared::Terms(apply_aperture(&position, grid)?), 0.0)
            }
        };
        Ok(MziScheme {
            prepared,
            geometry: *geometry,
            truncation_error,
        })
    }

    pub fn geometry(&self) -> &MziGeometry {
        &self.geometry
    }

    pub fn grid(&self) -> &Grid {
        match &self.prepared {
            Prepared::Kernel(k) => k.grid(),
            Prepared::Terms(t) => t.grid(),
        }
    }

    /// Relative norm error of the product-sum expansion (zero for exact forms).
    pub fn truncation_error(&self) -> f64 {
        self.truncation_error
    }

    pub fn evaluate(&self, spp: SppParams, phases: MziPhases) -> Result<MziResult> {
        let (conditional_pc, throughput) = match &self.prepared {
            Prepared::Kernel(k) => run(k, spp, phases)?,
            Prepared::Terms(t) => run(t, spp, phases)?,
        };
        Ok(MziResult {
            zeta: spp.zeta,
            alpha_plus: phases.alpha_plus,
            conditional_pc,
            throughput,
        })
    }
}

fn apply_aperture<A: Biphoton>(amp: &A, grid: Grid) -> Result<A> {
    debug_assert_eq!(amp.representation(), Representation::Position);
    let disc = circular_aperture(grid, grid.half_width());
    amp.map_photon1(&disc)?.map_photon2(&disc)?.normalize()
}

fn run<A: Biphoton>(amp: &A, spp: SppParams, phases: MziPhases) -> Result<(f64, f64)> {
    let (effective, eta) = mzi_effective_amplitude(amp, spp, phases)?;
    Ok((coincidence_probability(&effective)?, eta))
}

/// Prepares `source` and evaluates one point of the scheme.
pub fn mzi_coincidence(
    source: &Source,
    spp: SppParams,
    phases: MziPhases,
    geometry: &MziGeometry,
) -> Result<MziResult> {
    MziScheme::prepare(source, geometry)?.evaluate(spp, phases)
}
