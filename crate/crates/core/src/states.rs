//! Factories for the physical states: OAM rings and Bell states, Gaussian and
//! Hermite-Gaussian modes, SPDC biphotons and the thin-crystal Gaussian
//! biphoton in the position representation.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::biphoton::linalg::{truncated_real_symmetric, truncated_svd};
use crate::biphoton::{Biphoton, CompressedAmplitude, DenseAmplitude, SumKernelAmplitude, Term, TwoPhotonAmplitude};
use crate::error::{Error, Result};
use crate::numerics::{Grid, Representation, TransverseMode};

/// Largest relative norm error accepted from the SPDC rank truncation.
pub const SPDC_TRUNCATION_LIMIT: f64 = 1e-6;

/// Relative tail targeted when compressing the SPDC state.
pub const SPDC_TOLERANCE: f64 = 1e-7;

fn check_positive(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::param(name, format!("must be positive and finite, got {value}")))
    }
}

fn check_resolution(w0: f64, grid: &Grid) -> Result<()> {
    check_positive("w0", w0)?;
    // At least four samples across the 1/e² intensity width 4/w0.
    if grid.spacing() * w0 > 1.0 {
        return Err(Error::UnderResolved(format!(
            "momentum spacing {} too coarse for waist {w0}",
            grid.spacing()
        )));
    }
    Ok(())
}

/// Physicists' Hermite polynomial `H_k(x)`.
pub fn hermite(k: u32, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, 2.0 * x);
    if k == 0 {
        return prev;
    }
    for j in 1..k {
        let next = 2.0 * x * cur - 2.0 * j as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Normalized fundamental Gaussian `v(q) ∝ exp(-|q|² w0² / 4)` on a momentum grid.
pub fn gaussian_g00(w0: f64, grid: Grid) -> Result<TransverseMode> {
    check_resolution(w0, &grid)?;
    TransverseMode::from_fn(grid, Representation::Momentum, |qx, qy| {
        Complex64::from((-(qx * qx + qy * qy) * w0 * w0 / 4.0).exp())
    })
    .normalized()
}

/// Normalized Hermite-Gaussian mode `HG_mn` on a momentum grid, with `m`
/// along x and `n` along y: the Fourier transform of the position-space mode
/// `H_m(√2x/w0) H_n(√2y/w0) exp(-|x|²/w0²)`, sampled in closed form.
pub fn hermite_gaussian(m: u32, n: u32, w0: f64, grid: Grid) -> Result<TransverseMode> {
    check_resolution(w0, &grid)?;
    TransverseMode::from_fn(grid, Representation::Momentum, |qx, qy| {
        hermite_gaussian_momentum(m, n, w0, qx, qy)
    })
    .normalized()
}

/// Position-space Hermite-Gaussian `H_m(√2x/w0) H_n(√2y/w0) exp(-|x|²/w0²)`
/// (unnormalized).
pub fn hermite_gaussian_position(m: u32, n: u32, w0: f64, x: f64, y: f64) -> f64 {
    let s = 2f64.sqrt() / w0;
    hermite(m, s * x) * hermite(n, s * y) * (-(x * x + y * y) / (w0 * w0)).exp()
}

/// Momentum profile of `HG_mn` (unnormalized) under the inverse transform
/// kernel `e^{-ix·q}`: `(-i)^{m+n} H_m(w0 qx/√2) H_n(w0 qy/√2) exp(-|q|² w0²/4)`.
pub fn hermite_gaussian_momentum(m: u32, n: u32, w0: f64, qx: f64, qy: f64) -> Complex64 {
    let s = w0 / 2f64.sqrt();
    let phase = Complex64::new(0.0, -1.0).powu(m + n);
    phase * hermite(m, s * qx) * hermite(n, s * qy) * (-(qx * qx + qy * qy) * w0 * w0 / 4.0).exp()
}

/// Normalized ring mode `(qx + i sgn(l) qy)^|l| exp(-|q|² w0² / 4)`, which is
/// `q^|l| e^{ilθ}` times a Gaussian. The y-reflection maps `l` to `-l` exactly.
pub fn oam_ring(l: i32, w0: f64, grid: Grid) -> Result<TransverseMode> {
    check_positive("w0", w0)?;
    let sign = f64::from(l.signum());
    TransverseMode::from_fn(grid, Representation::Momentum, |qx, qy| {
        Complex64::new(qx, sign * qy).powu(l.unsigned_abs()) * (-(qx * qx + qy * qy) * w0 * w0 / 4.0).exp()
    })
    .normalized()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BellKind {
    /// `(|l,l⟩ + |-l,-l⟩)/√2`
    PsiPlus,
    /// `(|l,l⟩ - |-l,-l⟩)/√2`
    PsiMinus,
    /// `(|l,-l⟩ + |-l,l⟩)/√2`
    PhiPlus,
    /// `(|l,-l⟩ - |-l,l⟩)/√2`
    PhiMinus,
}

impl BellKind {
    pub const ALL: [BellKind; 4] = [
        BellKind::PsiPlus,
        BellKind::PsiMinus,
        BellKind::PhiPlus,
        BellKind::PhiMinus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BellKind::PsiPlus => "psi-plus",
            BellKind::PsiMinus => "psi-minus",
            BellKind::PhiPlus => "phi-plus",
            BellKind::PhiMinus => "phi-minus",
        }
    }
}

impl std::str::FromStr for BellKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BellKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::param("bell", format!("unknown Bell state `{s}`")))
    }
}

/// OAM Bell state on a momentum grid, as a normalized rank-2 amplitude.
pub fn bell_state(kind: BellKind, l: i32, w0: f64, grid: Grid) -> Result<TwoPhotonAmplitude> {
    if l == 0 {
        return Err(Error::param("l", "Bell states need l != 0"));
    }
    let plus = oam_ring(l, w0, grid)?;
    let minus = oam_ring(-l, w0, grid)?;
    let (first, second, sign) = match kind {
        BellKind::PsiPlus => ((&plus, &plus), (&minus, &minus), 1.0),
        BellKind::PsiMinus => ((&plus, &plus), (&minus, &minus), -1.0),
        BellKind::PhiPlus => ((&plus, &minus), (&minus, &plus), 1.0),
        BellKind::PhiMinus => ((&plus, &minus), (&minus, &plus), -1.0),
    };
    TwoPhotonAmplitude::from_terms(vec![
        Term {
            coefficient: Complex64::from(FRAC_1_SQRT_2),
            photon1: first.0.clone(),
            photon2: first.1.clone(),
        },
        Term {
            coefficient: Complex64::from(sign * FRAC_1_SQRT_2),
            photon1: second.0.clone(),
            photon2: second.1.clone(),
        },
    ])?
    .normalize()
}

/// Normalized product state `f ⊗ g`.
pub fn product_state(f: &TransverseMode, g: &TransverseMode) -> Result<TwoPhotonAmplitude> {
    TwoPhotonAmplitude::product(f, g)?.normalize()
}

/// Closed-form pump profiles `v(q)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PumpProfile {
    Gaussian { w0: f64 },
    HermiteGaussian { m: u32, n: u32, w0: f64 },
}

impl PumpProfile {
    pub fn waist(&self) -> f64 {
        match *self {
            PumpProfile::Gaussian { w0 } | PumpProfile::HermiteGaussian { w0, .. } => w0,
        }
    }

    pub fn value(&self, qx: f64, qy: f64) -> Complex64 {
        match *self {
            PumpProfile::Gaussian { w0 } => hermite_gaussian_momentum(0, 0, w0, qx, qy),
            PumpProfile::HermiteGaussian { m, n, w0 } => hermite_gaussian_momentum(m, n, w0, qx, qy),
        }
    }

    /// Sign of `v` under `qy -> -qy`.
    pub fn y_parity(&self) -> f64 {
        match *self {
            PumpProfile::Gaussian { .. } => 1.0,
            PumpProfile::HermiteGaussian { n, .. } => {
                if n % 2 == 0 {
                    1.0
                } else {
                    -1.0
                }
            }
        }
    }

    /// The pump sampled as a normalized mode on `grid`.
    pub fn mode(&self, grid: Grid) -> Result<TransverseMode> {
        check_resolution(self.waist(), &grid)?;
        TransverseMode::from_fn(grid, Representation::Momentum, |qx, qy| self.value(qx, qy)).normalized()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpdcParams {
    pub crystal_length: f64,
    pub pump_wavenumber: f64,
    pub pump: PumpProfile,
}

impl SpdcParams {
    pub fn validate(&self) -> Result<()> {
        check_positive("crystal_length", self.crystal_length)?;
        check_positive("pump_wavenumber", self.pump_wavenumber)?;
        check_positive("w0", self.pump.waist())
    }

    /// `Φ(q1, q2) = v(q1 + q2) sinc(L |q1 - q2|² / (4 k_p))`, unnormalized.
    pub fn amplitude(&self, q1: (f64, f64), q2: (f64, f64)) -> Complex64 {
        let (sx, sy) = (q1.0 + q2.0, q1.1 + q2.1);
        let (dx, dy) = (q1.0 - q2.0, q1.1 - q2.1);
        let arg = self.crystal_length * (dx * dx + dy * dy) / (4.0 * self.pump_wavenumber);
        self.pump.value(sx, sy) * sinc(arg)
    }
}

/// `sin(x)/x` with `sinc(0) = 1`.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

fn spdc_matrix(params: &SpdcParams, grid: &Grid) -> DMatrix<Complex64> {
    let n = grid.n();
    let q = grid.samples();
    DMatrix::from_fn(n * n, n * n, |a, b| {
        params.amplitude((q[a / n], q[a % n]), (q[b / n], q[b % n]))
    })
}

/// The SPDC state in dense form (small grids only), normalized.
pub fn spdc_dense(params: &SpdcParams, grid: Grid) -> Result<DenseAmplitude> {
    params.validate()?;
    check_resolution(params.pump.waist(), &grid)?;
    DenseAmplitude::from_fn(grid, Representation::Momentum, |qx1, qy1, qx2, qy2| {
        params.amplitude((qx1, qy1), (qx2, qy2))
    })?
    .normalize()
}

/// The SPDC state compressed by a truncated SVD across the photon split.
pub fn spdc_state(params: &SpdcParams, grid: Grid) -> Result<CompressedAmplitude> {
    params.validate()?;
    check_resolution(params.pump.waist(), &grid)?;
    let matrix = spdc_matrix(params, &grid);
    // Φ(q1, q2) = Φ(q2, q1), and real pumps up to a phase admit the faster
    // symmetric eigendecomposition.
    let f = match truncated_real_symmetric(&matrix, SPDC_TOLERANCE, usize::MAX)? {
        Some(f) => f,
        None => truncated_svd(matrix, SPDC_TOLERANCE, usize::MAX)?,
    };
    if f.truncation_error > SPDC_TRUNCATION_LIMIT {
        return Err(Error::TruncationExceeded {
            error: f.truncation_error,
            limit: SPDC_TRUNCATION_LIMIT,
        });
    }
    let amplitude =
        TwoPhotonAmplitude::from_parts(grid, Representation::Momentum, f.coefficients, f.left, f.right).normalize()?;
    Ok(CompressedAmplitude {
        amplitude,
        truncation_error: f.truncation_error,
    })
}

/// Gaussian pump beam parameters for the thin-crystal biphoton.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianBeamParams {
    pub w0: f64,
    pub z: f64,
    pub pump_wavenumber: f64,
}

impl Default for GaussianBeamParams {
    fn default() -> Self {
        GaussianBeamParams {
            w0: 1.0,
            z: 1.0,
            pump_wavenumber: 2.0,
        }
    }
}

impl GaussianBeamParams {
    pub fn validate(&self) -> Result<()> {
        check_positive("w0", self.w0)?;
        check_positive("pump_wavenumber", self.pump_wavenumber)?;
        if !(self.z.is_finite() && self.z >= 0.0) {
            return Err(Error::param("z", format!("must be non-negative, got {}", self.z)));
        }
        Ok(())
    }

    /// `z0 = k_p w0² / 2`.
    pub fn rayleigh_length(&self) -> f64 {
        self.pump_wavenumber * self.w0 * self.w0 / 2.0
    }

    /// `w(z) = w0 sqrt(1 + z²/z0²)`.
    pub fn spot_size(&self) -> f64 {
        let z0 = self.rayleigh_length();
        self.w0 * (1.0 + (self.z / z0).powi(2)).sqrt()
    }

    /// `R(z) = (z² + z0²)/z`; `None` at the waist where it diverges.
    pub fn curvature_radius(&self) -> Option<f64> {
        let z0 = self.rayleigh_length();
        (self.z > 0.0).then(|| (self.z * self.z + z0 * z0) / self.z)
    }
}

/// The thin-crystal biphoton in its exact structured form
///
/// ```text
/// Ψ = e^{ia|x1|²} e^{ia|x2|²} exp(-(1/(4w²) + ic)|x1 + x2|²),
/// c = k_p z0² / (8 z² R),  a = 2c + k_p / (4R),
/// ```
///
/// normalized on the position `grid`. With `keep_phase = false`, or at
/// `z = 0`, only the real Gaussian in `x1 + x2` remains.
pub fn thin_crystal_kernel(params: &GaussianBeamParams, grid: Grid, keep_phase: bool) -> Result<SumKernelAmplitude> {
    params.validate()?;
    let w = params.spot_size();
    let kp = params.pump_wavenumber;
    let phases = params.curvature_radius().filter(|_| keep_phase).map(|r| {
        let z0 = params.rayleigh_length();
        let c = kp * z0 * z0 / (8.0 * params.z * params.z * r);
        (c, 2.0 * c + kp / (4.0 * r))
    });
    let c = phases.map_or(0.0, |p| p.0);
    let kernel = |s: f64| Complex64::new(-s * s / (4.0 * w * w), -c * s * s).exp();
    let mut amp = SumKernelAmplitude::from_kernels(grid, Representation::Position, kernel, kernel)?;
    if let Some((_, a)) = phases {
        let chirp = TransverseMode::from_fn(grid, Representation::Position, |x, y| {
            Complex64::new(0.0, a * (x * x + y * y)).exp()
        });
        amp = amp.map_photon1(&chirp)?.map_photon2(&chirp)?;
    }
    amp.normalize()
}

/// Product-sum expansion of [`thin_crystal_kernel`], truncated at relative
/// tail `tolerance`.
pub fn thin_crystal_gaussian(
    params: &GaussianBeamParams,
    grid: Grid,
    keep_phase: bool,
    tolerance: f64,
) -> Result<CompressedAmplitude> {
    let kernel = thin_crystal_kernel(params, grid, keep_phase)?;
    let compressed = kernel.to_product_sum(tolerance, usize::MAX)?;
    Ok(CompressedAmplitude {
        amplitude: compressed.amplitude.normalize()?,
        truncation_error: compressed.truncation_error,
    })
}
