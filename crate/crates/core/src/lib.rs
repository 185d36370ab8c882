//! Numerical simulation of two-photon interference in transverse modes.
//!
//! Two photons meeting at a beamsplitter leave through different ports with
//! probability `P_c = (1 - J)/2`, where `J` is the overlap of the two-photon
//! amplitude with its exchanged and y-reflected image. The crate builds
//! amplitudes for OAM, Hermite-Gaussian, SPDC and thin-crystal states,
//! evaluates `P_c` and the witness `P_c > 1/2`, and simulates a
//! Mach-Zehnder scheme with spiral phase plates that turns coalescence into
//! anti-coalescence.

pub mod biphoton;
pub mod error;
pub mod interference;
pub mod mzi;
pub mod numerics;
pub mod states;

pub use biphoton::{
    normalize, sigma_overlap, symmetry_decompose, Biphoton, CompressedAmplitude, DenseAmplitude, SumKernelAmplitude,
    Term, TwoPhotonAmplitude,
};
pub use error::{Error, Result};
pub use interference::{
    beamsplitter_output, coincidence_probability, entanglement_witness, BsOutput, BsPhases, Verdict,
};
pub use mzi::{
    delta_limit_oracle, mzi_coincidence, mzi_effective_amplitude, scan, MziGeometry, MziPhases, MziResult, MziScheme,
    ScanParameter, ScanResult, ScanSpec, Source, SourceForm, SppParams,
};
pub use numerics::{azimuth, fourier_2d, inner_product_2d, make_grid, Direction, Grid, Representation, TransverseMode};
pub use states::{
    bell_state, gaussian_g00, hermite_gaussian, oam_ring, product_state, spdc_dense, spdc_state, thin_crystal_gaussian,
    thin_crystal_kernel, BellKind, GaussianBeamParams, PumpProfile, SpdcParams,
};
