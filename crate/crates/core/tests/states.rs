mod common;

use std::f64::consts::TAU;

use biphoton::states::{hermite, hermite_gaussian_position};
use biphoton::{
    bell_state, fourier_2d, gaussian_g00, hermite_gaussian, inner_product_2d, make_grid, oam_ring, product_state,
    sigma_overlap, spdc_dense, spdc_state, symmetry_decompose, thin_crystal_gaussian, thin_crystal_kernel, BellKind,
    Biphoton, Direction, Error, GaussianBeamParams, PumpProfile, Representation, SpdcParams, TransverseMode,
};
use num_complex::Complex64;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

#[test]
fn gaussian_is_real_positive_normalized_and_even() {
    let grid = make_grid(32, 6.0).unwrap();
    let g = gaussian_g00(1.0, grid).unwrap();
    assert!(close(g.norm_sqr(), 1.0, 1e-10));
    assert!(g.values().iter().all(|v| v.im == 0.0 && v.re > 0.0));
    let centre = g.values()[[15, 15]].re;
    assert!(g.values().iter().all(|v| v.re <= centre));
    assert_eq!(g.reflect_y(), g);
}

#[test]
fn coarse_grid_is_rejected() {
    let grid = make_grid(8, 20.0).unwrap();
    assert!(matches!(gaussian_g00(1.0, grid), Err(Error::UnderResolved(_))));
    assert!(gaussian_g00(-1.0, make_grid(16, 4.0).unwrap()).is_err());
}

#[test]
fn hermite_polynomials() {
    for x in [-1.3, 0.0, 0.4, 2.2] {
        assert_eq!(hermite(0, x), 1.0);
        assert_eq!(hermite(1, x), 2.0 * x);
        assert!(close(hermite(2, x), 4.0 * x * x - 2.0, 1e-12));
        assert!(close(hermite(3, x), 8.0 * x.powi(3) - 12.0 * x, 1e-12));
    }
}

#[test]
fn lowest_hermite_gaussian_is_the_gaussian() {
    let grid = make_grid(32, 6.0).unwrap();
    let hg = hermite_gaussian(0, 0, 1.0, grid).unwrap();
    let g = gaussian_g00(1.0, grid).unwrap();
    assert!(hg.max_abs_diff(&g) < 1e-10, "{}", hg.max_abs_diff(&g));
}

#[test]
fn hermite_gaussian_y_parity() {
    let grid = make_grid(32, 7.0).unwrap();
    for m in 0..3 {
        for n in 0..4 {
            let hg = hermite_gaussian(m, n, 1.2, grid).unwrap();
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert_eq!(hg.reflect_y(), hg.scaled(Complex64::from(sign)), "HG{m}{n}");
            assert!(close(hg.norm_sqr(), 1.0, 1e-10));
        }
    }
}

#[test]
fn closed_form_matches_transformed_position_mode() {
    let grid = make_grid(64, 12.0).unwrap();
    for (m, n) in [(0, 0), (1, 0), (0, 1), (2, 1), (1, 3)] {
        let position = TransverseMode::from_fn(grid.conjugate(), Representation::Position, |x, y| {
            Complex64::from(hermite_gaussian_position(m, n, 1.0, x, y))
        });
        let numeric = fourier_2d(&position, Direction::Inverse).unwrap().normalized().unwrap();
        let analytic = hermite_gaussian(m, n, 1.0, grid).unwrap();
        assert!(
            numeric.max_abs_diff(&analytic) < 1e-10,
            "HG{m}{n}: {}",
            numeric.max_abs_diff(&analytic)
        );
    }
}

#[test]
fn hermite_gaussians_are_orthogonal() {
    let grid = make_grid(32, 7.0).unwrap();
    let a = hermite_gaussian(1, 0, 1.0, grid).unwrap();
    let b = hermite_gaussian(0, 1, 1.0, grid).unwrap();
    // Direct midpoint quadrature of conj(a) b.
    let d = grid.spacing();
    let direct: Complex64 = a
        .values()
        .iter()
        .zip(b.values().iter())
        .map(|(x, y)| x.conj() * y)
        .sum::<Complex64>()
        * d
        * d;
    assert!(direct.norm() < 1e-10);
    assert!(inner_product_2d(&a, &b).unwrap().norm() < 1e-10);
    let c = hermite_gaussian(2, 0, 1.0, grid).unwrap();
    let e = hermite_gaussian(0, 0, 1.0, grid).unwrap();
    assert!(inner_product_2d(&c, &e).unwrap().norm() < 1e-10);
}

#[test]
fn zero_winding_ring_is_real_and_round() {
    let grid = make_grid(32, 8.0).unwrap();
    let r = oam_ring(0, 1.0, grid).unwrap();
    let v = r.values();
    for i in 0..32 {
        for j in 0..32 {
            assert_eq!(v[[i, j]].im, 0.0);
            assert!(close(v[[i, j]].re, v[[j, i]].re, 1e-15));
        }
    }
}

#[test]
fn rings_are_orthonormal() {
    let grid = make_grid(64, 10.0).unwrap();
    // 1D angular oracle: ∫ e^{i(l' - l)θ} dθ / 2π on a fine ring.
    let angular = |dl: i32| -> Complex64 {
        let nodes = 4096;
        (0..nodes)
            .map(|k| Complex64::from_polar(1.0, dl as f64 * (k as f64 + 0.5) * TAU / nodes as f64))
            .sum::<Complex64>()
            / nodes as f64
    };
    for l in -3..=3 {
        for lp in -3..=3 {
            let a = oam_ring(l, 1.0, grid).unwrap();
            let b = oam_ring(lp, 1.0, grid).unwrap();
            let inner = inner_product_2d(&a, &b).unwrap();
            let expected = if l == lp { Complex64::from(1.0) } else { angular(lp - l) };
            assert!((inner - expected).norm() < 1e-8, "l = {l}, l' = {lp}: {inner}");
        }
    }
}

#[test]
fn reflection_reverses_winding() {
    let grid = make_grid(32, 8.0).unwrap();
    for l in [1, 2, 3] {
        let plus = oam_ring(l, 1.0, grid).unwrap();
        let minus = oam_ring(-l, 1.0, grid).unwrap();
        assert!(plus.reflect_y().max_abs_diff(&minus) < 1e-12);
    }
}

#[test]
fn bell_state_symmetry() {
    let grid = make_grid(32, 8.0).unwrap();
    let weights = |kind| symmetry_decompose(&bell_state(kind, 1, 1.0, grid).unwrap()).unwrap();
    let (s, a) = weights(BellKind::PsiMinus);
    assert!(close(s, 0.0, 1e-12) && close(a, 1.0, 1e-12));
    for kind in [BellKind::PsiPlus, BellKind::PhiPlus, BellKind::PhiMinus] {
        let (s, a) = weights(kind);
        assert!(close(s, 1.0, 1e-12) && close(a, 0.0, 1e-12), "{kind:?}");
    }
    let psi = bell_state(BellKind::PsiPlus, 2, 1.0, grid).unwrap();
    assert_eq!(psi.rank(), 2);
    assert!(close(psi.norm_sqr(), 1.0, 1e-12));
    assert!(bell_state(BellKind::PsiPlus, 0, 1.0, grid).is_err());
}

#[test]
fn reflecting_one_photon_exchanges_the_families() {
    let grid = make_grid(16, 6.0).unwrap();
    let dense = |kind| bell_state(kind, 1, 1.0, grid).unwrap().to_dense().unwrap();
    let pairs = [
        (BellKind::PsiPlus, BellKind::PhiPlus, 1.0),
        (BellKind::PsiMinus, BellKind::PhiMinus, -1.0),
    ];
    for (psi, phi, sign) in pairs {
        let psi_amp = bell_state(psi, 1, 1.0, grid).unwrap();
        let reflected = psi_amp.reflect_photon1().to_dense().unwrap();
        assert!(reflected.max_abs_diff(&dense(phi).scaled(Complex64::from(sign))) < 1e-10);
        let back = bell_state(phi, 1, 1.0, grid)
            .unwrap()
            .reflect_photon1()
            .to_dense()
            .unwrap();
        assert!(back.max_abs_diff(&dense(psi).scaled(Complex64::from(sign))) < 1e-10);
        // Reflecting both photons keeps each family.
        let both = psi_amp.reflect_photon1().reflect_photon2().to_dense().unwrap();
        assert!(both.max_abs_diff(&dense(psi).scaled(Complex64::from(sign))) < 1e-10);
    }
}

#[test]
fn product_state_is_normalized_rank_one() {
    let grid = make_grid(16, 6.0).unwrap();
    let f = oam_ring(1, 1.0, grid).unwrap().scaled(Complex64::new(0.0, 3.0));
    let g = hermite_gaussian(1, 1, 1.0, grid).unwrap();
    let p = product_state(&f, &g).unwrap();
    assert_eq!(p.rank(), 1);
    assert!(close(p.norm_sqr(), 1.0, 1e-12));
    let other = make_grid(16, 5.0).unwrap();
    assert!(product_state(&f, &oam_ring(1, 1.0, other).unwrap()).is_err());
}

fn spdc(pump: PumpProfile) -> SpdcParams {
    SpdcParams {
        crystal_length: 2.0,
        pump_wavenumber: 2.0,
        pump,
    }
}

#[test]
fn spdc_symmetry_follows_pump_parity() {
    let grid = make_grid(16, 5.0).unwrap();
    let pumps = [
        PumpProfile::Gaussian { w0: 1.0 },
        PumpProfile::HermiteGaussian { m: 1, n: 0, w0: 1.0 },
        PumpProfile::HermiteGaussian { m: 0, n: 1, w0: 1.0 },
        PumpProfile::HermiteGaussian { m: 2, n: 1, w0: 1.0 },
        PumpProfile::HermiteGaussian { m: 1, n: 2, w0: 1.0 },
    ];
    for pump in pumps {
        let state = spdc_state(&spdc(pump), grid).unwrap();
        assert!(state.truncation_error < 1e-6);
        let j = sigma_overlap(&state.amplitude).unwrap();
        assert!(close(j, pump.y_parity(), 1e-6), "{pump:?}: J = {j}");
        let dense = spdc_dense(&spdc(pump), grid).unwrap();
        assert!(close(sigma_overlap(&dense).unwrap(), pump.y_parity(), 1e-10));
    }
}

#[test]
fn compressed_spdc_matches_dense() {
    let grid = make_grid(12, 4.0).unwrap();
    let params = spdc(PumpProfile::HermiteGaussian { m: 1, n: 1, w0: 1.0 });
    let compressed = spdc_state(&params, grid).unwrap();
    let dense = spdc_dense(&params, grid).unwrap();
    let overlap = compressed.amplitude.to_dense().unwrap().inner(&dense).unwrap();
    assert!(close(overlap.norm(), 1.0, 1e-10));
}

#[test]
fn spdc_rejects_bad_parameters() {
    let grid = make_grid(16, 5.0).unwrap();
    let mut p = spdc(PumpProfile::Gaussian { w0: 1.0 });
    p.crystal_length = 0.0;
    assert!(spdc_state(&p, grid).is_err());
    let mut p = spdc(PumpProfile::Gaussian { w0: 1.0 });
    p.pump_wavenumber = -1.0;
    assert!(spdc_state(&p, grid).is_err());
}

#[test]
fn gaussian_beam_parameters() {
    let beam = GaussianBeamParams::default();
    assert_eq!(beam.rayleigh_length(), 1.0);
    assert!(close(beam.spot_size(), 2f64.sqrt(), 1e-15));
    assert_eq!(beam.curvature_radius(), Some(2.0));
    let waist = GaussianBeamParams { z: 0.0, ..beam };
    assert_eq!(waist.spot_size(), waist.w0);
    assert_eq!(waist.curvature_radius(), None);
}

#[test]
fn thin_crystal_state_is_symmetric() {
    let beam = GaussianBeamParams::default();
    let grid = make_grid(16, 3.0 * beam.spot_size()).unwrap();
    for keep_phase in [true, false] {
        let kernel = thin_crystal_kernel(&beam, grid, keep_phase).unwrap();
        let dense = kernel.to_dense().unwrap();
        assert!(close(dense.norm_sqr(), 1.0, 1e-10));
        assert!(close(sigma_overlap(&dense).unwrap(), 1.0, 1e-6));
        assert!(close(sigma_overlap(&kernel).unwrap(), 1.0, 1e-6));
    }
}

#[test]
fn thin_crystal_matches_closed_form() {
    let beam = GaussianBeamParams {
        w0: 0.8,
        z: 0.7,
        pump_wavenumber: 3.0,
    };
    let grid = make_grid(8, 2.0).unwrap();
    let z0 = beam.rayleigh_length();
    let r = beam.curvature_radius().unwrap();
    let w = beam.spot_size();
    let kp = beam.pump_wavenumber;
    let psi = |x1: f64, y1: f64, x2: f64, y2: f64| {
        let sum = (x1 + x2).powi(2) + (y1 + y2).powi(2);
        let diff = (x1 - x2).powi(2) + (y1 - y2).powi(2);
        let own = x1 * x1 + y1 * y1 + x2 * x2 + y2 * y2;
        Complex64::new(
            -sum / (4.0 * w * w),
            kp / 4.0 * (z0 * z0 * diff / (2.0 * 0.49 * r) + own / r),
        )
        .exp()
    };
    let oracle = biphoton::DenseAmplitude::from_fn(grid, Representation::Position, psi)
        .unwrap()
        .normalize()
        .unwrap();
    let built = thin_crystal_kernel(&beam, grid, true).unwrap().to_dense().unwrap();
    assert!(built.max_abs_diff(&oracle) < 1e-12);
}

#[test]
fn thin_crystal_at_the_waist_is_real_positive() {
    let beam = GaussianBeamParams {
        z: 0.0,
        ..GaussianBeamParams::default()
    };
    let grid = make_grid(8, 3.0).unwrap();
    let dense = thin_crystal_kernel(&beam, grid, true).unwrap().to_dense().unwrap();
    assert!(dense.values().iter().all(|v| v.im == 0.0 && v.re > 0.0));
    let negative = GaussianBeamParams { z: -1.0, ..beam };
    assert!(thin_crystal_kernel(&negative, grid, true).is_err());
}

#[test]
fn thin_crystal_product_sum_expansion() {
    let beam = GaussianBeamParams::default();
    let grid = make_grid(16, 4.0 * beam.spot_size()).unwrap();
    let exact = thin_crystal_kernel(&beam, grid, true).unwrap().to_dense().unwrap();
    let expanded = thin_crystal_gaussian(&beam, grid, true, 1e-9).unwrap();
    assert!(expanded.truncation_error <= 1e-9);
    let overlap = expanded.amplitude.to_dense().unwrap().inner(&exact).unwrap();
    assert!(close(overlap.norm(), 1.0, 1e-12));
    assert!(close(sigma_overlap(&expanded.amplitude).unwrap(), 1.0, 1e-6));
}
