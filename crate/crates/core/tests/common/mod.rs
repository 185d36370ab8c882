#![allow(dead_code)]

use biphoton::{
    hermite_gaussian, oam_ring, Biphoton, DenseAmplitude, Grid, Representation, Term, TransverseMode,
    TwoPhotonAmplitude,
};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_complex(rng: &mut StdRng) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

/// A mode with independent random values at every grid point.
pub fn random_mode(rng: &mut StdRng, grid: Grid, representation: Representation) -> TransverseMode {
    let values = ndarray::Array2::from_shape_fn((grid.n(), grid.n()), |_| random_complex(rng));
    TransverseMode::new(grid, representation, values).unwrap()
}

/// Hermite-Gaussian modes with `m + n <= 3` and OAM rings with `|l| <= 3`.
pub fn low_order_basis(grid: Grid, w0: f64) -> Vec<TransverseMode> {
    let mut basis = Vec::new();
    for m in 0..=3u32 {
        for n in 0..=(3 - m) {
            basis.push(hermite_gaussian(m, n, w0, grid).unwrap());
        }
    }
    for l in -3..=3 {
        if l != 0 {
            basis.push(oam_ring(l, w0, grid).unwrap());
        }
    }
    basis
}

/// A random superposition of a few basis modes.
pub fn random_superposition(rng: &mut StdRng, basis: &[TransverseMode]) -> TransverseMode {
    let count = rng.random_range(1..=4);
    let terms: Vec<(Complex64, &TransverseMode)> = (0..count)
        .map(|_| (random_complex(rng), &basis[rng.random_range(0..basis.len())]))
        .collect();
    let mode = TransverseMode::linear_combination(&terms).unwrap();
    if mode.norm() > 1e-6 {
        mode
    } else {
        basis[0].clone()
    }
}

/// A normalized random product-sum amplitude of the given rank.
pub fn random_amplitude(
    rng: &mut StdRng,
    grid: Grid,
    representation: Representation,
    rank: usize,
) -> TwoPhotonAmplitude {
    let terms = (0..rank)
        .map(|_| Term {
            coefficient: random_complex(rng),
            photon1: random_mode(rng, grid, representation),
            photon2: random_mode(rng, grid, representation),
        })
        .collect();
    TwoPhotonAmplitude::from_terms(terms).unwrap().normalize().unwrap()
}

/// Port probabilities `(both in 1, both in 2, one in each)` evaluated directly
/// on the 4D array from the mode transformation
/// `a1† -> (e^{iφτ} b1† - e^{-iφρ} Π b2†)/√2`, `a2† -> (e^{iφρ} Π b1† + e^{-iφτ} b2†)/√2`.
pub fn dense_port_probabilities(amp: &DenseAmplitude, phi_tau: f64, phi_rho: f64) -> [f64; 3] {
    let n = amp.grid().n();
    let w2 = amp.grid().weight().powi(2);
    let v = amp.values();
    let t1 = Complex64::from_polar(1.0, phi_tau);
    let r1 = -Complex64::from_polar(1.0, -phi_rho);
    let r2 = Complex64::from_polar(1.0, phi_rho);
    let t2 = Complex64::from_polar(1.0, -phi_tau);
    let m = |i: usize| n - 1 - i;
    // Output amplitude of b_p†(1) b_q†(2), before symmetrization.
    let out = |p: usize, q: usize, i1: usize, j1: usize, i2: usize, j2: usize| -> Complex64 {
        let a = |port: usize, j: usize, photon_in: usize| -> (Complex64, usize) {
            match (photon_in, port) {
                (1, 1) => (t1, j),
                (1, _) => (r1, m(j)),
                (_, 1) => (r2, m(j)),
                _ => (t2, j),
            }
        };
        let (c1, jj1) = a(p, j1, 1);
        let (c2, jj2) = a(q, j2, 2);
        0.5 * c1 * c2 * v[[i1, jj1, i2, jj2]]
    };
    let mut probs = [0.0; 3];
    for i1 in 0..n {
        for j1 in 0..n {
            for i2 in 0..n {
                for j2 in 0..n {
                    let b11 = out(1, 1, i1, j1, i2, j2);
                    let b11t = out(1, 1, i2, j2, i1, j1);
                    let b22 = out(2, 2, i1, j1, i2, j2);
                    let b22t = out(2, 2, i2, j2, i1, j1);
                    // b1†(1) b2†(2) collects both orderings of the photons.
                    let c = out(1, 2, i1, j1, i2, j2) + out(2, 1, i2, j2, i1, j1);
                    probs[0] += (b11.conj() * (b11 + b11t)).re;
                    probs[1] += (b22.conj() * (b22 + b22t)).re;
                    probs[2] += c.norm_sqr();
                }
            }
        }
    }
    probs.map(|p| p * w2)
}
