use nalgebra::DMatrix;
use ndarray::{Array1, Array2};
use num_complex::Complex64;

use super::amplitude::{CompressedAmplitude, TwoPhotonAmplitude};
use super::dense::{DenseAmplitude, MAX_DENSE_POINTS};
use super::linalg::{choose_rank, truncated_svd};
use super::Biphoton;
use crate::error::{Error, Result};
use crate::numerics::{Grid, Representation, TransverseMode};

/// `Φ = s · m1(x1, y1) m2(x2, y2) kx(x1 + x2) ky(y1 + y2)`.
///
/// The kernels are sampled on the pair-sum lattice, `kx[i1 + i2]`, so they
/// have `2n - 1` entries. Norms and `⟨σΦ, Φ⟩` cost `O(n³)` regardless of how
/// many product terms the state would need.
#[derive(Debug, Clone, PartialEq)]
pub struct SumKernelAmplitude {
    grid: Grid,
    representation: Representation,
    scale: Complex64,
    photon1: Array2<Complex64>,
    photon2: Array2<Complex64>,
    kx: Array1<Complex64>,
    ky: Array1<Complex64>,
}

impl SumKernelAmplitude {
    pub fn new(grid: Grid, representation: Representation, kx: Vec<Complex64>, ky: Vec<Complex64>) -> Result<Self> {
        let n = grid.n();
        for (name, k) in [("kx", &kx), ("ky", &ky)] {
            if k.len() != 2 * n - 1 {
                return Err(Error::param(
                    name,
                    format!("expected {} samples, got {}", 2 * n - 1, k.len()),
                ));
            }
        }
        Ok(SumKernelAmplitude {
            grid,
            representation,
            scale: Complex64::from(1.0),
            photon1: Array2::from_elem((n, n), Complex64::from(1.0)),
            photon2: Array2::from_elem((n, n), Complex64::from(1.0)),
            kx: Array1::from(kx),
            ky: Array1::from(ky),
        })
    }

    /// Samples both kernels at the pair sums `x_i + x_j` of the grid.
    pub fn from_kernels(
        grid: Grid,
        representation: Representation,
        kx: impl Fn(f64) -> Complex64,
        ky: impl Fn(f64) -> Complex64,
    ) -> Result<Self> {
        let n = grid.n();
        let sums: Vec<f64> = (0..2 * n - 1).map(|k| grid.pair_sum(k, 0)).collect();
        Self::new(
            grid,
            representation,
            sums.iter().map(|&s| kx(s)).collect(),
            sums.iter().map(|&s| ky(s)).collect(),
        )
    }

    pub fn scale(&self) -> Complex64 {
        self.scale
    }

    pub fn kernel_x(&self) -> &Array1<Complex64> {
        &self.kx
    }

    pub fn kernel_y(&self) -> &Array1<Complex64> {
        &self.ky
    }

    pub fn value(&self, i1: usize, j1: usize, i2: usize, j2: usize) -> Complex64 {
        self.scale * self.photon1[[i1, j1]] * self.photon2[[i2, j2]] * self.kx[i1 + i2] * self.ky[j1 + j2]
    }

    fn hankel(k: &Array1<Complex64>, n: usize, f: impl Fn(usize, usize) -> Complex64) -> Array2<Complex64> {
        debug_assert_eq!(k.len(), 2 * n - 1);
        Array2::from_shape_fn((n, n), |(a, b)| f(a, b))
    }

    /// `Σ_{x1} a(x1) Σ_{x2} hx[i1, i2] b(x2) hy[j1, j2]`.
    fn contract(
        a: &Array2<Complex64>,
        hx: &Array2<Complex64>,
        b: &Array2<Complex64>,
        hy: &Array2<Complex64>,
    ) -> Complex64 {
        let inner = hx.dot(b).dot(&hy.t());
        a.iter().zip(inner.iter()).map(|(x, y)| x * y).sum()
    }

    /// Exact product-sum expansion from the SVDs of the two Hankel kernels,
    /// keeping the smallest number of terms whose relative tail is at most
    /// `tolerance` (and at most `max_rank` terms). The reported truncation
    /// error is that of the kernel tensor.
    pub fn to_product_sum(&self, tolerance: f64, max_rank: usize) -> Result<CompressedAmplitude> {
        let n = self.grid.n();
        let kx = DMatrix::from_fn(n, n, |a, b| self.kx[a + b]);
        let ky = DMatrix::from_fn(n, n, |a, b| self.ky[a + b]);
        let fx = truncated_svd(kx, 0.0, usize::MAX)?;
        let fy = truncated_svd(ky, 0.0, usize::MAX)?;

        let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(fx.coefficients.len() * fy.coefficients.len());
        for (a, sa) in fx.coefficients.iter().enumerate() {
            for (b, sb) in fy.coefficients.iter().enumerate() {
                pairs.push((sa.re * sb.re, a, b));
            }
        }
        pairs.sort_by(|p, q| q.0.total_cmp(&p.0));
        let sorted: Vec<f64> = pairs.iter().map(|p| p.0).collect();
        let (rank, truncation_error) = choose_rank(&sorted, tolerance, max_rank);

        let points = self.grid.len();
        let mut photon1 = Array2::zeros((rank, points));
        let mut photon2 = Array2::zeros((rank, points));
        let mut coefficients = Vec::with_capacity(rank);
        for (r, &(s, a, b)) in pairs[..rank].iter().enumerate() {
            coefficients.push(self.scale * s);
            for i in 0..n {
                for j in 0..n {
                    photon1[[r, i * n + j]] = self.photon1[[i, j]] * fx.left[[a, i]] * fy.left[[b, j]];
                    photon2[[r, i * n + j]] = self.photon2[[i, j]] * fx.right[[a, i]] * fy.right[[b, j]];
                }
            }
        }
        Ok(CompressedAmplitude {
            amplitude: TwoPhotonAmplitude::from_parts(self.grid, self.representation, coefficients, photon1, photon2),
            truncation_error,
        })
    }

    pub fn to_dense(&self) -> Result<DenseAmplitude> {
        let n = self.grid.n();
        if n > MAX_DENSE_POINTS {
            return Err(Error::GridTooLarge {
                n,
                max: MAX_DENSE_POINTS,
            });
        }
        let m = self.grid.len();
        let matrix = Array2::from_shape_fn((m, m), |(p, q)| self.value(p / n, p % n, q / n, q % n));
        DenseAmplitude::from_matrix(self.grid, self.representation, matrix)
    }

    fn with_photon(&self, multiplier: &TransverseMode, photon: usize) -> Result<Self> {
        self.check_multiplier(multiplier)?;
        let mut out = self.clone();
        let target = if photon == 1 {
            &mut out.photon1
        } else {
            &mut out.photon2
        };
        target.zip_mut_with(multiplier.values(), |a, &m| *a *= m);
        Ok(out)
    }
}

impl Biphoton for SumKernelAmplitude {
    fn grid(&self) -> &Grid {
        &self.grid
    }

    fn representation(&self) -> Representation {
        self.representation
    }

    fn norm_sqr(&self) -> f64 {
        let n = self.grid.n();
        let a = self.photon1.mapv(|v| Complex64::from(v.norm_sqr()));
        let b = self.photon2.mapv(|v| Complex64::from(v.norm_sqr()));
        let hx = Self::hankel(&self.kx, n, |p, q| Complex64::from(self.kx[p + q].norm_sqr()));
        let hy = Self::hankel(&self.ky, n, |p, q| Complex64::from(self.ky[p + q].norm_sqr()));
        Self::contract(&a, &hx, &b, &hy).re * self.scale.norm_sqr() * self.grid.weight().powi(2)
    }

    fn sigma_inner(&self) -> Complex64 {
        let n = self.grid.n();
        let a = Array2::from_shape_fn((n, n), |(i, j)| {
            self.photon1[[i, j]] * self.photon2[[i, n - 1 - j]].conj()
        });
        let b = Array2::from_shape_fn((n, n), |(i, j)| {
            self.photon2[[i, j]] * self.photon1[[i, n - 1 - j]].conj()
        });
        let hx = Self::hankel(&self.kx, n, |p, q| Complex64::from(self.kx[p + q].norm_sqr()));
        let hy = Self::hankel(&self.ky, n, |p, q| {
            self.ky[2 * (n - 1) - (p + q)].conj() * self.ky[p + q]
        });
        Self::contract(&a, &hx, &b, &hy) * self.scale.norm_sqr() * self.grid.weight().powi(2)
    }

    fn scaled(&self, factor: Complex64) -> Self {
        let mut out = self.clone();
        out.scale *= factor;
        out
    }

    fn map_photon1(&self, multiplier: &TransverseMode) -> Result<Self> {
        self.with_photon(multiplier, 1)
    }

    fn map_photon2(&self, multiplier: &TransverseMode) -> Result<Self> {
        self.with_photon(multiplier, 2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::make_grid;

    fn sample() -> SumKernelAmplitude {
        let g = make_grid(8, 2.0).unwrap();
        let k = SumKernelAmplitude::from_kernels(
            g,
            Representation::Position,
            |s| Complex64::new(-s * s, 0.3 * s).exp(),
            |s| Complex64::new(-0.5 * s * s, 0.2 * s * s + 0.1 * s).exp(),
        )
        .unwrap();
        let m = TransverseMode::from_fn(g, Representation::Position, |x, y| Complex64::new(1.0 + x, 0.5 * y));
        k.map_photon1(&m).unwrap().scaled(Complex64::new(0.3, 0.4))
    }

    #[test]
    fn structured_observables_match_dense() {
        let k = sample();
        let d = k.to_dense().unwrap();
        assert!((k.norm_sqr() - d.norm_sqr()).abs() < 1e-12 * d.norm_sqr());
        assert!((k.sigma_inner() - d.sigma_inner()).norm() < 1e-12 * d.norm_sqr());
    }

    #[test]
    fn full_expansion_is_exact() {
        let k = sample();
        let ps = k.to_product_sum(0.0, usize::MAX).unwrap();
        assert_eq!(ps.truncation_error, 0.0);
        let diff = ps.amplitude.to_dense().unwrap().max_abs_diff(&k.to_dense().unwrap());
        assert!(diff < 1e-12, "{diff}");
    }

    #[test]
    fn rejects_wrong_kernel_length() {
        let g = make_grid(8, 1.0).unwrap();
        let one = Complex64::from(1.0);
        assert!(SumKernelAmplitude::new(g, Representation::Position, vec![one; 15], vec![one; 14]).is_err());
    }
}
