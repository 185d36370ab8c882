use nalgebra::{DMatrix, DVector};
use ndarray::{concatenate, Array1, Array2, ArrayView1, Axis};
use num_complex::Complex64;

use super::dense::{DenseAmplitude, MAX_DENSE_POINTS};
use super::linalg::{self, cross_gram, reflect_rows};
use super::Biphoton;
use crate::error::{Error, Result};
use crate::numerics::{fourier, Direction, Grid, Representation, TransverseMode};

/// Relative coefficient magnitude below which [`TwoPhotonAmplitude::recompress`]
/// drops terms by default.
pub const RECOMPRESS_TOLERANCE: f64 = 1e-12;

/// One product term `c · f ⊗ g`.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub coefficient: Complex64,
    pub photon1: TransverseMode,
    pub photon2: TransverseMode,
}

/// A two-photon amplitude stored as `Σ_r c_r f_r(1) g_r(2)`.
///
/// Factor modes are kept as rows of two `R x n²` matrices so that overlaps
/// reduce to Gram products. The coefficient vector carries the global scale;
/// factors are not required to be orthogonal or normalized.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoPhotonAmplitude {
    grid: Grid,
    representation: Representation,
    coefficients: Vec<Complex64>,
    photon1: Array2<Complex64>,
    photon2: Array2<Complex64>,
}

/// A rank-truncated amplitude together with the relative norm error of the
/// truncation.
#[derive(Debug, Clone)]
pub struct CompressedAmplitude {
    pub amplitude: TwoPhotonAmplitude,
    pub truncation_error: f64,
}

impl TwoPhotonAmplitude {
    pub fn from_terms(terms: Vec<Term>) -> Result<Self> {
        let first = terms.first().ok_or(Error::ZeroNorm)?;
        let grid = *first.photon1.grid();
        let representation = first.photon1.representation();
        let points = grid.len();
        let mut photon1 = Array2::zeros((terms.len(), points));
        let mut photon2 = Array2::zeros((terms.len(), points));
        let mut coefficients = Vec::with_capacity(terms.len());
        for (r, term) in terms.iter().enumerate() {
            first.photon1.check_compatible(&term.photon1)?;
            first.photon1.check_compatible(&term.photon2)?;
            photon1.row_mut(r).assign(&flatten(term.photon1.values()));
            photon2.row_mut(r).assign(&flatten(term.photon2.values()));
            coefficients.push(term.coefficient);
        }
        Ok(TwoPhotonAmplitude {
            grid,
            representation,
            coefficients,
            photon1,
            photon2,
        })
    }

    /// The rank-1 amplitude `f ⊗ g` (not normalized).
    pub fn product(f: &TransverseMode, g: &TransverseMode) -> Result<Self> {
        Self::from_terms(vec![Term {
            coefficient: Complex64::from(1.0),
            photon1: f.clone(),
            photon2: g.clone(),
        }])
    }

    pub(crate) fn from_parts(
        grid: Grid,
        representation: Representation,
        coefficients: Vec<Complex64>,
        photon1: Array2<Complex64>,
        photon2: Array2<Complex64>,
    ) -> Self {
        debug_assert_eq!(photon1.dim(), (coefficients.len(), grid.len()));
        debug_assert_eq!(photon2.dim(), (coefficients.len(), grid.len()));
        TwoPhotonAmplitude {
            grid,
            representation,
            coefficients,
            photon1,
            photon2,
        }
    }

    pub fn rank(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn term(&self, r: usize) -> Term {
        Term {
            coefficient: self.coefficients[r],
            photon1: self.mode(self.photon1.row(r)),
            photon2: self.mode(self.photon2.row(r)),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = Term> + '_ {
        (0..self.rank()).map(|r| self.term(r))
    }

    fn mode(&self, row: ArrayView1<'_, Complex64>) -> TransverseMode {
        let n = self.grid.n();
        let values = Array2::from_shape_fn((n, n), |(i, j)| row[i * n + j]);
        TransverseMode::new(self.grid, self.representation, values).expect("row length matches grid")
    }

    fn check_same_space(&self, other: &Self) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        if self.representation != other.representation {
            return Err(Error::RepresentationMismatch {
                expected: self.representation,
                found: other.representation,
            });
        }
        Ok(())
    }

    /// `⟨self, other⟩`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        self.check_same_space(other)?;
        let g1 = cross_gram(&self.photon1, &other.photon1);
        let g2 = cross_gram(&self.photon2, &other.photon2);
        Ok(bilinear_sum(&self.coefficients, &other.coefficients, &g1, &g2) * self.grid.weight().powi(2))
    }

    /// `σΦ`: each term `(c, f, g)` becomes `(c, Π_y g, Π_y f)`.
    pub fn apply_sigma(&self) -> Self {
        let n = self.grid.n();
        TwoPhotonAmplitude {
            grid: self.grid,
            representation: self.representation,
            coefficients: self.coefficients.clone(),
            photon1: reflect_rows(&self.photon2, n),
            photon2: reflect_rows(&self.photon1, n),
        }
    }

    /// Exchanges the two photons without reflecting them.
    pub fn swap_photons(&self) -> Self {
        TwoPhotonAmplitude {
            grid: self.grid,
            representation: self.representation,
            coefficients: self.coefficients.clone(),
            photon1: self.photon2.clone(),
            photon2: self.photon1.clone(),
        }
    }

    /// Applies `Π_y` to photon 1 only.
    pub fn reflect_photon1(&self) -> Self {
        let mut out = self.clone();
        out.photon1 = reflect_rows(&self.photon1, self.grid.n());
        out
    }

    /// Applies `Π_y` to photon 2 only.
    pub fn reflect_photon2(&self) -> Self {
        let mut out = self.clone();
        out.photon2 = reflect_rows(&self.photon2, self.grid.n());
        out
    }

    /// The formal sum `self + other`; rank adds.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_space(other)?;
        let mut coefficients = self.coefficients.clone();
        coefficients.extend_from_slice(&other.coefficients);
        Ok(TwoPhotonAmplitude {
            grid: self.grid,
            representation: self.representation,
            coefficients,
            photon1: concatenate(Axis(0), &[self.photon1.view(), other.photon1.view()]).expect("matching widths"),
            photon2: concatenate(Axis(0), &[self.photon2.view(), other.photon2.view()]).expect("matching widths"),
        })
    }

    /// `(Φ + σΦ) / 2`.
    pub fn symmetric_part(&self) -> Self {
        self.add(&self.apply_sigma())
            .expect("σ preserves the grid")
            .scaled(Complex64::from(0.5))
    }

    /// `(Φ - σΦ) / 2`.
    pub fn antisymmetric_part(&self) -> Self {
        self.add(&self.apply_sigma().scaled(Complex64::from(-1.0)))
            .expect("σ preserves the grid")
            .scaled(Complex64::from(0.5))
    }

    /// Re-orthogonalizes both factor sets and drops terms whose singular value
    /// is below `tolerance · ‖Φ‖`. Returns the recompressed amplitude and the
    /// relative norm of what was dropped.
    pub fn recompress(&self, tolerance: f64) -> Result<CompressedAmplitude> {
        let f = linalg::rows_to_columns(&self.photon1);
        let g = linalg::rows_to_columns(&self.photon2);
        let (qf, rf) = f.qr().unpack();
        let (qg, rg) = g.qr().unpack();
        let c = DMatrix::from_diagonal(&DVector::from_vec(self.coefficients.clone()));
        let core = &rf * c * rg.transpose();
        let small = linalg::truncated_svd_by_magnitude(core, tolerance)?;
        // Φ = Qf (Σ s_k u_k v_kᵀ) Qgᵀ
        let left = linalg::columns_to_rows(&(&qf * linalg::rows_to_columns(&small.left)), small.coefficients.len());
        let right = linalg::columns_to_rows(&(&qg * linalg::rows_to_columns(&small.right)), small.coefficients.len());
        Ok(CompressedAmplitude {
            amplitude: TwoPhotonAmplitude {
                grid: self.grid,
                representation: self.representation,
                coefficients: small.coefficients,
                photon1: left,
                photon2: right,
            },
            truncation_error: small.truncation_error,
        })
    }

    /// Fourier transforms every factor into the position representation.
    pub fn position_representation(&self) -> Result<Self> {
        if self.representation != Representation::Momentum {
            return Err(Error::RepresentationMismatch {
                expected: Representation::Momentum,
                found: self.representation,
            });
        }
        let (photon1, grid) = fourier::transform_rows(&self.photon1, &self.grid, Direction::Forward);
        let (photon2, _) = fourier::transform_rows(&self.photon2, &self.grid, Direction::Forward);
        Ok(TwoPhotonAmplitude {
            grid,
            representation: Representation::Position,
            coefficients: self.coefficients.clone(),
            photon1,
            photon2,
        })
    }

    pub fn to_dense(&self) -> Result<DenseAmplitude> {
        if self.grid.n() > MAX_DENSE_POINTS {
            return Err(Error::GridTooLarge {
                n: self.grid.n(),
                max: MAX_DENSE_POINTS,
            });
        }
        DenseAmplitude::from_matrix(
            self.grid,
            self.representation,
            self.photon1
                .t()
                .dot(&(Array2::from_diag(&Array1::from(self.coefficients.clone())).dot(&self.photon2))),
        )
    }
}

impl Biphoton for TwoPhotonAmplitude {
    fn grid(&self) -> &Grid {
        &self.grid
    }

    fn representation(&self) -> Representation {
        self.representation
    }

    fn norm_sqr(&self) -> f64 {
        let g1 = cross_gram(&self.photon1, &self.photon1);
        let g2 = cross_gram(&self.photon2, &self.photon2);
        bilinear_sum(&self.coefficients, &self.coefficients, &g1, &g2).re * self.grid.weight().powi(2)
    }

    fn sigma_inner(&self) -> Complex64 {
        // ⟨σΦ, Φ⟩ = Σ conj(c_r) c_s ⟨Π g_r, f_s⟩ ⟨Π f_r, g_s⟩
        let n = self.grid.n();
        let a = cross_gram(&reflect_rows(&self.photon2, n), &self.photon1);
        let b = cross_gram(&reflect_rows(&self.photon1, n), &self.photon2);
        bilinear_sum(&self.coefficients, &self.coefficients, &a, &b) * self.grid.weight().powi(2)
    }

    fn scaled(&self, factor: Complex64) -> Self {
        let mut out = self.clone();
        for c in &mut out.coefficients {
            *c *= factor;
        }
        out
    }

    fn map_photon1(&self, multiplier: &TransverseMode) -> Result<Self> {
        self.check_multiplier(multiplier)?;
        let mut out = self.clone();
        linalg::scale_columns(&mut out.photon1, flatten(multiplier.values()).view());
        Ok(out)
    }

    fn map_photon2(&self, multiplier: &TransverseMode) -> Result<Self> {
        self.check_multiplier(multiplier)?;
        let mut out = self.clone();
        linalg::scale_columns(&mut out.photon2, flatten(multiplier.values()).view());
        Ok(out)
    }
}

/// `Σ_{r,s} conj(a_r) b_s x[r,s] y[r,s]`.
fn bilinear_sum(a: &[Complex64], b: &[Complex64], x: &Array2<Complex64>, y: &Array2<Complex64>) -> Complex64 {
    let mut acc = Complex64::default();
    for (r, ar) in a.iter().enumerate() {
        let mut row = Complex64::default();
        for (s, bs) in b.iter().enumerate() {
            row += bs * x[[r, s]] * y[[r, s]];
        }
        acc += ar.conj() * row;
    }
    acc
}

fn flatten(values: &Array2<Complex64>) -> Array1<Complex64> {
    values.iter().copied().collect()
}
