//! Row-matrix helpers shared by the product-sum and sum-kernel forms. A factor
//! matrix stores one flattened mode per row (`R x N`, `N = n^2`).

use nalgebra::DMatrix;
use ndarray::{Array2, ArrayView1};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// `[r, s] = Σ_k conj(a[r, k]) b[s, k]`.
pub(crate) fn cross_gram(a: &Array2<Complex64>, b: &Array2<Complex64>) -> Array2<Complex64> {
    a.mapv(|v| v.conj()).dot(&b.t())
}

/// Applies the y-reflection to every flattened mode stored in the rows.
pub(crate) fn reflect_rows(rows: &Array2<Complex64>, n: usize) -> Array2<Complex64> {
    let mut out = Array2::zeros(rows.dim());
    for (mut dst, src) in out.rows_mut().into_iter().zip(rows.rows()) {
        for i in 0..n {
            for j in 0..n {
                dst[i * n + j] = src[i * n + (n - 1 - j)];
            }
        }
    }
    out
}

pub(crate) fn scale_columns(rows: &mut Array2<Complex64>, multiplier: ArrayView1<'_, Complex64>) {
    for mut row in rows.rows_mut() {
        row.zip_mut_with(&multiplier, |a, &m| *a *= m);
    }
}

/// Transposes an `R x N` row matrix into an `N x R` nalgebra matrix.
pub(crate) fn rows_to_columns(rows: &Array2<Complex64>) -> DMatrix<Complex64> {
    let (r, n) = rows.dim();
    DMatrix::from_fn(n, r, |i, k| rows[[k, i]])
}

pub(crate) fn columns_to_rows(m: &DMatrix<Complex64>, count: usize) -> Array2<Complex64> {
    Array2::from_shape_fn((count, m.nrows()), |(k, i)| m[(i, k)])
}

pub(crate) struct Factorization {
    pub coefficients: Vec<Complex64>,
    pub left: Array2<Complex64>,
    pub right: Array2<Complex64>,
    /// `sqrt(Σ_dropped s² / Σ_all s²)`.
    pub truncation_error: f64,
}

struct SortedSvd {
    s: Vec<f64>,
    u: DMatrix<Complex64>,
    v_t: DMatrix<Complex64>,
    order: Vec<usize>,
}

fn sorted_svd(m: DMatrix<Complex64>) -> Result<SortedSvd> {
    let svd = m
        .try_svd(true, true, f64::EPSILON, 0)
        .ok_or_else(|| Error::LinearAlgebra("SVD did not converge".into()))?;
    let u = svd
        .u
        .ok_or_else(|| Error::LinearAlgebra("missing left vectors".into()))?;
    let v_t = svd
        .v_t
        .ok_or_else(|| Error::LinearAlgebra("missing right vectors".into()))?;
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let s = order.iter().map(|&k| svd.singular_values[k]).collect();
    Ok(SortedSvd { s, u, v_t, order })
}

fn keep(svd: &SortedSvd, rank: usize, truncation_error: f64) -> Factorization {
    let left = Array2::from_shape_fn((rank, svd.u.nrows()), |(k, i)| svd.u[(i, svd.order[k])]);
    // m = U S V^H, and row k of V^H is the bilinear right factor.
    let right = Array2::from_shape_fn((rank, svd.v_t.ncols()), |(k, i)| svd.v_t[(svd.order[k], i)]);
    Factorization {
        coefficients: svd.s[..rank].iter().map(|&v| Complex64::from(v)).collect(),
        left,
        right,
        truncation_error,
    }
}

/// Truncated SVD `m = Σ_k s_k u_k v_kᵀ` (bilinear, no conjugation on `v`),
/// keeping the smallest rank whose relative tail is at most `tolerance`, and
/// never more than `max_rank` terms.
pub(crate) fn truncated_svd(m: DMatrix<Complex64>, tolerance: f64, max_rank: usize) -> Result<Factorization> {
    let svd = sorted_svd(m)?;
    let (rank, err) = choose_rank(&svd.s, tolerance, max_rank);
    Ok(keep(&svd, rank, err))
}

/// Truncated SVD dropping singular values below `tolerance · sqrt(Σ s²)`.
pub(crate) fn truncated_svd_by_magnitude(m: DMatrix<Complex64>, tolerance: f64) -> Result<Factorization> {
    let svd = sorted_svd(m)?;
    let total: f64 = svd.s.iter().map(|s| s * s).sum();
    let cut = tolerance * total.sqrt();
    let rank = svd.s.iter().take_while(|&&s| s >= cut).count().max(1).min(svd.s.len());
    let dropped: f64 = svd.s[rank..].iter().map(|s| s * s).sum();
    let err = if total > 0.0 { (dropped / total).sqrt() } else { 0.0 };
    Ok(keep(&svd, rank, err))
}

/// Factorization of a matrix that is real and symmetric up to a global phase,
/// `m = e^{iγ} Σ_k λ_k u_k u_kᵀ`, via a real symmetric eigendecomposition.
/// Returns `None` when `m` lacks that structure.
pub(crate) fn truncated_real_symmetric(
    m: &DMatrix<Complex64>,
    tolerance: f64,
    max_rank: usize,
) -> Result<Option<Factorization>> {
    if !m.is_square() {
        return Ok(None);
    }
    let Some(pivot) = m.iter().copied().max_by(|a, b| a.norm_sqr().total_cmp(&b.norm_sqr())) else {
        return Ok(None);
    };
    if pivot.norm() == 0.0 {
        return Ok(None);
    }
    let phase = pivot / pivot.norm();
    let slack = 64.0 * f64::EPSILON * pivot.norm();
    let rotated = m.map(|v| v * phase.conj());
    let n = m.nrows();
    for i in 0..n {
        for j in 0..n {
            let v = rotated[(i, j)];
            if v.im.abs() > slack || (v.re - rotated[(j, i)].re).abs() > slack {
                return Ok(None);
            }
        }
    }
    let real = rotated.map(|v| v.re);
    let eig = real
        .try_symmetric_eigen(f64::EPSILON, 0)
        .ok_or_else(|| Error::LinearAlgebra("symmetric eigensolver did not converge".into()))?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].abs().total_cmp(&eig.eigenvalues[a].abs()));
    let magnitudes: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k].abs()).collect();
    let (rank, truncation_error) = choose_rank(&magnitudes, tolerance, max_rank);
    let left = Array2::from_shape_fn((rank, n), |(k, i)| Complex64::from(eig.eigenvectors[(i, order[k])]));
    Ok(Some(Factorization {
        coefficients: order[..rank].iter().map(|&k| phase * eig.eigenvalues[k]).collect(),
        right: left.clone(),
        left,
        truncation_error,
    }))
}

/// Smallest rank with relative tail `<= tolerance` (capped), and that tail.
pub(crate) fn choose_rank(sorted_desc: &[f64], tolerance: f64, max_rank: usize) -> (usize, f64) {
    let total: f64 = sorted_desc.iter().map(|s| s * s).sum();
    if total == 0.0 {
        return (0, 0.0);
    }
    // tails[k] = Σ_{j >= k} s_j²
    let mut tails = vec![0.0; sorted_desc.len() + 1];
    for k in (0..sorted_desc.len()).rev() {
        tails[k] = tails[k + 1] + sorted_desc[k] * sorted_desc[k];
    }
    let limit = tolerance * tolerance * total;
    let mut rank = (0..=sorted_desc.len())
        .find(|&k| tails[k] <= limit)
        .unwrap_or(sorted_desc.len());
    rank = rank.clamp(1, max_rank.max(1)).min(sorted_desc.len());
    (rank, (tails[rank] / total).sqrt())
}
