use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::scalar::Scalar;

/// Unit roundoff of IEEE double precision, `2^-53`.
pub const UNIT_ROUNDOFF: f64 = 1.1102230246251565e-16;

/// Safety multiple applied to [`UNIT_ROUNDOFF`] in reported roundoff bounds.
pub const ROUNDOFF_SAFETY: f64 = 8.0;

/// `ε` used for the a posteriori bounds attached to determinants.
pub const DEFAULT_EPS: f64 = ROUNDOFF_SAFETY * UNIT_ROUNDOFF;

/// A determinant value together with its a posteriori roundoff bound.
#[derive(Debug, Clone, PartialEq)]
pub struct DetResult<T> {
    pub value: T,
    /// Dimension of the matrix whose determinant was taken.
    pub m: usize,
    /// `√m · ‖A‖_F · ε` for the perturbation `A` of the identity.
    pub roundoff_bound: f64,
}

fn require_square<T: Scalar>(m: &DenseMatrix<T>) -> Result<()> {
    if !m.is_square() {
        return Err(Error::Domain(format!("determinant of a non-square {}x{} matrix", m.rows(), m.cols())));
    }
    Ok(())
}

/// Determinant by Gaussian elimination with partial (row) pivoting.
///
/// Returns exactly zero as soon as a column without a nonzero pivot candidate
/// shows up.
pub fn det_lu<T: Scalar>(m: &DenseMatrix<T>) -> Result<T> {
    require_square(m)?;
    let n = m.rows();
    let mut a = m.as_slice().to_vec();
    let mut det = T::one();
    for k in 0..n {
        let mut piv = k;
        let mut best = a[k * n + k].modulus();
        for i in k + 1..n {
            let v = a[i * n + k].modulus();
            if v > best {
                best = v;
                piv = i;
            }
        }
        if a[piv * n + k].is_zero() {
            // modulus may round to 0 for exact fields; fall back to any nonzero entry
            match (k..n).find(|&i| !a[i * n + k].is_zero()) {
                Some(i) => piv = i,
                None => return Ok(T::zero()),
            }
        }
        if piv != k {
            for j in 0..n {
                a.swap(k * n + j, piv * n + j);
            }
            det = -det;
        }
        let pivot = a[k * n + k].clone();
        det = det * pivot.clone();
        for i in k + 1..n {
            let factor = a[i * n + k].clone() / pivot.clone();
            if factor.is_zero() {
                continue;
            }
            for j in k + 1..n {
                let upd = factor.clone() * a[k * n + j].clone();
                a[i * n + j] = a[i * n + j].clone() - upd;
            }
        }
    }
    Ok(det)
}

/// Determinant of a Hermitian positive definite matrix.
///
/// Uses the square-root-free form `M = L D L^H` of the Cholesky factorization,
/// so `det M = ∏ d_k = (∏ diag chol(M))^2`. Only the lower triangle is read.
/// A pivot that is not positive yields [`Error::NotPositiveDefinite`] and the
/// caller is expected to fall back to [`det_lu`].
pub fn det_cholesky<T: Scalar>(m: &DenseMatrix<T>) -> Result<T> {
    require_square(m)?;
    let n = m.rows();
    // l[i*n + k] holds L_ik for k < i
    let mut l = vec![T::zero(); n * n];
    let mut d: Vec<T> = Vec::with_capacity(n);
    let mut det = T::one();
    for k in 0..n {
        let mut dk = m[(k, k)].clone();
        for j in 0..k {
            let ljk = l[k * n + j].clone();
            dk = dk - ljk.clone() * d[j].clone() * ljk.conj();
        }
        let dk_re = dk.re();
        if !(dk_re > 0.0) || !dk.is_finite() {
            return Err(Error::NotPositiveDefinite { index: k, pivot: dk_re });
        }
        // the pivot of a Hermitian matrix is real; drop rounding residue in the imaginary part
        let dk = if dk.as_real().is_some() { dk } else { T::from_f64(dk_re) };
        for i in k + 1..n {
            let mut v = m[(i, k)].clone();
            for j in 0..k {
                v = v - l[i * n + j].clone() * d[j].clone() * l[k * n + j].conj();
            }
            l[i * n + k] = v / dk.clone();
        }
        det = det * dk.clone();
        d.push(dk);
    }
    Ok(det)
}

/// `√(Σ |a_jk|²)`.
pub fn frobenius_norm<T: Scalar>(m: &DenseMatrix<T>) -> f64 {
    // scaled accumulation avoids overflow for large entries
    let scale = m.as_slice().iter().map(Scalar::modulus).fold(0.0, f64::max);
    if scale == 0.0 || !scale.is_finite() {
        return scale;
    }
    let sum: f64 = m
        .as_slice()
        .iter()
        .map(|x| {
            let r = x.modulus() / scale;
            r * r
        })
        .sum();
    scale * sum.sqrt()
}

/// `√m · ‖M‖_F · eps`, the bound on the error of `det(I + M)` committed by a
/// backward stable factorization.
pub fn roundoff_bound<T: Scalar>(m: &DenseMatrix<T>, eps: f64) -> Result<f64> {
    require_square(m)?;
    if !(eps > 0.0) {
        return Err(Error::Domain(format!("roundoff eps must be positive, got {eps}")));
    }
    Ok((m.rows() as f64).sqrt() * frobenius_norm(m) * eps)
}
