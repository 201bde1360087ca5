//! Dense kernels for the small matrices of the Nyström method.

mod det;
mod matrix;
mod svd;

pub use det::{
    det_cholesky, det_lu, frobenius_norm, roundoff_bound, DetResult, DEFAULT_EPS, ROUNDOFF_SAFETY, UNIT_ROUNDOFF,
};
pub use matrix::DenseMatrix;
pub use svd::{operator_norm, singular_values, trace_norm};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Determinant of a matrix that is expected to be Hermitian positive
/// definite: Cholesky first, partial-pivoting LU when that factorization
/// breaks down.
pub fn det_hpd_or_lu<T: Scalar>(m: &DenseMatrix<T>) -> Result<T> {
    match det_cholesky(m) {
        Ok(d) => Ok(d),
        Err(Error::NotPositiveDefinite { .. }) => det_lu(m),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use num_complex::Complex64;
    use num_rational::BigRational;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(n: usize, rng: &mut ChaCha8Rng) -> DenseMatrix<f64> {
        DenseMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0))
    }

    /// Laplace expansion along the first row.
    fn cofactor_det(m: &DenseMatrix<f64>) -> f64 {
        let n = m.rows();
        if n == 1 {
            return m[(0, 0)];
        }
        let mut sum = 0.0;
        for j in 0..n {
            let rows: Vec<usize> = (1..n).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            sum += sign * m[(0, j)] * cofactor_det(&m.select(&rows, &cols));
        }
        sum
    }

    #[test]
    fn lu_examples() {
        assert_eq!(det_lu(&DenseMatrix::<f64>::identity(5)).unwrap(), 1.0);
        let m = DenseMatrix::from_row_major(2, 2, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_relative_eq!(det_lu(&m).unwrap(), -2.0, max_relative = 1e-15);
        let singular = DenseMatrix::from_row_major(3, 3, vec![1.0, 2.0, 3.0, 0.0, 0.0, 0.0, 4.0, 5.0, 6.0]).unwrap();
        assert_eq!(det_lu(&singular).unwrap(), 0.0);
    }

    #[test]
    fn lu_matches_cofactor_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=7 {
            let m = random(n, &mut rng);
            assert_relative_eq!(det_lu(&m).unwrap(), cofactor_det(&m), max_relative = 1e-12);
        }
    }

    #[test]
    fn lu_exact_over_rationals() {
        let data = [2, -1, 0, 3, 1, 4, -2, 5, 7, 0, 1, 1, 3, 2, -1, 6];
        let f = DenseMatrix::from_row_major(4, 4, data.iter().map(|&v| v as f64).collect()).unwrap();
        let q: DenseMatrix<BigRational> = f.cast();
        let exact = det_lu(&q).unwrap();
        assert_eq!(exact, BigRational::from_integer(cofactor_det(&f).round().to_string().parse().unwrap()));
    }

    #[test]
    fn non_square_is_domain_error() {
        let m = DenseMatrix::<f64>::zeros(2, 3);
        assert!(matches!(det_lu(&m), Err(Error::Domain(_))));
        assert!(matches!(det_cholesky(&m), Err(Error::Domain(_))));
    }

    #[test]
    fn cholesky_examples() {
        assert_eq!(det_cholesky(&DenseMatrix::<f64>::identity(4)).unwrap(), 1.0);
        let d = DenseMatrix::from_diagonal(&[1.0, 2.0, 3.0]);
        assert_relative_eq!(det_cholesky(&d).unwrap(), 6.0, max_relative = 1e-15);
        let indefinite = DenseMatrix::from_diagonal(&[1.0, -2.0, 3.0]);
        assert!(matches!(det_cholesky(&indefinite), Err(Error::NotPositiveDefinite { index: 1, .. })));
        assert_relative_eq!(det_hpd_or_lu(&indefinite).unwrap(), -6.0, max_relative = 1e-15);
    }

    #[test]
    fn cholesky_agrees_with_lu_on_hpd() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in [1, 3, 8, 15] {
            let b = random(n, &mut rng);
            let spd = b.adjoint().matmul(&b).unwrap().add(&DenseMatrix::identity(n)).unwrap();
            assert_relative_eq!(det_cholesky(&spd).unwrap(), det_lu(&spd).unwrap(), max_relative = 1e-12);
        }
    }

    #[test]
    fn complex_hermitian_cholesky() {
        let a = DenseMatrix::from_row_major(
            2,
            2,
            vec![
                Complex64::new(2.0, 0.0),
                Complex64::new(0.0, 1.0),
                Complex64::new(0.0, -1.0),
                Complex64::new(3.0, 0.0),
            ],
        )
        .unwrap();
        let d = det_cholesky(&a).unwrap();
        assert_relative_eq!(d.re, 5.0, max_relative = 1e-15);
        assert_eq!(d.im, 0.0);
        let lu = det_lu(&a).unwrap();
        assert_relative_eq!(lu.re, 5.0, max_relative = 1e-15);
    }

    #[test]
    fn frobenius_examples() {
        assert_eq!(frobenius_norm(&DenseMatrix::<f64>::zeros(3, 3)), 0.0);
        assert_eq!(frobenius_norm(&DenseMatrix::<f64>::identity(4)), 2.0);
        let m = DenseMatrix::from_row_major(2, 2, vec![3.0, 4.0, 0.0, 0.0]).unwrap();
        assert_eq!(frobenius_norm(&m), 5.0);
    }

    #[test]
    fn trace_norm_examples() {
        assert_relative_eq!(trace_norm(&DenseMatrix::identity(3)), 3.0, max_relative = 1e-15);
        assert_relative_eq!(trace_norm(&DenseMatrix::from_diagonal(&[1.0, -2.0, 3.0])), 6.0, max_relative = 1e-15);
    }

    #[test]
    fn roundoff_bound_examples() {
        let eps = 2f64.powi(-53);
        assert_eq!(roundoff_bound(&DenseMatrix::<f64>::zeros(5, 5), eps).unwrap(), 0.0);
        assert_eq!(roundoff_bound(&DenseMatrix::<f64>::identity(4), eps).unwrap(), 4.0 * eps);
        assert!(roundoff_bound(&DenseMatrix::<f64>::identity(4), 0.0).is_err());
        assert_eq!(DEFAULT_EPS, 8.0 * eps);
    }
}
