use crate::linalg::DenseMatrix;

const MAX_SWEEPS: usize = 80;

/// Singular values by one-sided (Hestenes) Jacobi, in descending order.
///
/// Columns are orthogonalized pairwise by plane rotations until every pair is
/// orthogonal to working precision; the singular values are then the column
/// norms. Slow, `O(n^3)` per sweep, but accurate to high relative precision.
pub fn singular_values(m: &DenseMatrix<f64>) -> Vec<f64> {
    let rows = m.rows();
    let cols = m.cols();
    // column-major working copy
    let mut a: Vec<Vec<f64>> = (0..cols).map(|j| (0..rows).map(|i| m[(i, j)]).collect()).collect();
    let tol = f64::EPSILON * (rows as f64).sqrt();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let (alpha, beta, gamma) = {
                    let (cp, cq) = (&a[p], &a[q]);
                    let mut alpha = 0.0;
                    let mut beta = 0.0;
                    let mut gamma = 0.0;
                    for i in 0..rows {
                        alpha += cp[i] * cp[i];
                        beta += cq[i] * cq[i];
                        gamma += cp[i] * cq[i];
                    }
                    (alpha, beta, gamma)
                };
                if gamma == 0.0 || gamma.abs() <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let t = if zeta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (left, right) = a.split_at_mut(q);
                let cp = &mut left[p];
                let cq = &mut right[0];
                for i in 0..rows {
                    let x = cp[i];
                    let y = cq[i];
                    cp[i] = c * x - s * y;
                    cq[i] = s * x + c * y;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<f64> = a.iter().map(|col| col.iter().map(|v| v * v).sum::<f64>().sqrt()).collect();
    sv.sort_by(|x, y| y.partial_cmp(x).expect("finite singular values"));
    sv
}

/// Trace-class norm `‖M‖_{J1}`, the sum of singular values.
pub fn trace_norm(m: &DenseMatrix<f64>) -> f64 {
    singular_values(m).iter().sum()
}

/// Spectral norm, the largest singular value.
pub fn operator_norm(m: &DenseMatrix<f64>) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}
