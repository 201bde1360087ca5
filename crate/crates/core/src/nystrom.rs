//! Nyström-type discretization of Fredholm determinants.
//!
//! For a kernel `K` on `(a, b)` and a rule with nodes `x_j` and positive
//! weights `w_j`, `det(I + zA)` is approximated by the finite determinant
//! `det(δ_ij + z w_i^{1/2} K(x_i, x_j) w_j^{1/2})`.

use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kernels::Kernel;
use crate::linalg::{det_cholesky, det_lu, roundoff_bound, DenseMatrix, DetResult, DEFAULT_EPS};
use crate::quadrature::{product_quad_capped, product_size, QuadRule, RuleFamily, DEFAULT_PRODUCT_CAP};
use crate::scalar::Scalar;

/// A single operator, its discretization and the parameter `z`.
#[derive(Clone)]
pub struct NystromProblem<T = f64> {
    pub kernel: Arc<dyn Kernel>,
    pub rule: QuadRule<f64>,
    pub z: T,
}

impl<T: Scalar> NystromProblem<T> {
    pub fn new(kernel: Arc<dyn Kernel>, rule: QuadRule<f64>, z: T) -> Result<Self> {
        check_weights(&rule)?;
        Ok(Self { kernel, rule, z })
    }
}

fn check_weights(rule: &QuadRule<f64>) -> Result<()> {
    if let Some(w) = rule.weights().iter().find(|w| !(**w > 0.0)) {
        return Err(Error::Config(format!("the symmetric Nyström form needs positive weights, found {w}")));
    }
    Ok(())
}

fn sqrt_weights(rule: &QuadRule<f64>) -> Vec<f64> {
    rule.weights().iter().map(|w| w.sqrt()).collect()
}

/// `w_i^{1/2} K(x_i, y_j) w_j^{1/2}` for two rules, with a finiteness check.
fn block(kernel: &dyn Kernel, rows: &QuadRule<f64>, cols: &QuadRule<f64>) -> Result<Vec<f64>> {
    let values = kernel.fill(rows.nodes(), cols.nodes());
    let (sr, sc) = (sqrt_weights(rows), sqrt_weights(cols));
    let n = cols.len();
    let mut out = Vec::with_capacity(values.len());
    for (idx, v) in values.into_iter().enumerate() {
        let (i, j) = (idx / n, idx % n);
        if !v.is_finite() {
            return Err(Error::Evaluation { i, j, x: rows.nodes()[i], y: cols.nodes()[j], value: v });
        }
        out.push(sr[i] * v * sc[j]);
    }
    Ok(out)
}

/// The symmetric Nyström matrix `A_Q` with entries `w_i^{1/2} K(x_i,x_j) w_j^{1/2}`.
pub fn nystrom_matrix(kernel: &dyn Kernel, rule: &QuadRule<f64>) -> Result<DenseMatrix<f64>> {
    check_weights(rule)?;
    let m = rule.len();
    DenseMatrix::from_row_major(m, m, block(kernel, rule, rule)?)
}

/// `det(I + zA)` with the roundoff bound `√m ‖zA‖_F ε` attached.
///
/// With `hermitian` set and a real `z` the matrix is factored by Cholesky
/// first; partial-pivoting LU is used otherwise or when that fails.
pub fn det_identity_plus<T: Scalar>(a: &DenseMatrix<f64>, z: &T, hermitian: bool) -> Result<DetResult<T>> {
    let za = a.cast::<T>().scale(z);
    let bound = roundoff_bound(&za, DEFAULT_EPS)?;
    let mut mat = za;
    for i in 0..mat.rows() {
        mat[(i, i)] = mat[(i, i)].clone() + T::one();
    }
    let value = if hermitian && z.as_real().is_some() {
        match det_cholesky(&mat) {
            Ok(v) => v,
            Err(Error::NotPositiveDefinite { .. }) => det_lu(&mat)?,
            Err(e) => return Err(e),
        }
    } else {
        det_lu(&mat)?
    };
    Ok(DetResult { value, m: mat.rows(), roundoff_bound: bound })
}

/// Nyström approximation `det(I + z A_Q)` of the Fredholm determinant.
pub fn fredholm_det<T: Scalar>(problem: &NystromProblem<T>) -> Result<DetResult<T>> {
    let a = nystrom_matrix(problem.kernel.as_ref(), &problem.rule)?;
    det_identity_plus(&a, &problem.z, problem.kernel.is_hermitian())
}

/// The unsymmetrized form `det(δ_ij + z w_j K(x_i, x_j))`, similar to the
/// symmetric one by `diag(w^{1/2})`.
pub fn fredholm_det_plain(kernel: &dyn Kernel, rule: &QuadRule<f64>, z: f64) -> Result<f64> {
    let m = rule.len();
    let values = kernel.fill(rule.nodes(), rule.nodes());
    let w = rule.weights();
    let mat = DenseMatrix::from_fn(m, m, |i, j| f64::from(u8::from(i == j)) + z * w[j] * values[i * m + j]);
    det_lu(&mat)
}

/// `N` operators coupled into one on `L²(I_1) ⊕ … ⊕ L²(I_N)`, the block
/// `(i, j)` acting from `L²(I_j)` to `L²(I_i)` with kernel `K_ij`.
#[derive(Clone)]
pub struct BlockSystem {
    rules: Vec<QuadRule<f64>>,
    kernels: Vec<Vec<Arc<dyn Kernel>>>,
}

impl BlockSystem {
    pub fn new(rules: Vec<QuadRule<f64>>, kernels: Vec<Vec<Arc<dyn Kernel>>>) -> Result<Self> {
        let n = rules.len();
        if n == 0 {
            return Err(Error::Config("a system needs at least one block".into()));
        }
        if kernels.len() != n || kernels.iter().any(|row| row.len() != n) {
            return Err(Error::Config(format!("kernel grid must be {n}x{n} to match {n} rules")));
        }
        for r in &rules {
            check_weights(r)?;
        }
        Ok(Self { rules, kernels })
    }

    pub fn size(&self) -> usize {
        self.rules.len()
    }

    pub fn rules(&self) -> &[QuadRule<f64>] {
        &self.rules
    }

    pub fn kernel(&self, i: usize, j: usize) -> &Arc<dyn Kernel> {
        &self.kernels[i][j]
    }

    /// Total dimension `Σ m_i` of the discretized system.
    pub fn dimension(&self) -> usize {
        self.rules.iter().map(QuadRule::len).sum()
    }

    /// The assembled block matrix with entries `w_{ip}^{1/2} K_ij(x_ip, x_jq) w_{jq}^{1/2}`.
    pub fn matrix(&self) -> Result<DenseMatrix<f64>> {
        let n = self.size();
        let offsets: Vec<usize> = self
            .rules
            .iter()
            .scan(0, |acc, r| {
                let o = *acc;
                *acc += r.len();
                Some(o)
            })
            .collect();
        let total = self.dimension();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        let blocks: Vec<Result<Vec<f64>>> = pairs
            .par_iter()
            .map(|&(i, j)| {
                block(self.kernels[i][j].as_ref(), &self.rules[i], &self.rules[j]).map_err(|e| match e {
                    Error::Evaluation { i: p, j: q, x, y, value } => {
                        Error::Evaluation { i: offsets[i] + p, j: offsets[j] + q, x, y, value }
                    }
                    other => other,
                })
            })
            .collect();
        let mut mat = DenseMatrix::zeros(total, total);
        for (&(i, j), b) in pairs.iter().zip(blocks) {
            let b = b?;
            let cols = self.rules[j].len();
            for (idx, v) in b.into_iter().enumerate() {
                mat[(offsets[i] + idx / cols, offsets[j] + idx % cols)] = v;
            }
        }
        Ok(mat)
    }
}

/// `det(I + z A_Q)` for a block system. Cholesky is tried when the assembled
/// matrix is symmetric and `z` is real.
pub fn fredholm_det_system<T: Scalar>(system: &BlockSystem, z: T) -> Result<DetResult<T>> {
    let a = system.matrix()?;
    let hermitian = if system.size() == 1 { system.kernels[0][0].is_hermitian() } else { a.is_hermitian(1e-14) };
    det_identity_plus(&a, &z, hermitian)
}

/// Fredholm's series `1 + Σ_{n=1}^{n_max} (z^n / n!) Q^n(K_n)` with the
/// minors `K_n(t_1..t_n) = det(K(t_p, t_q))` integrated by the product rule.
/// For `n_max >= m` this reproduces [`fredholm_det`] exactly in exact arithmetic.
pub fn fredholm_series_oracle(kernel: &dyn Kernel, rule: &QuadRule<f64>, z: f64, n_max: usize) -> Result<f64> {
    series(rule, z, n_max, DEFAULT_PRODUCT_CAP, |s, t| kernel.eval(s, t))
}

/// The system form of [`fredholm_series_oracle`]: the blocks are translated
/// to disjoint intervals and the series is taken for the single operator on
/// their union whose kernel is `K_ij` on `I_i × I_j`.
pub fn fredholm_series_oracle_system(system: &BlockSystem, z: f64, n_max: usize) -> Result<f64> {
    fredholm_series_oracle_system_capped(system, z, n_max, DEFAULT_PRODUCT_CAP)
}

/// [`fredholm_series_oracle_system`] with an explicit cap on the number of
/// product-rule points.
pub fn fredholm_series_oracle_system_capped(system: &BlockSystem, z: f64, n_max: usize, cap: u128) -> Result<f64> {
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    let mut shifts = Vec::new();
    let mut starts = Vec::new();
    let mut cursor = 0.0;
    for r in system.rules() {
        let shift = cursor - r.a();
        shifts.push(shift);
        starts.push(cursor);
        nodes.extend(r.nodes().iter().map(|x| x + shift));
        weights.extend_from_slice(r.weights());
        cursor += r.b() - r.a() + 1.0;
    }
    let union = QuadRule::new(0.0, cursor, nodes, weights, 1)?;
    let locate = |x: f64| -> usize { starts.iter().rposition(|&s| s <= x).unwrap_or(0) };
    series(&union, z, n_max, cap, |s, t| {
        let (i, j) = (locate(s), locate(t));
        system.kernel(i, j).eval(s - shifts[i], t - shifts[j])
    })
}

fn series(rule: &QuadRule<f64>, z: f64, n_max: usize, cap: u128, k: impl Fn(f64, f64) -> f64 + Sync) -> Result<f64> {
    if n_max > 0 {
        let needed = product_size(rule.len(), n_max).unwrap_or(u128::MAX);
        if needed > cap {
            return Err(Error::Resource { needed, cap });
        }
    }
    let mut total = 1.0;
    let mut coeff = 1.0;
    for n in 1..=n_max {
        coeff *= z / n as f64;
        let integral = product_quad_capped(rule, n, cap, |t: &[f64]| {
            let minor = DenseMatrix::from_fn(n, n, |p, q| k(t[p], t[q]));
            det_lu(&minor).expect("square minor")
        })?;
        total += coeff * integral;
    }
    Ok(total)
}

/// von Koch's expansion `det(I + zA) = Σ_S z^{|S|} det(A_S)` over all
/// principal submatrices; exponential cost, for checks on small matrices.
pub fn von_koch_det<T: Scalar>(a: &DenseMatrix<T>, z: &T) -> Result<T> {
    if !a.is_square() {
        return Err(Error::Domain(format!("expected a square matrix, got {}x{}", a.rows(), a.cols())));
    }
    let n = a.rows();
    if n > 20 {
        return Err(Error::Resource { needed: 1 << n, cap: 1 << 20 });
    }
    let mut total = T::zero();
    for mask in 0u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let mut term = if idx.is_empty() { T::one() } else { det_lu(&a.select(&idx, &idx))? };
        for _ in 0..idx.len() {
            term = term * z.clone();
        }
        total = total + term;
    }
    Ok(total)
}

/// One row of a convergence study.
#[derive(Debug, Clone, PartialEq)]
pub struct StudyRow {
    pub m: usize,
    pub value: f64,
    /// Distance to the reference value (the richest `m` unless one is given).
    pub error: f64,
    pub roundoff_bound: f64,
}

/// Nyström determinants for each `m` of `m_list`, with errors measured against
/// `reference` or, by default, against the value at the largest `m`.
pub fn convergence_study(
    kernel: Arc<dyn Kernel>,
    (a, b): (f64, f64),
    z: f64,
    family: RuleFamily,
    m_list: &[usize],
    reference: Option<f64>,
) -> Result<Vec<StudyRow>> {
    if m_list.is_empty() {
        return Err(Error::Config("m-list must not be empty".into()));
    }
    if m_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Config("m-list must be strictly ascending".into()));
    }
    let results: Vec<Result<DetResult<f64>>> = m_list
        .par_iter()
        .map(|&m| {
            let rule = family.build(a, b, m)?;
            fredholm_det(&NystromProblem::new(kernel.clone(), rule, z)?)
        })
        .collect();
    let results: Vec<DetResult<f64>> = results.into_iter().collect::<Result<_>>()?;
    let reference = reference.unwrap_or_else(|| results.last().expect("nonempty").value);
    Ok(results
        .into_iter()
        .map(|r| StudyRow {
            m: r.m,
            value: r.value,
            error: (r.value - reference).abs(),
            roundoff_bound: r.roundoff_bound,
        })
        .collect())
}
