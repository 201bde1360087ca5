//! One-dimensional quadrature rules and the product rules they induce.
//!
//! Both families built here have positive weights, which the symmetric
//! Nyström matrix `w_i^{1/2} K(x_i, x_j) w_j^{1/2}` relies on. Rules are
//! constructed on `[-1, 1]` and mapped affinely onto `[a, b]`.

use num_traits::{Float, FromPrimitive};

use crate::error::{Error, Result};

/// Default cap on the number of points of a product rule.
pub const DEFAULT_PRODUCT_CAP: u128 = 10_000_000;

/// Which family of rules to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RuleFamily {
    GaussLegendre,
    ClenshawCurtis,
}

impl RuleFamily {
    pub fn build<T: Float + FromPrimitive>(self, a: T, b: T, m: usize) -> Result<QuadRule<T>> {
        match self {
            RuleFamily::GaussLegendre => gauss_legendre(a, b, m),
            RuleFamily::ClenshawCurtis => clenshaw_curtis(a, b, m),
        }
    }

    /// Polynomial order `ν` of the `m`-point rule.
    pub fn order(self, m: usize) -> usize {
        match self {
            RuleFamily::GaussLegendre => 2 * m,
            RuleFamily::ClenshawCurtis => m,
        }
    }
}

impl std::str::FromStr for RuleFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gauss" | "gauss-legendre" | "gl" => Ok(RuleFamily::GaussLegendre),
            "cc" | "clenshaw-curtis" => Ok(RuleFamily::ClenshawCurtis),
            other => Err(Error::Config(format!("unknown rule family `{other}` (expected gauss|cc)"))),
        }
    }
}

/// Nodes and weights of a quadrature formula `Q(f) = Σ w_j f(x_j)` on `[a, b]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadRule<T> {
    a: T,
    b: T,
    nodes: Vec<T>,
    weights: Vec<T>,
    order: usize,
}

impl<T: Float> QuadRule<T> {
    /// Assemble a rule from raw data, checking the structural invariants.
    pub fn new(a: T, b: T, nodes: Vec<T>, weights: Vec<T>, order: usize) -> Result<Self> {
        check_interval(a, b)?;
        if nodes.is_empty() || nodes.len() != weights.len() {
            return Err(Error::Config(format!(
                "rule needs matching nonempty nodes/weights, got {} and {}",
                nodes.len(),
                weights.len()
            )));
        }
        if order == 0 {
            return Err(Error::Config("rule order must be at least 1".into()));
        }
        Ok(Self { a, b, nodes, weights, order })
    }

    pub fn a(&self) -> T {
        self.a
    }
    pub fn b(&self) -> T {
        self.b
    }
    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }
    pub fn weights(&self) -> &[T] {
        &self.weights
    }
    /// Number of points `m`.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }
    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
    /// Exactness degree plus one.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn iter(&self) -> impl Iterator<Item = (T, T)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }

    /// Map a rule given on `[-1, 1]` onto `[a, b]`.
    pub fn map_to(&self, a: T, b: T) -> Result<Self> {
        check_interval(a, b)?;
        let two = T::one() + T::one();
        let half = (b - a) / (self.b - self.a);
        let mid = (a + b) / two;
        let ref_mid = (self.a + self.b) / two;
        let nodes = self.nodes.iter().map(|&x| mid + half * (x - ref_mid)).collect();
        let weights = self.weights.iter().map(|&w| w * half).collect();
        Ok(Self { a, b, nodes, weights, order: self.order })
    }

    /// `Σ w_j`, exact for constants.
    pub fn weight_sum(&self) -> T {
        self.weights.iter().fold(T::zero(), |s, &w| s + w)
    }
}

fn check_interval<T: Float>(a: T, b: T) -> Result<()> {
    if !(a.is_finite() && b.is_finite()) || !(b > a) {
        return Err(Error::Domain(format!(
            "quadrature interval must satisfy a < b with finite ends, got [{}, {}]",
            a.to_f64().unwrap_or(f64::NAN),
            b.to_f64().unwrap_or(f64::NAN)
        )));
    }
    Ok(())
}

fn cst<T: FromPrimitive>(x: f64) -> T {
    T::from_f64(x).expect("constant representable")
}

/// `m`-point Gauss–Legendre rule on `[a, b]` (order `2m`).
///
/// Golub–Welsch: the nodes are the eigenvalues of the symmetric tridiagonal
/// Jacobi matrix with off-diagonal `k / sqrt((2k-1)(2k+1))`, and the weights
/// are `(b - a)` times the squared first components of the normalized
/// eigenvectors. Only those first components are carried through the implicit
/// QL sweeps, so construction costs `O(m^2)`.
pub fn gauss_legendre<T: Float + FromPrimitive>(a: T, b: T, m: usize) -> Result<QuadRule<T>> {
    check_interval(a, b)?;
    if m == 0 {
        return Err(Error::Domain("Gauss-Legendre rule needs m >= 1".into()));
    }
    let mut diag = vec![T::zero(); m];
    let mut off = vec![T::zero(); m];
    for k in 1..m {
        let kf: T = cst(k as f64);
        let two_k = kf + kf;
        off[k - 1] = kf / ((two_k - T::one()) * (two_k + T::one())).sqrt();
    }
    let mut first = vec![T::zero(); m];
    first[0] = T::one();
    tridiagonal_ql(&mut diag, &mut off, &mut first)?;

    let mut pairs: Vec<(T, T)> = diag.into_iter().zip(first).map(|(x, v)| (x, (v * v) * cst(2.0))).collect();
    pairs.sort_by(|p, q| p.0.partial_cmp(&q.0).expect("finite eigenvalues"));

    // Enforce the exact symmetry of the reference rule.
    let half_m = m / 2;
    for k in 0..half_m {
        let j = m - 1 - k;
        let x = (pairs[j].0 - pairs[k].0) / cst(2.0);
        let w = (pairs[j].1 + pairs[k].1) / cst(2.0);
        pairs[k] = (-x, w);
        pairs[j] = (x, w);
    }
    if m % 2 == 1 {
        pairs[half_m].0 = T::zero();
    }
    let (nodes, weights): (Vec<T>, Vec<T>) = pairs.into_iter().unzip();
    QuadRule::new(-T::one(), T::one(), nodes, weights, 2 * m)?.map_to(a, b)
}

/// Implicit QL iteration on a symmetric tridiagonal matrix.
///
/// `diag` receives the eigenvalues, `off[0..n-1]` holds the sub-diagonal (it
/// is destroyed), and `first` is rotated along so that on exit it holds the
/// first components of the eigenvectors when it starts as `e_1`.
fn tridiagonal_ql<T: Float + FromPrimitive>(diag: &mut [T], off: &mut [T], first: &mut [T]) -> Result<()> {
    let n = diag.len();
    if n == 1 {
        return Ok(());
    }
    off[n - 1] = T::zero();
    let eps = T::epsilon();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut mm = l;
            while mm + 1 < n {
                let dd = diag[mm].abs() + diag[mm + 1].abs();
                if off[mm].abs() <= eps * dd {
                    break;
                }
                mm += 1;
            }
            if mm == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::Config("tridiagonal QL failed to converge".into()));
            }
            let two: T = cst(2.0);
            let mut g = (diag[l + 1] - diag[l]) / (two * off[l]);
            let mut r = g.hypot(T::one());
            g = diag[mm] - diag[l] + off[l] / (g + r.abs().copysign(g));
            let (mut s, mut c, mut p) = (T::one(), T::one(), T::zero());
            let mut underflow = false;
            let mut i = mm;
            while i > l {
                i -= 1;
                let f = s * off[i];
                let bb = c * off[i];
                r = f.hypot(g);
                off[i + 1] = r;
                if r == T::zero() {
                    diag[i + 1] = diag[i + 1] - p;
                    off[mm] = T::zero();
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + two * c * bb;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - bb;
                let f1 = first[i + 1];
                first[i + 1] = s * first[i] + c * f1;
                first[i] = c * first[i] - s * f1;
            }
            if underflow {
                continue;
            }
            diag[l] = diag[l] - p;
            off[l] = g;
            off[mm] = T::zero();
        }
    }
    Ok(())
}

/// `m`-point Clenshaw–Curtis rule on `[a, b]` (order `m`), closed form with
/// both endpoints among the nodes `cos(kπ/(m-1))`.
///
/// Weights come from the direct cosine sum, `O(m^2)`.
pub fn clenshaw_curtis<T: Float + FromPrimitive>(a: T, b: T, m: usize) -> Result<QuadRule<T>> {
    check_interval(a, b)?;
    if m < 2 {
        return Err(Error::Domain("Clenshaw-Curtis rule needs m >= 2".into()));
    }
    let n = m - 1;
    let nf = n as f64;
    let pi = std::f64::consts::PI;
    let mut nodes = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(m);
    for k in 0..m {
        // -cos(kπ/n) written as a sine so the node set is exactly symmetric.
        let x = (pi * (2.0 * k as f64 - nf) / (2.0 * nf)).sin();
        let ck = if k == 0 || k == n { 1.0 } else { 2.0 };
        let mut sum = 0.0;
        for j in 1..=n / 2 {
            let bj = if 2 * j == n { 1.0 } else { 2.0 };
            let jf = j as f64;
            // cos(2jkπ/n), with the argument reduced modulo 2π exactly in integers
            let phase = (2 * j * k) % (2 * n);
            sum += bj / (4.0 * jf * jf - 1.0) * (pi * phase as f64 / nf).cos();
        }
        nodes.push(cst(x));
        weights.push(cst(ck / nf * (1.0 - sum)));
    }
    QuadRule::new(-T::one(), T::one(), nodes, weights, m)?.map_to(a, b)
}

/// `Σ w_j f(x_j)`.
///
/// A non-finite sample is reported with the offending node.
pub fn quad_apply<T: Float, F: Fn(T) -> T>(rule: &QuadRule<T>, f: F) -> Result<T> {
    let mut sum = T::zero();
    for (x, w) in rule.iter() {
        let fx = f(x);
        if !fx.is_finite() {
            return Err(Error::NonFinite { x: x.to_f64().unwrap_or(f64::NAN), value: fx.to_f64().unwrap_or(f64::NAN) });
        }
        sum = sum + w * fx;
    }
    Ok(sum)
}

/// Number of points `m^n` of the `n`-fold product rule, or `None` on overflow.
pub fn product_size(m: usize, n: usize) -> Option<u128> {
    (m as u128).checked_pow(u32::try_from(n).ok()?)
}

/// n-dimensional product rule `Σ w_{j1}…w_{jn} f(x_{j1}, …, x_{jn})` with the
/// default point cap.
pub fn product_quad<T, F>(rule: &QuadRule<T>, n: usize, f: F) -> Result<T>
where
    T: Float + Send + Sync,
    F: Fn(&[T]) -> T + Sync,
{
    product_quad_capped(rule, n, DEFAULT_PRODUCT_CAP, f)
}

/// [`product_quad`] with an explicit cap on `m^n`.
///
/// The outermost index is distributed over threads; partial sums are combined
/// in index order, so the result does not depend on the thread count.
pub fn product_quad_capped<T, F>(rule: &QuadRule<T>, n: usize, cap: u128, f: F) -> Result<T>
where
    T: Float + Send + Sync,
    F: Fn(&[T]) -> T + Sync,
{
    use rayon::prelude::*;

    if n == 0 {
        return Err(Error::Domain("product rule dimension must be >= 1".into()));
    }
    let m = rule.len();
    let needed = product_size(m, n).unwrap_or(u128::MAX);
    if needed > cap {
        return Err(Error::Resource { needed, cap });
    }
    let nodes = rule.nodes();
    let weights = rule.weights();

    let partials: Vec<Result<T>> = (0..m)
        .into_par_iter()
        .map(|outer| {
            let mut idx = vec![0usize; n];
            idx[0] = outer;
            let mut point = vec![nodes[outer]; n];
            for k in 1..n {
                point[k] = nodes[0];
            }
            let mut sum = T::zero();
            loop {
                let fx = f(&point);
                if !fx.is_finite() {
                    return Err(Error::NonFinite {
                        x: point[0].to_f64().unwrap_or(f64::NAN),
                        value: fx.to_f64().unwrap_or(f64::NAN),
                    });
                }
                let w = idx.iter().fold(T::one(), |p, &j| p * weights[j]);
                sum = sum + w * fx;
                // odometer over the inner indices
                let mut k = n;
                loop {
                    k -= 1;
                    if k == 0 {
                        return Ok(sum);
                    }
                    idx[k] += 1;
                    if idx[k] < m {
                        point[k] = nodes[idx[k]];
                        break;
                    }
                    idx[k] = 0;
                    point[k] = nodes[0];
                }
            }
        })
        .collect();
    let mut total = T::zero();
    for p in partials {
        total = total + p?;
    }
    Ok(total)
}
