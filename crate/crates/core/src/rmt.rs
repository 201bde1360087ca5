//! Random-matrix distributions as Fredholm determinants: the GUE gap
//! probability `E₂(0; s)`, the Tracy–Widom distribution `F₂`, joint
//! distributions of the Airy₂ and Airy₁ processes at two times, and their
//! two-point covariances.

use std::f64::consts::PI;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kernels::{
    Airy1ProcessKernel, Airy2ProcessKernel, AiryKernel, InnerFactor, Kernel, SineKernel, TransformedKernel,
    DEFAULT_SCALE,
};
use crate::linalg::{det_lu, frobenius_norm, DenseMatrix};
use crate::nystrom::{fredholm_det, fredholm_det_system, nystrom_matrix, BlockSystem, NystromProblem};
use crate::quadrature::{gauss_legendre, QuadRule};

/// `ζ'(-1) = 1/12 - ln A` with Glaisher's constant `A`.
pub const ZETA_PRIME_MINUS_ONE: f64 = -0.165421143700450929213919660242780642764;

/// Slack allowed around `[0, 1]` for computed probabilities.
pub const PROBABILITY_SLACK: f64 = 1e-10;

/// Largest tail mass `F(L)` or `1 - F(U)` accepted for a moment box.
pub const TAIL_TOLERANCE: f64 = 1e-10;

/// A computed value with the discretization size used and an a posteriori
/// error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistributionPoint {
    pub parameter: f64,
    pub value: f64,
    pub m: usize,
    pub est_error: f64,
}

fn probability(parameter: f64, value: f64, m: usize, est_error: f64) -> Result<DistributionPoint> {
    if !(value >= -PROBABILITY_SLACK && value <= 1.0 + PROBABILITY_SLACK) {
        return Err(Error::Range(format!("probability at {parameter} evaluates to {value}, outside [0, 1]")));
    }
    Ok(DistributionPoint { parameter, value, m, est_error })
}

/// The coarser size used for a posteriori error estimates.
fn coarse(m: usize) -> usize {
    (3 * m).div_ceil(4).max(1)
}

fn check_m(m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::Domain("number of quadrature nodes must be at least 1".into()));
    }
    Ok(())
}

/// `det(I - A)` for one kernel, estimated from sizes `m` and `3m/4`.
fn estimated_det(build: impl Fn(usize) -> Result<(Arc<dyn Kernel>, QuadRule<f64>)>, m: usize) -> Result<(f64, f64)> {
    let eval = |n: usize| {
        let (k, rule) = build(n)?;
        fredholm_det(&NystromProblem::new(k, rule, -1.0)?)
    };
    let fine = eval(m)?;
    let rough = if m > 1 { eval(coarse(m))?.value } else { fine.value };
    Ok((fine.value, (fine.value - rough).abs().max(fine.roundoff_bound)))
}

/// `E₂(0; s) = det(I - K_sine)` on `L²(0, s)`, Gauss–Legendre with `m` nodes.
pub fn e2_gap(s: f64, m: usize) -> Result<DistributionPoint> {
    if !(s >= 0.0) || !s.is_finite() {
        return Err(Error::Domain(format!("gap length must be finite and nonnegative, got {s}")));
    }
    check_m(m)?;
    if s == 0.0 {
        return Ok(DistributionPoint { parameter: s, value: 1.0, m, est_error: 0.0 });
    }
    let (value, err) = estimated_det(|n| Ok((Arc::new(SineKernel), gauss_legendre(0.0, s, n)?)), m)?;
    probability(s, value, m, err)
}

/// Large-gap asymptotics
/// `ln E₂(0; s) ≈ -π²s²/8 - ln(s)/4 + ln(2)/3 - ln(π)/4 + 3ζ'(-1)`.
pub fn e2_asymptotic_log(s: f64) -> f64 {
    -PI * PI * s * s / 8.0 - s.ln() / 4.0 + 2f64.ln() / 3.0 - PI.ln() / 4.0 + 3.0 * ZETA_PRIME_MINUS_ONE
}

/// How the Airy operator on `(s, ∞)` is discretized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum F2Route {
    /// Pull back to `(0, 1)` by `x = s + scale·tan(πξ/2)`.
    Transform { scale: f64 },
    /// Truncate to `(s, upper)`.
    Truncate { upper: f64 },
}

impl Default for F2Route {
    fn default() -> Self {
        F2Route::Transform { scale: DEFAULT_SCALE }
    }
}

fn airy_operator(s: f64, n: usize, route: F2Route) -> Result<(Arc<dyn Kernel>, QuadRule<f64>)> {
    match route {
        F2Route::Transform { scale } => {
            Ok((Arc::new(TransformedKernel::new(Arc::new(AiryKernel), s, scale)?), gauss_legendre(0.0, 1.0, n)?))
        }
        F2Route::Truncate { upper } => Ok((Arc::new(AiryKernel), gauss_legendre(s, upper, n)?)),
    }
}

/// The Tracy–Widom distribution `F₂(s) = det(I - K_Ai)` on `L²(s, ∞)`.
pub fn f2_tw(s: f64, m: usize, route: F2Route) -> Result<DistributionPoint> {
    if !s.is_finite() {
        return Err(Error::Domain(format!("argument must be finite, got {s}")));
    }
    check_m(m)?;
    if let F2Route::Truncate { upper } = route {
        if !(upper > s) {
            return Err(Error::Domain(format!("truncation point {upper} must exceed s = {s}")));
        }
    }
    let (value, err) = estimated_det(|n| airy_operator(s, n, route), m)?;
    probability(s, value, m, err)
}

/// Left-tail asymptotics `ln F₂(-s) ≈ -s³/12 - ln(s)/8 + ln(2)/24 + ζ'(-1)`, `s > 0`.
pub fn f2_asymptotic_log(s: f64) -> f64 {
    -s * s * s / 12.0 - s.ln() / 8.0 + 2f64.ln() / 24.0 + ZETA_PRIME_MINUS_ONE
}

/// Nodes used for the tail integral in [`truncation_bound`].
const BOUND_NODES: usize = 64;
/// Transformation scale used for the tail integral.
const BOUND_SCALE: f64 = 2.0;

/// `(∫_T^∞ ∫_T^∞ K_Ai(x,y)² dx dy)^{1/2}`, which bounds the error of
/// truncating the Airy operator on `(s, ∞)` to `(s, T)`.
pub fn truncation_bound(s: f64, upper: f64) -> Result<f64> {
    if !(upper > s) || !upper.is_finite() {
        return Err(Error::Domain(format!("truncation point {upper} must be finite and exceed s = {s}")));
    }
    let k = TransformedKernel::new(Arc::new(AiryKernel), upper, BOUND_SCALE)?;
    Ok(frobenius_norm(&nystrom_matrix(&k, &gauss_legendre(0.0, 1.0, BOUND_NODES)?)?))
}

/// A stationary determinantal process with an extended kernel `K_t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Process {
    Airy2,
    Airy1,
}

impl Process {
    pub fn name(self) -> &'static str {
        match self {
            Process::Airy2 => "airy2",
            Process::Airy1 => "airy1",
        }
    }

    /// The one-time kernel `K_0`.
    pub fn marginal_kernel(self) -> Arc<dyn Kernel> {
        match self {
            Process::Airy2 => Arc::new(AiryKernel),
            Process::Airy1 => Arc::new(Airy1ProcessKernel::new(0.0)),
        }
    }

    /// `K_t` as an ordinary kernel.
    pub fn kernel(self, t: f64) -> Arc<dyn Kernel> {
        match self {
            Process::Airy2 => Arc::new(Airy2ProcessKernel::new(t)),
            Process::Airy1 => Arc::new(Airy1ProcessKernel::new(t)),
        }
    }

    /// A truncation box with tail masses below [`TAIL_TOLERANCE`].
    pub fn default_box(self) -> (f64, f64) {
        match self {
            Process::Airy2 => (-10.0, 6.0),
            Process::Airy1 => (-5.0, 6.0),
        }
    }
}

impl std::str::FromStr for Process {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "airy2" => Ok(Process::Airy2),
            "airy1" => Ok(Process::Airy1),
            _ => Err(Error::Config(format!("unknown process '{s}', expected airy2 or airy1"))),
        }
    }
}

/// `P(A(0) <= s)` for the process, on the transformed rule with `m` nodes.
pub fn process_marginal(process: Process, s: f64, m: usize) -> Result<DistributionPoint> {
    check_m(m)?;
    let build = |n: usize| -> Result<(Arc<dyn Kernel>, QuadRule<f64>)> {
        Ok((
            Arc::new(TransformedKernel::new(process.marginal_kernel(), s, DEFAULT_SCALE)?),
            gauss_legendre(0.0, 1.0, n)?,
        ))
    };
    let (value, err) = estimated_det(build, m)?;
    probability(s, value, m, err)
}

fn joint_system(process: Process, t: f64, s1: f64, s2: f64, m: usize, scale: f64) -> Result<BlockSystem> {
    let rule = gauss_legendre(0.0, 1.0, m)?;
    let k0 = process.marginal_kernel();
    let block = |k: Arc<dyn Kernel>, a: f64, b: f64| -> Result<Arc<dyn Kernel>> {
        Ok(Arc::new(TransformedKernel::two_sided(k, a, b, scale)?))
    };
    let kernels = vec![
        vec![block(k0.clone(), s1, s1)?, block(process.kernel(t), s1, s2)?],
        vec![block(process.kernel(-t), s2, s1)?, block(k0, s2, s2)?],
    ];
    BlockSystem::new(vec![rule.clone(), rule], kernels)
}

/// `P(A(t) <= s1, A(0) <= s2)` as the determinant of the 2×2 operator system
/// `I - (K_0, K_t; K_{-t}, K_0)` on `L²(s1, ∞) ⊕ L²(s2, ∞)`.
///
/// At `t = 0` the two times coincide and the value is the marginal at `min(s1, s2)`.
pub fn process_joint(process: Process, t: f64, s1: f64, s2: f64, m: usize) -> Result<DistributionPoint> {
    if !t.is_finite() || !s1.is_finite() || !s2.is_finite() {
        return Err(Error::Domain("time and arguments must be finite".into()));
    }
    check_m(m)?;
    if t == 0.0 {
        return process_marginal(process, s1.min(s2), m);
    }
    let eval = |n: usize| -> Result<(f64, f64)> {
        let d = fredholm_det_system(&joint_system(process, t, s1, s2, n, DEFAULT_SCALE)?, -1.0)?;
        Ok((d.value, d.roundoff_bound))
    };
    let (value, roundoff) = eval(m)?;
    let rough = if m > 1 { eval(coarse(m))?.0 } else { value };
    probability(t, value, m, (value - rough).abs().max(roundoff))
}

/// `P(A₂(t) <= s1, A₂(0) <= s2)` for the Airy₂ process.
pub fn airy2_joint(t: f64, s1: f64, s2: f64, m: usize) -> Result<DistributionPoint> {
    process_joint(Process::Airy2, t, s1, s2, m)
}

/// `P(A₁(t) <= s1, A₁(0) <= s2)` for the Airy₁ process.
pub fn airy1_joint(t: f64, s1: f64, s2: f64, m: usize) -> Result<DistributionPoint> {
    process_joint(Process::Airy1, t, s1, s2, m)
}

/// Default transformation scale for joint distributions in covariances.
pub const COV_SCALE: f64 = 6.0;

/// Discretization of a covariance computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovSettings {
    /// Nodes per operator in each determinant.
    pub m: usize,
    /// Gauss–Legendre nodes per direction for the outer integral over the box.
    pub outer: usize,
    pub lower: f64,
    pub upper: f64,
    /// Scale of the map `x = s + scale·tan(πξ/2)`.
    pub scale: f64,
}

impl CovSettings {
    pub fn for_process(process: Process) -> Self {
        let (lower, upper) = process.default_box();
        Self { m: 32, outer: 48, lower, upper, scale: COV_SCALE }
    }

    fn check(&self) -> Result<()> {
        check_m(self.m)?;
        if self.outer == 0 {
            return Err(Error::Domain("outer rule needs at least one node".into()));
        }
        if !(self.lower < self.upper) || !self.lower.is_finite() || !self.upper.is_finite() {
            return Err(Error::Domain(format!("invalid box ({}, {})", self.lower, self.upper)));
        }
        if !(self.scale > 0.0) {
            return Err(Error::Domain(format!("scale must be positive, got {}", self.scale)));
        }
        Ok(())
    }

    fn refined(&self) -> Self {
        Self { m: self.m + self.m / 2, outer: self.outer + self.outer / 2, ..*self }
    }
}

/// Operator data at one `s`: the transformed points, `√(w φ')`, the
/// diagonal block, and the inner tables for `K_{±t}`.
struct Prepared {
    xs: Vec<f64>,
    sw: Vec<f64>,
    diag: Vec<f64>,
    tables: Option<[(Vec<Vec<f64>>, Vec<Vec<f64>>); 2]>,
}

/// Evaluates many joint probabilities at one `t` with the inner quadrature
/// and the Airy tables shared between all arguments `>= lower`.
pub struct JointEvaluator {
    t: f64,
    m: usize,
    scale: f64,
    rule: QuadRule<f64>,
    factors: Option<[InnerFactor; 2]>,
    kernels: [Arc<dyn Kernel>; 2],
    k0: Arc<dyn Kernel>,
}

impl JointEvaluator {
    pub fn new(process: Process, t: f64, m: usize, scale: f64, lower: f64) -> Result<Self> {
        check_m(m)?;
        if !(scale > 0.0) {
            return Err(Error::Domain(format!("scale must be positive, got {scale}")));
        }
        let factors = match process {
            Process::Airy2 if t != 0.0 => {
                let f = |t| Airy2ProcessKernel::new(t).factor(lower).expect("nonzero time");
                Some([f(t), f(-t)])
            }
            _ => None,
        };
        Ok(Self {
            t,
            m,
            scale,
            rule: gauss_legendre(0.0, 1.0, m)?,
            factors,
            kernels: [process.kernel(t), process.kernel(-t)],
            k0: process.marginal_kernel(),
        })
    }

    fn prepare(&self, s: f64) -> Prepared {
        let (xs, sw): (Vec<f64>, Vec<f64>) = self
            .rule
            .iter()
            .map(|(xi, w)| {
                let c = (0.5 * PI * xi).cos();
                (s + self.scale * (0.5 * PI * xi).tan(), (w * self.scale * 0.5 * PI / (c * c)).sqrt())
            })
            .unzip();
        let k = self.k0.fill(&xs, &xs);
        let m = self.m;
        let diag = (0..m * m).map(|idx| sw[idx / m] * k[idx] * sw[idx % m]).collect();
        let tables = self
            .factors
            .as_ref()
            .map(|[fp, fm]| [(fp.table(&xs, true), fp.table(&xs, false)), (fm.table(&xs, true), fm.table(&xs, false))]);
        Prepared { xs, sw, diag, tables }
    }

    /// `√(w φ')_i K(x_i, y_j) √(w φ')_j` for the block from `b` to `a`.
    fn coupling(&self, which: usize, a: &Prepared, b: &Prepared) -> Vec<f64> {
        let m = self.m;
        let mut out = Vec::with_capacity(m * m);
        match (&self.factors, &a.tables, &b.tables) {
            (Some(factors), Some(ta), Some(tb)) => {
                let left = &ta[which].0;
                let right = &tb[which].1;
                for i in 0..m {
                    for j in 0..m {
                        let dot: f64 = left[i].iter().zip(&right[j]).map(|(u, v)| u * v).sum();
                        let k = dot - factors[which].correction(a.xs[i], b.xs[j]);
                        out.push(a.sw[i] * k * b.sw[j]);
                    }
                }
            }
            _ => {
                let k = self.kernels[which].fill(&a.xs, &b.xs);
                for (idx, v) in k.into_iter().enumerate() {
                    out.push(a.sw[idx / m] * v * b.sw[idx % m]);
                }
            }
        }
        out
    }

    fn joint_prepared(&self, a: &Prepared, b: &Prepared) -> Result<f64> {
        let m = self.m;
        let (k12, k21) = (self.coupling(0, a, b), self.coupling(1, b, a));
        let mat = DenseMatrix::from_fn(2 * m, 2 * m, |i, j| {
            let v = match (i < m, j < m) {
                (true, true) => a.diag[i * m + j],
                (true, false) => k12[i * m + j - m],
                (false, true) => k21[(i - m) * m + j],
                (false, false) => b.diag[(i - m) * m + j - m],
            };
            f64::from(u8::from(i == j)) - v
        });
        if !mat.all_finite() {
            return Err(Error::Range(format!("joint matrix at t = {} is not finite", self.t)));
        }
        det_lu(&mat)
    }

    fn marginal_prepared(&self, a: &Prepared) -> Result<f64> {
        let m = self.m;
        det_lu(&DenseMatrix::from_fn(m, m, |i, j| f64::from(u8::from(i == j)) - a.diag[i * m + j]))
    }

    /// `P(A(t) <= s1, A(0) <= s2)`.
    pub fn joint(&self, s1: f64, s2: f64) -> Result<f64> {
        let (a, b) = (self.prepare(s1), self.prepare(s2));
        if self.t == 0.0 {
            return self.marginal_prepared(if s1 <= s2 { &a } else { &b });
        }
        self.joint_prepared(&a, &b)
    }

    /// Marginals `F(s_i)` and the matrix of joints `P(s_i, s_j)` over a grid.
    pub fn grid(&self, ss: &[f64]) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
        let prepared: Vec<Prepared> = ss.par_iter().map(|&s| self.prepare(s)).collect();
        let marginals = prepared.par_iter().map(|p| self.marginal_prepared(p)).collect::<Result<Vec<_>>>()?;
        let n = ss.len();
        let flat = (0..n * n)
            .into_par_iter()
            .map(|idx| {
                let (i, j) = (idx / n, idx % n);
                if self.t == 0.0 {
                    Ok(if ss[i] <= ss[j] { marginals[i] } else { marginals[j] })
                } else {
                    self.joint_prepared(&prepared[i], &prepared[j])
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((marginals, flat.chunks(n).map(<[f64]>::to_vec).collect()))
    }
}

/// Pieces of a covariance computed on the box `[L, U]`:
/// `cov = joint_integral - marginal_integral²` with
/// `joint_integral = ∫∫ P(A(t) <= s1, A(0) <= s2)` and `marginal_integral = ∫ F`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovEstimate {
    pub t: f64,
    pub value: f64,
    pub joint_integral: f64,
    pub marginal_integral: f64,
    pub settings: CovSettings,
}

/// Mean and variance of the marginal distribution together with its tails at the box ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub mean: f64,
    pub variance: f64,
    pub lower_tail: f64,
    pub upper_tail: f64,
}

/// Moments of the marginal from `E X = U - ∫F`, `E X² = U² - 2∫sF` over the box.
pub fn marginal_moments(process: Process, settings: &CovSettings) -> Result<Moments> {
    settings.check()?;
    let (lower, upper) = (settings.lower, settings.upper);
    let eval = JointEvaluator::new(process, 0.0, settings.m, settings.scale, lower)?;
    let tails: Vec<f64> =
        [lower, upper].par_iter().map(|&s| eval.marginal_prepared(&eval.prepare(s))).collect::<Result<_>>()?;
    let (lower_tail, upper_tail) = (tails[0], 1.0 - tails[1]);
    if lower_tail.abs() > TAIL_TOLERANCE || upper_tail.abs() > TAIL_TOLERANCE {
        return Err(Error::Precondition(format!(
            "box ({lower}, {upper}) too narrow: F(L) = {lower_tail:e}, 1 - F(U) = {upper_tail:e}, tolerance {TAIL_TOLERANCE:e}"
        )));
    }
    let rule = gauss_legendre(lower, upper, settings.outer)?;
    let f: Vec<f64> =
        rule.nodes().par_iter().map(|&s| eval.marginal_prepared(&eval.prepare(s))).collect::<Result<_>>()?;
    let (mut i0, mut i1) = (0.0, 0.0);
    for ((s, w), fs) in rule.iter().zip(&f) {
        i0 += w * fs;
        i1 += w * s * fs;
    }
    let mean = upper - i0;
    let second = upper * upper - 2.0 * i1;
    Ok(Moments { mean, variance: second - mean * mean, lower_tail, upper_tail })
}

/// Tracy–Widom mean and variance on the box `(L, U)` with `m` nodes per determinant.
pub fn tw_moments(m: usize, (lower, upper): (f64, f64)) -> Result<Moments> {
    let settings =
        CovSettings { m, lower, upper, outer: DEFAULT_MOMENT_OUTER, ..CovSettings::for_process(Process::Airy2) };
    marginal_moments(Process::Airy2, &settings)
}

/// Outer nodes used by [`tw_moments`].
pub const DEFAULT_MOMENT_OUTER: usize = 96;

/// `cov(A(t), A(0)) = ∫∫ [P(A(t) <= s1, A(0) <= s2) - F(s1)F(s2)] ds1 ds2`
/// over the box with fixed discretization. At `t = 0` this is the variance
/// of the marginal.
pub fn covariance(process: Process, t: f64, settings: &CovSettings) -> Result<CovEstimate> {
    settings.check()?;
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!("covariance is computed for finite t >= 0, got {t}")));
    }
    let rule = gauss_legendre(settings.lower, settings.upper, settings.outer)?;
    if t == 0.0 {
        let mo = marginal_moments(process, settings)?;
        let i0 = settings.upper - mo.mean;
        return Ok(CovEstimate {
            t,
            value: mo.variance,
            joint_integral: mo.variance + i0 * i0,
            marginal_integral: i0,
            settings: *settings,
        });
    }
    let eval = JointEvaluator::new(process, t, settings.m, settings.scale, settings.lower)?;
    let (f, p) = eval.grid(rule.nodes())?;
    let w = rule.weights();
    let mut joint = 0.0;
    let mut marg = 0.0;
    let mut cov = 0.0;
    for i in 0..w.len() {
        marg += w[i] * f[i];
        for j in 0..w.len() {
            joint += w[i] * w[j] * p[i][j];
            cov += w[i] * w[j] * (p[i][j] - f[i] * f[j]);
        }
    }
    Ok(CovEstimate { t, value: cov, joint_integral: joint, marginal_integral: marg, settings: *settings })
}

/// Covariance to absolute accuracy `accuracy`: the discretization is refined
/// by factors of 3/2 until two successive values agree.
pub fn covariance_adaptive(process: Process, t: f64, accuracy: f64, start: CovSettings) -> Result<DistributionPoint> {
    if !(accuracy > 0.0) {
        return Err(Error::Domain(format!("accuracy must be positive, got {accuracy}")));
    }
    const MAX_LEVELS: usize = 5;
    let mut settings = start;
    let mut prev = covariance(process, t, &settings)?.value;
    for _ in 0..MAX_LEVELS {
        settings = settings.refined();
        let next = covariance(process, t, &settings)?.value;
        let diff = (next - prev).abs();
        if diff <= accuracy {
            return Ok(DistributionPoint { parameter: t, value: next, m: settings.m, est_error: diff });
        }
        prev = next;
    }
    Err(Error::Precondition(format!(
        "covariance at t = {t} did not reach accuracy {accuracy:e} by m = {}, outer = {}",
        settings.m, settings.outer
    )))
}

/// `cov(A₂(t), A₂(0))` to the given absolute accuracy.
pub fn cov_airy2(t: f64, accuracy: f64) -> Result<DistributionPoint> {
    covariance_adaptive(Process::Airy2, t, accuracy, CovSettings::for_process(Process::Airy2))
}

/// `cov(A₁(t), A₁(0))` to the given absolute accuracy.
pub fn cov_airy1(t: f64, accuracy: f64) -> Result<DistributionPoint> {
    covariance_adaptive(Process::Airy1, t, accuracy, CovSettings::for_process(Process::Airy1))
}

/// Covariances over a sweep of times.
#[derive(Debug, Clone, PartialEq)]
pub struct CovGrid {
    pub t_values: Vec<f64>,
    pub cov_values: Vec<f64>,
    pub est_errors: Vec<f64>,
    pub accuracy: f64,
}

/// Default absolute accuracy of covariance sweeps.
pub const DEFAULT_COV_ACCURACY: f64 = 1e-8;

/// [`covariance_adaptive`] at each of the ascending `t_values`.
pub fn cov_grid(process: Process, t_values: &[f64], accuracy: f64) -> Result<CovGrid> {
    if t_values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Config("t-values must be strictly ascending".into()));
    }
    let start = CovSettings::for_process(process);
    let points =
        t_values.iter().map(|&t| covariance_adaptive(process, t, accuracy, start)).collect::<Result<Vec<_>>>()?;
    Ok(CovGrid {
        t_values: t_values.to_vec(),
        cov_values: points.iter().map(|p| p.value).collect(),
        est_errors: points.iter().map(|p| p.est_error).collect(),
        accuracy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gap_examples() {
        assert_eq!(e2_gap(0.0, 5).unwrap().value, 1.0);
        let p = e2_gap(0.1, 5).unwrap();
        assert!((p.value - 0.9000272717982590).abs() < 2e-16);
        assert!(p.est_error < 1e-13);
        assert!(matches!(e2_gap(-1.0, 5), Err(Error::Domain(_))));
    }

    #[test]
    fn tw_routes_and_limits() {
        let a = f2_tw(-2.0, 40, F2Route::default()).unwrap().value;
        let b = f2_tw(-2.0, 40, F2Route::Truncate { upper: 16.0 }).unwrap().value;
        assert!((a - b).abs() < 1e-10);
        assert!((f2_tw(10.0, 40, F2Route::default()).unwrap().value - 1.0).abs() < 1e-10);
        assert!(matches!(f2_tw(1.0, 10, F2Route::Truncate { upper: 1.0 }), Err(Error::Domain(_))));
    }

    #[test]
    fn truncation_bound_properties() {
        assert!(truncation_bound(-8.0, 16.0).unwrap() < 1e-16);
        assert!(truncation_bound(-2.0, 6.0).unwrap() < truncation_bound(-2.0, 4.0).unwrap());
        assert!(truncation_bound(1.0, 1.0).is_err());
    }

    #[test]
    fn joint_limits() {
        let f = |s| f2_tw(s, 30, F2Route::default()).unwrap().value;
        let f1 = f(-1.0);
        // P - F F ≈ t^{-2} F'(s1) F'(s2) at large t
        assert!((airy2_joint(50.0, 0.0, 1.0, 30).unwrap().value - f(0.0) * f(1.0)).abs() < 1e-6);
        assert!((airy2_joint(1.0, -1.0, 10.0, 30).unwrap().value - f1).abs() < 1e-8);
        assert_eq!(
            airy2_joint(0.0, -1.0, 0.0, 30).unwrap().value,
            process_marginal(Process::Airy2, -1.0, 30).unwrap().value
        );
    }

    #[test]
    fn evaluator_matches_block_system() {
        for process in [Process::Airy2, Process::Airy1] {
            let direct = process_joint(process, 0.7, -1.5, -0.5, 24).unwrap().value;
            let eval = JointEvaluator::new(process, 0.7, 24, DEFAULT_SCALE, -1.5).unwrap();
            assert!((eval.joint(-1.5, -0.5).unwrap() - direct).abs() < 1e-13, "{process:?}");
        }
    }

    #[test]
    fn moments_and_variance() {
        let mo = tw_moments(32, (-10.0, 6.0)).unwrap();
        assert!((mo.mean + 1.7710868074).abs() < 1e-9, "{mo:?}");
        assert!((mo.variance - 0.8131947928).abs() < 1e-9, "{mo:?}");
        let wide = tw_moments(32, (-12.0, 8.0)).unwrap();
        assert!((wide.mean - mo.mean).abs() < 1e-9 && (wide.variance - mo.variance).abs() < 1e-9);
        assert!(matches!(tw_moments(32, (-10.0, 3.0)), Err(Error::Precondition(_))));
        let c0 = covariance(Process::Airy2, 0.0, &CovSettings::for_process(Process::Airy2)).unwrap();
        assert!((c0.value - mo.variance).abs() < 1e-10);
    }

    #[test]
    fn covariance_rejects_negative_time() {
        assert!(matches!(cov_airy2(-1.0, 1e-8), Err(Error::Domain(_))));
        assert!(matches!(cov_airy1(-0.5, 1e-8), Err(Error::Domain(_))));
    }
}
