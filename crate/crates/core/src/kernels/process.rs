use std::f64::consts::PI;

use rayon::prelude::*;

use super::{AiryKernel, Kernel, Smoothness};
use crate::quadrature::gauss_legendre;
use crate::specfun::{airy_pair, airy_scaled};

/// Gauss–Legendre points per panel of the inner `ξ`-quadrature.
pub const DEFAULT_PANEL_POINTS: usize = 16;

/// For `-t` below this value the `t < 0` kernel is computed from the
/// Gaussian identity, above it by direct integration over `(-∞, 0)`.
pub const DEFAULT_T_SWITCH: f64 = 1.0;

/// Exponent `41 ≈ -ln(1e-18)` beyond which the integrand is dropped.
const CUTOFF: f64 = 41.0;

/// Kernel of the Airy₂ process,
///
/// `K_t(x,y) =  ∫_0^∞ e^{-ξt} Ai(x+ξ)Ai(y+ξ) dξ` for `t > 0` and
/// `K_t(x,y) = -∫_{-∞}^0 e^{-ξt} Ai(x+ξ)Ai(y+ξ) dξ` for `t < 0`.
///
/// At `t = 0` it is the Airy kernel, the `t → 0⁺` limit. The `ξ`-integral is
/// done by composite Gauss–Legendre on a truncated interval whose length and
/// panel width adapt to the smallest argument and to the oscillation of `Ai`.
/// For `t = -a < 0` with `a` small the direct integral decays slowly, so the
/// identity `∫_ℝ e^{aξ} Ai(x+ξ)Ai(y+ξ) dξ = G_a(x,y)` with the Gaussian
/// `G_a = (4πa)^{-1/2} exp(a³/12 - a(x+y)/2 - (x-y)²/(4a))` is used instead
/// to write `K_{-a} = ∫_0^∞ e^{aξ} Ai Ai dξ - G_a`.
#[derive(Debug, Clone)]
pub struct Airy2ProcessKernel {
    t: f64,
    panel_nodes: Vec<f64>,
    panel_weights: Vec<f64>,
    t_switch: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Route {
    Airy,
    Damped,
    Identity,
    Direct,
}

/// Discretized inner integral: for all arguments `>= xmin`,
/// `K_t(x, y) ≈ Σ_k weights[k] Ai(x + nodes[k]) Ai(y + nodes[k]) - G(x, y)`,
/// where the Gaussian `G` is present only when `gaussian` holds its parameter.
#[derive(Debug, Clone)]
pub struct InnerFactor {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub gaussian: Option<f64>,
}

impl InnerFactor {
    /// The Gaussian correction `G_a(x, y)`, or 0.
    pub fn correction(&self, x: f64, y: f64) -> f64 {
        self.gaussian.map_or(0.0, |a| Airy2ProcessKernel::gaussian(a, x, y))
    }
}

impl Airy2ProcessKernel {
    pub fn new(t: f64) -> Self {
        Self::with_inner(t, DEFAULT_PANEL_POINTS, DEFAULT_T_SWITCH)
    }

    /// Kernel with `panel_points` Gauss points per inner panel and the given
    /// switch between the two `t < 0` evaluation routes.
    pub fn with_inner(t: f64, panel_points: usize, t_switch: f64) -> Self {
        let rule = gauss_legendre(0.0, 1.0, panel_points.max(1)).expect("unit interval rule");
        Self { t, panel_nodes: rule.nodes().to_vec(), panel_weights: rule.weights().to_vec(), t_switch }
    }

    pub fn time(&self) -> f64 {
        self.t
    }

    fn route(&self) -> Route {
        if self.t > 0.0 {
            Route::Damped
        } else if self.t == 0.0 {
            Route::Airy
        } else if -self.t < self.t_switch {
            Route::Identity
        } else {
            Route::Direct
        }
    }

    /// The inner discretization valid for all arguments `>= xmin`; `None` at
    /// `t = 0`, where the kernel has the closed Airy form.
    pub fn factor(&self, xmin: f64) -> Option<InnerFactor> {
        if self.route() == Route::Airy {
            return None;
        }
        let (nodes, weights) = self.inner_rule(xmin);
        let gaussian = (self.route() == Route::Identity).then_some(-self.t);
        Some(InnerFactor { nodes, weights, gaussian })
    }

    /// Nodes and weights of the composite inner rule, with the exponential
    /// factor and the overall sign folded into the weights.
    fn inner_rule(&self, xmin: f64) -> (Vec<f64>, Vec<f64>) {
        let t = self.t;
        // integrand factor e^{c ξ}
        let c = -t;
        let (lo, hi, sign) = match self.route() {
            Route::Airy => unreachable!("t = 0 handled by the Airy kernel"),
            Route::Damped | Route::Identity => {
                let mut hi = decay_point(xmin, c);
                if t > 0.0 {
                    hi = hi.min(CUTOFF / t);
                }
                (0.0, hi, 1.0)
            }
            Route::Direct => (-CUTOFF / -t, 0.0, -1.0),
        };
        // oscillation rate of Ai(x+ξ)Ai(y+ξ) at the most negative argument
        let omega = 2.0 * (-(xmin + lo)).max(0.0).sqrt();
        let width = (12.0 / (omega + c.abs() + 1e-300)).min(2.0);
        let panels = ((hi - lo) / width).ceil().max(1.0) as usize;
        let h = (hi - lo) / panels as f64;
        let mut nodes = Vec::with_capacity(panels * self.panel_nodes.len());
        let mut weights = Vec::with_capacity(nodes.capacity());
        for p in 0..panels {
            let left = lo + p as f64 * h;
            for (&u, &w) in self.panel_nodes.iter().zip(&self.panel_weights) {
                let xi = left + h * u;
                nodes.push(xi);
                weights.push(sign * h * w * (c * xi).exp());
            }
        }
        (nodes, weights)
    }

    /// `G_a(x, y) = (4πa)^{-1/2} exp(a³/12 - a(x+y)/2 - (x-y)²/(4a))`.
    pub fn gaussian(a: f64, x: f64, y: f64) -> f64 {
        let d = x - y;
        (a * a * a / 12.0 - 0.5 * a * (x + y) - d * d / (4.0 * a)).exp() / (4.0 * PI * a).sqrt()
    }
}

/// Smallest `ξ` with `e^{cξ} Ai(xmin + ξ) < e^{-CUTOFF}`, from the bound
/// `Ai(u) <= exp(-(2/3)u^{3/2})` for `u >= 0`.
fn decay_point(xmin: f64, c: f64) -> f64 {
    let mut xi = (1.0 - xmin).max(0.5);
    loop {
        let u = xmin + xi;
        if 2.0 / 3.0 * u * u.sqrt() - c * xi >= CUTOFF {
            return xi;
        }
        xi += 0.25;
    }
}

impl Kernel for Airy2ProcessKernel {
    fn eval(&self, x: f64, y: f64) -> f64 {
        let Some(factor) = self.factor(x.min(y)) else {
            return AiryKernel.eval(x, y);
        };
        let mut sum = 0.0;
        for (&xi, &w) in factor.nodes.iter().zip(&factor.weights) {
            let ax = airy_pair(x + xi).0;
            if ax == 0.0 {
                continue;
            }
            sum += w * ax * airy_pair(y + xi).0;
        }
        sum - factor.correction(x, y)
    }

    fn name(&self) -> String {
        format!("airy2:{}", self.t)
    }
    fn smoothness(&self) -> Smoothness {
        Smoothness::Entire
    }
    fn is_hermitian(&self) -> bool {
        true
    }

    /// `K = A_x diag(w) A_yᵀ` with the tables `A_x[i,k] = Ai(x_i + ξ_k)`.
    fn fill(&self, xs: &[f64], ys: &[f64]) -> Vec<f64> {
        let xmin = xs.iter().chain(ys).copied().fold(f64::INFINITY, f64::min);
        if !xmin.is_finite() {
            return xs.iter().flat_map(|&x| ys.iter().map(move |&y| self.eval(x, y))).collect();
        }
        let Some(factor) = self.factor(xmin) else {
            return AiryKernel.fill(xs, ys);
        };
        let tx = factor.table(xs, true);
        let ty = factor.table(ys, false);
        let factor = &factor;
        xs.par_iter()
            .zip(&tx)
            .flat_map_iter(|(&x, rx)| {
                ys.iter().zip(&ty).map(move |(&y, ry)| {
                    let dot: f64 = rx.iter().zip(ry).map(|(u, v)| u * v).sum();
                    dot - factor.correction(x, y)
                })
            })
            .collect()
    }
}

impl InnerFactor {
    /// Rows `Ai(p + ξ_k)` for each point `p`, optionally multiplied by the weights.
    pub fn table(&self, pts: &[f64], weighted: bool) -> Vec<Vec<f64>> {
        pts.par_iter()
            .map(|&p| {
                self.nodes
                    .iter()
                    .zip(&self.weights)
                    .map(|(&xi, &w)| {
                        let a = airy_pair(p + xi).0;
                        if weighted {
                            a * w
                        } else {
                            a
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

/// Kernel of the Airy₁ process,
/// `K_t(x,y) = Ai(x+y+t²) e^{t(x+y)+2t³/3} - [t > 0] exp(-(x-y)²/(4t))/√(4πt)`.
#[derive(Debug, Clone, Copy)]
pub struct Airy1ProcessKernel {
    t: f64,
}

impl Airy1ProcessKernel {
    pub fn new(t: f64) -> Self {
        Self { t }
    }

    pub fn time(&self) -> f64 {
        self.t
    }
}

impl Kernel for Airy1ProcessKernel {
    fn eval(&self, x: f64, y: f64) -> f64 {
        let t = self.t;
        let u = x + y + t * t;
        let growth = t * (x + y) + 2.0 * t * t * t / 3.0;
        let airy_part = if u >= 0.0 && u.is_finite() {
            // combine e^{-ζ} with the growth factor before exponentiating
            let zeta = 2.0 / 3.0 * u * u.sqrt();
            let (scaled, _) = airy_scaled(u).expect("finite nonnegative argument");
            scaled * (growth - zeta).exp()
        } else {
            airy_pair(u).0 * growth.exp()
        };
        if t > 0.0 {
            let d = x - y;
            airy_part - (-d * d / (4.0 * t)).exp() / (4.0 * PI * t).sqrt()
        } else {
            airy_part
        }
    }

    fn name(&self) -> String {
        format!("airy1:{}", self.t)
    }
    fn smoothness(&self) -> Smoothness {
        Smoothness::Entire
    }
    fn is_hermitian(&self) -> bool {
        true
    }
}
