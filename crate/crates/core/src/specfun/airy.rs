//! Airy function `Ai` and its derivative on the real line.
//!
//! Branches:
//! - `-1 <= x < 1`: Maclaurin series (a single Taylor step of `y'' = x y` from 0);
//! - `1 <= x < X_BESSEL`: Taylor steps of `y'' = x y` backwards from `X_BESSEL`,
//!   stable because `Ai` is the dominant solution in that direction;
//! - `X_BESSEL <= x < X_ASYMPTOTIC`: `Ai(x) = √(x/3)/π · K_{1/3}(ζ)` with the
//!   modified Bessel function from Steed's continued fraction;
//! - `x >= X_ASYMPTOTIC`: the exponentially decaying asymptotic series;
//! - `X_OSCILLATORY < x < -1`: Taylor steps of the Airy equation from `x = 0`,
//!   which are neutrally stable on the oscillatory side;
//! - `x <= X_OSCILLATORY`: the oscillatory asymptotic series.
//!
//! Here `ζ = (2/3)|x|^{3/2}`. Both asymptotic series are truncated once their
//! terms drop below `1e-17` or start to grow; at the switch points the
//! smallest term is of size `e^{-2ζ} < 1e-16`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// `Ai(0) = 3^{-2/3} / Γ(2/3)`.
pub const AI_ZERO: f64 = 0.355_028_053_887_817_24;
/// `Ai'(0) = -3^{-1/3} / Γ(1/3)`.
pub const AI_PRIME_ZERO: f64 = -0.258_819_403_792_806_8;
const BI_ZERO: f64 = 0.614_926_627_446_000_7;
const BI_PRIME_ZERO: f64 = 0.448_288_357_353_826_36;

const X_ASYMPTOTIC: f64 = 12.0;
const X_BESSEL: f64 = 2.1;
const X_OSCILLATORY: f64 = -9.0;
const TAYLOR_STEP: f64 = 0.5;

/// Value and derivative of `Ai` at one argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AiryValue {
    pub argument: f64,
    pub ai: f64,
    pub ai_prime: f64,
}

/// `Ai(x)` and `Ai'(x)`. Supported range is at least `[-60, 200]`; beyond
/// `x ≈ 104` both values underflow to zero.
pub fn airy(x: f64) -> Result<AiryValue> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("Airy function of non-finite argument {x}")));
    }
    let (ai, ai_prime) = airy_pair(x);
    Ok(AiryValue { argument: x, ai, ai_prime })
}

pub fn airy_ai(x: f64) -> Result<f64> {
    airy(x).map(|v| v.ai)
}

pub fn airy_ai_prime(x: f64) -> Result<f64> {
    airy(x).map(|v| v.ai_prime)
}

/// Unchecked `(Ai(x), Ai'(x))`; NaN in, NaN out.
pub fn airy_pair(x: f64) -> (f64, f64) {
    if x.is_nan() {
        return (f64::NAN, f64::NAN);
    }
    if x >= X_ASYMPTOTIC {
        return asymptotic_positive(x);
    }
    if x >= X_BESSEL {
        return via_bessel_k(x);
    }
    if x >= 1.0 {
        let (y, yp) = via_bessel_k(X_BESSEL);
        return march(X_BESSEL, y, yp, x);
    }
    if x >= -1.0 {
        return taylor_step(0.0, AI_ZERO, AI_PRIME_ZERO, x);
    }
    if x > X_OSCILLATORY {
        return march(0.0, AI_ZERO, AI_PRIME_ZERO, x);
    }
    asymptotic_negative(-x)
}

/// `e^{ζ} Ai(x)` and `e^{ζ} Ai'(x)` for `x >= 0`, `ζ = (2/3) x^{3/2}`; finite
/// and nonzero for every finite `x`, where the unscaled values underflow.
pub fn airy_scaled(x: f64) -> Result<(f64, f64)> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("scaled Airy function needs finite x >= 0, got {x}")));
    }
    Ok(if x >= X_ASYMPTOTIC {
        asymptotic_positive_scaled(x)
    } else if x >= X_BESSEL {
        via_bessel_k_scaled(x)
    } else {
        let grow = (2.0 / 3.0 * x * x.sqrt()).exp();
        let (a, ap) = airy_pair(x);
        (a * grow, ap * grow)
    })
}

/// `Bi(x)` and `Bi'(x)` on `[-9, 6]`, used only to validate `Ai` through the
/// Wronskian `Ai Bi' - Ai' Bi = 1/π`.
pub fn airy_bi_validation(x: f64) -> Result<(f64, f64)> {
    if !(X_OSCILLATORY..=6.0).contains(&x) {
        return Err(Error::Domain(format!("validation Bi supports [-9, 6], got {x}")));
    }
    Ok(march(0.0, BI_ZERO, BI_PRIME_ZERO, x))
}

/// Integrate `y'' = x y` from `start` to `x` in Taylor steps no longer than [`TAYLOR_STEP`].
fn march(start: f64, y0: f64, yp0: f64, x: f64) -> (f64, f64) {
    let steps = ((x - start).abs() / TAYLOR_STEP).ceil().max(1.0) as usize;
    let h = (x - start) / steps as f64;
    let (mut y, mut yp) = (y0, yp0);
    for k in 0..steps {
        let c = start + k as f64 * h;
        (y, yp) = taylor_step(c, y, yp, h);
    }
    (y, yp)
}

/// Taylor series of the solution of `y'' = x y` with `y(c) = y`, `y'(c) = yp`,
/// evaluated at `c + h`. Coefficients follow `a_{n+2} = (c a_n + a_{n-1}) / ((n+1)(n+2))`.
fn taylor_step(c: f64, y: f64, yp: f64, h: f64) -> (f64, f64) {
    let scale = y.abs() + yp.abs();
    let (mut a0, mut a1, mut a2) = (y, yp, c * y / 2.0);
    let mut hn = h * h; // h^n for the coefficient a_n with n = 2
    let mut value = a0 + a1 * h + a2 * hn;
    let mut deriv = a1 + 2.0 * a2 * h;
    let mut small = 0;
    let mut n = 2usize;
    while n < 400 {
        let a3 = (c * a1 + a0) / ((n + 1) as f64 * n as f64);
        let hn_prev = hn;
        hn *= h;
        let term = a3 * hn;
        value += term;
        deriv += (n + 1) as f64 * a3 * hn_prev;
        n += 1;
        if term.abs() <= 1e-18 * scale && (a3 * hn_prev).abs() * n as f64 <= 1e-18 * scale {
            small += 1;
            if small >= 3 {
                break;
            }
        } else {
            small = 0;
        }
        (a0, a1, a2) = (a1, a2, a3);
    }
    (value, deriv)
}

/// Steed's continued fraction (CF2) for `K_μ(x)` and `K_{μ+1}(x)`, `|μ| <= 1/2`,
/// returned with the factor `e^{-x}` removed.
fn bessel_k_scaled(mu: f64, x: f64) -> (f64, f64) {
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut delh = d;
    let mut h = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25 - mu * mu;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..20_000 {
        a -= 2.0 * (i - 1) as f64;
        c = -a * c / i as f64;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 1e-17 && delh.abs() < 1e-17 * h.abs() {
            break;
        }
    }
    let h = a1 * h;
    let k_mu = (PI / (2.0 * x)).sqrt() / s;
    let k_mu1 = k_mu * (mu + x + 0.5 - h) / x;
    (k_mu, k_mu1)
}

fn via_bessel_k(x: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * x * x.sqrt();
    let (a, ap) = via_bessel_k_scaled(x);
    let decay = (-zeta).exp();
    (a * decay, ap * decay)
}

/// `e^{ζ} (Ai, Ai')` from the modified Bessel functions.
fn via_bessel_k_scaled(x: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * x * x.sqrt();
    let (k13, k43) = bessel_k_scaled(1.0 / 3.0, zeta);
    // K_{4/3} = K_{2/3} + (2/(3ζ)) K_{1/3}
    let k23 = k43 - 2.0 / (3.0 * zeta) * k13;
    let ai = (x / 3.0).sqrt() / PI * k13;
    let aip = -x / (PI * 3f64.sqrt()) * k23;
    (ai, aip)
}

/// The sums `Σ (-1)^k u_k ζ^{-k}` and `Σ (-1)^k v_k ζ^{-k}`.
fn decaying_sums(zeta: f64) -> (f64, f64) {
    let mut u = 1.0;
    let mut su = 1.0;
    let mut sv = 1.0;
    let mut zk = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..60 {
        let kf = k as f64;
        u *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / (216.0 * kf * (2.0 * kf - 1.0));
        let v = -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u;
        zk *= -1.0 / zeta;
        let tu = u * zk;
        if tu.abs() > last {
            break;
        }
        last = tu.abs();
        su += tu;
        sv += v * zk;
        if last < 1e-17 {
            break;
        }
    }
    (su, sv)
}

fn asymptotic_positive(x: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * x * x.sqrt();
    let (su, sv) = decaying_sums(zeta);
    let q = x.powf(0.25);
    let base = -zeta - (2.0 * PI.sqrt()).ln();
    let ai = (base - q.ln()).exp() * su;
    let aip = -(base + q.ln()).exp() * sv;
    (ai, aip)
}

fn asymptotic_positive_scaled(x: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * x * x.sqrt();
    let (su, sv) = decaying_sums(zeta);
    let q = x.powf(0.25);
    let c = 1.0 / (2.0 * PI.sqrt());
    (c / q * su, -c * q * sv)
}

/// Oscillatory expansion for `Ai(-z)`, `Ai'(-z)` with `z > 0`.
fn asymptotic_negative(z: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * z * z.sqrt();
    // even/odd parts of the u and v series
    let (mut ue, mut uo, mut ve, mut vo) = (1.0, 0.0, 1.0, 0.0);
    let mut u = 1.0;
    let mut zk = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..80 {
        let kf = k as f64;
        u *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / (216.0 * kf * (2.0 * kf - 1.0));
        let v = -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u;
        zk /= zeta;
        let tu = u * zk;
        if tu.abs() > last {
            break;
        }
        last = tu.abs();
        // sign (-1)^{floor(k/2)}
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            ue += sign * tu;
            ve += sign * v * zk;
        } else {
            uo += sign * tu;
            vo += sign * v * zk;
        }
        if last < 1e-17 {
            break;
        }
    }
    let phase = zeta - PI / 4.0;
    let (sin, cos) = phase.sin_cos();
    let q = z.powf(0.25);
    let norm = 1.0 / PI.sqrt();
    let ai = norm / q * (cos * ue + sin * uo);
    let aip = norm * q * (sin * ve - cos * vo);
    (ai, aip)
}
