use std::sync::Arc;

use clap::{Args, ValueEnum};
use rayon::prelude::*;

use fredholm::kernels::{kernel_from_name, Kernel, TransformedKernel, DEFAULT_SCALE};
use fredholm::nystrom::{convergence_study, fredholm_det, NystromProblem};
use fredholm::projection::{galerkin_legendre_green, ritz_galerkin_green};
use fredholm::quadrature::{clenshaw_curtis, gauss_legendre};
use fredholm::rmt::{
    covariance_adaptive, e2_gap, f2_tw, process_joint, truncation_bound, CovSettings, DistributionPoint, F2Route,
    Process, DEFAULT_COV_ACCURACY,
};
use fredholm::specfun::{airy, erf, erfc};
use fredholm::{Error, Result, RuleFamily};

use crate::output::{Cell, Table};
use crate::Command;

/// Significant digits for quadrature nodes and weights.
const QUAD_DIGITS: usize = 17;

/// `min, min + step, ..., max` with the endpoint included up to rounding.
fn sweep(min: f64, max: f64, step: f64) -> Result<Vec<f64>> {
    if !min.is_finite() || !max.is_finite() || max < min {
        return Err(Error::Config(format!("invalid range [{min}, {max}]")));
    }
    if min == max {
        return Ok(vec![min]);
    }
    if !(step > 0.0) {
        return Err(Error::Config(format!("step must be positive, got {step}")));
    }
    let n = ((max - min) / step + 1e-9).floor() as usize;
    if n > 1_000_000 {
        return Err(Error::Config(format!("sweep of {n} points is too long")));
    }
    Ok((0..=n).map(|i| min + i as f64 * step).collect())
}

fn rule_family(name: &str) -> Result<RuleFamily> {
    name.parse()
}

fn point_table(points: Vec<Result<DistributionPoint>>) -> Result<Table> {
    let mut t = Table::new(vec!["param", "value", "est_error"]);
    for p in points {
        let p = p?;
        t.push(vec![p.parameter.into(), p.value.into(), p.est_error.into()]);
    }
    Ok(t)
}

/// A kernel on `(a, b)`, or pulled back to `(0, 1)` when `b` is infinite.
fn operator(name: &str, a: f64, b: f64, scale: f64) -> Result<(Arc<dyn Kernel>, f64, f64)> {
    let kernel = kernel_from_name(name)?;
    if !a.is_finite() || b.is_nan() || !(b > a) {
        return Err(Error::Domain(format!("invalid interval ({a}, {b})")));
    }
    if b.is_infinite() {
        Ok((Arc::new(TransformedKernel::new(kernel, a, scale)?), 0.0, 1.0))
    } else {
        Ok((kernel, a, b))
    }
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct QuadArgs {
    /// gauss or cc.
    #[arg(long, default_value = "gauss")]
    pub rule: String,
    #[arg(long, default_value_t = 0.0)]
    pub a: f64,
    #[arg(long, default_value_t = 1.0)]
    pub b: f64,
    #[arg(long)]
    pub m: usize,
}

fn quad(args: &QuadArgs) -> Result<Table> {
    let rule = rule_family(&args.rule)?.build(args.a, args.b, args.m)?;
    let mut t = Table::new(vec!["node", "weight"]);
    for (x, w) in rule.iter() {
        t.push(vec![Cell::Real(x, QUAD_DIGITS), Cell::Real(w, QUAD_DIGITS)]);
    }
    Ok(t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Func {
    Airy,
    Erf,
    Erfc,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct SpecfunArgs {
    #[arg(long, value_enum)]
    pub func: Func,
    /// First argument; `--x` for a single point.
    #[arg(long, visible_alias = "x")]
    pub x_min: f64,
    #[arg(long)]
    pub x_max: Option<f64>,
    #[arg(long, default_value_t = 0.1)]
    pub step: f64,
}

fn specfun(args: &SpecfunArgs) -> Result<Table> {
    let xs = sweep(args.x_min, args.x_max.unwrap_or(args.x_min), args.step)?;
    match args.func {
        Func::Airy => {
            let mut t = Table::new(vec!["x", "ai", "ai_prime"]);
            let vals: Vec<_> = xs.par_iter().map(|&x| airy(x)).collect();
            for v in vals {
                let v = v?;
                t.push(vec![v.argument.into(), Cell::Real(v.ai, QUAD_DIGITS), Cell::Real(v.ai_prime, QUAD_DIGITS)]);
            }
            Ok(t)
        }
        Func::Erf | Func::Erfc => {
            let f = if args.func == Func::Erf { erf } else { erfc };
            let mut t = Table::new(vec!["x", "value"]);
            for x in xs {
                t.push(vec![x.into(), Cell::Real(f(x)?, QUAD_DIGITS)]);
            }
            Ok(t)
        }
    }
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct DetArgs {
    /// Kernel name, see the registry in the error message for unknown names.
    #[arg(long)]
    pub kernel: String,
    #[arg(long)]
    pub a: f64,
    /// Right endpoint; `inf` pulls the operator back to (0, 1).
    #[arg(long)]
    pub b: f64,
    #[arg(long, default_value_t = -1.0)]
    pub z: f64,
    #[arg(long)]
    pub m: usize,
    #[arg(long, default_value = "gauss")]
    pub rule: String,
    #[arg(long, default_value_t = DEFAULT_SCALE)]
    pub scale: f64,
}

fn det(args: &DetArgs) -> Result<Table> {
    let (kernel, a, b) = operator(&args.kernel, args.a, args.b, args.scale)?;
    let rule = rule_family(&args.rule)?.build(a, b, args.m)?;
    let d = fredholm_det(&NystromProblem::new(kernel, rule, args.z)?)?;
    let mut t = Table::new(vec!["m", "value", "roundoff_bound"]);
    t.push(vec![d.m.into(), d.value.into(), d.roundoff_bound.into()]);
    Ok(t)
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct StudyArgs {
    #[arg(long)]
    pub kernel: String,
    #[arg(long)]
    pub a: f64,
    #[arg(long)]
    pub b: f64,
    #[arg(long, default_value_t = -1.0)]
    pub z: f64,
    #[arg(long, default_value = "gauss")]
    pub rule: String,
    #[arg(long, value_delimiter = ',', required = true)]
    pub m_list: Vec<usize>,
    /// Exact value to measure errors against; defaults to the largest m.
    #[arg(long)]
    pub reference: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_SCALE)]
    pub scale: f64,
}

fn study(args: &StudyArgs) -> Result<Table> {
    let (kernel, a, b) = operator(&args.kernel, args.a, args.b, args.scale)?;
    let rows = convergence_study(kernel, (a, b), args.z, rule_family(&args.rule)?, &args.m_list, args.reference)?;
    let mut t = Table::new(vec!["m", "value", "error", "roundoff_bound"]);
    for r in rows {
        t.push(vec![r.m.into(), r.value.into(), r.error.into(), r.roundoff_bound.into()]);
    }
    Ok(t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GreenMethod {
    NystromGauss,
    NystromCc,
    Ritz,
    Galerkin,
}

#[derive(Args, Debug)]
pub struct GreenBenchArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub m_list: Vec<usize>,
    #[arg(long, value_enum, default_value = "nystrom-gauss")]
    pub method: GreenMethod,
}

fn green_bench(args: &GreenBenchArgs) -> Result<Table> {
    let exact = 1f64.sin();
    let green = kernel_from_name("green")?;
    let values: Vec<Result<f64>> = args
        .m_list
        .par_iter()
        .map(|&m| match args.method {
            GreenMethod::NystromGauss => {
                Ok(fredholm_det(&NystromProblem::new(green.clone(), gauss_legendre(0.0, 1.0, m)?, -1.0)?)?.value)
            }
            GreenMethod::NystromCc => {
                Ok(fredholm_det(&NystromProblem::new(green.clone(), clenshaw_curtis(0.0, 1.0, m)?, -1.0)?)?.value)
            }
            GreenMethod::Ritz => ritz_galerkin_green(m, -1.0),
            GreenMethod::Galerkin => galerkin_legendre_green(m, -1.0),
        })
        .collect();
    let mut t = Table::new(vec!["m", "value", "error"]);
    for (&m, v) in args.m_list.iter().zip(values) {
        let v = v?;
        t.push(vec![m.into(), v.into(), (v - exact).abs().into()]);
    }
    Ok(t)
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct E2Args {
    #[arg(long)]
    pub s_min: f64,
    #[arg(long)]
    pub s_max: f64,
    #[arg(long, default_value_t = 0.1)]
    pub step: f64,
    #[arg(long, default_value_t = 30)]
    pub m: usize,
}

fn e2(args: &E2Args) -> Result<Table> {
    let ss = sweep(args.s_min, args.s_max, args.step)?;
    point_table(ss.par_iter().map(|&s| e2_gap(s, args.m)).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RouteName {
    Transform,
    Truncate,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct F2Args {
    #[arg(long)]
    pub s_min: f64,
    #[arg(long)]
    pub s_max: f64,
    #[arg(long, default_value_t = 0.1)]
    pub step: f64,
    #[arg(long, default_value_t = 40)]
    pub m: usize,
    #[arg(long, value_enum, default_value = "transform")]
    pub route: RouteName,
    /// Truncation point for the truncate route.
    #[arg(long = "T", default_value_t = 16.0)]
    pub upper: f64,
    /// Scale of the transform route.
    #[arg(long, default_value_t = DEFAULT_SCALE)]
    pub scale: f64,
}

fn f2(args: &F2Args) -> Result<Table> {
    let route = match args.route {
        RouteName::Transform => F2Route::Transform { scale: args.scale },
        RouteName::Truncate => F2Route::Truncate { upper: args.upper },
    };
    let ss = sweep(args.s_min, args.s_max, args.step)?;
    point_table(ss.par_iter().map(|&s| f2_tw(s, args.m, route)).collect())
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct TruncBoundArgs {
    #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    pub s: Vec<f64>,
    #[arg(long = "T-min")]
    pub t_min: f64,
    #[arg(long = "T-max")]
    pub t_max: f64,
    #[arg(long, default_value_t = 0.5)]
    pub step: f64,
}

fn trunc_bound(args: &TruncBoundArgs) -> Result<Table> {
    let ts = sweep(args.t_min, args.t_max, args.step)?;
    let pairs: Vec<(f64, f64)> = args.s.iter().flat_map(|&s| ts.iter().map(move |&u| (s, u))).collect();
    let bounds: Vec<Result<f64>> = pairs.par_iter().map(|&(s, u)| truncation_bound(s, u)).collect();
    let mut t = Table::new(vec!["s", "T", "bound"]);
    for (&(s, u), b) in pairs.iter().zip(bounds) {
        t.push(vec![s.into(), u.into(), b?.into()]);
    }
    Ok(t)
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct JointArgs {
    #[arg(long, default_value = "airy2")]
    pub process: String,
    #[arg(long)]
    pub t: f64,
    /// One or more values, comma separated.
    #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    pub s1: Vec<f64>,
    #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    pub s2: Vec<f64>,
    #[arg(long, default_value_t = 32)]
    pub m: usize,
}

fn joint(args: &JointArgs) -> Result<Table> {
    let process: Process = args.process.parse()?;
    let pairs: Vec<(f64, f64)> = args.s1.iter().flat_map(|&a| args.s2.iter().map(move |&b| (a, b))).collect();
    let vals: Vec<_> = pairs.par_iter().map(|&(a, b)| process_joint(process, args.t, a, b, args.m)).collect();
    let mut t = Table::new(vec!["t", "s1", "s2", "value", "est_error"]);
    for (&(a, b), v) in pairs.iter().zip(vals) {
        let v = v?;
        t.push(vec![args.t.into(), a.into(), b.into(), v.value.into(), v.est_error.into()]);
    }
    Ok(t)
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct CovArgs {
    #[arg(long, default_value = "airy2")]
    pub process: String,
    #[arg(long)]
    pub t_min: f64,
    #[arg(long)]
    pub t_max: f64,
    #[arg(long, default_value_t = 0.5)]
    pub step: f64,
    /// Absolute accuracy; the discretization is refined until two levels agree.
    #[arg(long, default_value_t = DEFAULT_COV_ACCURACY)]
    pub accuracy: f64,
    /// Starting number of nodes per operator.
    #[arg(long)]
    pub m: Option<usize>,
    /// Starting number of outer nodes per direction.
    #[arg(long)]
    pub outer: Option<usize>,
    /// Lower end of the truncation box.
    #[arg(long)]
    pub lower: Option<f64>,
    /// Upper end of the truncation box.
    #[arg(long)]
    pub upper: Option<f64>,
}

fn cov(args: &CovArgs) -> Result<Table> {
    let process: Process = args.process.parse()?;
    let mut start = CovSettings::for_process(process);
    start.m = args.m.unwrap_or(start.m);
    start.outer = args.outer.unwrap_or(start.outer);
    start.lower = args.lower.unwrap_or(start.lower);
    start.upper = args.upper.unwrap_or(start.upper);
    let ts = sweep(args.t_min, args.t_max, args.step)?;
    point_table(ts.par_iter().map(|&t| covariance_adaptive(process, t, args.accuracy, start)).collect())
}

pub fn dispatch(command: &Command) -> Result<Table> {
    match command {
        Command::Quad(a) => quad(a),
        Command::Specfun(a) => specfun(a),
        Command::Det(a) => det(a),
        Command::Study(a) => study(a),
        Command::GreenBench(a) => green_bench(a),
        Command::E2(a) => e2(a),
        Command::F2(a) => f2(a),
        Command::TruncBound(a) => trunc_bound(a),
        Command::Joint(a) => joint(a),
        Command::Cov(a) => cov(a),
    }
}
