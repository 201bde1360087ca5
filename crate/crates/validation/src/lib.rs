//! Reporting helpers for the acceptance run: each criterion is a list of
//! named checks, printed as one PASS/FAIL line with indented details.

use std::time::{Duration, Instant};

use fredholm::kernels::{Kernel, Smoothness};

/// One numbered check with its outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

/// The checks making up one acceptance criterion.
#[derive(Debug, Default)]
pub struct Criterion {
    pub id: usize,
    pub title: String,
    pub checks: Vec<Check>,
    pub elapsed: Duration,
}

impl Criterion {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&mut self, label: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { label: label.into(), passed, detail: detail.into() });
    }

    /// `|value - target| <= tol`.
    pub fn close(&mut self, label: &str, value: f64, target: f64, tol: f64) {
        let dev = (value - target).abs();
        self.check(label, dev <= tol, format!("{value:.15e} vs {target:.15e}, |diff| {dev:.2e} (tol {tol:.0e})"));
    }

    /// `elapsed <= limit`.
    pub fn within(&mut self, label: &str, elapsed: Duration, limit: Duration) {
        self.check(label, elapsed <= limit, format!("{elapsed:.2?} (limit {limit:.0?})"));
    }

    pub fn line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        let mut out = format!(
            "{status} criterion {}: {} [{} checks, {failed} failed, {:.1?}]",
            self.id,
            self.title,
            self.checks.len(),
            self.elapsed
        );
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            if c.detail.is_empty() {
                out.push_str(&format!("\n    {mark} {}", c.label));
            } else {
                out.push_str(&format!("\n    {mark} {}: {}", c.label, c.detail));
            }
        }
        out
    }
}

/// Run `body` as criterion `id`, timing it and printing its report.
pub fn run(id: usize, title: &str, body: impl FnOnce(&mut Criterion)) -> Criterion {
    let mut c = Criterion { id, title: title.into(), ..Default::default() };
    let start = Instant::now();
    body(&mut c);
    c.elapsed = start.elapsed();
    println!("{}", c.line());
    c
}

/// `f()` with its wall-clock time.
pub fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed())
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let (mx, my) = (lx.iter().sum::<f64>() / n, ly.iter().sum::<f64>() / n);
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// A kernel sampled once on a node set; evaluation returns the value at the
/// nearest node. Lets the series oracle run on expensive kernels.
pub struct Tabulated {
    name: String,
    nodes: Vec<f64>,
    values: Vec<f64>,
}

impl Tabulated {
    pub fn new(kernel: &dyn Kernel, nodes: &[f64]) -> Self {
        Self { name: kernel.name(), nodes: nodes.to_vec(), values: kernel.fill(nodes, nodes) }
    }

    fn index(&self, x: f64) -> usize {
        let dist = |i: usize| (self.nodes[i] - x).abs();
        (0..self.nodes.len()).min_by(|&i, &j| dist(i).total_cmp(&dist(j))).expect("nonempty node set")
    }
}

impl Kernel for Tabulated {
    fn eval(&self, x: f64, y: f64) -> f64 {
        self.values[self.index(x) * self.nodes.len() + self.index(y)]
    }
    fn name(&self) -> String {
        format!("{} (tabulated)", self.name)
    }
    fn smoothness(&self) -> Smoothness {
        Smoothness::Continuous
    }
    fn is_hermitian(&self) -> bool {
        false
    }
}
