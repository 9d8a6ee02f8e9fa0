//! The `verify` subcommand: runs the invariant suites and renders a
//! human-readable pass/fail report.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;

use parabose::moments;
use parabose::oracle;
use parabose::state::{self, Order, Parity};
use parabose::Method;

use crate::CliError;

/// Suite size: `Quick` covers p ≤ 6 on 64-dimensional spaces, `Full`
/// p ≤ 10 on 256-dimensional spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyLevel {
    Quick,
    Full,
}

impl VerifyLevel {
    fn max_order(self) -> u32 {
        match self {
            VerifyLevel::Quick => 6,
            VerifyLevel::Full => 10,
        }
    }

    fn algebra_dim(self) -> usize {
        match self {
            VerifyLevel::Quick => 64,
            VerifyLevel::Full => 256,
        }
    }
}

/// One suite line of the report.
#[derive(Clone, Debug)]
pub struct VerifyLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of all suites.
#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub lines: Vec<VerifyLine>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.passed)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            let tag = if l.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{tag}  {} — {}", l.name, l.detail);
        }
        let _ = writeln!(
            out,
            "{}: {} of {} suites passed",
            if self.passed() { "OK" } else { "FAILURE" },
            self.lines.iter().filter(|l| l.passed).count(),
            self.lines.len()
        );
        out
    }

    fn push(&mut self, name: &str, passed: bool, detail: String) {
        self.lines.push(VerifyLine {
            name: name.to_string(),
            passed,
            detail,
        });
    }
}

fn ord(p: u32) -> Order {
    Order::new(p).expect("orders in the suites are >= 1")
}

fn max_abs(m: &ndarray::Array2<f64>) -> f64 {
    m.iter().fold(0.0f64, |acc, x| acc.max(x.abs()))
}

fn algebra_suite(level: VerifyLevel) -> (bool, String) {
    let dim = level.algebra_dim();
    let mut worst = 0.0f64;
    for p in 1..=level.max_order() {
        let ops = oracle::build_operators(ord(p), dim);
        let pf = p as f64;
        let lower_raise = ops.a_lower.dot(&ops.a_raise);
        let raise_lower = ops.a_raise.dot(&ops.a_lower);
        for n in 0..dim - 1 {
            let comm = lower_raise[(n, n)] - raise_lower[(n, n)];
            let target = 1.0 + (pf - 1.0) * ops.parity[(n, n)];
            worst = worst.max((comm - target).abs());
            let anti = lower_raise[(n, n)] + raise_lower[(n, n)];
            worst = worst.max((anti - (2.0 * n as f64 + pf)).abs());
        }
        let nr = ops.number_op.dot(&ops.a_raise) - ops.a_raise.dot(&ops.number_op);
        worst = worst.max(max_abs(&(&nr - &ops.a_raise)));
        let nl = ops.number_op.dot(&ops.a_lower) - ops.a_lower.dot(&ops.number_op);
        worst = worst.max(max_abs(&(&nl + &ops.a_lower)));
    }
    (
        worst < 1e-12,
        format!("max interior deviation of the bilinear relations {worst:.2e}"),
    )
}

fn normalization_suite(level: VerifyLevel) -> (bool, String) {
    let mut worst = 0.0f64;
    for p in 1..=level.max_order() {
        for am in [0.5, 1.0, 10f64.sqrt(), 15f64.sqrt()] {
            match state::FockAmplitudes::build(ord(p), Complex64::new(am, 0.0)) {
                Ok(amps) => {
                    let mass: f64 = amps.amplitudes().iter().map(|c| c.norm_sqr()).sum();
                    worst = worst.max((mass - 1.0).abs());
                }
                Err(e) => return (false, format!("p={p} |alpha|={am}: {e}")),
            }
        }
    }
    (worst <= 1e-10, format!("max |Σ P(n) - 1| = {worst:.2e}"))
}

fn identity_suite(level: VerifyLevel) -> (bool, String) {
    let (orders, js): (u32, Vec<u32>) = match level {
        VerifyLevel::Quick => (6, vec![0, 2, 5]),
        VerifyLevel::Full => (8, (0..=10).collect()),
    };
    let mut worst = 0.0f64;
    for p in 1..=orders {
        for &j in &js {
            for parity in [Parity::Even, Parity::Odd] {
                match state::identity_resolution_residual(ord(p), j, parity) {
                    Ok(r) => worst = worst.max(r.abs()),
                    Err(e) => return (false, format!("p={p} j={j} {parity:?}: {e}")),
                }
            }
        }
    }
    (worst < 1e-8, format!("max |residual| = {worst:.2e}"))
}

fn oracle_suite(level: VerifyLevel) -> (bool, String) {
    let mut worst = 0.0f64;
    for p in 1..=level.max_order() {
        for alpha in [
            Complex64::new(0.5, 0.0),
            Complex64::new(1.0, 1.0),
            Complex64::new(10f64.sqrt(), 0.0),
        ] {
            let a = match moments::moment_report(ord(p), alpha, Method::Analytic) {
                Ok(r) => r,
                Err(e) => return (false, format!("analytic p={p} alpha={alpha}: {e}")),
            };
            let o = match moments::moment_report(ord(p), alpha, Method::Oracle) {
                Ok(r) => r,
                Err(e) => return (false, format!("oracle p={p} alpha={alpha}: {e}")),
            };
            worst = worst.max(a.max_discrepancy(&o));
        }
    }
    (
        worst < 1e-8,
        format!("max analytic/oracle discrepancy {worst:.2e}"),
    )
}

fn asymptotic_suite(_level: VerifyLevel) -> (bool, String) {
    let mut worst_final = 0.0f64;
    for p in [2u32, 3, 4, 5, 8] {
        let mut prev = [f64::INFINITY; 5];
        for (i, am) in [3.0f64, 5.0, 8.0, 12.0].into_iter().enumerate() {
            let alpha = Complex64::new(am, 0.0);
            let a = match moments::moment_report(ord(p), alpha, Method::Analytic) {
                Ok(r) => r,
                Err(e) => return (false, format!("analytic p={p}: {e}")),
            };
            let s = match moments::moment_report(ord(p), alpha, Method::Asymptotic) {
                Ok(r) => r,
                Err(e) => return (false, format!("asymptotic p={p}: {e}")),
            };
            let errs = [
                ((s.mean_n - a.mean_n) / a.mean_n).abs(),
                ((s.var_n - a.var_n) / a.var_n).abs(),
                ((s.mandel_q - a.mandel_q) / a.mandel_q).abs(),
                ((s.robertson_bound - a.robertson_bound) / a.robertson_bound).abs(),
                ((s.var_x - a.var_x) / a.var_x).abs(),
            ];
            for (k, &e) in errs.iter().enumerate() {
                if e > prev[k] + 1e-12 {
                    return (
                        false,
                        format!("p={p} statistic {k}: error grew to {e:.3e} at |alpha|={am}"),
                    );
                }
                if i == 3 {
                    if e >= 0.01 {
                        return (false, format!("p={p} statistic {k}: {e:.3e} at |alpha|=12"));
                    }
                    worst_final = worst_final.max(e);
                }
            }
            prev = errs;
        }
    }
    (
        true,
        format!("errors decrease along |alpha| ∈ {{3,5,8,12}}; worst at 12 is {worst_final:.2e}"),
    )
}

fn critical_alpha_suite(_level: VerifyLevel) -> (bool, String) {
    match moments::critical_alpha(ord(2)) {
        Ok(r) => {
            let dev = (r - 1.9018801).abs();
            (
                dev < 1e-6,
                format!("critical modulus for order 2 is {r:.9} (dev {dev:.2e})"),
            )
        }
        Err(e) => (false, format!("{e}")),
    }
}

/// Run every suite at the given level; failures are report content, not
/// errors.
type Suite = fn(VerifyLevel) -> (bool, String);

pub fn cmd_verify(level: VerifyLevel, out: Option<&Path>) -> Result<VerifyReport, CliError> {
    let mut report = VerifyReport::default();
    let suites: [(&str, Suite); 6] = [
        ("algebra exactness", algebra_suite),
        ("state normalization", normalization_suite),
        ("identity resolution", identity_suite),
        ("analytic vs oracle", oracle_suite),
        ("asymptotic convergence", asymptotic_suite),
        ("critical alpha", critical_alpha_suite),
    ];
    for (name, suite) in suites {
        let (passed, detail) = suite(level);
        report.push(name, passed, detail);
    }
    if let Some(path) = out {
        std::fs::write(path, report.render())?;
    }
    Ok(report)
}
