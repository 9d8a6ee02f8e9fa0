//! Library half of the `parabose` command-line tool: sweep specification,
//! config handling, the data-file writers, and the verification suites.
//!
//! Every number in every output file is produced by a `parabose` library
//! call; this crate only formats.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use parabose::moments;
use parabose::oracle;
use parabose::state::{self, Order};
use parabose::{Method, MomentReport};

pub mod verify;

pub use verify::{cmd_verify, VerifyLevel, VerifyReport};

// ---------------------------------------------------------------------
// errors and exit codes
// ---------------------------------------------------------------------

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or an inconsistent sweep; exit code 2.
    Usage(String),
    /// A library evaluation failed; exit code 3. The context names the
    /// offending grid point.
    Numeric {
        context: String,
        source: parabose::Error,
    },
    /// Filesystem trouble; exit code 3.
    Io(std::io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Numeric { context, source } => {
                write!(f, "numeric failure at {context}: {source}")
            }
            CliError::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numeric { .. } | CliError::Io(_) => 3,
        }
    }
}

fn numeric(context: impl Into<String>) -> impl FnOnce(parabose::Error) -> CliError {
    let context = context.into();
    move |source| CliError::Numeric { context, source }
}

/// Largest Fock dimension the dense-matrix oracle may be asked for from
/// the command line (four dim x dim matrices).
pub const MAX_ORACLE_DIM: usize = 2048;

fn check_oracle_dim(
    order: Order,
    alpha: Complex64,
    truncation: Option<usize>,
) -> Result<(), CliError> {
    let dim = truncation.unwrap_or_else(|| state::truncation_dim(order, alpha));
    if dim > MAX_ORACLE_DIM {
        return Err(CliError::Usage(format!(
            "oracle evaluation at p={}, alpha={alpha} needs a {dim}-dimensional dense space \
             (maximum {MAX_ORACLE_DIM}); use the analytic or direct_sum method",
            order.get()
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------
// sweep specification
// ---------------------------------------------------------------------

/// What to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    Pn,
    Moments,
    Q,
    Quadratures,
    Uncertainty,
    Overlap,
}

/// A single method or the analytic/direct-sum/oracle triplet.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodChoice {
    Single(Method),
    All,
}

impl MethodChoice {
    pub fn parse(s: &str) -> Result<MethodChoice, CliError> {
        Ok(match s {
            "analytic" => MethodChoice::Single(Method::Analytic),
            "asymptotic" => MethodChoice::Single(Method::Asymptotic),
            "direct_sum" | "direct-sum" => MethodChoice::Single(Method::DirectSum),
            "oracle" => MethodChoice::Single(Method::Oracle),
            "all" => MethodChoice::All,
            other => {
                return Err(CliError::Usage(format!(
                    "unknown method '{other}'; expected analytic, asymptotic, direct_sum, oracle or all"
                )))
            }
        })
    }

    fn label(&self) -> String {
        match self {
            MethodChoice::Single(m) => m.name().to_string(),
            MethodChoice::All => "all".to_string(),
        }
    }
}

/// A (orders × alphas) sweep request.
#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub orders: Vec<Order>,
    pub alphas: Vec<Complex64>,
    pub quantities: Vec<Quantity>,
    pub method: MethodChoice,
}

impl SweepSpec {
    pub fn new(
        orders: Vec<Order>,
        alphas: Vec<Complex64>,
        quantities: Vec<Quantity>,
        method: MethodChoice,
    ) -> Result<SweepSpec, CliError> {
        if orders.is_empty() {
            return Err(CliError::Usage("order list is empty".into()));
        }
        if alphas.is_empty() {
            return Err(CliError::Usage("alpha list is empty".into()));
        }
        if quantities.is_empty() {
            return Err(CliError::Usage("quantity list is empty".into()));
        }
        let mut orders = orders;
        orders.sort();
        orders.dedup();
        Ok(SweepSpec {
            orders,
            alphas,
            quantities,
            method,
        })
    }

    pub fn orders_from_u32(raw: &[u32]) -> Result<Vec<Order>, CliError> {
        raw.iter()
            .map(|&p| Order::new(p).map_err(|e| CliError::Usage(e.to_string())))
            .collect()
    }
}

/// Largest accepted |α|: beyond this every statistic is in its trivial
/// asymptotic regime and the truncated spaces stop being representable.
pub const MAX_ALPHA_MOD: f64 = 100.0;

/// Resolve the alpha grid from the two supported encodings; modulus/phase
/// and re/im may not be mixed. Lists combine as a cross product.
pub fn resolve_alphas(
    alpha_mod: Option<&[f64]>,
    alpha_phase: Option<&[f64]>,
    alpha_re: Option<&[f64]>,
    alpha_im: Option<&[f64]>,
    default: &[Complex64],
) -> Result<Vec<Complex64>, CliError> {
    let polar = alpha_mod.is_some() || alpha_phase.is_some();
    let cartesian = alpha_re.is_some() || alpha_im.is_some();
    if polar && cartesian {
        return Err(CliError::Usage(
            "give either --alpha-mod/--alpha-phase or --alpha-re/--alpha-im, not both".into(),
        ));
    }
    if polar {
        let mods =
            alpha_mod.ok_or_else(|| CliError::Usage("--alpha-phase without --alpha-mod".into()))?;
        let phases = alpha_phase.unwrap_or(&[0.0]);
        let mut out = Vec::new();
        for &m in mods {
            if m < 0.0 {
                return Err(CliError::Usage("--alpha-mod must be nonnegative".into()));
            }
            for &ph in phases {
                out.push(Complex64::from_polar(m, ph));
            }
        }
        return check_alphas(out);
    }
    if cartesian {
        let res = alpha_re.unwrap_or(&[0.0]);
        let ims = alpha_im.unwrap_or(&[0.0]);
        let mut out = Vec::new();
        for &re in res {
            for &im in ims {
                out.push(Complex64::new(re, im));
            }
        }
        return check_alphas(out);
    }
    Ok(default.to_vec())
}

fn check_alphas(alphas: Vec<Complex64>) -> Result<Vec<Complex64>, CliError> {
    for a in &alphas {
        if !a.re.is_finite() || !a.im.is_finite() {
            return Err(CliError::Usage(format!("alpha {a} is not finite")));
        }
        if a.norm() > MAX_ALPHA_MOD {
            return Err(CliError::Usage(format!(
                "|alpha| = {:.3e} exceeds the supported maximum {MAX_ALPHA_MOD}",
                a.norm()
            )));
        }
    }
    Ok(alphas)
}

// ---------------------------------------------------------------------
// configuration
// ---------------------------------------------------------------------

/// Optional key=value config: `tolerance` (emission tail threshold) and
/// `truncation` (Fock-space dimension override). CLI flags win.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct Config {
    pub tolerance: Option<f64>,
    pub truncation: Option<usize>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Config, CliError> {
        let mut cfg = Config::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::Usage(format!(
                    "config line {}: expected key=value, got '{line}'",
                    lineno + 1
                )));
            };
            let (key, value) = (key.trim(), value.trim());
            match key {
                "tolerance" => {
                    cfg.tolerance =
                        Some(value.parse().map_err(|_| {
                            CliError::Usage(format!("config: bad tolerance '{value}'"))
                        })?)
                }
                "truncation" => {
                    cfg.truncation = Some(value.parse().map_err(|_| {
                        CliError::Usage(format!("config: bad truncation '{value}'"))
                    })?)
                }
                other => return Err(CliError::Usage(format!("config: unknown key '{other}'"))),
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Config, CliError> {
        Self::parse(&fs::read_to_string(path)?)
    }

    /// Explicit flag path, else the `PARABOSE_CONFIG` environment variable,
    /// else empty.
    pub fn resolve(flag: Option<&Path>) -> Result<Config, CliError> {
        if let Some(p) = flag {
            return Self::load(p);
        }
        if let Ok(p) = std::env::var("PARABOSE_CONFIG") {
            if !p.is_empty() {
                return Self::load(Path::new(&p));
            }
        }
        Ok(Config::default())
    }
}

/// Effective run settings after merging config and flags.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Settings {
    /// Probability-mass tail left unemitted by `distribution`.
    pub tolerance: f64,
    /// Fock-space dimension override for direct-sum/oracle evaluation.
    pub truncation: Option<usize>,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            tolerance: 1e-10,
            truncation: None,
        }
    }
}

impl Settings {
    /// Flags win over config, config wins over defaults.
    pub fn merge(
        config: Config,
        tolerance: Option<f64>,
        truncation: Option<usize>,
    ) -> Result<Settings, CliError> {
        let base = Settings::default();
        let merged = Settings {
            tolerance: tolerance.or(config.tolerance).unwrap_or(base.tolerance),
            truncation: truncation.or(config.truncation),
        };
        if !merged.tolerance.is_finite() || merged.tolerance <= 0.0 || merged.tolerance > 0.5 {
            return Err(CliError::Usage(format!(
                "tolerance {} outside (0, 0.5]",
                merged.tolerance
            )));
        }
        if let Some(n) = merged.truncation {
            if !(2..=1_000_000).contains(&n) {
                return Err(CliError::Usage(format!(
                    "truncation {n} outside 2..=1000000"
                )));
            }
        }
        Ok(merged)
    }
}

// ---------------------------------------------------------------------
// output plumbing
// ---------------------------------------------------------------------

/// 17 significant digits: round-trip exact for f64.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_atomically(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    let mut f = fs::File::create(path)?;
    f.write_all(bytes)?;
    Ok(())
}

/// Machine-readable record of how a data file was produced; kept next to
/// the data so the data file itself stays byte-stable.
#[derive(Serialize)]
struct Sidecar<'a> {
    command: &'a str,
    version: &'a str,
    orders: Vec<u32>,
    alphas: Vec<[f64; 2]>,
    method: String,
    settings: Settings,
}

fn write_sidecar(
    out: &Path,
    command: &str,
    spec: &SweepSpec,
    settings: &Settings,
) -> Result<(), CliError> {
    let sidecar = Sidecar {
        command,
        version: env!("CARGO_PKG_VERSION"),
        orders: spec.orders.iter().map(|o| o.get()).collect(),
        alphas: spec.alphas.iter().map(|a| [a.re, a.im]).collect(),
        method: spec.method.label(),
        settings: *settings,
    };
    let mut name = out.as_os_str().to_owned();
    name.push(".meta.json");
    let body = serde_json::to_vec_pretty(&sidecar).expect("sidecar serialization");
    write_atomically(&PathBuf::from(name), &body)
}

// ---------------------------------------------------------------------
// distribution command
// ---------------------------------------------------------------------

fn probability_by_method(
    order: Order,
    alpha: Complex64,
    n: usize,
    method: Method,
    oracle_cache: &mut Option<Vec<Complex64>>,
    truncation: Option<usize>,
) -> Result<f64, CliError> {
    let ctx = || format!("(p={}, alpha={}, n={n})", order.get(), alpha);
    match method {
        Method::Analytic => state::occupation_probability(order, alpha, n).map_err(numeric(ctx())),
        Method::DirectSum => Ok(state::fock_amplitude(order, alpha, n)
            .map_err(numeric(ctx()))?
            .norm_sqr()),
        Method::Oracle => {
            if oracle_cache.is_none() {
                check_oracle_dim(order, alpha, truncation)?;
                let dim = truncation.unwrap_or_else(|| state::truncation_dim(order, alpha));
                let ops = oracle::build_operators(order, dim);
                *oracle_cache = Some(oracle::displace_vacuum(&ops, alpha).map_err(numeric(ctx()))?);
            }
            Ok(oracle_cache
                .as_ref()
                .unwrap()
                .get(n)
                .map_or(0.0, |c| c.norm_sqr()))
        }
        Method::Asymptotic => Err(CliError::Usage(
            "the occupation distribution has no asymptotic method".into(),
        )),
    }
}

/// Write the occupation distribution CSV: `p,re_alpha,im_alpha,n,P_n,method`,
/// rows sorted by (p, n), emitted until the cumulative analytic mass
/// reaches 1 - tolerance.
pub fn cmd_distribution(spec: &SweepSpec, settings: &Settings, out: &Path) -> Result<(), CliError> {
    if !spec.quantities.contains(&Quantity::Pn) {
        return Err(CliError::Usage(
            "distribution requires the pn quantity".into(),
        ));
    }
    let methods: Vec<Method> = match spec.method {
        MethodChoice::Single(Method::Asymptotic) => {
            return Err(CliError::Usage(
                "the occupation distribution has no asymptotic method".into(),
            ))
        }
        MethodChoice::Single(m) => vec![m],
        MethodChoice::All => vec![Method::Analytic, Method::DirectSum, Method::Oracle],
    };
    let mut body = String::from("p,re_alpha,im_alpha,n,P_n,method\n");
    for &order in &spec.orders {
        for &alpha in &spec.alphas {
            let cap = settings
                .truncation
                .unwrap_or_else(|| state::truncation_dim(order, alpha));
            let mut caches: Vec<Option<Vec<Complex64>>> = methods.iter().map(|_| None).collect();
            let mut cumulative = 0.0;
            for n in 0..cap {
                let reference = state::occupation_probability(order, alpha, n).map_err(numeric(
                    format!("(p={}, alpha={alpha}, n={n})", order.get()),
                ))?;
                for (mi, &m) in methods.iter().enumerate() {
                    let value = probability_by_method(
                        order,
                        alpha,
                        n,
                        m,
                        &mut caches[mi],
                        settings.truncation,
                    )?;
                    body.push_str(&format!(
                        "{},{},{},{},{},{}\n",
                        order.get(),
                        fmt_f64(alpha.re),
                        fmt_f64(alpha.im),
                        n,
                        fmt_f64(value),
                        m.name()
                    ));
                }
                cumulative += reference;
                if cumulative >= 1.0 - settings.tolerance {
                    break;
                }
            }
        }
    }
    write_atomically(out, body.as_bytes())?;
    write_sidecar(out, "distribution", spec, settings)
}

// ---------------------------------------------------------------------
// moments command
// ---------------------------------------------------------------------

/// One sweep point of the moments file.
#[derive(Serialize, Deserialize, Debug)]
pub struct MomentEntry {
    pub p: u32,
    pub re_alpha: f64,
    pub im_alpha: f64,
    pub reports: ReportSet,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_discrepancy: Option<f64>,
}

/// The per-method reports present at one sweep point.
#[derive(Serialize, Deserialize, Debug, Default)]
pub struct ReportSet {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub analytic: Option<MomentReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub asymptotic: Option<MomentReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub direct_sum: Option<MomentReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<MomentReport>,
}

impl ReportSet {
    fn insert(&mut self, report: MomentReport) {
        match report.method {
            Method::Analytic => self.analytic = Some(report),
            Method::Asymptotic => self.asymptotic = Some(report),
            Method::DirectSum => self.direct_sum = Some(report),
            Method::Oracle => self.oracle = Some(report),
        }
    }
}

/// Compute the entries of the moments file (also used by the tests).
pub fn moment_entries(spec: &SweepSpec, settings: &Settings) -> Result<Vec<MomentEntry>, CliError> {
    let mut entries = Vec::new();
    for &order in &spec.orders {
        for &alpha in &spec.alphas {
            let ctx = format!("(p={}, alpha={alpha})", order.get());
            let methods: &[Method] = match spec.method {
                MethodChoice::Single(ref m) => std::slice::from_ref(m),
                MethodChoice::All => &[Method::Analytic, Method::DirectSum, Method::Oracle],
            };
            let mut set = ReportSet::default();
            let mut reports = Vec::new();
            for &m in methods {
                if m == Method::Oracle {
                    check_oracle_dim(order, alpha, settings.truncation)?;
                }
                let r =
                    moments::moment_report_with_truncation(order, alpha, m, settings.truncation)
                        .map_err(numeric(ctx.clone()))?;
                reports.push(r);
                set.insert(r);
            }
            let max_discrepancy = if reports.len() > 1 {
                let mut worst = 0.0f64;
                for i in 0..reports.len() {
                    for j in i + 1..reports.len() {
                        worst = worst.max(reports[i].max_discrepancy(&reports[j]));
                    }
                }
                Some(worst)
            } else {
                None
            };
            entries.push(MomentEntry {
                p: order.get(),
                re_alpha: alpha.re,
                im_alpha: alpha.im,
                reports: set,
                max_discrepancy,
            });
        }
    }
    Ok(entries)
}

/// Write the JSON array of moment reports keyed by (p, α, method).
pub fn cmd_moments(spec: &SweepSpec, settings: &Settings, out: &Path) -> Result<(), CliError> {
    let entries = moment_entries(spec, settings)?;
    let body = serde_json::to_vec_pretty(&entries).expect("moment serialization");
    write_atomically(out, &body)?;
    write_sidecar(out, "moments", spec, settings)
}

// ---------------------------------------------------------------------
// uncertainty command
// ---------------------------------------------------------------------

/// Write the uncertainty CSV: `p,re_alpha,im_alpha,product,bound,margin`.
///
/// The analytic method uses the dedicated closed forms (defined on the
/// vacuum too); any other single method draws both columns from that
/// method's moment report.
pub fn cmd_uncertainty(spec: &SweepSpec, settings: &Settings, out: &Path) -> Result<(), CliError> {
    let method = match spec.method {
        MethodChoice::Single(m) => m,
        MethodChoice::All => {
            return Err(CliError::Usage(
                "uncertainty emits one product/bound pair per point; pick a single method".into(),
            ))
        }
    };
    let mut body = String::from("p,re_alpha,im_alpha,product,bound,margin\n");
    for &order in &spec.orders {
        for &alpha in &spec.alphas {
            let ctx = format!("(p={}, alpha={alpha})", order.get());
            let (product, bound) = if method == Method::Analytic {
                (
                    moments::uncertainty_product(order, alpha).map_err(numeric(ctx.clone()))?,
                    moments::robertson_bound(order, alpha).map_err(numeric(ctx))?,
                )
            } else {
                if method == Method::Oracle {
                    check_oracle_dim(order, alpha, settings.truncation)?;
                }
                let r = moments::moment_report_with_truncation(
                    order,
                    alpha,
                    method,
                    settings.truncation,
                )
                .map_err(numeric(ctx))?;
                (r.uncertainty_product, r.robertson_bound)
            };
            body.push_str(&format!(
                "{},{},{},{},{},{}\n",
                order.get(),
                fmt_f64(alpha.re),
                fmt_f64(alpha.im),
                fmt_f64(product),
                fmt_f64(bound),
                fmt_f64(product - bound)
            ));
        }
    }
    write_atomically(out, body.as_bytes())?;
    write_sidecar(out, "uncertainty", spec, settings)
}

// ---------------------------------------------------------------------
// critical-alpha command
// ---------------------------------------------------------------------

/// Write the Poissonian-crossing modulus per order: `p,critical_alpha`.
pub fn cmd_critical_alpha(orders: &[Order], out: &Path) -> Result<(), CliError> {
    let mut sorted = orders.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut body = String::from("p,critical_alpha\n");
    for order in sorted {
        let r = moments::critical_alpha(order).map_err(numeric(format!("(p={})", order.get())))?;
        body.push_str(&format!("{},{}\n", order.get(), fmt_f64(r)));
    }
    write_atomically(out, body.as_bytes())
}

/// Default grids reproducing the published figures.
pub mod defaults {
    use num_complex::Complex64;

    /// Occupation-distribution orders.
    pub const DISTRIBUTION_ORDERS: [u32; 4] = [1, 2, 5, 6];
    /// Moment/uncertainty sweeps cover orders 1..=10.
    pub fn moment_orders() -> Vec<u32> {
        (1..=10).collect()
    }
    /// Distribution parameter α = √10.
    pub fn distribution_alphas() -> Vec<Complex64> {
        vec![Complex64::new(10f64.sqrt(), 0.0)]
    }
    /// Moment sweeps use α ∈ {√(1/2), 1, √10, √15}.
    pub fn moment_alphas() -> Vec<Complex64> {
        [0.5f64, 1.0, 10.0, 15.0]
            .iter()
            .map(|&r2| Complex64::new(r2.sqrt(), 0.0))
            .collect()
    }
}
