use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use parabose_cli::{
    cmd_critical_alpha, cmd_distribution, cmd_moments, cmd_uncertainty, cmd_verify, defaults,
    resolve_alphas, CliError, Config, MethodChoice, Quantity, Settings, SweepSpec, VerifyLevel,
};

/// Closed-form statistics of para-Bose displaced-vacuum states, with a
/// truncated-Fock-space oracle cross-check.
#[derive(Parser)]
#[command(name = "parabose", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Occupation distribution P(n) as CSV.
    Distribution(SweepArgs),
    /// Full moment reports as JSON.
    Moments(SweepArgs),
    /// Quadrature uncertainty product vs the Robertson bound as CSV.
    Uncertainty(SweepArgs),
    /// Modulus where the number statistics turn Poissonian, per order.
    CriticalAlpha {
        /// Comma-separated para-Bose orders (default 2..=10).
        #[arg(long, value_delimiter = ',')]
        orders: Option<Vec<u32>>,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the verification suites.
    Verify {
        #[arg(long, value_enum, default_value = "quick")]
        level: Level,
        /// Also write the report to this path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Level {
    Quick,
    Full,
}

#[derive(Args)]
struct SweepArgs {
    /// Comma-separated para-Bose orders.
    #[arg(long, value_delimiter = ',')]
    orders: Option<Vec<u32>>,
    /// |α| values (combined with every --alpha-phase).
    #[arg(long, value_delimiter = ',')]
    alpha_mod: Option<Vec<f64>>,
    /// Phases of α in radians.
    #[arg(long, value_delimiter = ',')]
    alpha_phase: Option<Vec<f64>>,
    /// Re α values (combined with every --alpha-im).
    #[arg(long, value_delimiter = ',')]
    alpha_re: Option<Vec<f64>>,
    /// Im α values.
    #[arg(long, value_delimiter = ',')]
    alpha_im: Option<Vec<f64>>,
    /// analytic | asymptotic | direct_sum | oracle | all
    #[arg(long)]
    method: Option<String>,
    /// Output file path.
    #[arg(long)]
    out: PathBuf,
    /// Probability-mass tail left unemitted (distribution command).
    #[arg(long)]
    tolerance: Option<f64>,
    /// Fock-space dimension override for direct-sum/oracle methods.
    #[arg(long)]
    truncation: Option<usize>,
    /// key=value config file; flags win over it.
    #[arg(long)]
    config: Option<PathBuf>,
}

struct ResolvedSweep {
    spec: SweepSpec,
    settings: Settings,
    out: PathBuf,
}

fn resolve(
    args: SweepArgs,
    default_orders: Vec<u32>,
    default_alphas: Vec<Complex64>,
    default_method: MethodChoice,
    quantities: Vec<Quantity>,
) -> Result<ResolvedSweep, CliError> {
    let orders = SweepSpec::orders_from_u32(&args.orders.unwrap_or(default_orders))?;
    let alphas = resolve_alphas(
        args.alpha_mod.as_deref(),
        args.alpha_phase.as_deref(),
        args.alpha_re.as_deref(),
        args.alpha_im.as_deref(),
        &default_alphas,
    )?;
    let method = match args.method.as_deref() {
        Some(s) => MethodChoice::parse(s)?,
        None => default_method,
    };
    let spec = SweepSpec::new(orders, alphas, quantities, method)?;
    let config = Config::resolve(args.config.as_deref())?;
    let settings = Settings::merge(config, args.tolerance, args.truncation)?;
    Ok(ResolvedSweep {
        spec,
        settings,
        out: args.out,
    })
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Distribution(args) => {
            let r = resolve(
                args,
                defaults::DISTRIBUTION_ORDERS.to_vec(),
                defaults::distribution_alphas(),
                MethodChoice::Single(parabose::Method::Analytic),
                vec![Quantity::Pn],
            )?;
            cmd_distribution(&r.spec, &r.settings, &r.out)?;
            Ok(true)
        }
        Command::Moments(args) => {
            let r = resolve(
                args,
                defaults::moment_orders(),
                defaults::moment_alphas(),
                MethodChoice::All,
                vec![Quantity::Moments, Quantity::Q, Quantity::Quadratures],
            )?;
            cmd_moments(&r.spec, &r.settings, &r.out)?;
            Ok(true)
        }
        Command::Uncertainty(args) => {
            let r = resolve(
                args,
                defaults::moment_orders(),
                defaults::moment_alphas(),
                MethodChoice::Single(parabose::Method::Analytic),
                vec![Quantity::Uncertainty],
            )?;
            cmd_uncertainty(&r.spec, &r.settings, &r.out)?;
            Ok(true)
        }
        Command::CriticalAlpha { orders, out } => {
            let orders = SweepSpec::orders_from_u32(&orders.unwrap_or_else(|| (2..=10).collect()))?;
            cmd_critical_alpha(&orders, &out)?;
            Ok(true)
        }
        Command::Verify { level, out } => {
            let level = match level {
                Level::Quick => VerifyLevel::Quick,
                Level::Full => VerifyLevel::Full,
            };
            let report = cmd_verify(level, out.as_deref())?;
            print!("{}", report.render());
            Ok(report.passed())
        }
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
