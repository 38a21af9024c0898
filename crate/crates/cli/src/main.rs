//! `dimer`: correlations of a thermal dipolar spin-1/2 dimer.
//!
//! Subcommands: `point` (all measures at one thermal point), `scan`
//! (temperature/field grids as CSV or JSON), `solve-max` (discord maximum
//! over temperature), `material` (SI-unit predictions), `verify`
//! (closed forms against the brute-force measurement optimization).
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 verification failure,
//! 3 numerical-domain error.

mod output;
mod scan;
mod verify;

use clap::{Args, Parser, Subcommand};
use dimer::materials::{self, MaterialSpec};
use dimer::{DimerError, DimerParams, ThermalPoint};
use output::{format_sig, write_atomic, PointReport};
use scan::{Axis, Quantity, ScanConfig};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "dimer", version, about = "Thermal correlations of a dipolar spin-1/2 dimer")]
struct Cli {
    /// Number of worker threads for scans and verification (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every correlation measure at one thermal point.
    Point(PointArgs),
    /// Evaluate correlation measures over a (t, eta) grid.
    Scan(ScanArgs),
    /// Locate the discord maximum over temperature.
    SolveMax(SolveMaxArgs),
    /// Predict the discord scales of a real material.
    Material(MaterialArgs),
    /// Compare the closed forms against the measurement-optimization oracle.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct PointArgs {
    /// Anisotropy (delta = -2 for the dipolar dimer).
    #[arg(long, default_value_t = -2.0, allow_negative_numbers = true)]
    delta: f64,
    /// Reduced temperature k_B T / D; 0 selects the analytic T = 0 branch.
    #[arg(long, allow_negative_numbers = true)]
    t: f64,
    /// Reduced longitudinal field eta = h/D.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    eta: f64,
    /// Output format.
    #[arg(long, value_parser = ["json", "csv"], default_value = "json")]
    format: String,
    /// Significant digits for CSV output.
    #[arg(long, default_value_t = 12)]
    precision: usize,
    /// Output file (stdout when absent); written atomically.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long, default_value_t = -2.0, allow_negative_numbers = true)]
    delta: f64,
    /// Fixed reduced temperature k_B T / D.
    #[arg(long, conflicts_with_all = ["t_range", "x_range"], allow_negative_numbers = true)]
    t: Option<f64>,
    /// Reduced-temperature range MIN:MAX.
    #[arg(long, value_parser = parse_range, conflicts_with = "x_range", allow_hyphen_values = true)]
    t_range: Option<(f64, f64)>,
    /// Inverse-temperature range MIN:MAX in x = D/(k_B T).
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    x_range: Option<(f64, f64)>,
    /// Number of points on the temperature axis (default 101 for a range).
    #[arg(long, conflicts_with = "t_step")]
    t_points: Option<usize>,
    /// Step on the temperature axis.
    #[arg(long, allow_negative_numbers = true)]
    t_step: Option<f64>,
    /// Fixed reduced field.
    #[arg(long, conflicts_with = "eta_range", allow_negative_numbers = true)]
    eta: Option<f64>,
    /// Field range MIN:MAX.
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    eta_range: Option<(f64, f64)>,
    /// Number of points on the field axis (default 41 for a range).
    #[arg(long, conflicts_with = "eta_step")]
    eta_points: Option<usize>,
    /// Step on the field axis.
    #[arg(long, allow_negative_numbers = true)]
    eta_step: Option<f64>,
    /// Comma-separated subset of m,g_par,g_perp,I,C,Q,Q1,Q2,E,Qg (default all).
    #[arg(long, value_delimiter = ',')]
    quantities: Option<Vec<String>>,
    #[arg(long, value_parser = ["csv", "json"], default_value = "csv")]
    format: String,
    #[arg(long, default_value_t = 12)]
    precision: usize,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct SolveMaxArgs {
    #[arg(long, default_value_t = -2.0, allow_negative_numbers = true)]
    delta: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    eta: f64,
}

#[derive(Args)]
struct MaterialArgs {
    /// Material name from the preset or config table.
    #[arg(long)]
    name: Option<String>,
    /// Gyromagnetic ratio (rad s^-1 T^-1) for a custom material.
    #[arg(long, requires = "r", conflicts_with = "name")]
    gamma: Option<f64>,
    /// Inter-spin distance (m) for a custom material.
    #[arg(long, requires = "gamma")]
    r: Option<f64>,
    /// Evaluate the discord at this temperature (K).
    #[arg(long, allow_negative_numbers = true)]
    at: Option<f64>,
    /// Plain-text material table (one `name gamma r` record per line);
    /// entries override presets of the same name.
    #[arg(long)]
    config: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = -2.0, allow_negative_numbers = true)]
    delta: f64,
    /// Comparison tolerance.
    #[arg(long, default_value_t = 1e-6, allow_negative_numbers = true)]
    tolerance: f64,
    /// Reduced temperatures of the grid.
    #[arg(long, value_delimiter = ',', default_values_t = [0.3, 0.5, 1.0, 2.0, 5.0])]
    t_list: Vec<f64>,
    /// Reduced fields of the grid.
    #[arg(long, value_delimiter = ',', default_values_t = [0.0, 0.2, 1.0, 3.0], allow_negative_numbers = true)]
    eta_list: Vec<f64>,
    /// Measurement-direction grid resolution.
    #[arg(long, default_value_t = dimer::oracle::DEFAULT_GRID_N)]
    grid_n: usize,
    /// Shrinking-grid refinement iterations.
    #[arg(long, default_value_t = dimer::oracle::DEFAULT_REFINE_ITERS)]
    refine_iters: usize,
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| format!("expected MIN:MAX, got `{s}`"))?;
    let lo: f64 = lo.trim().parse().map_err(|_| format!("bad number `{lo}`"))?;
    let hi: f64 = hi.trim().parse().map_err(|_| format!("bad number `{hi}`"))?;
    if !lo.is_finite() || !hi.is_finite() || lo > hi {
        return Err(format!("range {lo}:{hi} is not monotone"));
    }
    Ok((lo, hi))
}

enum CliError {
    Usage(String),
    Verification(String),
    Domain(DimerError),
    Io(std::io::Error),
}

impl From<DimerError> for CliError {
    fn from(e: DimerError) -> Self {
        match e {
            DimerError::MaterialTable { .. } => CliError::Usage(e.to_string()),
            other => CliError::Domain(other),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };

    if let Some(jobs) = cli.jobs {
        // Ignore the error when a pool already exists (repeated in-process use).
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }

    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Io(e)) => {
            eprintln!("I/O error: {e}");
            ExitCode::from(1)
        }
        Err(CliError::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Domain(e)) => {
            eprintln!("numerical-domain error: {e}");
            ExitCode::from(3)
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Point(args) => run_point(args),
        Command::Scan(args) => run_scan(args),
        Command::SolveMax(args) => run_solve_max(args),
        Command::Material(args) => run_material(args),
        Command::Verify(args) => verify::run(args),
    }
}

fn run_point(args: PointArgs) -> Result<(), CliError> {
    let params = DimerParams::new(args.delta, args.eta)?;
    let t = ThermalPoint::from_reduced_temperature(args.t)?;
    let report = PointReport::evaluate(&params, t)?;
    let text = match args.format.as_str() {
        "json" => {
            let mut s = serde_json::to_string_pretty(&report).expect("serializable report");
            s.push('\n');
            s
        }
        _ => report.to_csv(args.precision),
    };
    emit(args.out.as_deref(), &text)
}

fn run_scan(args: ScanArgs) -> Result<(), CliError> {
    let t_axis = match (args.t, args.t_range, args.x_range) {
        (Some(t), None, None) => Axis::fixed(t),
        (None, Some((lo, hi)), None) => {
            Axis::range(lo, hi, args.t_points, args.t_step).map_err(CliError::Usage)?
        }
        (None, None, Some((lo, hi))) => Axis::range(lo, hi, args.t_points, args.t_step)
            .map_err(CliError::Usage)?
            .inverted(),
        (None, None, None) => {
            return Err(CliError::Usage(
                "one of --t, --t-range, or --x-range is required".into(),
            ))
        }
        _ => unreachable!("clap conflicts prevent mixed axes"),
    };
    let eta_axis = match (args.eta, args.eta_range) {
        (Some(eta), None) => Axis::fixed(eta),
        (None, Some((lo, hi))) => {
            Axis::range_default_41(lo, hi, args.eta_points, args.eta_step).map_err(CliError::Usage)?
        }
        (None, None) => Axis::fixed(0.0),
        _ => unreachable!(),
    };

    let quantities = match &args.quantities {
        None => Quantity::all(),
        Some(tokens) => {
            let qs = Quantity::parse_list(tokens).map_err(CliError::Usage)?;
            if qs.contains(&Quantity::Qg) && eta_axis.values().iter().any(|&e| e != 0.0) {
                return Err(CliError::Usage(
                    "Qg is defined only at zero field; remove it from --quantities or fix eta = 0"
                        .into(),
                ));
            }
            qs
        }
    };

    let config = ScanConfig {
        delta: args.delta,
        t_axis,
        eta_axis,
        quantities,
        precision: args.precision,
    };
    let text = match args.format.as_str() {
        "json" => scan::run_json(&config)?,
        _ => scan::run_csv(&config)?,
    };
    emit(args.out.as_deref(), &text)
}

fn run_solve_max(args: SolveMaxArgs) -> Result<(), CliError> {
    let result = if args.eta == 0.0 {
        dimer::extremum::solve_zero_field_max(args.delta)?
    } else {
        dimer::extremum::locate_max_in_field(args.delta, args.eta)?
    };
    println!("delta    = {}", format_sig(args.delta, 12));
    println!("eta      = {}", format_sig(args.eta, 12));
    println!("x_max    = {}", format_sig(result.x_max, 12));
    println!("t_max    = {}", format_sig(result.t_max, 12));
    println!("q_max    = {}", format_sig(result.q_max, 12));
    match result.residual {
        Some(r) => println!("residual = {r:.2e}"),
        None => println!("residual = n/a (numerical maximization)"),
    }
    Ok(())
}

fn run_material(args: MaterialArgs) -> Result<(), CliError> {
    let mut table = materials::presets();
    if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path)?;
        for spec in materials::parse_material_table(&text)? {
            table.retain(|m| !m.name().eq_ignore_ascii_case(spec.name()));
            table.push(spec);
        }
    }
    let spec = match (&args.name, args.gamma, args.r) {
        (Some(name), None, None) => table
            .iter()
            .find(|m| m.name().eq_ignore_ascii_case(name))
            .cloned()
            .ok_or_else(|| {
                let known: Vec<&str> = table.iter().map(|m| m.name()).collect();
                CliError::Usage(format!(
                    "unknown material `{name}`; available: {}",
                    known.join(", ")
                ))
            })?,
        (None, Some(gamma), Some(r)) => MaterialSpec::new("custom", gamma, r)?,
        _ => {
            return Err(CliError::Usage(
                "specify --name NAME or both --gamma and --r".into(),
            ))
        }
    };

    let prediction = materials::predict(&spec, args.at)?;
    println!("material = {}", spec.name());
    println!("gamma    = {} rad/(s T)", format_sig(spec.gamma(), 6));
    println!("r        = {} m", format_sig(spec.r(), 6));
    println!("D        = {} J", format_sig(prediction.d_joule, 9));
    println!("D/k_B    = {} K", format_sig(prediction.d_kelvin, 9));
    println!("T_max    = {} K", format_sig(prediction.t_max, 9));
    println!("Q_max    = {}", format_sig(prediction.q_max, 6));
    if let (Some((t, q)), Some(series)) = (prediction.q_at, prediction.q_at_high_t) {
        println!("Q({t} K)  = {}", format_sig(q, 9));
        println!("  high-T estimate = {}", format_sig(series, 9));
    }
    Ok(())
}

fn emit(out: Option<&str>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => write_atomic(path, text).map_err(CliError::Io),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
