//! `kochwave` — command-line frontend for the charted-calculus library.
//!
//! Four subcommands cover the library surface:
//!
//! * `geometry` exports the embedded curve of one unit cell as a polyline
//!   (CSV, JSON, or SVG at 1000 SVG units per chart unit).
//! * `calc deriv` / `calc integ` evaluate chart-induced derivatives and
//!   integrals of an expression and print one JSON record per request.
//! * `wave` samples a travelling field along the curve, writing one
//!   snapshot file per requested time plus an energy trace.
//! * `lorentz` boosts spacetime points, either a single `--x0/--y` pair or
//!   a whole `x0,y` CSV file.
//!
//! Every flag can instead be supplied through `--config <path>`, a JSON
//! file whose sections mirror the subcommands and whose keys mirror the
//! long flag names; explicit flags win over the file, and defaults are
//! applied only after the merge.  The `KOCHWAVE_OUT_DIR` environment
//! variable redirects relative output paths into a chosen directory.
//!
//! Exit codes: 0 success, 1 validation or parse failure, 2 I/O failure,
//! 3 truncated energy support under `--strict`.

mod commands;
mod config;

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands::{CalcMode, CalcRun, GeometryRun, LorentzMode, LorentzRun, WaveRun};
use crate::config::FileConfig;

/// Failure classes, each mapped to a distinct process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad flag values, unparsable expressions, domain violations: exit 1.
    Validation(String),
    /// Filesystem failures while reading inputs or writing outputs: exit 2.
    Io(String),
    /// Energy support truncated by the window under `--strict`: exit 3.
    Truncated(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Io(_) => 2,
            CliError::Truncated(_) => 3,
        }
    }

    /// Wraps an I/O error with the path it occurred on.
    pub fn io(path: &Path, err: std::io::Error) -> Self {
        CliError::Io(format!("{}: {err}", path.display()))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(msg) | CliError::Io(msg) | CliError::Truncated(msg) => {
                f.write_str(msg)
            }
        }
    }
}

impl From<kochwave::Error> for CliError {
    fn from(err: kochwave::Error) -> Self {
        // Library errors (including parse errors, which carry their byte
        // offset in the message) are all user-input problems here.
        CliError::Validation(err.to_string())
    }
}

/// Output format shared by the exporting subcommands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Svg,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
            Format::Svg => "svg",
        }
    }
}

#[derive(Parser)]
#[command(
    name = "kochwave",
    version,
    about = "Charted calculus, Koch-curve geometry, wave snapshots, and boosts"
)]
struct Cli {
    /// JSON file mirroring the flags (sections `geometry`, `calc`, `wave`,
    /// `lorentz`); explicit flags take precedence.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Export the embedded curve of one unit cell as a polyline.
    Geometry(GeometryArgs),
    /// Evaluate chart-induced derivatives and integrals of an expression.
    #[command(subcommand)]
    Calc(CalcCommand),
    /// Sample a travelling wave field along the curve and trace its energy.
    Wave(WaveArgs),
    /// Boost spacetime points through hyperbolic rotations.
    Lorentz(LorentzArgs),
}

#[derive(Args)]
struct GeometryArgs {
    /// Bending angle in radians: a decimal, `pi`, or `pi/N`.  Repeatable;
    /// each angle produces its own output.
    #[arg(long)]
    alpha: Vec<String>,
    /// Recursion depth of the exported polyline (4^depth + 1 vertices).
    #[arg(long)]
    depth: Option<usize>,
    /// Integer cell whose unit of the curve is exported.
    #[arg(long)]
    cell: Option<i64>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Output path; stdout when omitted.  With several angles the files
    /// are suffixed `-0`, `-1`, … before the extension.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CalcCommand {
    /// Derivative of the expression at the requested points.
    Deriv(DerivArgs),
    /// Integral of the expression over the requested interval.
    Integ(IntegArgs),
}

#[derive(Args)]
struct DerivArgs {
    /// Domain chart: identity | cubic | log | koch | expr:<fwd>;<inv>.
    #[arg(long)]
    fx: Option<String>,
    /// Codomain chart, same selectors as --fx.
    #[arg(long)]
    fy: Option<String>,
    /// The function, written in x.
    #[arg(long)]
    expr: Option<String>,
    /// Evaluation point; repeatable, one JSON record per point.
    #[arg(long, allow_negative_numbers = true)]
    at: Vec<f64>,
    /// Chart-coordinate step; a scaled default when omitted.
    #[arg(long)]
    step: Option<f64>,
}

#[derive(Args)]
struct IntegArgs {
    /// Domain chart: identity | cubic | log | koch | expr:<fwd>;<inv>.
    #[arg(long)]
    fx: Option<String>,
    /// Codomain chart, same selectors as --fx.
    #[arg(long)]
    fy: Option<String>,
    /// The function, written in x.
    #[arg(long)]
    expr: Option<String>,
    /// Lower integration limit.
    #[arg(long, allow_negative_numbers = true)]
    from: Option<f64>,
    /// Upper integration limit.
    #[arg(long, allow_negative_numbers = true)]
    to: Option<f64>,
    /// Composite-quadrature panel count.
    #[arg(long)]
    panels: Option<usize>,
}

#[derive(Args)]
struct WaveArgs {
    /// Left-moving profile a(y + ct): zero | gaussian:<sigma>[@<center>] |
    /// sinepacket:<freq>,<sigma>[@<center>] | chirp:<sigma>[@<center>] |
    /// an expression in x.
    #[arg(long = "profile-a")]
    profile_a: Option<String>,
    /// Right-moving profile b(y - ct), same selectors as --profile-a.
    #[arg(long = "profile-b")]
    profile_b: Option<String>,
    /// Propagation speed.
    #[arg(long)]
    c: Option<f64>,
    /// Bending angle of the carrying curve: a decimal, `pi`, or `pi/N`.
    #[arg(long)]
    alpha: Option<String>,
    /// Embedding depth used for snapshot points.
    #[arg(long)]
    depth: Option<usize>,
    /// Snapshot time; repeatable, one snapshot file per time.
    #[arg(long = "time", allow_negative_numbers = true)]
    times: Vec<f64>,
    /// Lower edge of the sampled address window.
    #[arg(long = "y-from", allow_negative_numbers = true)]
    y_from: Option<f64>,
    /// Upper edge of the sampled address window.
    #[arg(long = "y-to", allow_negative_numbers = true)]
    y_to: Option<f64>,
    /// Sample count per snapshot.
    #[arg(long)]
    samples: Option<usize>,
    /// Quadrature panels for the energy trace.
    #[arg(long)]
    panels: Option<usize>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Directory receiving snapshot-<i>.<ext> and energy.csv.
    #[arg(long = "out-dir")]
    out_dir: Option<PathBuf>,
    /// Escalate the truncated-energy-support warning to exit code 3.
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct LorentzArgs {
    /// Rapidity of the boost.
    #[arg(long, allow_negative_numbers = true)]
    chi: Option<f64>,
    /// Time coordinate of a single point to boost (with --y).
    #[arg(long, allow_negative_numbers = true)]
    x0: Option<f64>,
    /// Space coordinate of a single point to boost (with --x0).
    #[arg(long, allow_negative_numbers = true)]
    y: Option<f64>,
    /// CSV file of `x0,y` rows to boost (alternative to --x0/--y).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Output path for file mode; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Chart carrying the time coordinate.
    #[arg(long)]
    chart0: Option<String>,
    /// Chart carrying the space coordinate.
    #[arg(long)]
    chart1: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let file = match &cli.config {
        Some(path) => config::load(path)?,
        None => FileConfig::default(),
    };
    match cli.command {
        Command::Geometry(args) => commands::geometry(&resolve_geometry(args, &file)?),
        Command::Calc(CalcCommand::Deriv(args)) => {
            commands::calc(&resolve_deriv(args, &file)?)
        }
        Command::Calc(CalcCommand::Integ(args)) => {
            commands::calc(&resolve_integ(args, &file)?)
        }
        Command::Wave(args) => commands::wave(&resolve_wave(args, &file)?),
        Command::Lorentz(args) => commands::lorentz(&resolve_lorentz(args, &file)?),
    }
}

/// Parses an angle literal: a decimal, `pi`, or `pi/N`.
fn parse_angle(text: &str) -> Result<f64, CliError> {
    let trimmed = text.trim();
    if let Some(rest) = trimmed.strip_prefix("pi") {
        if rest.is_empty() {
            return Ok(std::f64::consts::PI);
        }
        if let Some(denominator) = rest.strip_prefix('/') {
            let d: f64 = denominator.parse().map_err(|_| {
                CliError::Validation(format!("bad angle '{trimmed}': '{denominator}' is not a number"))
            })?;
            if d == 0.0 || !d.is_finite() {
                return Err(CliError::Validation(format!(
                    "bad angle '{trimmed}': zero or non-finite denominator"
                )));
            }
            return Ok(std::f64::consts::PI / d);
        }
        return Err(CliError::Validation(format!(
            "bad angle '{trimmed}': expected a decimal, 'pi', or 'pi/N'"
        )));
    }
    trimmed.parse().map_err(|_| {
        CliError::Validation(format!(
            "bad angle '{trimmed}': expected a decimal, 'pi', or 'pi/N'"
        ))
    })
}

/// Redirects a relative path into `KOCHWAVE_OUT_DIR` when the variable is
/// set; absolute paths are left alone.
fn resolve_out_path(path: PathBuf) -> PathBuf {
    if path.is_absolute() {
        return path;
    }
    match std::env::var_os("KOCHWAVE_OUT_DIR") {
        Some(dir) => PathBuf::from(dir).join(path),
        None => path,
    }
}

fn require<T>(value: Option<T>, flag: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Validation(format!("missing required value: {flag}")))
}

fn resolve_geometry(args: GeometryArgs, file: &FileConfig) -> Result<GeometryRun, CliError> {
    let section = file.geometry.clone().unwrap_or_default();
    let labels = if !args.alpha.is_empty() {
        args.alpha
    } else {
        section.alpha.unwrap_or_else(|| vec!["pi/3".to_string()])
    };
    let alphas = labels
        .iter()
        .map(|text| parse_angle(text))
        .collect::<Result<Vec<f64>, CliError>>()?;
    Ok(GeometryRun {
        alphas,
        depth: args.depth.or(section.depth).unwrap_or(8),
        cell: args.cell.or(section.cell).unwrap_or(0),
        format: args.format.or(section.format).unwrap_or(Format::Csv),
        out: args
            .out
            .or(section.out.map(PathBuf::from))
            .map(resolve_out_path),
    })
}

fn resolve_deriv(args: DerivArgs, file: &FileConfig) -> Result<CalcRun, CliError> {
    let section = file.calc.clone().unwrap_or_default();
    let at = if !args.at.is_empty() {
        args.at
    } else {
        require(section.at, "--at")?
    };
    Ok(CalcRun {
        fx: args.fx.or(section.fx).unwrap_or_else(|| "identity".into()),
        fy: args.fy.or(section.fy).unwrap_or_else(|| "identity".into()),
        expr: require(args.expr.or(section.expr), "--expr")?,
        mode: CalcMode::Deriv {
            at,
            step: args.step.or(section.step),
        },
    })
}

fn resolve_integ(args: IntegArgs, file: &FileConfig) -> Result<CalcRun, CliError> {
    let section = file.calc.clone().unwrap_or_default();
    Ok(CalcRun {
        fx: args.fx.or(section.fx).unwrap_or_else(|| "identity".into()),
        fy: args.fy.or(section.fy).unwrap_or_else(|| "identity".into()),
        expr: require(args.expr.or(section.expr), "--expr")?,
        mode: CalcMode::Integ {
            from: require(args.from.or(section.from), "--from")?,
            to: require(args.to.or(section.to), "--to")?,
            panels: args
                .panels
                .or(section.panels)
                .unwrap_or(kochwave::quad::DEFAULT_PANELS),
        },
    })
}

fn resolve_wave(args: WaveArgs, file: &FileConfig) -> Result<WaveRun, CliError> {
    let section = file.wave.clone().unwrap_or_default();
    let alpha_label = args
        .alpha
        .or(section.alpha)
        .unwrap_or_else(|| "pi/3".to_string());
    let times = if !args.times.is_empty() {
        args.times
    } else {
        section.time.unwrap_or_else(|| vec![0.0])
    };
    Ok(WaveRun {
        profile_a: args
            .profile_a
            .or(section.profile_a)
            .unwrap_or_else(|| "zero".into()),
        profile_b: args
            .profile_b
            .or(section.profile_b)
            .unwrap_or_else(|| "zero".into()),
        c: args.c.or(section.c).unwrap_or(1.0),
        alpha: parse_angle(&alpha_label)?,
        depth: args.depth.or(section.depth).unwrap_or(8),
        times,
        y_from: args.y_from.or(section.y_from).unwrap_or(-5.0),
        y_to: args.y_to.or(section.y_to).unwrap_or(5.0),
        samples: args.samples.or(section.samples).unwrap_or(601),
        panels: args
            .panels
            .or(section.panels)
            .unwrap_or(kochwave::quad::DEFAULT_PANELS),
        format: args.format.or(section.format).unwrap_or(Format::Csv),
        out_dir: resolve_out_path(
            args.out_dir
                .or(section.out_dir.map(PathBuf::from))
                .unwrap_or_else(|| PathBuf::from(".")),
        ),
        strict: args.strict || section.strict.unwrap_or(false),
    })
}

fn resolve_lorentz(args: LorentzArgs, file: &FileConfig) -> Result<LorentzRun, CliError> {
    let section = file.lorentz.clone().unwrap_or_default();
    let chi = require(args.chi.or(section.chi), "--chi")?;
    let x0 = args.x0.or(section.x0);
    let y = args.y.or(section.y);
    let input = args.input.or(section.input.map(PathBuf::from));
    let mode = match (x0, y, input) {
        (Some(x0), Some(y), None) => LorentzMode::Point { x0, y },
        (None, None, Some(input)) => LorentzMode::File {
            input,
            output: args
                .output
                .or(section.output.map(PathBuf::from))
                .map(resolve_out_path),
        },
        (None, None, None) => {
            return Err(CliError::Validation(
                "nothing to boost: give --x0 and --y, or --input".into(),
            ))
        }
        _ => {
            return Err(CliError::Validation(
                "give either --x0 with --y, or --input, not a mixture".into(),
            ))
        }
    };
    Ok(LorentzRun {
        chi,
        chart0: args
            .chart0
            .or(section.chart0)
            .unwrap_or_else(|| "identity".into()),
        chart1: args
            .chart1
            .or(section.chart1)
            .unwrap_or_else(|| "identity".into()),
        mode,
    })
}
