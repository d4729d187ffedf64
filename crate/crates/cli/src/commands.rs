//! Implementations of the four subcommands.
//!
//! Output discipline shared by all of them: floats are printed with the
//! shortest round-trip representation (`{}` / serde_json), iteration is
//! always in input order, and every produced file opens with a header
//! comment echoing the full effective configuration — so repeated runs
//! are byte-identical and each artifact names the run that made it.  JSON
//! outputs carry the same echo as ordinary fields, since JSON has no
//! comment syntax.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use kochwave::calculus::{default_step, ChartedFunction};
use kochwave::koch::{KochParams, PlanePoint};
use kochwave::lorentz::{boost_point_general, Boost};
use kochwave::wave::{Profile, Snapshot, WaveField, WaveProfile};
use kochwave::{Arithmetic, Chart};

use crate::{CliError, Format};

/// SVG units per chart unit.
const SVG_SCALE: f64 = 1000.0;
/// SVG units of normal offset per unit of field value in wave renderings.
const SVG_FIELD_OFFSET: f64 = 200.0;

// ---------------------------------------------------------------------------
// geometry

pub struct GeometryRun {
    pub alphas: Vec<f64>,
    pub depth: usize,
    pub cell: i64,
    pub format: Format,
    pub out: Option<PathBuf>,
}

pub fn geometry(run: &GeometryRun) -> Result<(), CliError> {
    for (index, &alpha) in run.alphas.iter().enumerate() {
        let params = KochParams::new(alpha)?;
        let points = params.polyline(run.depth, run.cell)?;
        let echo = format!(
            "alpha={alpha} depth={} cell={} format={}",
            run.depth,
            run.cell,
            run.format.extension()
        );
        let body = match run.format {
            Format::Csv => geometry_csv(&echo, run, &points),
            Format::Json => geometry_json(alpha, run, &points),
            Format::Svg => {
                let screen: Vec<(f64, f64)> = points.iter().map(to_screen).collect();
                let curve = polyline_element(&screen, "black", 2.0);
                svg_document(&format!("geometry {echo}"), &[curve], &screen)
            }
        };
        match &run.out {
            None => print!("{body}"),
            Some(path) => {
                let target = indexed_path(path, index, run.alphas.len());
                fs::write(&target, body).map_err(|err| CliError::io(&target, err))?;
            }
        }
    }
    Ok(())
}

/// Address coordinate of polyline vertex `k` out of `count` segments.
fn vertex_coordinate(cell: i64, k: usize, count: usize) -> f64 {
    cell as f64 + k as f64 / count as f64
}

fn geometry_csv(echo: &str, run: &GeometryRun, points: &[PlanePoint]) -> String {
    let count = points.len() - 1;
    let mut out = format!("# kochwave geometry {echo}\ny,re,im\n");
    for (k, point) in points.iter().enumerate() {
        let y = vertex_coordinate(run.cell, k, count);
        writeln!(out, "{y},{},{}", point.re, point.im).expect("writing to a string cannot fail");
    }
    out
}

#[derive(Serialize)]
struct GeometryDoc<'a> {
    command: &'a str,
    alpha: f64,
    depth: usize,
    cell: i64,
    format: &'a str,
    points: Vec<GeometryVertex>,
}

#[derive(Serialize)]
struct GeometryVertex {
    y: f64,
    re: f64,
    im: f64,
}

fn geometry_json(alpha: f64, run: &GeometryRun, points: &[PlanePoint]) -> String {
    let count = points.len() - 1;
    let doc = GeometryDoc {
        command: "geometry",
        alpha,
        depth: run.depth,
        cell: run.cell,
        format: "json",
        points: points
            .iter()
            .enumerate()
            .map(|(k, point)| GeometryVertex {
                y: vertex_coordinate(run.cell, k, count),
                re: point.re,
                im: point.im,
            })
            .collect(),
    };
    let mut text = serde_json::to_string(&doc).expect("plain records always serialize");
    text.push('\n');
    text
}

/// `base.ext` stays untouched for a single output and becomes
/// `base-<index>.ext` when a run produces several files.
fn indexed_path(path: &Path, index: usize, total: usize) -> PathBuf {
    if total <= 1 {
        return path.to_path_buf();
    }
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}-{index}.{}", ext.to_string_lossy()),
        None => format!("{stem}-{index}"),
    };
    path.with_file_name(name)
}

// ---------------------------------------------------------------------------
// calc

pub struct CalcRun {
    pub fx: String,
    pub fy: String,
    pub expr: String,
    pub mode: CalcMode,
}

pub enum CalcMode {
    Deriv { at: Vec<f64>, step: Option<f64> },
    Integ { from: f64, to: f64, panels: usize },
}

#[derive(Serialize)]
struct ChartEcho<'a> {
    fx: &'a str,
    fy: &'a str,
}

#[derive(Serialize)]
struct DerivRecord<'a> {
    command: &'a str,
    chart: ChartEcho<'a>,
    expr: &'a str,
    at: f64,
    h: f64,
    value: f64,
}

#[derive(Serialize)]
struct IntegRecord<'a> {
    command: &'a str,
    chart: ChartEcho<'a>,
    expr: &'a str,
    from: f64,
    to: f64,
    panels: usize,
    h: f64,
    value: f64,
}

pub fn calc(run: &CalcRun) -> Result<(), CliError> {
    let dx = Arithmetic::by_name(&run.fx)?;
    let dy = Arithmetic::by_name(&run.fy)?;
    let func = ChartedFunction::from_expr(dx.clone(), dy.clone(), &run.expr)?;
    let chart = ChartEcho {
        fx: dx.chart().name(),
        fy: dy.chart().name(),
    };
    match &run.mode {
        CalcMode::Deriv { at, step } => {
            for &x in at {
                let h = match step {
                    Some(h) => *h,
                    None => default_step(dx.chart().forward(x)?),
                };
                let value = func.derivative_with_step(x, h)?;
                let record = DerivRecord {
                    command: "deriv",
                    chart: ChartEcho { ..chart },
                    expr: &run.expr,
                    at: x,
                    h,
                    value,
                };
                println!(
                    "{}",
                    serde_json::to_string(&record).expect("plain records always serialize")
                );
            }
        }
        CalcMode::Integ { from, to, panels } => {
            let value = func.integral(*from, *to, *panels)?;
            // The quadrature subinterval width, measured in the domain chart.
            let span = (dx.chart().forward(*to)? - dx.chart().forward(*from)?).abs();
            let h = span / (2.0 * *panels as f64);
            let record = IntegRecord {
                command: "integ",
                chart,
                expr: &run.expr,
                from: *from,
                to: *to,
                panels: *panels,
                h,
                value,
            };
            println!(
                "{}",
                serde_json::to_string(&record).expect("plain records always serialize")
            );
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// wave

pub struct WaveRun {
    pub profile_a: String,
    pub profile_b: String,
    pub c: f64,
    pub alpha: f64,
    pub depth: usize,
    pub times: Vec<f64>,
    pub y_from: f64,
    pub y_to: f64,
    pub samples: usize,
    pub panels: usize,
    pub format: Format,
    pub out_dir: PathBuf,
    pub strict: bool,
}

#[derive(Serialize)]
struct WaveDoc<'a> {
    command: &'a str,
    snapshot: usize,
    t: f64,
    #[serde(rename = "profile-a")]
    profile_a: &'a str,
    #[serde(rename = "profile-b")]
    profile_b: &'a str,
    c: f64,
    alpha: f64,
    depth: usize,
    #[serde(rename = "y-from")]
    y_from: f64,
    #[serde(rename = "y-to")]
    y_to: f64,
    samples: usize,
    samples_data: Vec<WaveSampleRecord>,
}

#[derive(Serialize)]
struct WaveSampleRecord {
    t: f64,
    y: f64,
    re: f64,
    im: f64,
    phi: f64,
}

pub fn wave(run: &WaveRun) -> Result<(), CliError> {
    let left = Profile::parse(&run.profile_a)?;
    let right = Profile::parse(&run.profile_b)?;
    let params = KochParams::new(run.alpha)?;
    let field = WaveField::new(WaveProfile::new(left.clone(), right.clone()), run.c, params)?;
    let times_echo = run
        .times
        .iter()
        .map(|t| t.to_string())
        .collect::<Vec<_>>()
        .join(",");
    let echo = format!(
        "profile-a=\"{}\" profile-b=\"{}\" c={} alpha={} depth={} time={times_echo} \
         y-from={} y-to={} samples={} panels={} format={} strict={}",
        left.describe(),
        right.describe(),
        run.c,
        run.alpha,
        run.depth,
        run.y_from,
        run.y_to,
        run.samples,
        run.panels,
        run.format.extension(),
        run.strict
    );
    fs::create_dir_all(&run.out_dir).map_err(|err| CliError::io(&run.out_dir, err))?;

    let mut truncated_at: Vec<f64> = Vec::new();
    let mut energy_rows = String::new();
    for (index, &t) in run.times.iter().enumerate() {
        let snapshot = field.snapshot(t, run.y_from, run.y_to, run.samples, run.depth)?;
        let body = match run.format {
            Format::Csv => snapshot_csv(&echo, index, &snapshot),
            Format::Json => snapshot_json(run, &left, &right, index, &snapshot),
            Format::Svg => snapshot_svg(&echo, index, &snapshot),
        };
        let path = run
            .out_dir
            .join(format!("snapshot-{index}.{}", run.format.extension()));
        fs::write(&path, body).map_err(|err| CliError::io(&path, err))?;

        let estimate = field.energy(t, run.y_from, run.y_to, run.panels)?;
        if estimate.truncated {
            truncated_at.push(t);
        }
        writeln!(energy_rows, "{t},{}", estimate.value).expect("writing to a string cannot fail");
    }
    let energy_path = run.out_dir.join("energy.csv");
    let energy_body = format!("# kochwave wave {echo}\nt,E\n{energy_rows}");
    fs::write(&energy_path, energy_body).map_err(|err| CliError::io(&energy_path, err))?;

    if !truncated_at.is_empty() {
        let times = truncated_at
            .iter()
            .map(|t| t.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        let message = format!(
            "window [{}, {}] truncates the field support at t = {times}",
            run.y_from, run.y_to
        );
        if run.strict {
            // All files are already on disk; only the exit code escalates.
            return Err(CliError::Truncated(message));
        }
        eprintln!("warning: {message}");
    }
    Ok(())
}

fn snapshot_csv(echo: &str, index: usize, snapshot: &Snapshot) -> String {
    let mut out = format!("# kochwave wave {echo} snapshot={index}\nt,y,re,im,phi\n");
    for sample in &snapshot.samples {
        writeln!(
            out,
            "{},{},{},{},{}",
            snapshot.t, sample.y, sample.point.re, sample.point.im, sample.phi
        )
        .expect("writing to a string cannot fail");
    }
    out
}

fn snapshot_json(
    run: &WaveRun,
    left: &Profile,
    right: &Profile,
    index: usize,
    snapshot: &Snapshot,
) -> String {
    let doc = WaveDoc {
        command: "wave",
        snapshot: index,
        t: snapshot.t,
        profile_a: &left.describe(),
        profile_b: &right.describe(),
        c: run.c,
        alpha: run.alpha,
        depth: run.depth,
        y_from: run.y_from,
        y_to: run.y_to,
        samples: run.samples,
        samples_data: snapshot
            .samples
            .iter()
            .map(|sample| WaveSampleRecord {
                t: snapshot.t,
                y: sample.y,
                re: sample.point.re,
                im: sample.point.im,
                phi: sample.phi,
            })
            .collect(),
    };
    let mut text = serde_json::to_string(&doc).expect("plain records always serialize");
    text.push('\n');
    text
}

/// Renders a snapshot as the carrier curve (grey) plus a second polyline
/// displaced along the local normal by the field value — a plot of Φ drawn
/// on the curve itself.
fn snapshot_svg(echo: &str, index: usize, snapshot: &Snapshot) -> String {
    let base: Vec<(f64, f64)> = snapshot.samples.iter().map(|s| to_screen(&s.point)).collect();
    let n = base.len();
    let mut offset = Vec::with_capacity(n);
    for (i, sample) in snapshot.samples.iter().enumerate() {
        let ahead = &snapshot.samples[(i + 1).min(n - 1)].point;
        let behind = &snapshot.samples[i.saturating_sub(1)].point;
        let (dx, dy) = (ahead.re - behind.re, ahead.im - behind.im);
        let len = (dx * dx + dy * dy).sqrt();
        // Left-hand normal of the travel direction; flat segments of a
        // degenerate curve fall back to the vertical.
        let (nx, ny) = if len > 0.0 {
            (-dy / len, dx / len)
        } else {
            (0.0, 1.0)
        };
        let (px, py) = to_screen(&sample.point);
        // Screen y grows downward, so the normal's im-component flips sign.
        offset.push((
            px + SVG_FIELD_OFFSET * sample.phi * nx,
            py - SVG_FIELD_OFFSET * sample.phi * ny,
        ));
    }
    let mut everything = base.clone();
    everything.extend_from_slice(&offset);
    let elements = [
        polyline_element(&base, "grey", 1.0),
        polyline_element(&offset, "black", 2.0),
    ];
    svg_document(&format!("wave {echo} snapshot={index}"), &elements, &everything)
}

// ---------------------------------------------------------------------------
// lorentz

pub struct LorentzRun {
    pub chi: f64,
    pub chart0: String,
    pub chart1: String,
    pub mode: LorentzMode,
}

pub enum LorentzMode {
    Point { x0: f64, y: f64 },
    File {
        input: PathBuf,
        output: Option<PathBuf>,
    },
}

pub fn lorentz(run: &LorentzRun) -> Result<(), CliError> {
    if !run.chi.is_finite() {
        return Err(CliError::Validation(format!(
            "rapidity {} is not finite",
            run.chi
        )));
    }
    let chart0 = Chart::by_name(&run.chart0)?;
    let chart1 = Chart::by_name(&run.chart1)?;
    let boost = Boost::new(run.chi);
    let echo = format!(
        "chi={} chart0={} chart1={}",
        run.chi,
        chart0.name(),
        chart1.name()
    );
    match &run.mode {
        LorentzMode::Point { x0, y } => {
            let (b0, b1) = boost_pair(boost, *x0, *y, &chart0, &chart1)?;
            print!("# kochwave lorentz {echo}\nx0,y\n{b0},{b1}\n");
            Ok(())
        }
        LorentzMode::File { input, output } => {
            let text = fs::read_to_string(input).map_err(|err| CliError::io(input, err))?;
            let mut out = format!("# kochwave lorentz {echo} input={}\nx0,y\n", input.display());
            for (number, line) in text.lines().enumerate() {
                let row = line.trim();
                if row.is_empty() || row.starts_with('#') || row == "x0,y" {
                    continue;
                }
                let (sx, sy) = row.split_once(',').ok_or_else(|| {
                    CliError::Validation(format!(
                        "line {}: expected two comma-separated numbers, got '{row}'",
                        number + 1
                    ))
                })?;
                let x0: f64 = sx.trim().parse().map_err(|_| {
                    CliError::Validation(format!("line {}: '{sx}' is not a number", number + 1))
                })?;
                let y: f64 = sy.trim().parse().map_err(|_| {
                    CliError::Validation(format!("line {}: '{sy}' is not a number", number + 1))
                })?;
                if run.chi == 0.0 {
                    // The zero boost is the group identity: pass the
                    // validated row through byte-for-byte.
                    out.push_str(row);
                    out.push('\n');
                } else {
                    let (b0, b1) = boost_pair(boost, x0, y, &chart0, &chart1)?;
                    writeln!(out, "{b0},{b1}").expect("writing to a string cannot fail");
                }
            }
            match output {
                Some(path) => fs::write(path, out).map_err(|err| CliError::io(path, err)),
                None => {
                    print!("{out}");
                    Ok(())
                }
            }
        }
    }
}

/// One boosted coordinate pair; the zero boost returns its input exactly.
fn boost_pair(
    boost: Boost,
    x0: f64,
    y: f64,
    chart0: &Chart,
    chart1: &Chart,
) -> Result<(f64, f64), CliError> {
    if boost.rapidity() == 0.0 {
        return Ok((x0, y));
    }
    Ok(boost_point_general(boost, x0, y, chart0, chart1)?)
}

// ---------------------------------------------------------------------------
// SVG helpers

/// Chart plane to screen plane: 1000 units per chart unit, y flipped.
fn to_screen(point: &PlanePoint) -> (f64, f64) {
    (SVG_SCALE * point.re, -SVG_SCALE * point.im)
}

fn polyline_element(points: &[(f64, f64)], stroke: &str, width: f64) -> String {
    let coords = points
        .iter()
        .map(|(x, y)| format!("{x},{y}"))
        .collect::<Vec<_>>()
        .join(" ");
    format!(
        "<polyline fill=\"none\" stroke=\"{stroke}\" stroke-width=\"{width}\" points=\"{coords}\"/>"
    )
}

/// Wraps elements in an SVG document whose view box covers `extent` with a
/// fixed margin, with the config echo as the leading comment.
fn svg_document(comment: &str, elements: &[String], extent: &[(f64, f64)]) -> String {
    const MARGIN: f64 = 20.0;
    let mut min_x = f64::INFINITY;
    let mut min_y = f64::INFINITY;
    let mut max_x = f64::NEG_INFINITY;
    let mut max_y = f64::NEG_INFINITY;
    for &(x, y) in extent {
        min_x = min_x.min(x);
        min_y = min_y.min(y);
        max_x = max_x.max(x);
        max_y = max_y.max(y);
    }
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    writeln!(out, "<!-- kochwave {comment} -->").expect("writing to a string cannot fail");
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">",
        min_x - MARGIN,
        min_y - MARGIN,
        max_x - min_x + 2.0 * MARGIN,
        max_y - min_y + 2.0 * MARGIN
    )
    .expect("writing to a string cannot fail");
    for element in elements {
        writeln!(out, "  {element}").expect("writing to a string cannot fail");
    }
    out.push_str("</svg>\n");
    out
}
