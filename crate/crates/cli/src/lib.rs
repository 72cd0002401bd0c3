//! The `hilbert` command line: distances, profiles, convexity reports, the flat-point
//! counterexample and plots.
//!
//! Exit codes: 0 success, 2 invalid input, 3 numeric failure, 4 I/O failure.

mod output;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use hilbert_core::{
    build_counterexample_domain, convexity_report, distance_profile, geodesic_through, hilbert_distance, synchronize,
    verify_nonconvexity, ConvexDomain, ConvexityReport, CounterexampleParams, DomainSpec, HilbertError,
    Point,
};
use serde::Serialize;
use thiserror::Error;

pub use output::{parse_profile_csv, profile_csv, profile_svg, write_atomic};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Numeric(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl From<HilbertError> for CliError {
    fn from(e: HilbertError) -> Self {
        if e.is_numeric() {
            CliError::Numeric(e.to_string())
        } else {
            CliError::Validation(e.to_string())
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "hilbert", version, about = "Hilbert geometry on planar convex domains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Two interior points `x1,y1:x2,y2`; the geodesic starts at the first and heads through the second.
#[derive(Debug, Clone, Copy)]
struct Through(Point, Point);

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the Hilbert distance between two interior points.
    Dist {
        #[arg(long)]
        domain: PathBuf,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        p: Point,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        q: Point,
    },
    /// Sample D(t) = h(f(t), g(t)) on a uniform grid and write it as CSV.
    Profile {
        #[arg(long)]
        domain: PathBuf,
        #[arg(long, value_parser = parse_through, allow_hyphen_values = true)]
        f: Through,
        #[arg(long, value_parser = parse_through, allow_hyphen_values = true)]
        g: Through,
        /// Reparametrize g so both geodesics cross each pencil line together.
        #[arg(long)]
        sync: bool,
        #[arg(long, value_parser = finite, allow_hyphen_values = true)]
        t0: f64,
        #[arg(long, value_parser = finite, allow_hyphen_values = true)]
        t1: f64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the convexity report of a profile CSV as JSON.
    Report {
        #[arg(long)]
        profile: PathBuf,
        #[arg(long, default_value_t = 1e-9, value_parser = finite)]
        tol: f64,
    },
    /// Build the C² domain with a flat point whose profile is not eventually convex.
    Counterexample {
        #[arg(long, value_parser = finite)]
        x0: f64,
        #[arg(long)]
        levels: usize,
        #[arg(long)]
        out: PathBuf,
        /// Also write the profile of the chords y = ±x into the origin.
        #[arg(long)]
        profile: Option<PathBuf>,
        #[arg(long, default_value_t = 25.0, value_parser = finite)]
        t1: f64,
        #[arg(long, default_value_t = 501)]
        n: usize,
        /// Probe each contact time in extended precision and report the second differences.
        #[arg(long)]
        verify: bool,
    },
    /// Render a profile CSV as an SVG with non-convex windows shaded.
    Plot {
        #[arg(long)]
        profile: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1e-9, value_parser = finite)]
        tol: f64,
    },
}

fn finite(s: &str) -> Result<f64, String> {
    match s.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(format!("`{s}` is not a finite number")),
    }
}

fn parse_point(s: &str) -> Result<Point, String> {
    let (x, y) = s.split_once(',').ok_or_else(|| format!("`{s}` is not of the form x,y"))?;
    Ok(Point::new(finite(x)?, finite(y)?))
}

fn parse_through(s: &str) -> Result<Through, String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("`{s}` is not of the form x1,y1:x2,y2"))?;
    Ok(Through(parse_point(a)?, parse_point(b)?))
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn load_domain(path: &Path) -> Result<ConvexDomain, CliError> {
    let spec = DomainSpec::from_json(&read(path)?)?;
    Ok(ConvexDomain::from_spec(&spec)?)
}

#[derive(Serialize)]
struct WindowJson {
    start: f64,
    end: f64,
    min: f64,
}

#[derive(Serialize)]
struct ReportJson {
    #[serde(rename = "T_certified")]
    t_certified: Option<f64>,
    min_second_difference: f64,
    tol: f64,
    windows: Vec<WindowJson>,
}

impl From<&ConvexityReport> for ReportJson {
    fn from(r: &ConvexityReport) -> Self {
        ReportJson {
            t_certified: r.t_certified,
            min_second_difference: r.min_second_difference,
            tol: r.tol,
            windows: r.windows.iter().map(|w| WindowJson { start: w.start, end: w.end, min: w.min }).collect(),
        }
    }
}

fn json(value: &impl Serialize) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes")
}

fn execute(command: Command) -> Result<String, CliError> {
    match command {
        Command::Dist { domain, p, q } => {
            let d = load_domain(&domain)?;
            Ok(format!("{}\n", hilbert_distance(&d, p, q)?))
        }
        Command::Profile { domain, f, g, sync, t0, t1, n, out } => {
            let d = load_domain(&domain)?;
            let f = geodesic_through(&d, f.0, f.1)?;
            let g = geodesic_through(&d, g.0, g.1)?;
            let profile = if sync {
                synchronize(&d, &f, &g)?.profile(&d, t0, t1, n)?
            } else {
                distance_profile(&d, &f, &g, t0, t1, n)?
            };
            write_atomic(&out, profile_csv(&profile).as_bytes())?;
            Ok(String::new())
        }
        Command::Report { profile, tol } => {
            let p = parse_profile_csv(&read(&profile)?)?;
            Ok(format!("{}\n", json(&ReportJson::from(&convexity_report(&p, tol)))))
        }
        Command::Counterexample { x0, levels, out, profile, t1, n, verify } => {
            counterexample(x0, levels, &out, profile.as_deref(), t1, n, verify)
        }
        Command::Plot { profile, out, tol } => {
            let p = parse_profile_csv(&read(&profile)?)?;
            write_atomic(&out, profile_svg(&p, &convexity_report(&p, tol)).as_bytes())?;
            Ok(String::new())
        }
    }
}

#[derive(Serialize)]
struct LevelJson {
    n: usize,
    x_n: f64,
    b_n: f64,
    curvature: f64,
    gap: f64,
    contact_time: f64,
    curvature_floor: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    min_second_difference: Option<f64>,
}

#[derive(Serialize)]
struct CounterexampleJson {
    x0: f64,
    levels: Vec<LevelJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    every_level_negative: Option<bool>,
}

fn counterexample(
    x0: f64,
    levels: usize,
    out: &Path,
    profile: Option<&Path>,
    t1: f64,
    n: usize,
    verify: bool,
) -> Result<String, CliError> {
    let cd = build_counterexample_domain(&CounterexampleParams::new(x0, levels)?)?;
    let spec = cd.domain().to_spec()?;
    let sampled = match profile {
        Some(_) => {
            let (f, g) = cd.geodesic_pair()?;
            Some(distance_profile(cd.domain(), &f, &g, 0.0, t1, n)?)
        }
        None => None,
    };
    let report = if verify { Some(verify_nonconvexity(&cd, &cd.default_probes())?) } else { None };
    write_atomic(out, spec.to_json().as_bytes())?;
    if let (Some(path), Some(p)) = (profile, &sampled) {
        write_atomic(path, profile_csv(p).as_bytes())?;
    }
    let summary = CounterexampleJson {
        x0,
        levels: cd
            .levels()
            .iter()
            .map(|l| LevelJson {
                n: l.n,
                x_n: l.x_n,
                b_n: l.b_n,
                curvature: l.curvature,
                gap: l.gap,
                contact_time: l.contact_time,
                curvature_floor: l.curvature_floor,
                min_second_difference: report
                    .as_ref()
                    .and_then(|r| r.windows.iter().find(|w| w.level == l.n))
                    .map(|w| w.min_second_difference),
            })
            .collect(),
        every_level_negative: report.as_ref().map(|r| r.every_window_negative),
    };
    Ok(format!("{}\n", json(&summary)))
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return 0;
        }
        Err(e) => {
            let text = e.to_string();
            eprintln!("{}", text.lines().next().unwrap_or("invalid arguments"));
            return 2;
        }
    };
    match execute(cli.command) {
        Ok(text) => {
            print!("{text}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
