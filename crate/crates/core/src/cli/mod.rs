//! Command line front end.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 usage or argument error,
//! 3 malformed input data, 4 numerical failure.

pub mod file;

use std::fs::OpenOptions;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::analysis::{random_spectrum, roundtrip_experiment, Timing};
use crate::grid::{BandLimit, GlGrid};
use crate::transforms::{forward, inverse};
use crate::wigner::build_delta_table;
use file::{FormatError, So3File};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Numerical(#[from] crate::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => 1,
            CliError::Usage(_) => 2,
            CliError::Format(FormatError::Io(_)) => 1,
            CliError::Format(_) => 3,
            CliError::Numerical(_) => 4,
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

#[derive(Debug, Parser)]
#[command(name = "so3gl", version, about = "Gauss-Legendre sampling and Fourier transforms on SO(3)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum GridFormat {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Export the sampling grid: colatitude nodes with weights, and the phi/omega angles.
    Grid {
        #[arg(long = "L", value_parser = clap::value_parser!(u32).range(1..=crate::grid::MAX_BAND_LIMIT as i64))]
        band_limit: u32,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: GridFormat,
    },
    /// Signal file to spectrum file.
    Forward {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Spectrum file to signal file.
    Inverse {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Random-spectrum round trips; appends one CSV row per run.
    Roundtrip {
        #[arg(long = "L", value_parser = clap::value_parser!(u32).range(1..=crate::grid::MAX_BAND_LIMIT as i64))]
        band_limit: u32,
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..))]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Timings for band limits Lmin, 2 Lmin, 4 Lmin, ... up to Lmax.
    Bench {
        #[arg(long = "Lmin", value_parser = clap::value_parser!(u32).range(1..=crate::grid::MAX_BAND_LIMIT as i64))]
        l_min: u32,
        #[arg(long = "Lmax", value_parser = clap::value_parser!(u32).range(1..=crate::grid::MAX_BAND_LIMIT as i64))]
        l_max: u32,
        /// Runs per band limit; the median is reported.
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
        repeats: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match run(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Grid {
            band_limit,
            out,
            format,
        } => cmd_grid(band_limit, &out, format),
        Command::Forward { input, out } => cmd_forward(&input, &out),
        Command::Inverse { input, out } => cmd_inverse(&input, &out),
        Command::Roundtrip {
            band_limit,
            trials,
            seed,
            out,
        } => cmd_roundtrip(band_limit, trials, seed, &out),
        Command::Bench {
            l_min,
            l_max,
            repeats,
            seed,
            out,
        } => cmd_bench(l_min, l_max, repeats, seed, &out),
    }
}

fn band_limit(l: u32) -> Result<BandLimit, CliError> {
    BandLimit::new(l as usize).map_err(|e| CliError::Usage(e.to_string()))
}

/// Writes `bytes` to a temporary file next to `path` and renames it into place.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err(path))?;
    tmp.write_all(bytes).map_err(io_err(path))?;
    tmp.persist(path).map_err(|e| io_err(path)(e.error))?;
    Ok(())
}

fn read_so3(path: &Path) -> Result<So3File, CliError> {
    let bytes = std::fs::read(path).map_err(io_err(path))?;
    Ok(So3File::decode(&bytes)?)
}

#[derive(Serialize)]
struct GridJson<'a> {
    band_limit: usize,
    theta: &'a [f64],
    weight: &'a [f64],
    phi: &'a [f64],
    omega: &'a [f64],
}

/// CSV text for the grid: a `v,theta,q` block followed by a `u,phi` block.
/// `omega` uses the same angles as `phi`.
pub fn grid_csv(grid: &GlGrid) -> String {
    let mut s = String::from("v,theta,q\n");
    for (v, (t, q)) in grid.theta().iter().zip(grid.weights()).enumerate() {
        s.push_str(&format!("{v},{t:?},{q:?}\n"));
    }
    s.push_str("u,phi\n");
    for (u, p) in grid.phi().iter().enumerate() {
        s.push_str(&format!("{u},{p:?}\n"));
    }
    s
}

pub fn cmd_grid(l: u32, out: &Path, format: GridFormat) -> Result<(), CliError> {
    let grid = GlGrid::new(band_limit(l)?)?;
    let text = match format {
        GridFormat::Csv => grid_csv(&grid),
        GridFormat::Json => {
            let doc = GridJson {
                band_limit: grid.band_limit().get(),
                theta: grid.theta(),
                weight: grid.weights(),
                phi: grid.phi(),
                omega: grid.omega(),
            };
            serde_json::to_string_pretty(&doc).expect("plain data serializes") + "\n"
        }
    };
    write_atomic(out, text.as_bytes())
}

pub fn cmd_forward(input: &Path, out: &Path) -> Result<(), CliError> {
    let signal = read_so3(input)?.into_signal()?;
    let b = signal.band_limit();
    let spectrum = forward(&signal, &build_delta_table(b), &GlGrid::new(b)?)?;
    write_atomic(out, &So3File::from_spectrum(&spectrum).encode())
}

pub fn cmd_inverse(input: &Path, out: &Path) -> Result<(), CliError> {
    let spectrum = read_so3(input)?.into_spectrum()?;
    let b = spectrum.band_limit();
    let signal = inverse(&spectrum, &build_delta_table(b), &GlGrid::new(b)?)?;
    write_atomic(out, &So3File::from_signal(&signal).encode())
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

pub const ROUNDTRIP_HEADER: &str = "L,trials,seed,E_max,E_mean,t_forward_ms,t_inverse_ms";

pub fn cmd_roundtrip(l: u32, trials: u32, seed: u64, out: &Path) -> Result<(), CliError> {
    if trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    let report = roundtrip_experiment(band_limit(l)?, trials as usize, seed)?;
    let needs_header = std::fs::metadata(out).map(|m| m.len() == 0).unwrap_or(true);
    let mut file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(out)
        .map_err(io_err(out))?;
    let mut text = String::new();
    if needs_header {
        text.push_str(ROUNDTRIP_HEADER);
        text.push('\n');
    }
    text.push_str(&format!(
        "{},{},{},{:?},{:?},{:?},{:?}\n",
        report.band_limit,
        report.trials,
        report.seed,
        report.e_max,
        report.e_mean,
        ms(report.t_forward.median),
        ms(report.t_inverse.median),
    ));
    file.write_all(text.as_bytes()).map_err(io_err(out))?;
    Ok(())
}

pub const BENCH_HEADER: &str = "L,t_forward_ms,t_inverse_ms,t_delta_ms";

/// Median timings of the Delta table build, the inverse and the forward
/// transform at one band limit.
#[derive(Debug, Clone, Copy)]
pub struct BenchRow {
    pub band_limit: BandLimit,
    pub t_forward: Duration,
    pub t_inverse: Duration,
    pub t_delta: Duration,
}

pub fn bench_band_limit(b: BandLimit, repeats: usize, seed: u64) -> Result<BenchRow, crate::Error> {
    let grid = GlGrid::new(b)?;
    let mut t_delta = Vec::with_capacity(repeats);
    let mut t_fwd = Vec::with_capacity(repeats);
    let mut t_inv = Vec::with_capacity(repeats);
    for k in 0..repeats {
        let start = Instant::now();
        let table = build_delta_table(b);
        t_delta.push(start.elapsed());

        let spectrum = random_spectrum(b, seed.wrapping_add(k as u64));
        let start = Instant::now();
        let signal = inverse(&spectrum, &table, &grid)?;
        t_inv.push(start.elapsed());

        let start = Instant::now();
        let back = forward(&signal, &table, &grid)?;
        t_fwd.push(start.elapsed());
        std::hint::black_box(back);
    }
    Ok(BenchRow {
        band_limit: b,
        t_forward: Timing::from_samples(&t_fwd).median,
        t_inverse: Timing::from_samples(&t_inv).median,
        t_delta: Timing::from_samples(&t_delta).median,
    })
}

pub fn cmd_bench(l_min: u32, l_max: u32, repeats: u32, seed: u64, out: &Path) -> Result<(), CliError> {
    if l_min > l_max {
        return Err(CliError::Usage(format!(
            "--Lmin ({l_min}) must not exceed --Lmax ({l_max})"
        )));
    }
    let mut text = format!("{BENCH_HEADER}\n");
    let mut l = l_min;
    while l <= l_max {
        let row = bench_band_limit(band_limit(l)?, repeats as usize, seed)?;
        text.push_str(&format!(
            "{},{:?},{:?},{:?}\n",
            l,
            ms(row.t_forward),
            ms(row.t_inverse),
            ms(row.t_delta)
        ));
        l *= 2;
    }
    write_atomic(out, text.as_bytes())
}
