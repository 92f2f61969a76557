//! `chaoscert`: certify chaos for `k -> alpha k (1 - k)^beta`, solve critical
//! thresholds and export figure data.
//!
//! Exit status:
//!
//! | code | meaning |
//! |------|---------|
//! | 0    | success; for `certify`, an odd cycle or a turbulent second iterate |
//! | 1    | `certify`: neither odd cycle nor turbulence |
//! | 2    | `certify`: the map is outside the admissible class |
//! | 64   | usage or invalid input |
//! | 70   | numerical failure |
//! | 74   | I/O failure |

mod config;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use chaoscert::export::{self, CurveParams, FigureRequest, RegionParams};
use chaoscert::period::default_curve_range;
use chaoscert::{
    classify_with, threshold_report, threshold_sweep, ChaosStatus, ClassifyOptions, Error, Map,
};
use clap::{Parser, Subcommand, ValueEnum};

use crate::config::{parse_range, Config};

const EXIT_NO_CHAOS: u8 = 1;
const EXIT_NOT_IN_G: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_SOFTWARE: u8 = 70;
const EXIT_IO: u8 = 74;

#[derive(Debug, Parser)]
#[command(
    name = "chaoscert",
    version,
    about = "Topological chaos certification for the pollution-effect growth map"
)]
struct Cli {
    /// Config file (TOML); defaults to $CHAOSCERT_CONFIG.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Worker thread cap; 0 uses every core.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify one (alpha, beta) pair and print the verdict as JSON.
    Certify {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long)]
        grid_size: Option<usize>,
        #[arg(long)]
        subdivisions: Option<usize>,
    },
    /// Solve the critical alpha values for one beta.
    Threshold {
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Threshold reports over a beta range, written as CSV.
    Sweep {
        #[arg(long, value_name = "LO:HI")]
        beta_range: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Region labels over an (alpha, beta) grid, written as CSV.
    Scan {
        #[arg(long, value_name = "LO:HI")]
        alpha_range: Option<String>,
        #[arg(long, value_name = "LO:HI")]
        beta_range: Option<String>,
        #[arg(long)]
        nx: Option<usize>,
        #[arg(long)]
        ny: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Fixed-point and period-two branches for one beta, written as CSV.
    Curves {
        #[arg(long)]
        beta: f64,
        #[arg(long, value_name = "LO:HI")]
        alpha_range: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        subdivisions: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
}

/// A failure with its exit status and one-line reason.
struct Failure {
    code: u8,
    reason: String,
}

impl Failure {
    fn usage(reason: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            reason: reason.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidParameter(_) => EXIT_USAGE,
            Error::Io { .. } => EXIT_IO,
            _ => EXIT_SOFTWARE,
        };
        Self {
            code,
            reason: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            eprintln!("{}", text.lines().next().unwrap_or("invalid usage"));
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("chaoscert: {}", f.reason);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let cfg =
        Config::load(cli.config.as_deref()).map_err(|e| Failure::usage(format!("config: {e}")))?;
    let threads = cli.threads.unwrap_or(cfg.threads);
    if threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| Failure {
                code: EXIT_SOFTWARE,
                reason: e.to_string(),
            })?;
    }

    match cli.command {
        Command::Certify {
            alpha,
            beta,
            grid_size,
            subdivisions,
        } => {
            positive("alpha", alpha)?;
            positive("beta", beta)?;
            let opts = ClassifyOptions {
                grid_size: at_least("grid-size", grid_size.unwrap_or(cfg.grid_size), 100)?,
                subdivisions: at_least(
                    "subdivisions",
                    subdivisions.unwrap_or(cfg.subdivisions),
                    1000,
                )?,
            };
            let verdict = classify_with(&Map::new(alpha, beta)?, opts)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&verdict).expect("verdict serializes")
            );
            Ok(match verdict.status {
                ChaosStatus::OddCycleAndTurbulent | ChaosStatus::TurbulentOnly => 0,
                ChaosStatus::NoOddCycleNoTurbulence => EXIT_NO_CHAOS,
                ChaosStatus::NotInG => EXIT_NOT_IN_G,
            })
        }
        Command::Threshold { beta, tol, format } => {
            positive("beta", beta)?;
            let tol = tolerance(tol.unwrap_or(cfg.tol))?;
            let report = threshold_report(beta, tol)?;
            if report.multiple_crossings {
                eprintln!(
                    "warning: chaos margin changes sign {} times; reporting the smallest",
                    report.chaos_crossings.len()
                );
            }
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("report serializes")
                ),
                Format::Text => {
                    println!("beta            {}", three_decimals(report.beta));
                    println!("g_lower         {}", three_decimals(report.g_lower));
                    println!("g_upper         {}", three_decimals(report.g_upper));
                    println!("f2m_threshold   {}", three_decimals(report.f2m_threshold));
                    println!("chaos_threshold {}", three_decimals(report.chaos_threshold));
                }
            }
            Ok(0)
        }
        Command::Sweep {
            beta_range,
            n,
            tol,
            out,
        } => {
            let range = parse_range(&beta_range).map_err(Failure::usage)?;
            let tol = tolerance(tol.unwrap_or(cfg.tol))?;
            let rows = threshold_sweep(range, n, tol)?;
            let mut reports = Vec::with_capacity(rows.len());
            for row in rows {
                match row.report {
                    Ok(r) => reports.push(r),
                    Err(e) => eprintln!("beta {}: {e}", row.beta),
                }
            }
            write_file(&out, |w| export::write_threshold_csv(&reports, w))?;
            println!("wrote {} rows to {}", reports.len(), out.display());
            Ok(0)
        }
        Command::Scan {
            alpha_range,
            beta_range,
            nx,
            ny,
            out,
        } => {
            let params = RegionParams {
                alpha_range: parse_range(alpha_range.as_deref().unwrap_or(&cfg.scan_alpha_range))
                    .map_err(Failure::usage)?,
                beta_range: parse_range(beta_range.as_deref().unwrap_or(&cfg.scan_beta_range))
                    .map_err(Failure::usage)?,
                nx: nx.unwrap_or(cfg.scan_nx),
                ny: ny.unwrap_or(cfg.scan_ny),
            };
            let rows = export::export_figure_data(&FigureRequest::Region(params), &out)?;
            println!("wrote {rows} rows to {}", out.display());
            Ok(0)
        }
        Command::Curves {
            beta,
            alpha_range,
            n,
            subdivisions,
            out,
        } => {
            positive("beta", beta)?;
            let alpha_range = match alpha_range {
                Some(s) => parse_range(&s).map_err(Failure::usage)?,
                None => default_curve_range(beta),
            };
            let params = CurveParams {
                beta,
                alpha_range,
                n: n.unwrap_or(cfg.curve_n),
                subdivisions: at_least(
                    "subdivisions",
                    subdivisions.unwrap_or(cfg.curve_subdivisions),
                    10,
                )?,
            };
            let rows = export::export_figure_data(&FigureRequest::Curves(params), &out)?;
            println!("wrote {rows} rows to {}", out.display());
            Ok(0)
        }
    }
}

fn positive(name: &str, v: f64) -> Result<(), Failure> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Failure::usage(format!(
            "--{name} must be finite and > 0, got {v}"
        )))
    }
}

fn at_least(name: &str, v: usize, min: usize) -> Result<usize, Failure> {
    if v >= min {
        Ok(v)
    } else {
        Err(Failure::usage(format!(
            "--{name} must be >= {min}, got {v}"
        )))
    }
}

fn tolerance(tol: f64) -> Result<f64, Failure> {
    if tol.is_finite() && tol >= 1e-12 {
        Ok(tol)
    } else {
        Err(Failure::usage(format!("--tol must be >= 1e-12, got {tol}")))
    }
}

/// Three decimals; exact binary ties round half to even.
fn three_decimals(x: f64) -> String {
    format!("{x:.3}")
}

fn write_file<F>(path: &Path, body: F) -> Result<(), Failure>
where
    F: FnOnce(&mut BufWriter<File>) -> std::io::Result<()>,
{
    let io = |e: std::io::Error| Failure {
        code: EXIT_IO,
        reason: format!("{}: {e}", path.display()),
    };
    let file = File::create(path).map_err(io)?;
    let mut w = BufWriter::new(file);
    body(&mut w).map_err(io)?;
    w.flush().map_err(io)
}
