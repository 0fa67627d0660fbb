//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 for runtime or resource-limit failures,
//! 2 for argument errors.

use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::boolcore::BooleanRule;
use crate::cdma::{channel_decode_all, channel_encode, walsh_codes};
use crate::error::Error;
use crate::fractal::estimate_dimension;
use crate::pattern::{generate_grid, natural_order, render, render_pgm, zero_mask, MaskFormat};
use crate::rotation::{build_schedule, efficiency, simulate};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Ascii,
    Pbm,
    PgmValues,
    Json,
    Csv,
}

impl OutputFormat {
    fn name(self) -> &'static str {
        match self {
            OutputFormat::Ascii => "ascii",
            OutputFormat::Pbm => "pbm",
            OutputFormat::PgmValues => "pgm-values",
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
        }
    }

    fn parse_among(s: &str, allowed: &[OutputFormat]) -> Result<OutputFormat, String> {
        allowed
            .iter()
            .copied()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = allowed.iter().map(|f| f.name()).collect();
                format!("expected one of: {}", names.join(", "))
            })
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn pattern_format(s: &str) -> Result<OutputFormat, String> {
    use OutputFormat::*;
    OutputFormat::parse_among(s, &[Ascii, Pbm, PgmValues])
}

fn report_format(s: &str) -> Result<OutputFormat, String> {
    OutputFormat::parse_among(s, &[OutputFormat::Csv, OutputFormat::Json])
}

#[derive(Debug, Parser)]
#[command(
    name = "lscvt",
    version,
    about = "LSCVT fractal patterns, dimension estimates, and CDMA port rotation"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Render the zero-cell pattern (or cell values) of a level's grid
    Pattern(PatternArgs),
    /// Estimate the box-counting dimension of a level's zero pattern
    Dimension(DimensionArgs),
    /// Tabulate standby-port savings for widths 1..=max-width
    Efficiency(EfficiencyArgs),
    /// Run the port rotation and report per-port standby counts
    Simulate(SimulateArgs),
    /// Spread data over Walsh codes and despread it again
    Cdma(CdmaArgs),
}

#[derive(Debug, Args)]
struct PatternArgs {
    #[arg(long)]
    level: u64,
    /// Grid side length [default: natural order of the level]
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    order: Option<u64>,
    #[arg(long, default_value_t = 3)]
    rule: u8,
    /// ascii, pbm or pgm-values
    #[arg(long, default_value = "ascii", value_parser = pattern_format)]
    format: OutputFormat,
    /// Write to this file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DimensionArgs {
    #[arg(long)]
    level: u64,
    #[arg(long, default_value_t = 3)]
    rule: u8,
}

#[derive(Debug, Args)]
struct EfficiencyArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    max_width: u32,
    /// csv or json
    #[arg(long, default_value = "csv", value_parser = report_format)]
    format: OutputFormat,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[arg(long)]
    width: u32,
    /// Ticks to run [default: one full period]
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    ticks: Option<u64>,
    /// Base rotation clock, reported only
    #[arg(long, default_value_t = 1.0)]
    speed: f64,
    /// json or csv
    #[arg(long, default_value = "json", value_parser = report_format)]
    format: OutputFormat,
}

#[derive(Debug, Args)]
struct CdmaArgs {
    /// Codebook holds 2^k codes of length 2^k
    #[arg(long)]
    k: u32,
    /// Comma-separated integer symbols, one per station
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        required = true
    )]
    data: Vec<i64>,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_) => Failure::Usage(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
                EXIT_USAGE
            } else {
                let _ = out.write_all(rendered.as_bytes());
                EXIT_OK
            };
        }
    };

    let result = match cli.command {
        Command::Pattern(a) => cmd_pattern(a, out),
        Command::Dimension(a) => cmd_dimension(a, out),
        Command::Efficiency(a) => cmd_efficiency(a, out),
        Command::Simulate(a) => cmd_simulate(a, out),
        Command::Cdma(a) => cmd_cdma(a, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Runtime(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_FAILURE
        }
    }
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    serde_json::to_writer(&mut *out, value)?;
    out.write_all(b"\n")?;
    Ok(())
}

fn cmd_pattern(args: PatternArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let rule = BooleanRule::new(args.rule);
    let order = args.order.unwrap_or_else(|| natural_order(args.level));
    let grid = generate_grid(args.level, order, &rule)?;
    let bytes = match args.format {
        OutputFormat::Ascii => render(&zero_mask(&grid), MaskFormat::Ascii),
        OutputFormat::Pbm => render(&zero_mask(&grid), MaskFormat::Pbm),
        OutputFormat::PgmValues => render_pgm(&grid),
        other => return Err(Failure::Usage(format!("pattern cannot emit {other}"))),
    };
    match args.out {
        Some(path) => fs::write(&path, bytes)
            .map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))?,
        None => out.write_all(&bytes)?,
    }
    Ok(EXIT_OK)
}

fn cmd_dimension(args: DimensionArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let rule = BooleanRule::new(args.rule);
    let grid = generate_grid(args.level, natural_order(args.level), &rule)?;
    let estimate = estimate_dimension(&zero_mask(&grid))?;
    write_json(out, &estimate)?;
    Ok(EXIT_OK)
}

fn cmd_efficiency(args: EfficiencyArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let reports = (1..=args.max_width)
        .map(efficiency)
        .collect::<Result<Vec<_>, _>>()?;
    match args.format {
        OutputFormat::Json => write_json(out, &reports)?,
        _ => {
            writeln!(out, "width,total,active,standby,saving_percent")?;
            for r in &reports {
                writeln!(
                    out,
                    "{},{},{},{},{:.6}",
                    r.width, r.total_ports, r.active_ports, r.standby_ports, r.saving_percent
                )?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_simulate(args: SimulateArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let schedule = build_schedule(args.width, args.speed)?;
    let ticks = args.ticks.unwrap_or(schedule.period());
    let report = simulate(&schedule, ticks)?;
    match args.format {
        OutputFormat::Csv => {
            writeln!(out, "x,y,standby_count,standby_fraction")?;
            for (y, row) in report.per_cell_standby_counts.iter().enumerate() {
                for (x, &count) in row.iter().enumerate() {
                    writeln!(out, "{x},{y},{count},{:.6}", count as f64 / ticks as f64)?;
                }
            }
        }
        _ => write_json(out, &report)?,
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct CdmaDemo<'a> {
    k: u32,
    data: &'a [i64],
    frame: &'a [i64],
    decoded: &'a [i64],
}

fn cmd_cdma(args: CdmaArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let book = walsh_codes(args.k)?;
    let frame = channel_encode(&args.data, &book)?;
    let decoded = channel_decode_all(&frame, &book, args.data.len())?;
    write_json(
        out,
        &CdmaDemo {
            k: args.k,
            data: &args.data,
            frame: &frame.samples,
            decoded: &decoded,
        },
    )?;
    Ok(if decoded == args.data {
        EXIT_OK
    } else {
        EXIT_FAILURE
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("lscvt").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn pattern_ascii_level1() {
        assert_eq!(
            call(&["pattern", "--level", "1"]),
            (0, ".#\n##\n".into(), String::new())
        );
    }

    #[test]
    fn pattern_rejects_bad_input() {
        assert_eq!(call(&["pattern", "--level", "0", "--order", "0"]).0, 2);
        assert_eq!(call(&["pattern", "--level", "1", "--format", "csv"]).0, 2);
        assert_eq!(call(&["pattern", "--level", "1", "--rule", "256"]).0, 2);
        let (code, _, err) = call(&["pattern", "--level", "1", "--order", "5000"]);
        assert_eq!(code, 1);
        assert!(err.contains("resource limit"));
    }

    #[test]
    fn pattern_values() {
        let (code, out, _) = call(&["pattern", "--level", "1", "--format", "pgm-values"]);
        assert_eq!(code, 0);
        assert_eq!(out, "P2\n2 2\n1\n1 0\n0 0\n");
    }

    #[test]
    fn dimension_codes() {
        assert_eq!(call(&["dimension", "--level", "1"]).0, 2);
        assert_eq!(call(&["dimension", "--level", "8", "--rule", "255"]).0, 1);
        let (code, out, _) = call(&["dimension", "--level", "8", "--rule", "0"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!((v["slope"].as_f64().unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn efficiency_rows() {
        let (code, out, _) = call(&["efficiency", "--max-width", "3"]);
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "width,total,active,standby,saving_percent\n1,4,3,1,25.000000\n2,16,9,7,43.750000\n3,64,27,37,57.812500\n"
        );
        assert_eq!(call(&["efficiency", "--max-width", "0"]).0, 2);
        assert_eq!(call(&["efficiency", "--max-width", "32"]).0, 2);
        assert_eq!(
            call(&["efficiency", "--max-width", "2", "--format", "ascii"]).0,
            2
        );
    }

    #[test]
    fn simulate_codes() {
        assert_eq!(call(&["simulate", "--width", "9"]).0, 2);
        assert_eq!(call(&["simulate", "--width", "0"]).0, 2);
        assert_eq!(call(&["simulate", "--width", "1", "--ticks", "0"]).0, 2);
        let (code, out, _) = call(&["simulate", "--width", "1", "--format", "csv"]);
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "x,y,standby_count,standby_fraction\n0,0,1,0.250000\n1,0,1,0.250000\n0,1,1,0.250000\n1,1,1,0.250000\n"
        );
    }

    #[test]
    fn cdma_codes() {
        let (code, out, _) = call(&["cdma", "--k", "2", "--data", "3,-1,0,2"]);
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "{\"k\":2,\"data\":[3,-1,0,2],\"frame\":[4,2,0,6],\"decoded\":[3,-1,0,2]}\n"
        );
        assert_eq!(call(&["cdma", "--k", "1", "--data", "1,2,3"]).0, 2);
        assert_eq!(call(&["cdma", "--k", "11", "--data", "1"]).0, 2);
        assert_eq!(call(&["cdma", "--k", "0"]).0, 2);
    }

    #[test]
    fn help_goes_to_stdout() {
        let (code, out, err) = call(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("pattern"));
        assert!(err.is_empty());
        assert_eq!(call(&[]).0, 2);
        assert_eq!(call(&["bogus"]).0, 2);
    }
}
