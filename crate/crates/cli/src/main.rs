//! `spectra-forge`: construct and certify exponential spectra, Riesz spectra
//! and frames from the command line.
//!
//! Every subcommand writes one JSON report (`--out` or stdout) carrying the
//! schema tag, the argument vector needed to replay it, and a verdict. Scans
//! additionally write CSV with `--csv`.
//!
//! Exit codes: 0 when a verdict is produced, 2 when it is inconclusive, 1 on
//! usage or input errors.

mod commands;
mod parse;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};
use spectra_forge_core::{Verdict, SCHEMA};

#[derive(Parser, Debug)]
#[command(
    name = "spectra-forge",
    version,
    about = "Exponential spectra, Riesz spectra and Fourier frames"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tiling, (T1)/(T2) and the Łaba spectrum of a digit set.
    TileAnalyze(commands::TileArgs),
    /// Orthonormal spectrum of an atomic or self-similar measure.
    SpectrumFind(commands::SpectrumArgs),
    /// Optimal frame bounds of a finite exponential system.
    FrameBounds(commands::FrameArgs),
    /// Jorgensen–Pedersen scan of Q(x) = Σ|μ̂(x + λ)|².
    JpScan(commands::JpArgs),
    /// Riesz spectrum and spectrality certificate of η_q ∗ ν.
    ConvolveBuild(commands::ConvolveArgs),
    /// Finite-window lower Beurling density diagnostic.
    DensityScan(commands::DensityArgs),
}

/// Measure given by atoms and weights, or by digits and a scale.
#[derive(Args, Debug, Clone)]
pub struct MeasureArgs {
    /// Atoms as rationals, e.g. `0,1,2`.
    #[arg(long, conflicts_with_all = ["digits", "scale"], allow_hyphen_values = true)]
    atoms: Option<String>,
    /// Weights as rationals summing to 1; uniform when omitted.
    #[arg(long, requires = "atoms")]
    weights: Option<String>,
    /// Digit set of a self-similar measure, e.g. `0,2`.
    #[arg(long, requires = "scale")]
    digits: Option<String>,
    /// Contraction ratio denominator `n` of a self-similar measure.
    #[arg(long, requires = "digits")]
    scale: Option<u64>,
}

/// What a subcommand hands back for the report.
pub struct Outcome {
    pub verdict: Option<Verdict>,
    pub body: Map<String, Value>,
}

/// Arguments that only choose where output goes; left out of the replay echo.
const SINK_FLAGS: [&str; 2] = ["--out", "--csv"];

fn replay_argv(argv: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    let mut skip = false;
    for a in argv.iter().skip(1) {
        if skip {
            skip = false;
            continue;
        }
        if SINK_FLAGS.contains(&a.as_str()) {
            skip = true;
            continue;
        }
        if SINK_FLAGS.iter().any(|f| a.starts_with(&format!("{f}="))) {
            continue;
        }
        out.push(a.clone());
    }
    out
}

fn run(cli: Cli, argv: &[String]) -> Result<i32> {
    let (name, outcome) = match &cli.command {
        Command::TileAnalyze(a) => ("tile-analyze", commands::tile_analyze(a)?),
        Command::SpectrumFind(a) => ("spectrum-find", commands::spectrum_find(a)?),
        Command::FrameBounds(a) => ("frame-bounds", commands::frame_bounds(a)?),
        Command::JpScan(a) => ("jp-scan", commands::jp_scan(a)?),
        Command::ConvolveBuild(a) => ("convolve-build", commands::convolve_build(a)?),
        Command::DensityScan(a) => ("density-scan", commands::density_scan(a)?),
    };
    let mut report = Map::new();
    report.insert("schema".into(), json!(SCHEMA));
    report.insert("command".into(), json!(name));
    report.insert("input".into(), json!({ "argv": replay_argv(argv) }));
    report.insert("verdict".into(), json!(outcome.verdict));
    report.extend(outcome.body);
    let text = serde_json::to_string_pretty(&Value::Object(report))?;
    match &cli.out {
        Some(path) => std::fs::write(path, text + "\n")
            .with_context(|| format!("writing {}", path.display()))?,
        None => writeln!(std::io::stdout().lock(), "{text}")?,
    }
    Ok(outcome.verdict.map_or(0, Verdict::exit_code))
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli, &argv) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sink_flags_are_not_echoed() {
        let argv: Vec<String> = [
            "bin",
            "jp-scan",
            "--out",
            "a.json",
            "--atoms",
            "0,1",
            "--csv=b.csv",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect();
        assert_eq!(replay_argv(&argv), ["jp-scan", "--atoms", "0,1"]);
    }
}
