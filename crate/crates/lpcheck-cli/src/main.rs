//! Batch front door for the verification suites: each subcommand runs one
//! named experiment battery, prints one line per assertion, and optionally
//! writes a JSON report and plot-ready CSV files. Exit code 0 means every
//! assertion passed, 1 means at least one failed, 2 means the configuration
//! was unusable.

mod params;
mod suites;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use lpcheck_core::report::SuiteReport;
use params::{Overrides, Params};
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "lpcheck",
    about = "Runs the kernel, decomposition, transference, and counterexample check suites"
)]
struct Cli {
    /// Flat key=value config file; flags override its entries.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// RNG seed recorded in every report.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Grid step for sampled kernels and signals.
    #[arg(long, global = true)]
    delta: Option<f64>,
    /// Grid half-width.
    #[arg(long, global = true)]
    window: Option<f64>,
    /// Dyadic block count N.
    #[arg(long, global = true)]
    blocks: Option<i32>,
    /// Negative-side block count M.
    #[arg(long, global = true)]
    neg_blocks: Option<i32>,
    /// Randomized trial count.
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Tolerance for the configurable residual assertions.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Finite abelian group, e.g. Z8 or Z4xZ2.
    #[arg(long, global = true)]
    group: Option<String>,
    /// Representation dimension.
    #[arg(long, global = true)]
    dim: Option<usize>,
    /// Directory for CSV exports.
    #[arg(long, global = true, value_name = "DIR")]
    csv: Option<PathBuf>,
    /// Path for the JSON report.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Partition identities and kernel closed forms.
    Kernels,
    /// Signed decompositions, multiplier bounds, and shift-difference stability.
    LpVerify,
    /// Transferred convolution bounds, algebra identities, and spectrum oracles.
    TransferVerify,
    /// Measure decomposition, orbit moduli, and analytic Lebesgue parts.
    AnalyticDemo,
    /// Witnessed counterexamples.
    Counterexample {
        /// Which counterexample to run: gaussian, cocountable, or all.
        #[arg(default_value = "all")]
        which: String,
    },
    /// Every suite in order.
    All,
}

impl Cli {
    fn overrides(&self) -> Overrides {
        Overrides {
            seed: self.seed,
            delta: self.delta,
            window: self.window,
            blocks: self.blocks,
            neg_blocks: self.neg_blocks,
            trials: self.trials,
            tol: self.tol,
            group: self.group.clone(),
            dim: self.dim,
            csv: self.csv.clone(),
            json: self.json.clone(),
        }
    }
}

fn run_suites(cli: &Cli, params: &Params) -> Result<Vec<SuiteReport>> {
    let reports = match &cli.command {
        Command::Kernels => vec![suites::kernels(params)?],
        Command::LpVerify => vec![suites::lp_verify(params)?],
        Command::TransferVerify => vec![suites::transfer_verify(params)?],
        Command::AnalyticDemo => vec![suites::analytic_demo(params)?],
        Command::Counterexample { which } => vec![suites::counterexample(params, which)?],
        Command::All => vec![
            suites::kernels(params)?,
            suites::lp_verify(params)?,
            suites::transfer_verify(params)?,
            suites::analytic_demo(params)?,
            suites::counterexample(params, "all")?,
        ],
    };
    Ok(reports)
}

fn write_json(path: &PathBuf, reports: &[SuiteReport]) -> Result<()> {
    let body = if reports.len() == 1 {
        reports[0].to_json()
    } else {
        serde_json::to_string_pretty(reports).expect("reports serialize")
    };
    fs::write(path, body + "\n")
        .with_context(|| format!("writing JSON report {}", path.display()))?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let params = match Params::resolve(cli.overrides(), cli.config.as_ref()) {
        Ok(params) => params,
        Err(err) => {
            eprintln!("config error: {err:#}");
            return ExitCode::from(2);
        }
    };

    let reports = match run_suites(&cli, &params) {
        Ok(reports) => reports,
        Err(err) => {
            eprintln!("error: {err:#}");
            return ExitCode::from(2);
        }
    };

    let mut failing: Vec<String> = Vec::new();
    for report in &reports {
        for assertion in &report.assertions {
            println!("{assertion}");
            if !assertion.pass {
                failing.push(format!("{}/{}", report.suite, assertion.id));
            }
        }
        println!(
            "suite {}: {} ({} assertions, seed {})",
            report.suite,
            if report.pass { "pass" } else { "FAIL" },
            report.assertions.len(),
            report.seed
        );
    }

    if let Some(path) = &params.json {
        if let Err(err) = write_json(path, &reports) {
            eprintln!("error: {err:#}");
            return ExitCode::from(2);
        }
    }

    if failing.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failing assertions: {}", failing.join(", "));
        ExitCode::from(1)
    }
}
