use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use lapbie::harness::{run_case, run_convergence, run_detect, run_identities, run_oracle, CaseConfig, Report};

#[derive(Parser)]
#[command(name = "lapbie", version, about = "Boundary-integral Laplace solvers and verification harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the JSON report here instead of the path in the config.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    /// Print only the pass/fail summary instead of the full report.
    #[arg(long, short, global = true)]
    quiet: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the configured case and check it against its diagnostics.
    Solve { config: PathBuf },
    /// Repeat the case at several resolutions and check error decay.
    Convergence {
        config: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "32,64,128")]
        nodes: Vec<usize>,
    },
    /// Compute the Robin constant of the outer curve.
    DetectExceptional { config: PathBuf },
    /// Run the operator identity suite on the configured geometry.
    Identities { config: PathBuf },
    /// Compare assembled operators with the fine-grid quadrature oracle.
    Oracle { config: PathBuf },
}

fn load(path: &PathBuf) -> anyhow::Result<CaseConfig> {
    CaseConfig::from_path(path).with_context(|| format!("reading config {}", path.display()))
}

fn run(cli: &Cli) -> anyhow::Result<(Report, Option<PathBuf>)> {
    let (config, report) = match &cli.command {
        Command::Solve { config } => {
            let cfg = load(config)?;
            let r = run_case(&cfg)?;
            (cfg, r)
        }
        Command::Convergence { config, nodes } => {
            let cfg = load(config)?;
            let r = run_convergence(&cfg, nodes)?;
            (cfg, r)
        }
        Command::DetectExceptional { config } => {
            let cfg = load(config)?;
            let r = run_detect(&cfg)?;
            (cfg, r)
        }
        Command::Identities { config } => {
            let cfg = load(config)?;
            let r = run_identities(&cfg)?;
            (cfg, r)
        }
        Command::Oracle { config } => {
            let cfg = load(config)?;
            let r = run_oracle(&cfg)?;
            (cfg, r)
        }
    };
    Ok((report, cli.report.clone().or(config.output.report)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, path)) => {
            if let Some(path) = &path {
                if let Err(e) = report.write(path) {
                    eprintln!("error: writing report {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            if cli.quiet {
                for c in &report.checks {
                    let status = if c.passed { "PASS" } else { "FAIL" };
                    println!("{status} {} = {:e} ({} {:e})", c.name, c.value, c.relation, c.limit);
                }
            } else {
                match report.to_json() {
                    Ok(json) => println!("{json}"),
                    Err(e) => {
                        eprintln!("error: {e}");
                        return ExitCode::from(2);
                    }
                }
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                for c in report.failures() {
                    eprintln!("failed: {} = {:e} (limit {} {:e})", c.name, c.value, c.relation, c.limit);
                }
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
