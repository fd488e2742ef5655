use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use satshift_cli::commands::{self, render_validation};
use satshift_cli::output::{render, Format};

/// Relativistic frequency shifts and quantum-metrology precision bounds for
/// ground-satellite photon exchange.
#[derive(Parser)]
#[command(name = "satshift", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print geodesic constants, angular functions, and frequency shifts for
    /// the built-in configurations, checked against reference values
    Table1 {
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Write the output to a file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Replace the per-row tolerances with one relative tolerance
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Print precision bounds for the built-in configurations, checked
    /// against reference values
    Table2 {
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Resolve a scenario file and print its full report
    Analyze {
        /// Path to a scenario file (flat key = value format)
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check every reference value and exit nonzero on any miss
    Validate {
        /// Replace the per-row tolerances with one relative tolerance
        #[arg(long)]
        tolerance: Option<f64>,
    },
}

fn emit(text: &str, out: Option<&PathBuf>) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, (String, u8)> {
    let fail = |e: satshift_core::Error| (e.to_string(), commands::exit_code_for(&e));
    let io_fail = |e: std::io::Error| (format!("could not write output: {e}"), 1);

    match cli.command {
        Command::Table1 {
            format,
            out,
            tolerance,
        } => {
            let rows = commands::cmd_table1(tolerance).map_err(fail)?;
            emit(&render(&rows, format), out.as_ref()).map_err(io_fail)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Table2 {
            format,
            out,
            tolerance,
        } => {
            let rows = commands::cmd_table2(tolerance).map_err(fail)?;
            emit(&render(&rows, format), out.as_ref()).map_err(io_fail)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Analyze {
            scenario,
            format,
            out,
        } => {
            let rows = commands::cmd_analyze(&scenario).map_err(fail)?;
            emit(&render(&rows, format), out.as_ref()).map_err(io_fail)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Validate { tolerance } => {
            let rows = commands::cmd_validate(tolerance).map_err(fail)?;
            print!("{}", render_validation(&rows));
            let all_pass = rows.iter().all(|v| v.row.within_tolerance == Some(true));
            Ok(if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err((message, code)) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
