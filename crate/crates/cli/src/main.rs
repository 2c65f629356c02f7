#![allow(clippy::neg_cmp_op_on_partial_ord)] // NaN must fail tolerance checks.

mod args;
mod commands;
mod error;
mod table;

use std::process::ExitCode;

use clap::Parser;

use crate::args::{Cli, Command};
use crate::error::{CliError, CliResult};

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Spectrum(common) => {
            let run = common.run_spec()?;
            commands::emit(&run, &commands::spectrum(&run))
        }
        Command::Regime(common) => {
            let run = common.run_spec()?;
            commands::emit(&run, &commands::regime(&run))
        }
        Command::FigureData(common) => {
            let run = common.run_spec()?;
            commands::emit(&run, &commands::figure_data(&run))
        }
        Command::Wavefunction(args) => {
            let run = args.common.run_spec()?;
            let report = commands::wavefunction(&run, &args)?;
            commands::emit(&run, &report)
        }
        Command::Verify(args) => {
            let run = args.common.run_spec()?;
            let (report, ok) = commands::verify(&run, &args);
            commands::emit(&run, &report)?;
            let summary = commands::verify_summary(&report);
            if ok {
                eprintln!("{summary}");
                Ok(())
            } else {
                Err(CliError::Verification(summary))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        // A closed downstream pipe (`| head`) is not a failure.
        Err(CliError::Io { source, .. }) if source.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
