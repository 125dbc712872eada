use std::io::Write;
use std::panic;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use qsuspend::{run, Cli, CliError, Format};

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("QSUSPEND_THREADS") else {
        return Ok(());
    };
    let k: usize = raw.trim().parse().ok().filter(|&k| k > 0).ok_or_else(|| {
        CliError::Config(format!("QSUSPEND_THREADS must be a positive integer, got `{raw}`"))
    })?;
    rayon::ThreadPoolBuilder::new().num_threads(k).build_global().map_err(|e| CliError::Config(e.to_string()))
}

fn emit(cli: &Cli, json: &serde_json::Value, text: &str) {
    match cli.format {
        Format::Json => {
            let mut out = std::io::stdout().lock();
            let _ = serde_json::to_writer_pretty(&mut out, json);
            let _ = writeln!(out);
        }
        Format::Text => eprint!("{text}"),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    match panic::catch_unwind(|| run(&cli)) {
        Ok(Ok(out)) => {
            emit(&cli, &out.json, &out.text);
            ExitCode::SUCCESS
        }
        Ok(Err(CliError::Verification(report))) => {
            emit(&cli, &report.to_json(), &report.to_text());
            ExitCode::from(CliError::Verification(report).exit_code() as u8)
        }
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
        Err(_) => {
            eprintln!("error: internal invariant violated");
            ExitCode::from(3)
        }
    }
}
