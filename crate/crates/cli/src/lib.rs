//! Command-line front end: argument parsing, output formatting and the
//! error object written on failure.

pub mod args;
pub mod commands;
pub mod error;

use std::io::Write;

use clap::Parser;
use serde_json::json;

pub use args::{Cli, Command, Format, Options, ShapeKind, SweepRange};
pub use commands::{execute, Report};
pub use error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

/// Environment variable capping the worker threads.
pub const THREADS_ENV: &str = "HELMHOLTZ3D_THREADS";

/// Renders a report in the requested format.
pub fn render(command: &str, report: &Report, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let v = json!({
                "schema_version": SCHEMA_VERSION,
                "command": command,
                "warnings": report.warnings,
                "data": report.data,
            });
            serde_json::to_string_pretty(&v).map(|s| s + "\n").map_err(|e| CliError::Output(e.to_string()))
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let out = |e: csv::Error| CliError::Output(e.to_string());
            w.write_record(&report.header).map_err(out)?;
            for r in &report.rows {
                w.write_record(r).map_err(out)?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
        }
    }
}

/// Sizes the global thread pool from [`THREADS_ENV`]; returns a warning
/// when the value is unusable.
pub fn configure_threads(value: Option<&str>) -> Option<String> {
    let v = value?;
    match v.trim().parse::<usize>() {
        Ok(n) if n >= 1 => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .err()
            .map(|e| format!("{THREADS_ENV}: {e}")),
        _ => Some(format!("{THREADS_ENV}={v} is not a positive integer; using the default thread count")),
    }
}

/// Runs the program on `argv`, writing to `stdout`/`stderr`, and returns the
/// exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return 0;
            }
            let err = CliError::usage(e.to_string().trim().to_string());
            let _ = writeln!(stderr, "{}", err.to_json());
            return err.exit_code();
        }
    };
    let mut env_warning = configure_threads(std::env::var(THREADS_ENV).ok().as_deref());
    let result = execute(&cli.command).and_then(|mut report| {
        if let Some(w) = env_warning.take() {
            report.warnings.insert(0, w);
        }
        let o = cli.command.options();
        let text = render(cli.command.name(), &report, o.format)?;
        if o.format == Format::Csv {
            for w in &report.warnings {
                let _ = writeln!(stderr, "warning: {w}");
            }
        }
        match &o.out {
            Some(path) => std::fs::write(path, text).map_err(|e| CliError::Output(format!("{}: {e}", path.display()))),
            None => stdout.write_all(text.as_bytes()).map_err(|e| CliError::Output(e.to_string())),
        }
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "{}", e.to_json());
            e.exit_code()
        }
    }
}
