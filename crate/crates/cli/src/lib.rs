//! Command-line front end for `fxi-core`: argument handling, the report
//! document and its CSV, JSON and dat renderings.

pub mod commands;
pub mod config;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::Parser;

pub use commands::{run, Outcome};
pub use config::{Cli, CommandKind, ERange, Format, Options, RunConfig, CAPACITY_ENV};
pub use report::{JsonInt, ReportDoc};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Bad flags, unparsable input or invalid values.
    Usage(String),
    Capacity(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => EXIT_USAGE,
            CliError::Capacity(_) => EXIT_CAPACITY,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Capacity(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

impl From<fxi_core::Error> for CliError {
    fn from(e: fxi_core::Error) -> Self {
        if e.is_capacity() {
            CliError::Capacity(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

/// The main text output of a run in the configured format.
pub fn render(config: &RunConfig, outcome: &Outcome) -> String {
    match config.format {
        Format::Json => outcome.doc.to_json(),
        Format::Csv if config.command == CommandKind::Table => outcome.doc.table_csv(),
        Format::Csv => outcome.doc.long_csv(),
        Format::Dat => {
            let mut out = String::new();
            for (i, (name, text)) in outcome.dat_files.iter().enumerate() {
                if i > 0 {
                    out.push_str("\n\n");
                }
                out.push_str(&format!("# file {name}\n"));
                out.push_str(text);
            }
            out
        }
    }
}

fn write_outputs(config: &RunConfig, outcome: &Outcome) -> Result<(), CliError> {
    if let Some(dir) = &config.dat_dir {
        std::fs::create_dir_all(dir)?;
        for (name, text) in &outcome.dat_files {
            std::fs::write(dir.join(name), text)?;
        }
    }
    let text = render(config, outcome);
    match &config.out {
        Some(path) => write_file(path, &text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(stdout.flush()?)
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent)?;
    }
    Ok(std::fs::write(path, text)?)
}

/// Parses `args` (including the program name), runs the command, writes its
/// output and returns the process exit code.
pub fn execute<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let (kind, options) = cli.command.parts();
    let env_capacity = std::env::var(CAPACITY_ENV).ok();
    let result =
        RunConfig::from_options(kind, options, env_capacity.as_deref()).and_then(|config| {
            let outcome = run(&config)?;
            for notice in &outcome.doc.notices {
                eprintln!("note: {notice}");
            }
            write_outputs(&config, &outcome)?;
            Ok(outcome.status)
        });
    match result {
        Ok(status) => status,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
