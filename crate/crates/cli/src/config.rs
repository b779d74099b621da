//! Command-line flags and their validated form.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fxi_core::ring::DEFAULT_CAPACITY;
use fxi_core::{Capacity, PrimeModulus, RationalValue};

use crate::CliError;

pub const CAPACITY_ENV: &str = "FXI_CAPACITY";

#[derive(Debug, Parser)]
#[command(
    name = "fxi",
    version,
    about = "Frobenius length tables, step functions and estimates over F_p"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Length table ℓ_{e,t} and C_{e,t} for each e.
    Table(Options),
    /// Step functions ξ_{f,e} as breakpoint lists, and brackets at --alpha.
    Xi(Options),
    /// Hilbert–Kunz, F-signature and F-pure threshold estimate sequences.
    Estimates(Options),
    /// F-signature of the pair (R, f^t) at each --t, with 1 - φ_{f,e}(t).
    Pair(Options),
    /// Closed-form data for a monomial (--exponents or --f).
    Monomial(Options),
    /// Exact identities on --f, or on the built-in corpus.
    Verify(Options),
    /// Times the chain strategies against each other on the same input.
    Bench(Options),
}

impl Command {
    pub fn parts(&self) -> (CommandKind, &Options) {
        match self {
            Command::Table(o) => (CommandKind::Table, o),
            Command::Xi(o) => (CommandKind::Xi, o),
            Command::Estimates(o) => (CommandKind::Estimates, o),
            Command::Pair(o) => (CommandKind::Pair, o),
            Command::Monomial(o) => (CommandKind::Monomial, o),
            Command::Verify(o) => (CommandKind::Verify, o),
            Command::Bench(o) => (CommandKind::Bench, o),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Table,
    Xi,
    Estimates,
    Pair,
    Monomial,
    Verify,
    Bench,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Table => "table",
            CommandKind::Xi => "xi",
            CommandKind::Estimates => "estimates",
            CommandKind::Pair => "pair",
            CommandKind::Monomial => "monomial",
            CommandKind::Verify => "verify",
            CommandKind::Bench => "bench",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Dat,
}

/// `a` or `a..b`, both ends inclusive.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ERange {
    pub lo: u32,
    pub hi: u32,
    /// Written as a single number.
    pub single: bool,
}

impl FromStr for ERange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| format!("invalid exponent `{t}` in e range `{s}`"))
        };
        match s.split_once("..") {
            Some((a, b)) => {
                let (lo, hi) = (num(a)?, num(b)?);
                if lo > hi {
                    return Err(format!("empty e range `{s}`"));
                }
                Ok(ERange {
                    lo,
                    hi,
                    single: false,
                })
            }
            None => {
                let e = num(s)?;
                Ok(ERange {
                    lo: e,
                    hi: e,
                    single: true,
                })
            }
        }
    }
}

#[derive(Clone, Debug, Default, Args)]
pub struct Options {
    /// Polynomial, e.g. "x^2 + y^3" or "x1*x2^2*x3^3".
    #[arg(long)]
    pub f: Option<String>,
    /// Number of variables n+1 (default: inferred from --f, at least 2).
    #[arg(long)]
    pub nvars: Option<usize>,
    #[arg(long)]
    pub p: Option<u64>,
    /// Exponent e or inclusive range a..b.
    #[arg(long)]
    pub e: Option<ERange>,
    /// Rational exponents for `pair`, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub t: Vec<RationalValue>,
    /// Rational points for `xi` brackets, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub alpha: Vec<RationalValue>,
    /// Monomial exponents for `monomial`, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub exponents: Vec<u32>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output file (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Directory for `.dat` plot files (`xi`, `monomial`).
    #[arg(long)]
    pub dat_dir: Option<PathBuf>,
    /// Largest ring dimension p^(e(n+1)) allowed.
    #[arg(long)]
    pub capacity: Option<u64>,
    /// Seed for the random input of `bench` when --f is absent.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, hide = true)]
    pub corrupt: bool,
}

/// Validated options for one run.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: CommandKind,
    pub f: Option<String>,
    pub nvars: usize,
    pub p: Option<PrimeModulus>,
    pub e: Option<ERange>,
    pub t: Vec<RationalValue>,
    pub alpha: Vec<RationalValue>,
    pub exponents: Vec<u32>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub dat_dir: Option<PathBuf>,
    pub capacity: Capacity,
    pub seed: u64,
    pub corrupt: bool,
}

impl RunConfig {
    pub fn from_options(
        command: CommandKind,
        o: &Options,
        env_capacity: Option<&str>,
    ) -> Result<Self, CliError> {
        let p =
            o.p.map(PrimeModulus::new)
                .transpose()
                .map_err(|e| CliError::Usage(e.to_string()))?;
        let capacity = match (o.capacity, env_capacity) {
            (Some(c), _) => c,
            (None, Some(s)) => s.trim().parse().map_err(|_| {
                CliError::Usage(format!(
                    "{CAPACITY_ENV} must be a positive integer, got `{s}`"
                ))
            })?,
            (None, None) => DEFAULT_CAPACITY,
        };
        if capacity == 0 {
            return Err(CliError::Usage("capacity must be positive".into()));
        }
        let nvars = match (o.nvars, &o.f) {
            (Some(n), _) => n,
            (None, Some(f)) => infer_nvars(f),
            (None, None) => 2,
        };
        for t in &o.t {
            if !t.in_unit_interval() {
                return Err(CliError::Usage(format!("t = {t} is not in [0, 1]")));
            }
        }
        for a in &o.alpha {
            if !a.in_unit_interval() || a.is_zero() {
                return Err(CliError::Usage(format!("alpha = {a} is not in (0, 1]")));
            }
        }
        let format = o.format.unwrap_or(match command {
            CommandKind::Table => Format::Csv,
            _ => Format::Json,
        });
        let config = RunConfig {
            command,
            f: o.f.clone(),
            nvars,
            p,
            e: o.e,
            t: o.t.clone(),
            alpha: o.alpha.clone(),
            exponents: o.exponents.clone(),
            format,
            out: o.out.clone(),
            dat_dir: o.dat_dir.clone(),
            capacity: Capacity(capacity),
            seed: o.seed,
            corrupt: o.corrupt,
        };
        config.check_required()?;
        Ok(config)
    }

    fn check_required(&self) -> Result<(), CliError> {
        let need = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(CliError::Usage(format!(
                    "`{}` needs {what}",
                    self.command.name()
                )))
            }
        };
        use CommandKind::*;
        match self.command {
            Table | Xi | Estimates | Pair => {
                need(self.f.is_some(), "--f")?;
                need(self.p.is_some(), "--p")?;
                need(self.e.is_some(), "--e")?;
            }
            Monomial => {
                need(self.p.is_some(), "--p")?;
                need(
                    self.f.is_some() != !self.exponents.is_empty(),
                    "exactly one of --f and --exponents",
                )?;
            }
            Verify => {
                if self.f.is_some() {
                    need(self.p.is_some(), "--p together with --f")?;
                }
            }
            Bench => {
                need(self.p.is_some(), "--p")?;
                need(self.e.is_some(), "--e")?;
            }
        }
        if self.command == Pair {
            need(!self.t.is_empty(), "at least one --t")?;
        }
        if self.format == Format::Dat && !matches!(self.command, Xi | Monomial) {
            return Err(CliError::Usage(format!(
                "--format dat is only available for `xi` and `monomial`, not `{}`",
                self.command.name()
            )));
        }
        Ok(())
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.p.expect("checked by from_options")
    }

    pub fn e_range(&self) -> ERange {
        self.e.expect("checked by from_options")
    }
}

/// Largest variable mentioned in `text`, and at least 2.
pub fn infer_nvars(text: &str) -> usize {
    let bytes = text.as_bytes();
    let mut n = 2;
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'x' => {
                let start = i + 1;
                let mut j = start;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                if j > start {
                    if let Ok(k) = text[start..j].parse::<usize>() {
                        n = n.max(k);
                    }
                }
                i = j;
                continue;
            }
            b'z' => n = n.max(3),
            b'w' => n = n.max(4),
            _ => {}
        }
        i += 1;
    }
    n
}
