//! `h2knot` command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 domain error (non-coprime input,
//! even order where odd is required, ...), 3 internal assertion failure or a
//! failed regression check, 4 I/O error.

mod enumerate;
mod render;
pub mod selftest;

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use h2knot_core as core;

pub use enumerate::{enumerate, load_cache, CacheLoad};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Assume {
    NegToPos,
    Amphicheiral,
}

#[derive(Debug, Parser)]
#[command(name = "h2knot", version, about = "H(2)-unknotting numbers of 2-bridge links")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify u2 of S(p, q): exact value or bounds.
    #[command(allow_negative_numbers = true)]
    U2 {
        p: i64,
        q: i64,
        /// Largest k tried in the Berge congruences (default p).
        #[arg(long)]
        kmax: Option<u64>,
    },
    /// List Berge congruence witnesses for L(p, q).
    #[command(allow_negative_numbers = true)]
    Berge {
        p: i64,
        q: i64,
        #[arg(long)]
        kmax: Option<u64>,
    },
    /// Correction terms d(L(p, q), i).
    #[command(allow_negative_numbers = true)]
    Dtable {
        p: i64,
        q: i64,
        /// Index by the recursion index instead of the first Chern class.
        #[arg(long)]
        raw: bool,
    },
    /// Search for even nonnegative matchings of L(p, q).
    #[command(name = "match", allow_negative_numbers = true)]
    Match { p: i64, q: i64 },
    /// Transfer the matching obstruction to knots with double branched
    /// cover p/q surgery on a strongly invertible knot.
    #[command(allow_negative_numbers = true)]
    Transfer {
        p: i64,
        q: i64,
        #[arg(long, value_enum)]
        assume: Assume,
    },
    /// Decide u2 = 1 for the composite S(p, q) # S(r, s).
    #[command(allow_negative_numbers = true)]
    Composite {
        p: i64,
        q: i64,
        r: i64,
        s: i64,
        /// Compare 2-bridge links up to mirror image.
        #[arg(long)]
        mirror: bool,
    },
    /// Upper bound on u2 from the continued fraction suffixes.
    #[command(allow_negative_numbers = true)]
    Bound { p: i64, q: i64 },
    /// Classify every 2-bridge link with p <= max-p.
    Enumerate {
        #[arg(long)]
        max_p: u64,
        #[arg(long)]
        knots_only: bool,
        /// JSON-lines cache of earlier results, extended in place.
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Check the embedded fixture catalog.
    Catalog,
    /// Run the built-in regression suite.
    Selftest,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(core::Error),
    Internal(String),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Domain(e) if e.is_internal() => 3,
            CliError::Domain(_) => 2,
            CliError::Internal(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Domain(e) => write!(f, "error: {e}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<core::Error> for CliError {
    fn from(e: core::Error) -> Self {
        CliError::Domain(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Internal(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Parses `argv` (program name first) and runs the subcommand.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let informational = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let text = e.render().to_string();
            if informational {
                let _ = write!(out, "{text}");
                return 0;
            }
            let _ = write!(err, "{text}");
            return 1;
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            e.exit_code()
        }
    }
}

fn link(p: i64, q: i64) -> CliResult<core::TwoBridgeLink> {
    Ok(core::normalize(p, q)?)
}

pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<u8> {
    let fmt = cli.format;
    match &cli.command {
        Command::U2 { p, q, kmax } => render::u2(&link(*p, *q)?, *kmax, fmt, out)?,
        Command::Berge { p, q, kmax } => {
            if *p <= 0 {
                return Err(core::Error::InvalidParameter(format!("p must be positive, got {p}")).into());
            }
            render::berge(*p as u64, *q, *kmax, fmt, out)?
        }
        Command::Dtable { p, q, raw } => render::dtable(&link(*p, *q)?, *raw, fmt, out)?,
        Command::Match { p, q } => render::matching(&link(*p, *q)?, fmt, out)?,
        Command::Transfer { p, q, assume } => {
            let a = match assume {
                Assume::NegToPos => core::TransferAssumption::NegToPos,
                Assume::Amphicheiral => core::TransferAssumption::Amphicheiral,
            };
            render::transfer(&link(*p, *q)?, a, fmt, out)?
        }
        Command::Composite { p, q, r, s, mirror } => {
            render::composite(&link(*p, *q)?, &link(*r, *s)?, *mirror, fmt, out)?
        }
        Command::Bound { p, q } => render::bound(&link(*p, *q)?, fmt, out)?,
        Command::Enumerate { max_p, knots_only, cache } => {
            let records = enumerate(*max_p, *knots_only, cache.as_deref(), err)?;
            render::enumeration(&records, fmt, out)?
        }
        Command::Catalog => return render::catalog(fmt, out),
        Command::Selftest => {
            let failures = selftest::run(out)?;
            return Ok(if failures == 0 { 0 } else { 3 });
        }
    }
    Ok(0)
}
