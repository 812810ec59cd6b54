//! Command-line front end: claim verification, fibers, certificates and
//! grid scans over the built-in maps or user-supplied ones.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use polycert::certify::CertifyError;
use polycert::claims::ClaimError;
use polycert::maps::{MapError, PolyMap, Registry};
use polycert::parser::{parse_poly, ParseError};
use polycert::ratfunc::RatFuncError;
use polycert::systems::SolveError;

mod commands;
pub mod json;
pub mod scan;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Certify(#[from] CertifyError),
    #[error(transparent)]
    Claim(#[from] ClaimError),
    #[error(transparent)]
    RatFunc(#[from] RatFuncError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed record: {0}")]
    Record(String),
}

impl CliError {
    pub fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }
}

/// Exit status of one command.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Failed = 1,
    Error = 2,
}

#[derive(Debug, Parser)]
#[command(
    name = "polycert",
    version,
    about = "Certified checks for planar polynomial maps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    #[value(alias = "approximate")]
    Approx,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct MapArg {
    /// Built-in map: F, phi, psi, Ftilde, f, ftilde.
    #[arg(long)]
    map: Option<String>,
    /// Custom map as "P1;P2" in x and y.
    #[arg(long = "map-def", value_name = "P1;P2")]
    map_def: Option<String>,
}

impl MapArg {
    fn resolve(&self) -> Result<PolyMap, CliError> {
        if let Some(def) = &self.map_def {
            let comps = def
                .split(';')
                .map(parse_poly)
                .collect::<Result<Vec<_>, _>>()?;
            return Ok(PolyMap::new("custom", comps, 2)?);
        }
        let name = self.map.as_deref().expect("clap enforces the group");
        Ok(Registry::new().get(name)?.clone())
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Verify claims and print a report.
    Verify {
        /// theorem1, prop2, prop3, example4 or all.
        #[arg(long)]
        claim: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Preimages of one target point.
    Fiber {
        #[command(flatten)]
        map: MapArg,
        /// Target "a,b" with rational coordinates.
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        /// Default: exact when the map allows it.
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        /// Refine certified boxes to this width.
        #[arg(long)]
        width: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Jacobian determinant, its value at a point or a sign certificate.
    Jacobian {
        #[command(flatten)]
        map: MapArg,
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
        /// Certify the sign of the determinant.
        #[arg(long)]
        certify: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fiber counts over a rectangular grid of targets, as CSV.
    Scan {
        #[command(flatten)]
        map: MapArg,
        /// "x0,x1,y0,y1".
        #[arg(long, allow_hyphen_values = true)]
        rect: String,
        /// Intervals per axis; 0 scans the corner (x0, y0) only.
        #[arg(long)]
        steps: u32,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Search a grid for two points with the same image.
    Witness {
        #[command(flatten)]
        map: MapArg,
        /// "x0,x1,y0,y1,step".
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a map at a rational point.
    Eval {
        #[command(flatten)]
        map: MapArg,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Re-derive a serialized certificate, fiber, witness or report.
    Replay {
        #[arg(long)]
        cert: PathBuf,
    },
    /// Print a polynomial in canonical form.
    Parse {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
}

/// Runs one command line; returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                Status::Error as i32
            } else {
                let _ = write!(out, "{text}");
                Status::Ok as i32
            };
        }
    };
    match commands::dispatch(cli.command, out) {
        Ok(s) => s as i32,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            Status::Error as i32
        }
    }
}
