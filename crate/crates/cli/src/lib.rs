//! The `gale` command line.
//!
//! Exit status: 0 when the outcome is verified or true, 1 when it is false or
//! absent, 2 on errors and indeterminate outcomes, 64 on usage errors.

mod commands;
mod recheck;
pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gale_core::FieldSpec;

pub use report::{Document, Fact, Report, Status};

pub const EXIT_ERROR: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(name = "gale", version, about = "Exact Gale transforms of point configurations and their certificates")]
pub struct Cli {
    /// Output format; both carry the same facts.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Gale transform of a configuration file, verified by GᵀG' = 0.
    Transform {
        file: PathBuf,
        /// Also write the transform to this file.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Decide a property of a configuration.
    Check { property: Property, file: PathBuf },
    /// Complete γ = r+1+d points to 2r+2 self-associated points.
    Complete {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Rational normal curve through r+3 points of ℙʳ in linearly general position.
    FitRnc { file: PathBuf },
    /// Compare the Gale transform of ν_h of n random parameters with ν_{n−h−2}.
    GoppaCheck {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        h: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        field: FieldArg,
    },
    /// Linear codes.
    #[command(subcommand)]
    Code(CodeCommand),
    /// Determinantal loci of trilinear forms.
    #[command(subcommand)]
    Detnl(DetnlCommand),
    /// Worked examples.
    #[command(subcommand)]
    Demo(DemoCommand),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Property {
    Lgp,
    Stable,
    Semistable,
    SelfAssociated,
    Ag,
    TwoBases,
}

/// `--p P` selects GF(P); without it arithmetic is over ℚ.
#[derive(Args, Debug, Clone, Copy)]
pub struct FieldArg {
    /// Prime modulus; rationals when omitted.
    #[arg(long)]
    pub p: Option<u64>,
}

#[derive(Subcommand, Debug)]
pub enum CodeCommand {
    /// Generalized Reed–Solomon code on the points (1:0), …, (1:p−1), (0:1).
    Grs {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Dual of the code generated by the rows of a matrix file.
    Dual { file: PathBuf },
    /// Minimum distance of the code generated by the rows of a matrix file.
    Mindist { file: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SamplerArg {
    /// Built from points through which the locus is forced to pass.
    Points,
    /// Uniformly random entries.
    Uniform,
}

#[derive(Subcommand, Debug)]
pub enum DetnlCommand {
    /// Check that the two determinantal loci are Gale dual after Veronese embedding.
    Verify {
        #[arg(long, required_unless_present = "tensor")]
        r: Option<usize>,
        #[arg(long, required_unless_present = "tensor")]
        s: Option<usize>,
        #[arg(long, required_unless_present = "tensor")]
        p: Option<u64>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = gale_core::detnl::DEFAULT_RETRIES)]
        retries: usize,
        /// Defaults to `points` when r or s is 2, else `uniform`.
        #[arg(long, value_enum)]
        sampler: Option<SamplerArg>,
        /// Check this tensor file instead of sampling one.
        #[arg(long, conflicts_with_all = ["r", "s", "p"])]
        tensor: Option<PathBuf>,
        /// Write the checked tensor to this file.
        #[arg(long)]
        save_tensor: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum DemoCommand {
    /// Six points on a conic are self-associated and Gorenstein; six general points are not.
    Pascal {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        field: FieldArg,
    },
    /// Seven points of ℙ³ project from the eighth base point of their net of
    /// quadrics onto their Gale transform.
    SevenP3 {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = gale_core::demo::SEVEN_P3_MIN_PRIME)]
        p: u64,
        #[arg(long, default_value_t = 10)]
        retries: usize,
        /// Use seven points on a twisted cubic, where the quadrics share a curve.
        #[arg(long)]
        twisted_cubic: bool,
    },
    /// Eleven points of ℙ⁶ complete to self-associated sets through one plane.
    ElevenP6 {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        runs: usize,
        #[command(flatten)]
        field: FieldArg,
    },
}

/// What a run printed and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(msg: impl std::fmt::Display) -> Self {
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {msg}\n\nFor more information, try '--help'.\n"),
        }
    }

    fn error(msg: impl std::fmt::Display) -> Self {
        Outcome {
            code: EXIT_ERROR,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

/// Failures after the command line was accepted.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Input { path: PathBuf, source: gale_core::Error },
    #[error(transparent)]
    Core(#[from] gale_core::Error),
    #[error("certificate re-check failed: {0}")]
    Recheck(String),
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    if let Err(msg) = validate(&cli.command) {
        return Outcome::usage(msg);
    }
    match commands::execute(&cli.command) {
        Ok(report) => Outcome {
            code: report.status().exit_code(),
            stdout: match cli.format {
                Format::Text => report.to_text(),
                Format::Json => report.to_json(),
            },
            stderr: String::new(),
        },
        Err(e) => Outcome::error(e),
    }
}

fn prime(p: u64) -> Result<FieldSpec, String> {
    FieldSpec::prime(p).map_err(|e| format!("--p: {e}"))
}

impl FieldArg {
    pub fn field(&self) -> Result<FieldSpec, String> {
        self.p.map_or(Ok(FieldSpec::Rationals), prime)
    }
}

/// Flag checks that need no computation beyond primality.
fn validate(cmd: &Command) -> Result<(), String> {
    match cmd {
        Command::GoppaCheck { n, h, field, .. } => {
            let f = field.field()?;
            if *h < 1 || *h + 3 > *n {
                return Err(format!("need 1 <= h <= n-3, got n = {n}, h = {h}"));
            }
            if let Some(p) = f.modulus() {
                if *n as u64 > p {
                    return Err(format!("need n <= p = {p} distinct affine parameters, got n = {n}"));
                }
            }
        }
        Command::Code(CodeCommand::Grs { p, n, k }) => {
            prime(*p)?;
            if *n as u64 > p + 1 {
                return Err(format!("a GRS code over GF({p}) has length at most {}", p + 1));
            }
            if *k < 1 || k >= n {
                return Err(format!("need 1 <= k < n, got n = {n}, k = {k}"));
            }
        }
        Command::Detnl(DetnlCommand::Verify {
            r, s, p, retries, sampler, ..
        }) => {
            if let Some(p) = p {
                prime(*p)?;
            }
            if r == &Some(0) || s == &Some(0) {
                return Err("--r and --s must be at least 1".into());
            }
            if *retries < 1 {
                return Err("--retries must be at least 1".into());
            }
            if *sampler == Some(SamplerArg::Points) && *r != Some(2) && *s != Some(2) {
                return Err("--sampler points needs r = 2 or s = 2".into());
            }
        }
        Command::Demo(DemoCommand::Pascal { field, .. }) => {
            field.field()?;
        }
        Command::Demo(DemoCommand::SevenP3 { p, retries, .. }) => {
            prime(*p)?;
            let min = gale_core::demo::SEVEN_P3_MIN_PRIME;
            if *p < min {
                return Err(format!("--p must be at least {min}, got {p}"));
            }
            if *retries < 1 {
                return Err("--retries must be at least 1".into());
            }
        }
        Command::Demo(DemoCommand::ElevenP6 { field, runs, .. }) => {
            field.field()?;
            if *runs < 1 {
                return Err("--runs must be at least 1".into());
            }
        }
        _ => {}
    }
    Ok(())
}
