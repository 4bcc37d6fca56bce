//! Command-line front-end: argument parsing, configuration and the five
//! subcommands. Each `cmd_*` returns its report as a string so that the
//! binary and the tests share one code path.

mod commands;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use dessin::net::NetError;
use dessin::GraphError;

pub use commands::{cmd_generators, cmd_info, cmd_net, cmd_system, cmd_verify, NetOutput};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Graph(#[from] GraphError),
    #[error("{0}")]
    Net(#[from] NetError),
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Parser)]
#[command(
    name = "dessin",
    version,
    about = "Chekhov-Fock coordinates on trivalent ribbon graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Counts, case label, genus and regularity.
    Info(Common),
    /// Face generators of the Fuchsian group with traces and fixed points.
    Generators(Common),
    /// The parabolicity system on the shears and its solutions.
    System(Common),
    /// Triangles of the net, optionally drawn to SVG.
    Net(Common),
    /// Randomized invariant suites.
    Verify(Common),
}

#[derive(Debug, Clone, Args)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["graph", "builtin"]))]
pub struct Common {
    /// Graph file.
    #[arg(long, value_name = "PATH")]
    pub graph: Option<PathBuf>,
    /// Built-in graph: theta, tetrahedron, cube, quotient411, twisted_theta.
    #[arg(long, value_name = "NAME")]
    pub builtin: Option<String>,
    /// Shear labeling file, `<dart> <value>` per line.
    #[arg(long, value_name = "PATH", conflicts_with = "zero")]
    pub z: Option<PathBuf>,
    /// All shears zero (the default).
    #[arg(long)]
    pub zero: bool,
    /// Distinguished dart, by name.
    #[arg(long, value_name = "DART")]
    pub base: Option<String>,
    /// Net depth.
    #[arg(long, default_value_t = 4)]
    pub depth: usize,
    /// SVG drawing of the net.
    #[arg(long, value_name = "PATH")]
    pub svg: Option<PathBuf>,
    /// Machine-readable output file.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Fill net triangles by depth.
    #[arg(long)]
    pub fill: bool,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, default_value_t = dessin::verify::DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = dessin::verify::DEFAULT_SAMPLES)]
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum GraphSource {
    Path(PathBuf),
    Builtin(String),
}

#[derive(Debug, Clone, PartialEq)]
pub enum LabelSource {
    Zero,
    Path(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommandConfig {
    pub graph: GraphSource,
    pub labeling: LabelSource,
    pub base: Option<String>,
    pub depth: usize,
    pub svg: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub fill: bool,
    pub tol: f64,
    pub seed: u64,
    pub samples: usize,
}

impl CommandConfig {
    pub fn builtin(name: &str) -> Self {
        CommandConfig {
            graph: GraphSource::Builtin(name.to_string()),
            labeling: LabelSource::Zero,
            base: None,
            depth: 4,
            svg: None,
            out: None,
            fill: false,
            tol: 1e-9,
            seed: dessin::verify::DEFAULT_SEED,
            samples: dessin::verify::DEFAULT_SAMPLES,
        }
    }
}

impl TryFrom<Common> for CommandConfig {
    type Error = CliError;

    fn try_from(c: Common) -> Result<Self, CliError> {
        let graph = match (c.graph, c.builtin) {
            (Some(p), None) => GraphSource::Path(p),
            (None, Some(b)) => GraphSource::Builtin(b),
            _ => {
                return Err(CliError::Invalid(
                    "give exactly one of --graph and --builtin".into(),
                ))
            }
        };
        if !(c.tol > 0.0 && c.tol.is_finite()) {
            return Err(CliError::Invalid(format!(
                "--tol must be positive, got {}",
                c.tol
            )));
        }
        Ok(CommandConfig {
            graph,
            labeling: c.z.map_or(LabelSource::Zero, LabelSource::Path),
            base: c.base,
            depth: c.depth,
            svg: c.svg,
            out: c.out,
            fill: c.fill,
            tol: c.tol,
            seed: c.seed,
            samples: c.samples,
        })
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Parses `args` (program name first), runs the subcommand and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let (common, which) = match cli.command {
        Command::Info(c) => (c, "info"),
        Command::Generators(c) => (c, "generators"),
        Command::System(c) => (c, "system"),
        Command::Net(c) => (c, "net"),
        Command::Verify(c) => (c, "verify"),
    };
    let result = CommandConfig::try_from(common).and_then(|cfg| match which {
        "info" => cmd_info(&cfg).map(|r| (r, EXIT_OK)),
        "generators" => cmd_generators(&cfg).map(|r| (r, EXIT_OK)),
        "system" => cmd_system(&cfg).map(|r| (r, EXIT_OK)),
        "net" => cmd_net(&cfg).map(|r| (r.summary, EXIT_OK)),
        _ => cmd_verify(&cfg).map(|r| {
            let code = if r.passed() {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            };
            let mut text = r.to_string();
            if let Some(f) = r.first_failure() {
                text.push_str(&format!(
                    "first failure: {}; rerun with --seed {}\n",
                    f.name, f.seed
                ));
            }
            (text, code)
        }),
    });
    match result {
        Ok((text, code)) => {
            let _ = write!(out, "{text}");
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}
