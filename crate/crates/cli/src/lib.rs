//! Argument parsing and command execution for the `corona-spectra` binary.
//!
//! [`run`] is the whole program: it parses, executes, writes the artifact and
//! returns the process exit status.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use corona_spectra::cospectral::CATALOG;
use corona_spectra::spectra::a_alpha_energy;
use corona_spectra::{
    a_alpha_matrix, build_cospectral_pair, compose, generate, known_regular_cospectral_pair,
    predict_spectrum, sym_eigenvalues, verify_prediction, Alpha, CoronaKind, Error, Graph,
    NamedGraph, RegularSpec, VerifyMode,
};
use serde::Serialize;
use serde_json::{Map, Value};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

const DEFAULT_GRID: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];

/// Significant digits kept in emitted floats.
const SIGNIFICANT_DIGITS: usize = 12;

/// Magnitudes below this are written as zero.
const ZERO_FLOOR: f64 = 1e-10;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Help or version text requested; not a failure.
    #[error("{0}")]
    Info(String),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Info(_) => EXIT_PASS,
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_IO,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        match e {
            Error::CountMismatch { .. } => CliError::Internal(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

/// A graph argument after resolution, together with the text that named it.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphArg {
    pub label: String,
    pub graph: Graph,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Seeds {
    Catalog(String),
    Graphs(GraphArg, GraphArg),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Verb {
    Generate {
        graph: GraphArg,
    },
    Compose {
        kind: CoronaKind,
        g1: GraphArg,
        g2: GraphArg,
    },
    Spectrum {
        graph: GraphArg,
        alpha: Alpha,
    },
    Predict {
        kind: CoronaKind,
        g1: GraphArg,
        g2: GraphArg,
        alpha: Alpha,
    },
    Verify {
        kind: CoronaKind,
        g1: GraphArg,
        g2: GraphArg,
        alphas: Vec<Alpha>,
        tol: f64,
        mode: VerifyMode,
    },
    Cospectral {
        kind: CoronaKind,
        seeds: Seeds,
        h: GraphArg,
        alphas: Vec<Alpha>,
        tol: f64,
    },
    Energy {
        graph: GraphArg,
        alpha: Alpha,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Command {
    pub verb: Verb,
    pub out: Option<PathBuf>,
}

/// Result of executing a command: the artifact text and the exit status.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub status: i32,
    pub text: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "corona-spectra",
    version,
    about = "Spectra of corona-type graph products"
)]
struct Cli {
    #[command(subcommand)]
    verb: RawVerb,
}

#[derive(Subcommand, Debug)]
enum RawVerb {
    /// Write the edge list of a generated graph.
    Generate {
        #[arg(long)]
        graph: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// Write the edge list of a composite, preceded by its vertex layout.
    Compose {
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        out: OutArg,
    },
    /// Eigenvalues of A_α(G).
    Spectrum {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Closed-form spectrum of a composite of two regular graphs.
    Predict {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Compare closed forms with direct computation over an α grid.
    Verify {
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// `spectrum` or `charpoly`.
        #[arg(long, default_value = "spectrum")]
        mode: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// Certify that two cospectral seeds give cospectral composites.
    Cospectral {
        #[arg(long)]
        kind: String,
        /// Catalog key of a seed pair; ignored when --g1 and --g2 are given.
        #[arg(long)]
        pair: Option<String>,
        #[arg(long, requires = "g2")]
        g1: Option<String>,
        #[arg(long, requires = "g1")]
        g2: Option<String>,
        /// Graph attached to both seeds.
        #[arg(long)]
        h: String,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: OutArg,
    },
    /// A_α-energy of G.
    Energy {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Args, Debug)]
struct PairArgs {
    #[arg(long)]
    kind: String,
    #[arg(long)]
    g1: String,
    #[arg(long)]
    g2: String,
}

#[derive(Args, Debug)]
struct GridArgs {
    /// Comma-separated α values.
    #[arg(long, value_delimiter = ',')]
    alpha_grid: Option<Vec<f64>>,
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
}

#[derive(Args, Debug)]
struct OutArg {
    /// Write the artifact here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Parses and validates `argv` (including the program name).
///
/// Graph arguments are resolved here: `family:params` through the generators,
/// `@path` by reading an edge-list file.
pub fn parse_args<I, T>(argv: I) -> Result<Command, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| match e.kind() {
        clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
            CliError::Info(e.to_string())
        }
        _ => CliError::Usage(e.to_string()),
    })?;

    let (verb, out) = match cli.verb {
        RawVerb::Generate { graph, out } => (
            Verb::Generate {
                graph: graph_arg(&graph)?,
            },
            out,
        ),
        RawVerb::Compose { pair, out } => {
            let (kind, g1, g2) = pair_args(&pair)?;
            (Verb::Compose { kind, g1, g2 }, out)
        }
        RawVerb::Spectrum { graph, alpha, out } => (
            Verb::Spectrum {
                graph: graph_arg(&graph)?,
                alpha: alpha_arg(alpha)?,
            },
            out,
        ),
        RawVerb::Predict { pair, alpha, out } => {
            let (kind, g1, g2) = pair_args(&pair)?;
            let alpha = alpha_arg(alpha)?;
            (
                Verb::Predict {
                    kind,
                    g1,
                    g2,
                    alpha,
                },
                out,
            )
        }
        RawVerb::Verify {
            pair,
            grid,
            mode,
            out,
        } => {
            let (kind, g1, g2) = pair_args(&pair)?;
            let (alphas, tol) = grid_args(&grid)?;
            let mode = match mode.as_str() {
                "spectrum" => VerifyMode::Spectrum,
                "charpoly" => VerifyMode::Charpoly,
                other => return Err(CliError::Usage(format!("unknown verify mode `{other}`"))),
            };
            (
                Verb::Verify {
                    kind,
                    g1,
                    g2,
                    alphas,
                    tol,
                    mode,
                },
                out,
            )
        }
        RawVerb::Cospectral {
            kind,
            pair,
            g1,
            g2,
            h,
            grid,
            out,
        } => {
            let seeds = match (g1, g2) {
                (Some(a), Some(b)) => Seeds::Graphs(graph_arg(&a)?, graph_arg(&b)?),
                _ => {
                    let key = pair.unwrap_or_else(|| CATALOG[0].to_string());
                    if !CATALOG.contains(&key.as_str()) {
                        return Err(CliError::Usage(format!("unknown seed pair `{key}`")));
                    }
                    Seeds::Catalog(key)
                }
            };
            let (alphas, tol) = grid_args(&grid)?;
            (
                Verb::Cospectral {
                    kind: kind_arg(&kind)?,
                    seeds,
                    h: graph_arg(&h)?,
                    alphas,
                    tol,
                },
                out,
            )
        }
        RawVerb::Energy { graph, alpha, out } => (
            Verb::Energy {
                graph: graph_arg(&graph)?,
                alpha: alpha_arg(alpha)?,
            },
            out,
        ),
    };
    Ok(Command { verb, out: out.out })
}

fn graph_arg(text: &str) -> Result<GraphArg, CliError> {
    let graph = match text.strip_prefix('@') {
        Some(path) => {
            let body =
                fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
            Graph::parse_edge_list(&body).map_err(|e| CliError::Usage(format!("{path}: {e}")))?
        }
        None => generate(text)?,
    };
    Ok(GraphArg {
        label: text.to_string(),
        graph,
    })
}

fn kind_arg(text: &str) -> Result<CoronaKind, CliError> {
    Ok(text.parse::<CoronaKind>()?)
}

fn alpha_arg(value: f64) -> Result<Alpha, CliError> {
    Ok(Alpha::new(value)?)
}

fn pair_args(p: &PairArgs) -> Result<(CoronaKind, GraphArg, GraphArg), CliError> {
    Ok((kind_arg(&p.kind)?, graph_arg(&p.g1)?, graph_arg(&p.g2)?))
}

fn grid_args(g: &GridArgs) -> Result<(Vec<Alpha>, f64), CliError> {
    let values = g
        .alpha_grid
        .clone()
        .unwrap_or_else(|| DEFAULT_GRID.to_vec());
    if values.is_empty() {
        return Err(CliError::Usage("empty alpha grid".into()));
    }
    let alphas = values
        .into_iter()
        .map(alpha_arg)
        .collect::<Result<Vec<_>, _>>()?;
    if !(g.tol > 0.0 && g.tol.is_finite()) {
        return Err(CliError::Usage(format!(
            "tolerance must be positive, got {}",
            g.tol
        )));
    }
    Ok((alphas, g.tol))
}

#[derive(Serialize)]
struct SpectrumOutput<'a> {
    n: usize,
    alpha: Alpha,
    eigenvalues: &'a [f64],
}

/// Runs a validated command and renders its artifact.
pub fn execute(cmd: &Command) -> Result<Outcome, CliError> {
    let pass = |text: String| Outcome {
        status: EXIT_PASS,
        text,
    };
    match &cmd.verb {
        Verb::Generate { graph } => Ok(pass(graph.graph.to_edge_list_text())),
        Verb::Compose { kind, g1, g2 } => {
            let (g, layout) = compose(*kind, &g1.graph, &g2.graph)?;
            let layout = serde_json::to_string(&layout).map_err(internal)?;
            Ok(pass(format!(
                "# layout: {layout}\n{}",
                g.to_edge_list_text()
            )))
        }
        Verb::Spectrum { graph, alpha } => {
            let spectrum = sym_eigenvalues(&a_alpha_matrix(&graph.graph, *alpha))?;
            let out = SpectrumOutput {
                n: graph.graph.order(),
                alpha: *alpha,
                eigenvalues: spectrum.eigenvalues(),
            };
            Ok(pass(render_json(&out)?))
        }
        Verb::Predict {
            kind,
            g1,
            g2,
            alpha,
        } => {
            let report = predict_spectrum(*kind, &regular(g1)?, &regular(g2)?, *alpha)?;
            Ok(pass(render_json(&report)?))
        }
        Verb::Verify {
            kind,
            g1,
            g2,
            alphas,
            tol,
            mode,
        } => {
            if *mode == VerifyMode::Spectrum {
                // Surface assembly failures as internal errors rather than
                // as ordinary failed cells.
                let (s1, s2) = (regular(g1)?, regular(g2)?);
                for &alpha in alphas {
                    predict_spectrum(*kind, &s1, &s2, alpha)?;
                }
            }
            let report = verify_prediction(*kind, &g1.graph, &g2.graph, alphas, *tol, *mode)?;
            Ok(Outcome {
                status: if report.passed { EXIT_PASS } else { EXIT_FAIL },
                text: render_json(&report)?,
            })
        }
        Verb::Cospectral {
            kind,
            seeds,
            h,
            alphas,
            tol,
        } => {
            let (a, b) = match seeds {
                Seeds::Catalog(key) => known_regular_cospectral_pair(key)?,
                Seeds::Graphs(a, b) => (
                    NamedGraph::new(a.label.clone(), a.graph.clone()),
                    NamedGraph::new(b.label.clone(), b.graph.clone()),
                ),
            };
            let h = NamedGraph::new(h.label.clone(), h.graph.clone());
            let cert = build_cospectral_pair(*kind, (&a, &b), &h, alphas, *tol)?;
            Ok(Outcome {
                status: if cert.passed { EXIT_PASS } else { EXIT_FAIL },
                text: render_json(&cert)?,
            })
        }
        Verb::Energy { graph, alpha } => {
            let e = a_alpha_energy(&graph.graph, *alpha)?;
            Ok(pass(render_json(&e)?))
        }
    }
}

fn regular(g: &GraphArg) -> Result<RegularSpec, CliError> {
    RegularSpec::from_graph(&g.graph).map_err(|e| CliError::Usage(format!("{}: {e}", g.label)))
}

fn internal(e: serde_json::Error) -> CliError {
    CliError::Internal(e.to_string())
}

/// Pretty JSON with sorted keys and floats rounded by [`round_float`].
pub fn render_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let value = normalise(serde_json::to_value(value).map_err(internal)?);
    let mut text = serde_json::to_string_pretty(&value).map_err(internal)?;
    text.push('\n');
    Ok(text)
}

fn normalise(value: Value) -> Value {
    match value {
        Value::Number(n) if n.is_f64() => {
            let x = round_float(n.as_f64().unwrap_or(0.0));
            serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(normalise).collect()),
        Value::Object(map) => Value::Object(
            map.into_iter()
                .map(|(k, v)| (k, normalise(v)))
                .collect::<Map<_, _>>(),
        ),
        other => other,
    }
}

/// Rounds to [`SIGNIFICANT_DIGITS`] significant digits and snaps values
/// smaller than [`ZERO_FLOOR`] to zero.
pub fn round_float(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    if x.abs() < ZERO_FLOOR {
        return 0.0;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .unwrap_or(x)
}

/// Writes the artifact to `--out` or stdout.
pub fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io(e.to_string());
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(io)?;
            stdout.flush().map_err(io)
        }
    }
}

/// Parses, executes and emits; returns the exit status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let result = parse_args(argv).and_then(|cmd| {
        let outcome = execute(&cmd)?;
        emit(cmd.out.as_deref(), &outcome.text)?;
        Ok(outcome.status)
    });
    match result {
        Ok(status) => status,
        Err(CliError::Info(text)) => {
            print!("{text}");
            EXIT_PASS
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
