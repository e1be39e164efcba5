//! `graph-energy`: vertex energies of simple connected graphs, inequality
//! verification, conjecture scanning, and exact graph geometry.
//!
//! Every command emits one deterministic JSON report (stdout or `--out`);
//! identical invocations produce byte-identical reports apart from the
//! trailing wall-time field. Exit codes: 0 success, 1 certificate failure,
//! 2 usage error, 3 input error, 4 numerical non-convergence.

mod json;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use graph_energy_core::MatrixKind;

use crate::json::Json;
use crate::report::{CliError, GraphSource, MethodChoice, Suite};

#[derive(Parser)]
#[command(
    name = "graph-energy",
    version,
    about = "Vertex energies of graphs by spectral, integral, and closed-form engines, \
             with certified inequalities and exact Cheeger/curvature geometry"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Per-vertex energies of one graph for a chosen matrix
    Energy(EnergyArgs),
    /// Evaluate inequality certificates over a graph or the default corpus
    Verify(VerifyArgs),
    /// Scan seeded random graphs for energy-sandwich counterexamples
    Scan(ScanArgs),
    /// Exact Cheeger constants and per-edge Ollivier-Ricci curvature
    Curvature(CurvatureArgs),
}

#[derive(Args)]
struct SourceArgs {
    /// Generator spec `family:param[,param]`, e.g. star:5 or complete_bipartite:2,3
    #[arg(long = "gen", value_name = "SPEC", conflicts_with = "graph")]
    generator: Option<String>,
    /// Path to an edge-list file (first data line n, then `u v` per line)
    #[arg(long, value_name = "PATH")]
    graph: Option<PathBuf>,
}

impl SourceArgs {
    fn resolve(&self) -> Result<GraphSource, CliError> {
        match (&self.generator, &self.graph) {
            (Some(spec), None) => report::resolve_generator(spec),
            (None, Some(path)) => report::resolve_file(path),
            _ => Err(CliError::Usage(
                "exactly one of --gen or --graph is required".to_owned(),
            )),
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Adjacency,
    Laplacian,
    Normalized,
}

impl From<KindArg> for MatrixKind {
    fn from(kind: KindArg) -> Self {
        match kind {
            KindArg::Adjacency => MatrixKind::Adjacency,
            KindArg::Laplacian => MatrixKind::Laplacian,
            KindArg::Normalized => MatrixKind::NormalizedLaplacian,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Spectral,
    Coulson,
    #[value(alias = "closed_form")]
    ClosedForm,
    All,
}

impl From<MethodArg> for MethodChoice {
    fn from(method: MethodArg) -> Self {
        match method {
            MethodArg::Spectral => MethodChoice::Spectral,
            MethodArg::Coulson => MethodChoice::Coulson,
            MethodArg::ClosedForm => MethodChoice::ClosedForm,
            MethodArg::All => MethodChoice::All,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    All,
    Mcclelland,
    Lower,
    Nle,
    Randic,
    Geometry,
    Csagm,
    Chains,
}

impl SuiteArg {
    fn suite(self) -> Suite {
        match self {
            SuiteArg::All => Suite::All,
            SuiteArg::Mcclelland => Suite::McClelland,
            SuiteArg::Lower => Suite::Lower,
            SuiteArg::Nle => Suite::Nle,
            SuiteArg::Randic => Suite::Randic,
            SuiteArg::Geometry => Suite::Geometry,
            SuiteArg::Csagm => Suite::CsAgm,
            SuiteArg::Chains => Suite::Chains,
        }
    }

    fn label(self) -> &'static str {
        match self {
            SuiteArg::All => "all",
            SuiteArg::Mcclelland => "mcclelland",
            SuiteArg::Lower => "lower",
            SuiteArg::Nle => "nle",
            SuiteArg::Randic => "randic",
            SuiteArg::Geometry => "geometry",
            SuiteArg::Csagm => "csagm",
            SuiteArg::Chains => "chains",
        }
    }
}

#[derive(Args)]
struct EnergyArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long, value_enum, default_value_t = KindArg::Laplacian)]
    kind: KindArg,
    #[arg(long, value_enum, default_value_t = MethodArg::Spectral)]
    method: MethodArg,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Run over the built-in corpus instead of a single graph (`default`)
    #[arg(long, value_name = "NAME", conflicts_with_all = ["generator", "graph"])]
    corpus: Option<String>,
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    suite: SuiteArg,
    /// Slack tolerance: a certificate fails below `-tol`
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ScanArgs {
    /// Inclusive vertex-count range, e.g. 4..10
    #[arg(long, value_name = "LO..HI", default_value = "4..10")]
    n: String,
    #[arg(long, default_value_t = 500)]
    count: usize,
    /// Comma-separated edge probabilities cycled over the corpus
    #[arg(long, value_name = "LIST", default_value = "0.3,0.5,0.8")]
    p: String,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CurvatureArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

fn run(command: Command) -> Result<u8, CliError> {
    let started = Instant::now();
    let echo: String = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let mut doc = Json::object()
        .field("tool", Json::string("graph-energy"))
        .field("version", Json::string(env!("CARGO_PKG_VERSION")))
        .field("command", Json::string(echo));

    let (out, exit_code) = match command {
        Command::Energy(args) => {
            let source = args.source.resolve()?;
            let payload =
                report::energy_payload(&source, args.kind.into(), args.method.into())?;
            doc = doc.field("graph", source.descriptor).field("result", payload);
            (args.out, 0)
        }
        Command::Verify(args) => {
            let entries: Vec<(String, graph_energy_core::Graph)> = match &args.corpus {
                Some(name) if name == "default" => report::default_corpus_entries()?,
                Some(name) => {
                    return Err(CliError::Input(format!(
                        "unknown corpus `{name}` (available: default)"
                    )));
                }
                None => {
                    let source = args.source.resolve()?;
                    doc = doc.field("graph", source.descriptor);
                    vec![(source.label, source.graph)]
                }
            };
            let (payload, failures) = report::verify_payload(
                &entries,
                args.suite.suite(),
                args.suite.label(),
                args.tol,
            )?;
            doc = doc.field("result", payload);
            (args.out, if failures > 0 { 1 } else { 0 })
        }
        Command::Scan(args) => {
            let (n_lo, n_hi) = parse_range(&args.n)?;
            let ps = parse_probabilities(&args.p)?;
            if args.count == 0 {
                return Err(CliError::Usage("--count must be at least 1".to_owned()));
            }
            let payload = report::scan_payload(n_lo, n_hi, args.count, &ps, args.seed)?;
            doc = doc.field("result", payload);
            (args.out, 0)
        }
        Command::Curvature(args) => {
            let source = args.source.resolve()?;
            let payload = report::curvature_payload(&source)?;
            doc = doc.field("graph", source.descriptor).field("result", payload);
            (args.out, 0)
        }
    };

    doc = doc.field(
        "wall_time_ms",
        Json::UInt(started.elapsed().as_millis() as u64),
    );
    let text = doc.to_pretty_string();
    match out {
        Some(path) => std::fs::write(&path, text)
            .map_err(|err| CliError::Input(format!("{}: {err}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(exit_code)
}

fn parse_range(text: &str) -> Result<(usize, usize), CliError> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| CliError::Usage(format!("range `{text}` must look like LO..HI")))?;
    let lo: usize = lo
        .parse()
        .map_err(|_| CliError::Usage(format!("bad range bound `{lo}`")))?;
    let hi: usize = hi
        .trim_start_matches('=')
        .parse()
        .map_err(|_| CliError::Usage(format!("bad range bound `{hi}`")))?;
    if lo == 0 || hi < lo {
        return Err(CliError::Usage(format!("empty or zero range `{text}`")));
    }
    Ok((lo, hi))
}

fn parse_probabilities(text: &str) -> Result<Vec<f64>, CliError> {
    let ps: Vec<f64> = text
        .split(',')
        .map(|token| {
            token
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("bad probability `{token}`")))
        })
        .collect::<Result<_, _>>()?;
    if ps.is_empty() || ps.iter().any(|&p| !(p > 0.0 && p <= 1.0)) {
        return Err(CliError::Usage(
            "probabilities must satisfy 0 < p <= 1".to_owned(),
        ));
    }
    Ok(ps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_parse_inclusively() {
        assert_eq!(parse_range("4..10").unwrap(), (4, 10));
        assert_eq!(parse_range("2..=6").unwrap(), (2, 6));
        assert!(parse_range("10..4").is_err());
        assert!(parse_range("7").is_err());
    }

    #[test]
    fn probability_lists_are_validated() {
        assert_eq!(parse_probabilities("0.3,0.5").unwrap(), vec![0.3, 0.5]);
        assert!(parse_probabilities("0.0").is_err());
        assert!(parse_probabilities("1.5").is_err());
        assert!(parse_probabilities("x").is_err());
    }

    #[test]
    fn exit_codes_follow_the_contract() {
        assert_eq!(CliError::Usage(String::new()).exit_code(), 2);
        assert_eq!(CliError::Input(String::new()).exit_code(), 3);
        assert_eq!(CliError::Numerical(String::new()).exit_code(), 4);
    }
}
