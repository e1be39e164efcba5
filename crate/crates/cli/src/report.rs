//! Graph-source resolution and payload assembly for the CLI commands.

use std::fmt;
use std::fs;
use std::path::Path;

use graph_energy_core::analysis::{
    self, CorpusEntry, InequalityCertificate, ScanVerdict, Scope,
};
use graph_energy_core::closed_forms;
use graph_energy_core::coulson::{self, CoulsonError};
use graph_energy_core::geometry::{self, GeometryError};
use graph_energy_core::graph::{fnv1a64, generator, Family, GraphError, ParseError};
use graph_energy_core::spectral::{self, EnergyMethod, SpectralError, VertexEnergyReport};
use graph_energy_core::{Graph, MatrixKind};

use crate::json::Json;

/// Errors mapped onto the exit-code contract: usage 2, input 3, numerical 4.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Input(String),
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Input(_) => 3,
            CliError::Numerical(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Input(msg) | CliError::Numerical(msg) => {
                f.write_str(msg)
            }
        }
    }
}

impl From<GraphError> for CliError {
    fn from(err: GraphError) -> Self {
        CliError::Input(err.to_string())
    }
}

impl From<ParseError> for CliError {
    fn from(err: ParseError) -> Self {
        CliError::Input(err.to_string())
    }
}

impl From<SpectralError> for CliError {
    fn from(err: SpectralError) -> Self {
        CliError::Numerical(err.to_string())
    }
}

impl From<GeometryError> for CliError {
    fn from(err: GeometryError) -> Self {
        CliError::Input(err.to_string())
    }
}

impl From<CoulsonError> for CliError {
    fn from(err: CoulsonError) -> Self {
        match err {
            CoulsonError::QuadratureNoConvergence | CoulsonError::Spectral(_) => {
                CliError::Numerical(err.to_string())
            }
            CoulsonError::IndexOutOfRange { .. } | CoulsonError::NearPole => {
                CliError::Input(err.to_string())
            }
        }
    }
}

impl From<analysis::AnalysisError> for CliError {
    fn from(err: analysis::AnalysisError) -> Self {
        match err {
            analysis::AnalysisError::Spectral(inner) => inner.into(),
            analysis::AnalysisError::Geometry(inner) => inner.into(),
            analysis::AnalysisError::NotAnEdge { .. } => CliError::Input(err.to_string()),
        }
    }
}

/// A resolved input graph plus its report descriptor; generator sources keep
/// the family so closed forms can be matched to them.
pub struct GraphSource {
    pub graph: Graph,
    pub label: String,
    pub descriptor: Json,
    pub family: Option<(Family, Vec<usize>)>,
}

/// Parses the `family:param[,param]` micro-grammar.
pub fn resolve_generator(spec: &str) -> Result<GraphSource, CliError> {
    let (family_text, params_text) = spec.split_once(':').ok_or_else(|| {
        CliError::Input(format!(
            "generator spec `{spec}` must look like family:param[,param]"
        ))
    })?;
    let family: Family = family_text
        .parse()
        .map_err(|err: GraphError| CliError::Input(err.to_string()))?;
    let params: Vec<usize> = params_text
        .split(',')
        .map(|token| {
            token
                .parse()
                .map_err(|_| CliError::Input(format!("bad generator parameter `{token}`")))
        })
        .collect::<Result<_, _>>()?;
    let graph = generator(family, &params)?;
    let descriptor = Json::object()
        .field("source", Json::string("generator"))
        .field("spec", Json::string(spec))
        .field("n", Json::UInt(graph.n() as u64))
        .field("m", Json::UInt(graph.m() as u64))
        .field("edge_hash", hash_json(graph.fingerprint()));
    Ok(GraphSource {
        graph,
        label: spec.to_owned(),
        descriptor,
        family: Some((family, params)),
    })
}

/// Reads and parses an edge-list file.
pub fn resolve_file(path: &Path) -> Result<GraphSource, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|err| CliError::Input(format!("{}: {err}", path.display())))?;
    let graph = Graph::parse_edge_list(&text)
        .map_err(|err| CliError::Input(format!("{}: {err}", path.display())))?;
    let descriptor = Json::object()
        .field("source", Json::string("file"))
        .field("path", Json::string(path.display().to_string()))
        .field("content_hash", hash_json(fnv1a64(text.as_bytes())))
        .field("n", Json::UInt(graph.n() as u64))
        .field("m", Json::UInt(graph.m() as u64))
        .field("edge_hash", hash_json(graph.fingerprint()));
    Ok(GraphSource {
        label: path.display().to_string(),
        graph,
        descriptor,
        family: None,
    })
}

fn hash_json(hash: u64) -> Json {
    Json::string(format!("fnv1a64:{hash:016x}"))
}

/// Which energy engines a single `energy` invocation runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodChoice {
    Spectral,
    Coulson,
    ClosedForm,
    All,
}

pub fn energy_payload(
    source: &GraphSource,
    kind: MatrixKind,
    method: MethodChoice,
) -> Result<Json, CliError> {
    let g = &source.graph;
    let mut reports: Vec<VertexEnergyReport> = Vec::new();
    let spectral_requested = matches!(method, MethodChoice::Spectral | MethodChoice::All);
    let coulson_requested = matches!(method, MethodChoice::Coulson | MethodChoice::All);
    if spectral_requested {
        reports.push(spectral::energy_report(g, kind)?);
    }
    if coulson_requested {
        let energies = (0..g.n())
            .map(|v| coulson::coulson_energy(g, kind, v))
            .collect::<Result<Vec<_>, _>>()?;
        reports.push(VertexEnergyReport::from_energies(
            kind,
            EnergyMethod::Coulson,
            energies,
        ));
    }
    match method {
        MethodChoice::ClosedForm => {
            reports.push(closed_form_report(source, kind)?.ok_or_else(|| {
                CliError::Input(format!(
                    "no closed form for this source with kind {}",
                    kind.label()
                ))
            })?);
        }
        MethodChoice::All => {
            if let Some(report) = closed_form_report(source, kind)? {
                reports.push(report);
            }
        }
        _ => {}
    }

    let mut energies = Json::object();
    let mut totals = Json::object();
    let mut methods = Vec::new();
    for report in &reports {
        methods.push(Json::string(report.method.label()));
        energies = energies.field(report.method.label(), Json::reals(report.energies.clone()));
        totals = totals.field(report.method.label(), Json::Real(report.total));
    }
    let max_deviation = if reports.len() >= 2 {
        let mut worst = 0.0f64;
        for a in &reports {
            for b in &reports {
                for v in 0..g.n() {
                    worst = worst.max((a.energies[v] - b.energies[v]).abs());
                }
            }
        }
        Json::Real(worst)
    } else {
        Json::Null
    };

    Ok(Json::object()
        .field("kind", Json::string(kind.label()))
        .field("methods", Json::Array(methods))
        .field("energies", energies)
        .field("totals", totals)
        .field("max_deviation", max_deviation))
}

fn closed_form_report(
    source: &GraphSource,
    kind: MatrixKind,
) -> Result<Option<VertexEnergyReport>, CliError> {
    let Some((family, params)) = &source.family else {
        return Ok(None);
    };
    let Some(result) = closed_forms::closed_form_report(*family, params[0], kind) else {
        return Ok(None);
    };
    result
        .map(Some)
        .map_err(|err| CliError::Input(err.to_string()))
}

/// Certificate suites selectable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    McClelland,
    Lower,
    Nle,
    Randic,
    Geometry,
    CsAgm,
    Chains,
}

fn suite_certificates(g: &Graph, suite: Suite) -> Result<Vec<InequalityCertificate>, CliError> {
    let mut certs = Vec::new();
    if matches!(suite, Suite::All | Suite::CsAgm) {
        for kind in MatrixKind::ALL {
            certs.extend(analysis::check_cs_agm(g, kind)?);
        }
    }
    if matches!(suite, Suite::All | Suite::McClelland) {
        certs.extend(analysis::check_mcclelland(g)?);
    }
    if matches!(suite, Suite::All | Suite::Lower) {
        certs.extend(analysis::check_laplacian_lower(g)?);
    }
    if matches!(suite, Suite::All | Suite::Nle) {
        certs.extend(analysis::check_nle_bounds(g)?);
    }
    if matches!(suite, Suite::All | Suite::Randic) {
        certs.extend(analysis::check_randic_theorems(g)?);
    }
    if matches!(suite, Suite::All | Suite::Chains) {
        certs.extend(analysis::bound_improvement_report(g)?.certificates());
    }
    if matches!(suite, Suite::All | Suite::Geometry) {
        certs.extend(analysis::check_geometric_bounds(g)?);
        certs.extend(analysis::spectral_sandwich_certificates(g)?);
    }
    Ok(certs)
}

fn certificate_json(cert: &InequalityCertificate, tolerance: f64) -> Json {
    let scope = match cert.scope {
        Scope::Graph => Json::object().field("level", Json::string("graph")),
        Scope::Vertex(v) => Json::object()
            .field("level", Json::string("vertex"))
            .field("v", Json::UInt(v as u64)),
        Scope::Edge(v, w) => Json::object()
            .field("level", Json::string("edge"))
            .field("v", Json::UInt(v as u64))
            .field("w", Json::UInt(w as u64)),
    };
    Json::object()
        .field("theorem", Json::string(cert.theorem.label()))
        .field(
            "kind",
            cert.kind
                .map_or(Json::Null, |kind| Json::string(kind.label())),
        )
        .field("scope", scope)
        .field("lhs", Json::Real(cert.lhs))
        .field("rhs", Json::Real(cert.rhs))
        .field("slack", Json::Real(cert.slack()))
        .field(
            "equality_predicate",
            cert.equality_predicate.map_or(Json::Null, Json::Bool),
        )
        .field("pass", Json::Bool(cert.holds(tolerance)))
}

/// Runs a suite over labeled graphs; the second value is the failure count.
pub fn verify_payload(
    entries: &[(String, Graph)],
    suite: Suite,
    suite_label: &str,
    tolerance: f64,
) -> Result<(Json, usize), CliError> {
    let mut graphs = Vec::new();
    let mut total = 0usize;
    let mut failures = 0usize;
    let mut min_slack = f64::INFINITY;
    for (label, graph) in entries {
        let certs = suite_certificates(graph, suite)?;
        let mut graph_failures = 0usize;
        let cert_json: Vec<Json> = certs
            .iter()
            .map(|cert| {
                min_slack = min_slack.min(cert.slack());
                if !cert.holds(tolerance) {
                    graph_failures += 1;
                }
                certificate_json(cert, tolerance)
            })
            .collect();
        total += certs.len();
        failures += graph_failures;
        graphs.push(
            Json::object()
                .field("label", Json::string(label.clone()))
                .field("n", Json::UInt(graph.n() as u64))
                .field("m", Json::UInt(graph.m() as u64))
                .field("failures", Json::UInt(graph_failures as u64))
                .field("certificates", Json::Array(cert_json)),
        );
    }
    let summary = Json::object()
        .field("graphs", Json::UInt(entries.len() as u64))
        .field("certificates", Json::UInt(total as u64))
        .field("failures", Json::UInt(failures as u64))
        .field(
            "min_slack",
            if min_slack.is_finite() {
                Json::Real(min_slack)
            } else {
                Json::Null
            },
        );
    let payload = Json::object()
        .field("suite", Json::string(suite_label))
        .field("tolerance", Json::Real(tolerance))
        .field("graphs", Json::Array(graphs))
        .field("summary", summary);
    Ok((payload, failures))
}

pub fn scan_payload(
    n_lo: usize,
    n_hi: usize,
    count: usize,
    ps: &[f64],
    seed: u64,
) -> Result<Json, CliError> {
    let corpus = analysis::random_corpus(count, n_lo, n_hi, ps, seed)?;
    let mut records = Vec::with_capacity(corpus.len());
    let mut violations = 0usize;
    for (index, entry) in corpus.iter().enumerate() {
        let record = analysis::scan_graph(&entry.graph, entry.seed)?;
        let verdict = match record.verdict {
            ScanVerdict::Holds => Json::string("holds"),
            ScanVerdict::Violated { vertex, margin } => {
                violations += 1;
                Json::object()
                    .field("vertex", Json::UInt(vertex as u64))
                    .field("margin", Json::Real(margin))
            }
        };
        let vertices: Vec<Json> = record
            .samples
            .iter()
            .map(|s| {
                Json::object()
                    .field("adjacency", Json::Real(s.adjacency))
                    .field("normalized", Json::Real(s.normalized))
                    .field("lower", Json::Real(s.lower))
                    .field("upper", Json::Real(s.upper))
            })
            .collect();
        let mut record_json = Json::object()
            .field("index", Json::UInt(index as u64))
            .field("n", Json::UInt(record.n as u64))
            .field("m", Json::UInt(record.m as u64))
            .field("seed", record.seed.map_or(Json::Null, Json::UInt))
            .field("p", entry.p.map_or(Json::Null, Json::Real))
            .field("edge_hash", hash_json(record.edge_hash))
            .field("verdict", verdict)
            .field("vertices", Json::Array(vertices));
        if let Some(edges) = &record.edges {
            record_json = record_json.field(
                "edges",
                Json::Array(
                    edges
                        .iter()
                        .map(|&(u, v)| {
                            Json::Array(vec![Json::UInt(u as u64), Json::UInt(v as u64)])
                        })
                        .collect(),
                ),
            );
        }
        records.push(record_json);
    }
    Ok(Json::object()
        .field(
            "params",
            Json::object()
                .field("n_lo", Json::UInt(n_lo as u64))
                .field("n_hi", Json::UInt(n_hi as u64))
                .field("count", Json::UInt(count as u64))
                .field("p", Json::reals(ps.iter().copied()))
                .field("seed", Json::UInt(seed)),
        )
        .field("records", Json::Array(records))
        .field(
            "summary",
            Json::object()
                .field("count", Json::UInt(count as u64))
                .field("violations", Json::UInt(violations as u64)),
        ))
}

pub fn curvature_payload(source: &GraphSource) -> Result<Json, CliError> {
    let g = &source.graph;
    let cheeger = geometry::cheeger(g)?;
    let dual = geometry::dual_cheeger(g)?;
    let curvature = geometry::ollivier_ricci(g);

    let vertex_list = |vs: &[usize]| {
        Json::Array(vs.iter().map(|&v| Json::UInt(v as u64)).collect())
    };
    let edges: Vec<Json> = curvature
        .edges
        .iter()
        .map(|edge| {
            Json::object()
                .field("v", Json::UInt(edge.v as u64))
                .field("w", Json::UInt(edge.w as u64))
                .field("w1", Json::rational(edge.w1))
                .field("kappa", Json::rational(edge.kappa))
        })
        .collect();
    Ok(Json::object()
        .field(
            "cheeger",
            Json::rational(cheeger.value).field("witness", vertex_list(&cheeger.witness)),
        )
        .field(
            "dual_cheeger",
            Json::rational(dual.value).field(
                "witness",
                Json::Array(vec![
                    vertex_list(&dual.witness.0),
                    vertex_list(&dual.witness.1),
                ]),
            ),
        )
        .field(
            "curvature",
            Json::object()
                .field(
                    "k_min",
                    curvature.k_min.map_or(Json::Null, Json::rational),
                )
                .field("edges", Json::Array(edges)),
        ))
}

/// Labeled default corpus for `verify --corpus default`.
pub fn default_corpus_entries() -> Result<Vec<(String, Graph)>, CliError> {
    let corpus = analysis::default_corpus(analysis::DEFAULT_CORPUS_SEED)?;
    Ok(corpus
        .into_iter()
        .map(|CorpusEntry { label, graph, .. }| (label, graph))
        .collect())
}
