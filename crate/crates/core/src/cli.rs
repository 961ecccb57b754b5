//! Command-line jobs: argument parsing, execution and reports.
//!
//! Every job yields a JSON report with a `schema_version`, a `status` of
//! `pass`, `fail` or `error`, a list of named checks and command-specific
//! fields. Exit codes: 0 when every check passes, 1 on a mathematical
//! failure, 2 on an input error.

use std::path::Path;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::fusion::{su2_fusion_ring, FusionRing};
use crate::gauge::{
    encircling_matrices, encircling_profile, solve_gauge, triangle_checks, verify_phi_isomorphism, GaugeProblem,
};
use crate::invariant::{
    diagonal_profile_as_z, enumerate_invariants_with_cap, match_diagonal, search_cap_from_env, tm_dimension_report,
    verify_invariant, DEFAULT_ENTRY_BOUND,
};
use crate::io::{parse_data_file, Document};
use crate::modular::{catalog, ModularData};
use crate::nimrep::{d_eigenvector, multiplicity_profile, oracle, su2_nimrep_from_graph, BoundaryGraph, NimRep};
use crate::scalar::CycloNumber;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug, Clone, PartialEq, Eq)]
#[command(name = "fuselab", version, about = "Exact checks for fusion rings, modular data, NIM-reps and modular invariants")]
pub struct JobSpec {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Args, Debug, Clone, PartialEq, Eq)]
pub struct Options {
    /// Catalog id (su2:10, fibonacci, ising, zn:4) or a JSON data file.
    #[arg(long, global = true)]
    pub data: Option<String>,
    /// Boundary graph: A:n, D:n, E:n, custom:<file>, unions joined by `+`,
    /// or `regular` for the regular NIM-rep.
    #[arg(long, global = true)]
    pub graph: Option<String>,
    /// su(2) level, for `--data su2`.
    #[arg(long, global = true)]
    pub level: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    /// Entry bound for invariant searches (default 3; diag-theorem uses the
    /// largest multiplicity).
    #[arg(long, global = true)]
    pub bound: Option<i64>,
    /// Decimal digits for numerical embeddings in reports.
    #[arg(long, global = true, default_value_t = 12)]
    pub digits: u32,
    /// Lattice-point cap for invariant searches; overrides FUSELAB_SEARCH_CAP.
    #[arg(long, global = true)]
    pub search_cap: Option<u64>,
    /// Invariant document for `invariant verify`.
    #[arg(long, global = true)]
    pub z: Option<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Human,
    Json,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
pub enum Command {
    /// List catalog entries or export one as a data file.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Check the fusion axioms and, for modular data, the modular identities.
    VerifyFusion,
    /// Quantum dimensions, spins and idempotents of each label.
    Spectrum,
    /// Check the NIM-rep axioms for a boundary graph.
    Nimrep {
        #[command(subcommand)]
        action: NimrepAction,
    },
    /// Multiplicity of each character in a NIM-rep.
    Profile,
    /// Solve for gauge scalars from a gauge file, or from a graph over modular data.
    Gauge {
        #[command(subcommand)]
        action: GaugeAction,
    },
    /// Dimension of the full centre and the indecomposability verdicts.
    TmDim,
    /// Verify a modular invariant or enumerate them up to an entry bound.
    Invariant {
        #[command(subcommand)]
        action: InvariantAction,
    },
    /// NIM-rep, profile, eigenvalue cross-check, invariant search and match.
    DiagTheorem,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
pub enum CatalogAction {
    List,
    /// Print the `--data` entry as a modular-data document.
    Export,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
pub enum NimrepAction {
    /// Build the NIM-rep of `--graph` and check its identities.
    Check,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
pub enum GaugeAction {
    /// Solve a gauge document, or gauge a NIM-rep by its d-eigenvector.
    Solve,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
pub enum InvariantAction {
    /// Check `--z` against the modular data.
    Verify,
    /// Enumerate invariants with entries up to `--bound`.
    Search,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Catalog {
                action: CatalogAction::List,
            } => "catalog list",
            Command::Catalog {
                action: CatalogAction::Export,
            } => "catalog export",
            Command::VerifyFusion => "verify-fusion",
            Command::Spectrum => "spectrum",
            Command::Nimrep { .. } => "nimrep check",
            Command::Profile => "profile",
            Command::Gauge { .. } => "gauge solve",
            Command::TmDim => "tm-dim",
            Command::Invariant {
                action: InvariantAction::Verify,
            } => "invariant verify",
            Command::Invariant {
                action: InvariantAction::Search,
            } => "invariant search",
            Command::DiagTheorem => "diag-theorem",
        }
    }
}

/// Exit code and report. `raw` reports are documents printed verbatim.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub exit_code: i32,
    pub report: Value,
    pub raw: bool,
}

impl Outcome {
    pub fn render(&self, format: Format) -> String {
        if self.raw || format == Format::Json {
            let mut s = serde_json::to_string_pretty(&self.report).expect("serialisable");
            s.push('\n');
            s
        } else {
            render_human(&self.report)
        }
    }
}

struct Report {
    body: Map<String, Value>,
    checks: Vec<Value>,
    all_passed: bool,
    raw: Option<Value>,
}

impl Report {
    fn new() -> Self {
        Report {
            body: Map::new(),
            checks: Vec::new(),
            all_passed: true,
            raw: None,
        }
    }

    fn set(&mut self, key: &str, v: impl Into<Value>) {
        self.body.insert(key.into(), v.into());
    }

    fn check(&mut self, name: &str, passed: bool, detail: Value) {
        self.all_passed &= passed;
        let mut c = json!({"name": name, "passed": passed});
        if !detail.is_null() {
            c["detail"] = detail;
        }
        self.checks.push(c);
    }

    /// Record a mathematical failure as a failed check; input errors propagate.
    fn check_result(&mut self, name: &str, r: Result<()>) -> Result<bool> {
        match r {
            Ok(()) => {
                self.check(name, true, Value::Null);
                Ok(true)
            }
            Err(e) if e.is_input_error() => Err(e),
            Err(e) => {
                self.check(name, false, error_json(&e));
                Ok(false)
            }
        }
    }
}

/// Parse `args`, whose first item is the program name, run the job and
/// render its report. Argument errors render clap's message with exit 2.
pub fn run_args<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match JobSpec::try_parse_from(args) {
        Ok(job) => {
            let out = run(&job);
            (out.exit_code, out.render(job.options.format))
        }
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            (code, e.render().to_string())
        }
    }
}

pub fn run(job: &JobSpec) -> Outcome {
    let mut rep = Report::new();
    let result = dispatch(job, &mut rep);
    if let (Ok(()), Some(doc)) = (&result, rep.raw.take()) {
        return Outcome {
            exit_code: 0,
            report: doc,
            raw: true,
        };
    }
    let (status, code, error) = match result {
        Ok(()) if rep.all_passed => ("pass", 0, None),
        Ok(()) => ("fail", 1, None),
        Err(e) if e.is_input_error() => ("error", 2, Some(error_json(&e))),
        Err(e) => ("fail", 1, Some(error_json(&e))),
    };
    let mut report = Map::new();
    report.insert("schema_version".into(), json!(SCHEMA_VERSION));
    report.insert("command".into(), json!(job.command.name()));
    report.insert("status".into(), json!(status));
    report.insert("checks".into(), Value::Array(rep.checks));
    if let Some(e) = error {
        report.insert("error".into(), e);
    }
    for (k, v) in rep.body {
        report.insert(k, v);
    }
    Outcome {
        exit_code: code,
        report: Value::Object(report),
        raw: false,
    }
}

/// Error kind, message and witness where the error carries one.
pub fn error_json(e: &Error) -> Value {
    let (kind, witness) = match e {
        Error::DegenerateScalar(_) => ("DegenerateScalar", Value::Null),
        Error::InvalidArgument(_) => ("InvalidArgument", Value::Null),
        Error::ShapeMismatch(_) => ("ShapeMismatch", Value::Null),
        Error::AxiomViolated { witness, .. } => ("AxiomViolated", json!(witness)),
        Error::ModularDataViolated { witness, .. } => ("ModularDataViolated", json!(witness)),
        Error::NonIntegralVerlinde { a, b, c, .. } => ("NonIntegralVerlinde", json!([a, b, c])),
        Error::VerlindeMismatch { a, b, c, .. } => ("VerlindeMismatch", json!([a, b, c])),
        Error::NotANimRep { witness, .. } => ("NotANimRep", json!(witness)),
        Error::NonIntegralMultiplicity { label, .. } => ("NonIntegralMultiplicity", json!([label])),
        Error::MultiplicityNotOne(_) => ("MultiplicityNotOne", Value::Null),
        Error::MissingPair(a, b) => ("MissingPair", json!([a, b])),
        Error::NonUnitalGauge(a) => ("NonUnitalGauge", json!([a])),
        Error::GaugeInverse(a, b) => ("GaugeInverse", json!([a, b])),
        Error::GaugeCocycle(a, b, c) => ("GaugeCocycle", json!([a, b, c])),
        Error::SearchBudgetExceeded(_) => ("SearchBudgetExceeded", Value::Null),
        Error::Parse(_) => ("Parse", Value::Null),
        Error::Io(_) => ("Io", Value::Null),
    };
    let mut v = json!({"kind": kind, "message": e.to_string()});
    if !witness.is_null() {
        v["witness"] = witness;
    }
    v
}

fn cyclo_json(x: &CycloNumber, digits: u32) -> Value {
    json!({"exact": x.to_string(), "approx": x.embed(digits).to_string()})
}

enum Data {
    Modular(Arc<ModularData>),
    Ring(FusionRing),
    Gauge(GaugeProblem),
    /// A document kind that no command takes through `--data`.
    Other(&'static str),
}

fn looks_like_path(s: &str) -> bool {
    s.contains('/') || s.contains('\\') || s.ends_with(".json")
}

fn load_data(job: &JobSpec) -> Result<Data> {
    let o = &job.options;
    let src = o
        .data
        .as_deref()
        .ok_or_else(|| Error::InvalidArgument("--data is required for this command".into()))?;
    if Path::new(src).is_file() {
        if o.level.is_some() {
            return Err(Error::InvalidArgument("--level only applies to su2 catalog ids".into()));
        }
        return Ok(match parse_data_file(src)? {
            Document::ModularData(md) => Data::Modular(Arc::new(md)),
            Document::FusionRing(r) => Data::Ring(r),
            Document::Gauge(g) => Data::Gauge(g),
            other => Data::Other(other.kind()),
        });
    }
    if looks_like_path(src) {
        return Err(Error::Io(format!("{src}: no such file")));
    }
    let lower = src.trim().to_ascii_lowercase();
    let id = match (lower.as_str(), o.level) {
        ("su2", Some(l)) => format!("su2:{l}"),
        (id, Some(l)) if id.starts_with("su2:") => {
            let norm = catalog::normalize_id(id)?;
            if norm != format!("su2:{l}") {
                return Err(Error::InvalidArgument(format!("--level {l} conflicts with --data {src}")));
            }
            norm
        }
        (_, Some(_)) => return Err(Error::InvalidArgument("--level only applies to su2 catalog ids".into())),
        (id, None) => id.to_string(),
    };
    Ok(Data::Modular(catalog::lookup(&id)?))
}

fn modular(job: &JobSpec) -> Result<Arc<ModularData>> {
    match load_data(job)? {
        Data::Modular(md) => Ok(md),
        Data::Ring(_) => Err(Error::InvalidArgument("--data must be modular data, not a fusion ring".into())),
        Data::Gauge(_) => Err(Error::InvalidArgument("--data must be modular data, not a gauge document".into())),
        Data::Other(kind) => Err(Error::InvalidArgument(format!("--data must be modular data, not a {kind} document"))),
    }
}

/// `A:n`, `D:n`, `E:n` or `custom:<file>`, joined by `+`.
pub fn parse_graph(spec: &str) -> Result<BoundaryGraph> {
    let mut out: Option<BoundaryGraph> = None;
    for part in spec.split('+').map(str::trim) {
        let g = match part.strip_prefix("custom:") {
            Some(path) => match parse_data_file(path)? {
                Document::Graph(g) => g,
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "{path} is a {} document, not a graph",
                        other.kind()
                    )))
                }
            },
            None => BoundaryGraph::from_spec(part)?,
        };
        out = Some(match out {
            Some(acc) => acc.disjoint_union(&g),
            None => g,
        });
    }
    out.ok_or_else(|| Error::InvalidArgument("empty graph spec".into()))
}

/// The su(2) level of modular data whose ring is the su(2) ring.
fn su2_level(md: &ModularData) -> Option<usize> {
    let l = md.rank() - 1;
    (md.ring() == &su2_fusion_ring(l)).then_some(l)
}

enum Module {
    Regular(NimRep),
    Graph(NimRep, BoundaryGraph, usize),
}

impl Module {
    fn nimrep(&self) -> &NimRep {
        match self {
            Module::Regular(n) | Module::Graph(n, _, _) => n,
        }
    }
}

fn graph_spec(job: &JobSpec) -> Result<&str> {
    job.options
        .graph
        .as_deref()
        .ok_or_else(|| Error::InvalidArgument("--graph is required for this command".into()))
}

/// NIM-rep for a `--graph` value: `regular`, or a graph spec over su(2) data.
pub fn nimrep_from_spec(md: &ModularData, spec: &str) -> Result<NimRep> {
    module_from_spec(md, spec).map(|m| match m {
        Module::Regular(n) | Module::Graph(n, _, _) => n,
    })
}

fn graph_nimrep(job: &JobSpec, md: &ModularData) -> Result<Module> {
    module_from_spec(md, graph_spec(job)?)
}

fn module_from_spec(md: &ModularData, spec: &str) -> Result<Module> {
    if spec.trim() == "regular" {
        return Ok(Module::Regular(NimRep::regular(md.ring())));
    }
    let g = parse_graph(spec)?;
    let level = su2_level(md).ok_or_else(|| {
        Error::InvalidArgument(format!("graph NIM-reps need su(2) modular data, got {}", md.name()))
    })?;
    let nr = su2_nimrep_from_graph(&g, level)?;
    Ok(Module::Graph(nr, g, level))
}

fn labels(md: &ModularData) -> Value {
    json!(md.ring().labels())
}

fn dispatch(job: &JobSpec, rep: &mut Report) -> Result<()> {
    let digits = job.options.digits;
    match &job.command {
        Command::Catalog {
            action: CatalogAction::List,
        } => {
            rep.set(
                "families",
                catalog::families()
                    .into_iter()
                    .map(|(id, d)| json!({"id": id, "description": d}))
                    .collect::<Vec<_>>(),
            );
            rep.set("ids", catalog::standard_ids());
        }
        Command::Catalog {
            action: CatalogAction::Export,
        } => {
            let md = modular(job)?;
            rep.raw = Some(Document::ModularData((*md).clone()).to_json());
        }
        Command::VerifyFusion => match load_data(job)? {
            Data::Modular(md) => {
                rep.set("name", md.name());
                rep.set("rank", md.rank());
                rep.set("labels", labels(&md));
                rep.set("dual", json!(md.ring().duals()));
                rep.check_result("fusion axioms", md.ring().verify_axioms())?;
                rep.check_result("modular identities", md.verify())?;
                rep.set("global_dimension", cyclo_json(md.global_dim(), digits));
            }
            Data::Ring(r) => {
                rep.set("rank", r.rank());
                rep.set("labels", json!(r.labels()));
                rep.set("dual", json!(r.duals()));
                rep.check_result("fusion axioms", r.verify_axioms())?;
            }
            _ => return Err(Error::InvalidArgument("verify-fusion needs a fusion ring or modular data".into())),
        },
        Command::Spectrum => {
            let md = modular(job)?;
            let es = md.spectral_idempotents()?;
            let mut rows = Vec::new();
            let mut mismatched = Vec::new();
            for i in 0..md.rank() {
                let p = md.spectrum_point(i)?;
                if md.tube_idempotent(i)? != es[i] {
                    mismatched.push(i);
                }
                rows.push(json!({
                    "label": md.ring().labels()[i],
                    "dual": md.dual(i),
                    "d": cyclo_json(&md.d()[i], digits),
                    "t": md.t()[i].to_string(),
                    "norm_sq": cyclo_json(&p.norm_sq, digits),
                }));
            }
            rep.set("name", md.name());
            rep.set("global_dimension", cyclo_json(md.global_dim(), digits));
            rep.set("labels", rows);
            rep.check(
                "spectral idempotents equal tube idempotents",
                mismatched.is_empty(),
                if mismatched.is_empty() { Value::Null } else { json!({"labels": mismatched}) },
            );
        }
        Command::Nimrep { .. } => {
            let md = modular(job)?;
            let spec = graph_spec(job)?;
            let built = graph_nimrep(job, &md);
            match built {
                Ok(m) => {
                    let nr = m.nimrep();
                    rep.check("nimrep", true, Value::Null);
                    rep.set("graph", spec);
                    rep.set("size", nr.size());
                    rep.set("vertices", json!(nr.labels()));
                    rep.set("components", nr.components().len());
                    rep.set("character", nr.character());
                }
                Err(e) if e.is_input_error() => return Err(e),
                Err(e) => rep.check("nimrep", false, error_json(&e)),
            }
        }
        Command::Profile => {
            let md = modular(job)?;
            let m = graph_nimrep(job, &md)?;
            let profile = multiplicity_profile(m.nimrep(), &md)?;
            rep.set("labels", labels(&md));
            rep.set("profile", profile.clone());
            rep.set("character", m.nimrep().character());
            if let Module::Graph(_, g, level) = &m {
                oracle_check(rep, g, *level, &profile);
            }
        }
        Command::Gauge { .. } => gauge(job, rep)?,
        Command::TmDim => {
            let md = modular(job)?;
            let m = graph_nimrep(job, &md)?;
            let r = tm_dimension_report(m.nimrep(), &md)?;
            rep.set("d_tm", cyclo_json(&r.d_tm, digits));
            rep.set("global_dimension", cyclo_json(&r.global_dim, digits));
            rep.set("mult_of_unit", r.mult_of_unit);
            rep.set("indecomposable", r.indecomposable);
            rep.set("unit_multiplicity_one", r.unit_multiplicity_one);
            rep.set("dimension_is_global", r.dimension_is_global);
            rep.set("verdict", if r.indecomposable { "indecomposable" } else { "decomposable" });
            rep.check("d(TM) = multOfUnit * d(C)", r.chain_holds, Value::Null);
            rep.check("verdicts agree", r.consistent(), Value::Null);
        }
        Command::Invariant {
            action: InvariantAction::Verify,
        } => {
            let md = modular(job)?;
            let path = job
                .options
                .z
                .as_deref()
                .ok_or_else(|| Error::InvalidArgument("--z <invariant file> is required".into()))?;
            let z = match parse_data_file(path)? {
                Document::Invariant(z) => z,
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "{path} is a {} document, not an invariant",
                        other.kind()
                    )))
                }
            };
            let v = verify_invariant(z.z(), &md)?;
            rep.set("provenance", z.provenance().as_str());
            rep.set("z", z.z().to_rows());
            for (name, c) in [
                ("integrality", &v.integrality),
                ("Z00 = 1", &v.z00),
                ("S-commutation", &v.s_commutation),
                ("T-compatibility", &v.t_compatibility),
            ] {
                rep.check(name, c.passed, c.witness.map_or(Value::Null, |(i, j)| json!({"witness": [i, j]})));
            }
            if job.options.graph.is_some() {
                let m = graph_nimrep(job, &md)?;
                let d = match_diagonal(z.z(), m.nimrep(), &md)?;
                rep.set("diagonal", d.diagonal.clone());
                rep.set("profile", d.profile.clone());
                rep.check(
                    "diagonal matches the NIM-rep profile",
                    d.passed,
                    if d.passed { Value::Null } else { json!({"mismatches": d.mismatches}) },
                );
            }
        }
        Command::Invariant {
            action: InvariantAction::Search,
        } => {
            let md = modular(job)?;
            let bound = job.options.bound.unwrap_or(DEFAULT_ENTRY_BOUND);
            let found = enumerate_invariants_with_cap(&md, bound, cap(job))?;
            rep.set("bound", bound);
            rep.set("count", found.len());
            let module = match job.options.graph {
                Some(_) => Some(graph_nimrep(job, &md)?),
                None => None,
            };
            let mut matches = Vec::new();
            let mut list = Vec::new();
            for (k, z) in found.iter().enumerate() {
                let v = verify_invariant(z.z(), &md)?;
                rep.all_passed &= v.passed();
                if let Some(m) = &module {
                    if match_diagonal(z.z(), m.nimrep(), &md)?.passed {
                        matches.push(k);
                    }
                }
                list.push(json!({"z": z.z().to_rows(), "diagonal": z.dual_diagonal(&md)}));
            }
            rep.check("every candidate re-verifies", rep.all_passed, Value::Null);
            rep.set("invariants", list);
            if module.is_some() {
                rep.check("some invariant matches the NIM-rep diagonal", !matches.is_empty(), Value::Null);
                rep.set("matching", matches);
            }
        }
        Command::DiagTheorem => diag_theorem(job, rep)?,
    }
    Ok(())
}

fn cap(job: &JobSpec) -> u64 {
    job.options.search_cap.unwrap_or_else(search_cap_from_env)
}

fn oracle_check(rep: &mut Report, g: &BoundaryGraph, level: usize, profile: &[i64]) -> Option<Vec<i64>> {
    match oracle::su2_multiplicities(g.adjacency(), level) {
        Ok(counts) => {
            let counts: Vec<i64> = counts.into_iter().map(|c| c as i64).collect();
            let ok = counts == profile;
            rep.check(
                "profile matches the eigenvalue oracle",
                ok,
                if ok { Value::Null } else { json!({"oracle": counts}) },
            );
            rep.set("oracle", counts.clone());
            Some(counts)
        }
        Err(off) => {
            rep.check(
                "profile matches the eigenvalue oracle",
                false,
                json!({"message": format!("an eigenvalue is {off:e} away from every 2cos(pi(I+1)/h)")}),
            );
            None
        }
    }
}

fn gauge(job: &JobSpec, rep: &mut Report) -> Result<()> {
    let digits = job.options.digits;
    match load_data(job)? {
        Data::Gauge(gp) => {
            let triangles: Vec<Value> = triangle_checks(&gp)
                .into_iter()
                .map(|t| {
                    let (a, b, c) = t.nodes;
                    json!({"nodes": [gp.nodes()[a], gp.nodes()[b], gp.nodes()[c]], "holds": t.holds})
                })
                .collect();
            rep.set("triangles", triangles);
            let sol = match solve_gauge(&gp) {
                Ok(s) => s,
                Err(e) if e.is_input_error() => return Err(e),
                Err(e) => {
                    rep.check("cocycle", false, error_json(&e));
                    return Ok(());
                }
            };
            rep.check("cocycle", true, Value::Null);
            let comps: Vec<Value> = sol
                .components
                .iter()
                .map(|c| {
                    json!({
                        "root": gp.nodes()[c[0]],
                        "nodes": c.iter().map(|&i| gp.nodes()[i].clone()).collect::<Vec<_>>(),
                        "lambda": c.iter().map(|&i| cyclo_json(&sol.lambda[i], digits)).collect::<Vec<_>>(),
                    })
                })
                .collect();
            rep.set("components", comps);
        }
        Data::Modular(md) => {
            let m = graph_nimrep(job, &md)?;
            let nr = m.nimrep();
            let lambda = match d_eigenvector(nr, &md) {
                Ok(l) => l,
                Err(e) if e.is_input_error() => return Err(e),
                Err(e) => {
                    rep.check("d-eigenvector", false, error_json(&e));
                    return Ok(());
                }
            };
            rep.set("vertices", json!(nr.labels()));
            rep.set("lambda", lambda.iter().map(|x| cyclo_json(x, digits)).collect::<Vec<_>>());
            let v = verify_phi_isomorphism(nr, &lambda, &md)?;
            rep.check("E intertwines the fusion action", v.intertwines, Value::Null);
            rep.check("all-ones is a d-eigenvector of E", v.ones_is_d_eigenvector, Value::Null);
            rep.check("lambda is a d-eigenvector of N", v.lambda_is_d_eigenvector, Value::Null);
            rep.check("verdicts agree", v.consistent(), Value::Null);
            let e = encircling_matrices(nr, &lambda)?;
            let pe = encircling_profile(&e, &md)?;
            let pn = multiplicity_profile(nr, &md)?;
            rep.check("profiles of E and N coincide", pe == pn, Value::Null);
        }
        _ => {
            return Err(Error::InvalidArgument(
                "gauge solve needs a gauge document, or modular data with --graph".into(),
            ))
        }
    }
    Ok(())
}

fn diag_theorem(job: &JobSpec, rep: &mut Report) -> Result<()> {
    let md = modular(job)?;
    let m = match graph_nimrep(job, &md) {
        Ok(m) => m,
        Err(e) if e.is_input_error() => return Err(e),
        Err(e) => {
            rep.check("nimrep", false, error_json(&e));
            return Ok(());
        }
    };
    let nr = m.nimrep();
    rep.check("nimrep", true, Value::Null);
    let partial = diagonal_profile_as_z(nr, &md)?;
    let diagonal = partial.diagonal();
    rep.set("labels", labels(&md));
    rep.set("diagonal", diagonal.clone());
    if let Module::Graph(_, g, level) = &m {
        oracle_check(rep, g, *level, &diagonal);
    }
    let bound = job
        .options
        .bound
        .unwrap_or_else(|| diagonal.iter().copied().max().unwrap_or(1).max(1));
    let found = enumerate_invariants_with_cap(&md, bound, cap(job))?;
    rep.set("bound", bound);
    rep.set("candidates", found.len());
    let mut matched = Vec::new();
    for z in &found {
        if match_diagonal(z.z(), nr, &md)?.passed {
            matched.push(z.z().to_rows());
        }
    }
    rep.check("an enumerated invariant realises the diagonal", !matched.is_empty(), Value::Null);
    rep.set("matching", matched);
    Ok(())
}

/// Plain-text rendering of a report: a status line, the checks as a table,
/// then the remaining fields.
pub fn render_human(v: &Value) -> String {
    let mut out = String::new();
    let obj = match v.as_object() {
        Some(o) => o,
        None => return format!("{v}\n"),
    };
    let command = obj.get("command").and_then(Value::as_str).unwrap_or("report");
    let status = obj.get("status").and_then(Value::as_str).unwrap_or("");
    out.push_str(&format!("{command}: {}\n", status.to_uppercase()));
    if let Some(e) = obj.get("error") {
        out.push_str(&format!("  error: {}\n", e["message"].as_str().unwrap_or("")));
        if let Some(w) = e.get("witness") {
            out.push_str(&format!("  witness: {}\n", compact(w)));
        }
    }
    if let Some(Value::Array(checks)) = obj.get("checks") {
        let width = checks.iter().filter_map(|c| c["name"].as_str()).map(str::len).max().unwrap_or(0);
        for c in checks {
            let mark = if c["passed"].as_bool() == Some(true) { "ok  " } else { "FAIL" };
            let name = c["name"].as_str().unwrap_or("");
            match c.get("detail") {
                Some(d) => out.push_str(&format!("  [{mark}] {name:<width$}  {}\n", compact(d))),
                None => out.push_str(&format!("  [{mark}] {name}\n")),
            }
        }
    }
    for (k, val) in obj {
        if matches!(k.as_str(), "schema_version" | "command" | "status" | "checks" | "error") {
            continue;
        }
        render_field(&mut out, k, val, 0);
    }
    out
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.iter().all(|x| !x.is_array() && !x.is_object()),
        Value::Object(o) => o.values().all(|x| !x.is_array() && !x.is_object()) && o.len() <= 3,
        _ => true,
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("[{}]", a.iter().map(compact).collect::<Vec<_>>().join(", ")),
        Value::Object(o) if o.contains_key("exact") && o.contains_key("approx") => {
            format!("{} ~ {}", compact(&o["exact"]), compact(&o["approx"]))
        }
        Value::Object(o) => format!(
            "{{{}}}",
            o.iter().map(|(k, x)| format!("{k}: {}", compact(x))).collect::<Vec<_>>().join(", ")
        ),
        other => other.to_string(),
    }
}

fn render_field(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    if is_flat(v) {
        out.push_str(&format!("{pad}{key}: {}\n", compact(v)));
        return;
    }
    out.push_str(&format!("{pad}{key}:\n"));
    match v {
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                render_field(out, &i.to_string(), x, depth + 1);
            }
        }
        Value::Object(o) => {
            for (k, x) in o {
                render_field(out, k, x, depth + 1);
            }
        }
        _ => unreachable!("flat"),
    }
}
