//! The `fgl` command line. [`run`] does all the work so it can be driven
//! from tests; the binary only forwards its arguments and exit code.

use super::document::{parse_graph_document, serialize_graph, DocumentError, Loaded};
use super::records::{read_report, record, render, to_value, write_report};
use crate::blocks::{components_with_disk_support, extract_extremal_block, verify_block_certificate};
use crate::detect::{
    find_extended_s_cycles, find_generalized_s_cycles, find_level_edges, find_scharlemann_cycles, find_x_cycles,
    find_x_faces, reduced_graph, two_cornered_pb_in, two_cornered_sa_in, verify_certificate,
    Certificate, StructureKind,
};
use crate::enumerate::{run_campaign, CampaignError, CampaignSpec, Limits};
use crate::lemmas::{check_lemma, reduced_valency_analysis, sl_vertices, verify_witness, PartnerView, GRAPH_LEMMAS};
use crate::pair::check_vertex_count_bounds;
use crate::surface::{classify_surface, trace_faces, FatGraph, Label, SurfaceTag};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::io::Write;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;
pub const EXIT_LIMIT: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "fgl", about = "Labelled intersection graphs on small surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Structure {
    Scharlemann,
    SCycle,
    Extended,
    Generalized,
    Level,
    XCycle,
    XFace,
    TwoCorneredPb,
    TwoCorneredSa,
}

#[derive(clap::Args, Debug)]
struct GraphArgs {
    file: PathBuf,
    /// Which graph of the document to use.
    #[arg(long, default_value_t = 0)]
    graph: u8,
    /// Partner surface type, for documents holding a single graph.
    #[arg(long)]
    partner: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Load a document and run every structural check.
    Validate { file: PathBuf },
    /// Trace the faces of one graph.
    Faces(GraphArgs),
    /// Find structures of one kind.
    Detect {
        #[command(flatten)]
        g: GraphArgs,
        #[arg(long, value_enum)]
        structure: Structure,
        #[arg(long)]
        label: Option<Label>,
    },
    /// Amalgamate parallel families and run the valency analysis.
    Reduce(GraphArgs),
    /// Positive components, disk supports and the extremal block.
    Blocks(GraphArgs),
    /// Run one lemma check.
    Check {
        #[command(flatten)]
        g: GraphArgs,
        #[arg(long)]
        lemma: String,
    },
    /// Run a campaign.
    Enumerate {
        #[arg(long)]
        campaign: String,
        #[arg(long)]
        max_vertices: Option<usize>,
        #[arg(long)]
        max_edges: Option<usize>,
        /// `a..b` or a single value.
        #[arg(long)]
        n_partner: Option<String>,
        #[arg(long)]
        delta: Option<String>,
        /// Own and partner type, as in `SP`.
        #[arg(long)]
        types: Option<String>,
        /// Defaults to $WORKERS, then to the number of cores.
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        max_nodes: Option<u64>,
        #[arg(long)]
        max_millis: Option<u64>,
        #[arg(long)]
        resume: Option<String>,
    },
    /// Summarize a campaign report and re-verify its violations.
    Report { file: PathBuf },
}

struct Failure {
    code: i32,
    kind: &'static str,
    message: String,
}

fn fail(code: i32, kind: &'static str, message: impl Into<String>) -> Failure {
    Failure { code, kind, message: message.into() }
}

impl From<DocumentError> for Failure {
    fn from(e: DocumentError) -> Self {
        match e {
            DocumentError::Parse { .. } => fail(EXIT_PARSE, "parse", e.to_string()),
            DocumentError::Invariant(_) => fail(EXIT_INVARIANT, "invariant", e.to_string()),
        }
    }
}

type Outcome = Result<(i32, Value), Failure>;

/// Parses `args` (program name first), runs the command and returns its
/// exit code. Records go to `out`, diagnostics to `err`.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Validate { file } => validate(&file),
        Command::Faces(g) => faces(&g),
        Command::Detect { g, structure, label } => detect(&g, structure, label),
        Command::Reduce(g) => reduce(&g),
        Command::Blocks(g) => blocks(&g),
        Command::Check { g, lemma } => check(&g, &lemma),
        Command::Enumerate {
            campaign,
            max_vertices,
            max_edges,
            n_partner,
            delta,
            types,
            workers,
            out: path,
            max_nodes,
            max_millis,
            resume,
        } => (|| {
            let mut spec = CampaignSpec::new(campaign.parse().map_err(|e: CampaignError| fail(EXIT_PARSE, "usage", e.to_string()))?);
            let b = &mut spec.bounds;
            b.max_vertices = max_vertices.unwrap_or(b.max_vertices);
            b.max_edges = max_edges.unwrap_or(b.max_edges);
            if let Some(r) = n_partner {
                b.n_partner = range(&r)?;
            }
            if let Some(r) = delta {
                b.delta = range(&r)?;
            }
            if let Some(t) = types {
                b.types = Some(type_pair(&t)?);
            }
            spec.workers = workers.or_else(env_workers).unwrap_or_else(default_workers);
            spec.limits = Limits { max_nodes, max_millis };
            spec.resume = resume;
            enumerate(&spec, path.as_deref(), err)
        })(),
        Command::Report { file } => report(&file),
    };
    match outcome {
        Ok((code, v)) => {
            let _ = out.write_all(render(&v).as_bytes());
            code
        }
        Err(f) => {
            let v = record("error", json!({ "kind": f.kind, "message": f.message, "exit_code": f.code }));
            let _ = out.write_all(render(&v).as_bytes());
            let _ = writeln!(err, "fgl: {}", f.message);
            f.code
        }
    }
}

fn env_workers() -> Option<usize> {
    std::env::var("WORKERS").ok()?.trim().parse().ok().filter(|&w| w > 0)
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn range(s: &str) -> Result<(u32, u32), Failure> {
    let bad = || fail(EXIT_PARSE, "usage", format!("bad range {s:?}, expected a..b"));
    let (a, b) = s.split_once("..").unwrap_or((s, s));
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn tag(s: &str) -> Result<SurfaceTag, Failure> {
    SurfaceTag::parse(s).ok_or_else(|| fail(EXIT_PARSE, "usage", format!("unknown surface type {s:?}")))
}

fn type_pair(s: &str) -> Result<(SurfaceTag, SurfaceTag), Failure> {
    let cs: Vec<String> = s.chars().map(String::from).collect();
    match cs.as_slice() {
        [a, b] => Ok((tag(a)?, tag(b)?)),
        _ => Err(fail(EXIT_PARSE, "usage", format!("bad type pair {s:?}, expected two letters"))),
    }
}

fn load(path: &std::path::Path) -> Result<Loaded, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| fail(EXIT_PARSE, "io", format!("{}: {e}", path.display())))?;
    Ok(parse_graph_document(&text)?)
}

/// The chosen graph, its index, the partner type and the partner view.
struct Target {
    loaded: Loaded,
    index: u8,
    partner: Option<SurfaceTag>,
}

impl Target {
    fn open(a: &GraphArgs) -> Result<Self, Failure> {
        let loaded = load(&a.file)?;
        let index = if a.graph == 0 { loaded.primary_index() } else { a.graph };
        if loaded.graph(index).is_none() {
            return Err(fail(EXIT_PARSE, "usage", format!("document has no graph {index}")));
        }
        let from_doc = loaded.graph(3 - index).map(|g| g.kind().tag);
        let partner = match &a.partner {
            Some(p) => Some(tag(p)?),
            None => from_doc,
        };
        Ok(Target { loaded, index, partner })
    }

    fn graph(&self) -> &FatGraph {
        self.loaded.graph(self.index).expect("checked on open")
    }

    fn view(&self) -> Option<PartnerView<'_>> {
        self.loaded.pair().map(|p| PartnerView::from_pair(p, self.index))
    }

    fn need_partner(&self) -> Result<SurfaceTag, Failure> {
        self.partner.ok_or_else(|| fail(EXIT_PARSE, "usage", "the partner type is needed: pass --partner or a pair document"))
    }
}

fn graph_summary(index: u8, g: &FatGraph) -> Value {
    json!({
        "index": index,
        "type": g.kind().tag,
        "vertices": g.n_vertices(),
        "edges": g.n_edges(),
        "n_partner": g.n_partner(),
        "delta": g.delta(),
        "vertex_count_bound": to_value(&check_vertex_count_bounds(g, g.kind().tag)),
    })
}

fn validate(file: &std::path::Path) -> Outcome {
    let l = load(file)?;
    let graphs: Vec<Value> = [1, 2].into_iter().filter_map(|i| l.graph(i).map(|g| graph_summary(i, g))).collect();
    Ok((EXIT_OK, record("validate", json!({ "pair": l.pair().is_some(), "graphs": graphs }))))
}

fn faces(a: &GraphArgs) -> Outcome {
    let t = Target::open(a)?;
    let g = t.graph();
    let tr = trace_faces(g);
    let summary = classify_surface(g).map_err(|e| fail(EXIT_INVARIANT, "invariant", e.to_string()))?;
    Ok((EXIT_OK, record("faces", json!({ "graph": t.index, "surface": to_value(&summary), "faces": to_value(&tr.faces) }))))
}

fn certificates_record(kind: &str, g: &FatGraph, certs: Vec<Certificate>, extra: Value) -> (i32, Value) {
    let code = if certs.is_empty() { EXIT_VIOLATION } else { EXIT_OK };
    let checked: Vec<bool> = certs.iter().map(|c| verify_any(g, c).is_ok()).collect();
    let mut body = json!({ "structure": kind, "count": certs.len(), "certificates": to_value(&certs), "reverified": checked });
    if let (Value::Object(b), Value::Object(e)) = (&mut body, extra) {
        b.extend(e);
    }
    (code, record("detect", body))
}

fn verify_any(g: &FatGraph, c: &Certificate) -> Result<(), String> {
    match c.kind {
        StructureKind::ExtremalBlock | StructureKind::Cluster | StructureKind::SeemlyPair => {
            verify_block_certificate(g, c).map_err(|e| e.to_string())
        }
        _ => verify_certificate(g, c).map_err(|e| e.to_string()),
    }
}

fn detect(a: &GraphArgs, s: Structure, label: Option<Label>) -> Outcome {
    let t = Target::open(a)?;
    let g = t.graph();
    let need_label = || label.ok_or_else(|| fail(EXIT_PARSE, "usage", "this structure needs --label"));
    let all_faces: Vec<usize> = (0..trace_faces(g).faces.len()).collect();
    let (name, certs) = match s {
        Structure::Scharlemann => ("scharlemann", find_scharlemann_cycles(g)),
        Structure::SCycle => {
            ("s-cycle", find_scharlemann_cycles(g).into_iter().filter(|c| c.kind == StructureKind::SCycle).collect())
        }
        Structure::Extended => ("extended", find_extended_s_cycles(g)),
        Structure::Generalized => ("generalized", find_generalized_s_cycles(g)),
        Structure::Level => ("level", find_level_edges(g)),
        Structure::XCycle => ("x-cycle", find_x_cycles(g, need_label()?)),
        Structure::XFace => ("x-face", find_x_faces(g, need_label()?)),
        Structure::TwoCorneredPb => ("two-cornered-pb", two_cornered_pb_in(g, &all_faces)),
        Structure::TwoCorneredSa => ("two-cornered-sa", two_cornered_sa_in(g, &all_faces)),
    };
    Ok(certificates_record(name, g, certs, json!({ "graph": t.index, "label": label })))
}

fn reduce(a: &GraphArgs) -> Outcome {
    let t = Target::open(a)?;
    let g = t.graph();
    let r = reduced_graph(g);
    let mut body = json!({
        "graph": t.index,
        "reduced": serialize_graph(t.index, &r.graph),
        "representative": r.representative,
        "multiplicity": r.multiplicity,
        "families": to_value(&r.families),
    });
    let mut code = EXIT_OK;
    if let Some(p) = t.partner {
        match reduced_valency_analysis(g, p) {
            Ok(v) => {
                if !v.holds {
                    code = EXIT_VIOLATION;
                }
                body["valency"] = to_value(&v);
            }
            Err(m) => {
                code = EXIT_VIOLATION;
                body["valency_error"] = to_value(&m);
            }
        }
    }
    Ok((code, record("reduce", body)))
}

fn blocks(a: &GraphArgs) -> Outcome {
    let t = Target::open(a)?;
    let g = t.graph();
    let comps = components_with_disk_support(g).map_err(|e| fail(EXIT_INVARIANT, "invariant", e.to_string()))?;
    let view = t.view();
    let sl = sl_vertices(g, view.as_ref());
    let mut body = json!({ "graph": t.index, "components": to_value(&comps), "sl_vertices": sl });
    let code = match extract_extremal_block(g, &sl) {
        Ok(b) => {
            let c = b.certificate(g);
            body["reverified"] = json!(verify_any(g, &c).is_ok());
            body["certificate"] = to_value(&c);
            body["block"] = to_value(&b);
            EXIT_OK
        }
        Err(e) => {
            body["block_error"] = json!(e.to_string());
            EXIT_VIOLATION
        }
    };
    Ok((code, record("blocks", body)))
}

fn check(a: &GraphArgs, lemma: &str) -> Outcome {
    let t = Target::open(a)?;
    let g = t.graph();
    let partner = t.need_partner()?;
    let view = t.view();
    let verdicts = check_lemma(g, partner, lemma, view.as_ref()).ok_or_else(|| {
        fail(EXIT_PARSE, "usage", format!("unknown lemma {lemma:?}; known: {}", GRAPH_LEMMAS.join(", ")))
    })?;
    let holds = verdicts.iter().all(|v| v.holds);
    let witnesses: Vec<Value> =
        verdicts.iter().map(|v| json!(verify_witness(g, v).map_or_else(|e| e, |()| "ok".to_string()))).collect();
    let body = json!({
        "graph": t.index,
        "partner": partner,
        "lemma": lemma,
        "holds": holds,
        "verdicts": to_value(&verdicts),
        "witness_check": witnesses,
    });
    Ok((if holds { EXIT_OK } else { EXIT_VIOLATION }, record("check", body)))
}

fn enumerate(spec: &CampaignSpec, path: Option<&std::path::Path>, err: &mut dyn Write) -> Outcome {
    let (report, stats, code) = match run_campaign(spec) {
        Ok((r, s)) => {
            let code = if r.violations.is_empty() { EXIT_OK } else { EXIT_VIOLATION };
            (r, s, code)
        }
        Err(CampaignError::ResourceLimit { report, stats, .. }) => (*report, stats, EXIT_LIMIT),
        Err(e @ CampaignError::InvalidSpec(_)) => return Err(fail(EXIT_PARSE, "usage", e.to_string())),
    };
    let _ = writeln!(err, "fgl: {} units in {} ms on {} workers", report.units_done, stats.elapsed_ms, stats.workers);
    let text = write_report(&report);
    match path {
        Some(p) => {
            std::fs::write(p, &text).map_err(|e| fail(EXIT_PARSE, "io", format!("{}: {e}", p.display())))?;
            let body = json!({
                "out": p.display().to_string(),
                "campaign": report.campaign,
                "complete": report.complete,
                "violations": report.violations.len(),
                "resume_token": report.resume_token,
            });
            Ok((code, record("enumerate", body)))
        }
        None => Ok((code, to_value(&report))),
    }
}

fn report(file: &std::path::Path) -> Outcome {
    let text = std::fs::read_to_string(file).map_err(|e| fail(EXIT_PARSE, "io", format!("{}: {e}", file.display())))?;
    let r = read_report(&text).map_err(|e| fail(EXIT_PARSE, "parse", e.to_string()))?;
    let rechecked: Vec<Value> = r
        .violations
        .iter()
        .map(|v| {
            let Some(doc) = &v.graph else { return json!("no graph") };
            match parse_graph_document(doc) {
                Ok(l) => {
                    let g = l.primary();
                    let errs: Vec<String> = v.certificates.iter().filter_map(|c| verify_any(g, c).err()).collect();
                    json!(if errs.is_empty() { "certificates re-verify".to_string() } else { errs.join("; ") })
                }
                Err(e) => json!(format!("graph does not load: {e}")),
            }
        })
        .collect();
    let code = if !r.violations.is_empty() {
        EXIT_VIOLATION
    } else if !r.complete {
        EXIT_LIMIT
    } else {
        EXIT_OK
    };
    let body = json!({
        "campaign": r.campaign,
        "complete": r.complete,
        "units": [r.units_done, r.units_total],
        "instances_generated": r.instances_generated,
        "instances_after_canonical_rejection": r.instances_after_canonical_rejection,
        "checks": r.checks,
        "structures_found": r.structures_found,
        "violations": r.violations.len(),
        "violation_recheck": rechecked,
        "resume_token": r.resume_token,
    });
    Ok((code, record("report", body)))
}

/// Entry point for the binary.
pub fn main_with_env() -> i32 {
    let (mut out, mut err) = (std::io::stdout().lock(), std::io::stderr().lock());
    run(std::env::args_os(), &mut out, &mut err)
}
