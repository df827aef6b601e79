//! Campaigns: bounded exhaustive checks of the combinatorial steps, run over
//! an ordered list of work units.
//!
//! Units run in fixed-size batches on a thread pool and are merged in unit
//! order, so a report depends only on its spec. Timing lives in
//! [`RunStats`], never in the report.

use super::families::enumerate_parallel_family_labelings;
use super::graphs::{decorate, map_tasks, GraphBounds, MapTask};
use super::interior::enumerate_xface_interiors;
use super::maps::{closed_tag, is_canonical, Decor, MapLimits, RawMap};
use super::oracle::flag_orbits;
use crate::blocks::{
    build_cluster, extract_extremal_block, find_level1_pair, partner_contexts, split_disk, verify_block_certificate,
    DiskGraph, SplitMode,
};
use crate::detect::{sl_labels, two_cornered_pb_in, verify_certificate, Certificate, StructureKind};
use crate::io::serialize_graph;
use crate::lemmas::{
    block_euler_contradiction, consecutive_block_endpoints, family_arithmetic, forbidden_cycles,
    negative_family_bounds, positive_family_bound, positive_family_bounds, sl_budget, xface_in_block,
};
use crate::surface::{orientable, trace_faces, FatGraph, Sign, SurfaceTag};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;
use thiserror::Error;

pub const REPORT_FORMAT: &str = "fgl-report/1";
const BATCH: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Campaign {
    ParallelFamily,
    Prop31,
    Prop41,
    Prop51,
    Sec6Ss,
    Sec8Euler,
    Sec8Arith,
    FaceTraceOracle,
}

impl Campaign {
    pub const ALL: [Campaign; 8] = [
        Campaign::ParallelFamily,
        Campaign::Prop31,
        Campaign::Prop41,
        Campaign::Prop51,
        Campaign::Sec6Ss,
        Campaign::Sec8Euler,
        Campaign::Sec8Arith,
        Campaign::FaceTraceOracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Campaign::ParallelFamily => "parallel-family",
            Campaign::Prop31 => "prop31",
            Campaign::Prop41 => "prop41",
            Campaign::Prop51 => "prop51",
            Campaign::Sec6Ss => "sec6-ss",
            Campaign::Sec8Euler => "sec8-euler",
            Campaign::Sec8Arith => "sec8-arith",
            Campaign::FaceTraceOracle => "face-trace-oracle",
        }
    }

    /// Bounds used when the caller gives none.
    pub fn default_bounds(self) -> CampaignBounds {
        let b = |max_vertices, max_edges, n_partner, delta| CampaignBounds {
            max_vertices,
            max_edges,
            n_partner,
            delta,
            types: None,
        };
        match self {
            Campaign::ParallelFamily => b(0, 0, (1, 12), (1, 1)),
            Campaign::Prop31 => b(4, 0, (3, 4), (1, 1)),
            Campaign::Prop41 => b(4, 0, (4, 4), (1, 1)),
            Campaign::Prop51 => b(5, 6, (1, 1), (1, 1)),
            Campaign::Sec6Ss => b(3, 6, (1, 3), (2, 3)),
            Campaign::Sec8Euler => b(100, 0, (1, 1), (2, 5)),
            Campaign::Sec8Arith => b(0, 0, (2, 50), (4, 4)),
            Campaign::FaceTraceOracle => b(7, 6, (1, 1), (1, 1)),
        }
    }
}

impl fmt::Display for Campaign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Campaign {
    type Err = CampaignError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Campaign::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| CampaignError::InvalidSpec(format!("unknown campaign {s:?}")))
    }
}

/// Search bounds. Each campaign reads the fields it needs; `types` is
/// (own surface, partner surface).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignBounds {
    pub max_vertices: usize,
    pub max_edges: usize,
    pub n_partner: (u32, u32),
    pub delta: (u32, u32),
    pub types: Option<(SurfaceTag, SurfaceTag)>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Stop once this many instances have been generated.
    pub max_nodes: Option<u64>,
    pub max_millis: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignSpec {
    pub campaign: Campaign,
    pub bounds: CampaignBounds,
    pub workers: usize,
    pub limits: Limits,
    pub resume: Option<String>,
}

impl CampaignSpec {
    pub fn new(campaign: Campaign) -> Self {
        CampaignSpec {
            campaign,
            bounds: campaign.default_bounds(),
            workers: 1,
            limits: Limits::default(),
            resume: None,
        }
    }

    pub fn validate(&self) -> Result<(), CampaignError> {
        let bad = |m: String| Err(CampaignError::InvalidSpec(m));
        let b = &self.bounds;
        if self.workers == 0 {
            return bad("workers must be positive".into());
        }
        if b.n_partner.0 == 0 || b.n_partner.0 > b.n_partner.1 {
            return bad(format!("bad partner range {:?}", b.n_partner));
        }
        if b.delta.0 == 0 || b.delta.0 > b.delta.1 {
            return bad(format!("bad delta range {:?}", b.delta));
        }
        let gate = |ok: bool, what: &str| if ok { Ok(()) } else { bad(format!("{}: {what}", self.campaign)) };
        match self.campaign {
            Campaign::ParallelFamily => gate(b.n_partner.1 <= 64, "n_partner at most 64"),
            Campaign::Prop31 => gate(b.n_partner.0 >= 3 && b.n_partner.1 <= 8, "n_partner in 3..=8")
                .and(gate(b.max_vertices <= 6, "at most 6 corners")),
            Campaign::Prop41 => gate(b.n_partner.0 >= 4 && b.n_partner.1 <= 8, "n_partner in 4..=8")
                .and(gate(b.max_vertices <= 6, "at most 6 corners")),
            Campaign::Prop51 | Campaign::FaceTraceOracle => gate(b.max_edges <= 8, "at most 8 edges"),
            Campaign::Sec6Ss => gate(b.max_edges <= 8, "at most 8 edges")
                .and(gate(b.n_partner.1 <= 6 && b.delta.1 <= 6, "n_partner and delta at most 6")),
            Campaign::Sec8Euler => gate(b.max_vertices <= 10_000, "at most 10000 vertices"),
            Campaign::Sec8Arith => gate(b.n_partner.0 >= 2 && b.n_partner.1 <= 400, "n1 in 2..=400"),
        }
    }
}

/// A found violation with everything needed to check it again.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub unit: usize,
    pub description: String,
    pub certificates: Vec<Certificate>,
    /// Graph document of the offending instance, when there is one.
    pub graph: Option<String>,
    pub data: serde_json::Value,
    pub reproduce: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub format: String,
    pub campaign: Campaign,
    pub bounds: CampaignBounds,
    pub units_total: usize,
    pub first_unit: usize,
    pub units_done: usize,
    pub instances_generated: u64,
    pub instances_after_canonical_rejection: u64,
    pub checks: u64,
    pub structures_found: BTreeMap<String, u64>,
    pub violations: Vec<Violation>,
    pub complete: bool,
    pub resume_token: Option<String>,
}

impl CampaignReport {
    fn empty(spec: &CampaignSpec, units_total: usize, first_unit: usize) -> Self {
        CampaignReport {
            format: REPORT_FORMAT.into(),
            campaign: spec.campaign,
            bounds: spec.bounds.clone(),
            units_total,
            first_unit,
            units_done: 0,
            instances_generated: 0,
            instances_after_canonical_rejection: 0,
            checks: 0,
            structures_found: BTreeMap::new(),
            violations: Vec::new(),
            complete: false,
            resume_token: None,
        }
    }

    fn absorb_unit(&mut self, r: UnitResult) {
        self.units_done += 1;
        self.instances_generated += r.generated;
        self.instances_after_canonical_rejection += r.canonical;
        self.checks += r.checks;
        for (k, v) in r.structures {
            *self.structures_found.entry(k).or_default() += v;
        }
        self.violations.extend(r.violations);
    }

    /// Appends the report of a resumed run that picked up where this one
    /// stopped.
    pub fn merge(&mut self, later: CampaignReport) -> Result<(), CampaignError> {
        if later.campaign != self.campaign
            || later.bounds != self.bounds
            || later.first_unit != self.first_unit + self.units_done
        {
            return Err(CampaignError::InvalidSpec("reports do not continue each other".into()));
        }
        self.units_done += later.units_done;
        self.instances_generated += later.instances_generated;
        self.instances_after_canonical_rejection += later.instances_after_canonical_rejection;
        self.checks += later.checks;
        for (k, v) in later.structures_found {
            *self.structures_found.entry(k).or_default() += v;
        }
        self.violations.extend(later.violations);
        self.complete = later.complete;
        self.resume_token = later.resume_token;
        Ok(())
    }
}

/// Wall-clock and scheduling figures. Kept out of the report so that
/// reports stay byte-identical across runs and worker counts.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunStats {
    pub elapsed_ms: u64,
    pub workers: usize,
    pub units_per_worker: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CampaignError {
    #[error("invalid campaign spec: {0}")]
    InvalidSpec(String),
    #[error("resource limit reached after {} units; resume with {token}", report.units_done)]
    ResourceLimit { report: Box<CampaignReport>, stats: RunStats, token: String },
}

pub fn resume_token(c: Campaign, unit: usize) -> String {
    format!("resume:v1:{}:{unit}", c.name())
}

fn parse_token(c: Campaign, token: &str) -> Result<usize, CampaignError> {
    let bad = || CampaignError::InvalidSpec(format!("bad resume token {token:?}"));
    let rest = token.strip_prefix("resume:v1:").ok_or_else(bad)?;
    let (name, unit) = rest.rsplit_once(':').ok_or_else(bad)?;
    if name != c.name() {
        return Err(CampaignError::InvalidSpec(format!("token is for campaign {name}")));
    }
    unit.parse().map_err(|_| bad())
}

#[derive(Debug, Default)]
struct UnitResult {
    generated: u64,
    canonical: u64,
    checks: u64,
    structures: BTreeMap<String, u64>,
    violations: Vec<Violation>,
}

impl UnitResult {
    fn count(&mut self, key: impl Into<String>) {
        self.add(key, 1);
    }

    fn add(&mut self, key: impl Into<String>, by: u64) {
        *self.structures.entry(key.into()).or_default() += by;
    }
}

enum Unit {
    Family { n: u32, partner: SurfaceTag },
    Interior { n: u32, mode: SplitMode },
    Map { task: MapTask, lim: MapLimits },
    Decorated { task: MapTask, lim: MapLimits, n: u32, delta: u32 },
    Delta(u32),
    N1(u32),
}

fn units(spec: &CampaignSpec) -> Vec<Unit> {
    let b = &spec.bounds;
    let ns = b.n_partner.0..=b.n_partner.1;
    match spec.campaign {
        Campaign::ParallelFamily => {
            let partners = b.types.map_or(SurfaceTag::ALL.to_vec(), |t| vec![t.1]);
            ns.flat_map(|n| partners.iter().map(move |&partner| Unit::Family { n, partner })).collect()
        }
        Campaign::Prop31 => ns.map(|n| Unit::Interior { n, mode: SplitMode::PB }).collect(),
        Campaign::Prop41 => ns.map(|n| Unit::Interior { n, mode: SplitMode::SA }).collect(),
        Campaign::Prop51 | Campaign::FaceTraceOracle => {
            if b.max_vertices == 0 {
                return Vec::new();
            }
            let lim = MapLimits { max_vertices: b.max_vertices, max_edges: b.max_edges, degree: None };
            map_tasks(&lim).into_iter().map(|task| Unit::Map { task, lim }).collect()
        }
        Campaign::Sec6Ss => {
            let mut out = Vec::new();
            for n in ns {
                for delta in b.delta.0..=b.delta.1 {
                    if b.max_vertices == 0 {
                        continue;
                    }
                    let degree = (n * delta) as usize;
                    let lim = MapLimits { max_vertices: b.max_vertices, max_edges: b.max_edges, degree: Some(degree) };
                    out.extend(map_tasks(&lim).into_iter().map(|task| Unit::Decorated { task, lim, n, delta }));
                }
            }
            out
        }
        Campaign::Sec8Euler => (b.delta.0..=b.delta.1).map(Unit::Delta).collect(),
        Campaign::Sec8Arith => ns.filter(|n| n % 2 == 0).map(Unit::N1).collect(),
    }
}

fn reproduce(spec: &CampaignSpec, unit: usize) -> String {
    let b = &spec.bounds;
    let mut cmd = format!(
        "fgl enumerate --campaign {} --max-vertices {} --max-edges {} --n-partner {}..{} --delta {}..{}",
        spec.campaign, b.max_vertices, b.max_edges, b.n_partner.0, b.n_partner.1, b.delta.0, b.delta.1
    );
    if let Some((own, partner)) = b.types {
        cmd.push_str(&format!(" --types {own}{partner}"));
    }
    cmd.push_str(&format!(" --resume {} --max-nodes 1", resume_token(spec.campaign, unit)));
    cmd
}

/// Certificates of block structures go through the block verifier, the
/// rest through the detector verifier.
fn verify_any(g: &FatGraph, c: &Certificate) -> Result<(), String> {
    match c.kind {
        StructureKind::ExtremalBlock | StructureKind::Cluster | StructureKind::SeemlyPair => {
            verify_block_certificate(g, c).map_err(|e| e.to_string())
        }
        _ => verify_certificate(g, c).map_err(|e| e.to_string()),
    }
}

struct Ctx<'a> {
    spec: &'a CampaignSpec,
    unit: usize,
}

impl Ctx<'_> {
    fn violation(
        &self,
        description: impl Into<String>,
        certificates: Vec<Certificate>,
        graph: Option<&FatGraph>,
        data: serde_json::Value,
    ) -> Violation {
        Violation {
            unit: self.unit,
            description: description.into(),
            certificates,
            graph: graph.map(|g| serialize_graph(1, g)),
            data,
            reproduce: reproduce(self.spec, self.unit),
        }
    }
}

fn run_unit(cx: &Ctx, u: &Unit) -> UnitResult {
    let mut r = UnitResult::default();
    match u {
        Unit::Family { n, partner } => family_unit(cx, &mut r, *n, *partner),
        Unit::Interior { n, mode } => interior_unit(cx, &mut r, *n, *mode),
        Unit::Map { task, lim } => task.run(lim, &mut |m| match cx.spec.campaign {
            Campaign::FaceTraceOracle => face_trace_map(cx, &mut r, m),
            _ => disk_face_map(cx, &mut r, m),
        }),
        Unit::Decorated { task, lim, n, delta } => task.run(lim, &mut |m| block_map(cx, &mut r, m, *n, *delta)),
        Unit::Delta(d) => euler_unit(cx, &mut r, *d),
        Unit::N1(n1) => arithmetic_unit(cx, &mut r, *n1),
    }
    r
}

/// Whether the family bound follows from the forbidden structures alone.
/// Against S, A and T partners the bound rests on further arguments; against
/// K at two vertices generalized S-cycles are not yet defined.
fn locally_bounded(partner: SurfaceTag, n: u32) -> bool {
    match partner {
        SurfaceTag::P | SurfaceTag::B => n >= 2,
        SurfaceTag::K => n >= 3,
        _ => false,
    }
}

fn family_unit(cx: &Ctx, r: &mut UnitResult, n: u32, partner: SurfaceTag) {
    use SurfaceTag::*;
    // a single partner vertex leaves one possible level label, so the
    // non-orientable bound has nothing to work with
    let bound = positive_family_bound(partner, n).filter(|_| n >= 2 || !matches!(partner, P | B));
    let top = bound.unwrap_or(n as usize / 2 + 1) + 2;
    // sizes past which every family must carry one of the listed structures
    let literal = match partner {
        S | A if n >= 2 => Some(n as usize / 2 + 2),
        P | B if n >= 2 => Some((n as usize).div_ceil(2) + 1),
        _ => None,
    };
    for size in 1..=top {
        for l in enumerate_parallel_family_labelings(n, size, Sign::Pos, partner) {
            r.generated += 1;
            r.canonical += 1;
            let t = &l.tags;
            if !t.s_cycles.is_empty() {
                r.count("positive: S-cycle");
            }
            if !t.generalized.is_empty() {
                r.count("positive: generalized S-cycle");
            }
            if !t.level.is_empty() {
                r.count("positive: level edge");
            }
            if l.admissible {
                r.count("positive: admissible");
            }
            let data = || json!({ "n_partner": n, "partner": partner, "size": size, "family": l });
            if let Some(b) = bound {
                r.checks += 1;
                if size > b && l.admissible {
                    if locally_bounded(partner, n) {
                        let what = format!("admissible positive family of size {size} above bound {b}");
                        r.violations.push(cx.violation(what, vec![], None, data()));
                    } else {
                        r.count("positive: above bound, not excluded by local structures");
                    }
                }
                // the equality case of the bound is reachable only at this parity
                let exact = match partner {
                    S | A => n.is_multiple_of(2),
                    P | B => n % 2 == 1,
                    T | K => false,
                };
                if size == b && exact && l.admissible {
                    r.checks += 1;
                    if !crate::lemmas::extremal_end(partner, size, t) {
                        r.violations.push(cx.violation("extremal family without the end structure", vec![], None, data()));
                    }
                }
            }
            if literal == Some(size) {
                r.checks += 1;
                let levels: BTreeSet<_> = t.level.iter().map(|&i| l.labels[i].0).collect();
                if t.s_cycles.is_empty() && t.generalized.is_empty() && levels.len() < 2 {
                    r.violations.push(cx.violation(
                        "family past the bound without an S-cycle, a generalized S-cycle or two level labels",
                        vec![],
                        None,
                        data(),
                    ));
                }
            }
        }
        for l in enumerate_parallel_family_labelings(n, size, Sign::Neg, partner) {
            r.generated += 1;
            r.canonical += 1;
            if !l.tags.level.is_empty() {
                r.count("negative: level edge");
            }
        }
    }
}

fn disk_graph_json(d: &DiskGraph) -> serde_json::Value {
    serde_json::to_value(d).expect("disk graphs serialize")
}

fn interior_unit(cx: &Ctx, r: &mut UnitResult, n: u32, mode: SplitMode) {
    let scan = enumerate_xface_interiors(n, cx.spec.bounds.max_vertices, mode);
    r.generated += scan.generated as u64;
    r.canonical += scan.distinct as u64;
    for (why, k) in &scan.rejected {
        r.add(format!("rejected: {why}"), *k as u64);
    }
    r.add("admissible interiors", scan.admissible.len() as u64);
    for d in &scan.admissible {
        match mode {
            SplitMode::PB => level1_check(cx, r, d),
            SplitMode::SA => cluster_check(cx, r, d),
        }
    }
}

fn level1_check(cx: &Ctx, r: &mut UnitResult, d: &DiskGraph) {
    r.checks += 1;
    let fail = |r: &mut UnitResult, what: String, certs: Vec<Certificate>, g: Option<&FatGraph>| {
        r.violations.push(cx.violation(what, certs, g, json!({ "disk": disk_graph_json(d) })));
    };
    let split = match split_disk(d, SplitMode::PB) {
        Ok(s) => s,
        Err(e) => return fail(r, format!("split failed: {e}"), vec![], Some(&d.to_fat_graph().0)),
    };
    let (g, _) = split.to_fat_graph();
    let pair = match find_level1_pair(&split) {
        Ok(p) => p,
        Err(e) => return fail(r, format!("no level 1-edge pair: {e}"), vec![], Some(&g)),
    };
    r.count("level 1-edge pairs");
    let bad: Vec<String> = pair.cycles.iter().filter_map(|c| verify_any(&g, c).err()).collect();
    let rescanned = two_cornered_pb_in(&g, &pair.faces);
    if !bad.is_empty() || rescanned.len() != 2 || !pair.corner_blocks {
        let what = format!(
            "pair does not re-verify: {} certificate errors {bad:?}, {} faces found two-cornered, corner blocks {}",
            bad.len(),
            rescanned.len(),
            pair.corner_blocks
        );
        fail(r, what, pair.cycles.clone(), Some(&g));
    }
}

fn cluster_check(cx: &Ctx, r: &mut UnitResult, d: &DiskGraph) {
    r.checks += 1;
    let (g, _) = d.to_fat_graph();
    let fail = |r: &mut UnitResult, what: String, certs: Vec<Certificate>| {
        r.violations.push(cx.violation(what, certs, Some(&g), json!({ "disk": disk_graph_json(d) })));
    };
    let c = match build_cluster(d) {
        Ok(c) => c,
        Err(e) => return fail(r, format!("no cluster: {e}"), vec![]),
    };
    r.count("clusters");
    let cc = c.certificate();
    if let Err(e) = verify_any(&g, &cc) {
        return fail(r, format!("cluster certificate does not re-verify: {e}"), vec![cc]);
    }
    let contexts = partner_contexts(&c);
    if contexts.is_empty() {
        return fail(r, "no partner placement for the cluster".into(), vec![cc]);
    }
    for ctx in &contexts {
        r.checks += 1;
        r.count("partner placements");
        let sp = match crate::blocks::find_seemly_pair(&c, Some(ctx)) {
            Ok(sp) => sp,
            Err(e) => {
                fail(r, format!("no seemly pair for placement {ctx:?}: {e}"), vec![cc.clone()]);
                continue;
            }
        };
        let bad: Vec<String> = sp.certificates.iter().filter_map(|k| verify_any(&g, k).err()).collect();
        if !sp.counting_holds(&c) || !bad.is_empty() {
            let what = format!(
                "seemly pair fails: {} Scharlemann, {} two-cornered, {} of {} good edges outside, errors {bad:?}",
                sp.n_scharlemann,
                sp.n_two_cornered,
                sp.good_outside,
                sp.good_edges.len()
            );
            fail(r, what, sp.certificates.clone());
        } else {
            r.count("seemly pairs");
        }
    }
}

fn plain_graph(m: &RawMap) -> FatGraph {
    m.to_fat_graph(&Decor::default(), SurfaceTag::S, 1, 1)
}

fn surface_key(euler: i64, orientable: bool) -> String {
    match closed_tag(euler, orientable) {
        Some(t) => format!("surface {t}"),
        None => format!("surface chi={euler} {}", if orientable { "orientable" } else { "non-orientable" }),
    }
}

fn face_trace_map(cx: &Ctx, r: &mut UnitResult, m: &RawMap) {
    r.generated += 1;
    if !is_canonical(m, &Decor::default()) {
        return;
    }
    r.canonical += 1;
    r.checks += 1;
    let g = plain_graph(m);
    let t = trace_faces(&g);
    let o = flag_orbits(m);
    let (euler, orient) = (t.euler(&g), orientable(&g));
    r.count(surface_key(euler, orient));
    if euler != o.euler(m) || orient != o.orientable {
        let data = json!({ "traced": [euler, orient], "orbits": [o.euler(m), o.orientable] });
        r.violations.push(cx.violation("face tracing disagrees with flag orbits", vec![], Some(&g), data));
        return;
    }
    if let Some(tag) = closed_tag(euler, orient) {
        r.checks += 1;
        if let Err(e) = FatGraph::new(g.to_parts(), tag, 1, 1) {
            let data = json!({ "tag": tag, "error": e.to_string() });
            r.violations.push(cx.violation("declared closed surface rejected", vec![], Some(&g), data));
        }
    }
}

fn disk_face_map(cx: &Ctx, r: &mut UnitResult, m: &RawMap) {
    r.generated += 1;
    if !is_canonical(m, &Decor::default()) {
        return;
    }
    r.canonical += 1;
    let g = plain_graph(m);
    let t = trace_faces(&g);
    let chi = t.euler(&g);
    let Some(tag) = closed_tag(chi, orientable(&g)) else { return };
    let wanted = match cx.spec.bounds.types {
        Some((own, _)) => tag == own,
        None => matches!(tag, SurfaceTag::S | SurfaceTag::T | SurfaceTag::K),
    };
    if !wanted {
        return;
    }
    let (nv, ne) = (g.n_vertices() as i64, g.n_edges());
    let all: BTreeSet<usize> = (0..g.n_vertices()).collect();
    for mask in 0u32..(1 << ne) {
        if (mask.count_ones() as i64) <= nv - chi {
            continue;
        }
        r.checks += 1;
        let h: BTreeSet<usize> = (0..ne).filter(|e| mask >> e & 1 == 1).collect();
        let regions = crate::surface::regions_with_vertices(&g, &h, &all);
        if regions.regions.iter().any(|x| x.is_disk()) {
            r.count(format!("disk face on {tag}"));
        } else {
            let data = json!({ "surface": tag, "subgraph_edges": h });
            r.violations.push(cx.violation("subgraph above the Euler bound without a disk face", vec![], Some(&g), data));
        }
    }
}

fn block_map(cx: &Ctx, r: &mut UnitResult, m: &RawMap, n: u32, delta: u32) {
    use SurfaceTag::S;
    let b = &cx.spec.bounds;
    let gb = GraphBounds { max_vertices: b.max_vertices, max_edges: b.max_edges, n_partner: n, delta, surfaces: vec![S] };
    let (stats, graphs) = decorate(m, &gb);
    r.generated += stats.generated as u64;
    r.canonical += stats.canonical as u64;
    for g in &graphs {
        let excluded = !sl_budget(g, S).iter().all(|v| v.holds)
            || !forbidden_cycles(g, S).holds
            || !positive_family_bounds(g, S).holds
            || !negative_family_bounds(g, S).holds;
        if excluded {
            r.count("excluded by the structural lemmas");
            continue;
        }
        let forbidden = sl_labels(g, S);
        let mut sl_sets = vec![BTreeSet::new()];
        if g.n_vertices() >= 2 {
            sl_sets.push(BTreeSet::from([0, 1]));
        }
        for sl in sl_sets {
            r.checks += 1;
            let block = match extract_extremal_block(g, &sl) {
                Ok(block) => block,
                Err(e) => {
                    r.count(format!("no extremal block: {e}"));
                    continue;
                }
            };
            let v = consecutive_block_endpoints(g, &block, S);
            if !v.applicable || !v.holds {
                r.count("block endpoint count fails");
                continue;
            }
            let mut found = None;
            let mut scoped = true;
            for drop_ghost in [false, true] {
                match xface_in_block(g, &block, &forbidden, drop_ghost) {
                    Ok(choice) => {
                        if let Some(c) = choice.certificate {
                            found = Some(c);
                            break;
                        }
                    }
                    Err(e) => {
                        r.count(format!("no label choice: {e}"));
                        scoped = false;
                        break;
                    }
                }
            }
            if !scoped {
                continue;
            }
            match found {
                Some(c) => match verify_any(g, &c) {
                    Ok(()) => r.count("x-face in extremal block"),
                    Err(e) => {
                        let what = format!("x-face certificate does not re-verify: {e}");
                        r.violations.push(cx.violation(what, vec![c], Some(g), json!({ "sl_vertices": sl })));
                    }
                },
                None => {
                    let what = "extremal block with enough consecutive endpoints but no x-face";
                    let data = json!({ "sl_vertices": sl, "forbidden": forbidden });
                    r.violations.push(cx.violation(what, vec![block.certificate(g)], Some(g), data));
                }
            }
        }
    }
}

fn euler_unit(cx: &Ctx, r: &mut UnitResult, delta: u32) {
    let max = cx.spec.bounds.max_vertices as u64;
    let mut feasible = 0;
    for v_i in 0..=max {
        for v_b in 0..=max {
            for v_g in 0..=1 {
                r.generated += 1;
                r.canonical += 1;
                r.checks += 1;
                let t = block_euler_contradiction(delta, v_i, v_b, v_g);
                if t.infeasible {
                    continue;
                }
                feasible += 1;
                if t.in_scope {
                    let data = serde_json::to_value(&t).expect("transcripts serialize");
                    r.violations.push(cx.violation(format!("feasible edge count at delta {delta}"), vec![], None, data));
                }
            }
        }
    }
    r.add(format!("feasible at delta {delta}"), feasible);
    if delta == 2 && feasible == 0 {
        let data = json!({ "delta": delta, "max_vertices": max });
        r.violations.push(cx.violation("no feasible control instance at delta 2", vec![], None, data));
    }
}

/// Every family vector of a two-vertex torus graph at `n1`. Vectors that
/// differ only in the last two sizes give the same loop-family labels, so
/// each (p1, p2, p3) is checked once and weighted by its count.
fn arithmetic_unit(cx: &Ctx, r: &mut UnitResult, n1: u32) {
    let n = n1 as u64;
    let (p1_max, p_max) = (n / 2 + 1, n - 1);
    for p1 in 0..=p1_max {
        for p2 in 0..=p_max {
            for p3 in 0..=p_max {
                let tail = (p_max + 1) * (p_max + 1);
                r.generated += tail;
                r.canonical += tail;
                r.checks += 1;
                let top = 2 * p1 + p2 + p3 + 2 * p_max;
                if top > 5 * n - 2 {
                    let data = json!({ "n1": n1, "p": [p1, p2, p3, p_max, p_max] });
                    r.violations.push(cx.violation("degree above 5 n1 - 2", vec![], None, data));
                }
                // delta = 4: p4 + p5 = 4 n1 - 2 p1 - p2 - p3
                if p1 + p2 + p3 < 2 * n || 2 * p1 + p2 + p3 > 4 * n {
                    continue;
                }
                let rest = 4 * n - 2 * p1 - p2 - p3;
                if rest > 2 * p_max {
                    continue;
                }
                let lo = rest.saturating_sub(p_max);
                let count = rest.min(p_max) - lo + 1;
                r.add("delta 4 vectors", count);
                r.checks += 1;
                let p = [p1, p2, p3, lo, rest - lo].map(|x| x as usize);
                let t = family_arithmetic(n1, &p, 4);
                let r_ok = t.r.is_some_and(|x| x >= 1 && (x as u64) < p1);
                match (&t.structure, t.closes() && r_ok) {
                    (Some((kind, _)), true) => r.add(format!("{kind:?}"), count),
                    _ => {
                        let data = serde_json::to_value(&t).expect("transcripts serialize");
                        r.violations.push(cx.violation("family arithmetic does not close", vec![], None, data));
                    }
                }
            }
        }
    }
}

/// Runs a campaign. On a limit the partial report comes back inside the
/// error together with the token that resumes it.
pub fn run_campaign(spec: &CampaignSpec) -> Result<(CampaignReport, RunStats), CampaignError> {
    spec.validate()?;
    let clock = Instant::now();
    let all = units(spec);
    let start = match &spec.resume {
        Some(tok) => parse_token(spec.campaign, tok)?,
        None => 0,
    };
    if start > all.len() {
        return Err(CampaignError::InvalidSpec(format!("resume unit {start} past the last unit {}", all.len())));
    }
    let mut report = CampaignReport::empty(spec, all.len(), start);
    let mut stats = RunStats { workers: spec.workers, units_per_worker: vec![0; spec.workers], ..Default::default() };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.workers)
        .build()
        .map_err(|e| CampaignError::InvalidSpec(e.to_string()))?;
    let mut next = start;
    while next < all.len() {
        let end = (next + BATCH).min(all.len());
        let results: Vec<(UnitResult, usize)> = pool.install(|| {
            (next..end)
                .into_par_iter()
                .map(|i| (run_unit(&Ctx { spec, unit: i }, &all[i]), rayon::current_thread_index().unwrap_or(0)))
                .collect()
        });
        for (res, worker) in results {
            report.absorb_unit(res);
            stats.units_per_worker[worker.min(spec.workers - 1)] += 1;
            next += 1;
            let over_nodes = spec.limits.max_nodes.is_some_and(|m| report.instances_generated >= m);
            if over_nodes && next < all.len() {
                return Err(limit(spec, report, stats, clock, next));
            }
        }
        let over_time = spec.limits.max_millis.is_some_and(|m| clock.elapsed().as_millis() as u64 >= m);
        if over_time && next < all.len() {
            return Err(limit(spec, report, stats, clock, next));
        }
    }
    report.complete = true;
    stats.elapsed_ms = clock.elapsed().as_millis() as u64;
    Ok((report, stats))
}

fn limit(spec: &CampaignSpec, mut report: CampaignReport, mut stats: RunStats, clock: Instant, next: usize) -> CampaignError {
    let token = resume_token(spec.campaign, next);
    report.resume_token = Some(token.clone());
    stats.elapsed_ms = clock.elapsed().as_millis() as u64;
    CampaignError::ResourceLimit { report: Box::new(report), stats, token }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(c: Campaign) -> CampaignSpec {
        let mut s = CampaignSpec::new(c);
        match c {
            Campaign::FaceTraceOracle | Campaign::Prop51 => s.bounds.max_edges = 3,
            Campaign::ParallelFamily => s.bounds.n_partner = (1, 5),
            Campaign::Sec8Euler => s.bounds.max_vertices = 10,
            Campaign::Sec8Arith => s.bounds.n_partner = (2, 8),
            Campaign::Prop31 | Campaign::Prop41 => s.bounds.max_vertices = 3,
            Campaign::Sec6Ss => {
                s.bounds = CampaignBounds { max_vertices: 4, max_edges: 6, n_partner: (2, 2), delta: (2, 2), types: None }
            }
        }
        s
    }

    #[test]
    fn names_round_trip() {
        for c in Campaign::ALL {
            assert_eq!(c.name().parse::<Campaign>().unwrap(), c);
            assert_eq!(serde_json::to_value(c).unwrap(), json!(c.name()));
        }
        assert!("prop99".parse::<Campaign>().is_err());
    }

    #[test]
    fn small_campaigns_have_no_violations() {
        for c in Campaign::ALL {
            let (report, _) = run_campaign(&small(c)).unwrap();
            assert!(report.complete, "{c}");
            assert!(report.violations.is_empty(), "{c}: {:?}", report.violations);
            assert!(report.checks > 0, "{c}");
        }
    }

    #[test]
    fn gates_reject_small_partner_counts() {
        let mut s = CampaignSpec::new(Campaign::Prop31);
        s.bounds.n_partner = (2, 3);
        assert!(matches!(run_campaign(&s), Err(CampaignError::InvalidSpec(_))));
        s = CampaignSpec::new(Campaign::Sec8Euler);
        s.workers = 0;
        assert!(run_campaign(&s).is_err());
    }

    #[test]
    fn node_limit_stops_and_resumes_to_the_same_report() {
        let spec = small(Campaign::FaceTraceOracle);
        let (whole, _) = run_campaign(&spec).unwrap();
        let mut limited = spec.clone();
        limited.limits.max_nodes = Some(1);
        let Err(CampaignError::ResourceLimit { report: first, token, .. }) = run_campaign(&limited) else {
            panic!("expected a limit")
        };
        assert_eq!(first.units_done, 1);
        let mut merged = *first;
        let mut rest = spec.clone();
        rest.resume = Some(token);
        let (tail, _) = run_campaign(&rest).unwrap();
        merged.merge(tail).unwrap();
        merged.resume_token = None;
        assert_eq!(merged, whole);
    }

    #[test]
    fn reports_do_not_depend_on_workers() {
        for c in [Campaign::Prop51, Campaign::ParallelFamily, Campaign::Prop41] {
            let mut spec = small(c);
            let one = run_campaign(&spec).unwrap().0;
            spec.workers = 3;
            assert_eq!(run_campaign(&spec).unwrap().0, one, "{c}");
        }
    }

    #[test]
    fn tokens_name_their_campaign() {
        assert_eq!(parse_token(Campaign::Prop51, "resume:v1:prop51:7").unwrap(), 7);
        assert!(parse_token(Campaign::Prop31, "resume:v1:prop51:7").is_err());
        assert!(parse_token(Campaign::Prop31, "resume:v2:prop31:7").is_err());
    }
}
