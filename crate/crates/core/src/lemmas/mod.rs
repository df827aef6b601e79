//! Executable forms of the structural lemmas and the counting arguments that
//! rule out intersection-graph pairs.
//!
//! Every check returns a [`LemmaVerdict`]. A failed verdict carries a
//! [`Witness`] that [`verify_witness`] re-derives from the graph alone.

mod blocks;
mod counting;
mod family;
mod structure;

pub use blocks::{thirty_four_edge, xface_in_block, BlockLemmaError, XFaceChoice};
pub use counting::{
    block_euler_contradiction, consecutive_block_endpoints, disk_face_forced, family_arithmetic, negative_endpoints_force_x_face,
    positive_endpoint_bound, positive_endpoint_threshold, reduced_valency_analysis, ArithmeticTranscript,
    EulerTranscript, ShapeMismatch, ValencyTranscript,
};
pub use family::{
    family_admissible, negative_family_bound, positive_family_bound, scan_family, tags_from_labels, FamilyLabels,
    FamilyTags,
};
pub(crate) use family::extremal_end;
pub use structure::{
    disjoint_s_cycle_pair, family_bounds, forbidden_cycles, negative_family_bounds, positive_family_bounds,
    projective_flag, scharlemann_separating, sl_budget, PartnerView,
};

use crate::detect::{parallel_families, verify_certificate, Certificate};
use crate::surface::{EdgeId, FatGraph, Sign, SurfaceTag, VertexId};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictContext {
    pub own: SurfaceTag,
    pub partner: SurfaceTag,
    pub n: usize,
    pub n_partner: u32,
    pub delta: u32,
}

impl VerdictContext {
    pub fn of(g: &FatGraph, partner: SurfaceTag) -> Self {
        VerdictContext {
            own: g.kind().tag,
            partner,
            n: g.n_vertices(),
            n_partner: g.n_partner(),
            delta: g.delta(),
        }
    }
}

/// Raw data backing a verdict: detector certificates, plus the edges or
/// vertices a counting check failed on.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub certificates: Vec<Certificate>,
    pub edges: Vec<EdgeId>,
    pub vertices: Vec<VertexId>,
}

impl Witness {
    pub fn certificates(certificates: Vec<Certificate>) -> Self {
        Witness { certificates, ..Default::default() }
    }

    pub fn is_empty(&self) -> bool {
        self.certificates.is_empty() && self.edges.is_empty() && self.vertices.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaVerdict {
    pub lemma_id: String,
    /// False when the clause's preconditions fail; such verdicts hold.
    pub applicable: bool,
    pub holds: bool,
    pub context: VerdictContext,
    pub witness: Option<Witness>,
    pub transcript: Vec<String>,
}

impl LemmaVerdict {
    pub(crate) fn new(id: &str, context: VerdictContext) -> Self {
        LemmaVerdict {
            lemma_id: id.to_string(),
            applicable: true,
            holds: true,
            context,
            witness: None,
            transcript: Vec::new(),
        }
    }

    pub(crate) fn not_applicable(id: &str, context: VerdictContext, why: &str) -> Self {
        let mut v = LemmaVerdict::new(id, context);
        v.applicable = false;
        v.transcript.push(format!("not applicable: {why}"));
        v
    }

    pub(crate) fn fail(mut self, witness: Witness, line: impl Into<String>) -> Self {
        self.holds = false;
        self.witness = Some(witness);
        self.transcript.push(line.into());
        self
    }

    pub(crate) fn note(mut self, line: impl Into<String>) -> Self {
        self.transcript.push(line.into());
        self
    }
}

/// Ids accepted by [`check_lemma`].
pub const GRAPH_LEMMAS: [&str; 11] =
    ["2.3", "2.4.1", "2.4.2", "2.4.3", "2.4.4", "2.4.5", "2.6", "2.7", "5.1", "5.2", "8.1"];

/// Runs the graph-level check with the given id against `g`, whose partner
/// has type `partner`. Returns `None` for unknown ids.
pub fn check_lemma(
    g: &FatGraph,
    partner: SurfaceTag,
    id: &str,
    view: Option<&PartnerView>,
) -> Option<Vec<LemmaVerdict>> {
    let pick = |vs: Vec<LemmaVerdict>| vs.into_iter().filter(|v| v.lemma_id == id).collect::<Vec<_>>();
    Some(match id {
        "2.3" => vec![scharlemann_separating(g, partner, view)],
        "2.4.1" | "2.4.2" => pick(sl_budget(g, partner)),
        "2.4.3" => vec![projective_flag(g, partner)],
        "2.4.4" | "2.4.5" => {
            let v = forbidden_cycles(g, partner);
            if v.lemma_id == id {
                vec![v]
            } else {
                vec![LemmaVerdict::not_applicable(id, VerdictContext::of(g, partner), "clause is for other partner types")]
            }
        }
        "2.6" => vec![positive_family_bounds(g, partner)],
        "2.7" => vec![negative_family_bounds(g, partner)],
        "5.1" => {
            let sl: BTreeSet<VertexId> = sl_vertices(g, view);
            vec![positive_endpoint_bound(g, partner, &sl)]
        }
        "5.2" => {
            let sl = sl_vertices(g, view);
            match crate::blocks::extract_extremal_block(g, &sl) {
                Ok(b) => vec![consecutive_block_endpoints(g, &b, partner)],
                Err(e) => vec![LemmaVerdict::not_applicable("5.2", VerdictContext::of(g, partner), &e.to_string())],
            }
        }
        "8.1" => vec![disjoint_s_cycle_pair(g, partner)],
        _ => return None,
    })
}

/// Vertices of `g` whose label is an sl-label of the partner graph.
pub fn sl_vertices(g: &FatGraph, view: Option<&PartnerView>) -> BTreeSet<VertexId> {
    let Some(p) = view else { return BTreeSet::new() };
    crate::detect::sl_labels(p.graph, g.kind().tag)
        .into_iter()
        .map(|l| l as usize - 1)
        .filter(|&v| v < g.n_vertices())
        .collect()
}

/// Re-derives a failed verdict's witness from `g`: every certificate
/// re-verifies, and edge or vertex witnesses still show the failure.
pub fn verify_witness(g: &FatGraph, v: &LemmaVerdict) -> Result<(), String> {
    if v.holds {
        return Ok(());
    }
    let w = v.witness.as_ref().ok_or("violated verdict without witness")?;
    for c in &w.certificates {
        verify_certificate(g, c).map_err(|e| format!("{:?}: {e}", c.kind))?;
    }
    match v.lemma_id.as_str() {
        "2.6" | "2.7" => {
            let fam = parallel_families(g)
                .into_iter()
                .find(|f| f.edges == w.edges)
                .ok_or("witness edges are not a parallel family")?;
            let bound = if fam.sign == Sign::Pos {
                positive_family_bound(v.context.partner, g.n_partner())
            } else {
                negative_family_bound(v.context.partner, g.n_partner())
            };
            let over = bound.is_some_and(|b| fam.len() > b);
            let extremal = fam.sign == Sign::Pos && bound == Some(fam.len()) && !structure::extremal_end_holds(g, &fam, v.context.partner);
            if !(over || extremal) {
                return Err("family is within its bound".into());
            }
        }
        "5.1" => {
            let t = positive_endpoint_threshold(v.context.partner, g.n_partner(), g.delta());
            for &x in &w.vertices {
                if counting::positive_endpoints(g, x) as i64 >= t {
                    return Err(format!("vertex {x} meets the bound"));
                }
            }
        }
        _ => {}
    }
    if w.is_empty() {
        return Err("empty witness".into());
    }
    Ok(())
}
