//! Label validity of one graph and consistency of a pair of graphs.
//!
//! Vertex `v` (0-based) of one graph is named by label `v + 1` in its partner.

use crate::surface::{norm_label, trace_faces, EdgeId, FatGraph, Sign, SurfaceTag, VertexId};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
pub enum PairError {
    #[error("labels around vertex {vertex} stop being consecutive at slot {slot}")]
    NonConsecutiveLabels { vertex: VertexId, slot: usize },
    #[error("vertex {0} has degree {1}, expected {2}")]
    WrongDegree(VertexId, usize, usize),
    #[error("edge {0} has the same sign in both graphs")]
    ParityViolation(EdgeId),
    #[error("edge {0} breaks label duality")]
    DualityViolation(EdgeId),
    #[error("edge counts {g1} and {g2} do not both equal {expected}")]
    EdgeCountMismatch { expected: usize, g1: usize, g2: usize },
    #[error("partner parameters disagree: {0}")]
    ParameterMismatch(String),
    #[error("edge map is not a bijection at edge {0}")]
    NotBijective(EdgeId),
}

/// A pass/fail answer with a human-readable reason.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub holds: bool,
    pub detail: String,
}

impl Verdict {
    pub fn ok(detail: impl Into<String>) -> Self {
        Verdict { holds: true, detail: detail.into() }
    }

    pub fn fail(detail: impl Into<String>) -> Self {
        Verdict { holds: false, detail: detail.into() }
    }
}

#[derive(Debug, Clone)]
pub struct GraphPair {
    pub g1: FatGraph,
    pub g2: FatGraph,
    pub delta: u32,
    /// `edge_map[e]` is the edge of `g2` corresponding to edge `e` of `g1`.
    pub edge_map: Vec<EdgeId>,
}

/// Checks degrees and the cyclic label order at every vertex, vertices then
/// slots in id order.
pub fn validate_labels(g: &FatGraph) -> Result<(), PairError> {
    let n = g.n_partner();
    let want = (g.delta() * n) as usize;
    for v in 0..g.n_vertices() {
        let rot = g.rotation(v);
        if rot.len() != want {
            return Err(PairError::WrongDegree(v, rot.len(), want));
        }
        if rot.is_empty() {
            continue;
        }
        let l0 = rot[0].label as i64;
        let step = if rot.len() < 2 || rot[1].label == norm_label(l0 + 1, n) {
            1
        } else if rot[1].label == norm_label(l0 - 1, n) {
            -1
        } else {
            return Err(PairError::NonConsecutiveLabels { vertex: v, slot: 1 });
        };
        for (i, s) in rot.iter().enumerate() {
            if s.label != norm_label(l0 + step * i as i64, n) {
                return Err(PairError::NonConsecutiveLabels { vertex: v, slot: i });
            }
        }
    }
    Ok(())
}

/// Checks partner parameters, edge count, the edge map, the parity rule and
/// label duality. Edges are scanned in id order.
pub fn validate_pair(p: &GraphPair) -> Result<(), PairError> {
    let (g1, g2) = (&p.g1, &p.g2);
    if g1.n_partner() as usize != g2.n_vertices() || g2.n_partner() as usize != g1.n_vertices() {
        return Err(PairError::ParameterMismatch(format!(
            "n_partner ({}, {}) vs vertex counts ({}, {})",
            g1.n_partner(),
            g2.n_partner(),
            g1.n_vertices(),
            g2.n_vertices()
        )));
    }
    if g1.delta() != p.delta || g2.delta() != p.delta {
        return Err(PairError::ParameterMismatch(format!(
            "delta {} vs graphs ({}, {})",
            p.delta,
            g1.delta(),
            g2.delta()
        )));
    }
    let expected = p.delta as usize * g1.n_vertices() * g2.n_vertices() / 2;
    if g1.n_edges() != expected || g2.n_edges() != expected || p.edge_map.len() != expected {
        return Err(PairError::EdgeCountMismatch { expected, g1: g1.n_edges(), g2: g2.n_edges() });
    }
    let mut seen = vec![false; g2.n_edges()];
    for (e, &f) in p.edge_map.iter().enumerate() {
        if f >= seen.len() || std::mem::replace(&mut seen[f], true) {
            return Err(PairError::NotBijective(e));
        }
    }
    for (e, &f) in p.edge_map.iter().enumerate() {
        if g1.sign(e) == g2.sign(f) {
            return Err(PairError::ParityViolation(e));
        }
        if duality_key(g1, e, false) != duality_key(g2, f, true) {
            return Err(PairError::DualityViolation(e));
        }
    }
    Ok(())
}

/// Sorted (g1 vertex label, g2 vertex label) pairs of the two ends of an edge.
fn duality_key(g: &FatGraph, e: EdgeId, swap: bool) -> [(u32, u32); 2] {
    let (a, b) = g.endpoints(e);
    let (la, lb) = g.labels(e);
    let mut k = [(a as u32 + 1, la), (b as u32 + 1, lb)];
    if swap {
        for x in &mut k {
            *x = (x.1, x.0);
        }
    }
    k.sort();
    k
}

/// Vertex-count lower bounds by own type: at least 3 vertices for type S and
/// 2 for type P.
pub fn check_vertex_count_bounds(g: &FatGraph, own_type: SurfaceTag) -> Verdict {
    let n = g.n_vertices();
    let min = match own_type {
        SurfaceTag::S => 3,
        SurfaceTag::P => 2,
        _ => return Verdict::ok(format!("no bound for type {own_type}")),
    };
    if n >= min {
        Verdict::ok(format!("type {own_type}: {n} >= {min}"))
    } else {
        Verdict::fail(format!("type {own_type}: {n} < {min}"))
    }
}

/// Loops bounding a hole-free face with a single corner.
pub fn trivial_loops(g: &FatGraph) -> Vec<EdgeId> {
    let mut out: Vec<EdgeId> = trace_faces(g)
        .faces
        .iter()
        .filter(|f| f.is_disk() && f.len() == 1)
        .map(|f| f.walk[0].dart.edge())
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

pub fn no_trivial_loops(g: &FatGraph) -> Verdict {
    match trivial_loops(g).first() {
        None => Verdict::ok("no monogon faces"),
        Some(e) => Verdict::fail(format!("edge {e} bounds a monogon")),
    }
}

/// On an orientable surface with given vertex signs, positive edges must join
/// vertices of equal sign and negative edges vertices of opposite sign.
/// Returns the first offending edge.
pub fn check_vertex_sign_linkage(g: &FatGraph, vertex_signs: &[Sign]) -> Result<(), EdgeId> {
    if !g.kind().orientable {
        return Ok(());
    }
    for e in 0..g.n_edges() {
        let (a, b) = g.endpoints(e);
        let same = vertex_signs[a] == vertex_signs[b];
        if same != g.is_positive(e) {
            return Err(e);
        }
    }
    Ok(())
}
