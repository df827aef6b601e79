use super::cycles::{scharlemann_pair, surrounding_cycle};
use super::faces::{is_two_cornered_pb, is_two_cornered_sa, s12_edges, x_face_regions};
use super::{Certificate, StructureKind};
use crate::surface::{next_step, norm_label, trace_faces, FatGraph, Step, Tracing};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("walk step {0} does not sit at its recorded vertex slot")]
    Position(usize),
    #[error("edge {0} does not exist")]
    UnknownEdge(usize),
    #[error("condition failed: {0}")]
    Condition(String),
}

fn need(ok: bool, name: &str) -> Result<(), VerifyError> {
    if ok {
        Ok(())
    } else {
        Err(VerifyError::Condition(name.to_string()))
    }
}

/// The walk is exactly one traced face of the full graph.
pub(crate) fn is_face_walk(g: &FatGraph, t: &Tracing, walk: &[Step]) -> bool {
    if walk.is_empty() {
        return false;
    }
    let closes = (0..walk.len()).all(|i| next_step(g, walk[i]) == walk[(i + 1) % walk.len()]);
    closes && t.faces[t.face_of(walk[0])].len() == walk.len()
}

fn same_cycle<T: PartialEq>(a: &[T], b: &[T]) -> bool {
    a.len() == b.len() && (a.is_empty() || (0..a.len()).any(|r| (0..a.len()).all(|i| a[(i + r) % a.len()] == b[i])))
}

/// Edge-set structures store each edge by its first dart, so the encoding
/// is unique.
fn first_darts(walk: &[Step]) -> bool {
    walk.iter().all(|s| s.dart.0 % 2 == 0)
}

/// Re-derives every condition of a certificate from the graph alone.
pub fn verify_certificate(g: &FatGraph, c: &Certificate) -> Result<(), VerifyError> {
    for (i, w) in c.walk.iter().enumerate() {
        if w.dart.0 >= g.n_darts() || g.end(w.dart) != (w.vertex, w.slot) {
            return Err(VerifyError::Position(i));
        }
    }
    if let Some(&e) = c.edges.iter().find(|&&e| e >= g.n_edges()) {
        return Err(VerifyError::UnknownEdge(e));
    }
    let walk = c.steps();
    let walk_edges: Vec<usize> = walk.iter().map(|s| s.dart.edge()).collect();
    let n = g.n_partner();
    match c.kind {
        StructureKind::LevelEdge => {
            need(c.edges.len() == 1 && c.labels.len() == 1 && walk_edges == c.edges, "shape")?;
            need(first_darts(&walk), "canonical_darts")?;
            let e = c.edges[0];
            let (a, b) = g.labels(e);
            need(g.is_positive(e), "positive")?;
            need(a == b && a == c.labels[0], "equal_labels")
        }
        StructureKind::XCycle | StructureKind::GreatXCycle => {
            need(!walk.is_empty() && c.labels.len() == 1 && walk_edges == c.edges, "shape")?;
            let x = c.labels[0];
            let distinct: BTreeSet<_> = walk_edges.iter().collect();
            need(distinct.len() == walk.len(), "distinct_edges")?;
            need(walk_edges.iter().all(|&e| g.is_positive(e)), "positive")?;
            need(walk.iter().all(|s| g.label(s.dart.reverse()) == x), "heads_labelled_x")?;
            let closed = (0..walk.len())
                .all(|i| g.vertex_of(walk[i].dart.reverse()) == g.vertex_of(walk[(i + 1) % walk.len()].dart));
            need(closed, "closed")?;
            // a loop labelled x at both ends is an x-cycle read either way
            need(walk.len() > 1 || g.label(walk[0].dart) != x || first_darts(&walk), "canonical_darts")
        }
        StructureKind::Scharlemann | StructureKind::SCycle => {
            let t = trace_faces(g);
            need(is_face_walk(g, &t, &walk), "face_walk")?;
            need(!t.faces[t.face_of(walk[0])].contains_hole(), "disk_face")?;
            need(walk_edges == c.edges, "edges")?;
            let pair = scharlemann_pair(g, &walk).ok_or_else(|| VerifyError::Condition("common_pair".into()))?;
            need(c.labels == vec![pair.0, pair.1], "labels")?;
            need((walk.len() == 2) == (c.kind == StructureKind::SCycle), "length")
        }
        StructureKind::ExtendedSCycle => {
            let t = trace_faces(g);
            need(n >= 4, "n_partner_at_least_4")?;
            need(is_face_walk(g, &t, &walk) && !t.faces[t.face_of(walk[0])].contains_hole(), "inner_face")?;
            let (a, b) = scharlemann_pair(g, &walk).ok_or_else(|| VerifyError::Condition("inner_scharlemann".into()))?;
            let kappa = surrounding_cycle(g, &t, &walk).ok_or_else(|| VerifyError::Condition("immediately_parallel".into()))?;
            need(kappa == c.edges, "immediately_parallel")?;
            let outer = (norm_label(a as i64 - 1, n), norm_label(b as i64 + 1, n));
            need(
                kappa.iter().all(|&e| {
                    let (p, q) = g.labels(e);
                    (p, q) == outer || (q, p) == outer
                }),
                "outer_pair",
            )
        }
        StructureKind::GeneralizedSCycle => {
            need(n >= 3 && c.edges.len() == 3 && walk_edges == c.edges && !c.labels.is_empty(), "shape")?;
            need(first_darts(&walk), "canonical_darts")?;
            let t = trace_faces(g);
            let bigon = |e: usize, f: usize| {
                t.faces.iter().any(|face| {
                    !face.contains_hole() && face.len() == 2 && {
                        let es: Vec<usize> = face.edges().collect();
                        (es[0] == e && es[1] == f) || (es[0] == f && es[1] == e)
                    }
                })
            };
            let (e1, e2, e3) = (c.edges[0], c.edges[1], c.edges[2]);
            need([e1, e2, e3].iter().all(|&e| g.is_positive(e)), "positive")?;
            need(e1 != e3 && bigon(e1, e2) && bigon(e2, e3), "consecutive_parallel")?;
            let k = c.labels[0];
            need(g.labels(e2) == (k, k), "middle_level")?;
            let outer = (norm_label(k as i64 - 1, n), norm_label(k as i64 + 1, n));
            need(
                [e1, e3].iter().all(|&e| {
                    let (p, q) = g.labels(e);
                    (p, q) == outer || (q, p) == outer
                }),
                "outer_pair",
            )
        }
        StructureKind::XFace => {
            need(c.labels.len() == 1 && walk_edges == c.edges, "shape")?;
            let found = x_face_regions(g, c.labels[0]).iter().any(|r| same_cycle(&r.boundary, &walk));
            need(found, "disk_face_of_x_subgraph")
        }
        StructureKind::TwoCorneredPB | StructureKind::TwoCorneredSA => {
            let t = trace_faces(g);
            need(is_face_walk(g, &t, &walk) && walk_edges == c.edges, "face_walk")?;
            let f = t.face_of(walk[0]);
            if c.kind == StructureKind::TwoCorneredPB {
                need(is_two_cornered_pb(g, &t, f), "two_cornered")
            } else {
                need(is_two_cornered_sa(g, &t, f, &s12_edges(g, &t)), "two_cornered")
            }
        }
        StructureKind::Cluster | StructureKind::SeemlyPair | StructureKind::ExtremalBlock => {
            crate::blocks::verify_block_certificate(g, c)
        }
    }
}
