use super::cycles::scharlemann_traced;
use super::{Certificate, StructureKind};
use crate::surface::{
    regions_with_vertices, trace_faces, Corner, EdgeId, FatGraph, Label, Region, Step, Tracing,
};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Positive x-edges, the edge set of the x-face subgraph.
pub(crate) fn positive_x_edges(g: &FatGraph, x: Label) -> BTreeSet<EdgeId> {
    (0..g.n_edges())
        .filter(|&e| {
            let (a, b) = g.labels(e);
            g.is_positive(e) && (a == x || b == x)
        })
        .collect()
}

/// An x-face together with the part of the graph inside it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct XFaceRegion {
    pub x: Label,
    /// Boundary walk of the x-face in the subgraph of positive x-edges.
    pub boundary: Vec<Step>,
    pub region: Region,
}

impl XFaceRegion {
    /// The boundary revisits a vertex or an edge.
    pub fn boundary_is_circle(&self, g: &FatGraph) -> bool {
        let vs: BTreeSet<_> = self.boundary.iter().map(|s| g.vertex_of(s.dart)).collect();
        let es: BTreeSet<_> = self.boundary.iter().map(|s| s.dart.edge()).collect();
        vs.len() == self.boundary.len() && es.len() == self.boundary.len()
    }
}

/// Disk faces of the subgraph made of all vertices and the positive x-edges.
/// Faces bounded by a bare vertex are not reported.
pub fn x_face_regions(g: &FatGraph, x: Label) -> Vec<XFaceRegion> {
    let h = positive_x_edges(g, x);
    let all: BTreeSet<usize> = (0..g.n_vertices()).collect();
    let map = regions_with_vertices(g, &h, &all);
    let mut out = Vec::new();
    for region in &map.regions {
        if !region.is_disk() {
            continue;
        }
        let circle = &map.frontier[region.frontier[0]];
        if circle.walk.is_empty() {
            continue;
        }
        out.push(XFaceRegion { x, boundary: circle.walk.clone(), region: region.clone() });
    }
    out
}

pub fn find_x_faces(g: &FatGraph, x: Label) -> Vec<Certificate> {
    x_face_regions(g, x).into_iter().map(|r| x_face_certificate(g, &r)).collect()
}

pub(crate) fn x_face_certificate(g: &FatGraph, r: &XFaceRegion) -> Certificate {
    let edges = r.boundary.iter().map(|s| s.dart.edge()).collect();
    let mut c = Certificate::new(StructureKind::XFace, g, &r.boundary, edges, vec![r.x]);
    c.check("positive_x_edges", true).check("disk_region", true);
    c.notes = if r.boundary_is_circle(g) {
        format!("{} faces inside", r.region.faces.len())
    } else {
        format!("{} faces inside; boundary is not a circle", r.region.faces.len())
    };
    c
}

fn corner_is(c: &Corner, g: &FatGraph, a: i64) -> bool {
    c.is_pair(a, g.n_partner())
}

fn has_edge_pair(g: &FatGraph, walk: &[Step], a: Label, b: Label) -> bool {
    walk.iter().any(|s| {
        let (p, q) = g.labels(s.dart.edge());
        (p, q) == (a, b) || (p, q) == (b, a)
    })
}

/// Two-cornered face for a non-orientable partner: hole-free, positive edges,
/// only 01- and 12-corners, both present, and a 02-edge.
pub(crate) fn is_two_cornered_pb(g: &FatGraph, t: &Tracing, face: usize) -> bool {
    let f = &t.faces[face];
    let n = g.n_partner();
    n >= 3
        && !f.contains_hole()
        && !f.is_empty()
        && f.edges().all(|e| g.is_positive(e))
        && f.corners.iter().all(|c| corner_is(c, g, 0) || corner_is(c, g, 1))
        && f.corners.iter().any(|c| corner_is(c, g, 0))
        && f.corners.iter().any(|c| corner_is(c, g, 1))
        && has_edge_pair(g, &f.walk, n, 2)
}

/// Two-cornered face for an orientable partner: hole-free, positive edges,
/// only 01- and 23-corners, both present, a 03-edge, and an edge of a
/// 12-Scharlemann cycle.
pub(crate) fn is_two_cornered_sa(g: &FatGraph, t: &Tracing, face: usize, s12_edges: &BTreeSet<EdgeId>) -> bool {
    let f = &t.faces[face];
    let n = g.n_partner();
    n >= 3
        && !f.contains_hole()
        && !f.is_empty()
        && f.edges().all(|e| g.is_positive(e))
        && f.corners.iter().all(|c| corner_is(c, g, 0) || corner_is(c, g, 2))
        && f.corners.iter().any(|c| corner_is(c, g, 0))
        && f.corners.iter().any(|c| corner_is(c, g, 2))
        && has_edge_pair(g, &f.walk, n, 3)
        && f.edges().any(|e| s12_edges.contains(&e))
}

/// Edges of (1,2)-Scharlemann cycles.
pub(crate) fn s12_edges(g: &FatGraph, t: &Tracing) -> BTreeSet<EdgeId> {
    scharlemann_traced(g, t)
        .iter()
        .filter(|c| c.labels == vec![1, 2])
        .flat_map(|c| c.edges.iter().copied())
        .collect()
}

fn two_cornered_cert(g: &FatGraph, t: &Tracing, face: usize, kind: StructureKind) -> Certificate {
    let f = &t.faces[face];
    let n = g.n_partner();
    let labels = match kind {
        StructureKind::TwoCorneredPB => vec![n, 1, 2],
        _ => vec![n, 1, 2, 3],
    };
    let mut c = Certificate::new(kind, g, &f.walk, f.edges().collect(), labels);
    c.check("disk_face", true).check("positive", true).check("corner_kinds", true).check("both_corners", true);
    if kind == StructureKind::TwoCorneredPB {
        c.check("has_02_edge", true);
    } else {
        c.check("has_03_edge", true).check("has_12_scharlemann_edge", true);
    }
    c
}

/// Two-cornered faces (non-orientable partner form) among the given faces of
/// the full graph.
pub fn two_cornered_pb_in(g: &FatGraph, faces: &[usize]) -> Vec<Certificate> {
    let t = trace_faces(g);
    faces
        .iter()
        .filter(|&&f| is_two_cornered_pb(g, &t, f))
        .map(|&f| two_cornered_cert(g, &t, f, StructureKind::TwoCorneredPB))
        .collect()
}

/// Two-cornered faces (orientable partner form) among the given faces.
pub fn two_cornered_sa_in(g: &FatGraph, faces: &[usize]) -> Vec<Certificate> {
    let t = trace_faces(g);
    let s12 = s12_edges(g, &t);
    faces
        .iter()
        .filter(|&&f| is_two_cornered_sa(g, &t, f, &s12))
        .map(|&f| two_cornered_cert(g, &t, f, StructureKind::TwoCorneredSA))
        .collect()
}

pub fn find_two_cornered_pb(g: &FatGraph, region: &XFaceRegion) -> Vec<Certificate> {
    two_cornered_pb_in(g, &region.region.faces)
}

pub fn find_two_cornered_sa(g: &FatGraph, region: &XFaceRegion) -> Vec<Certificate> {
    two_cornered_sa_in(g, &region.region.faces)
}
