//! Edge, cycle and face structures of a labelled graph, each reported as a
//! re-verifiable [`Certificate`].

mod cycles;
mod edges;
mod faces;
mod verify;

pub use cycles::{
    find_extended_scharlemann_cycles, find_extended_s_cycles, find_generalized_s_cycles, find_level_edges,
    find_scharlemann_cycles, find_x_cycles, scharlemann_from_great_x_cycle, sl_labels, GreatCycleError,
};
pub use edges::{classify_edges, parallel_families, reduced_graph, EdgeClass, EdgeFamily, ReducedGraph};
pub use faces::{
    find_two_cornered_pb, find_two_cornered_sa, find_x_faces, two_cornered_pb_in, two_cornered_sa_in, x_face_regions,
    XFaceRegion,
};
pub use verify::{verify_certificate, VerifyError};
pub(crate) use faces::{is_two_cornered_pb, is_two_cornered_sa, s12_edges};
pub(crate) use cycles::scharlemann_traced;
pub(crate) use verify::is_face_walk;

use crate::surface::{Dart, EdgeId, FatGraph, Label, Step, VertexId};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StructureKind {
    LevelEdge,
    XCycle,
    GreatXCycle,
    Scharlemann,
    SCycle,
    ExtendedSCycle,
    GeneralizedSCycle,
    XFace,
    TwoCorneredPB,
    TwoCorneredSA,
    Cluster,
    SeemlyPair,
    ExtremalBlock,
}

/// A dart pinned to the vertex slot it occupied when the certificate was made.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkStep {
    pub dart: Dart,
    pub forward: bool,
    pub vertex: VertexId,
    pub slot: usize,
}

impl WalkStep {
    pub fn at(g: &FatGraph, s: Step) -> Self {
        let (vertex, slot) = g.end(s.dart);
        WalkStep { dart: s.dart, forward: s.forward, vertex, slot }
    }

    pub fn step(&self) -> Step {
        Step { dart: self.dart, forward: self.forward }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub name: String,
    pub holds: bool,
}

/// Witness of a detected structure.
///
/// `walk` is the oriented boundary or cycle, `edges` the edge set the
/// structure consists of, `labels` its defining labels. `conditions` lists
/// the checks made when it was found; [`verify_certificate`] redoes them from
/// the graph alone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: StructureKind,
    pub walk: Vec<WalkStep>,
    pub edges: Vec<EdgeId>,
    pub labels: Vec<Label>,
    pub conditions: Vec<Condition>,
    pub notes: String,
}

impl Certificate {
    pub(crate) fn new(kind: StructureKind, g: &FatGraph, walk: &[Step], edges: Vec<EdgeId>, labels: Vec<Label>) -> Self {
        Certificate {
            kind,
            walk: walk.iter().map(|&s| WalkStep::at(g, s)).collect(),
            edges,
            labels,
            conditions: Vec::new(),
            notes: String::new(),
        }
    }

    pub(crate) fn check(&mut self, name: &str, holds: bool) -> &mut Self {
        self.conditions.push(Condition { name: name.to_string(), holds });
        self
    }

    pub fn all_hold(&self) -> bool {
        self.conditions.iter().all(|c| c.holds)
    }

    pub fn steps(&self) -> Vec<Step> {
        self.walk.iter().map(WalkStep::step).collect()
    }
}

#[cfg(test)]
mod tests;
