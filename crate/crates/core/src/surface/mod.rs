//! Embedded graph substrate.
//!
//! A [`FatGraph`] is a signed, twisted rotation system: every vertex carries a
//! cyclic list of slots, each slot holds one dart and one endpoint label, and
//! every edge carries a sign and a twist bit. Faces are traced with the usual
//! signed-rotation walk, so non-orientable surfaces are handled by the same
//! code path as orientable ones.

mod regions;
mod trace;

pub use regions::{
    disk_support, lies_in_disk, regions_of_subgraph, regions_with_vertices, FrontierCircle, Region, RegionKind, RegionMap,
};
pub(crate) use trace::{mirror_step, next_step};
pub use trace::{classify_surface, orientable, trace_faces, Corner, Face, Step, SurfaceSummary, Tracing};

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;
pub type Label = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Direction {
    Fwd,
    Rev,
}

/// One end of an edge. Darts are numbered `2 * edge + (0 | 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Dart(pub usize);

impl Dart {
    pub fn new(edge: EdgeId, dir: Direction) -> Self {
        Dart(2 * edge + usize::from(dir == Direction::Rev))
    }

    pub fn edge(self) -> EdgeId {
        self.0 / 2
    }

    pub fn direction(self) -> Direction {
        if self.0.is_multiple_of(2) {
            Direction::Fwd
        } else {
            Direction::Rev
        }
    }

    pub fn reverse(self) -> Self {
        Dart(self.0 ^ 1)
    }
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dir = match self.direction() {
            Direction::Fwd => "fwd",
            Direction::Rev => "rev",
        };
        write!(f, "{}.{}", self.edge(), dir)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Neg => '-',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SurfaceTag {
    S,
    P,
    A,
    B,
    T,
    K,
}

impl SurfaceTag {
    pub const ALL: [SurfaceTag; 6] = [
        SurfaceTag::S,
        SurfaceTag::P,
        SurfaceTag::A,
        SurfaceTag::B,
        SurfaceTag::T,
        SurfaceTag::K,
    ];

    pub fn kind(self) -> SurfaceKind {
        SurfaceKind::of(self)
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "S" => SurfaceTag::S,
            "P" => SurfaceTag::P,
            "A" => SurfaceTag::A,
            "B" => SurfaceTag::B,
            "T" => SurfaceTag::T,
            "K" => SurfaceTag::K,
            _ => return None,
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SurfaceTag::S => "S",
            SurfaceTag::P => "P",
            SurfaceTag::A => "A",
            SurfaceTag::B => "B",
            SurfaceTag::T => "T",
            SurfaceTag::K => "K",
        }
    }
}

impl fmt::Display for SurfaceTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The six small surfaces: sphere, projective plane, annulus, Möbius band,
/// torus and Klein bottle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceKind {
    pub tag: SurfaceTag,
    pub orientable: bool,
    pub euler: i64,
    pub boundary_count: usize,
}

impl SurfaceKind {
    pub fn of(tag: SurfaceTag) -> Self {
        let (orientable, euler, boundary_count) = match tag {
            SurfaceTag::S => (true, 2, 0),
            SurfaceTag::P => (false, 1, 0),
            SurfaceTag::A => (true, 0, 2),
            SurfaceTag::B => (false, 0, 1),
            SurfaceTag::T => (true, 0, 0),
            SurfaceTag::K => (false, 0, 0),
        };
        SurfaceKind { tag, orientable, euler, boundary_count }
    }

    /// Euler characteristic of the closed surface obtained by capping every
    /// boundary circle with a disk.
    pub fn closed_euler(&self) -> i64 {
        self.euler + self.boundary_count as i64
    }

    /// Finds the kind with the given invariants, if it is one of the six.
    pub fn from_invariants(orientable: bool, euler: i64, boundary_count: usize) -> Option<Self> {
        SurfaceTag::ALL
            .iter()
            .map(|t| t.kind())
            .find(|k| k.orientable == orientable && k.euler == euler && k.boundary_count == boundary_count)
    }
}

/// A slot of a fat vertex: the dart attached there and its endpoint label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Slot {
    pub dart: Dart,
    pub label: Label,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeData {
    pub sign: Sign,
    pub twisted: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LabelDirection {
    Ascending,
    Descending,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("structural error: {0}")]
    Structural(String),
    #[error("hole darts {0} and {1} designate the same face")]
    HoleCollision(Dart, Dart),
    #[error("surface mismatch: declared {declared}, traced orientable={orientable} chi={euler} boundary={boundary}")]
    Mismatch { declared: SurfaceTag, orientable: bool, euler: i64, boundary: usize },
    #[error("sub-embedding is not connected")]
    DisconnectedSubgraph,
}

/// Raw parts of a fat graph before validation.
#[derive(Debug, Clone, Default)]
pub struct FatGraphParts {
    pub rotations: Vec<Vec<Slot>>,
    pub edges: Vec<EdgeData>,
    pub holes: Vec<Dart>,
}

/// An embedded labelled graph on one of the six small surfaces.
///
/// Values are immutable once built; every constructor validates the slot and
/// dart structure, and [`FatGraph::new`] additionally checks the declared
/// surface against the traced one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FatGraph {
    rotations: Vec<Vec<Slot>>,
    edges: Vec<EdgeData>,
    ends: Vec<(VertexId, usize)>,
    holes: Vec<Dart>,
    kind: SurfaceKind,
    n_partner: u32,
    delta: u32,
}

impl FatGraph {
    /// Builds and fully validates a graph: structure, hole placement and the
    /// declared surface type. Label order is checked separately by
    /// [`crate::pair::validate_labels`].
    pub fn new(parts: FatGraphParts, kind: SurfaceTag, n_partner: u32, delta: u32) -> Result<Self, SurfaceError> {
        let g = Self::unchecked_surface(parts, kind, n_partner, delta)?;
        let summary = classify_surface(&g)?;
        let k = g.kind;
        if summary.orientable != k.orientable
            || summary.euler != k.euler
            || summary.boundary_count != k.boundary_count
        {
            return Err(SurfaceError::Mismatch {
                declared: k.tag,
                orientable: summary.orientable,
                euler: summary.euler,
                boundary: summary.boundary_count,
            });
        }
        Ok(g)
    }

    /// Builds a graph checking only the slot/dart structure. Used for
    /// sub-embeddings and derived disk graphs whose own surface is not the
    /// declared ambient one.
    pub fn unchecked_surface(
        parts: FatGraphParts,
        kind: SurfaceTag,
        n_partner: u32,
        delta: u32,
    ) -> Result<Self, SurfaceError> {
        let FatGraphParts { rotations, edges, holes } = parts;
        let n_darts = 2 * edges.len();
        let mut ends = vec![None; n_darts];
        for (v, rot) in rotations.iter().enumerate() {
            for (s, slot) in rot.iter().enumerate() {
                let d = slot.dart.0;
                if d >= n_darts {
                    return Err(SurfaceError::Structural(format!("dart {} at vertex {v} slot {s} has no edge", slot.dart)));
                }
                if ends[d].is_some() {
                    return Err(SurfaceError::Structural(format!("dart {} occurs twice", slot.dart)));
                }
                ends[d] = Some((v, s));
            }
        }
        let ends = ends
            .into_iter()
            .enumerate()
            .map(|(d, e)| e.ok_or_else(|| SurfaceError::Structural(format!("dart {} never occurs", Dart(d)))))
            .collect::<Result<Vec<_>, _>>()?;
        for h in &holes {
            if h.0 >= n_darts {
                return Err(SurfaceError::Structural(format!("hole dart {h} has no edge")));
            }
        }
        Ok(FatGraph { rotations, edges, ends, holes, kind: kind.kind(), n_partner, delta })
    }

    pub fn n_vertices(&self) -> usize {
        self.rotations.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn n_darts(&self) -> usize {
        2 * self.edges.len()
    }

    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    pub fn n_partner(&self) -> u32 {
        self.n_partner
    }

    pub fn delta(&self) -> u32 {
        self.delta
    }

    pub fn holes(&self) -> &[Dart] {
        &self.holes
    }

    pub fn rotation(&self, v: VertexId) -> &[Slot] {
        &self.rotations[v]
    }

    pub fn rotations(&self) -> &[Vec<Slot>] {
        &self.rotations
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotations[v].len()
    }

    pub fn edge(&self, e: EdgeId) -> EdgeData {
        self.edges[e]
    }

    pub fn edges(&self) -> &[EdgeData] {
        &self.edges
    }

    pub fn sign(&self, e: EdgeId) -> Sign {
        self.edges[e].sign
    }

    pub fn is_positive(&self, e: EdgeId) -> bool {
        self.edges[e].sign == Sign::Pos
    }

    /// Vertex and slot index where a dart sits.
    pub fn end(&self, d: Dart) -> (VertexId, usize) {
        self.ends[d.0]
    }

    pub fn vertex_of(&self, d: Dart) -> VertexId {
        self.ends[d.0].0
    }

    pub fn label(&self, d: Dart) -> Label {
        let (v, s) = self.ends[d.0];
        self.rotations[v][s].label
    }

    /// Endpoint vertices `(fwd end, rev end)` of an edge.
    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        (self.vertex_of(Dart::new(e, Direction::Fwd)), self.vertex_of(Dart::new(e, Direction::Rev)))
    }

    /// Endpoint labels `(fwd end, rev end)` of an edge.
    pub fn labels(&self, e: EdgeId) -> (Label, Label) {
        (self.label(Dart::new(e, Direction::Fwd)), self.label(Dart::new(e, Direction::Rev)))
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        let (a, b) = self.endpoints(e);
        a == b
    }

    /// Dart in the slot after (`step = 1`) or before (`step = -1`) the slot
    /// of `d` at its vertex.
    pub fn rotate(&self, d: Dart, step: isize) -> Dart {
        let (v, s) = self.ends[d.0];
        let deg = self.rotations[v].len() as isize;
        let t = (s as isize + step).rem_euclid(deg) as usize;
        self.rotations[v][t].dart
    }

    /// Normalizes a label into `1..=n_partner` (0 is an alias for n_partner).
    pub fn norm_label(&self, l: i64) -> Label {
        norm_label(l, self.n_partner)
    }

    /// Direction in which labels advance around a vertex, if they advance by
    /// a constant ±1 step.
    pub fn label_direction(&self, v: VertexId) -> Option<LabelDirection> {
        let rot = &self.rotations[v];
        let n = self.n_partner as i64;
        if rot.len() < 2 || n < 2 {
            return Some(LabelDirection::Ascending);
        }
        let step = |i: usize| -> i64 {
            let a = rot[i].label as i64;
            let b = rot[(i + 1) % rot.len()].label as i64;
            (b - a).rem_euclid(n)
        };
        let first = step(0);
        let dir = if first == 1 {
            LabelDirection::Ascending
        } else if first == n - 1 {
            LabelDirection::Descending
        } else {
            return None;
        };
        (1..rot.len()).all(|i| step(i) == first).then_some(dir)
    }

    /// Clone of the raw parts, for building derived graphs.
    pub fn to_parts(&self) -> FatGraphParts {
        FatGraphParts { rotations: self.rotations.clone(), edges: self.edges.clone(), holes: self.holes.clone() }
    }

    /// Same graph with one edge's sign replaced.
    pub fn with_sign(&self, e: EdgeId, sign: Sign) -> Self {
        let mut g = self.clone();
        g.edges[e].sign = sign;
        g
    }

    pub fn edge_set(&self) -> BTreeSet<EdgeId> {
        (0..self.n_edges()).collect()
    }

    pub fn positive_edges(&self) -> BTreeSet<EdgeId> {
        (0..self.n_edges()).filter(|&e| self.is_positive(e)).collect()
    }
}

/// Normalizes a label into `1..=n` with 0 standing for n.
pub fn norm_label(l: i64, n: u32) -> Label {
    let n = n.max(1) as i64;
    let r = l.rem_euclid(n);
    if r == 0 {
        n as Label
    } else {
        r as Label
    }
}

/// The induced embedding on a subset of edges: every vertex is kept, slots
/// of removed edges are deleted, cyclic order and labels of the remaining
/// slots are preserved. Edges are renumbered in increasing order; the second
/// component maps new edge ids to old ones.
pub fn subgraph_embedding(g: &FatGraph, keep_edges: &BTreeSet<EdgeId>) -> (FatGraph, Vec<EdgeId>) {
    let old_ids: Vec<EdgeId> = keep_edges.iter().copied().filter(|&e| e < g.n_edges()).collect();
    let mut new_id = vec![usize::MAX; g.n_edges()];
    for (i, &e) in old_ids.iter().enumerate() {
        new_id[e] = i;
    }
    let remap = |d: Dart| Dart(2 * new_id[d.edge()] + d.0 % 2);
    let rotations = g
        .rotations
        .iter()
        .map(|rot| {
            rot.iter()
                .filter(|s| new_id[s.dart.edge()] != usize::MAX)
                .map(|s| Slot { dart: remap(s.dart), label: s.label })
                .collect()
        })
        .collect();
    let edges = old_ids.iter().map(|&e| g.edges[e]).collect();
    let holes = g.holes.iter().filter(|h| new_id[h.edge()] != usize::MAX).map(|&h| remap(h)).collect();
    let parts = FatGraphParts { rotations, edges, holes };
    let sub = FatGraph::unchecked_surface(parts, g.kind.tag, g.n_partner, g.delta)
        .expect("sub-embedding of a valid graph is structurally valid");
    (sub, old_ids)
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn slot(edge: EdgeId, dir: Direction, label: Label) -> Slot {
        Slot { dart: Dart::new(edge, dir), label }
    }

    pub fn untwisted(n: usize, sign: Sign) -> Vec<EdgeData> {
        vec![EdgeData { sign, twisted: false }; n]
    }

    /// One vertex with a single loop.
    pub fn single_loop(twisted: bool) -> FatGraphParts {
        FatGraphParts {
            rotations: vec![vec![slot(0, Direction::Fwd, 1), slot(0, Direction::Rev, 2)]],
            edges: vec![EdgeData { sign: Sign::Pos, twisted }],
            holes: vec![],
        }
    }

    /// Two vertices joined by three parallel edges with matched rotations.
    pub fn theta() -> FatGraphParts {
        FatGraphParts {
            rotations: vec![
                vec![slot(0, Direction::Fwd, 1), slot(1, Direction::Fwd, 2), slot(2, Direction::Fwd, 3)],
                vec![slot(2, Direction::Rev, 1), slot(1, Direction::Rev, 2), slot(0, Direction::Rev, 3)],
            ],
            edges: untwisted(3, Sign::Pos),
            holes: vec![],
        }
    }

    /// One vertex, two interleaved loops (slots L1 L2 L1 L2).
    pub fn torus_bouquet() -> FatGraphParts {
        FatGraphParts {
            rotations: vec![vec![
                slot(0, Direction::Fwd, 1),
                slot(1, Direction::Fwd, 2),
                slot(0, Direction::Rev, 1),
                slot(1, Direction::Rev, 2),
            ]],
            edges: untwisted(2, Sign::Pos),
            holes: vec![],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn dart_reverse_is_involution() {
        for i in 0..20 {
            let d = Dart(i);
            assert_eq!(d.reverse().reverse(), d);
            assert_ne!(d.reverse(), d);
            assert_eq!(d.reverse().edge(), d.edge());
        }
    }

    #[test]
    fn surface_kind_table() {
        let k = SurfaceTag::P.kind();
        assert!(!k.orientable);
        assert_eq!((k.euler, k.boundary_count), (1, 0));
        assert_eq!(SurfaceTag::A.kind().closed_euler(), 2);
        assert_eq!(SurfaceTag::B.kind().closed_euler(), 1);
        assert_eq!(SurfaceKind::from_invariants(false, 0, 0).unwrap().tag, SurfaceTag::K);
        assert!(SurfaceKind::from_invariants(true, -2, 0).is_none());
    }

    #[test]
    fn structural_errors() {
        let mut p = theta();
        p.rotations[1][0] = p.rotations[0][0];
        let err = FatGraph::new(p, SurfaceTag::S, 3, 1).unwrap_err();
        assert!(matches!(err, SurfaceError::Structural(_)));
    }

    #[test]
    fn label_normalization() {
        assert_eq!(norm_label(0, 4), 4);
        assert_eq!(norm_label(5, 4), 1);
        assert_eq!(norm_label(-1, 4), 3);
    }

    #[test]
    fn subgraph_identity_and_empty() {
        let g = FatGraph::new(theta(), SurfaceTag::S, 3, 1).unwrap();
        let (same, map) = subgraph_embedding(&g, &g.edge_set());
        assert_eq!(same, g);
        assert_eq!(map, vec![0, 1, 2]);
        let (empty, _) = subgraph_embedding(&g, &BTreeSet::new());
        assert_eq!(empty.n_edges(), 0);
        assert_eq!(empty.n_vertices(), 2);
        assert_eq!(trace_faces(&empty).faces.len(), 2);
    }

    #[test]
    fn label_directions() {
        let g = FatGraph::new(theta(), SurfaceTag::S, 3, 1).unwrap();
        assert_eq!(g.label_direction(0), Some(LabelDirection::Ascending));
        assert_eq!(g.label_direction(1), Some(LabelDirection::Ascending));
    }
}
