//! Graphs inside an x-face, cut open so the face is a disk with a circular
//! boundary, and the diagonal splitting that reduces them.
//!
//! Every boundary corner is stored as a run of label positions
//! `p = label - x (mod n)`, ascending in the sweep direction, with `0` for a
//! first slot labelled x and `n` for a last slot labelled x. Interior slots
//! never carry x. Boundary edge `j` joins the last slot of corner `j` to the
//! first slot of corner `j + 1`.

use crate::detect::{parallel_families, XFaceRegion};
use crate::surface::{
    norm_label, Dart, Direction, EdgeData, EdgeId, FatGraph, FatGraphParts, Label, Sign, Slot, Step, SurfaceTag,
    VertexId,
};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SplitMode {
    /// Non-orientable partner: keep level 1-edges.
    PB,
    /// Orientable partner: keep edges of (1,2)-Scharlemann cycles.
    SA,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SplitError {
    #[error("label {x} is not allowed in {mode:?} mode")]
    ModeLabelClash { x: Label, mode: SplitMode },
    #[error("not a disk x-face: {0}")]
    NotAnXFace(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CornerRun {
    pub lo: u32,
    pub hi: u32,
    /// Vertex of the original graph this corner was cut from.
    pub origin: Option<VertexId>,
}

/// An interior edge between two `(corner, position)` ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Chord {
    pub a: (usize, u32),
    pub b: (usize, u32),
    pub origin: Option<EdgeId>,
    pub synthetic: bool,
}

impl Chord {
    pub fn new(a: (usize, u32), b: (usize, u32)) -> Self {
        Chord { a, b, origin: None, synthetic: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiskGraph {
    pub n_partner: u32,
    pub x: Label,
    pub corners: Vec<CornerRun>,
    pub boundary_origin: Vec<Option<EdgeId>>,
    pub chords: Vec<Chord>,
}

/// Edge of the fat-graph view: boundary edges first, then chords.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DiskEdge {
    Boundary(usize),
    Chord(usize),
}

impl DiskGraph {
    /// Builds from corner runs and chords, checking the run and chord shape.
    pub fn new(n_partner: u32, x: Label, corners: Vec<CornerRun>, chords: Vec<Chord>) -> Result<Self, SplitError> {
        let k = corners.len();
        let d = DiskGraph { n_partner, x: norm_label(x as i64, n_partner), corners, boundary_origin: vec![None; k], chords };
        d.check()?;
        Ok(d)
    }

    fn check(&self) -> Result<(), SplitError> {
        let n = self.n_partner;
        let bad = |m: String| Err(SplitError::NotAnXFace(m));
        if self.corners.is_empty() {
            return bad("no corners".into());
        }
        for (j, c) in self.corners.iter().enumerate() {
            if c.lo >= c.hi || c.hi > n {
                return bad(format!("corner {j} has run {}..{}", c.lo, c.hi));
            }
            let next = &self.corners[(j + 1) % self.corners.len()];
            if c.hi != n && next.lo != 0 {
                return bad(format!("boundary edge {j} has no end labelled x"));
            }
        }
        let mut seen = BTreeSet::new();
        for ch in &self.chords {
            for (j, p) in [ch.a, ch.b] {
                let Some(c) = self.corners.get(j) else { return bad(format!("chord end at missing corner {j}")) };
                if p <= c.lo || p >= c.hi || !seen.insert((j, p)) {
                    return bad(format!("chord end {j}.{p} is not a free interior slot"));
                }
            }
        }
        let slots: usize = self.corners.iter().map(|c| (c.hi - c.lo - 1) as usize).sum();
        if seen.len() != slots {
            return bad("interior slot without an edge".into());
        }
        Ok(())
    }

    pub fn label_at(&self, p: u32) -> Label {
        norm_label(self.x as i64 + p as i64, self.n_partner)
    }

    /// Position of label 1.
    pub fn level1_position(&self) -> u32 {
        (1 + self.n_partner - self.x % self.n_partner) % self.n_partner
    }

    fn slot_index(&self) -> BTreeMap<(usize, u32), usize> {
        let mut m = BTreeMap::new();
        let mut i = 0;
        for (j, c) in self.corners.iter().enumerate() {
            for p in c.lo..=c.hi {
                m.insert((j, p), i);
                i += 1;
            }
        }
        m
    }

    /// Fat-graph view on the sphere, the outer face punctured by a hole.
    pub fn to_fat_graph(&self) -> (FatGraph, Vec<DiskEdge>) {
        let k = self.corners.len();
        let mut at: BTreeMap<(usize, u32), Dart> = BTreeMap::new();
        for (i, ch) in self.chords.iter().enumerate() {
            at.insert(ch.a, Dart::new(k + i, Direction::Fwd));
            at.insert(ch.b, Dart::new(k + i, Direction::Rev));
        }
        let rotations = self
            .corners
            .iter()
            .enumerate()
            .map(|(j, c)| {
                (c.lo..=c.hi)
                    .map(|p| {
                        let dart = if p == c.lo {
                            Dart::new((j + k - 1) % k, Direction::Rev)
                        } else if p == c.hi {
                            Dart::new(j, Direction::Fwd)
                        } else {
                            at[&(j, p)]
                        };
                        Slot { dart, label: self.label_at(p) }
                    })
                    .collect()
            })
            .collect();
        let edges = vec![EdgeData { sign: Sign::Pos, twisted: false }; k + self.chords.len()];
        let parts = FatGraphParts { rotations, edges, holes: vec![Dart::new(0, Direction::Rev)] };
        let g = FatGraph::unchecked_surface(parts, SurfaceTag::S, self.n_partner, 1)
            .expect("disk graph has a valid dart structure");
        let map = (0..k).map(DiskEdge::Boundary).chain((0..self.chords.len()).map(DiskEdge::Chord)).collect();
        (g, map)
    }

    /// Chord ids not parallel to any boundary edge.
    pub fn diagonals(&self) -> Vec<usize> {
        let (g, _) = self.to_fat_graph();
        let k = self.corners.len();
        let mut parallel = BTreeSet::new();
        for fam in parallel_families(&g) {
            if fam.edges.iter().any(|&e| e < k) {
                parallel.extend(fam.edges.iter().copied());
            }
        }
        (0..self.chords.len()).filter(|i| !parallel.contains(&(k + i))).collect()
    }

    /// Chords with both ends at the level 1 position.
    pub fn level1_chords(&self) -> Vec<usize> {
        let p1 = self.level1_position();
        (0..self.chords.len()).filter(|&i| self.chords[i].a.1 == p1 && self.chords[i].b.1 == p1).collect()
    }

    /// Chords lying on (1,2)-Scharlemann faces.
    pub fn s12_chords(&self) -> Vec<usize> {
        let (g, _) = self.to_fat_graph();
        let t = crate::surface::trace_faces(&g);
        let k = self.corners.len();
        crate::detect::s12_edges(&g, &t).into_iter().filter(|&e| e >= k).map(|e| e - k).collect()
    }

    /// Chords strictly on one side of chord `c`: the side reached from its
    /// `a` end moving forward along the boundary.
    pub fn chords_forward_of(&self, c: usize) -> Vec<usize> {
        let idx = self.slot_index();
        let total = idx.len();
        let ch = &self.chords[c];
        let (ia, ib) = (idx[&ch.a], idx[&ch.b]);
        let inside = |i: usize| (i + total - ia) % total < (ib + total - ia) % total && i != ia;
        (0..self.chords.len())
            .filter(|&o| o != c && inside(idx[&self.chords[o].a]) && inside(idx[&self.chords[o].b]))
            .collect()
    }

    /// Cuts along chord `c`: keeps the side behind its larger-position end,
    /// discards the side ahead of it and fills the gap with synthetic edges
    /// parallel to `c` until a label x is reached; the last one becomes a
    /// boundary edge. Level chords are left alone.
    pub fn split_along(&self, c: usize) -> DiskGraph {
        let n = self.n_partner;
        let mut ch = self.chords[c];
        if ch.a.1 == ch.b.1 {
            return self.clone();
        }
        if ch.a.1 < ch.b.1 {
            std::mem::swap(&mut ch.a, &mut ch.b);
        }
        let ((ja, pa), (jb, pb)) = (ch.a, ch.b);
        let m = (n - pa).min(pb);
        let k = self.corners.len();
        let idx = self.slot_index();
        let total = idx.len();
        let (ia, ib) = (idx[&ch.a], idx[&ch.b]);
        let ahead = |i: usize| i != ia && (i + total - ia) % total < (ib + total - ia) % total;

        // surviving corners in boundary order, starting at jb
        let order: Vec<usize> = if ja == jb {
            vec![ja]
        } else {
            let mut o = vec![jb];
            let mut j = jb;
            while j != ja {
                j = (j + 1) % k;
                o.push(j);
            }
            o
        };
        let renum: BTreeMap<usize, usize> = order.iter().enumerate().map(|(i, &j)| (j, i)).collect();
        let mut corners: Vec<CornerRun> = order.iter().map(|&j| self.corners[j]).collect();
        let mut boundary_origin: Vec<Option<EdgeId>> = order.iter().map(|&j| self.boundary_origin[j]).collect();
        let (na, nb) = (renum[&ja], renum[&jb]);
        corners[na].hi = pa + m;
        corners[nb].lo = pb - m;
        // the last corner's outgoing edge is the new boundary edge
        boundary_origin[na] = None;

        let mut chords: Vec<Chord> = self
            .chords
            .iter()
            .filter(|o| !ahead(idx[&o.a]) || !ahead(idx[&o.b]))
            .map(|o| Chord { a: (renum[&o.a.0], o.a.1), b: (renum[&o.b.0], o.b.1), ..*o })
            .collect();
        for s in 1..m {
            chords.push(Chord { a: (na, pa + s), b: (nb, pb - s), origin: None, synthetic: true });
        }
        let d = DiskGraph { n_partner: n, x: self.x, corners, boundary_origin, chords };
        debug_assert!(d.check().is_ok(), "split produced an invalid disk graph");
        d
    }

    /// Boundary edges that are synthetic (the chords they replaced were split).
    pub fn synthetic_boundary(&self) -> Vec<usize> {
        (0..self.corners.len()).filter(|&j| self.boundary_origin[j].is_none()).collect()
    }
}

/// Cuts the graph inside an x-face open along its boundary walk.
///
/// Each visit of the walk to a vertex becomes its own corner; the slots swept
/// between the incoming and outgoing boundary darts are that corner's
/// interior ends. If labels descend in the sweep direction the disk is
/// mirrored so that they ascend.
pub fn cut_x_face(g: &FatGraph, face: &XFaceRegion) -> Result<DiskGraph, SplitError> {
    let n = g.n_partner();
    let x = norm_label(face.x as i64, n);
    let walk = &face.boundary;
    let k = walk.len();
    if k == 0 {
        return Err(SplitError::NotAnXFace("empty boundary".into()));
    }
    let h_edges: BTreeSet<EdgeId> = walk.iter().map(|s| s.dart.edge()).collect();
    // corner after step j sits at the head of walk[j]
    let mut raw: Vec<(VertexId, Vec<Dart>)> = Vec::with_capacity(k);
    for j in 0..k {
        let s = walk[j];
        let next: Step = walk[(j + 1) % k];
        let r = s.dart.reverse();
        let fwd = s.forward ^ g.edge(s.dart.edge()).twisted;
        let dir = if fwd { 1 } else { -1 };
        let mut darts = vec![r];
        let mut d = g.rotate(r, dir);
        let mut guard = 0;
        while d != next.dart {
            if h_edges.contains(&d.edge()) || guard > g.degree(g.vertex_of(r)) {
                return Err(SplitError::NotAnXFace(format!("corner at step {j} does not reach the next boundary dart")));
            }
            darts.push(d);
            d = g.rotate(d, dir);
            guard += 1;
        }
        darts.push(next.dart);
        raw.push((g.vertex_of(r), darts));
    }
    // raw[j] is the corner between boundary edges walk[j] and walk[j+1];
    // rotate so corner j is entered by boundary edge j-1
    let mut corners: Vec<(VertexId, Vec<Dart>)> = (0..k).map(|j| raw[(j + k - 1) % k].clone()).collect();
    let mut bedges: Vec<EdgeId> = walk.iter().map(|s| s.dart.edge()).collect();

    let step_of = |ds: &[Dart]| -> i64 { (g.label(ds[1]) as i64 - g.label(ds[0]) as i64).rem_euclid(n as i64) };
    let ascending = step_of(&corners[0].1) == 1 % n as i64;
    if !ascending {
        // mirror: reverse corner order and sweep order
        let old_c = corners.clone();
        let old_b = bedges.clone();
        for i in 0..k {
            let mut c = old_c[(k - i) % k].clone();
            c.1.reverse();
            corners[i] = c;
            bedges[i] = old_b[(2 * k - i - 1) % k];
        }
    }
    let mut runs = Vec::with_capacity(k);
    let mut ends: BTreeMap<Dart, (usize, u32)> = BTreeMap::new();
    for (j, (v, darts)) in corners.iter().enumerate() {
        let pos: Vec<u32> = darts.iter().map(|&d| (g.label(d) + n - x % n) % n).collect();
        let lo = pos[0];
        let last = darts.len() - 1;
        let hi = if pos[last] == 0 { n } else { pos[last] };
        for (i, &p) in pos.iter().enumerate().take(last).skip(1) {
            if p == 0 {
                return Err(SplitError::NotAnXFace(format!("interior x-label at corner {j}")));
            }
            if p != lo + i as u32 {
                return Err(SplitError::NotAnXFace(format!("labels at corner {j} are not consecutive")));
            }
            ends.insert(darts[i], (j, p));
        }
        if hi != lo + last as u32 {
            return Err(SplitError::NotAnXFace(format!("labels at corner {j} are not consecutive")));
        }
        runs.push(CornerRun { lo, hi, origin: Some(*v) });
    }
    let mut chords = Vec::new();
    for (&d, &a) in &ends {
        if d.direction() == Direction::Fwd || !ends.contains_key(&d.reverse()) {
            let Some(&b) = ends.get(&d.reverse()) else {
                return Err(SplitError::NotAnXFace(format!("edge {} leaves the face", d.edge())));
            };
            if g.sign(d.edge()) == Sign::Neg {
                return Err(SplitError::NotAnXFace(format!("negative edge {} inside", d.edge())));
            }
            chords.push(Chord { a, b, origin: Some(d.edge()), synthetic: false });
        }
    }
    let mut disk = DiskGraph::new(n, x, runs, chords)?;
    disk.boundary_origin = bedges.into_iter().map(Some).collect();
    Ok(disk)
}

/// Rejects labels the mode reserves: 1 for PB, 1 and 2 for SA.
pub fn mode_gate(x: Label, n: u32, mode: SplitMode) -> Result<(), SplitError> {
    let x = norm_label(x as i64, n);
    let clash = match mode {
        SplitMode::PB => x == 1,
        SplitMode::SA => x == 1 || x == norm_label(2, n),
    };
    if clash {
        Err(SplitError::ModeLabelClash { x, mode })
    } else {
        Ok(())
    }
}

/// Repeatedly splits along diagonals (chords not parallel to the boundary)
/// that the mode does not keep, lowest chord first.
pub fn split_disk(disk: &DiskGraph, mode: SplitMode) -> Result<DiskGraph, SplitError> {
    mode_gate(disk.x, disk.n_partner, mode)?;
    let mut d = disk.clone();
    loop {
        let keep: BTreeSet<usize> = match mode {
            SplitMode::PB => d.level1_chords().into_iter().collect(),
            SplitMode::SA => d.s12_chords().into_iter().collect(),
        };
        let next = d
            .diagonals()
            .into_iter()
            .find(|&c| !keep.contains(&c) && d.chords[c].a.1 != d.chords[c].b.1);
        match next {
            Some(c) => d = d.split_along(c),
            None => return Ok(d),
        }
    }
}

/// Cuts an x-face open and splits it until every diagonal is kept by the mode.
pub fn split_xface_along_diagonals(
    g: &FatGraph,
    face: &XFaceRegion,
    x: Label,
    mode: SplitMode,
) -> Result<DiskGraph, SplitError> {
    mode_gate(x, g.n_partner(), mode)?;
    if norm_label(x as i64, g.n_partner()) != norm_label(face.x as i64, g.n_partner()) {
        return Err(SplitError::NotAnXFace(format!("face is a {}-face", face.x)));
    }
    split_disk(&cut_x_face(g, face)?, mode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::x_face_regions;
    use crate::io::parse_graph_document;
    use crate::surface::trace_faces;

    fn run(lo: u32, hi: u32) -> CornerRun {
        CornerRun { lo, hi, origin: None }
    }

    fn planar(d: &DiskGraph) -> bool {
        let (g, _) = d.to_fat_graph();
        trace_faces(&g).euler(&g) == 2
    }

    /// Three corners, n = 4, x = 4; chord 0 is a (2,1) diagonal.
    fn three_corner_disk() -> DiskGraph {
        DiskGraph::new(
            4,
            4,
            vec![run(0, 4), run(0, 2), run(0, 3)],
            vec![Chord::new((0, 2), (2, 1)), Chord::new((0, 3), (1, 1)), Chord::new((2, 2), (0, 1))],
        )
        .unwrap()
    }

    #[test]
    fn split_discards_the_side_ahead() {
        let d = three_corner_disk();
        assert!(planar(&d));
        assert_eq!(d.chords_forward_of(0), vec![1]);
        let s = d.split_along(0);
        assert_eq!(s.corners, vec![run(0, 3), run(0, 3)]);
        assert_eq!(s.chords, vec![Chord::new((1, 2), (0, 1)), Chord::new((0, 2), (1, 1))]);
        assert_eq!(s.synthetic_boundary(), vec![0, 1]);
        assert!(planar(&s));
    }

    #[test]
    fn split_inserts_parallel_edges_until_x() {
        // a (3,1) diagonal at n = 5, x = 5: m = min(5 - 3, 1) = 1, so the
        // new boundary runs from 0.4 to 2.0 and nothing synthetic is added
        let missing = DiskGraph::new(5, 5, vec![run(0, 5), run(0, 2), run(0, 4)], vec![Chord::new((0, 3), (2, 1))]);
        assert!(missing.is_err());
        let d = DiskGraph::new(
            5,
            5,
            vec![run(0, 5), run(0, 2), run(0, 4)],
            vec![
                Chord::new((0, 3), (2, 1)),
                Chord::new((0, 4), (1, 1)),
                Chord::new((2, 3), (0, 1)),
                Chord::new((2, 2), (0, 2)),
            ],
        )
        .unwrap();
        assert!(planar(&d));
        let s = d.split_along(0);
        assert_eq!(s.corners, vec![run(0, 4), run(0, 4)]);
        assert!(s.chords.iter().all(|c| !c.synthetic));
        assert!(planar(&s));
    }

    #[test]
    fn split_with_synthetic_chords() {
        // n = 6, x = 6: diagonal (3,2) needs m = 2, one synthetic (4,1) chord
        let d = DiskGraph::new(
            6,
            6,
            vec![run(0, 5), run(0, 5)],
            vec![
                Chord::new((0, 3), (1, 2)),
                Chord::new((0, 4), (1, 1)),
                Chord::new((1, 4), (0, 1)),
                Chord::new((1, 3), (0, 2)),
            ],
        )
        .unwrap();
        assert!(planar(&d));
        let s = d.split_along(0);
        assert_eq!(s.corners, vec![run(0, 5), run(0, 5)]);
        let synth: Vec<Chord> = s.chords.iter().copied().filter(|c| c.synthetic).collect();
        assert_eq!(synth.len(), 1);
        assert_eq!((synth[0].a, synth[0].b), ((1, 4), (0, 1)));
        assert_eq!(s.chords.len(), 4);
        assert!(planar(&s));
    }

    #[test]
    fn mode_gates() {
        let d = three_corner_disk();
        let one = DiskGraph { x: 1, ..d.clone() };
        assert_eq!(split_disk(&one, SplitMode::PB), Err(SplitError::ModeLabelClash { x: 1, mode: SplitMode::PB }));
        let two = DiskGraph { x: 2, ..d };
        assert!(matches!(split_disk(&two, SplitMode::SA), Err(SplitError::ModeLabelClash { .. })));
    }

    #[test]
    fn cut_non_circular_face() {
        let text = include_str!("../../tests/data/generalized_theta.fgl");
        let g = parse_graph_document(text).unwrap().primary().clone();
        let faces = x_face_regions(&g, 2);
        assert_eq!(faces.len(), 1);
        let d = cut_x_face(&g, &faces[0]).unwrap();
        assert_eq!(d.corners.len(), faces[0].boundary.len());
        assert!(planar(&d));
        assert!(d.corners.iter().all(|c| c.origin.is_some()));
        let chord_origins: BTreeSet<EdgeId> = d.chords.iter().filter_map(|c| c.origin).collect();
        let inside: BTreeSet<EdgeId> = faces[0].region.edges.iter().copied().collect();
        assert_eq!(chord_origins, inside);
    }
}
