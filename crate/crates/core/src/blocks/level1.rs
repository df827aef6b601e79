//! Two-cornered faces on both sides of a level 1-edge in a split x-face.

use super::disk::DiskGraph;
use crate::detect::{is_two_cornered_pb, two_cornered_pb_in, Certificate};
use crate::surface::{trace_faces, EdgeId, FatGraph, Tracing};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Level1Error {
    #[error("the split face has no level 1-edge")]
    LevelEdgeMissing,
    #[error("face {face} next to level 1-edge {edge} is not two-cornered")]
    NotTwoCornered { edge: EdgeId, face: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Level1Pair {
    /// Chord index in the disk graph.
    pub chord: usize,
    /// Edge id of that chord in the fat-graph view.
    pub edge: EdgeId,
    pub faces: [usize; 2],
    pub cycles: Vec<Certificate>,
    /// Corners from the level edge run as {1,2}-corners then {0,1}-corners.
    pub corner_blocks: bool,
}

/// Level 1-chords with one side free of other level 1-chords.
fn outermost(d: &DiskGraph) -> Vec<usize> {
    let level: BTreeSet<usize> = d.level1_chords().into_iter().collect();
    level
        .iter()
        .copied()
        .filter(|&c| {
            let ahead: BTreeSet<usize> = d.chords_forward_of(c).into_iter().collect();
            let behind = level.iter().filter(|&&o| o != c && !ahead.contains(&o)).count();
            behind == 0 || ahead.intersection(&level).count() == 0
        })
        .collect()
}

/// Corner values around a face: 1 for {1,2}, 0 for {0,1}, 2 otherwise;
/// `None` marks the position of a level 1-edge.
fn corner_sequence(g: &FatGraph, t: &Tracing, face: usize, level: &BTreeSet<EdgeId>) -> Vec<Option<u8>> {
    let f = &t.faces[face];
    let n = g.n_partner();
    let mut out = Vec::new();
    for (s, c) in f.walk.iter().zip(&f.corners) {
        if level.contains(&s.dart.edge()) {
            out.push(None);
        }
        out.push(Some(if c.is_pair(1, n) {
            1
        } else if c.is_pair(0, n) {
            0
        } else {
            2
        }));
    }
    out
}

/// Between consecutive level 1-edges the corners read 1…1 0…0 in one
/// direction of travel, the same direction for every stretch.
pub fn corner_blocks_hold(g: &FatGraph, t: &Tracing, face: usize, level: &BTreeSet<EdgeId>) -> bool {
    let seq = corner_sequence(g, t, face, level);
    let Some(start) = seq.iter().position(Option::is_none) else { return false };
    let rotated: Vec<Option<u8>> = seq[start..].iter().chain(&seq[..start]).copied().collect();
    let stretches: Vec<Vec<u8>> =
        rotated.split(Option::is_none).map(|s| s.iter().map(|v| v.unwrap()).collect()).collect();
    let descending = |s: &Vec<u8>| s.iter().all(|&v| v < 2) && s.windows(2).all(|w| w[0] >= w[1]);
    let ascending = |s: &Vec<u8>| s.iter().all(|&v| v < 2) && s.windows(2).all(|w| w[0] <= w[1]);
    stretches.iter().all(descending) || stretches.iter().all(ascending)
}

/// Finds a level 1-chord, preferring an outermost one, and checks that both
/// faces next to it are two-cornered.
pub fn find_level1_pair(d: &DiskGraph) -> Result<Level1Pair, Level1Error> {
    let candidates = outermost(d);
    let chord = *candidates.first().ok_or(Level1Error::LevelEdgeMissing)?;
    let (g, _) = d.to_fat_graph();
    let t = trace_faces(&g);
    let k = d.corners.len();
    let edge = k + chord;
    let (f1, f2) = t.sides(edge);
    for f in [f1, f2] {
        if !is_two_cornered_pb(&g, &t, f) {
            return Err(Level1Error::NotTwoCornered { edge, face: f });
        }
    }
    let level: BTreeSet<EdgeId> = d.level1_chords().into_iter().map(|c| k + c).collect();
    let corner_blocks = [f1, f2].iter().all(|&f| corner_blocks_hold(&g, &t, f, &level));
    let cycles = two_cornered_pb_in(&g, &[f1, f2]);
    Ok(Level1Pair { chord, edge, faces: [f1, f2], cycles, corner_blocks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::disk::{Chord, CornerRun};
    use crate::detect::verify_certificate;

    fn run(lo: u32, hi: u32) -> CornerRun {
        CornerRun { lo, hi, origin: None }
    }

    /// Two corners at n = 3, x = 3 with labels 3,1,2, joined by a level
    /// 1-edge; both boundary edges are 02-edges.
    fn minimal() -> DiskGraph {
        DiskGraph::new(3, 3, vec![run(0, 2), run(0, 2)], vec![Chord::new((0, 1), (1, 1))]).unwrap()
    }

    #[test]
    fn minimal_level_edge_pair() {
        let d = minimal();
        let p = find_level1_pair(&d).unwrap();
        assert_eq!(p.chord, 0);
        assert_ne!(p.faces[0], p.faces[1]);
        assert!(p.corner_blocks);
        let (g, _) = d.to_fat_graph();
        assert_eq!(p.cycles.len(), 2);
        for c in &p.cycles {
            verify_certificate(&g, c).unwrap();
        }
    }

    #[test]
    fn missing_level_edge_is_reported() {
        let corrupted = DiskGraph { x: 2, ..minimal() };
        assert_eq!(find_level1_pair(&corrupted).unwrap_err(), Level1Error::LevelEdgeMissing);
    }
}
