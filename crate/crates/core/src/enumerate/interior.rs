//! Graphs inside an x-face with a circular boundary, enumerated from corner
//! runs and non-crossing chord matchings.
//!
//! Each corner is taken to be its own vertex. Chords between two slots of
//! one corner are left out: the innermost one would bound a monogon.

use crate::blocks::{mode_gate, Chord, CornerRun, DiskGraph, SplitMode};
use crate::detect::{find_extended_s_cycles, find_generalized_s_cycles, find_scharlemann_cycles};
use crate::lemmas::positive_family_bounds;
use crate::surface::{trace_faces, Label, SurfaceTag};
use std::collections::BTreeMap;

/// Counts from one interior scan; `admissible` holds canonical instances in
/// generation order.
#[derive(Debug, Clone, Default)]
pub struct InteriorScan {
    pub generated: usize,
    pub distinct: usize,
    pub rejected: BTreeMap<String, usize>,
    pub admissible: Vec<DiskGraph>,
}

type Key = (Vec<(u32, u32)>, Vec<((usize, u32), (usize, u32))>);

fn key(d: &DiskGraph, r: usize) -> Key {
    let k = d.corners.len();
    let at = |j: usize| (j + k - r) % k;
    let corners = (0..k).map(|j| d.corners[(j + r) % k]).map(|c| (c.lo, c.hi)).collect();
    let mut chords: Vec<_> = d
        .chords
        .iter()
        .map(|c| {
            let (a, b) = ((at(c.a.0), c.a.1), (at(c.b.0), c.b.1));
            (a.min(b), a.max(b))
        })
        .collect();
    chords.sort_unstable();
    (corners, chords)
}

/// Smallest under rotation of the corner cycle.
fn is_canonical(d: &DiskGraph) -> bool {
    let k0 = key(d, 0);
    (1..d.corners.len()).all(|r| key(d, r) >= k0)
}

/// Corner-run cycles of length `k` whose boundary edges each carry x.
fn run_cycles(n: u32, k: usize) -> Vec<Vec<CornerRun>> {
    let runs: Vec<CornerRun> = (0..n)
        .flat_map(|lo| (lo + 1..=n).map(move |hi| CornerRun { lo, hi, origin: None }))
        .collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn grow(runs: &[CornerRun], n: u32, k: usize, cur: &mut Vec<CornerRun>, out: &mut Vec<Vec<CornerRun>>) {
        if cur.len() == k {
            let (last, first) = (cur[k - 1], cur[0]);
            if last.hi == n || first.lo == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for &r in runs {
            if cur.last().is_some_and(|p| p.hi != n && r.lo != 0) {
                continue;
            }
            cur.push(r);
            grow(runs, n, k, cur, out);
            cur.pop();
        }
    }
    grow(&runs, n, k, &mut cur, &mut out);
    out
}

/// Non-crossing perfect matchings of `slots` (in boundary order) joining
/// different corners.
fn matchings(slots: &[(usize, u32)]) -> Vec<Vec<Chord>> {
    if slots.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let first = slots[0];
    for j in (1..slots.len()).step_by(2) {
        if slots[j].0 == first.0 {
            continue;
        }
        let inside = matchings(&slots[1..j]);
        if inside.is_empty() {
            continue;
        }
        let outside = matchings(&slots[j + 1..]);
        for a in &inside {
            for b in &outside {
                let mut m = vec![Chord::new(first, slots[j])];
                m.extend(a.iter().copied());
                m.extend(b.iter().copied());
                out.push(m);
            }
        }
    }
    out
}

/// Local constraints a graph inside an x-face must satisfy for the mode.
/// `Err` names the first one that fails.
pub fn interior_admissible(d: &DiskGraph, mode: SplitMode) -> Result<(), &'static str> {
    let (g, _) = d.to_fat_graph();
    if trace_faces(&g).euler(&g) != 2 {
        return Err("not planar");
    }
    let pairs: Vec<(Label, Label)> = (0..g.n_edges()).map(|e| g.labels(e)).collect();
    let scharlemann = find_scharlemann_cycles(&g);
    match mode {
        SplitMode::PB => {
            if pairs.iter().any(|&(a, b)| a == b && a != 1) {
                return Err("level edge with label other than 1");
            }
            if !scharlemann.is_empty() {
                return Err("Scharlemann cycle");
            }
            if !find_generalized_s_cycles(&g).is_empty() {
                return Err("generalized S-cycle");
            }
            if !positive_family_bounds(&g, SurfaceTag::P).holds {
                return Err("family bound");
            }
        }
        SplitMode::SA => {
            if pairs.iter().any(|&(a, b)| a == b) {
                return Err("level edge");
            }
            if scharlemann.iter().any(|c| c.labels != vec![1, 2]) {
                return Err("Scharlemann cycle with labels other than 1, 2");
            }
            if !find_extended_s_cycles(&g).is_empty() {
                return Err("extended S-cycle");
            }
            if !positive_family_bounds(&g, SurfaceTag::S).holds {
                return Err("family bound");
            }
            if pairs.iter().any(|&(a, b)| (a + b) % 2 == 0) {
                return Err("parity");
            }
        }
    }
    Ok(())
}

/// Every x-face interior with up to `max_corners` corners at partner count
/// `n`, over all labels `x` the mode allows.
pub fn enumerate_xface_interiors(n: u32, max_corners: usize, mode: SplitMode) -> InteriorScan {
    let mut scan = InteriorScan::default();
    for x in 1..=n {
        if mode_gate(x, n, mode).is_err() {
            continue;
        }
        for k in 1..=max_corners {
            for corners in run_cycles(n, k) {
                let slots: Vec<(usize, u32)> =
                    corners.iter().enumerate().flat_map(|(j, c)| (c.lo + 1..c.hi).map(move |p| (j, p))).collect();
                for chords in matchings(&slots) {
                    scan.generated += 1;
                    let Ok(d) = DiskGraph::new(n, x, corners.clone(), chords) else {
                        *scan.rejected.entry("shape".into()).or_default() += 1;
                        continue;
                    };
                    if !is_canonical(&d) {
                        continue;
                    }
                    scan.distinct += 1;
                    match interior_admissible(&d, mode) {
                        Ok(()) => scan.admissible.push(d),
                        Err(why) => *scan.rejected.entry(why.into()).or_default() += 1,
                    }
                }
            }
        }
    }
    scan
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_corner_level_edge_closes_a_generalized_s_cycle() {
        // the level edge sits between two 0-2 edges whose labels close up
        let minimal = DiskGraph::new(
            3,
            3,
            vec![CornerRun { lo: 0, hi: 2, origin: None }; 2],
            vec![Chord::new((0, 1), (1, 1))],
        )
        .unwrap();
        assert_eq!(interior_admissible(&minimal, SplitMode::PB), Err("generalized S-cycle"));
        let scan = enumerate_xface_interiors(3, 2, SplitMode::PB);
        assert!(!scan.admissible.contains(&minimal));
        assert!(scan.admissible.iter().all(|d| d.x != 1));
    }

    #[test]
    fn matchings_are_catalan_without_same_corner_pairs() {
        let slots: Vec<(usize, u32)> = (0..6).map(|i| (i, 1)).collect();
        assert_eq!(matchings(&slots).len(), 5);
        let same = [(0, 1), (0, 2)];
        assert!(matchings(&same).is_empty());
    }

    #[test]
    fn rotations_are_identified() {
        let scan = enumerate_xface_interiors(3, 3, SplitMode::PB);
        let mut keys: Vec<Key> = scan.admissible.iter().map(|d| key(d, 0)).collect();
        let before = keys.len();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), before);
    }
}
