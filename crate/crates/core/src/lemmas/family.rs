//! Label sequences of a family of parallel positive edges.
//!
//! Along a positive family the labels at one end step by ±1 and the labels
//! at the other end step the opposite way, so edge `i` carries
//! `(a + d·i, b − d·i)`. Which structures a family contains depends only on
//! `b − a` modulo the partner count.

use crate::surface::{norm_label, Label, SurfaceTag};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyLabels {
    pub n: u32,
    pub size: usize,
    pub start_a: Label,
    pub start_b: Label,
    pub ascending: bool,
}

impl FamilyLabels {
    fn step(&self) -> i64 {
        if self.ascending {
            1
        } else {
            -1
        }
    }

    pub fn labels(&self, i: usize) -> (Label, Label) {
        let d = self.step() * i as i64;
        (norm_label(self.start_a as i64 + d, self.n), norm_label(self.start_b as i64 - d, self.n))
    }

    /// Every start pair and direction for the given size.
    pub fn all(n: u32, size: usize) -> impl Iterator<Item = FamilyLabels> {
        (1..=n).flat_map(move |a| {
            (1..=n).flat_map(move |b| {
                [true, false].map(|ascending| FamilyLabels { n, size, start_a: a, start_b: b, ascending })
            })
        })
    }
}

/// Structures found in a family, by edge index.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyTags {
    /// First edge of each S-cycle (edges `i`, `i + 1`).
    pub s_cycles: Vec<usize>,
    pub level: Vec<usize>,
    /// Middle edge of each generalized S-cycle.
    pub generalized: Vec<usize>,
    /// First edge of each S-cycle with a family edge on both sides.
    pub extended: Vec<usize>,
}

impl FamilyTags {
    pub fn level_labels(&self, f: &FamilyLabels) -> BTreeSet<Label> {
        self.level.iter().map(|&i| f.labels(i).0).collect()
    }

    pub fn s_cycle_pairs(&self, f: &FamilyLabels) -> BTreeSet<(Label, Label)> {
        self.s_cycles
            .iter()
            .map(|&i| {
                let (a, b) = f.labels(i);
                (a.min(b), a.max(b))
            })
            .collect()
    }
}

/// Tags a family from its two label sequences, with the same partner-count
/// gates as the graph detectors: S-cycles need two labels, generalized
/// S-cycles three, extended S-cycles four.
pub fn tags_from_labels(n: u32, la: &[Label], lb: &[Label]) -> FamilyTags {
    let mut t = FamilyTags::default();
    let k = la.len();
    for i in 0..k {
        if la[i] == lb[i] {
            t.level.push(i);
            if n >= 3 && i > 0 && i + 1 < k {
                t.generalized.push(i);
            }
        }
        if n >= 2 && i + 1 < k && la[i] != lb[i] && la[i + 1] == lb[i] && lb[i + 1] == la[i] {
            let d = norm_label(lb[i] as i64 - la[i] as i64, n);
            if d == 1 || d == norm_label(-1, n) {
                t.s_cycles.push(i);
                if n >= 4 && i > 0 && i + 2 < k {
                    t.extended.push(i);
                }
            }
        }
    }
    t
}

pub fn scan_family(f: &FamilyLabels) -> FamilyTags {
    let (la, lb): (Vec<Label>, Vec<Label>) = (0..f.size).map(|i| f.labels(i)).unzip();
    tags_from_labels(f.n, &la, &lb)
}

/// A positive family that none of the forbidden-structure lemmas excludes
/// for the given partner type.
pub fn family_admissible(partner: SurfaceTag, f: &FamilyLabels, t: &FamilyTags) -> bool {
    use SurfaceTag::*;
    match partner {
        S | A => t.level.is_empty() && t.extended.is_empty() && t.s_cycle_pairs(f).len() <= 1,
        T => t.level.is_empty() && t.extended.is_empty(),
        P | B => t.s_cycles.is_empty() && t.generalized.is_empty() && t.level_labels(f).len() <= 1,
        K => t.s_cycles.is_empty() && t.generalized.is_empty() && t.level_labels(f).len() <= 2,
    }
}

/// Largest positive family allowed against a partner with `n` vertices.
/// `None` when the bound is not available at this `n`.
pub fn positive_family_bound(partner: SurfaceTag, n: u32) -> Option<usize> {
    use SurfaceTag::*;
    let n = n as usize;
    match partner {
        S | A => Some(n / 2 + 1),
        P | B => Some(n.div_ceil(2)),
        T => (n >= 3).then_some(n / 2 + 2),
        K => (n >= 2).then_some(n / 2 + 1),
    }
}

/// Largest negative family allowed against a partner with `n` vertices.
pub fn negative_family_bound(partner: SurfaceTag, n: u32) -> Option<usize> {
    use SurfaceTag::*;
    let n = n as usize;
    match partner {
        S | P => Some(n.saturating_sub(1)),
        A | B | K => Some(n),
        T => None,
    }
}

/// The end condition of a family of exactly maximal size: an S-cycle on the
/// first two or last two edges (S, A), a level edge at either end (P, B).
pub(crate) fn extremal_end(partner: SurfaceTag, size: usize, t: &FamilyTags) -> bool {
    use SurfaceTag::*;
    match partner {
        S | A => size >= 2 && (t.s_cycles.contains(&0) || t.s_cycles.contains(&(size - 2))),
        P | B => size >= 1 && (t.level.contains(&0) || t.level.contains(&(size - 1))),
        T | K => true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(n: u32, size: usize, a: Label, b: Label) -> FamilyLabels {
        FamilyLabels { n, size, start_a: a, start_b: b, ascending: true }
    }

    #[test]
    fn four_edges_around_a_middle_s_cycle() {
        // labels 1..4 against 4..1: S-cycle (2,3) in the middle, surrounded
        let f = fam(4, 4, 1, 4);
        let t = scan_family(&f);
        assert_eq!(t.s_cycles, vec![1]);
        assert_eq!(t.extended, vec![1]);
        assert!(t.level.is_empty());
        assert!(!family_admissible(SurfaceTag::S, &f, &t));
    }

    #[test]
    fn level_edge_in_the_middle_is_generalized() {
        let f = fam(3, 3, 1, 3);
        let t = scan_family(&f);
        assert_eq!((t.level.clone(), t.generalized.clone()), (vec![1], vec![1]));
        assert!(!family_admissible(SurfaceTag::P, &f, &t));
        let short = fam(3, 2, 2, 2);
        assert!(extremal_end(SurfaceTag::P, 2, &scan_family(&short)));
    }

    #[test]
    fn bounds_table() {
        use SurfaceTag::*;
        assert_eq!(positive_family_bound(S, 4), Some(3));
        assert_eq!(positive_family_bound(P, 5), Some(3));
        assert_eq!(positive_family_bound(T, 2), None);
        assert_eq!(positive_family_bound(T, 4), Some(4));
        assert_eq!(positive_family_bound(K, 2), Some(2));
        assert_eq!(negative_family_bound(S, 3), Some(2));
        assert_eq!(negative_family_bound(B, 3), Some(3));
        assert_eq!(negative_family_bound(T, 3), None);
    }

    #[test]
    fn descending_mirrors_ascending() {
        let up = fam(6, 4, 2, 5);
        let down = FamilyLabels { ascending: false, start_a: 5, start_b: 2, ..up };
        let (tu, td) = (scan_family(&up), scan_family(&down));
        assert_eq!(tu.s_cycles.len(), td.s_cycles.len());
        assert_eq!(tu.level.len(), td.level.len());
    }
}
