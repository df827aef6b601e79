//! Label assignments of a family of parallel edges, tagged with the
//! structures they contain.

use crate::lemmas::{family_admissible, scan_family, tags_from_labels, FamilyLabels, FamilyTags};
use crate::surface::{norm_label, Label, Sign, SurfaceTag};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyLabeling {
    pub sign: Sign,
    pub start: (Label, Label),
    pub ascending: bool,
    pub labels: Vec<(Label, Label)>,
    pub tags: FamilyTags,
    /// Not excluded by the forbidden-structure lemmas for the partner type.
    /// Negative families carry no S-cycles, so only level edges count.
    pub admissible: bool,
}

/// Every start pair and direction. Along a positive family the two end
/// labels move in opposite directions, along a negative one in the same.
pub fn enumerate_parallel_family_labelings(
    n_partner: u32,
    size: usize,
    sign: Sign,
    partner: SurfaceTag,
) -> Vec<FamilyLabeling> {
    FamilyLabels::all(n_partner, size)
        .map(|f| {
            let (labels, tags, admissible) = match sign {
                Sign::Pos => {
                    let t = scan_family(&f);
                    let ok = family_admissible(partner, &f, &t);
                    ((0..size).map(|i| f.labels(i)).collect(), t, ok)
                }
                Sign::Neg => {
                    let d: i64 = if f.ascending { 1 } else { -1 };
                    let labels: Vec<(Label, Label)> = (0..size)
                        .map(|i| {
                            let s = d * i as i64;
                            (norm_label(f.start_a as i64 + s, n_partner), norm_label(f.start_b as i64 + s, n_partner))
                        })
                        .collect();
                    let level = tags_from_labels(n_partner, &labels.iter().map(|p| p.0).collect::<Vec<_>>(), &labels.iter().map(|p| p.1).collect::<Vec<_>>()).level;
                    (labels, FamilyTags { level, ..Default::default() }, true)
                }
            };
            FamilyLabeling { sign, start: (f.start_a, f.start_b), ascending: f.ascending, labels, tags, admissible }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negative_family_of_full_length_has_no_level_edge_or_all() {
        // equal start labels make every edge level; otherwise none is
        for l in enumerate_parallel_family_labelings(5, 5, Sign::Neg, SurfaceTag::S) {
            let all = l.tags.level.len() == 5;
            assert!(all || l.tags.level.is_empty());
            assert_eq!(all, l.start.0 == l.start.1);
        }
    }

    #[test]
    fn count_is_two_directions_per_start_pair() {
        assert_eq!(enumerate_parallel_family_labelings(4, 3, Sign::Pos, SurfaceTag::S).len(), 32);
    }
}
