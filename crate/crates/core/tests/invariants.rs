//! Properties that must survive renaming: vertex order, rotation start,
//! vertex flips and label shifts.

use proptest::prelude::*;
use std::collections::BTreeSet;
use std::sync::OnceLock;
use surfgraph::blocks::{extract_extremal_block, verify_block_certificate};
use surfgraph::detect::{
    find_extended_s_cycles, find_generalized_s_cycles, find_level_edges, find_scharlemann_cycles, find_x_cycles,
    find_x_faces, verify_certificate, Certificate, StructureKind,
};
use surfgraph::enumerate::{enumerate_fat_graphs, graph_canonical_code, GraphBounds};
use surfgraph::io::{parse_graph_document, serialize_graph};
use surfgraph::lemmas::{negative_family_bounds, positive_family_bounds};
use surfgraph::pair::validate_labels;
use surfgraph::surface::{classify_surface, norm_label, trace_faces, FatGraph, FatGraphParts, Slot, SurfaceTag};

fn pool() -> &'static [FatGraph] {
    static POOL: OnceLock<Vec<FatGraph>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut out = Vec::new();
        for (v, e, n, delta) in [(3, 4, 2, 1), (2, 3, 3, 1), (2, 4, 4, 1), (2, 4, 2, 2), (1, 3, 3, 2)] {
            let b = GraphBounds { max_vertices: v, max_edges: e, n_partner: n, delta, surfaces: SurfaceTag::ALL.to_vec() };
            out.extend(enumerate_fat_graphs(&b));
        }
        out
    })
}

/// Renames `g`: vertex `v` becomes `perm[v]`, its rotation starts `rot[v]`
/// slots later and is read backwards when `flip[v]`; every label moves up by
/// `shift`. Flips are dropped on holed graphs, whose hole darts name a side.
fn rename(g: &FatGraph, perm: &[usize], rot: &[usize], flip: &[bool], shift: u32) -> FatGraph {
    let n = g.n_partner();
    let flip: Vec<bool> = flip.iter().map(|&f| f && g.holes().is_empty()).collect();
    let mut parts: FatGraphParts = g.to_parts();
    let mut rotations = vec![Vec::new(); g.n_vertices()];
    for v in 0..g.n_vertices() {
        let old = g.rotation(v);
        let d = old.len();
        rotations[perm[v]] = (0..d)
            .map(|s| {
                let k = if flip[v] { (rot[v] + d - s) % d } else { (rot[v] + s) % d };
                Slot { dart: old[k].dart, label: norm_label(old[k].label as i64 + shift as i64, n) }
            })
            .collect();
    }
    for (e, data) in parts.edges.iter_mut().enumerate() {
        let (a, b) = g.endpoints(e);
        data.twisted ^= flip[a] ^ flip[b];
    }
    parts.rotations = rotations;
    FatGraph::new(parts, g.kind().tag, n, g.delta()).expect("renaming keeps the surface")
}

fn face_lengths(g: &FatGraph) -> Vec<usize> {
    let mut v: Vec<usize> = trace_faces(g).faces.iter().map(|f| f.len()).collect();
    v.sort_unstable();
    v
}

fn all_certificates(g: &FatGraph) -> Vec<Certificate> {
    let mut out = find_scharlemann_cycles(g);
    out.extend(find_extended_s_cycles(g));
    out.extend(find_generalized_s_cycles(g));
    out.extend(find_level_edges(g));
    for x in 1..=g.n_partner() {
        out.extend(find_x_cycles(g, x));
        out.extend(find_x_faces(g, x));
    }
    if let Ok(b) = extract_extremal_block(g, &BTreeSet::new()) {
        out.push(b.certificate(g));
    }
    out
}

fn structure_counts(g: &FatGraph) -> Vec<(StructureKind, usize)> {
    let certs = all_certificates(g);
    let kinds: BTreeSet<StructureKind> = certs.iter().map(|c| c.kind).collect();
    kinds.into_iter().map(|k| (k, certs.iter().filter(|c| c.kind == k).count())).collect()
}

fn renaming() -> impl Strategy<Value = (usize, Vec<usize>, Vec<usize>, Vec<bool>, u32)> {
    (0..pool().len()).prop_flat_map(|i| {
        let g = &pool()[i];
        let nv = g.n_vertices();
        let degree = g.degree(0);
        (
            Just(i),
            Just((0..nv).collect::<Vec<_>>()).prop_shuffle(),
            proptest::collection::vec(0..degree, nv),
            proptest::collection::vec(any::<bool>(), nv),
            0..g.n_partner(),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn renaming_keeps_the_class((i, perm, rot, flip, shift) in renaming()) {
        let g = &pool()[i];
        let h = rename(g, &perm, &rot, &flip, shift);
        prop_assert!(validate_labels(&h).is_ok());
        prop_assert_eq!(graph_canonical_code(g), graph_canonical_code(&h));
        prop_assert_eq!(face_lengths(g), face_lengths(&h));
        prop_assert_eq!(structure_counts(g), structure_counts(&h));
        for partner in SurfaceTag::ALL {
            prop_assert_eq!(positive_family_bounds(g, partner).holds, positive_family_bounds(&h, partner).holds);
            prop_assert_eq!(negative_family_bounds(g, partner).holds, negative_family_bounds(&h, partner).holds);
        }
    }

    #[test]
    fn faces_partition_the_steps(i in 0..pool().len()) {
        let g = &pool()[i];
        let t = trace_faces(g);
        let total: usize = t.faces.iter().map(|f| f.len()).sum();
        prop_assert_eq!(total, 2 * g.n_edges());
        let mut seen = BTreeSet::new();
        for (k, f) in t.faces.iter().enumerate() {
            for s in &f.walk {
                prop_assert!(seen.insert((s.dart, s.forward)));
                prop_assert_eq!(t.face_of(*s), k);
            }
        }
        let s = classify_surface(g).unwrap();
        prop_assert_eq!(s.euler, g.kind().euler);
        prop_assert_eq!(t.euler(g), g.kind().closed_euler());
        prop_assert_eq!(s.boundary_count, g.holes().len());
    }

    #[test]
    fn detector_certificates_reverify(i in 0..pool().len()) {
        let g = &pool()[i];
        for c in all_certificates(g) {
            let ok = match c.kind {
                StructureKind::ExtremalBlock => verify_block_certificate(g, &c).is_ok(),
                _ => verify_certificate(g, &c).is_ok(),
            };
            prop_assert!(ok, "{:?} fails on its own graph", c.kind);
        }
    }

    #[test]
    fn documents_round_trip(i in 0..pool().len()) {
        let g = &pool()[i];
        let text = serialize_graph(1, g);
        let back = parse_graph_document(&text).unwrap();
        prop_assert_eq!(back.primary(), g);
        prop_assert_eq!(serialize_graph(1, back.primary()), text);
    }
}

#[test]
fn pool_covers_every_surface() {
    let tags: BTreeSet<&str> = pool().iter().map(|g| g.kind().tag.as_str()).collect();
    assert_eq!(tags.len(), 6);
    assert!(pool().len() > 100, "{}", pool().len());
}
