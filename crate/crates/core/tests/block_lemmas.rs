use std::collections::BTreeSet;
use surfgraph::blocks::extract_extremal_block;
use surfgraph::detect::verify_certificate;
use surfgraph::enumerate::{enumerate_fat_graphs, GraphBounds};
use surfgraph::lemmas::{reduced_valency_analysis, thirty_four_edge, verify_witness, xface_in_block, BlockLemmaError};
use surfgraph::surface::{FatGraph, Sign, SurfaceTag};

fn graphs(v: usize, e: usize, n: u32, delta: u32, surfaces: &[SurfaceTag]) -> Vec<FatGraph> {
    enumerate_fat_graphs(&GraphBounds { max_vertices: v, max_edges: e, n_partner: n, delta, surfaces: surfaces.to_vec() })
}

#[test]
fn reduced_graphs_respect_the_edge_bound() {
    use SurfaceTag::*;
    let mut matched = 0;
    for (n, delta) in [(2, 2), (3, 2), (4, 1), (2, 3)] {
        for g in graphs(2, 6, n, delta, &[A, B, T, K]) {
            let Ok(r) = reduced_valency_analysis(&g, SurfaceTag::S) else { continue };
            matched += 1;
            assert!(r.reduced_edges as i64 <= r.edge_bound, "{:?}", r.lines);
            let all_positive = (0..g.n_edges()).all(|e| g.sign(e) == Sign::Pos);
            let two_vertex = matches!(g.kind().tag, A | T) && g.n_vertices() == 2;
            assert_eq!(r.holds, !(two_vertex && all_positive));
            if let Some(c) = &r.x_face {
                verify_certificate(&g, c).unwrap();
            }
        }
    }
    assert!(matched > 0);
}

#[test]
fn chosen_x_face_uses_block_edges_only() {
    let mut found = 0;
    for (n, delta) in [(3, 1), (4, 1), (3, 2)] {
        for g in graphs(3, 4, n, delta, &SurfaceTag::ALL) {
            let Ok(block) = extract_extremal_block(&g, &BTreeSet::new()) else { continue };
            let edges: BTreeSet<usize> = block.edges.iter().copied().collect();
            for drop_ghost in [false, true] {
                let choice = xface_in_block(&g, &block, &BTreeSet::new(), drop_ghost).unwrap();
                assert!((1..=n).contains(&choice.x));
                if let Some(c) = &choice.certificate {
                    found += 1;
                    verify_certificate(&g, c).unwrap();
                    assert!(c.edges.iter().all(|e| edges.contains(e)));
                    assert_eq!(c.labels, vec![choice.x]);
                    if drop_ghost {
                        assert!(c.walk.iter().all(|s| Some(s.vertex) != block.ghost_vertex()));
                    }
                }
            }
            let all: BTreeSet<u32> = (1..=n).collect();
            assert_eq!(xface_in_block(&g, &block, &all, false), Err(BlockLemmaError::NoEligibleLabel));
        }
    }
    assert!(found > 0);
}

#[test]
fn thirty_four_edge_checks_its_shape_and_witness() {
    let mut shaped = 0;
    for g in graphs(3, 6, 4, 1, &SurfaceTag::ALL) {
        let Ok(block) = extract_extremal_block(&g, &BTreeSet::new()) else { continue };
        match thirty_four_edge(&g, &block) {
            Ok(v) => {
                shaped += 1;
                if !v.holds {
                    verify_witness(&g, &v).unwrap();
                }
            }
            Err(BlockLemmaError::ShapeMismatch(_)) => {}
            Err(e) => panic!("{e}"),
        }
    }
    for g in graphs(2, 3, 3, 1, &SurfaceTag::ALL) {
        if let Ok(block) = extract_extremal_block(&g, &BTreeSet::new()) {
            assert!(matches!(thirty_four_edge(&g, &block), Err(BlockLemmaError::ShapeMismatch(_))));
        }
    }
    assert!(shaped > 0);
}
