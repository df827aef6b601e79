//! Extracts an extremal block from small graphs and looks for an x-face in
//! it, with and without the ghost vertex.
use std::collections::BTreeSet;
use surfgraph::blocks::extract_extremal_block;
use surfgraph::enumerate::{enumerate_fat_graphs, GraphBounds};
use surfgraph::lemmas::xface_in_block;
use surfgraph::surface::SurfaceTag;

fn main() {
    let b = GraphBounds { max_vertices: 3, max_edges: 6, n_partner: 4, delta: 1, surfaces: SurfaceTag::ALL.to_vec() };
    let (mut blocks, mut faces) = (0, 0);
    for g in enumerate_fat_graphs(&b) {
        let Ok(block) = extract_extremal_block(&g, &BTreeSet::new()) else { continue };
        blocks += 1;
        for drop_ghost in [false, true] {
            let choice = xface_in_block(&g, &block, &BTreeSet::new(), drop_ghost).unwrap();
            if choice.certificate.is_some() {
                faces += 1;
            }
        }
    }
    println!("{blocks} graphs with an extremal block, {faces} x-faces found inside");
}
