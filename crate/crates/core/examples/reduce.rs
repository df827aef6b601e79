//! Reduced graphs and the valency bound on two-vertex torus graphs.
use surfgraph::detect::reduced_graph;
use surfgraph::enumerate::{enumerate_fat_graphs, GraphBounds};
use surfgraph::lemmas::reduced_valency_analysis;
use surfgraph::surface::SurfaceTag;

fn main() {
    let b = GraphBounds { max_vertices: 2, max_edges: 6, n_partner: 3, delta: 2, surfaces: vec![SurfaceTag::T] };
    for g in enumerate_fat_graphs(&b).iter().filter(|g| g.n_vertices() == 2).take(8) {
        let r = reduced_graph(g);
        print!("{} edges -> {} reduced, multiplicities {:?}", g.n_edges(), r.graph.n_edges(), r.multiplicity);
        match reduced_valency_analysis(g, SurfaceTag::S) {
            Ok(v) => println!("; families {:?} holds {}", v.families, v.holds),
            Err(e) => println!("; {e}"),
        }
    }
}
