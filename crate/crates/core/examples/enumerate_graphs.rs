//! Counts labelled graph classes per surface for small bounds.
use std::collections::BTreeMap;
use surfgraph::enumerate::{enumerate_fat_graphs_with_stats, GraphBounds};
use surfgraph::surface::SurfaceTag;

fn main() {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    for (n, delta) in [(2, 1), (3, 1), (4, 1), (2, 2)] {
        let b = GraphBounds { max_vertices: 3, max_edges: 6, n_partner: n, delta, surfaces: SurfaceTag::ALL.to_vec() };
        let (stats, graphs) = enumerate_fat_graphs_with_stats(&b, workers);
        let mut per: BTreeMap<&str, usize> = BTreeMap::new();
        for g in &graphs {
            *per.entry(g.kind().tag.as_str()).or_default() += 1;
        }
        println!(
            "n={n} delta={delta}: {} generated, {} canonical, {} admissible {per:?}",
            stats.generated, stats.canonical, stats.admissible
        );
    }
}
