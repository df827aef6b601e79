//! Runs every detector on the fixture graphs and re-verifies what they find.
use surfgraph::detect::*;
use surfgraph::io::parse_graph_document;

fn main() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data");
    for name in ["s_cycle_bigon", "extended_family", "generalized_theta", "two_cornered_theta"] {
        let text = std::fs::read_to_string(format!("{dir}/{name}.fgl")).unwrap();
        let doc = parse_graph_document(&text).unwrap();
        let g = doc.primary();
        let faces: Vec<usize> = (0..surfgraph::surface::trace_faces(g).faces.len()).collect();
        let mut found = find_scharlemann_cycles(g);
        found.extend(find_extended_s_cycles(g));
        found.extend(find_generalized_s_cycles(g));
        found.extend(find_level_edges(g));
        found.extend(two_cornered_pb_in(g, &faces));
        for x in 1..=g.n_partner() {
            found.extend(find_x_faces(g, x));
        }
        println!("{name}:");
        for c in &found {
            let ok = verify_certificate(g, c).is_ok();
            println!("  {:?} edges {:?} labels {:?} reverifies {ok}", c.kind, c.edges, c.labels);
        }
    }
}
