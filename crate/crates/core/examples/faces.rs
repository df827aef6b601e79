//! Traces the faces of a theta graph on the sphere and on the annulus.
use surfgraph::io::parse_graph_document;
use surfgraph::surface::{classify_surface, trace_faces};

const THETA: &str = "\
pair delta=1 n1=2 n2=3
graph 1 type=S
vertex 0 labels=1,2,3
vertex 1 labels=3,2,1
edge 0 0.0-1.2 sign=+ twist=0
edge 1 0.1-1.1 sign=+ twist=0
edge 2 0.2-1.0 sign=+ twist=0
end
";

fn main() {
    for (tag, holes) in [("S", ""), ("A", "hole 0.fwd\nhole 2.fwd\n")] {
        let text = THETA.replace("type=S", &format!("type={tag}")).replace("end\n", &format!("{holes}end\n"));
        let doc = match parse_graph_document(&text) {
            Ok(d) => d,
            Err(e) => {
                println!("{tag}: {e}");
                continue;
            }
        };
        let g = doc.primary();
        let t = trace_faces(g);
        let s = classify_surface(g).unwrap();
        println!("{tag}: chi {} boundary {} orientable {}", s.euler, s.boundary_count, s.orientable);
        for (i, f) in t.faces.iter().enumerate() {
            let corners: Vec<String> = f.corners.iter().map(|c| format!("{}{}", c.pair().0, c.pair().1)).collect();
            println!("  face {i}: length {} corners {} hole {:?}", f.len(), corners.join(" "), f.hole);
        }
    }
}
