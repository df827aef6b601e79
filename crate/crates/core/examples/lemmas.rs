//! Evaluates every graph-level lemma check on one fixture against each
//! partner type.
use surfgraph::io::parse_graph_document;
use surfgraph::lemmas::{check_lemma, verify_witness, GRAPH_LEMMAS};
use surfgraph::surface::SurfaceTag;

fn main() {
    let text = include_str!("../tests/data/extended_family.fgl");
    let doc = parse_graph_document(text).unwrap();
    let g = doc.primary();
    for partner in SurfaceTag::ALL {
        for id in GRAPH_LEMMAS {
            for v in check_lemma(g, partner, id, None).unwrap() {
                let state = match (v.applicable, v.holds) {
                    (false, _) => "n/a".to_string(),
                    (true, true) => "holds".to_string(),
                    (true, false) => format!("fails, witness {:?}", verify_witness(g, &v)),
                };
                println!("partner {} lemma {id}: {state}", partner.as_str());
            }
        }
    }
}
