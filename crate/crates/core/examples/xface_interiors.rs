//! Graphs inside an x-face: level 1-edge pairs for the projective-plane
//! and Möbius-band partners, clusters and seemly pairs for the sphere and
//! annulus partners.
use surfgraph::blocks::{build_cluster, find_level1_pair, find_seemly_pair, partner_contexts, split_disk, SplitMode};
use surfgraph::enumerate::enumerate_xface_interiors;

fn main() {
    for n in [3, 4] {
        let scan = enumerate_xface_interiors(n, 4, SplitMode::PB);
        println!("PB n={n}: {} generated, {} distinct, rejected {:?}", scan.generated, scan.distinct, scan.rejected);
        for d in &scan.admissible {
            let s = split_disk(d, SplitMode::PB).unwrap();
            let pair = find_level1_pair(&s).unwrap();
            println!("  x={} corners {}: level 1-edge {} between faces {:?}", d.x, d.corners.len(), pair.edge, pair.faces);
        }
    }
    let scan = enumerate_xface_interiors(4, 4, SplitMode::SA);
    println!("SA n=4: {} admissible", scan.admissible.len());
    for d in scan.admissible.iter().take(5) {
        let c = build_cluster(d).unwrap();
        for ctx in partner_contexts(&c) {
            let s = find_seemly_pair(&c, Some(&ctx)).unwrap();
            println!("  x={} seemly pair with {} certificates", d.x, s.certificates.len());
        }
    }
}
