//! The two counting arguments: block edge counts against Euler
//! characteristic, and family sizes on the two-vertex torus graph.
use surfgraph::lemmas::{block_euler_contradiction, family_arithmetic};

fn main() {
    for delta in 2..=4 {
        let t = block_euler_contradiction(delta, 3, 4, 1);
        println!("delta {delta}: edges forced {} allowed {} infeasible {}", t.e_low, t.e_high, t.infeasible);
    }
    let t = family_arithmetic(6, &[4, 4, 4, 4, 4], 4);
    for line in &t.lines {
        println!("{line}");
    }
    println!("closes: {}", t.closes());
}
