//! Face count and orientability of a map from flag orbits, computed without
//! the face tracer.
//!
//! A flag is a slot together with one of its two sides. The corner
//! involution pairs the `+` side of a slot with the `-` side of the next slot
//! around the vertex; the edge involution pairs a slot's side with the side
//! of its mate that borders the same face: the opposite sign for an
//! untwisted edge, the same sign for a twisted one. Faces are the orbits of
//! the group these two generate. The map is orientable exactly when the flag
//! graph with the side-swapping involution added is bipartite.

use super::maps::RawMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrbitCount {
    pub faces: usize,
    pub orientable: bool,
}

impl OrbitCount {
    pub fn euler(&self, m: &RawMap) -> i64 {
        m.n_vertices() as i64 - m.n_edges() as i64 + self.faces as i64
    }
}

fn flag(g: usize, plus: bool) -> usize {
    2 * g + usize::from(!plus)
}

fn corner(m: &RawMap, f: usize) -> usize {
    let (g, plus) = (f / 2, f.is_multiple_of(2));
    let v = m.owner[g];
    let (s, d) = (g - m.start[v], m.deg[v]);
    if plus {
        flag(m.start[v] + (s + 1) % d, false)
    } else {
        flag(m.start[v] + (s + d - 1) % d, true)
    }
}

fn across(m: &RawMap, f: usize) -> usize {
    let (g, plus) = (f / 2, f.is_multiple_of(2));
    flag(m.mate[g], if m.twist[g] { plus } else { !plus })
}

pub fn flag_orbits(m: &RawMap) -> OrbitCount {
    let n = 2 * m.n_slots();
    let isolated = m.deg.iter().filter(|&&d| d == 0).count();
    let mut face = vec![usize::MAX; n];
    let mut faces = 0;
    for f0 in 0..n {
        if face[f0] != usize::MAX {
            continue;
        }
        let mut stack = vec![f0];
        face[f0] = faces;
        while let Some(f) = stack.pop() {
            for h in [corner(m, f), across(m, f)] {
                if face[h] == usize::MAX {
                    face[h] = faces;
                    stack.push(h);
                }
            }
        }
        faces += 1;
    }
    let mut colour = vec![u8::MAX; n];
    let mut orientable = true;
    for f0 in 0..n {
        if colour[f0] != u8::MAX {
            continue;
        }
        colour[f0] = 0;
        let mut stack = vec![f0];
        while let Some(f) = stack.pop() {
            for h in [corner(m, f), across(m, f), f ^ 1] {
                if colour[h] == u8::MAX {
                    colour[h] = 1 - colour[f];
                    stack.push(h);
                } else if colour[h] == colour[f] {
                    orientable = false;
                }
            }
        }
    }
    OrbitCount { faces: faces + isolated, orientable }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn loop_map(twisted: bool) -> RawMap {
        RawMap { deg: vec![2], start: vec![0], owner: vec![0, 0], mate: vec![1, 0], twist: vec![twisted; 2] }
    }

    #[test]
    fn single_loops() {
        assert_eq!(flag_orbits(&loop_map(false)), OrbitCount { faces: 2, orientable: true });
        assert_eq!(flag_orbits(&loop_map(true)), OrbitCount { faces: 1, orientable: false });
        assert_eq!(flag_orbits(&RawMap::isolated_vertex()), OrbitCount { faces: 1, orientable: true });
    }

    #[test]
    fn torus_from_two_crossed_loops() {
        // slots 0,2 and 1,3 joined: the standard one-vertex torus
        let m = RawMap {
            deg: vec![4],
            start: vec![0],
            owner: vec![0; 4],
            mate: vec![2, 3, 0, 1],
            twist: vec![false; 4],
        };
        let o = flag_orbits(&m);
        assert_eq!((o.faces, o.orientable, o.euler(&m)), (1, true, 0));
    }
}
