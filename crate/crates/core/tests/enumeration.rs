//! The canonical graph stream against a naive generate-and-filter oracle on
//! one and two vertices.

use std::collections::{BTreeMap, BTreeSet};
use surfgraph::enumerate::{closed_tag, enumerate_fat_graphs, graph_canonical_code, GraphBounds};
use surfgraph::pair::{no_trivial_loops, validate_labels};
use surfgraph::surface::{
    norm_label, orientable, trace_faces, Dart, EdgeData, FatGraph, FatGraphParts, Sign, Slot, Step, SurfaceTag,
};

/// Perfect matchings of `0..k` as pairs `(a, b)` with `a < b`.
fn matchings(free: &[usize]) -> Vec<Vec<(usize, usize)>> {
    let Some((&a, rest)) = free.split_first() else { return vec![vec![]] };
    let mut out = Vec::new();
    for (i, &b) in rest.iter().enumerate() {
        let others: Vec<usize> = rest.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &s)| s).collect();
        for mut m in matchings(&others) {
            m.push((a, b));
            out.push(m);
        }
    }
    out
}

/// Every labelled graph with `v` vertices of degree `n * delta`, built slot
/// by slot, kept when it is connected and passes the same admissibility
/// filters as the generator.
fn naive(v: usize, n: u32, delta: u32) -> Vec<FatGraph> {
    let deg = (n * delta) as usize;
    let slots = v * deg;
    let mut out = Vec::new();
    for m in matchings(&(0..slots).collect::<Vec<_>>()) {
        let e = m.len();
        if v == 2 && !m.iter().any(|&(a, b)| (a < deg) != (b < deg)) {
            continue;
        }
        for twists in 0..1u32 << e {
            for labelling in 0..(2 * n).pow(v as u32) {
                let (mut up, mut offset) = (Vec::new(), Vec::new());
                let mut r = labelling;
                for _ in 0..v {
                    up.push(r % 2 == 0);
                    offset.push(((r / 2) % n) + 1);
                    r /= 2 * n;
                }
                let mut rotations = vec![vec![Slot { dart: Dart(0), label: 0 }; deg]; v];
                let mut edges = Vec::new();
                for (i, &(a, b)) in m.iter().enumerate() {
                    let twisted = twists >> i & 1 == 1;
                    let (va, vb) = (a / deg, b / deg);
                    let positive = (up[va] == up[vb]) ^ twisted;
                    edges.push(EdgeData { sign: if positive { Sign::Pos } else { Sign::Neg }, twisted });
                    for (s, d) in [(a, 2 * i), (b, 2 * i + 1)] {
                        let (w, k) = (s / deg, (s % deg) as i64);
                        let step = if up[w] { k } else { -k };
                        rotations[w][s % deg] = Slot { dart: Dart(d), label: norm_label(offset[w] as i64 + step, n) };
                    }
                }
                let parts = FatGraphParts { rotations, edges, holes: vec![] };
                let g = FatGraph::unchecked_surface(parts.clone(), SurfaceTag::S, n, delta).unwrap();
                let t = trace_faces(&g);
                let Some(closed) = closed_tag(t.euler(&g), orientable(&g)) else { continue };
                let face_dart = |f: usize| {
                    (0..g.n_darts()).map(Dart).find(|&d| t.face_of(Step { dart: d, forward: true }) == f).unwrap()
                };
                let faces = t.faces.len();
                let mut variants = vec![(closed, vec![])];
                if closed == SurfaceTag::S {
                    for i in 0..faces {
                        for j in i + 1..faces {
                            variants.push((SurfaceTag::A, vec![face_dart(i), face_dart(j)]));
                        }
                    }
                }
                if closed == SurfaceTag::P {
                    variants.extend((0..faces).map(|i| (SurfaceTag::B, vec![face_dart(i)])));
                }
                for (tag, holes) in variants {
                    let p = FatGraphParts { holes, ..parts.clone() };
                    let Ok(h) = FatGraph::new(p, tag, n, delta) else { continue };
                    if validate_labels(&h).is_ok() && no_trivial_loops(&h).holds {
                        out.push(h);
                    }
                }
            }
        }
    }
    out
}

/// Isomorphism by brute force over vertex bijections, rotation offsets,
/// vertex flips and label shifts. Closed graphs only.
fn isomorphic(g: &FatGraph, h: &FatGraph) -> bool {
    let (nv, n) = (g.n_vertices(), g.n_partner());
    if nv != h.n_vertices() || g.n_edges() != h.n_edges() || g.kind() != h.kind() || n != h.n_partner() {
        return false;
    }
    let perms: Vec<Vec<usize>> = if nv == 1 { vec![vec![0]] } else { vec![vec![0, 1], vec![1, 0]] };
    let deg = g.degree(0);
    if (0..nv).any(|v| g.degree(v) != deg || h.degree(v) != deg) {
        return false;
    }
    let frames = (2 * deg).pow(nv as u32);
    for p in &perms {
        for frame in 0..frames {
            let (mut rot, mut flip) = (Vec::new(), Vec::new());
            let mut r = frame;
            for _ in 0..nv {
                flip.push(r % 2 == 1);
                rot.push((r / 2) % deg);
                r /= 2 * deg;
            }
            let image = |v: usize, s: usize| {
                let t = if flip[v] { (rot[v] + deg - s) % deg } else { (rot[v] + s) % deg };
                (p[v], t)
            };
            for shift in 0..n {
                let ok = (0..g.n_darts()).all(|d| {
                    let d = Dart(d);
                    let (v, s) = g.end(d);
                    let (w, t) = g.end(d.reverse());
                    let (hv, hs) = image(v, s);
                    let (hw, ht) = image(w, t);
                    let hd = h.rotation(hv)[hs].dart;
                    let he = h.edge(hd.edge());
                    let ge = g.edge(d.edge());
                    h.end(hd.reverse()) == (hw, ht)
                        && he.sign == ge.sign
                        && he.twisted == ge.twisted ^ flip[v] ^ flip[w]
                        && h.label(hd) == norm_label(g.label(d) as i64 + shift as i64, n)
                });
                if ok {
                    return true;
                }
            }
        }
    }
    false
}

fn bounds(v: usize, e: usize, n: u32, delta: u32) -> GraphBounds {
    GraphBounds { max_vertices: v, max_edges: e, n_partner: n, delta, surfaces: SurfaceTag::ALL.to_vec() }
}

const SHAPES: [(u32, u32); 8] = [(1, 2), (2, 1), (3, 1), (4, 1), (6, 1), (2, 2), (3, 2), (2, 3)];

#[test]
fn generator_matches_naive_oracle_up_to_two_vertices_and_three_edges() {
    for (n, delta) in SHAPES {
        let deg = (n * delta) as usize;
        let mut expected = BTreeSet::new();
        for v in 1..=2 {
            if (v * deg).is_multiple_of(2) && v * deg / 2 <= 3 {
                expected.extend(naive(v, n, delta).iter().map(graph_canonical_code));
            }
        }
        let got: Vec<Vec<u32>> = enumerate_fat_graphs(&bounds(2, 3, n, delta)).iter().map(graph_canonical_code).collect();
        let distinct: BTreeSet<_> = got.iter().cloned().collect();
        assert_eq!(distinct.len(), got.len(), "duplicate classes at n={n} delta={delta}");
        assert_eq!(distinct, expected, "class sets differ at n={n} delta={delta}");
    }
}

#[test]
fn canonical_codes_agree_with_brute_force_isomorphism() {
    for (n, delta) in SHAPES {
        let deg = (n * delta) as usize;
        for v in 1..=2 {
            if !(v * deg).is_multiple_of(2) || v * deg / 2 > 3 {
                continue;
            }
            let closed: Vec<FatGraph> = naive(v, n, delta).into_iter().filter(|g| g.holes().is_empty()).collect();
            let mut classes: BTreeMap<Vec<u32>, Vec<&FatGraph>> = BTreeMap::new();
            for g in &closed {
                classes.entry(graph_canonical_code(g)).or_default().push(g);
            }
            let reps: Vec<&FatGraph> = classes.values().map(|c| c[0]).collect();
            for c in classes.values() {
                assert!(c.iter().all(|g| isomorphic(c[0], g)), "code merges non-isomorphic graphs");
            }
            for i in 0..reps.len() {
                for j in i + 1..reps.len() {
                    assert!(!isomorphic(reps[i], reps[j]), "isomorphic graphs with different codes");
                }
            }
        }
    }
}

#[test]
fn class_counts_are_frozen() {
    // counted with the naive oracle above; per surface S, P, A, B, T, K
    let count = |n, delta| {
        let mut per = BTreeMap::new();
        for g in enumerate_fat_graphs(&bounds(2, 3, n, delta)) {
            *per.entry(g.kind().tag.as_str()).or_insert(0usize) += 1;
        }
        SurfaceTag::ALL.map(|t| per.get(t.as_str()).copied().unwrap_or(0))
    };
    let got: Vec<[usize; 6]> = SHAPES.iter().map(|&(n, d)| count(n, d)).collect();
    assert_eq!(got, FROZEN);
}

const FROZEN: [[usize; 6]; 8] = [
    [2, 2, 3, 2, 0, 0],
    [4, 3, 5, 3, 0, 0],
    [3, 4, 8, 14, 3, 8],
    [0, 1, 1, 2, 1, 2],
    [0, 1, 1, 3, 2, 5],
    [0, 1, 1, 2, 1, 2],
    [0, 1, 1, 3, 2, 5],
    [0, 1, 1, 3, 2, 5],
];

#[test]
fn enlarging_bounds_keeps_every_class() {
    for (n, delta, small, large) in [(2, 1, (2, 2), (4, 4)), (3, 1, (2, 3), (4, 6)), (2, 2, (1, 2), (2, 4))] {
        let codes = |(v, e)| -> BTreeSet<_> {
            enumerate_fat_graphs(&bounds(v, e, n, delta)).iter().map(graph_canonical_code).collect()
        };
        let (small, large) = (codes(small), codes(large));
        assert!(small.is_subset(&large));
        assert!(large.len() > small.len());
    }
}
