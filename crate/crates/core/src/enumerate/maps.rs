//! Rooted-map generation with canonical rejection.
//!
//! A map is grown breadth first from a root slot: every unmatched slot, in
//! slot order, is either joined to a free slot of a vertex already reached
//! or to slot 0 of a new vertex, whose rotation is read so that the joining
//! edge is untwisted. This is exactly the order in which [`code_from`] reads
//! a map from its root, so each rooted map is produced once. A map is kept
//! when no other root (vertex, slot, reading direction) gives a smaller code.

use crate::surface::{Dart, Direction, EdgeData, FatGraph, FatGraphParts, Label, Sign, Slot, SurfaceTag};
use std::cmp::Ordering;

const FREE: usize = usize::MAX;

/// Connected rotation system with twist bits, slots numbered vertex by
/// vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RawMap {
    pub deg: Vec<usize>,
    pub start: Vec<usize>,
    pub owner: Vec<usize>,
    pub mate: Vec<usize>,
    pub twist: Vec<bool>,
}

impl RawMap {
    pub fn isolated_vertex() -> Self {
        RawMap { deg: vec![0], start: vec![0], owner: vec![], mate: vec![], twist: vec![] }
    }

    pub fn n_vertices(&self) -> usize {
        self.deg.len()
    }

    pub fn n_edges(&self) -> usize {
        self.mate.len() / 2
    }

    pub fn n_slots(&self) -> usize {
        self.mate.len()
    }

    /// Edge of each slot; edges are numbered by their lower slot.
    pub fn edge_of_slot(&self) -> Vec<usize> {
        let mut out = vec![0; self.n_slots()];
        let mut e = 0;
        for g in 0..self.n_slots() {
            if self.mate[g] > g {
                out[g] = e;
                out[self.mate[g]] = e;
                e += 1;
            }
        }
        out
    }

    /// Dart sitting in slot `g`: the lower slot of an edge holds its fwd end.
    pub fn dart_at(&self, g: usize, edge_of: &[usize]) -> Dart {
        let dir = if self.mate[g] > g { Direction::Fwd } else { Direction::Rev };
        Dart::new(edge_of[g], dir)
    }

    /// Fat graph over the map with the given decoration; no surface check.
    pub fn to_fat_graph(&self, decor: &Decor, tag: SurfaceTag, n_partner: u32, delta: u32) -> FatGraph {
        let edge_of = self.edge_of_slot();
        let rotations = (0..self.n_vertices())
            .map(|v| {
                (0..self.deg[v])
                    .map(|s| {
                        let g = self.start[v] + s;
                        Slot { dart: self.dart_at(g, &edge_of), label: decor.labels.map_or(1, |(l, _)| l[g]) }
                    })
                    .collect()
            })
            .collect();
        let mut edges = vec![EdgeData { sign: Sign::Pos, twisted: false }; self.n_edges()];
        for g in 0..self.n_slots() {
            if self.mate[g] > g {
                let positive = decor.signs.is_none_or(|s| s[g]);
                edges[edge_of[g]] =
                    EdgeData { sign: if positive { Sign::Pos } else { Sign::Neg }, twisted: self.twist[g] };
            }
        }
        let holes = decor.hole_darts.clone().unwrap_or_default();
        FatGraph::unchecked_surface(FatGraphParts { rotations, edges, holes }, tag, n_partner, delta)
            .expect("generated maps are structurally valid")
    }
}

/// Per-slot data read into the canonical code besides the map itself.
#[derive(Debug, Clone, Default)]
pub struct Decor<'a> {
    /// Slot labels and the partner count they live modulo.
    pub labels: Option<(&'a [Label], u32)>,
    /// Positive-edge flag per slot.
    pub signs: Option<&'a [bool]>,
    /// Whether the face on each side of a slot's dart is a hole, indexed by
    /// `forward` as in face tracing.
    pub hole_sides: Option<&'a [[bool; 2]]>,
    /// Darts marking the hole faces, copied into the fat graph.
    pub hole_darts: Option<Vec<Dart>>,
}

/// Root of a reading: vertex, slot, and whether the rotation is read backwards.
pub type Root = (usize, usize, bool);

/// Reads the code of `m` from `root`. With a reference, stops at the first
/// token that differs and reports how the code compares; `out` then holds
/// only the prefix read so far.
pub fn code_from(m: &RawMap, decor: &Decor, root: Root, reference: Option<&[u32]>, out: &mut Vec<u32>) -> Ordering {
    read_code(m, decor, root, reference, out, &mut Scratch::default())
}

/// Reusable buffers for repeated code reads.
#[derive(Debug, Default)]
struct Scratch {
    idx: Vec<usize>,
    entry: Vec<usize>,
    rev: Vec<bool>,
    order: Vec<usize>,
}

fn read_code(
    m: &RawMap,
    decor: &Decor,
    root: Root,
    reference: Option<&[u32]>,
    out: &mut Vec<u32>,
    sc: &mut Scratch,
) -> Ordering {
    out.clear();
    let nv = m.n_vertices();
    let Scratch { idx, entry, rev, order } = sc;
    idx.clear();
    idx.resize(nv, FREE);
    entry.clear();
    entry.resize(nv, 0);
    rev.clear();
    rev.resize(nv, false);
    order.clear();
    let (v0, s0, r0) = root;
    idx[v0] = 0;
    entry[v0] = s0;
    rev[v0] = r0;
    order.push(v0);
    let shift = decor.labels.map(|(l, n)| (l[m.start[v0] + s0], n));
    let mut pos = 0;
    macro_rules! emit {
        ($t:expr) => {{
            let t: u32 = $t;
            if let Some(r) = reference {
                match t.cmp(&r[pos]) {
                    Ordering::Equal => {}
                    o => return o,
                }
            }
            out.push(t);
            pos += 1;
        }};
    }
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        i += 1;
        let d = m.deg[v];
        emit!(d as u32);
        for k in 0..d {
            let s = if rev[v] { (entry[v] + d - k) % d } else { (entry[v] + k) % d };
            let g = m.start[v] + s;
            let mt = m.mate[g];
            let w = m.owner[mt];
            let t = mt - m.start[w];
            if idx[w] == FREE {
                idx[w] = order.len();
                entry[w] = t;
                rev[w] = rev[v] ^ m.twist[g];
                order.push(w);
            }
            let dw = m.deg[w];
            let rel = if rev[w] { (entry[w] + dw - t) % dw } else { (t + dw - entry[w]) % dw };
            emit!(idx[w] as u32);
            emit!(rel as u32);
            emit!(u32::from(m.twist[g] ^ rev[v] ^ rev[w]));
            if let (Some((l, _)), Some((l0, n))) = (decor.labels, shift) {
                emit!((l[g] + n - l0) % n);
            }
            if let Some(sg) = decor.signs {
                emit!(u32::from(sg[g]));
            }
            if let Some(h) = decor.hole_sides {
                emit!(u32::from(h[g][usize::from(!rev[v])]));
            }
        }
    }
    if reference.is_some_and(|r| pos < r.len()) {
        // a disconnected map cannot be read in full; never happens here
        return Ordering::Less;
    }
    Ordering::Equal
}

fn roots(m: &RawMap) -> impl Iterator<Item = Root> + '_ {
    (0..m.n_vertices()).flat_map(move |v| (0..m.deg[v]).flat_map(move |s| [(v, s, false), (v, s, true)]))
}

/// True when no root reads a smaller code than root `(0, 0, forward)`.
pub fn is_canonical(m: &RawMap, decor: &Decor) -> bool {
    if m.n_slots() == 0 {
        return true;
    }
    let mut sc = Scratch::default();
    let mut reference = Vec::new();
    read_code(m, decor, (0, 0, false), None, &mut reference, &mut sc);
    let mut buf = Vec::new();
    roots(m).skip(1).all(|r| read_code(m, decor, r, Some(&reference), &mut buf, &mut sc) != Ordering::Less)
}

/// Smallest code over all roots: a complete isomorphism invariant.
pub fn canonical_code(m: &RawMap, decor: &Decor) -> Vec<u32> {
    if m.n_slots() == 0 {
        return vec![0];
    }
    let mut sc = Scratch::default();
    let mut best: Vec<u32> = Vec::new();
    let mut buf = Vec::new();
    for r in roots(m) {
        if best.is_empty() || read_code(m, decor, r, Some(&best), &mut buf, &mut sc) == Ordering::Less {
            read_code(m, decor, r, None, &mut best, &mut sc);
        }
    }
    best
}

/// Canonical code of a fat graph with its labels, signs and holes: equal
/// exactly when two connected graphs are isomorphic up to a common label
/// shift.
pub fn graph_canonical_code(g: &FatGraph) -> Vec<u32> {
    let nv = g.n_vertices();
    let mut start = Vec::with_capacity(nv);
    let mut at = vec![0usize; g.n_darts()];
    let mut owner = Vec::new();
    let mut labels = Vec::new();
    for v in 0..nv {
        start.push(owner.len());
        for slot in g.rotation(v) {
            at[slot.dart.0] = owner.len();
            owner.push(v);
            labels.push(slot.label);
        }
    }
    let mut mate = vec![0; owner.len()];
    let mut twist = vec![false; owner.len()];
    let mut signs = vec![false; owner.len()];
    let mut sides = vec![[false; 2]; owner.len()];
    let t = crate::surface::trace_faces(g);
    for d in 0..g.n_darts() {
        let dart = Dart(d);
        let e = g.edge(dart.edge());
        mate[at[d]] = at[dart.reverse().0];
        twist[at[d]] = e.twisted;
        signs[at[d]] = e.sign == Sign::Pos;
        sides[at[d]] = [false, true]
            .map(|forward| t.faces[t.face_of(crate::surface::Step { dart, forward })].contains_hole());
    }
    let m = RawMap { deg: (0..nv).map(|v| g.degree(v)).collect(), start, owner, mate, twist };
    let decor = Decor {
        labels: Some((&labels, g.n_partner().max(1))),
        signs: Some(&signs),
        hole_sides: Some(&sides),
        hole_darts: None,
    };
    canonical_code(&m, &decor)
}

/// Size limits for map generation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MapLimits {
    pub max_vertices: usize,
    pub max_edges: usize,
    /// Every vertex gets this degree when set.
    pub degree: Option<usize>,
}

/// Partial map: a subtree of the generation tree.
#[derive(Debug, Clone)]
pub struct MapState {
    deg: Vec<usize>,
    start: Vec<usize>,
    owner: Vec<usize>,
    mate: Vec<usize>,
    twist: Vec<bool>,
    edges: usize,
    free: usize,
    cursor: usize,
}

impl MapState {
    fn with_root(d: usize) -> Self {
        MapState {
            deg: vec![d],
            start: vec![0],
            owner: vec![0; d],
            mate: vec![FREE; d],
            twist: vec![false; d],
            edges: 0,
            free: d,
            cursor: 0,
        }
    }

    fn finish(&self) -> RawMap {
        RawMap {
            deg: self.deg.clone(),
            start: self.start.clone(),
            owner: self.owner.clone(),
            mate: self.mate.clone(),
            twist: self.twist.clone(),
        }
    }

    fn fits(&self, lim: &MapLimits, edges: usize, free: usize) -> bool {
        edges + free.div_ceil(2) <= lim.max_edges
    }

    fn join(&mut self, a: usize, b: usize, tw: bool) {
        self.mate[a] = b;
        self.mate[b] = a;
        self.twist[a] = tw;
        self.twist[b] = tw;
        self.edges += 1;
        self.free -= 2;
    }

    fn unjoin(&mut self, a: usize, b: usize) {
        self.mate[a] = FREE;
        self.mate[b] = FREE;
        self.twist[a] = false;
        self.twist[b] = false;
        self.edges -= 1;
        self.free += 2;
    }

    fn push_vertex(&mut self, d: usize) {
        let w = self.deg.len();
        self.start.push(self.mate.len());
        self.deg.push(d);
        self.owner.extend(std::iter::repeat_n(w, d));
        self.mate.extend(std::iter::repeat_n(FREE, d));
        self.twist.extend(std::iter::repeat_n(false, d));
        self.free += d;
    }

    fn pop_vertex(&mut self) {
        let d = self.deg.pop().unwrap();
        let s = self.start.pop().unwrap();
        self.owner.truncate(s);
        self.mate.truncate(s);
        self.twist.truncate(s);
        self.free -= d;
    }

    /// Depth-first walk of the subtree. States with `split` edges are handed
    /// to `park` instead of being expanded.
    fn walk(&mut self, lim: &MapLimits, split: Option<usize>, emit: &mut dyn FnMut(&RawMap), park: &mut dyn FnMut(&MapState)) {
        let mut c = self.cursor;
        while c < self.mate.len() && self.mate[c] != FREE {
            c += 1;
        }
        if c == self.mate.len() {
            emit(&self.finish());
            return;
        }
        if split == Some(self.edges) {
            let mut s = self.clone();
            s.cursor = c;
            park(&s);
            return;
        }
        let saved = self.cursor;
        self.cursor = c + 1;
        if self.edges < lim.max_edges {
            for t in c + 1..self.mate.len() {
                if self.mate[t] != FREE {
                    continue;
                }
                for tw in [false, true] {
                    if self.fits(lim, self.edges + 1, self.free - 2) {
                        self.join(c, t, tw);
                        self.walk(lim, split, emit, park);
                        self.unjoin(c, t);
                    }
                }
            }
            if self.deg.len() < lim.max_vertices {
                let degrees: Vec<usize> = match lim.degree {
                    Some(d) => vec![d],
                    None => (1..=2 * lim.max_edges).collect(),
                };
                for d in degrees {
                    if !self.fits(lim, self.edges + 1, self.free + d - 2) {
                        continue;
                    }
                    self.push_vertex(d);
                    let w0 = self.start[self.deg.len() - 1];
                    self.join(c, w0, false);
                    self.walk(lim, split, emit, park);
                    self.unjoin(c, w0);
                    self.pop_vertex();
                }
            }
        }
        self.cursor = saved;
    }

    /// Continues a parked state to completion.
    pub fn expand(&self, lim: &MapLimits, emit: &mut dyn FnMut(&RawMap)) {
        let mut s = self.clone();
        s.walk(lim, None, emit, &mut |_| {});
    }
}

/// Every rooted map within the limits, split into independent subtrees.
/// Maps completed above the split depth are returned directly; the parked
/// states together generate the rest. Order is deterministic.
pub fn rooted_map_tree(lim: &MapLimits, split_edges: usize) -> (Vec<RawMap>, Vec<MapState>) {
    let mut done = Vec::new();
    let mut parked = Vec::new();
    if lim.max_vertices == 0 {
        return (done, parked);
    }
    if lim.degree.is_none_or(|d| d == 0) {
        done.push(RawMap::isolated_vertex());
    }
    let degrees: Vec<usize> = match lim.degree {
        Some(0) => vec![],
        Some(d) => vec![d],
        None => (1..=2 * lim.max_edges).collect(),
    };
    for d in degrees {
        let mut s = MapState::with_root(d);
        if !s.fits(lim, 0, d) {
            continue;
        }
        s.walk(lim, Some(split_edges), &mut |m| done.push(m.clone()), &mut |p| parked.push(p.clone()));
    }
    (done, parked)
}

/// Closed surface of a map from its Euler characteristic and
/// orientability, when it is one of the small ones.
pub fn closed_tag(euler: i64, orientable: bool) -> Option<SurfaceTag> {
    match (euler, orientable) {
        (2, true) => Some(SurfaceTag::S),
        (1, false) => Some(SurfaceTag::P),
        (0, true) => Some(SurfaceTag::T),
        (0, false) => Some(SurfaceTag::K),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn all(lim: MapLimits) -> Vec<RawMap> {
        let (mut done, parked) = rooted_map_tree(&lim, 1);
        for p in parked {
            p.expand(&lim, &mut |m| done.push(m.clone()));
        }
        done
    }

    #[test]
    fn rooted_one_edge_maps() {
        // one vertex with a plain or twisted loop (two slot orders each give
        // the same code), one edge between two vertices, and the isolated
        // vertex
        let lim = MapLimits { max_vertices: 2, max_edges: 1, degree: None };
        let maps = all(lim);
        assert_eq!(maps.len(), 4);
        let canon: Vec<&RawMap> = maps.iter().filter(|m| is_canonical(m, &Decor::default())).collect();
        assert_eq!(canon.len(), 4);
    }

    #[test]
    fn rooted_codes_are_distinct() {
        let lim = MapLimits { max_vertices: 3, max_edges: 3, degree: None };
        let maps = all(lim);
        let mut seen = BTreeSet::new();
        for m in &maps {
            let mut c = Vec::new();
            code_from(m, &Decor::default(), (0, 0, false), None, &mut c);
            assert!(seen.insert(c));
        }
    }

    #[test]
    fn split_depth_does_not_change_the_output() {
        let lim = MapLimits { max_vertices: 3, max_edges: 3, degree: None };
        let direct: Vec<RawMap> = {
            let (mut done, parked) = rooted_map_tree(&lim, 99);
            assert!(parked.is_empty());
            done.sort_by_key(|m| format!("{m:?}"));
            done
        };
        let mut split = all(lim);
        split.sort_by_key(|m| format!("{m:?}"));
        assert_eq!(direct, split);
    }
}
