//! Labelled graphs on the six small surfaces, one per isomorphism class.
//!
//! Every vertex of a labelled graph has degree `delta * n_partner` with
//! labels stepping by one around it. A vertex is an offset and a label
//! direction; an edge is positive exactly when its ends have the same label
//! direction, read through the twist. Classes are taken up to vertex
//! renaming, reversing a vertex's rotation, and shifting every label by the
//! same amount.

use super::maps::{
    canonical_code, closed_tag, code_from, is_canonical, rooted_map_tree, Decor, MapLimits, MapState, RawMap,
};
use crate::pair::{no_trivial_loops, validate_labels};
use crate::surface::{norm_label, orientable, trace_faces, Dart, FatGraph, Label, Step, SurfaceTag};
use rayon::prelude::*;
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphBounds {
    pub max_vertices: usize,
    pub max_edges: usize,
    pub n_partner: u32,
    pub delta: u32,
    pub surfaces: Vec<SurfaceTag>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GenerationStats {
    /// Rooted maps and label assignments produced before canonical rejection.
    pub generated: usize,
    pub canonical: usize,
    pub admissible: usize,
}

impl GenerationStats {
    fn add(&mut self, o: GenerationStats) {
        self.generated += o.generated;
        self.canonical += o.canonical;
        self.admissible += o.admissible;
    }
}

/// An independent piece of the rooted-map generation tree.
#[derive(Debug, Clone)]
pub enum MapTask {
    Done(RawMap),
    Parked(MapState),
}

impl MapTask {
    pub fn run(&self, lim: &MapLimits, f: &mut dyn FnMut(&RawMap)) {
        match self {
            MapTask::Done(m) => f(m),
            MapTask::Parked(s) => s.expand(lim, f),
        }
    }
}

/// The generation tree cut two edges deep, in a fixed order.
pub fn map_tasks(lim: &MapLimits) -> Vec<MapTask> {
    let (done, parked) = rooted_map_tree(lim, lim.max_edges.min(2));
    done.into_iter().map(MapTask::Done).chain(parked.into_iter().map(MapTask::Parked)).collect()
}

/// Runs `f` on every rooted map within the limits, splitting the generation
/// tree over `workers` threads. Results come back in generation order
/// whatever the worker count.
pub fn for_each_rooted_map<T: Send>(lim: &MapLimits, workers: usize, f: impl Fn(&RawMap, &mut Vec<T>) + Sync) -> Vec<T> {
    let tasks = map_tasks(lim);
    let run = |t: &MapTask| {
        let mut out = Vec::new();
        t.run(lim, &mut |m| f(m, &mut out));
        out
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build().expect("thread pool");
    let chunks: Vec<Vec<T>> = pool.install(|| tasks.par_iter().map(run).collect());
    chunks.into_iter().flatten().collect()
}

fn vertex_labels(m: &RawMap, n: u32, offsets: &[u32], up: &[bool]) -> Vec<Label> {
    let mut labels = vec![0; m.n_slots()];
    for v in 0..m.n_vertices() {
        for s in 0..m.deg[v] {
            let step = if up[v] { s as i64 } else { -(s as i64) };
            labels[m.start[v] + s] = norm_label(offsets[v] as i64 + step, n);
        }
    }
    labels
}

fn hole_dart(g: &FatGraph, t: &crate::surface::Tracing, face: usize) -> Dart {
    (0..g.n_darts())
        .map(Dart)
        .find(|&d| t.face_of(Step { dart: d, forward: true }) == face)
        .expect("every face has a forward step")
}

/// Admissible labelled graphs over one rooted map.
pub(crate) fn decorate(m: &RawMap, b: &GraphBounds) -> (GenerationStats, Vec<FatGraph>) {
    let n = b.n_partner;
    let nv = m.n_vertices();
    let mut stats = GenerationStats::default();
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    let per_vertex = 2 * n as usize;
    let total = 2 * per_vertex.pow(nv as u32 - 1);
    for code in 0..total {
        let mut offsets = vec![1u32; nv];
        let mut up = vec![code % 2 == 0; nv];
        let mut r = code / 2;
        for v in 1..nv {
            offsets[v] = (r % n as usize) as u32 + 1;
            up[v] = (r / n as usize).is_multiple_of(2);
            r /= per_vertex;
        }
        let labels = vertex_labels(m, n, &offsets, &up);
        let signs: Vec<bool> =
            (0..m.n_slots()).map(|g| (up[m.owner[g]] == up[m.owner[m.mate[g]]]) ^ m.twist[g]).collect();
        let decor = Decor { labels: Some((&labels, n)), signs: Some(&signs), ..Default::default() };
        let mut c = Vec::new();
        code_from(m, &decor, (0, 0, false), None, &mut c);
        if !seen.insert(c) {
            // label directions invisible at n <= 2 give the same graph twice
            continue;
        }
        stats.generated += 1;
        if !is_canonical(m, &decor) {
            continue;
        }
        stats.canonical += 1;
        let g = m.to_fat_graph(&decor, SurfaceTag::S, n, b.delta);
        let t = trace_faces(&g);
        let Some(closed) = closed_tag(t.euler(&g), orientable(&g)) else { continue };
        let mut variants: Vec<(SurfaceTag, Vec<usize>)> = Vec::new();
        if b.surfaces.contains(&closed) {
            variants.push((closed, vec![]));
        }
        let faces = t.faces.len();
        if closed == SurfaceTag::S && b.surfaces.contains(&SurfaceTag::A) {
            variants.extend((0..faces).flat_map(|i| (i + 1..faces).map(move |j| (SurfaceTag::A, vec![i, j]))));
        }
        if closed == SurfaceTag::P && b.surfaces.contains(&SurfaceTag::B) {
            variants.extend((0..faces).map(|i| (SurfaceTag::B, vec![i])));
        }
        let edge_of = m.edge_of_slot();
        let mut holed_seen = BTreeSet::new();
        for (tag, holes) in variants {
            let mut decor = decor.clone();
            let sides: Vec<[bool; 2]>;
            if !holes.is_empty() {
                sides = (0..m.n_slots())
                    .map(|g| {
                        let d = m.dart_at(g, &edge_of);
                        [false, true].map(|fw| holes.contains(&t.face_of(Step { dart: d, forward: fw })))
                    })
                    .collect();
                decor.hole_sides = Some(&sides);
                if !holed_seen.insert((tag, canonical_code(m, &decor))) {
                    continue;
                }
                decor.hole_darts = Some(holes.iter().map(|&f| hole_dart(&g, &t, f)).collect());
            }
            let h = m.to_fat_graph(&decor, tag, n, b.delta);
            let Ok(h) = FatGraph::new(h.to_parts(), tag, n, b.delta) else { continue };
            if validate_labels(&h).is_ok() && no_trivial_loops(&h).holds {
                stats.admissible += 1;
                out.push(h);
            }
        }
    }
    (stats, out)
}

/// Every class of admissible labelled graphs within the bounds, in a fixed
/// order that does not depend on `workers`.
pub fn enumerate_fat_graphs_with_stats(b: &GraphBounds, workers: usize) -> (GenerationStats, Vec<FatGraph>) {
    let degree = (b.delta * b.n_partner) as usize;
    if b.max_vertices == 0 || degree == 0 {
        return (GenerationStats::default(), Vec::new());
    }
    let lim = MapLimits { max_vertices: b.max_vertices, max_edges: b.max_edges, degree: Some(degree) };
    let parts = for_each_rooted_map(&lim, workers, |m, out| out.push(decorate(m, b)));
    let mut stats = GenerationStats::default();
    let mut graphs = Vec::new();
    for (s, gs) in parts {
        stats.add(s);
        graphs.extend(gs);
    }
    (stats, graphs)
}

pub fn enumerate_fat_graphs(b: &GraphBounds) -> Vec<FatGraph> {
    enumerate_fat_graphs_with_stats(b, 1).1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny(n: u32, delta: u32, v: usize, e: usize) -> GraphBounds {
        GraphBounds { max_vertices: v, max_edges: e, n_partner: n, delta, surfaces: SurfaceTag::ALL.to_vec() }
    }

    #[test]
    fn one_loop_classes() {
        // a single loop at a degree-2 vertex: twisted in the projective plane,
        // twisted with a hole in the Möbius band, untwisted with both faces
        // holed in the annulus; on the sphere it would bound a monogon
        let gs = enumerate_fat_graphs(&tiny(2, 1, 1, 1));
        let mut tags: Vec<SurfaceTag> = gs.iter().map(|g| g.kind().tag).collect();
        tags.sort();
        assert_eq!(tags, vec![SurfaceTag::P, SurfaceTag::A, SurfaceTag::B]);
    }

    #[test]
    fn no_vertices_no_graphs() {
        assert!(enumerate_fat_graphs(&tiny(2, 1, 0, 3)).is_empty());
    }

    #[test]
    fn worker_count_does_not_change_the_output() {
        let b = tiny(2, 1, 2, 3);
        let one = enumerate_fat_graphs_with_stats(&b, 1);
        let four = enumerate_fat_graphs_with_stats(&b, 4);
        assert_eq!(one, four);
    }
}
