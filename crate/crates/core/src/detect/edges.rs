use crate::surface::{
    regions_with_vertices, subgraph_embedding, trace_faces, Dart, Direction, EdgeId, FatGraph, Label, Sign,
    Step, Tracing,
};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeClass {
    pub edge: EdgeId,
    pub sign: Sign,
    /// Labels at the tail and head of the forward dart.
    pub labels: (Label, Label),
    pub is_loop: bool,
    pub is_level: bool,
    pub level_label: Option<Label>,
}

impl EdgeClass {
    pub fn is_x_edge(&self, x: Label) -> bool {
        self.labels.0 == x || self.labels.1 == x
    }

    /// True for an `ab`-edge in either order.
    pub fn is_pair(&self, a: Label, b: Label) -> bool {
        self.labels == (a, b) || self.labels == (b, a)
    }

    pub fn is_positive(&self) -> bool {
        self.sign == Sign::Pos
    }
}

pub fn classify_edges(g: &FatGraph) -> Vec<EdgeClass> {
    (0..g.n_edges())
        .map(|e| {
            let labels = g.labels(e);
            let sign = g.sign(e);
            let is_level = sign == Sign::Pos && labels.0 == labels.1;
            EdgeClass {
                edge: e,
                sign,
                labels,
                is_loop: g.is_loop(e),
                is_level,
                level_label: is_level.then_some(labels.0),
            }
        })
        .collect()
}

/// A maximal chain of edges, consecutive ones cobounding a hole-free bigon.
///
/// `darts[i]` is the dart of `edges[i]` on the family's first side, so the
/// tails of `darts` occupy consecutive slots at one vertex and their heads
/// consecutive slots at the other.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeFamily {
    pub edges: Vec<EdgeId>,
    pub darts: Vec<Dart>,
    pub sign: Sign,
    /// The chain closes up: the last edge also cobounds a bigon with the first.
    pub cyclic: bool,
}

impl EdgeFamily {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn labels_a(&self, g: &FatGraph) -> Vec<Label> {
        self.darts.iter().map(|&d| g.label(d)).collect()
    }

    pub fn labels_b(&self, g: &FatGraph) -> Vec<Label> {
        self.darts.iter().map(|&d| g.label(d.reverse())).collect()
    }

    /// Both label sequences step by a constant ±1 modulo the partner count.
    pub fn is_progression(&self, g: &FatGraph) -> bool {
        let n = g.n_partner() as i64;
        let steps_ok = |ls: &[Label]| {
            if ls.len() < 2 {
                return true;
            }
            let d = (ls[1] as i64 - ls[0] as i64).rem_euclid(n);
            (d == 1 || d == n - 1)
                && ls.windows(2).all(|w| (w[1] as i64 - w[0] as i64).rem_euclid(n) == d)
        };
        steps_ok(&self.labels_a(g)) && steps_ok(&self.labels_b(g))
    }

    pub fn position(&self, e: EdgeId) -> Option<usize> {
        self.edges.iter().position(|&f| f == e)
    }
}

/// Hole-free bigon faces with two distinct same-signed edges, as
/// `(neighbour, face)` lists per edge.
fn bigon_links(g: &FatGraph, t: &Tracing) -> Vec<Vec<(EdgeId, usize)>> {
    let mut links = vec![Vec::new(); g.n_edges()];
    for (fi, f) in t.faces.iter().enumerate() {
        if f.contains_hole() || f.len() != 2 {
            continue;
        }
        let (a, b) = (f.walk[0].dart.edge(), f.walk[1].dart.edge());
        if a != b && g.sign(a) == g.sign(b) {
            links[a].push((b, fi));
            links[b].push((a, fi));
        }
    }
    links
}

/// Partition of the edges into maximal parallel families, ordered by their
/// first edge. Paths start at the end with the smaller edge id; closed chains
/// start at their smallest edge and head towards its smaller neighbour.
pub fn parallel_families(g: &FatGraph) -> Vec<EdgeFamily> {
    let t = trace_faces(g);
    parallel_families_traced(g, &t)
}

pub(crate) fn parallel_families_traced(g: &FatGraph, t: &Tracing) -> Vec<EdgeFamily> {
    let links = bigon_links(g, t);
    let mut done = vec![false; g.n_edges()];
    let mut out = Vec::new();
    for e in 0..g.n_edges() {
        if done[e] {
            continue;
        }
        let comp = component(&links, e);
        let cyclic = comp.iter().all(|&c| links[c].len() == 2);
        let start = if cyclic {
            *comp.iter().min().unwrap()
        } else {
            *comp.iter().filter(|&&c| links[c].len() < 2).min().unwrap()
        };
        let mut edges = vec![start];
        let mut darts = vec![Dart::new(start, Direction::Fwd)];
        let mut used_faces = BTreeSet::new();
        let mut cur = start;
        loop {
            let mut options: Vec<(EdgeId, usize)> =
                links[cur].iter().copied().filter(|(_, f)| !used_faces.contains(f)).collect();
            options.sort();
            let Some(&(next, face)) = options.first() else { break };
            if next == start {
                break;
            }
            used_faces.insert(face);
            let walk = &t.faces[face].walk;
            let a = *darts.last().unwrap();
            let (mine, other) =
                if walk[0].dart.edge() == cur { (walk[0].dart, walk[1].dart) } else { (walk[1].dart, walk[0].dart) };
            let next_dart = if mine == a { other.reverse() } else { other };
            edges.push(next);
            darts.push(next_dart);
            cur = next;
        }
        for &c in &edges {
            done[c] = true;
        }
        out.push(EdgeFamily { sign: g.sign(start), edges, darts, cyclic });
    }
    out
}

fn component(links: &[Vec<(EdgeId, usize)>], start: EdgeId) -> Vec<EdgeId> {
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(e) = stack.pop() {
        for &(f, _) in &links[e] {
            if seen.insert(f) {
                stack.push(f);
            }
        }
    }
    seen.into_iter().collect()
}

/// Graph with each parallel family replaced by its first edge.
#[derive(Debug, Clone)]
pub struct ReducedGraph {
    pub graph: FatGraph,
    /// Edge of the original graph kept for each reduced edge.
    pub representative: Vec<EdgeId>,
    pub multiplicity: Vec<usize>,
    pub families: Vec<EdgeFamily>,
}

pub fn reduced_graph(g: &FatGraph) -> ReducedGraph {
    let families = parallel_families(g);
    let keep: BTreeSet<EdgeId> = families.iter().map(|f| f.edges[0]).collect();
    let (sub, old_ids) = subgraph_embedding(g, &keep);
    let mut new_id = vec![usize::MAX; g.n_edges()];
    for (n, &o) in old_ids.iter().enumerate() {
        new_id[o] = n;
    }
    let to_new = |d: Dart| Dart(2 * new_id[d.edge()] + d.0 % 2);

    // holes follow their face into the merged face of the reduced graph
    let mut parts = sub.to_parts();
    parts.holes.clear();
    if !g.holes().is_empty() {
        let t = trace_faces(g);
        let all: BTreeSet<usize> = (0..g.n_vertices()).collect();
        let map = regions_with_vertices(g, &keep, &all);
        for &h in g.holes() {
            let r = map.face_region[t.face_of(Step { dart: h, forward: true })];
            let circle = map.frontier.iter().find(|c| c.region == r && !c.walk.is_empty());
            let fwd = circle.and_then(|c| {
                c.walk.iter().find_map(|s| {
                    let m = crate::surface::mirror_step(g, *s);
                    [*s, m].into_iter().find(|x| x.forward).map(|x| x.dart)
                })
            });
            if let Some(d) = fwd {
                parts.holes.push(to_new(d));
            }
        }
    }
    let graph = FatGraph::unchecked_surface(parts, g.kind().tag, g.n_partner(), g.delta())
        .expect("reduced graph keeps a valid rotation system");
    let multiplicity = old_ids
        .iter()
        .map(|&o| families.iter().find(|f| f.edges[0] == o).map_or(1, |f| f.len()))
        .collect();
    let mut fams = families;
    fams.sort_by_key(|f| new_id[f.edges[0]]);
    ReducedGraph { graph, representative: old_ids, multiplicity, families: fams }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::fixtures::*;
    use crate::surface::{classify_surface, SurfaceTag};

    #[test]
    fn theta_is_one_cyclic_family() {
        let g = FatGraph::new(theta(), SurfaceTag::S, 3, 1).unwrap();
        let fams = parallel_families(&g);
        assert_eq!(fams.len(), 1);
        assert_eq!(fams[0].edges, vec![0, 1, 2]);
        assert!(fams[0].cyclic);
        // tails of the family darts sit at slots 0,1,2 of vertex 0
        let tails: Vec<_> = fams[0].darts.iter().map(|&d| g.end(d)).collect();
        assert_eq!(tails, vec![(0, 0), (0, 1), (0, 2)]);
        assert!(fams[0].is_progression(&g));
        let r = reduced_graph(&g);
        assert_eq!(r.graph.n_edges(), 1);
        assert_eq!(r.multiplicity, vec![3]);
        assert_eq!(classify_surface(&r.graph).unwrap().euler, 2);
    }

    #[test]
    fn torus_bouquet_is_reduced() {
        let g = FatGraph::new(torus_bouquet(), SurfaceTag::T, 2, 1).unwrap();
        assert!(parallel_families(&g).iter().all(|f| f.len() == 1));
        let r = reduced_graph(&g);
        assert_eq!(r.multiplicity, vec![1, 1]);
        assert_eq!(r.graph, g);
    }

    #[test]
    fn level_edges() {
        let g = FatGraph::new(single_loop(true), SurfaceTag::P, 2, 1).unwrap();
        let c = classify_edges(&g);
        assert_eq!(c[0].labels, (1, 2));
        assert!(!c[0].is_level);
        assert!(c[0].is_pair(2, 1));
    }
}
