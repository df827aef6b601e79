//! Complementary regions of a sub-embedding.
//!
//! The closed surface is cut into open cells by the full graph: vertices,
//! edges and faces (hole faces are punctured). Removing the closed
//! neighbourhood of a subgraph `H` leaves a union of open cells; its
//! components are the regions. For each region the compactly supported Euler
//! characteristic `#vertices − #edges + #faces − #holes` equals the Euler
//! characteristic of the compact region, and its boundary circles are the
//! face walks of `H` facing it plus the holes it contains.

use super::{subgraph_embedding, trace_faces, Dart, EdgeId, FatGraph, Step, SurfaceError, VertexId};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegionKind {
    Disk,
    Annulus,
    Mobius,
    Sphere,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Region {
    pub euler: i64,
    pub boundary_circles: usize,
    pub contains_hole: bool,
    /// Vertices of the full graph lying inside the region.
    pub vertices: Vec<VertexId>,
    /// Faces of the full graph making up the region.
    pub faces: Vec<usize>,
    /// Edges of the full graph lying inside the region.
    pub edges: Vec<EdgeId>,
    /// Indices into [`RegionMap::frontier`] of the circles facing this region.
    pub frontier: Vec<usize>,
}

impl Region {
    pub fn kind(&self) -> RegionKind {
        match (self.euler, self.boundary_circles) {
            (1, 1) => RegionKind::Disk,
            (0, 2) => RegionKind::Annulus,
            (0, 1) => RegionKind::Mobius,
            (2, 0) => RegionKind::Sphere,
            _ => RegionKind::Other,
        }
    }

    /// A hole-free disk containing no vertex of the full graph.
    pub fn is_disk(&self) -> bool {
        self.kind() == RegionKind::Disk && !self.contains_hole
    }
}

/// One boundary circle of the subgraph neighbourhood, given as the face walk
/// of the sub-embedding (in original dart ids). Isolated subgraph vertices
/// give a circle with an empty walk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrontierCircle {
    pub walk: Vec<Step>,
    pub vertices: Vec<VertexId>,
    pub region: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionMap {
    pub regions: Vec<Region>,
    pub frontier: Vec<FrontierCircle>,
    /// Region of every face of the full graph.
    pub face_region: Vec<usize>,
    pub sub_vertices: Vec<VertexId>,
    pub sub_edges: Vec<EdgeId>,
}

impl RegionMap {
    /// Euler characteristic of the ribbon neighbourhood of the subgraph.
    pub fn neighbourhood_euler(&self) -> i64 {
        self.sub_vertices.len() as i64 - self.sub_edges.len() as i64
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.0[hi] = lo;
        }
    }
}

/// Regions of the subgraph made of `sub_edges` and their endpoints.
pub fn regions_of_subgraph(g: &FatGraph, sub_edges: &BTreeSet<EdgeId>) -> RegionMap {
    regions_with_vertices(g, sub_edges, &BTreeSet::new())
}

/// Regions of the subgraph made of `sub_edges`, their endpoints and the
/// additional vertices `extra`.
pub fn regions_with_vertices(g: &FatGraph, sub_edges: &BTreeSet<EdgeId>, extra: &BTreeSet<VertexId>) -> RegionMap {
    let tracing = trace_faces(g);
    let nf = tracing.faces.len();
    let nv = g.n_vertices();
    let ne = g.n_edges();

    let mut in_h_vertex = vec![false; nv];
    for &v in extra {
        in_h_vertex[v] = true;
    }
    let in_h_edge: Vec<bool> = (0..ne).map(|e| sub_edges.contains(&e)).collect();
    for &e in sub_edges {
        let (a, b) = g.endpoints(e);
        in_h_vertex[a] = true;
        in_h_vertex[b] = true;
    }

    // nodes: faces [0, nf), vertices [nf, nf+nv), edges [nf+nv, ..)
    let vnode = |v: usize| nf + v;
    let enode = |e: usize| nf + nv + e;
    let mut uf = UnionFind::new(nf + nv + ne);
    let isolated_face: Vec<Option<usize>> = {
        let mut m = vec![None; nv];
        for (i, f) in tracing.faces.iter().enumerate() {
            if let Some(v) = f.isolated_vertex {
                m[v] = Some(i);
            }
        }
        m
    };

    for e in (0..ne).filter(|&e| !in_h_edge[e]) {
        let (f1, f2) = tracing.sides(e);
        uf.union(enode(e), f1);
        uf.union(enode(e), f2);
        let (a, b) = g.endpoints(e);
        for v in [a, b] {
            if !in_h_vertex[v] {
                uf.union(enode(e), vnode(v));
            }
        }
    }
    for v in (0..nv).filter(|&v| !in_h_vertex[v]) {
        if let Some(f) = isolated_face[v] {
            uf.union(vnode(v), f);
        }
        for slot in g.rotation(v) {
            for forward in [true, false] {
                uf.union(vnode(v), tracing.face_of(Step { dart: slot.dart, forward }));
            }
        }
    }

    // region ids in order of first face
    let mut root_region = std::collections::HashMap::new();
    let mut regions: Vec<Region> = Vec::new();
    let mut face_region = vec![0; nf];
    let mut region_of_root = |root: usize, regions: &mut Vec<Region>| -> usize {
        *root_region.entry(root).or_insert_with(|| {
            regions.push(Region {
                euler: 0,
                boundary_circles: 0,
                contains_hole: false,
                vertices: vec![],
                faces: vec![],
                edges: vec![],
                frontier: vec![],
            });
            regions.len() - 1
        })
    };
    for (f, face) in tracing.faces.iter().enumerate() {
        let root = uf.find(f);
        let r = region_of_root(root, &mut regions);
        face_region[f] = r;
        let reg = &mut regions[r];
        reg.faces.push(f);
        if face.contains_hole() {
            reg.contains_hole = true;
            reg.boundary_circles += 1;
        } else {
            reg.euler += 1;
        }
    }
    for v in (0..nv).filter(|&v| !in_h_vertex[v]) {
        let root = uf.find(vnode(v));
        let r = region_of_root(root, &mut regions);
        regions[r].vertices.push(v);
        regions[r].euler += 1;
    }
    for e in (0..ne).filter(|&e| !in_h_edge[e]) {
        let root = uf.find(enode(e));
        let r = region_of_root(root, &mut regions);
        regions[r].edges.push(e);
        regions[r].euler -= 1;
    }

    // frontier circles: face walks of the sub-embedding on H's vertices
    let (sub, old_ids) = subgraph_embedding(g, sub_edges);
    let sub_tracing = trace_faces(&sub);
    let to_old = |d: Dart| Dart(2 * old_ids[d.edge()] + d.0 % 2);
    let mut frontier = Vec::new();
    for face in &sub_tracing.faces {
        let (walk, vertices, region) = if let Some(v) = face.isolated_vertex {
            if !in_h_vertex[v] {
                continue;
            }
            let f = match isolated_face[v] {
                Some(f) => f,
                None => tracing.face_of(Step { dart: g.rotation(v)[0].dart, forward: true }),
            };
            (vec![], vec![v], face_region[f])
        } else {
            let walk: Vec<Step> = face.walk.iter().map(|s| Step { dart: to_old(s.dart), forward: s.forward }).collect();
            let vertices: Vec<VertexId> = walk.iter().map(|s| g.vertex_of(s.dart)).collect();
            let r = face_region[tracing.face_of(walk[0])];
            (walk, vertices, r)
        };
        regions[region].boundary_circles += 1;
        regions[region].frontier.push(frontier.len());
        frontier.push(FrontierCircle { walk, vertices, region });
    }

    let sub_vertices = (0..nv).filter(|&v| in_h_vertex[v]).collect();
    RegionMap { regions, frontier, face_region, sub_vertices, sub_edges: sub_edges.iter().copied().collect() }
}

/// True iff the connected subgraph (`sub_edges` plus `sub_vertices` and the
/// edge endpoints) lies in a disk of the surface.
///
/// The ribbon neighbourhood absorbs complementary disk regions; the subgraph
/// lies in a disk iff all regions but one are disks and the neighbourhood
/// together with them is a disk.
pub fn lies_in_disk(
    g: &FatGraph,
    sub_edges: &BTreeSet<EdgeId>,
    sub_vertices: &BTreeSet<VertexId>,
) -> Result<bool, SurfaceError> {
    let map = regions_with_vertices(g, sub_edges, sub_vertices);
    if map.sub_vertices.is_empty() || !connected(g, &map.sub_vertices, sub_edges) {
        return Err(SurfaceError::DisconnectedSubgraph);
    }
    Ok(disk_support(&map).is_some())
}

/// Index of the region left outside when the subgraph's disk regions are
/// absorbed into a disk, if such a region exists. When every region is a
/// disk, the lowest-indexed one is left outside.
pub fn disk_support(map: &RegionMap) -> Option<usize> {
    let chi_n = map.neighbourhood_euler();
    let b_n = map.frontier.len() as i64;
    let non_disks: Vec<usize> = (0..map.regions.len()).filter(|&r| !map.regions[r].is_disk()).collect();
    let outside = match non_disks.as_slice() {
        [] => *[0usize].iter().find(|_| !map.regions.is_empty())?,
        [r] => *r,
        _ => return None,
    };
    let absorbed = map.regions.len() as i64 - 1;
    (chi_n + absorbed == 1 && b_n - absorbed == 1).then_some(outside)
}

pub(crate) fn connected(g: &FatGraph, vertices: &[VertexId], edges: &BTreeSet<EdgeId>) -> bool {
    let Some(&start) = vertices.first() else { return true };
    let set: BTreeSet<VertexId> = vertices.iter().copied().collect();
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &e in edges {
            let (a, b) = g.endpoints(e);
            for (x, y) in [(a, b), (b, a)] {
                if x == v && set.contains(&y) && seen.insert(y) {
                    stack.push(y);
                }
            }
        }
    }
    seen.len() == set.len()
}
