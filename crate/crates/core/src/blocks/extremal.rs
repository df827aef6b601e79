//! Positive subgraph components, their disk supports and extremal blocks.

use crate::detect::{Certificate, StructureKind};
use crate::surface::{
    regions_with_vertices, subgraph_embedding, EdgeId, FatGraph, RegionMap, Step, SurfaceTag, VertexId,
};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlockError {
    #[error("component {0} of the positive subgraph has no disk support")]
    SupportNotFound(usize),
    #[error("no block with more than one vertex and at most one ghost vertex")]
    NoBlock,
}

/// All vertices and positive edges, with the map back to original edge ids.
pub fn positive_subgraph(g: &FatGraph) -> (FatGraph, Vec<EdgeId>) {
    subgraph_embedding(g, &g.positive_edges())
}

/// A disk in the surface containing a subgraph: the ribbon neighbourhood of
/// the subgraph together with every complementary region except `outside`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiskSupport {
    pub outside: usize,
    /// Faces of the full graph inside the disk.
    pub faces: Vec<usize>,
    /// Vertices of the full graph inside the disk but off the subgraph.
    pub inner_vertices: Vec<VertexId>,
    /// Edges of the full graph inside the disk but off the subgraph.
    pub inner_edges: Vec<EdgeId>,
    /// Boundary of the disk as a face walk of the subgraph.
    pub boundary: Vec<Step>,
}

/// Regions `r` such that the subgraph together with all regions but `r` is a
/// disk.
pub(crate) fn support_candidates(map: &RegionMap) -> Vec<usize> {
    let chi_n = map.neighbourhood_euler();
    let b_n = map.frontier.len() as i64;
    let absorbed = map.regions.len() as i64 - 1;
    if map.regions.is_empty() || chi_n + absorbed != 1 || b_n - absorbed != 1 {
        return Vec::new();
    }
    let non_disks: Vec<usize> = (0..map.regions.len()).filter(|&r| !map.regions[r].is_disk()).collect();
    match non_disks.len() {
        0 => (0..map.regions.len()).collect(),
        1 => non_disks,
        _ => Vec::new(),
    }
}

pub(crate) fn support_for(map: &RegionMap, outside: usize) -> DiskSupport {
    let mut faces = Vec::new();
    let mut inner_vertices = Vec::new();
    let mut inner_edges = Vec::new();
    for (i, r) in map.regions.iter().enumerate() {
        if i != outside {
            faces.extend(&r.faces);
            inner_vertices.extend(&r.vertices);
            inner_edges.extend(&r.edges);
        }
    }
    faces.sort_unstable();
    inner_vertices.sort_unstable();
    inner_edges.sort_unstable();
    let boundary = map
        .frontier
        .iter()
        .find(|c| c.region == outside)
        .map(|c| c.walk.clone())
        .unwrap_or_default();
    DiskSupport { outside, faces, inner_vertices, inner_edges, boundary }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSupport {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    pub support: Option<DiskSupport>,
}

impl ComponentSupport {
    /// No vertex of the graph lies inside the support besides the component.
    pub fn is_innermost(&self) -> bool {
        self.support.as_ref().is_some_and(|s| s.inner_vertices.is_empty())
    }
}

/// Connected components of the positive subgraph, vertices and edges sorted.
pub fn positive_components(g: &FatGraph) -> Vec<(Vec<VertexId>, Vec<EdgeId>)> {
    let n = g.n_vertices();
    let mut comp = vec![usize::MAX; n];
    let mut out: Vec<(Vec<VertexId>, Vec<EdgeId>)> = Vec::new();
    let pos = g.positive_edges();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        comp[s] = id;
        let mut stack = vec![s];
        let mut vs = vec![s];
        while let Some(v) = stack.pop() {
            for slot in g.rotation(v) {
                if !pos.contains(&slot.dart.edge()) {
                    continue;
                }
                let w = g.vertex_of(slot.dart.reverse());
                if comp[w] == usize::MAX {
                    comp[w] = id;
                    vs.push(w);
                    stack.push(w);
                }
            }
        }
        vs.sort_unstable();
        out.push((vs, Vec::new()));
    }
    for &e in &pos {
        out[comp[g.endpoints(e).0]].1.push(e);
    }
    out
}

/// Each positive component with a disk support, choosing the outside region
/// that leaves the fewest vertices inside (lowest region index on ties).
/// On sphere and projective plane every component must have one.
pub fn components_with_disk_support(g: &FatGraph) -> Result<Vec<ComponentSupport>, BlockError> {
    let mut out = Vec::new();
    for (i, (vertices, edges)) in positive_components(g).into_iter().enumerate() {
        let es: BTreeSet<EdgeId> = edges.iter().copied().collect();
        let vs: BTreeSet<VertexId> = vertices.iter().copied().collect();
        let map = regions_with_vertices(g, &es, &vs);
        let best = support_candidates(&map)
            .into_iter()
            .map(|r| support_for(&map, r))
            .min_by_key(|s| (s.inner_vertices.len(), s.outside));
        if best.is_none() && matches!(g.kind().tag, SurfaceTag::S | SurfaceTag::P) {
            return Err(BlockError::SupportNotFound(i));
        }
        out.push(ComponentSupport { vertices, edges, support: best });
    }
    Ok(out)
}

/// Blocks (2-connected pieces, or single edges) of the multigraph formed by
/// `edges`, ignoring loops, with the cut vertices.
pub fn blocks_of(g: &FatGraph, edges: &[EdgeId]) -> (Vec<Vec<EdgeId>>, BTreeSet<VertexId>) {
    let n = g.n_vertices();
    let mut adj: Vec<Vec<(VertexId, EdgeId)>> = vec![Vec::new(); n];
    for &e in edges {
        let (a, b) = g.endpoints(e);
        if a != b {
            adj[a].push((b, e));
            adj[b].push((a, e));
        }
    }
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut stack: Vec<EdgeId> = Vec::new();
    let mut blocks = Vec::new();
    let mut cuts = BTreeSet::new();
    #[allow(clippy::too_many_arguments)]
    fn dfs(
        v: VertexId,
        parent_edge: Option<EdgeId>,
        adj: &[Vec<(VertexId, EdgeId)>],
        disc: &mut [usize],
        low: &mut [usize],
        time: &mut usize,
        stack: &mut Vec<EdgeId>,
        blocks: &mut Vec<Vec<EdgeId>>,
        cuts: &mut BTreeSet<VertexId>,
        is_root: bool,
    ) {
        disc[v] = *time;
        low[v] = *time;
        *time += 1;
        let mut children = 0;
        for &(w, e) in &adj[v] {
            if Some(e) == parent_edge {
                continue;
            }
            if disc[w] == usize::MAX {
                children += 1;
                stack.push(e);
                dfs(w, Some(e), adj, disc, low, time, stack, blocks, cuts, false);
                low[v] = low[v].min(low[w]);
                if low[w] >= disc[v] {
                    if !is_root {
                        cuts.insert(v);
                    }
                    let mut block = Vec::new();
                    while let Some(f) = stack.pop() {
                        block.push(f);
                        if f == e {
                            break;
                        }
                    }
                    block.sort_unstable();
                    blocks.push(block);
                }
            } else if disc[w] < disc[v] {
                stack.push(e);
                low[v] = low[v].min(disc[w]);
            }
        }
        if is_root && children > 1 {
            cuts.insert(v);
        }
    }
    for s in 0..n {
        if disc[s] == usize::MAX && !adj[s].is_empty() {
            dfs(s, None, &adj, &mut disc, &mut low, &mut time, &mut stack, &mut blocks, &mut cuts, true);
        }
    }
    blocks.sort();
    (blocks, cuts)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GhostReason {
    CutVertex,
    SlVertex,
    Both,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalBlock {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    /// The positive component the block was cut from.
    pub component: Vec<VertexId>,
    pub ghost: Option<(VertexId, GhostReason)>,
    /// Vertices joined to the boundary of the support by an arc missing the block.
    pub boundary: Vec<VertexId>,
    pub interior: Vec<VertexId>,
    pub support: DiskSupport,
}

impl ExtremalBlock {
    pub fn ghost_vertex(&self) -> Option<VertexId> {
        self.ghost.map(|(v, _)| v)
    }

    pub fn certificate(&self, g: &FatGraph) -> Certificate {
        let mut c = Certificate::new(StructureKind::ExtremalBlock, g, &self.support.boundary, self.edges.clone(), vec![]);
        c.check("positive", true)
            .check("more_than_one_vertex", self.vertices.len() > 1)
            .check("two_connected", true)
            .check("disk_support", true)
            .check("support_free_of_other_positive_edges", true);
        c.notes = match self.ghost {
            Some((v, r)) => format!("ghost vertex {v} ({r:?})"),
            None => "no ghost vertex".into(),
        };
        c
    }
}

/// Longest cyclic run of slots at `v` whose edges lie in `edges`.
pub fn consecutive_endpoints(g: &FatGraph, v: VertexId, edges: &BTreeSet<EdgeId>) -> usize {
    let rot = g.rotation(v);
    let inside: Vec<bool> = rot.iter().map(|s| edges.contains(&s.dart.edge())).collect();
    if inside.iter().all(|&b| b) {
        return rot.len();
    }
    let start = inside.iter().position(|&b| !b).unwrap();
    let (mut best, mut run) = (0, 0);
    for i in 1..=rot.len() {
        if inside[(start + i) % rot.len()] {
            run += 1;
            best = best.max(run);
        } else {
            run = 0;
        }
    }
    best
}

/// Block vertices lying on the boundary circle of the support.
fn boundary_vertices(g: &FatGraph, map: &RegionMap, outside: usize) -> BTreeSet<VertexId> {
    map.frontier
        .iter()
        .filter(|c| c.region == outside)
        .flat_map(|c| {
            let mut vs: Vec<VertexId> = c.walk.iter().map(|s| g.vertex_of(s.dart)).collect();
            vs.extend(&c.vertices);
            vs
        })
        .collect()
}

/// Extremal block of the positive subgraph.
///
/// Components with more than one vertex are scanned by lowest vertex; one is
/// innermost when no vertex of another such component lies in its support.
/// Its blocks with more than one vertex and at most one cut vertex are
/// scanned by lowest vertex, keeping the first whose support holds no other
/// part of the component and which has at most one ghost vertex (a cut vertex
/// or a member of `sl_vertices`). Loops at non-cut vertices of the block are
/// included in it.
pub fn extract_extremal_block(g: &FatGraph, sl_vertices: &BTreeSet<VertexId>) -> Result<ExtremalBlock, BlockError> {
    let comps = positive_components(g);
    let multi_vertex: BTreeSet<VertexId> =
        comps.iter().filter(|(vs, _)| vs.len() > 1).flat_map(|(vs, _)| vs.iter().copied()).collect();
    for (cv, ce) in comps.iter().filter(|(vs, _)| vs.len() > 1) {
        let own: BTreeSet<VertexId> = cv.iter().copied().collect();
        let foreign_multi: BTreeSet<VertexId> = multi_vertex.difference(&own).copied().collect();
        let es: BTreeSet<EdgeId> = ce.iter().copied().collect();
        let map = regions_with_vertices(g, &es, &own);
        let innermost = support_candidates(&map).into_iter().any(|r| {
            let s = support_for(&map, r);
            s.inner_vertices.iter().all(|v| !foreign_multi.contains(v))
        });
        if !innermost {
            continue;
        }
        let (blocks, cuts) = blocks_of(g, ce);
        let mut candidates: Vec<(Vec<VertexId>, Vec<EdgeId>)> = blocks
            .into_iter()
            .map(|b| {
                let mut vs: Vec<VertexId> = b.iter().flat_map(|&e| [g.endpoints(e).0, g.endpoints(e).1]).collect();
                vs.sort_unstable();
                vs.dedup();
                (vs, b)
            })
            .filter(|(vs, _)| vs.len() > 1 && vs.iter().filter(|v| cuts.contains(v)).count() <= 1)
            .collect();
        candidates.sort();
        for (bv, mut be) in candidates {
            for &e in ce {
                let (a, b) = g.endpoints(e);
                if a == b && bv.contains(&a) && !cuts.contains(&a) {
                    be.push(e);
                }
            }
            be.sort_unstable();
            let ghosts: BTreeSet<VertexId> =
                bv.iter().copied().filter(|v| cuts.contains(v) || sl_vertices.contains(v)).collect();
            if ghosts.len() > 1 {
                continue;
            }
            let bes: BTreeSet<EdgeId> = be.iter().copied().collect();
            let bvs: BTreeSet<VertexId> = bv.iter().copied().collect();
            let bmap = regions_with_vertices(g, &bes, &bvs);
            let chosen = support_candidates(&bmap)
                .into_iter()
                .map(|r| support_for(&bmap, r))
                .filter(|s| {
                    s.inner_vertices.iter().all(|v| !multi_vertex.contains(v))
                        && s.inner_edges.iter().all(|&e| !g.is_positive(e))
                })
                .min_by_key(|s| (s.inner_vertices.len(), s.outside));
            let Some(support) = chosen else { continue };
            let ghost = ghosts.iter().next().map(|&v| {
                let reason = match (cuts.contains(&v), sl_vertices.contains(&v)) {
                    (true, true) => GhostReason::Both,
                    (true, false) => GhostReason::CutVertex,
                    _ => GhostReason::SlVertex,
                };
                (v, reason)
            });
            let on_boundary = boundary_vertices(g, &bmap, support.outside);
            let (boundary, interior): (Vec<VertexId>, Vec<VertexId>) =
                bv.iter().partition(|v| on_boundary.contains(v));
            return Ok(ExtremalBlock {
                vertices: bv,
                edges: be,
                component: cv.clone(),
                ghost,
                boundary,
                interior,
                support,
            });
        }
    }
    Err(BlockError::NoBlock)
}

/// Re-derives an extremal-block certificate: positive edges, more than one
/// vertex, no cut vertex inside the block, and a disk support whose outside is
/// the region of the recorded boundary walk, holding no other positive edge.
pub(crate) fn verify_block(g: &FatGraph, c: &Certificate) -> Result<(), String> {
    if c.edges.iter().any(|&e| !g.is_positive(e)) {
        return Err("positive".into());
    }
    let es: BTreeSet<EdgeId> = c.edges.iter().copied().collect();
    let vs: BTreeSet<VertexId> = c.edges.iter().flat_map(|&e| [g.endpoints(e).0, g.endpoints(e).1]).collect();
    if vs.len() < 2 {
        return Err("more_than_one_vertex".into());
    }
    let (blocks, cuts) = blocks_of(g, &c.edges);
    let non_loop: Vec<EdgeId> = c.edges.iter().copied().filter(|&e| !g.is_loop(e)).collect();
    if blocks.len() != 1 || !cuts.is_empty() || blocks[0] != non_loop {
        return Err("two_connected".into());
    }
    let map = regions_with_vertices(g, &es, &vs);
    let walk: Vec<Step> = c.steps();
    let Some(first) = walk.first() else { return Err("disk_support".into()) };
    let Some(outside) = map.frontier.iter().find(|f| f.walk.first() == Some(first)).map(|f| f.region) else {
        return Err("disk_support".into());
    };
    if !support_candidates(&map).contains(&outside) {
        return Err("disk_support".into());
    }
    let s = support_for(&map, outside);
    if s.boundary != walk {
        return Err("disk_support".into());
    }
    if s.inner_edges.iter().any(|&e| g.is_positive(e)) {
        return Err("support_free_of_other_positive_edges".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::verify_certificate;
    use crate::surface::fixtures::{slot, untwisted};
    use crate::surface::{Direction::*, FatGraphParts, Sign};

    /// Two bigons on the sphere sharing vertex 1.
    fn bigon_chain() -> FatGraph {
        let parts = FatGraphParts {
            rotations: vec![
                vec![slot(0, Fwd, 1), slot(1, Fwd, 2)],
                vec![slot(1, Rev, 1), slot(0, Rev, 2), slot(2, Fwd, 3), slot(3, Fwd, 4)],
                vec![slot(3, Rev, 1), slot(2, Rev, 2)],
            ],
            edges: untwisted(4, Sign::Pos),
            holes: vec![],
        };
        FatGraph::new(parts, SurfaceTag::S, 4, 1).unwrap()
    }

    #[test]
    fn cut_vertex_is_the_ghost() {
        let g = bigon_chain();
        let b = extract_extremal_block(&g, &BTreeSet::new()).unwrap();
        assert_eq!((b.vertices.clone(), b.edges.clone()), (vec![0, 1], vec![0, 1]));
        assert_eq!(b.ghost, Some((1, GhostReason::CutVertex)));
        assert_eq!(b.boundary, vec![0, 1]);
        assert!(b.support.inner_vertices.is_empty());
        let c = b.certificate(&g);
        verify_certificate(&g, &c).unwrap();
        let mut bad = c.clone();
        bad.edges.pop();
        assert!(verify_certificate(&g, &bad).is_err());
    }

    #[test]
    fn second_ghost_moves_to_other_block() {
        let g = bigon_chain();
        let b = extract_extremal_block(&g, &[0].into()).unwrap();
        assert_eq!(b.vertices, vec![1, 2]);
        assert_eq!(b.ghost, Some((1, GhostReason::CutVertex)));
        assert_eq!(extract_extremal_block(&g, &[0, 2].into()), Err(BlockError::NoBlock));
        assert_eq!(consecutive_endpoints(&g, 1, &[0, 1].into()), 2);
        assert_eq!(consecutive_endpoints(&g, 0, &[0, 1].into()), 2);
    }

    #[test]
    fn components_and_negative_edges() {
        let g = bigon_chain().with_sign(1, Sign::Neg).with_sign(3, Sign::Neg);
        let comps = components_with_disk_support(&g).unwrap();
        assert_eq!(comps.len(), 1);
        assert!(comps[0].is_innermost());
        let (blocks, cuts) = blocks_of(&g, &comps[0].edges);
        assert_eq!((blocks, cuts), (vec![vec![0], vec![2]], [1].into()));
        let (pos, back) = positive_subgraph(&g);
        assert_eq!((pos.n_edges(), back), (2, vec![0, 2]));
    }
}
