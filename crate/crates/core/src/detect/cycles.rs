use super::edges::{classify_edges, parallel_families_traced};
use super::{Certificate, StructureKind};
use crate::surface::{
    norm_label, regions_with_vertices, trace_faces, Dart, Direction, EdgeId, FatGraph, Label, Step, SurfaceTag,
    Tracing, VertexId,
};
use std::collections::BTreeSet;
use thiserror::Error;

pub fn find_level_edges(g: &FatGraph) -> Vec<Certificate> {
    classify_edges(g)
        .into_iter()
        .filter(|c| c.is_level)
        .map(|c| {
            let d = Dart::new(c.edge, Direction::Fwd);
            let mut cert = Certificate::new(
                StructureKind::LevelEdge,
                g,
                &[Step { dart: d, forward: true }],
                vec![c.edge],
                vec![c.labels.0],
            );
            cert.check("positive", true).check("equal_labels", true);
            cert
        })
        .collect()
}

/// All simple cycles of positive x-edges orientable with label x at every
/// head. Each cycle is reported once, starting at its smallest vertex.
pub fn find_x_cycles(g: &FatGraph, x: Label) -> Vec<Certificate> {
    // arcs[v] = darts leaving v whose head carries label x
    let mut arcs: Vec<Vec<Dart>> = vec![Vec::new(); g.n_vertices()];
    for e in (0..g.n_edges()).filter(|&e| g.is_positive(e)) {
        for dir in [Direction::Fwd, Direction::Rev] {
            let d = Dart::new(e, dir);
            if g.label(d.reverse()) == x {
                arcs[g.vertex_of(d)].push(d);
            }
        }
    }
    let mut seen_sets = BTreeSet::new();
    let mut out = Vec::new();
    for s in 0..g.n_vertices() {
        let mut path: Vec<Dart> = Vec::new();
        let mut on_path = vec![false; g.n_vertices()];
        on_path[s] = true;
        cycle_dfs(g, &arcs, s, s, &mut path, &mut on_path, &mut |cyc: &[Dart]| {
            let mut set: Vec<EdgeId> = cyc.iter().map(|d| d.edge()).collect();
            set.sort_unstable();
            if seen_sets.insert(set) {
                let steps: Vec<Step> = cyc.iter().map(|&dart| Step { dart, forward: true }).collect();
                let mut c = Certificate::new(
                    StructureKind::XCycle,
                    g,
                    &steps,
                    cyc.iter().map(|d| d.edge()).collect(),
                    vec![x],
                );
                c.check("positive", true).check("heads_labelled_x", true).check("closed", true);
                out.push(c);
            }
        });
    }
    out
}

fn cycle_dfs(
    g: &FatGraph,
    arcs: &[Vec<Dart>],
    start: VertexId,
    v: VertexId,
    path: &mut Vec<Dart>,
    on_path: &mut [bool],
    emit: &mut dyn FnMut(&[Dart]),
) {
    for &d in &arcs[v] {
        if path.iter().any(|p| p.edge() == d.edge()) {
            continue;
        }
        let w = g.vertex_of(d.reverse());
        path.push(d);
        if w == start {
            emit(path);
        } else if w > start && !on_path[w] {
            on_path[w] = true;
            cycle_dfs(g, arcs, start, w, path, on_path, emit);
            on_path[w] = false;
        }
        path.pop();
    }
}

/// Label pair `(a, a+1)` of a face whose edges are all positive with the same
/// head label and the same tail label, these two being consecutive.
pub(crate) fn scharlemann_pair(g: &FatGraph, walk: &[Step]) -> Option<(Label, Label)> {
    let n = g.n_partner();
    if n < 2 || walk.is_empty() {
        return None;
    }
    let edges: BTreeSet<EdgeId> = walk.iter().map(|s| s.dart.edge()).collect();
    if edges.len() != walk.len() || !edges.iter().all(|&e| g.is_positive(e)) {
        return None;
    }
    let head = |s: &Step| g.label(s.dart.reverse());
    let tail = |s: &Step| g.label(s.dart);
    let (h, t) = (head(&walk[0]), tail(&walk[0]));
    if !walk.iter().all(|s| head(s) == h && tail(s) == t) {
        return None;
    }
    if n == 2 && h != t {
        Some((1, 2))
    } else if t == norm_label(h as i64 + 1, n) {
        Some((h, t))
    } else if h == norm_label(t as i64 + 1, n) {
        Some((t, h))
    } else {
        None
    }
}

pub fn find_scharlemann_cycles(g: &FatGraph) -> Vec<Certificate> {
    scharlemann_traced(g, &trace_faces(g))
}

pub(crate) fn scharlemann_traced(g: &FatGraph, t: &Tracing) -> Vec<Certificate> {
    if g.n_partner() < 2 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for f in &t.faces {
        if f.contains_hole() {
            continue;
        }
        if let Some((a, b)) = scharlemann_pair(g, &f.walk) {
            let kind = if f.len() == 2 { StructureKind::SCycle } else { StructureKind::Scharlemann };
            let mut c = Certificate::new(kind, g, &f.walk, f.edges().collect(), vec![a, b]);
            c.check("disk_face", true).check("positive", true).check("common_pair", true);
            c.notes = format!("length {}", f.len());
            out.push(c);
        }
    }
    out
}

/// Cycles immediately surrounding a Scharlemann cycle of any length.
pub fn find_extended_scharlemann_cycles(g: &FatGraph) -> Vec<Certificate> {
    if g.n_partner() < 4 {
        return Vec::new();
    }
    let t = trace_faces(g);
    let n = g.n_partner();
    let mut out = Vec::new();
    for s in scharlemann_traced(g, &t) {
        let steps = s.steps();
        if let Some(kappa) = surrounding_cycle(g, &t, &steps) {
            let (a, b) = (s.labels[0], s.labels[1]);
            let outer = (norm_label(a as i64 - 1, n), norm_label(b as i64 + 1, n));
            let labels_ok = kappa.iter().all(|&e| {
                let (p, q) = g.labels(e);
                (p, q) == outer || (q, p) == outer
            });
            if !labels_ok {
                continue;
            }
            let mut c = Certificate::new(StructureKind::ExtendedSCycle, g, &steps, kappa, vec![outer.0, a, b, outer.1]);
            c.check("inner_scharlemann", true).check("immediately_parallel", true).check("outer_pair", true);
            c.notes = format!("inner length {}", steps.len());
            out.push(c);
        }
    }
    out
}

/// Extended Scharlemann cycles around S-cycles (inner length two).
pub fn find_extended_s_cycles(g: &FatGraph) -> Vec<Certificate> {
    find_extended_scharlemann_cycles(g).into_iter().filter(|c| c.walk.len() == 2).collect()
}

/// The edges across hole-free bigons from each edge of a face walk, if they
/// are distinct positive edges off the walk.
pub(crate) fn surrounding_cycle(g: &FatGraph, t: &Tracing, walk: &[Step]) -> Option<Vec<EdgeId>> {
    let inner = t.face_of(walk[0]);
    let on_walk: BTreeSet<EdgeId> = walk.iter().map(|s| s.dart.edge()).collect();
    let mut kappa = Vec::new();
    for s in walk {
        let e = s.dart.edge();
        let (f1, f2) = t.sides(e);
        let other = if f1 == inner { f2 } else { f1 };
        if other == inner {
            return None;
        }
        let face = &t.faces[other];
        if face.contains_hole() || face.len() != 2 {
            return None;
        }
        let k = face.edges().find(|&k| k != e)?;
        if !g.is_positive(k) || on_walk.contains(&k) || kappa.contains(&k) {
            return None;
        }
        kappa.push(k);
    }
    Some(kappa)
}

/// Triples of consecutive positive parallel edges whose middle edge is level.
pub fn find_generalized_s_cycles(g: &FatGraph) -> Vec<Certificate> {
    let n = g.n_partner();
    if n < 3 {
        return Vec::new();
    }
    let t = trace_faces(g);
    let mut out = Vec::new();
    for fam in parallel_families_traced(g, &t) {
        if fam.sign != crate::surface::Sign::Pos || fam.len() < 3 {
            continue;
        }
        let m = fam.len();
        let centres: Vec<usize> = if fam.cyclic { (0..m).collect() } else { (1..m - 1).collect() };
        for i in centres {
            let (p, q) = ((i + m - 1) % m, (i + 1) % m);
            let (e1, e2, e3) = (fam.edges[p], fam.edges[i], fam.edges[q]);
            let (la, lb) = g.labels(e2);
            if la != lb {
                continue;
            }
            let k = la;
            let outer = (norm_label(k as i64 - 1, n), norm_label(k as i64 + 1, n));
            let pair_ok = [e1, e3].iter().all(|&e| {
                let (x, y) = g.labels(e);
                (x, y) == outer || (y, x) == outer
            });
            if !pair_ok {
                continue;
            }
            let steps: Vec<Step> =
                [e1, e2, e3].iter().map(|&e| Step { dart: Dart::new(e, Direction::Fwd), forward: true }).collect();
            let mut c = Certificate::new(StructureKind::GeneralizedSCycle, g, &steps, vec![e1, e2, e3], vec![k, outer.0, outer.1]);
            c.check("positive", true).check("consecutive_parallel", true).check("middle_level", true).check("outer_pair", true);
            out.push(c);
        }
    }
    out
}

/// Labels of Scharlemann cycles (orientable partner) or of level edges
/// (non-orientable partner).
pub fn sl_labels(g: &FatGraph, partner_type: SurfaceTag) -> BTreeSet<Label> {
    if partner_type.kind().orientable {
        find_scharlemann_cycles(g).iter().flat_map(|c| c.labels.iter().copied()).collect()
    } else {
        classify_edges(g).iter().filter_map(|c| c.level_label).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GreatCycleError {
    #[error("certificate is not an x-cycle of this graph")]
    NotACycle,
    #[error("the x-cycle bounds no disk on its label x+1 side")]
    NoDiskSide,
    #[error("level edge {0} inside the disk side")]
    PreconditionFailed(EdgeId),
    #[error("no Scharlemann cycle inside the disk side")]
    NotFound,
}

/// Scharlemann cycle inside the disk bounded by an x-cycle.
///
/// The disk side is the side into which the label x+1 next to the first head
/// points. Faces inside are searched in tracing order; a Scharlemann face is
/// innermost by construction.
pub fn scharlemann_from_great_x_cycle(g: &FatGraph, cycle: &Certificate) -> Result<Certificate, GreatCycleError> {
    if !matches!(cycle.kind, StructureKind::XCycle | StructureKind::GreatXCycle) || cycle.walk.is_empty() {
        return Err(GreatCycleError::NotACycle);
    }
    if super::verify_certificate(g, cycle).is_err() {
        return Err(GreatCycleError::NotACycle);
    }
    let t = trace_faces(g);
    let edges: BTreeSet<EdgeId> = cycle.edges.iter().copied().collect();
    let map = regions_with_vertices(g, &edges, &BTreeSet::new());
    let x = cycle.labels[0];
    let d = cycle.walk[0].dart;
    let r = d.reverse();
    let (v, slot) = g.end(r);
    let deg = g.degree(v);
    let up = g.norm_label(x as i64 + 1);
    let twisted = g.edge(d.edge()).twisted;
    // corner (r, r+1) lies on the face of step (d, !twist); (r-1, r) on (d, twist)
    let forward = if g.rotation(v)[(slot + 1) % deg].label == up { !twisted } else { twisted };
    let region = &map.regions[map.face_region[t.face_of(Step { dart: d, forward })]];
    if !region.is_disk() {
        return Err(GreatCycleError::NoDiskSide);
    }
    if let Some(&e) = region.edges.iter().find(|&&e| {
        let (a, b) = g.labels(e);
        g.is_positive(e) && a == b
    }) {
        return Err(GreatCycleError::PreconditionFailed(e));
    }
    for &fi in &region.faces {
        let f = &t.faces[fi];
        if f.contains_hole() {
            continue;
        }
        if let Some((a, b)) = scharlemann_pair(g, &f.walk) {
            let kind = if f.len() == 2 { StructureKind::SCycle } else { StructureKind::Scharlemann };
            let mut c = Certificate::new(kind, g, &f.walk, f.edges().collect(), vec![a, b]);
            c.check("disk_face", true).check("positive", true).check("common_pair", true);
            c.notes = format!("inside {}-cycle on edges {:?}", x, cycle.edges);
            return Ok(c);
        }
    }
    Err(GreatCycleError::NotFound)
}
