//! Clusters of (1,2)-Scharlemann cycles and two-cornered faces in a split
//! x-face, and seemly pairs of two-cornered faces inside them.
//!
//! Good edges depend on how the cluster's 12-edges sit in the partner
//! surface: they are arcs across the annulus between partner vertices 1 and
//! 2, so all that matters is their cyclic order there and which gap between
//! consecutive arcs holds partner vertices 0 and 3.

use super::disk::DiskGraph;
use crate::detect::{is_two_cornered_sa, s12_edges, scharlemann_traced, Certificate, StructureKind};
use crate::pair::GraphPair;
use crate::surface::{regions_with_vertices, trace_faces, EdgeId, FatGraph, Tracing};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClusterError {
    #[error("the split face has no (1,2)-Scharlemann cycle")]
    NoScharlemann,
    #[error("face {face} next to a Scharlemann cycle is not two-cornered")]
    NotTwoCornered { face: usize },
    #[error("12-edge {0} is not shared by a Scharlemann cycle and a two-cornered face")]
    UnsharedEdge(EdgeId),
    #[error("a graph pair is required to place the 12-edges in the partner surface")]
    PairRequired,
    #[error("partner context does not list the cluster's 12-edges")]
    ContextMismatch,
    #[error("cluster condition failed: {0}")]
    Condition(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cluster {
    pub disk: DiskGraph,
    /// Faces of the disk graph's fat-graph view.
    pub scharlemann_faces: Vec<usize>,
    pub two_cornered_faces: Vec<usize>,
    /// Edges of the fat-graph view shared by a Scharlemann cycle and a
    /// two-cornered face.
    pub shared_edges: Vec<EdgeId>,
}

impl Cluster {
    pub fn graph(&self) -> (FatGraph, Tracing) {
        let (g, _) = self.disk.to_fat_graph();
        let t = trace_faces(&g);
        (g, t)
    }

    pub fn certificate(&self) -> Certificate {
        let (g, t) = self.graph();
        let walk = &t.faces[self.scharlemann_faces[0]].walk;
        let mut c = Certificate::new(StructureKind::Cluster, &g, walk, self.shared_edges.clone(), vec![1, 2]);
        c.check("every_12_edge_shared", true).check("connected", true).check("no_cut_vertex", true);
        c.notes = format!(
            "{} Scharlemann cycles, {} two-cornered faces",
            self.scharlemann_faces.len(),
            self.two_cornered_faces.len()
        );
        c
    }
}

fn s12_faces(g: &FatGraph, t: &Tracing) -> Vec<usize> {
    let mut out: Vec<usize> = scharlemann_traced(g, t)
        .iter()
        .filter(|c| c.labels == vec![1, 2])
        .map(|c| t.face_of(c.steps()[0]))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn other_side(t: &Tracing, e: EdgeId, f: usize) -> usize {
    let (a, b) = t.sides(e);
    if a == f {
        b
    } else {
        a
    }
}

/// Scharlemann cycles and the two-cornered faces across their edges, grown
/// through shared 12-edges from the lowest Scharlemann face. Faces joined
/// along edges have no cut vertex, so this component is the block.
pub fn build_cluster(d: &DiskGraph) -> Result<Cluster, ClusterError> {
    let (g, _) = d.to_fat_graph();
    let t = trace_faces(&g);
    let sfaces: BTreeSet<usize> = s12_faces(&g, &t).into_iter().collect();
    let first = *sfaces.iter().next().ok_or(ClusterError::NoScharlemann)?;
    let s12 = s12_edges(&g, &t);
    let is_12 = |e: EdgeId| {
        let (a, b) = g.labels(e);
        (a.min(b), a.max(b)) == (1, 2)
    };
    let mut seen_s = BTreeSet::from([first]);
    let mut seen_t = BTreeSet::new();
    let mut shared = BTreeSet::new();
    let mut queue = vec![(first, true)];
    while let Some((f, scharlemann)) = queue.pop() {
        let edges: Vec<EdgeId> = t.faces[f].edges().collect();
        for e in edges {
            if !scharlemann && !is_12(e) {
                continue;
            }
            let o = other_side(&t, e, f);
            if scharlemann {
                if !is_two_cornered_sa(&g, &t, o, &s12) {
                    return Err(ClusterError::NotTwoCornered { face: o });
                }
                shared.insert(e);
                if seen_t.insert(o) {
                    queue.push((o, false));
                }
            } else {
                if !sfaces.contains(&o) {
                    return Err(ClusterError::UnsharedEdge(e));
                }
                shared.insert(e);
                if seen_s.insert(o) {
                    queue.push((o, true));
                }
            }
        }
    }
    let synthetic: BTreeSet<EdgeId> =
        (0..d.chords.len()).filter(|&c| d.chords[c].synthetic).map(|c| d.corners.len() + c).collect();
    if let Some(&e) = shared.iter().find(|e| synthetic.contains(e)) {
        return Err(ClusterError::Condition(format!("synthetic edge {e} in the cluster")));
    }
    Ok(Cluster {
        disk: d.clone(),
        scharlemann_faces: seen_s.into_iter().collect(),
        two_cornered_faces: seen_t.into_iter().collect(),
        shared_edges: shared.into_iter().collect(),
    })
}

/// Placement of a cluster's 12-edges in the partner surface.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PartnerContext {
    /// The 12-edges in cyclic order around the annulus between partner
    /// vertices 1 and 2.
    pub order: Vec<EdgeId>,
    /// Partner vertices 0 and 3 lie between `order[gap]` and `order[gap + 1]`.
    pub gap: usize,
}

impl PartnerContext {
    fn position(&self) -> BTreeMap<EdgeId, usize> {
        self.order.iter().enumerate().map(|(i, &e)| (e, i)).collect()
    }

    /// Steps from the gap to position `p`, going forward and backward.
    fn distances(&self, p: usize) -> (usize, usize) {
        let l = self.order.len();
        ((p + l - (self.gap + 1) % l) % l, (self.gap + l - p) % l)
    }
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(m - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, m - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Placements allowed by the parallel-curves picture: each Scharlemann
/// boundary closes up through the annulus around the fat vertices into a
/// curve on a torus, and these curves are parallel. With `m` cycles of
/// common length `L`, arc `t` of cycle `i` sits at position
/// `pi(i) + m * ((q * t + phi_i) mod L)` for a permutation `pi`, a step `q`
/// prime to `L` and phases `phi_i`; every gap is allowed. Unequal lengths
/// cannot be parallel and give no placements.
pub fn partner_contexts(c: &Cluster) -> Vec<PartnerContext> {
    let (_, t) = c.graph();
    let cycles: Vec<Vec<EdgeId>> = c.scharlemann_faces.iter().map(|&f| t.faces[f].edges().collect()).collect();
    let m = cycles.len();
    let len = cycles[0].len();
    if cycles.iter().any(|cy| cy.len() != len) || len < 2 {
        return Vec::new();
    }
    let total = m * len;
    let steps: Vec<usize> = (1..len).filter(|&q| gcd(q, len) == 1).collect();
    let mut out = BTreeSet::new();
    for pi in permutations(m).into_iter().filter(|p| p[0] == 0) {
        for &q in &steps {
            let n_phases = len.pow((m - 1) as u32);
            for code in 0..n_phases {
                let mut phi = vec![0usize; m];
                let mut r = code;
                for p in phi.iter_mut().skip(1) {
                    *p = r % len;
                    r /= len;
                }
                let mut order = vec![usize::MAX; total];
                for (i, cy) in cycles.iter().enumerate() {
                    for (tt, &e) in cy.iter().enumerate() {
                        order[pi[i] + m * ((q * tt + phi[i]) % len)] = e;
                    }
                }
                for gap in 0..total {
                    out.insert(PartnerContext { order: order.clone(), gap });
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Reads the placement from an actual pair: `disk_to_partner` maps the
/// cluster's 12-edges to partner edge ids. Their cyclic order is taken at
/// partner vertex 1, and the gap is the corner at vertex 1 facing the region
/// that holds partner vertex 0.
pub fn context_from_pair(
    c: &Cluster,
    pair: Option<&GraphPair>,
    partner_index: usize,
    disk_to_partner: &BTreeMap<EdgeId, EdgeId>,
) -> Result<PartnerContext, ClusterError> {
    let pair = pair.ok_or(ClusterError::PairRequired)?;
    let gj = if partner_index == 1 { &pair.g1 } else { &pair.g2 };
    let edges: Vec<EdgeId> = c.shared_edges.clone();
    let partner: BTreeMap<EdgeId, EdgeId> = edges
        .iter()
        .map(|e| disk_to_partner.get(e).map(|&p| (p, *e)))
        .collect::<Option<_>>()
        .ok_or(ClusterError::ContextMismatch)?;
    if gj.n_vertices() < 4 {
        return Err(ClusterError::ContextMismatch);
    }
    let v1 = 0;
    let order: Vec<EdgeId> = gj
        .rotation(v1)
        .iter()
        .filter_map(|s| partner.get(&s.dart.edge()).copied())
        .collect();
    if order.len() != edges.len() {
        return Err(ClusterError::ContextMismatch);
    }
    let h: BTreeSet<EdgeId> = partner.keys().copied().collect();
    let map = regions_with_vertices(gj, &h, &[0, 1].into());
    let v0 = gj.n_vertices() - 1;
    let target = map
        .regions
        .iter()
        .position(|r| r.vertices.contains(&v0))
        .ok_or(ClusterError::ContextMismatch)?;
    for circle in map.frontier.iter().filter(|f| f.region == target) {
        for (i, s) in circle.walk.iter().enumerate() {
            let next = circle.walk[(i + 1) % circle.walk.len()];
            if gj.vertex_of(next.dart) == v1 {
                let (a, b) = (partner[&s.dart.edge()], partner[&next.dart.edge()]);
                let pa = order.iter().position(|&e| e == a).unwrap();
                let pb = order.iter().position(|&e| e == b).unwrap();
                let l = order.len();
                let gap = if (pa + 1) % l == pb { pa } else { pb };
                return Ok(PartnerContext { order, gap });
            }
        }
    }
    Err(ClusterError::ContextMismatch)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeemlyPair {
    pub sigma1: usize,
    pub sigma2: usize,
    pub e1: EdgeId,
    pub e2: EdgeId,
    /// 12-edges inside the disk between `e1` and `e2` that holds vertices 0, 3.
    pub d_g: Vec<EdgeId>,
    pub good_edges: Vec<EdgeId>,
    pub n_scharlemann: usize,
    pub n_two_cornered: usize,
    pub good_outside: usize,
    pub side_condition: bool,
    pub certificates: Vec<Certificate>,
}

/// Good edges per Scharlemann face: its arcs nearest the gap on each side.
pub fn good_edges(c: &Cluster, ctx: &PartnerContext) -> Result<BTreeMap<usize, [EdgeId; 2]>, ClusterError> {
    let (_, t) = c.graph();
    let pos = ctx.position();
    let mut out = BTreeMap::new();
    for &f in &c.scharlemann_faces {
        let arcs: Vec<(usize, EdgeId)> = t.faces[f]
            .edges()
            .map(|e| pos.get(&e).map(|&p| (p, e)))
            .collect::<Option<_>>()
            .ok_or(ClusterError::ContextMismatch)?;
        let fwd = arcs.iter().min_by_key(|(p, _)| ctx.distances(*p).0).unwrap().1;
        let back = arcs.iter().min_by_key(|(p, _)| ctx.distances(*p).1).unwrap().1;
        out.insert(f, [back, fwd]);
    }
    Ok(out)
}

/// Seemly pair of two-cornered faces in the cluster for the given placement.
pub fn find_seemly_pair(c: &Cluster, ctx: Option<&PartnerContext>) -> Result<SeemlyPair, ClusterError> {
    let ctx = ctx.ok_or(ClusterError::PairRequired)?;
    let (g, t) = c.graph();
    let pos = ctx.position();
    if pos.len() != ctx.order.len() || c.shared_edges.iter().any(|e| !pos.contains_key(e)) {
        return Err(ClusterError::ContextMismatch);
    }
    let good = good_edges(c, ctx)?;
    if good.values().any(|[a, b]| a == b) {
        return Err(ClusterError::Condition("a Scharlemann cycle has one good edge".into()));
    }
    let good_set: BTreeSet<EdgeId> = good.values().flatten().copied().collect();
    let twelve = |f: usize| -> Vec<EdgeId> { t.faces[f].edges().filter(|e| pos.contains_key(e)).collect() };

    // the forest: Scharlemann and two-cornered faces joined across good edges
    let s_of: BTreeMap<EdgeId, usize> = good.iter().flat_map(|(&f, es)| es.iter().map(move |&e| (e, f))).collect();
    let t_of = |e: EdgeId| -> usize { other_side(&t, e, s_of[&e]) };
    let nodes: Vec<usize> = c.scharlemann_faces.iter().chain(&c.two_cornered_faces).copied().collect();
    let mut parent: BTreeMap<usize, usize> = nodes.iter().map(|&f| (f, f)).collect();
    fn root(p: &mut BTreeMap<usize, usize>, mut x: usize) -> usize {
        while p[&x] != x {
            x = p[&x];
        }
        x
    }
    for &e in &good_set {
        let (a, b) = (root(&mut parent, s_of[&e]), root(&mut parent, t_of(e)));
        if a == b {
            return Err(ClusterError::Condition("dual forest has a cycle".into()));
        }
        parent.insert(a.max(b), a.min(b));
    }
    let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &f in &nodes {
        comps.entry(root(&mut parent, f)).or_default().push(f);
    }
    let tset: BTreeSet<usize> = c.two_cornered_faces.iter().copied().collect();
    let sset: BTreeSet<usize> = c.scharlemann_faces.iter().copied().collect();
    let comp = comps
        .values()
        .find(|fs| {
            fs.iter().any(|f| sset.contains(f))
                && fs.iter().filter(|f| tset.contains(f)).all(|&f| twelve(f).iter().all(|e| good_set.contains(e)))
        })
        .ok_or_else(|| ClusterError::Condition("no component with all-good two-cornered faces".into()))?;
    let comp_s: Vec<usize> = comp.iter().copied().filter(|f| sset.contains(f)).collect();
    let comp_t: Vec<usize> = comp.iter().copied().filter(|f| tset.contains(f)).collect();
    let comp_good: Vec<EdgeId> = comp_s.iter().flat_map(|f| good[f]).collect();
    let n = comp_s.len();

    // leaves: two-cornered faces with a single good edge
    let degree = |f: usize| comp_good.iter().filter(|&&e| t_of(e) == f).count();
    let dist = |e: EdgeId| {
        let (a, b) = ctx.distances(pos[&e]);
        a.min(b)
    };
    let e1 = comp_good
        .iter()
        .copied()
        .filter(|&e| degree(t_of(e)) == 1)
        .min_by_key(|&e| (dist(e), e))
        .ok_or_else(|| ClusterError::Condition("dual tree has no two-cornered leaf".into()))?;
    let sigma1 = t_of(e1);
    let sigma_g = s_of[&e1];
    let [back, fwd] = good[&sigma_g];
    let e2 = if back == e1 { fwd } else { back };
    let (pb, pf) = (pos[&back], pos[&fwd]);
    let l = ctx.order.len();
    let in_dg = |p: usize| (p + l - pb) % l <= (pf + l - pb) % l;
    let good_outside = comp_good.iter().filter(|&&e| !in_dg(pos[&e])).count();
    let d_g: Vec<EdgeId> = ctx.order.iter().copied().filter(|&e| in_dg(pos[&e])).collect();
    let forward_side = |e: EdgeId| ctx.distances(pos[&e]).0 <= ctx.distances(pos[&e]).1;

    let mut chosen = None;
    for &f in &comp_t {
        if f == sigma1 || !twelve(f).iter().all(|&e| in_dg(pos[&e])) {
            continue;
        }
        let fg: Vec<EdgeId> = twelve(f);
        let side_ok = fg.len() != 1 || forward_side(fg[0]) != forward_side(e1);
        if chosen.is_none() || (side_ok && !chosen.map(|(_, s)| s).unwrap_or(false)) {
            chosen = Some((f, side_ok));
        }
    }
    let (sigma2, side_condition) =
        chosen.ok_or_else(|| ClusterError::Condition("no second two-cornered face inside D_g".into()))?;

    let s12 = s12_edges(&g, &t);
    let certificates = [sigma1, sigma2]
        .iter()
        .map(|&f| {
            let mut cert =
                Certificate::new(StructureKind::SeemlyPair, &g, &t.faces[f].walk, t.faces[f].edges().collect(), vec![1, 2]);
            cert.check("two_cornered", is_two_cornered_sa(&g, &t, f, &s12))
                .check("twelve_edges_in_d_g", twelve(f).iter().all(|&e| in_dg(pos[&e])));
            cert.notes = format!("good edges {e1} and {e2}");
            cert
        })
        .collect();
    Ok(SeemlyPair {
        sigma1,
        sigma2,
        e1,
        e2,
        d_g,
        good_edges: comp_good,
        n_scharlemann: n,
        n_two_cornered: comp_t.len(),
        good_outside,
        side_condition,
        certificates,
    })
}

impl SeemlyPair {
    /// n Scharlemann cycles, n + 1 two-cornered faces, n - 1 of the 2n good
    /// edges outside D_g, and sigma1 has a single 12-edge.
    pub fn counting_holds(&self, c: &Cluster) -> bool {
        let (_, t) = c.graph();
        let twelve = t.faces[self.sigma1].edges().filter(|e| c.shared_edges.contains(e)).count();
        let n = self.n_scharlemann;
        self.n_two_cornered == n + 1 && self.good_edges.len() == 2 * n && self.good_outside + 1 == n && twelve == 1
    }
}

/// Re-derives a cluster certificate: the walk bounds a (1,2)-Scharlemann
/// face and every listed edge has such a face on one side and an
/// orientable-partner two-cornered face on the other.
pub(crate) fn verify_cluster(g: &FatGraph, c: &Certificate) -> Result<(), String> {
    let t = trace_faces(g);
    let walk = c.steps();
    if !crate::detect::is_face_walk(g, &t, &walk) {
        return Err("walk is not a face".into());
    }
    let sfaces: BTreeSet<usize> = s12_faces(g, &t).into_iter().collect();
    if !sfaces.contains(&t.face_of(walk[0])) {
        return Err("walk is not a (1,2)-Scharlemann face".into());
    }
    let s12 = s12_edges(g, &t);
    for &e in &c.edges {
        if e >= g.n_edges() {
            return Err(format!("unknown edge {e}"));
        }
        let (a, b) = t.sides(e);
        let ok = (sfaces.contains(&a) && is_two_cornered_sa(g, &t, b, &s12))
            || (sfaces.contains(&b) && is_two_cornered_sa(g, &t, a, &s12));
        if !ok {
            return Err(format!("every_12_edge_shared fails at edge {e}"));
        }
    }
    Ok(())
}

/// Re-derives one half of a seemly pair: the walk bounds an
/// orientable-partner two-cornered face.
pub(crate) fn verify_seemly(g: &FatGraph, c: &Certificate) -> Result<(), String> {
    let t = trace_faces(g);
    let walk = c.steps();
    if !crate::detect::is_face_walk(g, &t, &walk) {
        return Err("walk is not a face".into());
    }
    let s12 = s12_edges(g, &t);
    if !is_two_cornered_sa(g, &t, t.face_of(walk[0]), &s12) {
        return Err("two_cornered".into());
    }
    Ok(())
}
