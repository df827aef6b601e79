//! Counting arguments: endpoint bounds at vertices, Euler-characteristic
//! contradictions for blocks and reduced graphs, and the family arithmetic
//! on a two-vertex torus graph.

use super::family::tags_from_labels;
use super::{LemmaVerdict, VerdictContext, Witness};
use crate::blocks::{consecutive_endpoints, ExtremalBlock};
use crate::detect::{find_x_faces, reduced_graph, sl_labels, Certificate, StructureKind};
use crate::surface::{norm_label, EdgeId, FatGraph, Label, Sign, SurfaceTag, VertexId};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

/// Slots at `v` holding a positive edge; loops count at both ends.
pub(crate) fn positive_endpoints(g: &FatGraph, v: VertexId) -> usize {
    g.rotation(v).iter().filter(|s| g.is_positive(s.dart.edge())).count()
}

fn negative_endpoints(g: &FatGraph, v: VertexId) -> usize {
    g.degree(v) - positive_endpoints(g, v)
}

/// `(delta − 1)·n_partner + χ(partner surface)`.
pub fn positive_endpoint_threshold(partner: SurfaceTag, n_partner: u32, delta: u32) -> i64 {
    (delta as i64 - 1) * n_partner as i64 + partner.kind().euler
}

/// Every vertex outside `sl_vertices` has at least the threshold of positive
/// endpoints. Applies to graphs on a sphere or projective plane.
pub fn positive_endpoint_bound(g: &FatGraph, partner: SurfaceTag, sl_vertices: &BTreeSet<VertexId>) -> LemmaVerdict {
    let ctx = VerdictContext::of(g, partner);
    if !matches!(g.kind().tag, SurfaceTag::S | SurfaceTag::P) {
        return LemmaVerdict::not_applicable("5.1", ctx, "graph is not on a sphere or projective plane");
    }
    let t = positive_endpoint_threshold(partner, g.n_partner(), g.delta());
    let mut v = LemmaVerdict::new("5.1", ctx).note(format!(
        "bound ({} - 1)*{} + {} = {t}",
        g.delta(),
        g.n_partner(),
        partner.kind().euler
    ));
    if t <= 0 {
        return v.note("bound is not positive: vacuous");
    }
    let low: Vec<VertexId> = (0..g.n_vertices())
        .filter(|x| !sl_vertices.contains(x))
        .filter(|&x| (positive_endpoints(g, x) as i64) < t)
        .collect();
    for &x in &low {
        v = v.note(format!(
            "vertex {x}: {} positive endpoints; {} negative ones force an x-face in the partner",
            positive_endpoints(g, x),
            negative_endpoints(g, x)
        ));
    }
    if low.is_empty() {
        v
    } else {
        v.fail(Witness { vertices: low, ..Default::default() }, "non-sl vertices below the bound")
    }
}

/// More than `n_partner − χ` negative endpoints at `v` give the partner more
/// positive `v`-edges than an x-face-free graph can hold.
pub fn negative_endpoints_force_x_face(g: &FatGraph, partner: SurfaceTag, v: VertexId) -> bool {
    negative_endpoints(g, v) as i64 > g.n_partner() as i64 - partner.kind().euler
}

/// A graph with `e > v − χ` edges on a closed surface of characteristic χ
/// has a disk face.
pub fn disk_face_forced(vertices: usize, edges: usize, chi: i64) -> bool {
    edges as i64 > vertices as i64 - chi
}

/// Boundary vertices of the block other than the ghost have a long run of
/// consecutive block endpoints: `n_partner + χ` against S, P, A, B when
/// `delta ≥ 2`; `2·n_partner` against T (`n_partner ≥ 3`) or K
/// (`n_partner ≥ 2`) when `delta ≥ 3`.
pub fn consecutive_block_endpoints(g: &FatGraph, block: &ExtremalBlock, partner: SurfaceTag) -> LemmaVerdict {
    use SurfaceTag::*;
    let ctx = VerdictContext::of(g, partner);
    let (n2, delta) = (g.n_partner() as i64, g.delta());
    let (id, need) = match partner {
        S | P | A | B => ("5.2.1", (delta >= 2).then(|| n2 + partner.kind().euler)),
        T => ("5.2.2", (delta >= 3 && n2 >= 3).then_some(2 * n2)),
        K => ("5.2.2", (delta >= 3 && n2 >= 2).then_some(2 * n2)),
    };
    let Some(need) = need else {
        return LemmaVerdict::not_applicable(id, ctx, "distance or partner count below the clause's threshold");
    };
    let edges: BTreeSet<EdgeId> = block.edges.iter().copied().collect();
    let mut v = LemmaVerdict::new(id, ctx).note(format!("each boundary vertex needs {need} consecutive endpoints"));
    let mut short = Vec::new();
    for &x in &block.boundary {
        if Some(x) == block.ghost_vertex() {
            v = v.note(format!("vertex {x} is the ghost: exempt"));
            continue;
        }
        let run = consecutive_endpoints(g, x, &edges) as i64;
        if run < need {
            short.push(x);
        }
        v = v.note(format!("vertex {x}: {run}"));
    }
    if short.is_empty() {
        v
    } else {
        v.fail(Witness { vertices: short, edges: block.edges.clone(), ..Default::default() }, "boundary vertices with short runs")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerTranscript {
    pub delta: u32,
    pub v_i: u64,
    pub v_b: u64,
    pub v_g: u64,
    /// Edges forced by the endpoint counts.
    pub e_low: i64,
    /// Edges allowed by Euler characteristic with no bigons.
    pub e_high: i64,
    pub infeasible: bool,
    pub in_scope: bool,
    pub lines: Vec<String>,
}

/// Compares the edges a block of `x`-edges must have with the edges a disk
/// graph without bigons can have.
pub fn block_euler_contradiction(delta: u32, v_i: u64, v_b: u64, v_g: u64) -> EulerTranscript {
    let (d, vi, vb, vg) = (delta as i64, v_i as i64, v_b as i64, v_g as i64);
    let e_low = 2 * (vb - vg) + d * vi;
    let e_high = 3 * vi + 2 * vb - 3;
    let in_scope = delta >= 3 && v_g <= 1 && v_i + v_b >= 1;
    let lines = vec![
        format!("lower: 2(v_b - v_g) + delta*v_i = 2({vb} - {vg}) + {d}*{vi} = {e_low}"),
        format!("upper: 3v_i + 2v_b - 3 = 3*{vi} + 2*{vb} - 3 = {e_high}"),
        format!("combined: (delta - 3)*v_i + 3 <= 2v_g reads {} <= {}", (d - 3) * vi + 3, 2 * vg),
    ];
    EulerTranscript { delta, v_i, v_b, v_g, e_low, e_high, infeasible: e_low > e_high, in_scope, lines }
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
#[error("reduced graph on {surface} with {vertices} vertices exceeds the catalogued form: {detail}")]
pub struct ShapeMismatch {
    pub surface: SurfaceTag,
    pub vertices: usize,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValencyTranscript {
    pub surface: SurfaceTag,
    pub vertices: usize,
    pub reduced_edges: usize,
    /// Most edges a reduced graph can have here.
    pub edge_bound: i64,
    /// `⌊2·edge_bound / vertices⌋`.
    pub valency_bound: i64,
    pub valencies: Vec<usize>,
    /// Name of the catalogued form, if any.
    pub shape: Option<String>,
    /// Family sizes in catalogue order; zero for absent families.
    pub families: Vec<usize>,
    /// An x-face of the unreduced graph found when every edge is positive on
    /// an annulus or torus with two vertices.
    pub x_face: Option<Certificate>,
    pub holds: bool,
    pub lines: Vec<String>,
}

/// Valency bound for the reduced graph of `g` and a match against the small
/// forms: on an annulus or torus with two vertices one loop per vertex plus
/// two (annulus) or four (torus) families between them; on a Möbius band or
/// Klein bottle with one vertex, two or three loop families.
///
/// The edge bound caps each boundary circle with a disk: faces are at least
/// triangles except the capped ones, which have at least one side.
pub fn reduced_valency_analysis(g: &FatGraph, partner: SurfaceTag) -> Result<ValencyTranscript, ShapeMismatch> {
    let r = reduced_graph(g);
    let kind = g.kind();
    let nv = g.n_vertices();
    let b = kind.boundary_count as i64;
    let edge_bound = 3 * (nv as i64 - kind.closed_euler()) + 2 * b;
    let valency_bound = if nv == 0 { 0 } else { 2 * edge_bound / nv as i64 };
    let valencies: Vec<usize> = (0..nv).map(|v| r.graph.degree(v)).collect();
    let mut lines = vec![
        format!("reduced edges {} against bound 3(V - chi) + 2b = {edge_bound}", r.graph.n_edges()),
        format!("average valency at most {valency_bound}"),
    ];
    let mut holds = r.graph.n_edges() as i64 <= edge_bound;

    let loops_at = |v: VertexId| -> Vec<usize> {
        (0..r.graph.n_edges()).filter(|&e| r.graph.endpoints(e) == (v, v)).collect()
    };
    // non-loop reduced edges ordered by their first slot at vertex 0
    let links: Vec<usize> = r
        .graph
        .rotation(0)
        .iter()
        .map(|s| s.dart.edge())
        .filter(|&e| !r.graph.is_loop(e))
        .fold(Vec::new(), |mut acc, e| {
            if !acc.contains(&e) {
                acc.push(e);
            }
            acc
        });
    let size = |e: usize| r.multiplicity[e];
    let mismatch = |detail: String| ShapeMismatch { surface: kind.tag, vertices: nv, detail };

    let (shape, families) = match (kind.tag, nv) {
        (SurfaceTag::A | SurfaceTag::T, 2) => {
            let max_links = if kind.tag == SurfaceTag::A { 2 } else { 4 };
            let (l0, l1) = (loops_at(0), loops_at(1));
            if l0.len() > 1 || l1.len() > 1 || links.len() > max_links {
                return Err(mismatch(format!("{} and {} loops, {} links", l0.len(), l1.len(), links.len())));
            }
            let mut fam = vec![l0.first().map_or(0, |&e| size(e))];
            fam.extend((0..max_links).map(|i| links.get(i).map_or(0, |&e| size(e))));
            fam.push(l1.first().map_or(0, |&e| size(e)));
            let name = if kind.tag == SurfaceTag::A { "annulus: loops a, d; links b, c" } else { "torus: loops p1, p6; links p2..p5" };
            (Some(name.to_string()), fam)
        }
        (SurfaceTag::B | SurfaceTag::K, 1) => {
            let max_loops = if kind.tag == SurfaceTag::B { 2 } else { 3 };
            let l = loops_at(0);
            if l.len() > max_loops {
                return Err(mismatch(format!("{} loop families", l.len())));
            }
            let mut fam: Vec<usize> = l.iter().map(|&e| size(e)).collect();
            fam.resize(max_loops, 0);
            let name = if kind.tag == SurfaceTag::B { "Möbius band: two loop families" } else { "Klein bottle: three loop families" };
            (Some(name.to_string()), fam)
        }
        _ => (None, r.multiplicity.clone()),
    };
    if let Some(s) = &shape {
        lines.push(format!("form {s}, family sizes {families:?}"));
    }

    // two vertices of one sign on an annulus or torus: every edge is positive
    // and some x-face appears
    let mut x_face = None;
    if matches!(kind.tag, SurfaceTag::A | SurfaceTag::T) && nv == 2 && (0..g.n_edges()).all(|e| g.sign(e) == Sign::Pos) {
        let sl = sl_labels(g, partner);
        let found = (1..=g.n_partner())
            .filter(|x| !sl.contains(x))
            .chain(sl.iter().copied())
            .find_map(|x| find_x_faces(g, x).into_iter().next());
        lines.push("all edges positive: the two vertices share a sign".into());
        if let Some(c) = found {
            lines.push(format!("x-face for label {}", c.labels.first().copied().unwrap_or(0)));
            x_face = Some(c);
        }
        holds = false;
    }
    Ok(ValencyTranscript {
        surface: kind.tag,
        vertices: nv,
        reduced_edges: r.graph.n_edges(),
        edge_bound,
        valency_bound,
        valencies,
        shape,
        families,
        x_face,
        holds,
        lines,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArithmeticTranscript {
    pub n1: u32,
    pub p: Vec<usize>,
    pub delta: u32,
    /// Family bounds: loop family at most `n1/2 + 1`, the others `n1 − 1`.
    pub bounds_hold: bool,
    /// `delta·n1 ≤ (n1 + 2) + 4(n1 − 1)`.
    pub delta_bound_holds: bool,
    /// `p` read with the link families swapped so the first three sum to
    /// at least `2·n1`.
    pub oriented: Vec<usize>,
    pub r: Option<u32>,
    /// Indices (0-based) in the loop family of the two edges carrying `r`.
    pub repeated: Option<(usize, usize)>,
    /// The structure the loop family's labels exhibit.
    pub structure: Option<(StructureKind, Vec<usize>)>,
    pub lines: Vec<String>,
}

impl ArithmeticTranscript {
    /// The argument closes: bounds and degree are consistent and, at
    /// `delta = 4`, the loop family holds an S-cycle or generalized S-cycle.
    pub fn closes(&self) -> bool {
        self.bounds_hold && self.delta_bound_holds && (self.delta != 4 || self.structure.is_some())
    }
}

/// Labels of the loop family at a vertex of the two-vertex torus graph.
///
/// Around the vertex the endpoint labels run `1, 2, …, n1` repeatedly; one
/// end of the loop family comes first, then two link families, then the
/// other end, whose edges meet the first end in reverse order.
pub(crate) fn loop_family_labels(n1: u32, p: &[usize]) -> (Vec<Label>, Vec<Label>) {
    let at = |pos: usize| norm_label(pos as i64, n1);
    let second = p[0] + p[1] + p[2] + 1;
    let la = (1..=p[0]).map(at).collect();
    let lb = (1..=p[0]).map(|i| at(second + p[0] - i)).collect();
    (la, lb)
}

/// The family-size argument for a two-vertex torus graph: loop family `p[0]`,
/// link families `p[1..5]`.
pub fn family_arithmetic(n1: u32, p: &[usize], delta: u32) -> ArithmeticTranscript {
    assert_eq!(p.len(), 5, "expects five family sizes");
    let n = n1 as usize;
    let mut lines = Vec::new();
    let bounds_hold = p[0] <= n / 2 + 1 && p[1..].iter().all(|&x| x < n);
    lines.push(format!("p1 = {} <= {}, others <= {}: {bounds_hold}", p[0], n / 2 + 1, n.saturating_sub(1)));
    let cap = (n + 2) + 4 * n.saturating_sub(1);
    let delta_bound_holds = delta as usize * n <= cap;
    lines.push(format!("delta*n1 = {} <= (n1 + 2) + 4(n1 - 1) = {cap}: {delta_bound_holds}", delta as usize * n));
    let degree = 2 * p[0] + p[1..].iter().sum::<usize>();
    if degree != delta as usize * n {
        lines.push(format!("endpoint count {degree} differs from delta*n1"));
    }
    let oriented = if p[0] + p[1] + p[2] >= 2 * n { p.to_vec() } else { vec![p[0], p[4], p[3], p[2], p[1]] };
    let mut t = ArithmeticTranscript {
        n1,
        p: p.to_vec(),
        delta,
        bounds_hold,
        delta_bound_holds,
        oriented: oriented.clone(),
        r: None,
        repeated: None,
        structure: None,
        lines,
    };
    if delta != 4 || !bounds_hold {
        return t;
    }
    let s = oriented[0] + oriented[1] + oriented[2] + 1;
    if s <= 2 * n || s >= 3 * n {
        t.lines.push(format!("p1 + p2 + p3 + 1 = {s} is not between 2n1 and 3n1"));
        return t;
    }
    let r = (s - 2 * n) as u32;
    t.lines.push(format!("p1 + p2 + p3 + 1 = {s} = 2*{n} + {r}"));
    t.r = Some(r);
    if r as usize + 1 > oriented[0] {
        t.lines.push(format!("r + 1 = {} exceeds p1", r + 1));
        return t;
    }
    let (la, lb) = loop_family_labels(n1, &oriented);
    let first = la.iter().position(|&l| l == r);
    let second = lb.iter().position(|&l| l == r);
    if let (Some(i), Some(j)) = (first, second) {
        t.repeated = Some((i, j));
        t.lines.push(format!("edges {} and {} of the loop family both carry label {r}", i + 1, j + 1));
    }
    let tags = tags_from_labels(n1, &la, &lb);
    t.structure = if let Some(&i) = tags.s_cycles.first() {
        Some((StructureKind::SCycle, vec![i, i + 1]))
    } else {
        tags.generalized.first().map(|&i| (StructureKind::GeneralizedSCycle, vec![i - 1, i, i + 1]))
    };
    match &t.structure {
        Some((k, es)) => t.lines.push(format!("{k:?} on loop-family edges {es:?}")),
        None => t.lines.push("no S-cycle or generalized S-cycle in the loop family".into()),
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_examples() {
        let t = block_euler_contradiction(3, 0, 3, 1);
        assert_eq!((t.e_low, t.e_high, t.infeasible), (4, 3, true));
        // at delta = 2 the count closes once v_i >= 3 - 2v_g
        let c = block_euler_contradiction(2, 1, 3, 1);
        assert!(!c.infeasible && !c.in_scope);
        assert_eq!((c.e_low, c.e_high), (6, 6));
        // with no interior vertex delta drops out and the count still fails
        assert!(block_euler_contradiction(2, 0, 3, 1).infeasible);
    }

    #[test]
    fn threshold_examples() {
        assert_eq!(positive_endpoint_threshold(SurfaceTag::S, 3, 2), 5);
        assert_eq!(positive_endpoint_threshold(SurfaceTag::T, 4, 3), 8);
        assert_eq!(positive_endpoint_threshold(SurfaceTag::A, 4, 1), 0);
    }

    #[test]
    fn arithmetic_example_finds_label_two() {
        let t = family_arithmetic(4, &[3, 3, 3, 3, 3], 4);
        assert!(t.bounds_hold && t.delta_bound_holds);
        assert_eq!(t.r, Some(2));
        assert!(t.structure.is_some());
        assert!(t.lines.iter().any(|l| l.contains("differs")));
        let over = family_arithmetic(4, &[4, 1, 1, 1, 1], 4);
        assert!(!over.bounds_hold);
    }

    #[test]
    fn smallest_torus_case() {
        let t = family_arithmetic(2, &[2, 1, 1, 1, 1], 4);
        assert_eq!(t.r, Some(1));
        assert_eq!(t.structure.as_ref().map(|s| s.0), Some(StructureKind::SCycle));
        assert!(t.closes());
    }
}
