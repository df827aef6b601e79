//! Structures a graph may not contain, given the type of its partner.

use super::family::{extremal_end, negative_family_bound, positive_family_bound, tags_from_labels, FamilyTags};
use super::{LemmaVerdict, VerdictContext, Witness};
use crate::detect::{
    find_extended_s_cycles, find_generalized_s_cycles, find_level_edges, find_scharlemann_cycles, parallel_families,
    Certificate, EdgeFamily, StructureKind,
};
use crate::pair::GraphPair;
use crate::surface::{lies_in_disk, EdgeId, FatGraph, Label, Sign, SurfaceTag, VertexId};
use std::collections::{BTreeMap, BTreeSet};

/// The partner graph together with the correspondence of edges.
#[derive(Debug, Clone)]
pub struct PartnerView<'a> {
    pub graph: &'a FatGraph,
    /// `edge_map[e]` is the partner edge of edge `e` of the graph under study.
    pub edge_map: Vec<EdgeId>,
}

impl<'a> PartnerView<'a> {
    /// View from graph `index` (1 or 2) of the pair towards the other one.
    pub fn from_pair(p: &'a GraphPair, index: u8) -> Self {
        if index == 1 {
            PartnerView { graph: &p.g2, edge_map: p.edge_map.clone() }
        } else {
            let mut inverse = vec![0; p.edge_map.len()];
            for (e1, &e2) in p.edge_map.iter().enumerate() {
                inverse[e2] = e1;
            }
            PartnerView { graph: &p.g1, edge_map: inverse }
        }
    }
}

fn label_pair(c: &Certificate) -> (Label, Label) {
    let lo = *c.labels.iter().min().unwrap_or(&0);
    let hi = *c.labels.iter().max().unwrap_or(&0);
    (lo, hi)
}

/// A Scharlemann cycle forces the partner surface to separate, so the
/// partner has an even number of vertices; against an annulus or torus its
/// edges also may not lie in a disk of the partner surface.
pub fn scharlemann_separating(g: &FatGraph, partner: SurfaceTag, view: Option<&PartnerView>) -> LemmaVerdict {
    let ctx = VerdictContext::of(g, partner);
    if !matches!(partner, SurfaceTag::S | SurfaceTag::A | SurfaceTag::T) {
        return LemmaVerdict::not_applicable("2.3", ctx, "partner surface is not orientable or closed-up orientable");
    }
    let v = LemmaVerdict::new("2.3", ctx);
    let cycles = find_scharlemann_cycles(g);
    if cycles.is_empty() {
        return v.note("no Scharlemann cycle");
    }
    if g.n_partner() % 2 == 1 {
        let n = g.n_partner();
        return v.fail(Witness::certificates(vec![cycles[0].clone()]), format!("Scharlemann cycle with odd partner count {n}"));
    }
    let mut v = v.note(format!("{} Scharlemann cycles, partner count even", cycles.len()));
    if let (Some(p), SurfaceTag::A | SurfaceTag::T) = (view, partner) {
        for c in &cycles {
            let edges: BTreeSet<EdgeId> = c.edges.iter().map(|&e| p.edge_map[e]).collect();
            let vertices: BTreeSet<VertexId> = edges
                .iter()
                .flat_map(|&e| {
                    let (a, b) = p.graph.endpoints(e);
                    [a, b]
                })
                .collect();
            match lies_in_disk(p.graph, &edges, &vertices) {
                Ok(true) => {
                    let line = format!("edges {:?} of a Scharlemann cycle lie in a disk of the partner", c.edges);
                    return v.fail(Witness::certificates(vec![c.clone()]), line);
                }
                Ok(false) => {}
                Err(e) => v = v.note(format!("partner edges {edges:?}: {e}")),
            }
        }
    }
    v
}

/// Budgets for level edges (first verdict) and Scharlemann cycles (second).
///
/// Against S, A or T there are no level edges; against P or B level edges
/// carry at most one label, against K at most two. Against P, B or K there
/// are no Scharlemann cycles; against S or A they all share one label pair.
pub fn sl_budget(g: &FatGraph, partner: SurfaceTag) -> Vec<LemmaVerdict> {
    use SurfaceTag::*;
    let ctx = VerdictContext::of(g, partner);

    let level = find_level_edges(g);
    let mut by_label: BTreeMap<Label, &Certificate> = BTreeMap::new();
    for c in &level {
        by_label.entry(c.labels[0]).or_insert(c);
    }
    let allowed = match partner {
        S | A | T => 0,
        P | B => 1,
        K => 2,
    };
    let lv = LemmaVerdict::new("2.4.1", ctx).note(format!("level labels {:?}", by_label.keys().collect::<Vec<_>>()));
    let lv = if allowed == 0 && !level.is_empty() {
        lv.fail(Witness::certificates(vec![level[0].clone()]), "level edge against a partner that allows none")
    } else if by_label.len() > allowed {
        let w: Vec<Certificate> = by_label.values().take(allowed + 1).map(|&c| c.clone()).collect();
        lv.fail(Witness::certificates(w), format!("more than {allowed} level labels"))
    } else {
        lv
    };

    let cycles = find_scharlemann_cycles(g);
    let sv = match partner {
        P | B | K => {
            let v = LemmaVerdict::new("2.4.2", ctx);
            match cycles.first() {
                Some(c) => v.fail(Witness::certificates(vec![c.clone()]), "Scharlemann cycle against a non-orientable partner"),
                None => v.note("no Scharlemann cycle"),
            }
        }
        S | A => {
            let v = LemmaVerdict::new("2.4.2", ctx);
            let first = cycles.first().map(label_pair);
            match cycles.iter().find(|c| Some(label_pair(c)) != first) {
                Some(other) => v.fail(
                    Witness::certificates(vec![cycles[0].clone(), other.clone()]),
                    format!("Scharlemann label pairs {:?} and {:?}", first.unwrap(), label_pair(other)),
                ),
                None => v.note(format!("{} Scharlemann cycles, one label pair", cycles.len())),
            }
        }
        T => LemmaVerdict::not_applicable("2.4.2", ctx, "no Scharlemann budget against a torus"),
    };
    vec![lv, sv]
}

/// Against a sphere, an S-cycle puts a projective plane into the partner's
/// filling. Informational: the verdict holds and carries the S-cycle.
pub fn projective_flag(g: &FatGraph, partner: SurfaceTag) -> LemmaVerdict {
    let ctx = VerdictContext::of(g, partner);
    if partner != SurfaceTag::S {
        return LemmaVerdict::not_applicable("2.4.3", ctx, "partner is not a sphere");
    }
    let s: Vec<Certificate> =
        find_scharlemann_cycles(g).into_iter().filter(|c| c.kind == StructureKind::SCycle).collect();
    let mut v = LemmaVerdict::new("2.4.3", ctx);
    if s.is_empty() {
        return v.note("no S-cycle");
    }
    v.witness = Some(Witness::certificates(s));
    v.note("flag: the partner filling contains a projective plane")
}

/// Extended S-cycles are excluded against S, A, T; generalized S-cycles
/// against P, B, K.
pub fn forbidden_cycles(g: &FatGraph, partner: SurfaceTag) -> LemmaVerdict {
    let ctx = VerdictContext::of(g, partner);
    let (id, found, what) = if partner.kind().orientable {
        ("2.4.4", find_extended_s_cycles(g), "extended S-cycle")
    } else {
        ("2.4.5", find_generalized_s_cycles(g), "generalized S-cycle")
    };
    let v = LemmaVerdict::new(id, ctx);
    match found.first() {
        Some(c) => v.fail(Witness::certificates(vec![c.clone()]), format!("{what} present")),
        None => v.note(format!("no {what}")),
    }
}

/// Tags of a family of `g` read off its actual labels.
pub(crate) fn graph_family_tags(g: &FatGraph, fam: &EdgeFamily) -> FamilyTags {
    tags_from_labels(g.n_partner(), &fam.labels_a(g), &fam.labels_b(g))
}

pub(crate) fn extremal_end_holds(g: &FatGraph, fam: &EdgeFamily, partner: SurfaceTag) -> bool {
    fam.cyclic || extremal_end(partner, fam.len(), &graph_family_tags(g, fam))
}

/// Positive families stay within their bound, and a family of exactly the
/// bound has an S-cycle (partner S, A) or a level edge (partner P, B) at an
/// end.
pub fn positive_family_bounds(g: &FatGraph, partner: SurfaceTag) -> LemmaVerdict {
    let ctx = VerdictContext::of(g, partner);
    let Some(bound) = positive_family_bound(partner, g.n_partner()) else {
        return LemmaVerdict::not_applicable("2.6", ctx, "partner count below the clause's threshold");
    };
    let mut v = LemmaVerdict::new("2.6", ctx).note(format!("positive bound {bound}"));
    for fam in parallel_families(g).iter().filter(|f| f.sign == Sign::Pos) {
        let witness = Witness { edges: fam.edges.clone(), ..Default::default() };
        if fam.len() > bound {
            return v.fail(witness, format!("positive family of size {} exceeds {bound}", fam.len()));
        }
        if fam.len() == bound && !extremal_end_holds(g, fam, partner) {
            return v.fail(witness, format!("family of size {bound} lacks the end structure"));
        }
        if fam.len() == bound {
            v = v.note(format!("family {:?} is extremal with the end structure", fam.edges));
        }
    }
    v
}

pub fn negative_family_bounds(g: &FatGraph, partner: SurfaceTag) -> LemmaVerdict {
    let ctx = VerdictContext::of(g, partner);
    let Some(bound) = negative_family_bound(partner, g.n_partner()) else {
        return LemmaVerdict::not_applicable("2.7", ctx, "no negative bound against a torus");
    };
    let v = LemmaVerdict::new("2.7", ctx).note(format!("negative bound {bound}"));
    for fam in parallel_families(g).iter().filter(|f| f.sign == Sign::Neg) {
        if fam.len() > bound {
            let witness = Witness { edges: fam.edges.clone(), ..Default::default() };
            return v.fail(witness, format!("negative family of size {} exceeds {bound}", fam.len()));
        }
    }
    v
}

pub fn family_bounds(g: &FatGraph, partner: SurfaceTag) -> Vec<LemmaVerdict> {
    vec![positive_family_bounds(g, partner), negative_family_bounds(g, partner)]
}

/// Against a torus with at least four vertices: either some label carries no
/// S-cycle, or two S-cycles have disjoint label pairs (the Klein-bottle
/// branch). Holds either way; the transcript names the branch.
pub fn disjoint_s_cycle_pair(g: &FatGraph, partner: SurfaceTag) -> LemmaVerdict {
    let ctx = VerdictContext::of(g, partner);
    if partner != SurfaceTag::T {
        return LemmaVerdict::not_applicable("8.1", ctx, "partner is not a torus");
    }
    if g.n_partner() < 4 {
        return LemmaVerdict::not_applicable("8.1", ctx, "fewer than four partner vertices: no Scharlemann cycle by parity");
    }
    let s: Vec<Certificate> =
        find_scharlemann_cycles(g).into_iter().filter(|c| c.kind == StructureKind::SCycle).collect();
    let labels: BTreeSet<Label> = s.iter().flat_map(|c| c.labels.iter().copied()).collect();
    let mut v = LemmaVerdict::new("8.1", ctx);
    for (i, a) in s.iter().enumerate() {
        for b in &s[i + 1..] {
            let (pa, pb) = (label_pair(a), label_pair(b));
            if pa.0 != pb.0 && pa.0 != pb.1 && pa.1 != pb.0 && pa.1 != pb.1 {
                v.witness = Some(Witness::certificates(vec![a.clone(), b.clone()]));
                return v.note(format!("S-cycles with disjoint pairs {pa:?} and {pb:?}: Klein-bottle branch"));
            }
        }
    }
    match (1..=g.n_partner()).find(|x| !labels.contains(x)) {
        Some(x) => v.note(format!("label {x} carries no S-cycle")),
        None => v.note("every label carries an S-cycle yet no two pairs are disjoint").fail(Witness::certificates(s), "pigeonhole failed"),
    }
}
