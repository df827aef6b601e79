//! Label choices inside an extremal block: finding an x-face, and the
//! 34-edge argument for the four-label exceptional block.

use super::{LemmaVerdict, VerdictContext, Witness};
use crate::blocks::ExtremalBlock;
use crate::detect::{find_x_faces, Certificate};
use crate::surface::{EdgeId, FatGraph, Label, SurfaceTag, VertexId};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
pub enum BlockLemmaError {
    #[error("every label is forbidden")]
    NoEligibleLabel,
    #[error("block does not have the expected shape: {0}")]
    ShapeMismatch(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct XFaceChoice {
    pub x: Label,
    /// `x` labels a block edge at the ghost vertex.
    pub at_ghost: bool,
    pub dropped_ghost: bool,
    /// `None` at an admissible input is a counterexample candidate.
    pub certificate: Option<Certificate>,
}

/// `(slot label, edge)` of block edges at `v`, in rotation order.
fn block_slots(g: &FatGraph, block: &ExtremalBlock, v: VertexId) -> Vec<(Label, EdgeId)> {
    let edges: BTreeSet<EdgeId> = block.edges.iter().copied().collect();
    g.rotation(v).iter().filter(|s| edges.contains(&s.dart.edge())).map(|s| (s.label, s.dart.edge())).collect()
}

/// Picks a label outside `forbidden` and looks for an x-face made of block
/// edges. Without `drop_ghost` the label is taken at the ghost vertex when
/// possible; with it the ghost is removed and a label missing there is
/// preferred.
pub fn xface_in_block(
    g: &FatGraph,
    block: &ExtremalBlock,
    forbidden: &BTreeSet<Label>,
    drop_ghost: bool,
) -> Result<XFaceChoice, BlockLemmaError> {
    let eligible: Vec<Label> = (1..=g.n_partner()).filter(|x| !forbidden.contains(x)).collect();
    if eligible.is_empty() {
        return Err(BlockLemmaError::NoEligibleLabel);
    }
    let ghost = block.ghost_vertex();
    let at_ghost: BTreeSet<Label> =
        ghost.map(|y| block_slots(g, block, y).into_iter().map(|(l, _)| l).collect()).unwrap_or_default();
    let x = if drop_ghost {
        eligible.iter().copied().find(|x| !at_ghost.contains(x)).unwrap_or(eligible[0])
    } else {
        eligible.iter().copied().find(|x| at_ghost.contains(x)).unwrap_or(eligible[0])
    };
    let edges: BTreeSet<EdgeId> = block.edges.iter().copied().collect();
    let certificate = find_x_faces(g, x).into_iter().find(|c| {
        c.edges.iter().all(|e| edges.contains(e)) && !(drop_ghost && c.walk.iter().any(|s| Some(s.vertex) == ghost))
    });
    Ok(XFaceChoice { x, at_ghost: at_ghost.contains(&x), dropped_ghost: drop_ghost, certificate })
}

/// Against four partner vertices, with the ghost meeting the block in one
/// 14-edge and one 23-edge, the block has a 34-edge. When it does not, the
/// walk from the 14-edge to the neighbouring 3-edge is replayed and a 3-face
/// made of block edges is reported as the witness.
pub fn thirty_four_edge(g: &FatGraph, block: &ExtremalBlock) -> Result<LemmaVerdict, BlockLemmaError> {
    let shape = |s: &str| BlockLemmaError::ShapeMismatch(s.to_string());
    if g.n_partner() != 4 {
        return Err(shape("partner count is not 4"));
    }
    let y0 = block.ghost_vertex().ok_or_else(|| shape("no ghost vertex"))?;
    let at_ghost = block_slots(g, block, y0);
    let pair = |e: EdgeId| {
        let (a, b) = g.labels(e);
        (a.min(b), a.max(b))
    };
    let e0 = at_ghost.iter().find(|&&(_, e)| pair(e) == (1, 4)).map(|&(_, e)| e);
    let has23 = at_ghost.iter().any(|&(_, e)| pair(e) == (2, 3));
    let (Some(e0), true, 2) = (e0, has23, at_ghost.len()) else {
        return Err(shape("ghost does not meet the block in exactly a 14-edge and a 23-edge"));
    };
    let ctx = VerdictContext::of(g, SurfaceTag::A);
    let mut v = LemmaVerdict::new("7.3", ctx);
    if block.vertices.len() == 2 {
        v = v.note("block has two vertices; the argument expects more");
    }
    if let Some(&e) = block.edges.iter().find(|&&e| pair(e) == (3, 4)) {
        return Ok(v.note(format!("edge {e} is a 34-edge")));
    }
    let (a, b) = g.endpoints(e0);
    let y1 = if a == y0 { b } else { a };
    let rot = g.rotation(y1);
    let i0 = rot.iter().position(|s| s.dart.edge() == e0 && s.label == 4);
    let e1 = i0.and_then(|i| {
        let k = rot.len();
        [rot[(i + k - 1) % k], rot[(i + 1) % k]].into_iter().find(|s| s.label == 3).map(|s| s.dart.edge())
    });
    v = v.note(format!("no 34-edge; 14-edge {e0} meets vertex {y1}"));
    if let Some(e1) = e1 {
        v = v.note(format!("3-edge {e1} sits next to it at vertex {y1}"));
    }
    let edges: BTreeSet<EdgeId> = block.edges.iter().copied().collect();
    let faces: Vec<Certificate> =
        find_x_faces(g, 3).into_iter().filter(|c| c.edges.iter().all(|e| edges.contains(e))).collect();
    let face = faces.iter().find(|c| e1.is_some_and(|e| c.edges.contains(&e))).or(faces.first());
    Ok(match face {
        Some(c) => v.fail(Witness::certificates(vec![c.clone()]), "3-face inside the block"),
        None => {
            let w = Witness { edges: [Some(e0), e1].into_iter().flatten().collect(), ..Default::default() };
            v.fail(w, "no 34-edge and no 3-face found among block edges")
        }
    })
}
