use super::{Dart, FatGraph, Label, SurfaceError, VertexId};
use serde::{Deserialize, Serialize};

/// One step of a face walk: leave the current vertex along `dart`, reading
/// the rotation forwards (`forward = true`) or backwards.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Step {
    pub dart: Dart,
    pub forward: bool,
}

impl Step {
    pub(crate) fn index(self) -> usize {
        2 * self.dart.0 + usize::from(!self.forward)
    }

    pub(crate) fn from_index(i: usize) -> Self {
        Step { dart: Dart(i / 2), forward: i.is_multiple_of(2) }
    }
}

/// The corner a face walk turns through at a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Corner {
    pub vertex: VertexId,
    /// Slot where the walk arrived.
    pub slot_in: usize,
    /// Slot where the walk leaves.
    pub slot_out: usize,
    /// `(label_in, label_out)`.
    pub label_pair: (Label, Label),
}

impl Corner {
    /// Unordered label pair, smaller first.
    pub fn pair(&self) -> (Label, Label) {
        let (a, b) = self.label_pair;
        (a.min(b), a.max(b))
    }

    /// True if this is an `{a, a+1}`-corner (indices mod n).
    pub fn is_pair(&self, a: i64, n: u32) -> bool {
        let x = super::norm_label(a, n);
        let y = super::norm_label(a + 1, n);
        let (p, q) = self.label_pair;
        (p == x && q == y) || (p == y && q == x)
    }
}

/// A traced face. `walk[i]` is followed by `corners[i]`, the turn at the
/// head of `walk[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub walk: Vec<Step>,
    pub corners: Vec<Corner>,
    /// Hole dart designating this face, if it is punctured.
    pub hole: Option<Dart>,
    /// Set when the face is the cap of an isolated vertex.
    pub isolated_vertex: Option<VertexId>,
}

impl Face {
    pub fn contains_hole(&self) -> bool {
        self.hole.is_some()
    }

    pub fn is_disk(&self) -> bool {
        self.hole.is_none()
    }

    pub fn len(&self) -> usize {
        self.walk.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walk.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.walk.iter().map(|s| s.dart.edge())
    }
}

/// Faces of a graph together with the step → face lookup.
#[derive(Debug, Clone)]
pub struct Tracing {
    pub faces: Vec<Face>,
    step_face: Vec<usize>,
}

impl Tracing {
    /// Face containing a step or its mirror image.
    pub fn face_of(&self, step: Step) -> usize {
        self.step_face[step.index()]
    }

    /// The two faces on either side of an edge (may coincide).
    pub fn sides(&self, edge: usize) -> (usize, usize) {
        let d = Dart::new(edge, super::Direction::Fwd);
        (self.face_of(Step { dart: d, forward: true }), self.face_of(Step { dart: d, forward: false }))
    }

    pub fn euler(&self, g: &FatGraph) -> i64 {
        g.n_vertices() as i64 - g.n_edges() as i64 + self.faces.len() as i64
    }
}

pub(crate) fn next_step(g: &FatGraph, s: Step) -> Step {
    let r = s.dart.reverse();
    let forward = s.forward ^ g.edge(s.dart.edge()).twisted;
    let dart = g.rotate(r, if forward { 1 } else { -1 });
    Step { dart, forward }
}

pub(crate) fn mirror_step(g: &FatGraph, s: Step) -> Step {
    let t = g.edge(s.dart.edge()).twisted;
    Step { dart: s.dart.reverse(), forward: !(s.forward ^ t) }
}

pub(crate) fn corner_after(g: &FatGraph, s: Step, next: Step) -> Corner {
    let (v, slot_in) = g.end(s.dart.reverse());
    let (_, slot_out) = g.end(next.dart);
    let rot = g.rotation(v);
    Corner { vertex: v, slot_in, slot_out, label_pair: (rot[slot_in].label, rot[slot_out].label) }
}

/// Traces every face of the embedding.
///
/// Faces are discovered by scanning forward steps in increasing dart order,
/// then backward steps; each discovered walk claims both itself and its mirror
/// image, so every edge side lies on exactly one face. Isolated vertices
/// each contribute one capping face, listed after the walked faces.
pub fn trace_faces(g: &FatGraph) -> Tracing {
    let n_steps = 2 * g.n_darts();
    let mut step_face = vec![usize::MAX; n_steps];
    let mut faces = Vec::new();
    let order = (0..g.n_darts())
        .map(|d| 2 * d)
        .chain((0..g.n_darts()).map(|d| 2 * d + 1));
    for i in order {
        if step_face[i] != usize::MAX {
            continue;
        }
        let id = faces.len();
        let start = Step::from_index(i);
        let mut walk = Vec::new();
        let mut corners = Vec::new();
        let mut s = start;
        loop {
            debug_assert_eq!(step_face[s.index()], usize::MAX);
            step_face[s.index()] = id;
            let next = next_step(g, s);
            walk.push(s);
            corners.push(corner_after(g, s, next));
            s = next;
            if s == start {
                break;
            }
        }
        for st in &walk {
            let m = mirror_step(g, *st);
            debug_assert!(step_face[m.index()] == usize::MAX || step_face[m.index()] == id);
            step_face[m.index()] = id;
        }
        faces.push(Face { walk, corners, hole: None, isolated_vertex: None });
    }
    for v in 0..g.n_vertices() {
        if g.degree(v) == 0 {
            faces.push(Face { walk: vec![], corners: vec![], hole: None, isolated_vertex: Some(v) });
        }
    }
    let mut tracing = Tracing { faces, step_face };
    for &h in g.holes() {
        let f = tracing.face_of(Step { dart: h, forward: true });
        // first hole wins; collisions are reported by classify_surface
        if tracing.faces[f].hole.is_none() {
            tracing.faces[f].hole = Some(h);
        }
    }
    tracing
}

/// Orientability by sign propagation over a spanning forest: each vertex
/// gets a local flip bit and every edge must satisfy
/// `flip(u) ^ flip(v) == twist(e)`.
pub fn orientable(g: &FatGraph) -> bool {
    let n = g.n_vertices();
    let mut flip: Vec<Option<bool>> = vec![None; n];
    for root in 0..n {
        if flip[root].is_some() {
            continue;
        }
        flip[root] = Some(false);
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            let fv = flip[v].unwrap();
            for slot in g.rotation(v) {
                let d = slot.dart;
                let w = g.vertex_of(d.reverse());
                let want = fv ^ g.edge(d.edge()).twisted;
                match flip[w] {
                    None => {
                        flip[w] = Some(want);
                        stack.push(w);
                    }
                    Some(fw) if fw != want => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}

/// Traced invariants of the surface carried by a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceSummary {
    pub orientable: bool,
    /// Euler characteristic of the surface with holes removed.
    pub euler: i64,
    pub boundary_count: usize,
    pub faces: usize,
}

/// Orientability, Euler characteristic (V − E + F − holes) and boundary
/// count of the traced surface.
pub fn classify_surface(g: &FatGraph) -> Result<SurfaceSummary, SurfaceError> {
    let tracing = trace_faces(g);
    let mut owner: Vec<Option<Dart>> = vec![None; tracing.faces.len()];
    for &h in g.holes() {
        let f = tracing.face_of(Step { dart: h, forward: true });
        if let Some(prev) = owner[f] {
            return Err(SurfaceError::HoleCollision(prev, h));
        }
        owner[f] = Some(h);
    }
    let b = g.holes().len();
    Ok(SurfaceSummary {
        orientable: orientable(g),
        euler: tracing.euler(g) - b as i64,
        boundary_count: b,
        faces: tracing.faces.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::*;
    use super::*;

    fn chi(g: &FatGraph) -> i64 {
        trace_faces(g).euler(g)
    }

    #[test]
    fn untwisted_loop_is_sphere() {
        let g = FatGraph::new(single_loop(false), SurfaceTag::S, 2, 1).unwrap();
        let t = trace_faces(&g);
        assert_eq!(t.faces.len(), 2);
        assert_eq!(chi(&g), 2);
    }

    #[test]
    fn twisted_loop_is_projective_plane() {
        let g = FatGraph::new(single_loop(true), SurfaceTag::P, 2, 1).unwrap();
        let t = trace_faces(&g);
        assert_eq!(t.faces.len(), 1);
        assert_eq!(t.faces[0].len(), 2);
        let s = classify_surface(&g).unwrap();
        assert_eq!((s.orientable, s.euler, s.boundary_count), (false, 1, 0));
    }

    #[test]
    fn theta_has_three_bigons() {
        // dart orbits by hand: (0.fwd 2.rev) (0.rev 1.fwd) (1.rev 2.fwd)
        let g = FatGraph::new(theta(), SurfaceTag::S, 3, 1).unwrap();
        let t = trace_faces(&g);
        assert_eq!(t.faces.len(), 3);
        let walks: Vec<Vec<usize>> = t.faces.iter().map(|f| f.walk.iter().map(|s| s.dart.0).collect()).collect();
        assert_eq!(walks, vec![vec![0, 5], vec![1, 2], vec![3, 4]]);
        assert_eq!(chi(&g), 2);
        let total: usize = t.faces.iter().map(|f| f.len()).sum();
        assert_eq!(total, 2 * g.n_edges());
    }

    #[test]
    fn interleaved_loops_make_a_torus() {
        let g = FatGraph::new(torus_bouquet(), SurfaceTag::T, 2, 1).unwrap();
        let s = classify_surface(&g).unwrap();
        assert_eq!(s.faces, 1);
        assert_eq!((s.orientable, s.euler, s.boundary_count), (true, 0, 0));
    }

    #[test]
    fn annulus_from_loop_with_two_holes() {
        let mut p = single_loop(false);
        p.holes = vec![Dart(0), Dart(1)];
        let g = FatGraph::new(p, SurfaceTag::A, 2, 1).unwrap();
        let s = classify_surface(&g).unwrap();
        assert_eq!((s.orientable, s.euler, s.boundary_count), (true, 0, 2));
    }

    #[test]
    fn hole_collision_and_mismatch() {
        let mut p = single_loop(true);
        p.holes = vec![Dart(0), Dart(1)];
        let err = FatGraph::new(p, SurfaceTag::A, 2, 1).unwrap_err();
        assert!(matches!(err, SurfaceError::HoleCollision(..)));
        let err = FatGraph::new(single_loop(false), SurfaceTag::T, 2, 1).unwrap_err();
        assert!(matches!(err, SurfaceError::Mismatch { .. }));
    }

    #[test]
    fn corners_in_full_graph_step_by_one() {
        let g = FatGraph::new(theta(), SurfaceTag::S, 3, 1).unwrap();
        for f in &trace_faces(&g).faces {
            for c in &f.corners {
                let (a, b) = c.label_pair;
                let d = (a as i64 - b as i64).rem_euclid(3);
                assert!(d == 1 || d == 2);
            }
        }
    }
}
