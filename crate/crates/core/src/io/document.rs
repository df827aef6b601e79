//! Line-oriented graph documents.
//!
//! ```text
//! pair delta=<int> n1=<int> n2=<int>
//! graph <1|2> type=<S|P|A|B|T|K>
//! vertex <vid> labels=<l1,l2,...>
//! edge <eid> <vid>.<slot>-<vid>.<slot> sign=<+|-> twist=<0|1>
//! hole <eid>.<fwd|rev>
//! end
//! map <eid1>=<eid2>
//! ```
//!
//! Vertex and edge ids are 0-based and must appear in order. The first
//! endpoint of an edge holds its forward dart. `#` starts a comment.

use crate::pair::{validate_labels, validate_pair, GraphPair, PairError};
use crate::surface::{Dart, Direction, EdgeData, FatGraph, FatGraphParts, Label, Sign, Slot, SurfaceError, SurfaceTag};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl From<SurfaceError> for DocumentError {
    fn from(e: SurfaceError) -> Self {
        DocumentError::Invariant(e.to_string())
    }
}

impl From<PairError> for DocumentError {
    fn from(e: PairError) -> Self {
        DocumentError::Invariant(e.to_string())
    }
}

/// A loaded document: one graph (index 1 or 2) or a validated pair.
#[derive(Debug, Clone)]
pub enum Loaded {
    Single { index: u8, graph: FatGraph },
    Pair(GraphPair),
}

impl Loaded {
    /// Graph `1` or `2` if present.
    pub fn graph(&self, index: u8) -> Option<&FatGraph> {
        match self {
            Loaded::Single { index: i, graph } => (*i == index).then_some(graph),
            Loaded::Pair(p) => match index {
                1 => Some(&p.g1),
                2 => Some(&p.g2),
                _ => None,
            },
        }
    }

    /// The first graph present.
    pub fn primary(&self) -> &FatGraph {
        match self {
            Loaded::Single { graph, .. } => graph,
            Loaded::Pair(p) => &p.g1,
        }
    }

    pub fn primary_index(&self) -> u8 {
        match self {
            Loaded::Single { index, .. } => *index,
            Loaded::Pair(_) => 1,
        }
    }

    /// Type of the partner of the primary graph, when the document has it.
    pub fn partner_type(&self) -> Option<SurfaceTag> {
        match self {
            Loaded::Single { .. } => None,
            Loaded::Pair(p) => Some(p.g2.kind().tag),
        }
    }

    pub fn pair(&self) -> Option<&GraphPair> {
        match self {
            Loaded::Pair(p) => Some(p),
            _ => None,
        }
    }
}

struct RawGraph {
    index: u8,
    tag: SurfaceTag,
    labels: Vec<Vec<Label>>,
    // (u, su, v, sv, sign, twist)
    edges: Vec<(usize, usize, usize, usize, Sign, bool)>,
    holes: Vec<Dart>,
}

fn perr(line: usize, msg: impl Into<String>) -> DocumentError {
    DocumentError::Parse { line, msg: msg.into() }
}

fn key<'a>(tok: &'a str, name: &str, line: usize) -> Result<&'a str, DocumentError> {
    tok.strip_prefix(name)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| perr(line, format!("expected {name}=..., found {tok:?}")))
}

fn num<T: std::str::FromStr>(s: &str, line: usize) -> Result<T, DocumentError> {
    s.parse().map_err(|_| perr(line, format!("bad number {s:?}")))
}

fn endpoint(s: &str, line: usize) -> Result<(usize, usize), DocumentError> {
    let (v, slot) = s.split_once('.').ok_or_else(|| perr(line, format!("bad endpoint {s:?}")))?;
    Ok((num(v, line)?, num(slot, line)?))
}

/// Parses and validates a document.
pub fn parse_graph_document(text: &str) -> Result<Loaded, DocumentError> {
    let mut header: Option<(u32, usize, usize)> = None;
    let mut graphs: Vec<RawGraph> = Vec::new();
    let mut in_graph = false;
    let mut map: Vec<(usize, usize)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        match toks[0] {
            "pair" => {
                if header.is_some() || toks.len() != 4 {
                    return Err(perr(line, "malformed or repeated pair header"));
                }
                header = Some((
                    num(key(toks[1], "delta", line)?, line)?,
                    num(key(toks[2], "n1", line)?, line)?,
                    num(key(toks[3], "n2", line)?, line)?,
                ));
            }
            "graph" => {
                if header.is_none() || in_graph || toks.len() != 3 {
                    return Err(perr(line, "graph block must follow the header and not nest"));
                }
                let index: u8 = num(toks[1], line)?;
                if !(index == 1 || index == 2) || graphs.iter().any(|g| g.index == index) {
                    return Err(perr(line, "graph index must be 1 or 2, once each"));
                }
                let tag = SurfaceTag::parse(key(toks[2], "type", line)?)
                    .ok_or_else(|| perr(line, "unknown surface type"))?;
                graphs.push(RawGraph { index, tag, labels: vec![], edges: vec![], holes: vec![] });
                in_graph = true;
            }
            "vertex" if in_graph => {
                let g = graphs.last_mut().unwrap();
                if toks.len() != 3 || num::<usize>(toks[1], line)? != g.labels.len() {
                    return Err(perr(line, "vertex ids must be listed in order"));
                }
                let ls = key(toks[2], "labels", line)?;
                let labels = if ls.is_empty() {
                    vec![]
                } else {
                    ls.split(',').map(|l| num(l, line)).collect::<Result<Vec<Label>, _>>()?
                };
                g.labels.push(labels);
            }
            "edge" if in_graph => {
                let g = graphs.last_mut().unwrap();
                if toks.len() != 5 || num::<usize>(toks[1], line)? != g.edges.len() {
                    return Err(perr(line, "edge ids must be listed in order"));
                }
                let (a, b) = toks[2].split_once('-').ok_or_else(|| perr(line, "endpoints must be u.s-v.t"))?;
                let (u, su) = endpoint(a, line)?;
                let (v, sv) = endpoint(b, line)?;
                let sign = match key(toks[3], "sign", line)? {
                    "+" => Sign::Pos,
                    "-" => Sign::Neg,
                    s => return Err(perr(line, format!("bad sign {s:?}"))),
                };
                let twist = match key(toks[4], "twist", line)? {
                    "0" => false,
                    "1" => true,
                    s => return Err(perr(line, format!("bad twist {s:?}"))),
                };
                g.edges.push((u, su, v, sv, sign, twist));
            }
            "hole" if in_graph => {
                let g = graphs.last_mut().unwrap();
                let (e, dir) = toks
                    .get(1)
                    .and_then(|t| t.split_once('.'))
                    .ok_or_else(|| perr(line, "hole must be eid.fwd or eid.rev"))?;
                let dir = match dir {
                    "fwd" => Direction::Fwd,
                    "rev" => Direction::Rev,
                    _ => return Err(perr(line, "hole direction must be fwd or rev")),
                };
                g.holes.push(Dart::new(num(e, line)?, dir));
            }
            "end" => in_graph = false,
            "map" if !in_graph => {
                let (a, b) = toks
                    .get(1)
                    .and_then(|t| t.split_once('='))
                    .ok_or_else(|| perr(line, "map must be e1=e2"))?;
                map.push((num(a, line)?, num(b, line)?));
            }
            other => return Err(perr(line, format!("unknown or misplaced directive {other:?}"))),
        }
    }
    if in_graph {
        return Err(perr(text.lines().count(), "graph block not closed with end"));
    }
    let (delta, n1, n2) = header.ok_or_else(|| perr(1, "missing pair header"))?;
    if graphs.is_empty() {
        return Err(perr(text.lines().count(), "no graph block"));
    }
    let mut built = Vec::new();
    for rg in &graphs {
        let (own, partner) = if rg.index == 1 { (n1, n2) } else { (n2, n1) };
        if rg.labels.len() != own {
            return Err(DocumentError::Invariant(format!(
                "graph {} has {} vertices, header says {own}",
                rg.index,
                rg.labels.len()
            )));
        }
        built.push((rg.index, build(rg, partner as u32, delta)?));
    }
    if built.len() == 1 {
        if !map.is_empty() {
            return Err(DocumentError::Invariant("map lines need two graphs".into()));
        }
        let (index, graph) = built.pop().unwrap();
        return Ok(Loaded::Single { index, graph });
    }
    built.sort_by_key(|(i, _)| *i);
    let g2 = built.pop().unwrap().1;
    let g1 = built.pop().unwrap().1;
    let mut edge_map = vec![usize::MAX; g1.n_edges()];
    for (a, b) in map {
        if a >= edge_map.len() || edge_map[a] != usize::MAX {
            return Err(DocumentError::Invariant(format!("map entry for edge {a} is out of range or repeated")));
        }
        edge_map[a] = b;
    }
    let pair = GraphPair { g1, g2, delta, edge_map };
    validate_pair(&pair)?;
    Ok(Loaded::Pair(pair))
}

fn build(rg: &RawGraph, n_partner: u32, delta: u32) -> Result<FatGraph, DocumentError> {
    let mut rotations: Vec<Vec<Option<Slot>>> = rg.labels.iter().map(|ls| vec![None; ls.len()]).collect();
    for (e, &(u, su, v, sv, _, _)) in rg.edges.iter().enumerate() {
        for (vtx, slot, dir) in [(u, su, Direction::Fwd), (v, sv, Direction::Rev)] {
            let cell = rotations
                .get_mut(vtx)
                .and_then(|r| r.get_mut(slot))
                .ok_or_else(|| DocumentError::Invariant(format!("edge {e}: no slot {vtx}.{slot}")))?;
            if cell.is_some() {
                return Err(DocumentError::Invariant(format!("slot {vtx}.{slot} used twice")));
            }
            *cell = Some(Slot { dart: Dart::new(e, dir), label: rg.labels[vtx][slot] });
        }
    }
    let rotations = rotations
        .into_iter()
        .enumerate()
        .map(|(v, r)| {
            r.into_iter()
                .enumerate()
                .map(|(s, x)| x.ok_or_else(|| DocumentError::Invariant(format!("slot {v}.{s} has no edge"))))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let edges = rg.edges.iter().map(|&(.., sign, twisted)| EdgeData { sign, twisted }).collect();
    let g = FatGraph::new(FatGraphParts { rotations, edges, holes: rg.holes.clone() }, rg.tag, n_partner, delta)?;
    validate_labels(&g)?;
    Ok(g)
}

fn write_graph(out: &mut String, index: u8, g: &FatGraph) {
    let _ = writeln!(out, "graph {index} type={}", g.kind().tag);
    for v in 0..g.n_vertices() {
        let ls: Vec<String> = g.rotation(v).iter().map(|s| s.label.to_string()).collect();
        let _ = writeln!(out, "vertex {v} labels={}", ls.join(","));
    }
    for e in 0..g.n_edges() {
        let (u, su) = g.end(Dart::new(e, Direction::Fwd));
        let (v, sv) = g.end(Dart::new(e, Direction::Rev));
        let d = g.edge(e);
        let _ = writeln!(
            out,
            "edge {e} {u}.{su}-{v}.{sv} sign={} twist={}",
            d.sign.symbol(),
            u8::from(d.twisted)
        );
    }
    for h in g.holes() {
        let _ = writeln!(out, "hole {h}");
    }
    out.push_str("end\n");
}

/// Canonical text of a single graph. `n_other` is the vertex count of the
/// absent partner graph, i.e. the graph's own partner count.
pub fn serialize_graph(index: u8, g: &FatGraph) -> String {
    let (n1, n2) = if index == 1 {
        (g.n_vertices(), g.n_partner() as usize)
    } else {
        (g.n_partner() as usize, g.n_vertices())
    };
    let mut out = format!("pair delta={} n1={n1} n2={n2}\n", g.delta());
    write_graph(&mut out, index, g);
    out
}

pub fn serialize_pair(p: &GraphPair) -> String {
    let mut out = format!("pair delta={} n1={} n2={}\n", p.delta, p.g1.n_vertices(), p.g2.n_vertices());
    write_graph(&mut out, 1, &p.g1);
    write_graph(&mut out, 2, &p.g2);
    for (a, b) in p.edge_map.iter().enumerate() {
        let _ = writeln!(out, "map {a}={b}");
    }
    out
}

pub fn serialize_loaded(l: &Loaded) -> String {
    match l {
        Loaded::Single { index, graph } => serialize_graph(*index, graph),
        Loaded::Pair(p) => serialize_pair(p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const LOOP_P: &str = "pair delta=1 n1=1 n2=2\ngraph 1 type=P\nvertex 0 labels=1,2\nedge 0 0.0-0.1 sign=+ twist=1\nend\n";

    #[test]
    fn round_trip() {
        let l = parse_graph_document(LOOP_P).unwrap();
        assert_eq!(serialize_loaded(&l), LOOP_P);
        assert_eq!(l.primary().kind().tag, SurfaceTag::P);
    }

    #[test]
    fn errors() {
        let bad = LOOP_P.replace("labels=1,2", "labels=1,2,3").replace("n2=2", "n2=3");
        assert!(matches!(parse_graph_document(&bad), Err(DocumentError::Invariant(_))));
        let bad = LOOP_P.replace("twist=1", "twist=2");
        assert!(matches!(parse_graph_document(&bad), Err(DocumentError::Parse { line: 4, .. })));
        let bad = LOOP_P.replace("graph 1", "grph 1");
        assert!(matches!(parse_graph_document(&bad), Err(DocumentError::Parse { line: 2, .. })));
        let bouquet = "pair delta=1 n1=1 n2=4\ngraph 1 type=T\nvertex 0 labels=1,3,2,4\n\
                       edge 0 0.0-0.2 sign=+ twist=0\nedge 1 0.1-0.3 sign=+ twist=0\nend\n";
        let err = parse_graph_document(bouquet).unwrap_err();
        assert!(err.to_string().contains("vertex 0") && err.to_string().contains("slot 1"), "{err}");
        assert!(parse_graph_document(&bouquet.replace("1,3,2,4", "1,2,3,4")).is_ok());
    }
}
