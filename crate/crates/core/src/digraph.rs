//! Finite digraphs without loops, and their double quivers.

use crate::path_algebra::{AlgElem, PathWord, Quiver, QuiverEdge};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DigraphError {
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("empty vertex identifier")]
    EmptyVertex,
    #[error("duplicate vertex {0:?}")]
    DuplicateVertex(String),
    #[error("edge endpoint {0:?} is not a listed vertex")]
    UnknownVertex(String),
    #[error("loop at vertex {0:?}")]
    Loop(String),
    #[error("duplicate edge {0:?} -> {1:?}")]
    DuplicateEdge(String, String),
    #[error("2-cycle between {0:?} and {1:?} (set allow_two_cycles to permit)")]
    TwoCycle(String, String),
    #[error("edge {0:?} -> {1:?} exists; no distinguished vertex is defined")]
    EdgePresent(String, String),
}

impl DigraphError {
    pub fn code(&self) -> &'static str {
        match self {
            DigraphError::Schema(_) => "schema",
            DigraphError::EmptyVertex => "empty_vertex",
            DigraphError::DuplicateVertex(_) => "duplicate_vertex",
            DigraphError::UnknownVertex(_) => "unknown_vertex",
            DigraphError::Loop(_) => "loop",
            DigraphError::DuplicateEdge(..) => "duplicate_edge",
            DigraphError::TwoCycle(..) => "two_cycle",
            DigraphError::EdgePresent(..) => "edge_present",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct VertexId(pub String);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Edge {
    pub src: VertexId,
    pub dst: VertexId,
}

/// A composable pair a→b→c, by vertex index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path2 {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DigraphJson {
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
    #[serde(default)]
    allow_two_cycles: bool,
}

/// Vertices sorted lexicographically; edges sorted by (source, target) index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    vertices: Vec<VertexId>,
    edges: Vec<(usize, usize)>,
    allow_two_cycles: bool,
    vindex: HashMap<String, usize>,
    eindex: HashMap<(usize, usize), usize>,
    out_nbrs: Vec<Vec<usize>>,
    in_nbrs: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)], allow_two_cycles: bool) -> Result<Self, DigraphError> {
        let mut set = BTreeSet::new();
        for v in vertices {
            let v = v.as_ref();
            if v.is_empty() {
                return Err(DigraphError::EmptyVertex);
            }
            if !set.insert(v.to_string()) {
                return Err(DigraphError::DuplicateVertex(v.into()));
            }
        }
        let names: Vec<VertexId> = set.into_iter().map(VertexId).collect();
        let vindex: HashMap<String, usize> = names.iter().enumerate().map(|(i, v)| (v.0.clone(), i)).collect();
        let mut pairs = BTreeSet::new();
        for (s, t) in edges {
            let (s, t) = (s.as_ref(), t.as_ref());
            let si = *vindex.get(s).ok_or_else(|| DigraphError::UnknownVertex(s.into()))?;
            let ti = *vindex.get(t).ok_or_else(|| DigraphError::UnknownVertex(t.into()))?;
            if si == ti {
                return Err(DigraphError::Loop(s.into()));
            }
            if !pairs.insert((si, ti)) {
                return Err(DigraphError::DuplicateEdge(s.into(), t.into()));
            }
        }
        if !allow_two_cycles {
            for &(s, t) in &pairs {
                if s < t && pairs.contains(&(t, s)) {
                    return Err(DigraphError::TwoCycle(names[s].0.clone(), names[t].0.clone()));
                }
            }
        }
        let edges: Vec<(usize, usize)> = pairs.into_iter().collect();
        let n = names.len();
        let mut out_nbrs = vec![Vec::new(); n];
        let mut in_nbrs = vec![Vec::new(); n];
        for &(s, t) in &edges {
            out_nbrs[s].push(t);
            in_nbrs[t].push(s);
        }
        for v in in_nbrs.iter_mut() {
            v.sort();
        }
        let eindex = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        Ok(Digraph { vertices: names, edges, allow_two_cycles, vindex, eindex, out_nbrs, in_nbrs })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn name(&self, v: usize) -> &str {
        &self.vertices[v].0
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vindex.get(name).copied()
    }

    pub fn allow_two_cycles(&self) -> bool {
        self.allow_two_cycles
    }

    /// Edge by index as (source, target).
    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn edge_list(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edges(&self) -> Vec<Edge> {
        self.edges
            .iter()
            .map(|&(s, t)| Edge { src: self.vertices[s].clone(), dst: self.vertices[t].clone() })
            .collect()
    }

    pub fn edge_id(&self, s: usize, t: usize) -> Option<usize> {
        self.eindex.get(&(s, t)).copied()
    }

    pub fn has_edge(&self, s: usize, t: usize) -> bool {
        self.eindex.contains_key(&(s, t))
    }

    pub fn out_nbrs(&self, v: usize) -> &[usize] {
        &self.out_nbrs[v]
    }

    pub fn in_nbrs(&self, v: usize) -> &[usize] {
        &self.in_nbrs[v]
    }

    pub fn edge_name(&self, e: usize) -> String {
        let (s, t) = self.edges[e];
        format!("{}>{}", self.name(s), self.name(t))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vertices": self.vertices,
            "edges": self.edges.iter().map(|&(s, t)| [self.name(s), self.name(t)]).collect::<Vec<_>>(),
            "allow_two_cycles": self.allow_two_cycles,
        })
    }
}

pub fn parse_digraph(text: &str) -> Result<Digraph, DigraphError> {
    let j: DigraphJson = serde_json::from_str(text).map_err(|e| DigraphError::Schema(e.to_string()))?;
    Digraph::new(&j.vertices, &j.edges, j.allow_two_cycles)
}

pub fn paths2(d: &Digraph) -> Vec<Path2> {
    let mut out = Vec::new();
    for &(a, b) in d.edge_list() {
        for &c in d.out_nbrs(b) {
            out.push(Path2 { a, b, c });
        }
    }
    out
}

pub fn triangles(d: &Digraph) -> Vec<(usize, usize, usize)> {
    paths2(d).into_iter().filter(|p| d.has_edge(p.a, p.c)).map(|p| (p.a, p.b, p.c)).collect()
}

/// (p, q, q', r) with q < q', both p→q→r and p→q'→r present.
pub fn squares(d: &Digraph) -> Vec<(usize, usize, usize, usize)> {
    let mut out = Vec::new();
    for p in 0..d.vertex_count() {
        for r in 0..d.vertex_count() {
            let mids: Vec<usize> = d.out_nbrs(p).iter().copied().filter(|&q| d.has_edge(q, r)).collect();
            for (i, &q) in mids.iter().enumerate() {
                for &q2 in &mids[i + 1..] {
                    out.push((p, q, q2, r));
                }
            }
        }
    }
    out
}

/// Least b with a→b→c, defined only when a↛c.
pub fn distinguished_vertex(d: &Digraph, a: usize, c: usize) -> Result<Option<usize>, DigraphError> {
    if d.has_edge(a, c) {
        return Err(DigraphError::EdgePresent(d.name(a).into(), d.name(c).into()));
    }
    Ok(d.out_nbrs(a).iter().copied().find(|&b| d.has_edge(b, c)))
}

/// Edge families of the double quiver, by digraph edge and vertex indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum DoubleEdge {
    /// (a,c) → (b,d) for a→b, c→d.
    Left { ab: usize, cd: usize },
    /// (b,d) → (a,c) for a→b, c→d.
    Right { ab: usize, cd: usize },
    /// (a,q) → (b,q).
    LeftY { ab: usize, q: usize },
    /// (p,d) → (p,c).
    RightY { cd: usize, p: usize },
}

impl DoubleEdge {
    pub fn family(&self) -> &'static str {
        match self {
            DoubleEdge::Left { .. } => "GenLeft",
            DoubleEdge::Right { .. } => "GenRight",
            DoubleEdge::LeftY { .. } => "GenLeftY",
            DoubleEdge::RightY { .. } => "GenRightY",
        }
    }
}

#[derive(Debug, Clone)]
pub struct DoubleQuiver {
    pub digraph: Digraph,
    pub quiver: Quiver,
    pub families: Vec<DoubleEdge>,
    lookup: HashMap<DoubleEdge, usize>,
}

pub fn double(d: &Digraph) -> DoubleQuiver {
    let n = d.vertex_count();
    let m = d.edge_count();
    let vid = |p: usize, q: usize| p * n + q;
    let vlabels = (0..n)
        .flat_map(|p| (0..n).map(move |q| (p, q)))
        .map(|(p, q)| format!("({}|{})", d.name(p), d.name(q)))
        .collect();
    let mut families = Vec::new();
    for ab in 0..m {
        for cd in 0..m {
            families.push(DoubleEdge::Left { ab, cd });
        }
    }
    for ab in 0..m {
        for cd in 0..m {
            families.push(DoubleEdge::Right { ab, cd });
        }
    }
    for ab in 0..m {
        for q in 0..n {
            families.push(DoubleEdge::LeftY { ab, q });
        }
    }
    for cd in 0..m {
        for p in 0..n {
            families.push(DoubleEdge::RightY { cd, p });
        }
    }
    let edges = families
        .iter()
        .map(|f| {
            let (src, dst, label) = match *f {
                DoubleEdge::Left { ab, cd } => {
                    let ((a, b), (c, dd)) = (d.edge(ab), d.edge(cd));
                    (vid(a, c), vid(b, dd), format!("L[{},{}]", d.edge_name(ab), d.edge_name(cd)))
                }
                DoubleEdge::Right { ab, cd } => {
                    let ((a, b), (c, dd)) = (d.edge(ab), d.edge(cd));
                    (vid(b, dd), vid(a, c), format!("R[{},{}]", d.edge_name(ab), d.edge_name(cd)))
                }
                DoubleEdge::LeftY { ab, q } => {
                    let (a, b) = d.edge(ab);
                    (vid(a, q), vid(b, q), format!("LY[{},{}]", d.edge_name(ab), d.name(q)))
                }
                DoubleEdge::RightY { cd, p } => {
                    let (c, dd) = d.edge(cd);
                    (vid(p, dd), vid(p, c), format!("RY[{},{}]", d.edge_name(cd), d.name(p)))
                }
            };
            QuiverEdge { src, dst, label }
        })
        .collect();
    let lookup = families.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    DoubleQuiver { digraph: d.clone(), quiver: Quiver::new(vlabels, edges), families, lookup }
}

impl DoubleQuiver {
    pub fn n(&self) -> usize {
        self.digraph.vertex_count()
    }

    pub fn vid(&self, p: usize, q: usize) -> usize {
        p * self.n() + q
    }

    /// Coordinates (p, q) of a double vertex.
    pub fn coords(&self, v: usize) -> (usize, usize) {
        (v / self.n(), v % self.n())
    }

    pub fn edge_index(&self, f: DoubleEdge) -> usize {
        self.lookup[&f]
    }

    pub fn family(&self, e: usize) -> DoubleEdge {
        self.families[e]
    }

    pub fn gen(&self, f: DoubleEdge) -> AlgElem {
        AlgElem::word(self.quiver.edge_word(self.edge_index(f)))
    }

    /// The idempotent (p|q).
    pub fn pt(&self, p: usize, q: usize) -> AlgElem {
        AlgElem::word(PathWord::vertex(self.vid(p, q)))
    }

    pub fn gl(&self, ab: usize, cd: usize) -> AlgElem {
        self.gen(DoubleEdge::Left { ab, cd })
    }

    pub fn gr(&self, ab: usize, cd: usize) -> AlgElem {
        self.gen(DoubleEdge::Right { ab, cd })
    }

    pub fn gly(&self, ab: usize, q: usize) -> AlgElem {
        self.gen(DoubleEdge::LeftY { ab, q })
    }

    pub fn gry(&self, cd: usize, p: usize) -> AlgElem {
        self.gen(DoubleEdge::RightY { cd, p })
    }

    /// s(f_p) = Σ_q (p|q).
    pub fn s_img(&self, p: usize) -> AlgElem {
        (0..self.n()).fold(AlgElem::zero(), |acc, q| &acc + &self.pt(p, q))
    }

    /// t̄(f_q) = Σ_p (p|q).
    pub fn t_img(&self, q: usize) -> AlgElem {
        (0..self.n()).fold(AlgElem::zero(), |acc, p| &acc + &self.pt(p, q))
    }

    pub fn family_counts(&self) -> [usize; 4] {
        let mut c = [0; 4];
        for f in &self.families {
            let i = match f {
                DoubleEdge::Left { .. } => 0,
                DoubleEdge::Right { .. } => 1,
                DoubleEdge::LeftY { .. } => 2,
                DoubleEdge::RightY { .. } => 3,
            };
            c[i] += 1;
        }
        c
    }

    pub fn to_json(&self) -> serde_json::Value {
        let q = &self.quiver;
        serde_json::json!({
            "vertices": q.vertex_labels(),
            "edges": q.edges().iter().zip(&self.families).map(|(e, f)| serde_json::json!({
                "label": e.label,
                "family": f.family(),
                "src": q.vertex_label(e.src),
                "dst": q.vertex_label(e.dst),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Named example digraphs.
pub mod fixtures {
    use super::Digraph;

    pub fn a2() -> Digraph {
        Digraph::new(&["a", "b"], &[("a", "b")], false).unwrap()
    }

    pub fn triangle() -> Digraph {
        Digraph::new(&["p", "q", "r"], &[("p", "q"), ("q", "r"), ("p", "r")], false).unwrap()
    }

    pub fn square() -> Digraph {
        Digraph::new(&["p", "q", "q'", "r"], &[("p", "q"), ("q", "r"), ("p", "q'"), ("q'", "r")], false).unwrap()
    }

    /// Directed n-cycle on v0..v{n-1}.
    pub fn cycle(n: usize) -> Digraph {
        let vs: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let es: Vec<(String, String)> = (0..n).map(|i| (vs[i].clone(), vs[(i + 1) % n].clone())).collect();
        Digraph::new(&vs, &es, false).unwrap()
    }

    pub fn by_name(name: &str) -> Option<Digraph> {
        match name {
            "a2" => Some(a2()),
            "triangle" | "t" => Some(triangle()),
            "square" | "q" => Some(square()),
            _ => name.strip_prefix('c').and_then(|k| k.parse().ok()).filter(|&k| k >= 3).map(cycle),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn parse_and_errors() {
        let d = parse_digraph(r#"{"vertices":["a","b"],"edges":[["a","b"]]}"#).unwrap();
        assert_eq!(d, a2());
        let e = |s: &str| parse_digraph(s).unwrap_err();
        assert_eq!(e(r#"{"vertices":["a"],"edges":[["a","a"]]}"#).code(), "loop");
        assert_eq!(e(r#"{"vertices":["a","b"],"edges":[["a","b"],["b","a"]]}"#).code(), "two_cycle");
        assert_eq!(e(r#"{"vertices":["a","b"],"edges":[["a","b"],["a","b"]]}"#).code(), "duplicate_edge");
        assert_eq!(e(r#"{"vertices":["a"],"edges":[["a","z"]]}"#).code(), "unknown_vertex");
        assert_eq!(e(r#"{"vertices":["a","a"],"edges":[]}"#).code(), "duplicate_vertex");
        assert_eq!(e(r#"{"vertices":[""],"edges":[]}"#).code(), "empty_vertex");
        assert_eq!(e(r#"{"vertices":"a"}"#).code(), "schema");
        let ok = parse_digraph(r#"{"vertices":["a","b"],"edges":[["a","b"],["b","a"]],"allow_two_cycles":true}"#);
        assert_eq!(ok.unwrap().edge_count(), 2);
    }

    #[test]
    fn enumerations() {
        assert!(paths2(&a2()).is_empty());
        let t = triangle();
        assert_eq!(paths2(&t), vec![Path2 { a: 0, b: 1, c: 2 }]);
        assert_eq!(paths2(&cycle(5)).len(), 5);
        assert_eq!(triangles(&t), vec![(0, 1, 2)]);
        assert!(triangles(&cycle(5)).is_empty());
        assert!(triangles(&square()).is_empty());
        assert_eq!(squares(&square()), vec![(0, 1, 2, 3)]);
        assert!(squares(&t).is_empty());
        assert!(squares(&a2()).is_empty());
    }

    #[test]
    fn distinguished() {
        let q = square();
        assert_eq!(distinguished_vertex(&q, 0, 3).unwrap(), Some(1));
        assert_eq!(q.name(1), "q");
        let t = triangle();
        assert_eq!(distinguished_vertex(&t, 1, 0).unwrap(), None);
        assert!(distinguished_vertex(&t, 0, 2).is_err());
        let c = cycle(5);
        assert_eq!(distinguished_vertex(&c, 0, 2).unwrap(), Some(1));
    }

    #[test]
    fn double_counts() {
        let dq = double(&a2());
        assert_eq!(dq.quiver.vertex_count(), 4);
        assert_eq!(dq.family_counts(), [1, 1, 2, 2]);
        let dt = double(&triangle());
        assert_eq!((dt.quiver.vertex_count(), dt.quiver.edge_count()), (9, 36));
        let empty = Digraph::new(&["x", "y", "z"], &[], false).unwrap();
        let de = double(&empty);
        assert_eq!((de.quiver.vertex_count(), de.quiver.edge_count()), (9, 0));
    }

    #[test]
    fn left_right_bijection() {
        let dq = double(&square());
        for (i, f) in dq.families.iter().enumerate() {
            if let DoubleEdge::Left { ab, cd } = *f {
                let j = dq.edge_index(DoubleEdge::Right { ab, cd });
                let (l, r) = (dq.quiver.edge(i), dq.quiver.edge(j));
                assert_eq!((l.src, l.dst), (r.dst, r.src));
            }
        }
    }
}
