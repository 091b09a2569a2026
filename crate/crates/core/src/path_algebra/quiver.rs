use serde::Serialize;
use std::collections::BTreeMap;

use super::PathWord;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuiverEdge {
    pub src: usize,
    pub dst: usize,
    pub label: String,
}

/// A finite quiver. Multiple edges and loops are allowed at this level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertex_labels: Vec<String>,
    edges: Vec<QuiverEdge>,
    out_edges: Vec<Vec<usize>>,
    in_edges: Vec<Vec<usize>>,
}

impl Quiver {
    pub fn new(vertex_labels: Vec<String>, edges: Vec<QuiverEdge>) -> Self {
        let n = vertex_labels.len();
        let mut out_edges = vec![Vec::new(); n];
        let mut in_edges = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            assert!(e.src < n && e.dst < n, "edge endpoint out of range");
            out_edges[e.src].push(i);
            in_edges[e.dst].push(i);
        }
        Quiver { vertex_labels, edges, out_edges, in_edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_label(&self, v: usize) -> &str {
        &self.vertex_labels[v]
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertex_labels
    }

    pub fn edge(&self, e: usize) -> &QuiverEdge {
        &self.edges[e]
    }

    pub fn edges(&self) -> &[QuiverEdge] {
        &self.edges
    }

    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out_edges[v]
    }

    pub fn in_edges(&self, v: usize) -> &[usize] {
        &self.in_edges[v]
    }

    pub fn vertex_word(&self, v: usize) -> PathWord {
        PathWord::vertex(v)
    }

    pub fn edge_word(&self, e: usize) -> PathWord {
        let q = &self.edges[e];
        PathWord::from_edges(q.dst, q.src, vec![e as u32])
    }

    /// Builds a word from edges in written (product) order, checking composability.
    pub fn word(&self, edges: &[usize]) -> Option<PathWord> {
        let (&first, &last) = (edges.first()?, edges.last()?);
        for w in edges.windows(2) {
            if self.edges[w[0]].src != self.edges[w[1]].dst {
                return None;
            }
        }
        Some(PathWord::from_edges(
            self.edges[first].dst,
            self.edges[last].src,
            edges.iter().map(|&e| e as u32).collect(),
        ))
    }

    pub fn is_valid_word(&self, w: &PathWord) -> bool {
        let n = self.vertex_count();
        if w.is_vertex() {
            return w.src() < n;
        }
        let es: Vec<usize> = w.edges().iter().map(|&e| e as usize).collect();
        es.iter().all(|&e| e < self.edges.len()) && self.word(&es).as_ref() == Some(w)
    }

    /// All paths of length at most `max_len`, bucketed by (source, target).
    pub fn paths_by_endpoints(&self, max_len: usize) -> BTreeMap<(usize, usize), Vec<PathWord>> {
        let mut out: BTreeMap<(usize, usize), Vec<PathWord>> = BTreeMap::new();
        // frontier holds words in traversal order; store as written order on output
        let mut frontier: Vec<(usize, usize, Vec<u32>)> = Vec::new();
        for v in 0..self.vertex_count() {
            out.entry((v, v)).or_default().push(PathWord::vertex(v));
            frontier.push((v, v, Vec::new()));
        }
        for _ in 0..max_len {
            let mut next = Vec::new();
            for (s, t, trav) in &frontier {
                for &e in &self.out_edges[*t] {
                    let mut tr = trav.clone();
                    tr.push(e as u32);
                    let d = self.edges[e].dst;
                    let written: Vec<u32> = tr.iter().rev().copied().collect();
                    out.entry((*s, d)).or_default().push(PathWord::from_edges(d, *s, written));
                    next.push((*s, d, tr));
                }
            }
            frontier = next;
        }
        for v in out.values_mut() {
            v.sort();
        }
        out
    }

    /// Length of the longest path, or `None` when the quiver has a cycle.
    pub fn longest_path(&self) -> Option<usize> {
        let n = self.vertex_count();
        let mut indeg: Vec<usize> = (0..n).map(|v| self.in_edges[v].len()).collect();
        let mut order: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            for &e in &self.out_edges[v] {
                let d = self.edges[e].dst;
                indeg[d] -= 1;
                if indeg[d] == 0 {
                    order.push(d);
                }
            }
            i += 1;
        }
        if order.len() < n {
            return None;
        }
        let mut best = vec![0usize; n];
        for &v in &order {
            for &e in &self.out_edges[v] {
                let d = self.edges[e].dst;
                best[d] = best[d].max(best[v] + 1);
            }
        }
        Some(best.into_iter().max().unwrap_or(0))
    }
}
