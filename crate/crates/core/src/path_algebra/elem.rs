use crate::linalg::Rational;
use serde::Serialize;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::Quiver;

/// A path in written (product) order: `edges[0]` is the leftmost factor,
/// i.e. the last edge traversed. A vertex word has no edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PathWord {
    dst: u32,
    src: u32,
    edges: Vec<u32>,
}

impl PathWord {
    pub fn vertex(v: usize) -> Self {
        PathWord { dst: v as u32, src: v as u32, edges: Vec::new() }
    }

    pub(crate) fn from_edges(dst: usize, src: usize, edges: Vec<u32>) -> Self {
        PathWord { dst: dst as u32, src: src as u32, edges }
    }

    pub fn src(&self) -> usize {
        self.src as usize
    }

    pub fn dst(&self) -> usize {
        self.dst as usize
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_vertex(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[u32] {
        &self.edges
    }

    /// `self • other`: other first, then self.
    pub fn compose(&self, other: &PathWord) -> Option<PathWord> {
        if self.src != other.dst {
            return None;
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Some(PathWord { dst: self.dst, src: other.src, edges })
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.is_vertex() {
            q.vertex_label(self.src()).to_string()
        } else {
            self.edges
                .iter()
                .map(|&e| q.edge(e as usize).label.clone())
                .collect::<Vec<_>>()
                .join("*")
        }
    }
}

impl Ord for PathWord {
    fn cmp(&self, o: &Self) -> Ordering {
        self.edges
            .len()
            .cmp(&o.edges.len())
            .then_with(|| self.edges.cmp(&o.edges))
            .then_with(|| self.dst.cmp(&o.dst))
            .then_with(|| self.src.cmp(&o.src))
    }
}
impl PartialOrd for PathWord {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Finite ℚ-combination of paths.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct AlgElem {
    terms: BTreeMap<PathWord, Rational>,
}

impl AlgElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn word(w: PathWord) -> Self {
        Self::term(w, Rational::one())
    }

    pub fn term(w: PathWord, c: Rational) -> Self {
        let mut x = Self::zero();
        x.add_term(w, c);
        x
    }

    pub fn vertex(v: usize) -> Self {
        Self::word(PathWord::vertex(v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PathWord, &Rational)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &PathWord) -> Rational {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: PathWord, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w.clone()).or_insert_with(Rational::zero);
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add_scaled(&mut self, c: &Rational, x: &AlgElem) {
        for (w, v) in &x.terms {
            self.add_term(w.clone(), c * v);
        }
    }

    pub fn scale(&self, c: &Rational) -> AlgElem {
        let mut out = AlgElem::zero();
        out.add_scaled(c, self);
        out
    }

    /// Maximum word length, 0 for the zero element.
    pub fn max_len(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    pub fn mul(&self, o: &AlgElem) -> AlgElem {
        let mut out = AlgElem::zero();
        for (x, a) in &self.terms {
            for (y, b) in &o.terms {
                if let Some(w) = x.compose(y) {
                    out.add_term(w, a * b);
                }
            }
        }
        out
    }

    /// Components by (source, target) vertex.
    pub fn blocks(&self) -> BTreeMap<(usize, usize), AlgElem> {
        let mut out: BTreeMap<(usize, usize), AlgElem> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry((w.src(), w.dst())).or_default().add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i > 0 {
                s.push_str(if neg { " - " } else { " + " });
            } else if neg {
                s.push('-');
            }
            if !a.is_one() {
                s.push_str(&format!("{a}*"));
            }
            s.push_str(&w.display(q));
        }
        s
    }

    pub fn to_json(&self, q: &Quiver) -> serde_json::Value {
        #[derive(Serialize)]
        struct T {
            coeff: String,
            word: Vec<String>,
        }
        let ts: Vec<T> = self
            .terms
            .iter()
            .map(|(w, c)| T {
                coeff: c.to_string(),
                word: if w.is_vertex() {
                    vec![q.vertex_label(w.src()).to_string()]
                } else {
                    w.edges().iter().map(|&e| q.edge(e as usize).label.clone()).collect()
                },
            })
            .collect();
        serde_json::to_value(ts).expect("serializable")
    }
}

impl FromIterator<(PathWord, Rational)> for AlgElem {
    fn from_iter<I: IntoIterator<Item = (PathWord, Rational)>>(it: I) -> Self {
        let mut x = AlgElem::zero();
        for (w, c) in it {
            x.add_term(w, c);
        }
        x
    }
}

impl Add for &AlgElem {
    type Output = AlgElem;
    fn add(self, o: &AlgElem) -> AlgElem {
        let mut x = self.clone();
        x.add_scaled(&Rational::one(), o);
        x
    }
}
impl Sub for &AlgElem {
    type Output = AlgElem;
    fn sub(self, o: &AlgElem) -> AlgElem {
        let mut x = self.clone();
        x.add_scaled(&-Rational::one(), o);
        x
    }
}
impl Mul for &AlgElem {
    type Output = AlgElem;
    fn mul(self, o: &AlgElem) -> AlgElem {
        AlgElem::mul(self, o)
    }
}
impl Neg for &AlgElem {
    type Output = AlgElem;
    fn neg(self) -> AlgElem {
        self.scale(&-Rational::one())
    }
}
impl Add for AlgElem {
    type Output = AlgElem;
    fn add(self, o: AlgElem) -> AlgElem {
        &self + &o
    }
}
impl Sub for AlgElem {
    type Output = AlgElem;
    fn sub(self, o: AlgElem) -> AlgElem {
        &self - &o
    }
}
impl Mul for AlgElem {
    type Output = AlgElem;
    fn mul(self, o: AlgElem) -> AlgElem {
        AlgElem::mul(&self, &o)
    }
}
impl Neg for AlgElem {
    type Output = AlgElem;
    fn neg(self) -> AlgElem {
        -&self
    }
}

/// Label of a relation instance: equation family and bound indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RelationLabel {
    pub family: String,
    pub indices: Vec<String>,
}

impl fmt::Display for RelationLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.family, self.indices.join(","))
    }
}

/// Ordered list of elements each meaning "= 0".
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RelationSet {
    pub relations: Vec<(RelationLabel, AlgElem)>,
}

impl RelationSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, family: &str, indices: Vec<String>, x: AlgElem) {
        self.relations.push((RelationLabel { family: family.into(), indices }, x));
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = &AlgElem> {
        self.relations.iter().map(|(_, x)| x)
    }

    pub fn extend(&mut self, o: &RelationSet) {
        self.relations.extend(o.relations.iter().cloned());
    }

    pub fn max_len(&self) -> usize {
        self.elements().map(|x| x.max_len()).max().unwrap_or(0)
    }
}
