//! Bounded-degree membership in two-sided ideals of a path algebra.
//!
//! Every relation splits into (source, target) blocks, and u•r•v stays inside
//! one block, so the span at degree N is computed block by block and only for
//! blocks that are actually queried.

use super::{AlgElem, PathWord, Quiver, Tensor2, Tensor3};
use crate::linalg::{EchelonBasis, QMatrix, QVector, Rational};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

pub type PathIndex = BTreeMap<(usize, usize), Vec<PathWord>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Certificate {
    Zero,
    Unknown,
}

/// One summand c·u•r•v of a membership certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertTerm {
    pub coeff: Rational,
    pub left: PathWord,
    pub relation: usize,
    pub right: PathWord,
}

#[derive(Debug, Clone)]
struct Piece {
    elem: AlgElem,
    src: usize,
    dst: usize,
    len: usize,
    origin: usize,
}

struct Block {
    col: HashMap<PathWord, usize>,
    words: Vec<PathWord>,
    basis: EchelonBasis,
}

pub struct IdealOracle {
    degree: usize,
    pieces: Vec<Piece>,
    paths: Arc<PathIndex>,
    blocks: Mutex<HashMap<(usize, usize), Arc<Block>>>,
    nf_cache: Mutex<HashMap<PathWord, AlgElem>>,
    complete: bool,
}

fn split(rels: &[AlgElem]) -> Vec<Piece> {
    let mut out = Vec::new();
    for (origin, r) in rels.iter().enumerate() {
        for ((src, dst), elem) in r.blocks() {
            let len = elem.max_len();
            out.push(Piece { elem, src, dst, len, origin });
        }
    }
    out
}

fn bucket<'a>(paths: &'a PathIndex, src: usize, dst: usize, max_len: usize) -> impl Iterator<Item = &'a PathWord> {
    paths
        .get(&(src, dst))
        .map(|v| v.as_slice())
        .unwrap_or(&[])
        .iter()
        .take_while(move |w| w.len() <= max_len)
}

impl IdealOracle {
    pub fn new(quiver: &Quiver, rels: &[AlgElem], degree: usize) -> Self {
        let paths = Arc::new(quiver.paths_by_endpoints(degree));
        Self::with_paths(quiver, rels, degree, paths)
    }

    fn with_paths(quiver: &Quiver, rels: &[AlgElem], degree: usize, paths: Arc<PathIndex>) -> Self {
        let complete = quiver.longest_path().is_some_and(|l| l <= degree);
        IdealOracle {
            degree,
            pieces: split(rels),
            paths,
            blocks: Mutex::new(HashMap::new()),
            nf_cache: Mutex::new(HashMap::new()),
            complete,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// True when no path is longer than the degree, so the span is the whole
    /// ideal and a failed reduction is a definite non-membership.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Generating triples (u, piece index, v) for a block, shortest first.
    fn triples(&self, src: usize, dst: usize) -> Vec<(PathWord, usize, PathWord)> {
        let mut out = Vec::new();
        for (i, p) in self.pieces.iter().enumerate() {
            if p.len > self.degree {
                continue;
            }
            let room = self.degree - p.len;
            for u in bucket(&self.paths, p.dst, dst, room) {
                for v in bucket(&self.paths, src, p.src, room - u.len()) {
                    out.push((u.clone(), i, v.clone()));
                }
            }
        }
        out.sort_by_key(|(u, _, v)| u.len() + v.len());
        out
    }

    fn row(&self, block: &Block, u: &PathWord, piece: usize, v: &PathWord) -> QVector {
        let mut row = QVector::new();
        for (w, c) in self.pieces[piece].elem.terms() {
            let full = u.compose(w).and_then(|x| x.compose(v)).expect("composable by construction");
            crate::linalg::axpy(&mut row, c, &QVector::from([(block.col[&full], Rational::one())]));
        }
        row
    }

    fn block(&self, src: usize, dst: usize) -> Arc<Block> {
        if let Some(b) = self.blocks.lock().unwrap().get(&(src, dst)) {
            return b.clone();
        }
        let words: Vec<PathWord> = bucket(&self.paths, src, dst, self.degree).cloned().collect();
        let col = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let mut block = Block { col, words, basis: EchelonBasis::new() };
        let total = block.words.len();
        for (u, i, v) in self.triples(src, dst) {
            if block.basis.rank() == total {
                break;
            }
            let r = self.row(&block, &u, i, &v);
            block.basis.insert(r);
        }
        let b = Arc::new(block);
        self.blocks.lock().unwrap().insert((src, dst), b.clone());
        b
    }

    /// Normal form of one word: its remainder modulo the degree-N span.
    /// Words longer than N are returned unchanged.
    pub fn nf_word(&self, w: &PathWord) -> AlgElem {
        if w.len() > self.degree {
            return AlgElem::word(w.clone());
        }
        if let Some(x) = self.nf_cache.lock().unwrap().get(w) {
            return x.clone();
        }
        let b = self.block(w.src(), w.dst());
        let v = QVector::from([(b.col[w], Rational::one())]);
        let r = b.basis.reduce(v);
        let x: AlgElem = r.into_iter().map(|(k, c)| (b.words[k].clone(), c)).collect();
        self.nf_cache.lock().unwrap().insert(w.clone(), x.clone());
        x
    }

    pub fn nf(&self, x: &AlgElem) -> AlgElem {
        let mut out = AlgElem::zero();
        for (w, c) in x.terms() {
            out.add_scaled(c, &self.nf_word(w));
        }
        out
    }

    pub fn reduces_to_zero(&self, x: &AlgElem) -> Certificate {
        if self.nf(x).is_zero() {
            Certificate::Zero
        } else {
            Certificate::Unknown
        }
    }

    /// Zero test in H⊗H modulo I⊗H + H⊗I.
    pub fn tensor_reduces(&self, t: &Tensor2) -> bool {
        t.map2(|w| self.nf_word(w), |w| self.nf_word(w)).is_zero()
    }

    pub fn tensor3_reduces(&self, t: &Tensor3) -> bool {
        let mut acc: BTreeMap<(PathWord, PathWord, PathWord), Rational> = BTreeMap::new();
        for ((a, b, c), v) in t.terms() {
            let (x, y, z) = (self.nf_word(a), self.nf_word(b), self.nf_word(c));
            for (p, e) in x.terms() {
                for (q, f) in y.terms() {
                    for (r, g) in z.terms() {
                        let k = (p.clone(), q.clone(), r.clone());
                        let s = acc.entry(k.clone()).or_insert_with(Rational::zero);
                        *s += &(&(&(v * e) * f) * g);
                        if s.is_zero() {
                            acc.remove(&k);
                        }
                    }
                }
            }
        }
        acc.is_empty()
    }

    /// Explicit combination Σ c·u•r•v = x over the original relations, if x
    /// lies in the degree-N span.
    pub fn certificate(&self, x: &AlgElem) -> Option<Vec<CertTerm>> {
        if x.max_len() > self.degree {
            return None;
        }
        let mut out = Vec::new();
        for ((src, dst), part) in x.blocks() {
            let words: Vec<PathWord> = bucket(&self.paths, src, dst, self.degree).cloned().collect();
            let col: HashMap<PathWord, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
            let block = Block { col, words, basis: EchelonBasis::new() };
            let triples = self.triples(src, dst);
            let mut eb = EchelonBasis::with_tracking();
            for (k, (u, i, v)) in triples.iter().enumerate() {
                eb.insert_tagged(self.row(&block, u, *i, v), k);
            }
            let target: QVector = part.terms().map(|(w, c)| (block.col[w], c.clone())).collect();
            let coeffs = eb.express(&target)?;
            for (k, c) in coeffs {
                let (u, i, v) = &triples[k];
                out.push(CertTerm { coeff: c, left: u.clone(), relation: self.pieces[*i].origin, right: v.clone() });
            }
        }
        Some(out)
    }

    /// The degree-N span as an explicit matrix over the given column words.
    pub fn span_matrix(&self, columns: &[PathWord]) -> QMatrix {
        let index: HashMap<&PathWord, usize> = columns.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut m = QMatrix::zeros(0, columns.len());
        let mut keys: Vec<(usize, usize)> = columns.iter().map(|w| (w.src(), w.dst())).collect();
        keys.sort();
        keys.dedup();
        for (src, dst) in keys {
            for (u, i, v) in self.triples(src, dst) {
                let mut row = QVector::new();
                let mut inside = true;
                for (w, c) in self.pieces[i].elem.terms() {
                    let full = u.compose(w).and_then(|x| x.compose(&v)).expect("composable");
                    match index.get(&full) {
                        Some(&k) => crate::linalg::axpy(&mut row, c, &QVector::from([(k, Rational::one())])),
                        None => inside = false,
                    }
                }
                if inside {
                    m.push_row(row).expect("in range");
                }
            }
        }
        m
    }
}

/// Oracles for every degree up to a maximum, sharing one path index.
pub struct IdealFamily {
    quiver: Quiver,
    rels: Vec<AlgElem>,
    paths: Arc<PathIndex>,
    oracles: Vec<OnceLock<IdealOracle>>,
}

impl IdealFamily {
    pub fn new(quiver: &Quiver, rels: Vec<AlgElem>, max_degree: usize) -> Self {
        IdealFamily {
            quiver: quiver.clone(),
            rels,
            paths: Arc::new(quiver.paths_by_endpoints(max_degree)),
            oracles: (0..=max_degree).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn max_degree(&self) -> usize {
        self.oracles.len() - 1
    }

    pub fn at(&self, n: usize) -> &IdealOracle {
        self.oracles[n].get_or_init(|| IdealOracle::with_paths(&self.quiver, &self.rels, n, self.paths.clone()))
    }

    pub fn relations(&self) -> &[AlgElem] {
        &self.rels
    }

    /// Smallest degree in `start..=max` at which `pred` holds, trying the
    /// maximum first.
    pub fn minimal(&self, start: usize, pred: impl Fn(&IdealOracle) -> bool) -> Option<usize> {
        let max = self.max_degree();
        if start > max || !pred(self.at(max)) {
            return None;
        }
        (start..=max).find(|&n| pred(self.at(n)))
    }
}

pub fn ideal_span(quiver: &Quiver, rels: &[AlgElem], n: usize) -> (Vec<PathWord>, QMatrix) {
    let cols: Vec<PathWord> = quiver.paths_by_endpoints(n).into_values().flatten().collect();
    let oracle = IdealOracle::new(quiver, rels, n);
    let m = oracle.span_matrix(&cols);
    (cols, m)
}

pub fn reduces_to_zero(quiver: &Quiver, x: &AlgElem, rels: &[AlgElem], n: usize) -> Certificate {
    if x.is_zero() {
        return Certificate::Zero;
    }
    IdealOracle::new(quiver, rels, n).reduces_to_zero(x)
}
