//! The fundamental groupoid Π_D: the free groupoid on the edges of a digraph
//! modulo one relator per triangle and per square.
//!
//! Words are stored in traversal order. A +1 letter crosses its edge from
//! source to target, a −1 letter backwards. In printed form the letter for
//! the edge s→t is `(t<s)`, its inverse `(t<s)^-1`, the empty word at v is
//! `(v)`, and `.` composes with the right factor applied first, so the path
//! p→q→r prints as `(r<q).(q<p)`.

use crate::digraph::{squares, triangles, Digraph};
use crate::hopf::{FiniteGroupoid, GroupoidArrow};
use crate::linalg::{rank, smith_normal_form, QMatrix, Rational};
use num_bigint::BigInt;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap, VecDeque};
use thiserror::Error;

pub type Letter = (usize, i8);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("cannot parse word: {0}")]
    Parse(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("no edge {0}")]
    UnknownEdge(String),
    #[error("letters do not compose at {0}")]
    NotComposable(String),
    #[error("words have different endpoints")]
    EndpointMismatch,
    #[error("relator is not a closed word")]
    OpenRelator,
    #[error("certificate step {0} does not apply")]
    BadStep(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupoidWord {
    pub start: usize,
    pub letters: Vec<Letter>,
}

fn letter_ends(d: &Digraph, (e, s): Letter) -> (usize, usize) {
    let (a, b) = d.edge(e);
    if s > 0 {
        (a, b)
    } else {
        (b, a)
    }
}

fn inverse_letters(ls: &[Letter]) -> Vec<Letter> {
    ls.iter().rev().map(|&(e, s)| (e, -s)).collect()
}

fn reduce_letters(ls: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(ls.len());
    for &l in ls {
        match out.last() {
            Some(&(e, s)) if e == l.0 && s == -l.1 => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    out
}

impl GroupoidWord {
    pub fn identity(v: usize) -> Self {
        GroupoidWord { start: v, letters: vec![] }
    }

    pub fn new(d: &Digraph, start: usize, letters: Vec<Letter>) -> Result<Self, WordError> {
        let w = GroupoidWord { start, letters };
        w.check(d)?;
        Ok(w)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn check(&self, d: &Digraph) -> Result<(), WordError> {
        let mut v = self.start;
        for &l in &self.letters {
            let (a, b) = letter_ends(d, l);
            if a != v {
                return Err(WordError::NotComposable(d.name(v).into()));
            }
            v = b;
        }
        Ok(())
    }

    /// Vertex reached after the first `i` letters.
    pub fn vertex_at(&self, d: &Digraph, i: usize) -> usize {
        self.letters[..i].iter().fold(self.start, |_, &l| letter_ends(d, l).1)
    }

    pub fn end(&self, d: &Digraph) -> usize {
        self.vertex_at(d, self.letters.len())
    }

    pub fn inverse(&self, d: &Digraph) -> GroupoidWord {
        GroupoidWord { start: self.end(d), letters: inverse_letters(&self.letters) }
    }

    /// Traverse self, then `o`.
    pub fn then(&self, d: &Digraph, o: &GroupoidWord) -> Result<GroupoidWord, WordError> {
        if self.end(d) != o.start {
            return Err(WordError::NotComposable(d.name(o.start).into()));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&o.letters);
        Ok(GroupoidWord { start: self.start, letters })
    }

    pub fn display(&self, d: &Digraph) -> String {
        if self.letters.is_empty() {
            return format!("({})", d.name(self.start));
        }
        self.letters
            .iter()
            .rev()
            .map(|&(e, s)| {
                let (a, b) = d.edge(e);
                let base = format!("({}<{})", d.name(b), d.name(a));
                if s > 0 {
                    base
                } else {
                    base + "^-1"
                }
            })
            .collect::<Vec<_>>()
            .join(".")
    }
}

/// Parses the printed form; see the module docs for the grammar.
pub fn parse_word(d: &Digraph, text: &str) -> Result<GroupoidWord, WordError> {
    let err = || WordError::Parse(text.to_string());
    let mut factors = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in text.trim().chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            return Err(err());
        }
        if ch == '.' && depth == 0 {
            factors.push(std::mem::take(&mut cur));
        } else if !ch.is_whitespace() || depth > 0 {
            cur.push(ch);
        }
    }
    if depth != 0 {
        return Err(err());
    }
    factors.push(cur);
    let vid = |n: &str| d.vertex_index(n).ok_or_else(|| WordError::UnknownVertex(n.into()));
    let mut letters = Vec::new();
    let mut ident = None;
    for f in factors.iter().rev() {
        let (body, inv) = match f.strip_suffix("^-1") {
            Some(b) => (b, true),
            None => (f.as_str(), false),
        };
        let inner = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')).ok_or_else(err)?;
        match inner.split_once('<') {
            Some((t, s)) => {
                let (t, s) = (vid(t.trim())?, vid(s.trim())?);
                let e = d.edge_id(s, t).ok_or_else(|| WordError::UnknownEdge(format!("({}<{})", d.name(t), d.name(s))))?;
                letters.push((e, if inv { -1 } else { 1 }));
            }
            None if !inv => ident = Some(vid(inner.trim())?),
            None => return Err(err()),
        }
    }
    let start = match (letters.first(), ident) {
        (Some(&l), _) => letter_ends(d, l).0,
        (None, Some(v)) => v,
        (None, None) => return Err(err()),
    };
    let w = GroupoidWord::new(d, start, letters)?;
    if let Some(v) = ident {
        // identity factors must sit on the path
        let on_path = (0..=w.len()).any(|i| w.vertex_at(d, i) == v);
        if !on_path {
            return Err(WordError::NotComposable(d.name(v).into()));
        }
    }
    Ok(w)
}

pub fn free_reduce(w: &GroupoidWord) -> GroupoidWord {
    GroupoidWord { start: w.start, letters: reduce_letters(&w.letters) }
}

#[derive(Debug, Clone)]
pub struct GroupoidPresentation {
    pub digraph: Digraph,
    pub relators: Vec<GroupoidWord>,
}

impl GroupoidPresentation {
    pub fn new(d: &Digraph, relators: Vec<GroupoidWord>) -> Result<Self, WordError> {
        for r in &relators {
            r.check(d)?;
            if r.end(d) != r.start {
                return Err(WordError::OpenRelator);
            }
        }
        Ok(GroupoidPresentation { digraph: d.clone(), relators })
    }

    pub fn parse_word(&self, text: &str) -> Result<GroupoidWord, WordError> {
        parse_word(&self.digraph, text)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let d = &self.digraph;
        serde_json::json!({
            "objects": d.vertices().iter().map(|v| v.0.clone()).collect::<Vec<_>>(),
            "generators": (0..d.edge_count()).map(|e| GroupoidWord { start: d.edge(e).0, letters: vec![(e, 1)] }.display(d)).collect::<Vec<_>>(),
            "relators": self.relators.iter().map(|r| r.display(d)).collect::<Vec<_>>(),
        })
    }
}

pub fn free_groupoid(d: &Digraph) -> GroupoidPresentation {
    GroupoidPresentation { digraph: d.clone(), relators: vec![] }
}

/// Π_D: p→q→r equals p→r for every triangle; the two composites agree for
/// every square, stated as the loop p→q→r→q'→p.
pub fn fundamental_groupoid(d: &Digraph) -> GroupoidPresentation {
    let e = |a: usize, b: usize| d.edge_id(a, b).expect("edge");
    let mut relators = Vec::new();
    for (p, q, r) in triangles(d) {
        relators.push(GroupoidWord { start: p, letters: vec![(e(p, q), 1), (e(q, r), 1), (e(p, r), -1)] });
    }
    for (p, q, q2, r) in squares(d) {
        relators.push(GroupoidWord { start: p, letters: vec![(e(p, q), 1), (e(q, r), 1), (e(q2, r), -1), (e(p, q2), -1)] });
    }
    GroupoidPresentation { digraph: d.clone(), relators }
}

/// Which rotation/inversion/split of which relator a rewrite uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct RuleRef {
    pub relator: usize,
    pub rotation: usize,
    pub inverted: bool,
    pub split: usize,
}

/// Replace `x` by `y` at any position where the path sits at `anchor`.
struct Rule {
    anchor: usize,
    x: Vec<Letter>,
    y: Vec<Letter>,
    id: RuleRef,
}

fn rules(pres: &GroupoidPresentation) -> Vec<Rule> {
    let d = &pres.digraph;
    let mut out = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (ri, r) in pres.relators.iter().enumerate() {
        let n = r.len();
        if n == 0 {
            continue;
        }
        for inverted in [false, true] {
            let base = if inverted { r.inverse(d) } else { r.clone() };
            for rot in 0..n {
                let mut ls = base.letters[rot..].to_vec();
                ls.extend_from_slice(&base.letters[..rot]);
                let anchor = base.vertex_at(d, rot);
                for k in 0..=n {
                    let x = ls[..k].to_vec();
                    let y = inverse_letters(&ls[k..]);
                    if seen.insert((anchor, x.clone(), y.clone())) {
                        out.push(Rule { anchor, x, y, id: RuleRef { relator: ri, rotation: rot, inverted, split: k } });
                    }
                }
            }
        }
    }
    out
}

fn apply(d: &Digraph, w: &GroupoidWord, pos: usize, rule: &Rule) -> Option<GroupoidWord> {
    if pos > w.len() || pos + rule.x.len() > w.len() || w.vertex_at(d, pos) != rule.anchor {
        return None;
    }
    if w.letters[pos..pos + rule.x.len()] != rule.x[..] {
        return None;
    }
    let mut ls = w.letters[..pos].to_vec();
    ls.extend_from_slice(&rule.y);
    ls.extend_from_slice(&w.letters[pos + rule.x.len()..]);
    Some(GroupoidWord { start: w.start, letters: reduce_letters(&ls) })
}

/// All single rewrites of `w` that stay within length `cap`.
fn neighbours<'a>(d: &'a Digraph, rs: &'a [Rule], w: &'a GroupoidWord, cap: usize) -> impl Iterator<Item = (RewriteStep, GroupoidWord)> + 'a {
    (0..=w.len()).flat_map(move |pos| {
        rs.iter().filter_map(move |r| {
            apply(d, w, pos, r).filter(|n| n.len() <= cap).map(|n| (RewriteStep { position: pos, rule: r.id }, n))
        })
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RewriteStep {
    pub position: usize,
    pub rule: RuleRef,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordEq {
    Equal(Vec<RewriteStep>),
    Unknown,
}

/// Breadth-first search from w1 over rewrites, keeping freely reduced words
/// of length at most `max_len`. Sound; Unknown only means not found.
pub fn word_equal(pres: &GroupoidPresentation, w1: &GroupoidWord, w2: &GroupoidWord, max_len: usize) -> Result<WordEq, WordError> {
    let d = &pres.digraph;
    w1.check(d)?;
    w2.check(d)?;
    if w1.start != w2.start || w1.end(d) != w2.end(d) {
        return Err(WordError::EndpointMismatch);
    }
    let (a, b) = (free_reduce(w1), free_reduce(w2));
    if a == b {
        return Ok(WordEq::Equal(vec![]));
    }
    let rs = rules(pres);
    let mut parent: HashMap<GroupoidWord, Option<(GroupoidWord, RewriteStep)>> = HashMap::new();
    parent.insert(a.clone(), None);
    let mut queue = VecDeque::from([a]);
    while let Some(w) = queue.pop_front() {
        for (step, n) in neighbours(d, &rs, &w, max_len) {
            if parent.contains_key(&n) {
                continue;
            }
            parent.insert(n.clone(), Some((w.clone(), step)));
            if n == b {
                let mut steps = Vec::new();
                let mut cur = n;
                while let Some(Some((prev, s))) = parent.get(&cur) {
                    steps.push(*s);
                    cur = prev.clone();
                }
                steps.reverse();
                return Ok(WordEq::Equal(steps));
            }
            queue.push_back(n);
        }
    }
    Ok(WordEq::Unknown)
}

/// Applies a certificate to w1 (freely reduced first) and returns the result.
pub fn replay(pres: &GroupoidPresentation, w1: &GroupoidWord, steps: &[RewriteStep]) -> Result<GroupoidWord, WordError> {
    let d = &pres.digraph;
    let rs = rules(pres);
    let mut w = free_reduce(w1);
    for (i, s) in steps.iter().enumerate() {
        let rule = rs.iter().find(|r| r.id == s.rule).ok_or(WordError::BadStep(i))?;
        w = apply(d, &w, s.position, rule).ok_or(WordError::BadStep(i))?;
    }
    Ok(w)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<Letter>>,
}

impl GroupPresentation {
    pub fn word_string(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter()
            .rev()
            .map(|&(g, s)| if s > 0 { self.generators[g].clone() } else { format!("{}^-1", self.generators[g]) })
            .collect::<Vec<_>>()
            .join(".")
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "generators": self.generators,
            "relators": self.relators.iter().map(|r| self.word_string(r)).collect::<Vec<_>>(),
        })
    }
}

/// Vertices of the undirected component of `v`, and BFS tree edges from its
/// least vertex.
fn spanning_tree(d: &Digraph, v: usize) -> (Vec<bool>, Vec<bool>) {
    let n = d.vertex_count();
    let mut comp = vec![false; n];
    comp[v] = true;
    let mut stack = vec![v];
    while let Some(x) = stack.pop() {
        for &y in d.out_nbrs(x).iter().chain(d.in_nbrs(x)) {
            if !comp[y] {
                comp[y] = true;
                stack.push(y);
            }
        }
    }
    let root = (0..n).find(|&x| comp[x]).unwrap();
    let mut seen = vec![false; n];
    let mut tree = vec![false; d.edge_count()];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        let mut inc: Vec<(usize, usize)> = d
            .out_nbrs(x)
            .iter()
            .map(|&y| (d.edge_id(x, y).unwrap(), y))
            .chain(d.in_nbrs(x).iter().map(|&y| (d.edge_id(y, x).unwrap(), y)))
            .collect();
        inc.sort();
        for (e, y) in inc {
            if !seen[y] {
                seen[y] = true;
                tree[e] = true;
                queue.push_back(y);
            }
        }
    }
    (comp, tree)
}

/// Isotropy group at `base`: generators are the non-tree edges of its
/// component, relators are the groupoid relators with tree letters deleted.
pub fn pi1_presentation(pres: &GroupoidPresentation, base: &str) -> Result<GroupPresentation, WordError> {
    let d = &pres.digraph;
    let b = d.vertex_index(base).ok_or_else(|| WordError::UnknownVertex(base.into()))?;
    let (comp, tree) = spanning_tree(d, b);
    let gens: Vec<usize> = (0..d.edge_count()).filter(|&e| comp[d.edge(e).0] && !tree[e]).collect();
    let gid: HashMap<usize, usize> = gens.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let generators = gens.iter().map(|&e| GroupoidWord { start: d.edge(e).0, letters: vec![(e, 1)] }.display(d)).collect();
    let relators = pres
        .relators
        .iter()
        .filter(|r| comp[r.start])
        .map(|r| reduce_letters(&r.letters.iter().filter_map(|&(e, s)| gid.get(&e).map(|&g| (g, s))).collect::<Vec<_>>()))
        .collect();
    Ok(GroupPresentation { generators, relators })
}

fn cyclic_reduce(w: &[Letter]) -> Vec<Letter> {
    let mut w = reduce_letters(w);
    while w.len() >= 2 && w[0].0 == w[w.len() - 1].0 && w[0].1 == -w[w.len() - 1].1 {
        w.pop();
        w.remove(0);
    }
    w
}

/// Deletes empty and duplicate relators and eliminates generators that occur
/// exactly once in some relator, for at most `budget` eliminations.
pub fn tietze_simplify(gp: &GroupPresentation, budget: usize) -> GroupPresentation {
    let mut gens = gp.generators.clone();
    let mut rels: Vec<Vec<Letter>> = gp.relators.clone();
    for _ in 0..=budget {
        rels = rels.iter().map(|r| cyclic_reduce(r)).filter(|r| !r.is_empty()).collect();
        let mut seen = std::collections::HashSet::new();
        rels.retain(|r| seen.insert(r.clone()));
        let mut best: Option<(usize, usize, usize)> = None; // (relator len, relator, position)
        for (ri, r) in rels.iter().enumerate() {
            for (pos, &(g, _)) in r.iter().enumerate() {
                if r.iter().filter(|l| l.0 == g).count() == 1 && best.map_or(true, |b| r.len() < b.0) {
                    best = Some((r.len(), ri, pos));
                }
            }
        }
        let Some((_, ri, pos)) = best else { break };
        if seen.len() > budget + gp.relators.len() {
            break;
        }
        let r = rels.remove(ri);
        let (g, s) = r[pos];
        // r rotated to g^s·W = 1, so g = W^{-1} when s = 1 and g = W otherwise
        let mut w: Vec<Letter> = r[pos + 1..].to_vec();
        w.extend_from_slice(&r[..pos]);
        let repl = if s > 0 { inverse_letters(&w) } else { w };
        let inv = inverse_letters(&repl);
        rels = rels
            .iter()
            .map(|x| {
                let mut out = Vec::new();
                for &(h, t) in x {
                    if h == g {
                        out.extend_from_slice(if t > 0 { &repl } else { &inv });
                    } else {
                        out.push((h, t));
                    }
                }
                out
            })
            .collect();
        gens.remove(g);
        for x in rels.iter_mut() {
            for l in x.iter_mut() {
                if l.0 > g {
                    l.0 -= 1;
                }
            }
        }
    }
    rels = rels.iter().map(|r| cyclic_reduce(r)).filter(|r| !r.is_empty()).collect();
    GroupPresentation { generators: gens, relators: rels }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Abelianization {
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

fn exponent_matrix(rows: &[Vec<Letter>], cols: usize) -> QMatrix {
    let mut m = QMatrix::zeros(rows.len(), cols);
    for (i, r) in rows.iter().enumerate() {
        let mut sums: BTreeMap<usize, i64> = BTreeMap::new();
        for &(g, s) in r {
            *sums.entry(g).or_default() += s as i64;
        }
        for (g, c) in sums {
            m.set(i, g, Rational::from_int(c)).expect("in range");
        }
    }
    m
}

impl Abelianization {
    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    /// Torsion factors as JSON integers, or strings past 64 bits.
    pub fn to_json(&self) -> serde_json::Value {
        let t: Vec<serde_json::Value> = self
            .torsion
            .iter()
            .map(|x| match i64::try_from(x) {
                Ok(v) => serde_json::json!(v),
                Err(_) => serde_json::json!(x.to_string()),
            })
            .collect();
        serde_json::json!({ "torsion": t, "free_rank": self.free_rank })
    }
}

pub fn abelianization(gp: &GroupPresentation) -> Abelianization {
    let n = gp.generators.len();
    if gp.relators.is_empty() || n == 0 {
        return Abelianization { torsion: vec![], free_rank: n };
    }
    let snf = smith_normal_form(&exponent_matrix(&gp.relators, n)).expect("integer matrix");
    Abelianization { torsion: snf.torsion(), free_rank: n - snf.rank }
}

/// H₁ of the presentation 2-complex over all components, from the boundary
/// maps directly (no spanning tree).
pub fn h1(pres: &GroupoidPresentation) -> Abelianization {
    let d = &pres.digraph;
    let (n, m) = (d.vertex_count(), d.edge_count());
    let mut d1 = QMatrix::zeros(m, n);
    for e in 0..m {
        let (a, b) = d.edge(e);
        d1.set(e, a, Rational::from_int(-1)).expect("in range");
        d1.set(e, b, Rational::one()).expect("in range");
    }
    let rank1 = rank(&d1);
    let rels: Vec<Vec<Letter>> = pres.relators.iter().map(|r| r.letters.clone()).collect();
    let (torsion, rank2) = if rels.is_empty() || m == 0 {
        (vec![], 0)
    } else {
        let snf = smith_normal_form(&exponent_matrix(&rels, m)).expect("integer matrix");
        (snf.torsion(), snf.rank)
    };
    Abelianization { torsion, free_rank: m - rank1 - rank2 }
}

/// Classes of reduced words of length ≤ cap under single rewrites that stay
/// within the cap.
#[derive(Debug, Clone)]
pub struct ArrowClasses {
    pub cap: usize,
    pub reps: Vec<GroupoidWord>,
    class_of: HashMap<GroupoidWord, usize>,
}

impl ArrowClasses {
    pub fn count(&self) -> usize {
        self.reps.len()
    }

    pub fn class_of(&self, w: &GroupoidWord) -> Option<usize> {
        self.class_of.get(&free_reduce(w)).copied()
    }
}

fn reduced_words(d: &Digraph, cap: usize) -> Vec<GroupoidWord> {
    let mut out = Vec::new();
    for v in 0..d.vertex_count() {
        let mut stack = vec![GroupoidWord::identity(v)];
        while let Some(w) = stack.pop() {
            if w.len() < cap {
                let end = w.end(d);
                let last = w.letters.last().copied();
                let nexts = d
                    .out_nbrs(end)
                    .iter()
                    .map(|&y| (d.edge_id(end, y).unwrap(), 1i8))
                    .chain(d.in_nbrs(end).iter().map(|&y| (d.edge_id(y, end).unwrap(), -1i8)));
                for l in nexts {
                    if last == Some((l.0, -l.1)) {
                        continue;
                    }
                    let mut n = w.clone();
                    n.letters.push(l);
                    stack.push(n);
                }
            }
            out.push(w);
        }
    }
    out
}

pub fn arrow_classes(pres: &GroupoidPresentation, cap: usize) -> ArrowClasses {
    let d = &pres.digraph;
    let rs = rules(pres);
    let words = reduced_words(d, cap);
    let index: HashMap<GroupoidWord, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let mut uf: Vec<usize> = (0..words.len()).collect();
    fn find(uf: &mut [usize], mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    for (i, w) in words.iter().enumerate() {
        for (_, n) in neighbours(d, &rs, w, cap) {
            let j = index[&n];
            let (a, b) = (find(&mut uf, i), find(&mut uf, j));
            if a != b {
                uf[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..words.len() {
        let r = find(&mut uf, i);
        groups.entry(r).or_default().push(i);
    }
    let key = |w: &GroupoidWord| (w.start, w.len(), w.letters.clone());
    let mut reps: Vec<(GroupoidWord, Vec<usize>)> = groups
        .into_values()
        .map(|members| {
            let rep = members.iter().map(|&i| &words[i]).min_by_key(|w| key(w)).unwrap().clone();
            (rep, members)
        })
        .collect();
    reps.sort_by_key(|(w, _)| key(w));
    let mut class_of = HashMap::new();
    for (c, (_, members)) in reps.iter().enumerate() {
        for &i in members {
            class_of.insert(words[i].clone(), c);
        }
    }
    ArrowClasses { cap, reps: reps.into_iter().map(|(w, _)| w).collect(), class_of }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "result", content = "count")]
pub enum ArrowCount {
    Finite(usize),
    NotStabilized,
}

/// Heuristic: Finite when the class count agrees at cap−1 and cap and every
/// class has a representative shorter than cap, so composing with a letter
/// stays inside the enumerated set.
pub fn enumerate_arrows(pres: &GroupoidPresentation, cap: usize) -> ArrowCount {
    if cap == 0 {
        return ArrowCount::NotStabilized;
    }
    let small = arrow_classes(pres, cap - 1);
    let big = arrow_classes(pres, cap);
    if small.count() == big.count() && big.reps.iter().all(|w| w.len() < cap) {
        ArrowCount::Finite(big.count())
    } else {
        ArrowCount::NotStabilized
    }
}

/// The enumerated classes as a finite groupoid, when enumeration stabilizes.
pub fn realize(pres: &GroupoidPresentation, cap: usize) -> Option<(FiniteGroupoid, ArrowClasses)> {
    if !matches!(enumerate_arrows(pres, cap), ArrowCount::Finite(_)) {
        return None;
    }
    let d = &pres.digraph;
    let cls = arrow_classes(pres, cap);
    let arrows = cls.reps.iter().map(|w| GroupoidArrow { name: w.display(d), src: w.start, dst: w.end(d) }).collect();
    let objects = d.vertices().iter().map(|v| v.0.clone()).collect();
    let compose = |g: usize, f: usize| {
        let mut c = f;
        for &l in &cls.reps[g].letters {
            let mut w = cls.reps[c].clone();
            w.letters.push(l);
            c = cls.class_of(&w).expect("closed under letters");
        }
        c
    };
    let g = FiniteGroupoid::new(objects, arrows, compose).ok()?;
    Some((g, cls))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::fixtures::*;

    fn w(d: &Digraph, s: &str) -> GroupoidWord {
        parse_word(d, s).unwrap()
    }

    #[test]
    fn parse_and_display_roundtrip() {
        let d = triangle();
        let x = w(&d, "(r<q).(q<p)");
        assert_eq!(x.start, 0);
        assert_eq!(x.end(&d), 2);
        assert_eq!(x.display(&d), "(r<q).(q<p)");
        let y = w(&d, "(q<p) . (r<p)^-1 .(r<q)");
        assert_eq!(y.start, 1);
        assert_eq!(parse_word(&d, &y.display(&d)).unwrap(), y);
        assert_eq!(w(&d, "(q)"), GroupoidWord::identity(1));
        assert!(parse_word(&d, "(q<r)").is_err());
        assert!(parse_word(&d, "(r<q).(r<q)").is_err());
        assert!(parse_word(&d, "(r<q").is_err());
        assert!(parse_word(&d, "(z)").is_err());
    }

    #[test]
    fn free_reduction() {
        let d = square();
        let x = w(&d, "(q<p)^-1.(r<q)^-1.(r<q).(q<p)");
        assert!(free_reduce(&x).is_empty());
        let y = w(&d, "(r<q).(q<p)");
        assert_eq!(free_reduce(&y), y);
        assert_eq!(free_reduce(&free_reduce(&x)), free_reduce(&x));
    }

    #[test]
    fn triangle_and_square_relations() {
        let t = fundamental_groupoid(&triangle());
        let (a, b) = (t.parse_word("(r<q).(q<p)").unwrap(), t.parse_word("(r<p)").unwrap());
        let WordEq::Equal(steps) = word_equal(&t, &a, &b, 4).unwrap() else { panic!() };
        assert_eq!(replay(&t, &a, &steps).unwrap(), b);
        let q = fundamental_groupoid(&square());
        let (a, b) = (q.parse_word("(r<q).(q<p)").unwrap(), q.parse_word("(r<q').(q'<p)").unwrap());
        let WordEq::Equal(steps) = word_equal(&q, &a, &b, 4).unwrap() else { panic!() };
        assert_eq!(replay(&q, &a, &steps).unwrap(), b);
        assert_eq!(word_equal(&q, &a, &a, 0).unwrap(), WordEq::Equal(vec![]));
    }

    #[test]
    fn cycle_loop_is_not_trivial() {
        let d = cycle(5);
        let p = fundamental_groupoid(&d);
        let lp = GroupoidWord::new(&d, 0, (0..5).map(|i| (d.edge_id(i, (i + 1) % 5).unwrap(), 1)).collect()).unwrap();
        assert_eq!(word_equal(&p, &lp, &GroupoidWord::identity(0), 8).unwrap(), WordEq::Unknown);
        assert_eq!(word_equal(&p, &lp, &GroupoidWord::identity(1), 8), Err(WordError::EndpointMismatch));
    }

    #[test]
    fn pi1_examples() {
        let t = pi1_presentation(&fundamental_groupoid(&triangle()), "p").unwrap();
        assert_eq!(t.generators, vec!["(r<q)".to_string()]);
        assert_eq!(t.relators, vec![vec![(0, 1)]]);
        assert_eq!(tietze_simplify(&t, 10).generators.len(), 0);
        let a = pi1_presentation(&free_groupoid(&a2()), "a").unwrap();
        assert!(a.generators.is_empty());
        let c = pi1_presentation(&fundamental_groupoid(&cycle(5)), "v2").unwrap();
        assert_eq!((c.generators.len(), c.relators.len()), (1, 0));
        assert_eq!(abelianization(&c), Abelianization { torsion: vec![], free_rank: 1 });
        let q = tietze_simplify(&pi1_presentation(&fundamental_groupoid(&square()), "q").unwrap(), 10);
        assert!(q.generators.is_empty() && q.relators.is_empty());
        assert!(pi1_presentation(&free_groupoid(&a2()), "z").is_err());
    }

    #[test]
    fn tietze_small_cases() {
        let x = GroupPresentation { generators: vec!["x".into()], relators: vec![vec![(0, 1)]] };
        assert_eq!(tietze_simplify(&x, 5), GroupPresentation { generators: vec![], relators: vec![] });
        let xy = GroupPresentation { generators: vec!["x".into(), "y".into()], relators: vec![vec![(1, 1)]] };
        assert_eq!(tietze_simplify(&xy, 5), GroupPresentation { generators: vec!["x".into()], relators: vec![] });
        // ⟨x | x²⟩ has nothing to eliminate
        let z2 = GroupPresentation { generators: vec!["x".into()], relators: vec![vec![(0, 1), (0, 1)]] };
        assert_eq!(tietze_simplify(&z2, 5), z2);
        assert_eq!(abelianization(&z2).torsion, vec![BigInt::from(2)]);
    }

    #[test]
    fn arrow_counts() {
        assert_eq!(enumerate_arrows(&fundamental_groupoid(&a2()), 3), ArrowCount::Finite(4));
        assert_eq!(enumerate_arrows(&fundamental_groupoid(&triangle()), 4), ArrowCount::Finite(9));
        assert_eq!(enumerate_arrows(&fundamental_groupoid(&square()), 5), ArrowCount::Finite(16));
        assert_eq!(enumerate_arrows(&fundamental_groupoid(&cycle(5)), 6), ArrowCount::NotStabilized);
    }

    #[test]
    fn realized_triangle_groupoid() {
        let (g, cls) = realize(&fundamental_groupoid(&triangle()), 4).unwrap();
        assert_eq!(g.arrow_count(), 9);
        assert_eq!(cls.count(), 9);
        // trivial isotropy: one arrow per ordered pair of objects
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(g.arrows.iter().filter(|x| x.src == a && x.dst == b).count(), 1);
            }
        }
    }

    #[test]
    fn h1_values() {
        let z = |r| Abelianization { torsion: vec![], free_rank: r };
        assert_eq!(h1(&fundamental_groupoid(&triangle())), z(0));
        assert_eq!(h1(&fundamental_groupoid(&square())), z(0));
        assert_eq!(h1(&fundamental_groupoid(&cycle(5))), z(1));
        assert_eq!(h1(&fundamental_groupoid(&cycle(6))), z(1));
        assert_eq!(h1(&free_groupoid(&triangle())), z(1));
    }
}
