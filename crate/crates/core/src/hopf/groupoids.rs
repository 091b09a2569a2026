//! Finite groupoids, their groupoid rings and function algebras.

use super::{ClosedForm, HopfPresentation};
use crate::linalg::Func;
use crate::path_algebra::{AlgElem, Balancing, PathWord, Quiver, QuiverEdge, RelationSet, Tensor2};
use std::collections::HashMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupoidError {
    #[error("composite of {0} and {1} has wrong endpoints")]
    Endpoints(String, String),
    #[error("composition not associative at {0}, {1}, {2}")]
    NotAssociative(String, String, String),
    #[error("object {0} has no identity")]
    NoIdentity(String),
    #[error("arrow {0} has no inverse")]
    NoInverse(String),
    #[error("arrow {0} refers to unknown object")]
    UnknownObject(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidArrow {
    pub name: String,
    pub src: usize,
    pub dst: usize,
}

#[derive(Debug, Clone)]
pub struct FiniteGroupoid {
    pub objects: Vec<String>,
    pub arrows: Vec<GroupoidArrow>,
    comp: Vec<Vec<Option<usize>>>,
    inv: Vec<usize>,
    ident: Vec<usize>,
}

impl FiniteGroupoid {
    /// `compose(g, f)` is g∘f, called only when src g = dst f.
    pub fn new(
        objects: Vec<String>,
        arrows: Vec<GroupoidArrow>,
        compose: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, GroupoidError> {
        let k = arrows.len();
        for a in &arrows {
            if a.src >= objects.len() || a.dst >= objects.len() {
                return Err(GroupoidError::UnknownObject(a.name.clone()));
            }
        }
        let name = |i: usize| arrows[i].name.clone();
        let mut comp = vec![vec![None; k]; k];
        for g in 0..k {
            for f in 0..k {
                if arrows[g].src == arrows[f].dst {
                    let h = compose(g, f);
                    if h >= k || arrows[h].src != arrows[f].src || arrows[h].dst != arrows[g].dst {
                        return Err(GroupoidError::Endpoints(name(g), name(f)));
                    }
                    comp[g][f] = Some(h);
                }
            }
        }
        for h in 0..k {
            for g in 0..k {
                let Some(hg) = comp[h][g] else { continue };
                for f in 0..k {
                    let Some(gf) = comp[g][f] else { continue };
                    if comp[hg][f] != comp[h][gf] {
                        return Err(GroupoidError::NotAssociative(name(h), name(g), name(f)));
                    }
                }
            }
        }
        let mut ident = Vec::new();
        for (p, o) in objects.iter().enumerate() {
            let id = (0..k).find(|&e| {
                arrows[e].src == p
                    && arrows[e].dst == p
                    && (0..k).all(|f| comp[e][f].map_or(true, |x| x == f) && comp[f][e].map_or(true, |x| x == f))
            });
            ident.push(id.ok_or_else(|| GroupoidError::NoIdentity(o.clone()))?);
        }
        let mut inv = Vec::new();
        for e in 0..k {
            let i = (0..k).find(|&f| comp[f][e] == Some(ident[arrows[e].src]) && comp[e][f] == Some(ident[arrows[e].dst]));
            inv.push(i.ok_or_else(|| GroupoidError::NoInverse(name(e)))?);
        }
        Ok(FiniteGroupoid { objects, arrows, comp, inv, ident })
    }

    /// k objects with every hom-set a copy of the group given by its table.
    pub fn connected(prefix: &str, k: usize, table: &[Vec<usize>]) -> Self {
        let n = table.len();
        let objects: Vec<String> = (0..k).map(|i| format!("{prefix}{i}")).collect();
        let mut arrows = Vec::new();
        for i in 0..k {
            for j in 0..k {
                for g in 0..n {
                    arrows.push(GroupoidArrow { name: format!("{prefix}{i}{j}g{g}"), src: j, dst: i });
                }
            }
        }
        let id = |e: usize| (e / (k * n), (e / n) % k, e % n);
        FiniteGroupoid::new(objects, arrows, |a, b| {
            let ((i, _, g), (_, l, h)) = (id(a), id(b));
            (i * k + l) * n + table[g][h]
        })
        .expect("connected groupoid axioms")
    }

    pub fn disjoint_union(&self, o: &FiniteGroupoid) -> FiniteGroupoid {
        let (no, na) = (self.objects.len(), self.arrows.len());
        let mut objects = self.objects.clone();
        objects.extend(o.objects.iter().cloned());
        let mut arrows = self.arrows.clone();
        arrows.extend(o.arrows.iter().map(|a| GroupoidArrow { name: a.name.clone(), src: a.src + no, dst: a.dst + no }));
        FiniteGroupoid::new(objects, arrows, |g, f| {
            if g < na {
                self.comp[g][f].unwrap()
            } else {
                o.comp[g - na][f - na].unwrap() + na
            }
        })
        .expect("union of groupoids")
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    /// g∘f when defined.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.comp[g][f]
    }

    pub fn inverse(&self, e: usize) -> usize {
        self.inv[e]
    }

    pub fn identity(&self, p: usize) -> usize {
        self.ident[p]
    }

    pub fn is_identity(&self, e: usize) -> bool {
        self.ident[self.arrows[e].src] == e
    }

    /// Closed under composition and inverses, containing identities of its objects.
    pub fn is_subgroupoid(&self, objs: &[bool], arrs: &[bool]) -> bool {
        let k = self.arrow_count();
        (0..k).filter(|&e| arrs[e]).all(|e| objs[self.arrows[e].src] && objs[self.arrows[e].dst] && arrs[self.inv[e]])
            && (0..self.object_count()).filter(|&p| objs[p]).all(|p| arrs[self.ident[p]])
            && (0..k).all(|g| (0..k).all(|f| !(arrs[g] && arrs[f]) || self.comp[g][f].map_or(true, |h| arrs[h])))
    }

    /// A subgroupoid containing every arrow incident to its objects.
    pub fn is_isolated_subgroupoid(&self, objs: &[bool], arrs: &[bool]) -> bool {
        self.is_subgroupoid(objs, arrs)
            && self.arrows.iter().enumerate().all(|(e, a)| !(objs[a.src] || objs[a.dst]) || arrs[e])
    }
}

fn cyclic(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()
}

fn product(a: &[Vec<usize>], b: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let (n, m) = (a.len(), b.len());
    (0..n * m).map(|x| (0..n * m).map(|y| a[x / m][y / m] * m + b[x % m][y % m]).collect()).collect()
}

/// Table of the permutation group generated by `gens`.
fn perm_group(gens: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let id: Vec<usize> = (0..gens[0].len()).collect();
    let mul = |p: &[usize], q: &[usize]| -> Vec<usize> { q.iter().map(|&i| p[i]).collect() };
    let mut elems = vec![id];
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            let x = mul(g, &elems[i]);
            if !elems.contains(&x) {
                elems.push(x);
            }
        }
        i += 1;
    }
    let index: HashMap<Vec<usize>, usize> = elems.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    elems.iter().map(|p| elems.iter().map(|q| index[&mul(p, q)]).collect()).collect()
}

fn quaternion() -> Vec<Vec<usize>> {
    // element 4s+u is (−1)^s·u with u in 1, i, j, k
    const UNIT: [[(usize, usize); 4]; 4] =
        [[(0, 0), (0, 1), (0, 2), (0, 3)], [(0, 1), (1, 0), (0, 3), (1, 2)], [(0, 2), (1, 3), (1, 0), (0, 1)], [(0, 3), (0, 2), (1, 1), (1, 0)]];
    (0..8)
        .map(|x| {
            (0..8)
                .map(|y| {
                    let (s, u) = UNIT[x % 4][y % 4];
                    ((s + x / 4 + y / 4) % 2) * 4 + u
                })
                .collect()
        })
        .collect()
}

/// All groups of order at most 8 up to isomorphism.
pub(crate) fn small_groups() -> Vec<(&'static str, Vec<Vec<usize>>)> {
    vec![
        ("1", cyclic(1)),
        ("Z2", cyclic(2)),
        ("Z3", cyclic(3)),
        ("Z4", cyclic(4)),
        ("Z2xZ2", product(&cyclic(2), &cyclic(2))),
        ("Z5", cyclic(5)),
        ("Z6", cyclic(6)),
        ("S3", perm_group(&[vec![1, 0, 2], vec![1, 2, 0]])),
        ("Z7", cyclic(7)),
        ("Z8", cyclic(8)),
        ("Z4xZ2", product(&cyclic(4), &cyclic(2))),
        ("Z2xZ2xZ2", product(&product(&cyclic(2), &cyclic(2)), &cyclic(2))),
        ("D4", perm_group(&[vec![1, 2, 3, 0], vec![0, 3, 2, 1]])),
        ("Q8", quaternion()),
    ]
}

/// Every finite groupoid with at most `max_objects` objects and `max_arrows`
/// arrows, up to isomorphism, for `max_objects` ≤ 3.
pub fn small_groupoids(max_objects: usize, max_arrows: usize) -> Vec<(String, FiniteGroupoid)> {
    // connected pieces: (objects, group index)
    let groups = small_groups();
    let mut pieces: Vec<(usize, usize)> = Vec::new();
    for k in 1..=max_objects {
        for (gi, (_, t)) in groups.iter().enumerate() {
            if k * k * t.len() <= max_arrows {
                pieces.push((k, gi));
            }
        }
    }
    let size = |&(k, gi): &(usize, usize)| (k, k * k * groups[gi].1.len());
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn rec(
        start: usize,
        objs: usize,
        arrs: usize,
        chosen: &mut Vec<usize>,
        pieces: &[(usize, usize)],
        size: &dyn Fn(&(usize, usize)) -> (usize, usize),
        lim: (usize, usize),
        out: &mut Vec<Vec<usize>>,
    ) {
        if !chosen.is_empty() {
            out.push(chosen.clone());
        }
        for i in start..pieces.len() {
            let (o, a) = size(&pieces[i]);
            if objs + o <= lim.0 && arrs + a <= lim.1 {
                chosen.push(i);
                rec(i, objs + o, arrs + a, chosen, pieces, size, lim, out);
                chosen.pop();
            }
        }
    }
    let mut combos = Vec::new();
    rec(0, 0, 0, &mut chosen, &pieces, &size, (max_objects, max_arrows), &mut combos);
    for combo in combos {
        let mut name = Vec::new();
        let mut g: Option<FiniteGroupoid> = None;
        for (c, &i) in combo.iter().enumerate() {
            let (k, gi) = pieces[i];
            let (gname, table) = &groups[gi];
            name.push(if k == 1 { gname.to_string() } else { format!("Pair{k}x{gname}") });
            let piece = FiniteGroupoid::connected(&format!("c{c}o"), k, table);
            g = Some(match g {
                None => piece,
                Some(acc) => acc.disjoint_union(&piece),
            });
        }
        out.push((name.join("+"), g.unwrap()));
    }
    out
}

fn single_base(g: &FiniteGroupoid) -> Vec<String> {
    g.objects.clone()
}

/// The basis element of 𝕂G for an arrow, in the quiver of `groupoid_ring(g)`.
pub fn arrow_element(g: &FiniteGroupoid, e: usize) -> AlgElem {
    if g.is_identity(e) {
        return AlgElem::vertex(g.arrows[e].src);
    }
    let i = (0..e).filter(|&x| !g.is_identity(x)).count();
    AlgElem::word(PathWord::from_edges(g.arrows[e].dst, g.arrows[e].src, vec![i as u32]))
}

/// 𝕂G: objects as vertices, non-identity arrows as edges.
pub fn groupoid_ring(g: &FiniteGroupoid) -> HopfPresentation {
    let no = g.object_count();
    let nonid: Vec<usize> = (0..g.arrow_count()).filter(|&e| !g.is_identity(e)).collect();
    let edge_of: HashMap<usize, usize> = nonid.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let edges: Vec<QuiverEdge> = nonid
        .iter()
        .map(|&e| QuiverEdge { src: g.arrows[e].src, dst: g.arrows[e].dst, label: g.arrows[e].name.clone() })
        .collect();
    let quiver = Quiver::new(g.objects.clone(), edges);
    let word = {
        let quiver = quiver.clone();
        let g = g.clone();
        let edge_of = edge_of.clone();
        move |e: usize| -> PathWord {
            if g.is_identity(e) {
                PathWord::vertex(g.arrows[e].src)
            } else {
                quiver.edge_word(edge_of[&e])
            }
        }
    };
    let mut relations = RelationSet::new();
    for &a in &nonid {
        for &b in &nonid {
            if let Some(c) = g.compose(a, b) {
                let w = quiver.word(&[edge_of[&a], edge_of[&b]]).unwrap();
                let x = &AlgElem::word(w) - &AlgElem::word(word(c));
                relations.push("composition", vec![g.arrows[a].name.clone(), g.arrows[b].name.clone()], x);
            }
        }
    }
    let reduce = {
        let g = g.clone();
        let nonid = nonid.clone();
        let word = word.clone();
        move |w: &PathWord| -> AlgElem {
            if w.is_vertex() {
                return AlgElem::word(w.clone());
            }
            let mut it = w.edges().iter().map(|&e| nonid[e as usize]);
            let first = it.next().unwrap();
            let arrow = it.fold(first, |acc, e| g.compose(acc, e).unwrap());
            AlgElem::word(word(arrow))
        }
    };
    let basis: Vec<PathWord> = (0..no).map(PathWord::vertex).chain((0..nonid.len()).map(|i| quiver.edge_word(i))).collect();
    let v = |p: usize| AlgElem::vertex(p);
    let w = |e: usize| AlgElem::word(word(e));
    let mut delta: Vec<Tensor2> = (0..no).map(|p| Tensor2::outer(&v(p), &v(p))).collect();
    let mut eps: Vec<Func> = (0..no).map(|p| Func::delta(no, p)).collect();
    let mut s: Vec<AlgElem> = (0..no).map(v).collect();
    let mut tr: Vec<Tensor2> = (0..no).map(|p| Tensor2::outer(&v(p), &v(p))).collect();
    for &e in &nonid {
        delta.push(Tensor2::outer(&w(e), &w(e)));
        eps.push(Func::delta(no, g.arrows[e].dst));
        s.push(w(g.inverse(e)));
        tr.push(Tensor2::outer(&w(e), &w(g.inverse(e))));
    }
    HopfPresentation {
        name: "groupoid_ring".into(),
        base_labels: single_base(g),
        balancing: Balancing { spt: (0..no).collect(), tpt: (0..no).collect() },
        source: (0..no).map(v).collect(),
        target: (0..no).map(v).collect(),
        delta,
        eps,
        antipode: Some(s.clone()),
        antipode_inv: Some(s),
        translation: Some(tr),
        closed: Some(ClosedForm { basis, reduce: Arc::new(reduce) }),
        quiver,
        relations,
    }
}

/// 𝕂(G): one orthogonal idempotent per arrow, no edges.
pub fn function_hopf(g: &FiniteGroupoid) -> HopfPresentation {
    let (no, na) = (g.object_count(), g.arrow_count());
    let quiver = Quiver::new(g.arrows.iter().map(|a| a.name.clone()).collect(), vec![]);
    let f = |e: usize| AlgElem::vertex(e);
    let split = |e: usize| -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for e1 in 0..na {
            for e2 in 0..na {
                if g.compose(e2, e1) == Some(e) {
                    out.push((e1, e2));
                }
            }
        }
        out
    };
    let sum_where = |pred: &dyn Fn(&GroupoidArrow) -> bool| -> AlgElem {
        g.arrows.iter().enumerate().filter(|(_, a)| pred(a)).fold(AlgElem::zero(), |acc, (e, _)| &acc + &f(e))
    };
    let delta = (0..na).map(|e| split(e).into_iter().fold(Tensor2::zero(), |acc, (a, b)| acc.add(&Tensor2::outer(&f(a), &f(b))))).collect();
    let tr = (0..na)
        .map(|e| split(e).into_iter().fold(Tensor2::zero(), |acc, (a, b)| acc.add(&Tensor2::outer(&f(a), &f(g.inverse(b))))))
        .collect();
    let eps = (0..na).map(|e| if g.is_identity(e) { Func::delta(no, g.arrows[e].src) } else { Func::zero(no) }).collect();
    let s: Vec<AlgElem> = (0..na).map(|e| f(g.inverse(e))).collect();
    let basis: Vec<PathWord> = (0..na).map(PathWord::vertex).collect();
    HopfPresentation {
        name: "function_algebra".into(),
        base_labels: single_base(g),
        balancing: Balancing { spt: g.arrows.iter().map(|a| a.src).collect(), tpt: g.arrows.iter().map(|a| a.dst).collect() },
        source: (0..no).map(|p| sum_where(&|a| a.src == p)).collect(),
        target: (0..no).map(|p| sum_where(&|a| a.dst == p)).collect(),
        delta,
        eps,
        antipode: Some(s.clone()),
        antipode_inv: Some(s),
        translation: Some(tr),
        closed: Some(ClosedForm { basis, reduce: Arc::new(|w: &PathWord| AlgElem::word(w.clone())) }),
        quiver,
        relations: RelationSet::new(),
    }
}
