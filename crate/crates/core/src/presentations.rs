//! Relation sets of H𝔛¹ and D𝔛 over the double quiver, and the change of
//! generators between (f, f̄, e, ē) and the path generators.

use crate::digraph::{double, squares, triangles, Digraph, DigraphError, DoubleEdge, DoubleQuiver};
use crate::linalg::Rational;
use crate::path_algebra::{unit, AlgElem, IdealFamily, RelationSet};
use crate::report::{Report, Status};
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PresentationKind {
    Hx1,
    Dx,
}

#[derive(Debug, Clone)]
pub struct Presentation {
    pub quiver: DoubleQuiver,
    pub relations: RelationSet,
    pub kind: PresentationKind,
}

impl Presentation {
    pub fn digraph(&self) -> &Digraph {
        &self.quiver.digraph
    }

    pub fn elements(&self) -> Vec<AlgElem> {
        self.relations.elements().cloned().collect()
    }

    pub fn ideal(&self, max_degree: usize) -> IdealFamily {
        IdealFamily::new(&self.quiver.quiver, self.elements(), max_degree)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let q = &self.quiver.quiver;
        serde_json::json!({
            "kind": self.kind,
            "digraph": self.digraph().to_json(),
            "quiver": self.quiver.to_json(),
            "relations": self.relations.relations.iter().map(|(l, x)| serde_json::json!({
                "family": l.family,
                "indices": l.indices,
                "element": x.to_json(q),
            })).collect::<Vec<_>>(),
        })
    }
}

fn one() -> Rational {
    Rational::one()
}

fn sum<I: IntoIterator<Item = AlgElem>>(it: I) -> AlgElem {
    it.into_iter().fold(AlgElem::zero(), |a, b| &a + &b)
}

fn delta(b: bool) -> Rational {
    if b {
        Rational::one()
    } else {
        Rational::zero()
    }
}

fn vname(d: &Digraph, v: usize) -> String {
    d.name(v).to_string()
}

/// Relations of H𝔛¹ in deterministic order.
pub fn hx1_relations(d: &Digraph) -> Presentation {
    let dq = double(d);
    let relations = hx1_set(&dq);
    Presentation { quiver: dq, relations, kind: PresentationKind::Hx1 }
}

fn hx1_set(dq: &DoubleQuiver) -> RelationSet {
    let d = &dq.digraph;
    let n = d.vertex_count();
    let m = d.edge_count();
    let mut rs = RelationSet::new();
    // pairs a→b, p→b sharing a target
    for q in 0..n {
        for e1 in 0..m {
            for e2 in 0..m {
                let ((a, b), (p, b2)) = (d.edge(e1), d.edge(e2));
                if b != b2 {
                    continue;
                }
                let idx = vec![vname(d, q), d.edge_name(e1), d.edge_name(e2)];
                let dl = delta(a == p);
                let lhs = sum(d.out_nbrs(q).iter().map(|&i| {
                    let qi = d.edge_id(q, i).unwrap();
                    dq.gr(e1, qi).mul(&dq.gl(e2, qi))
                }));
                rs.push("right_left_src", idx.clone(), &lhs - &dq.pt(a, q).scale(&dl));
                let lhs = sum(d.out_nbrs(q).iter().map(|&i| {
                    let qi = d.edge_id(q, i).unwrap();
                    dq.gr(qi, e1).mul(&dq.gl(qi, e2))
                }));
                rs.push("right_left_tgt", idx, &lhs - &dq.pt(q, a).scale(&dl));
            }
        }
    }
    // pairs d→a, d→p sharing a source
    for q in 0..n {
        for e1 in 0..m {
            for e2 in 0..m {
                let ((s, a), (s2, p)) = (d.edge(e1), d.edge(e2));
                if s != s2 {
                    continue;
                }
                let idx = vec![vname(d, q), d.edge_name(e1), d.edge_name(e2)];
                let dl = delta(a == p);
                let lhs = sum(d.in_nbrs(q).iter().map(|&i| {
                    let iq = d.edge_id(i, q).unwrap();
                    dq.gl(e1, iq).mul(&dq.gr(e2, iq))
                }));
                rs.push("left_right_src", idx.clone(), &lhs - &dq.pt(a, q).scale(&dl));
                let lhs = sum(d.in_nbrs(q).iter().map(|&i| {
                    let iq = d.edge_id(i, q).unwrap();
                    dq.gl(iq, e1).mul(&dq.gr(iq, e2))
                }));
                rs.push("left_right_tgt", idx, &lhs - &dq.pt(q, a).scale(&dl));
            }
        }
    }
    for q in 0..n {
        for st in 0..m {
            let (s, t) = d.edge(st);
            let idx = vec![vname(d, q), d.edge_name(st)];
            let rhs = sum(d.out_nbrs(q).iter().map(|&i| {
                let qi = d.edge_id(q, i).unwrap();
                dq.gr(qi, st).mul(&dq.gly(qi, t))
            }));
            rs.push("right_y", idx.clone(), &dq.gry(st, q) - &rhs);
            let lhs = sum(d.in_nbrs(q).iter().map(|&i| {
                let iq = d.edge_id(i, q).unwrap();
                dq.gl(st, iq).mul(&dq.gry(iq, s))
            }));
            rs.push("left_y", idx, &lhs - &dq.gly(st, q));
        }
    }
    rs
}

fn two_path(d: &Digraph, p: usize, q: usize, r: usize) -> Result<(usize, usize), DigraphError> {
    match (d.edge_id(p, q), d.edge_id(q, r)) {
        (Some(pq), Some(qr)) => Ok((pq, qr)),
        _ => Err(DigraphError::Schema(format!("{}>{}>{} is not a 2-path", d.name(p), d.name(q), d.name(r)))),
    }
}

/// The 𝐏 expression for a 2-path p→q→r and vertices a, b.
pub fn p_expr(dq: &DoubleQuiver, p: usize, q: usize, r: usize, a: usize, b: usize) -> Result<AlgElem, DigraphError> {
    let d = &dq.digraph;
    let (pq, qr) = two_path(d, p, q, r)?;
    let mut x = sum(d.out_nbrs(a).iter().filter(|&&i| d.has_edge(i, b)).map(|&i| {
        dq.gl(qr, d.edge_id(i, b).unwrap()).mul(&dq.gl(pq, d.edge_id(a, i).unwrap()))
    }));
    if let Some(ab) = d.edge_id(a, b) {
        x = &x - &dq.gly(qr, b).mul(&dq.gl(pq, ab));
        x = &x - &dq.gl(qr, ab).mul(&dq.gly(pq, a));
    }
    Ok(x)
}

/// The 𝐐 expression for a 2-path p→q→r and vertices a, b.
pub fn q_expr(dq: &DoubleQuiver, p: usize, q: usize, r: usize, a: usize, b: usize) -> Result<AlgElem, DigraphError> {
    let d = &dq.digraph;
    let (pq, qr) = two_path(d, p, q, r)?;
    let mut x = sum(d.out_nbrs(a).iter().filter(|&&i| d.has_edge(i, b)).map(|&i| {
        dq.gr(d.edge_id(a, i).unwrap(), pq).mul(&dq.gr(d.edge_id(i, b).unwrap(), qr))
    }));
    if let Some(ab) = d.edge_id(a, b) {
        x = &x + &dq.gr(ab, pq).mul(&dq.gry(qr, b));
        x = &x + &dq.gry(pq, a).mul(&dq.gr(ab, qr));
    }
    Ok(x)
}

/// Relations of D𝔛: those of H𝔛¹ followed by square and triangle relations.
pub fn dx_relations(d: &Digraph) -> Presentation {
    let dq = double(d);
    let mut rs = hx1_set(&dq);
    let n = d.vertex_count();
    let e = |a: usize, b: usize| d.edge_id(a, b).unwrap();
    for (p, q, q2, r) in squares(d) {
        let base = vec![vname(d, p), vname(d, q), vname(d, q2), vname(d, r)];
        for c in 0..n {
            let mut idx = base.clone();
            idx.push(vname(d, c));
            let l1 = dq.gly(e(q, r), c).mul(&dq.gly(e(p, q), c));
            let l2 = dq.gly(e(q2, r), c).mul(&dq.gly(e(p, q2), c));
            rs.push("square_left_y", idx.clone(), &l1 - &l2);
            let r1 = dq.gry(e(p, q), c).mul(&dq.gry(e(q, r), c));
            let r2 = dq.gry(e(p, q2), c).mul(&dq.gry(e(q2, r), c));
            rs.push("square_right_y", idx, &r1 - &r2);
        }
        for a in 0..n {
            for b in 0..n {
                let mut idx = base.clone();
                idx.extend([vname(d, a), vname(d, b)]);
                let x = &p_expr(&dq, p, q, r, a, b).unwrap() - &p_expr(&dq, p, q2, r, a, b).unwrap();
                rs.push("square_p", idx.clone(), x);
                let x = &q_expr(&dq, p, q, r, a, b).unwrap() - &q_expr(&dq, p, q2, r, a, b).unwrap();
                rs.push("square_q", idx, x);
            }
        }
    }
    for (p, q, r) in triangles(d) {
        let base = vec![vname(d, p), vname(d, q), vname(d, r)];
        let pr = e(p, r);
        for c in 0..n {
            let mut idx = base.clone();
            idx.push(vname(d, c));
            let l = &dq.gly(e(q, r), c).mul(&dq.gly(e(p, q), c)) + &dq.gly(pr, c);
            rs.push("triangle_left_y", idx.clone(), l);
            let r_ = &dq.gry(e(p, q), c).mul(&dq.gry(e(q, r), c)) - &dq.gry(pr, c);
            rs.push("triangle_right_y", idx, r_);
        }
        for a in 0..n {
            for b in 0..n {
                let mut idx = base.clone();
                idx.extend([vname(d, a), vname(d, b)]);
                let mut x = p_expr(&dq, p, q, r, a, b).unwrap();
                let mut y = q_expr(&dq, p, q, r, a, b).unwrap();
                if let Some(ab) = d.edge_id(a, b) {
                    x = &x - &dq.gl(pr, ab);
                    y = &y - &dq.gr(ab, pr);
                }
                rs.push("triangle_p", idx.clone(), x);
                rs.push("triangle_q", idx, y);
            }
        }
    }
    Presentation { quiver: dq, relations: rs, kind: PresentationKind::Dx }
}

/// Generators f_p, f̄_q, e_{t←s}, ē_{t←s} of the algebra before the change.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum OldGen {
    F(usize),
    FBar(usize),
    E(usize),
    EBar(usize),
}

/// Free algebra on old generators; a word lists factors left to right.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OldExpr {
    terms: BTreeMap<Vec<OldGen>, Rational>,
}

impl OldExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(Rational::one())
    }

    pub fn scalar(c: Rational) -> Self {
        let mut x = Self::zero();
        x.add_term(vec![], c);
        x
    }

    pub fn gen(g: OldGen) -> Self {
        let mut x = Self::zero();
        x.add_term(vec![g], Rational::one());
        x
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<OldGen>, &Rational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, w: Vec<OldGen>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w.clone()).or_insert_with(Rational::zero);
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, o: &OldExpr) -> OldExpr {
        let mut x = self.clone();
        for (w, c) in &o.terms {
            x.add_term(w.clone(), c.clone());
        }
        x
    }

    pub fn sub(&self, o: &OldExpr) -> OldExpr {
        self.add(&o.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> OldExpr {
        let mut x = OldExpr::zero();
        for (w, d) in &self.terms {
            x.add_term(w.clone(), c * d);
        }
        x
    }

    pub fn mul(&self, o: &OldExpr) -> OldExpr {
        let mut x = OldExpr::zero();
        for (w, c) in &self.terms {
            for (v, d) in &o.terms {
                let mut u = w.clone();
                u.extend_from_slice(v);
                x.add_term(u, c * d);
            }
        }
        x
    }

    pub fn commutator(&self, o: &OldExpr) -> OldExpr {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn display(&self, d: &Digraph) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let g = |g: &OldGen| match *g {
            OldGen::F(p) => format!("f_{}", d.name(p)),
            OldGen::FBar(p) => format!("fbar_{}", d.name(p)),
            OldGen::E(e) => format!("e_{}", d.edge_name(e)),
            OldGen::EBar(e) => format!("ebar_{}", d.edge_name(e)),
        };
        self.terms
            .iter()
            .map(|(w, c)| {
                let body = if w.is_empty() { "1".to_string() } else { w.iter().map(g).collect::<Vec<_>>().join("*") };
                format!("{c}*{body}")
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Both directions of the generator change.
pub struct GenChange {
    pub quiver: DoubleQuiver,
}

pub fn gen_change(d: &Digraph) -> GenChange {
    GenChange { quiver: double(d) }
}

impl GenChange {
    pub fn old_generators(&self) -> Vec<OldGen> {
        let d = &self.quiver.digraph;
        let mut out = Vec::new();
        out.extend((0..d.vertex_count()).map(OldGen::F));
        out.extend((0..d.vertex_count()).map(OldGen::FBar));
        out.extend((0..d.edge_count()).map(OldGen::E));
        out.extend((0..d.edge_count()).map(OldGen::EBar));
        out
    }

    pub fn forward(&self, g: OldGen) -> AlgElem {
        let dq = &self.quiver;
        let d = &dq.digraph;
        let (n, m) = (d.vertex_count(), d.edge_count());
        match g {
            OldGen::F(p) => dq.s_img(p),
            OldGen::FBar(q) => dq.t_img(q),
            OldGen::E(st) => {
                let t = d.edge(st).1;
                let y = sum((0..n).map(|q| &dq.gly(st, q) + &dq.pt(t, q)));
                &y - &sum((0..m).map(|ab| dq.gl(st, ab)))
            }
            OldGen::EBar(st) => {
                let s = d.edge(st).0;
                let y = sum((0..n).map(|q| &dq.gry(st, q) - &dq.pt(q, s)));
                &y + &sum((0..m).map(|ab| dq.gr(ab, st)))
            }
        }
    }

    /// Algebra map from the free algebra to 𝕂D^db.
    pub fn eval(&self, x: &OldExpr) -> AlgElem {
        let u = unit(&self.quiver.quiver);
        let mut out = AlgElem::zero();
        for (w, c) in x.terms() {
            let v = w.iter().fold(u.clone(), |acc, g| acc.mul(&self.forward(*g)));
            out.add_scaled(c, &v);
        }
        out
    }

    pub fn backward_edge(&self, f: DoubleEdge) -> OldExpr {
        let g = OldExpr::gen;
        let d = &self.quiver.digraph;
        match f {
            DoubleEdge::Left { ab, cd } => {
                let (c, dd) = d.edge(cd);
                g(OldGen::FBar(dd)).mul(&g(OldGen::E(ab))).mul(&g(OldGen::FBar(c))).scale(&-one())
            }
            DoubleEdge::Right { ab, cd } => {
                let (a, b) = d.edge(ab);
                g(OldGen::F(a)).mul(&g(OldGen::EBar(cd))).mul(&g(OldGen::F(b)))
            }
            DoubleEdge::LeftY { ab, q } => {
                let b = d.edge(ab).1;
                let x = g(OldGen::FBar(q)).mul(&g(OldGen::E(ab))).mul(&g(OldGen::FBar(q)));
                x.sub(&g(OldGen::F(b)).mul(&g(OldGen::FBar(q))))
            }
            DoubleEdge::RightY { cd, p } => {
                let c = d.edge(cd).0;
                let x = g(OldGen::F(p)).mul(&g(OldGen::EBar(cd))).mul(&g(OldGen::F(p)));
                x.add(&g(OldGen::F(p)).mul(&g(OldGen::FBar(c))))
            }
        }
    }

    pub fn backward_vertex(&self, v: usize) -> OldExpr {
        let (p, q) = self.quiver.coords(v);
        OldExpr::gen(OldGen::F(p)).mul(&OldExpr::gen(OldGen::FBar(q)))
    }

    /// Linear extension of the backward map to path-algebra elements.
    pub fn backward(&self, x: &AlgElem) -> OldExpr {
        let mut out = OldExpr::zero();
        for (w, c) in x.terms() {
            let v = if w.is_vertex() {
                self.backward_vertex(w.src())
            } else {
                w.edges().iter().fold(OldExpr::one(), |acc, &e| acc.mul(&self.backward_edge(self.quiver.family(e as usize))))
            };
            out = out.add(&v.scale(c));
        }
        out
    }

    /// Defining relations of the algebra in the old generators.
    pub fn old_relations(&self) -> Vec<(String, Vec<String>, OldExpr)> {
        let d = &self.quiver.digraph;
        let (n, m) = (d.vertex_count(), d.edge_count());
        let g = OldExpr::gen;
        let mut out = Vec::new();
        let dl = |b: bool| delta(b);
        for p in 0..n {
            for q in 0..n {
                let idx = vec![vname(d, p), vname(d, q)];
                let x = g(OldGen::F(p)).mul(&g(OldGen::F(q))).sub(&g(OldGen::F(p)).scale(&dl(p == q)));
                out.push(("f_idempotent".into(), idx.clone(), x));
                let x = g(OldGen::FBar(p)).mul(&g(OldGen::FBar(q))).sub(&g(OldGen::FBar(p)).scale(&dl(p == q)));
                out.push(("fbar_idempotent".into(), idx.clone(), x));
                out.push(("f_fbar_commute".into(), idx, g(OldGen::F(p)).commutator(&g(OldGen::FBar(q)))));
            }
        }
        for p in 0..n {
            for ab in 0..m {
                let (a, b) = d.edge(ab);
                let idx = vec![vname(d, p), d.edge_name(ab)];
                let (e, eb) = (g(OldGen::E(ab)), g(OldGen::EBar(ab)));
                let (fp, fbp) = (g(OldGen::F(p)), g(OldGen::FBar(p)));
                out.push(("f_e".into(), idx.clone(), fp.mul(&e).sub(&e.scale(&dl(p == b)))));
                out.push(("fbar_ebar".into(), idx.clone(), fbp.mul(&eb).sub(&eb.scale(&dl(p == a)))));
                let rhs = e.sub(&g(OldGen::F(b))).scale(&dl(p == a)).add(&g(OldGen::F(b)).scale(&dl(p == b)));
                out.push(("e_f".into(), idx.clone(), e.mul(&fp).sub(&rhs)));
                let fba = g(OldGen::FBar(a));
                let rhs = eb.add(&fba).scale(&dl(p == b)).sub(&fba.scale(&dl(p == a)));
                out.push(("ebar_fbar".into(), idx, eb.mul(&fbp).sub(&rhs)));
            }
        }
        for p in 0..n {
            for q in 0..n {
                if p == q || d.has_edge(p, q) {
                    continue;
                }
                for ab in 0..m {
                    let idx = vec![vname(d, p), vname(d, q), d.edge_name(ab)];
                    let x = g(OldGen::F(p)).mul(&g(OldGen::EBar(ab))).mul(&g(OldGen::F(q)));
                    out.push(("f_ebar_f".into(), idx.clone(), x));
                    let x = g(OldGen::FBar(q)).mul(&g(OldGen::E(ab))).mul(&g(OldGen::FBar(p)));
                    out.push(("fbar_e_fbar".into(), idx, x));
                }
            }
        }
        out
    }

    /// Images of the invertibility and Hopf relations of the surjective
    /// calculus presentation, in the old generators.
    pub fn kappa_relations(&self) -> Vec<(String, Vec<String>, OldExpr)> {
        let d = &self.quiver.digraph;
        let (n, m) = (d.vertex_count(), d.edge_count());
        let g = OldExpr::gen;
        let mut out = Vec::new();
        for st in 0..m {
            let (s, t) = d.edge(st);
            let idx = vec![d.edge_name(st)];
            let (e, eb) = (g(OldGen::E(st)), g(OldGen::EBar(st)));
            let mut x = eb.scale(&-one());
            for ab in 0..m {
                let a = d.edge(ab).0;
                x = x.add(&eb.commutator(&g(OldGen::F(a)).scale(&-one())).mul(&g(OldGen::E(ab))));
            }
            out.push(("inv_bar".into(), idx.clone(), x));
            let mut x = e.scale(&-one());
            for ab in 0..m {
                let b = d.edge(ab).1;
                x = x.add(&e.commutator(&g(OldGen::FBar(b))).mul(&g(OldGen::EBar(ab))));
            }
            out.push(("inv".into(), idx, x));
            for q in 0..n {
                let idx = vec![d.edge_name(st), vname(d, q)];
                let sign = dl_diff(q, t, s);
                let mut x = g(OldGen::FBar(t)).scale(&-sign.clone());
                for ab in 0..m {
                    let b = d.edge(ab).1;
                    let l = g(OldGen::E(ab)).commutator(&g(OldGen::FBar(q)));
                    let r = eb.commutator(&g(OldGen::F(b)));
                    x = x.add(&l.mul(&r));
                }
                out.push(("hopf".into(), idx.clone(), x));
                let mut x = g(OldGen::F(s)).scale(&-sign);
                for ab in 0..m {
                    let a = d.edge(ab).0;
                    let l = g(OldGen::EBar(ab)).commutator(&g(OldGen::F(q)));
                    let r = e.commutator(&g(OldGen::FBar(a)).scale(&-one()));
                    x = x.add(&l.mul(&r));
                }
                out.push(("hopf_bar".into(), idx, x));
            }
        }
        out
    }

    /// forward∘backward on path generators and backward∘forward on old
    /// generators, evaluated in 𝕂D^db; plus the old relations under forward.
    pub fn roundtrip_check(&self) -> Report {
        let mut r = Report::new("roundtrip", 0);
        let dq = &self.quiver;
        let q = &dq.quiver;
        for g in self.old_generators() {
            let x = self.forward(g);
            let back = self.backward(&x);
            r.exact("old_roundtrip", vec![format!("{g:?}")], self.eval(&back) == x);
        }
        for e in 0..q.edge_count() {
            let x = AlgElem::word(q.edge_word(e));
            let ok = self.eval(&self.backward_edge(dq.family(e))) == x;
            r.exact("path_roundtrip", vec![q.edge(e).label.clone()], ok);
        }
        for v in 0..q.vertex_count() {
            let ok = self.eval(&self.backward_vertex(v)) == AlgElem::vertex(v);
            r.exact("path_roundtrip", vec![q.vertex_label(v).into()], ok);
        }
        for (fam, idx, x) in self.old_relations() {
            r.exact(&fam, idx, self.eval(&x).is_zero());
        }
        r
    }
}

fn dl_diff(q: usize, t: usize, s: usize) -> Rational {
    delta(q == t) - delta(q == s)
}

pub fn roundtrip_check(d: &Digraph) -> Report {
    gen_change(d).roundtrip_check()
}

/// Certifies the κ-images against the H𝔛¹ relations, recording the least
/// degree at which each certifies.
pub fn kappa_check(d: &Digraph, max_degree: usize) -> Report {
    let gc = gen_change(d);
    let pres = hx1_relations(d);
    let fam = pres.ideal(max_degree);
    let mut r = Report::new("kappa", max_degree);
    for (name, idx, x) in gc.kappa_relations() {
        let img = gc.eval(&x);
        if img.is_zero() {
            r.push(&name, idx, Status::Pass, Some(0));
            continue;
        }
        let start = img.max_len();
        match fam.minimal(start, |o| o.nf(&img).is_zero()) {
            Some(n) => r.push(&name, idx, Status::Pass, Some(n)),
            None if fam.at(max_degree).is_complete() => r.push(&name, idx, Status::Fail, None),
            None => r.push(&name, idx, Status::Unknown, None),
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::fixtures::*;

    #[test]
    fn relation_counts() {
        assert_eq!(hx1_relations(&a2()).relations.len(), 12);
        assert_eq!(hx1_relations(&triangle()).relations.len(), 78);
        assert_eq!(dx_relations(&triangle()).relations.len(), 78 + 24);
        assert_eq!(dx_relations(&a2()).relations, hx1_relations(&a2()).relations);
        let sq = square();
        assert_eq!(dx_relations(&sq).relations.len() - hx1_relations(&sq).relations.len(), 40);
        let empty = Digraph::new(&["x", "y"], &[], false).unwrap();
        assert!(hx1_relations(&empty).relations.is_empty());
    }

    #[test]
    fn relations_are_block_homogeneous() {
        for d in [a2(), triangle(), square()] {
            for (l, x) in &dx_relations(&d).relations.relations {
                assert!(x.blocks().len() <= 1, "{l}");
            }
        }
    }

    #[test]
    fn p_expr_shapes() {
        let dq = double(&square());
        // p→q→r with a=p, b=r: two GenLeft products, no gated terms
        let x = p_expr(&dq, 0, 1, 3, 0, 3).unwrap();
        assert_eq!(x.term_count(), 2);
        assert!(x.terms().all(|(w, c)| w.len() == 2 && c.is_one()));
        assert!(p_expr(&dq, 0, 1, 3, 3, 0).unwrap().is_zero());
        assert!(p_expr(&dq, 0, 3, 1, 0, 0).is_err());
        let dt = double(&triangle());
        let x = p_expr(&dt, 0, 1, 2, 0, 2).unwrap();
        assert_eq!(x.term_count(), 3);
        assert_eq!(x.terms().filter(|(_, c)| c.is_negative()).count(), 2);
        let y = q_expr(&dt, 0, 1, 2, 0, 2).unwrap();
        assert_eq!(y.term_count(), 3);
        assert!(y.terms().all(|(_, c)| c.is_one()));
    }

    #[test]
    fn forward_expansion_of_e() {
        let gc = gen_change(&a2());
        let x = gc.forward(OldGen::E(0));
        let lens: Vec<usize> = x.terms().map(|(w, _)| w.len()).collect();
        assert_eq!(lens.iter().filter(|&&l| l == 0).count(), 2);
        assert_eq!(lens.iter().filter(|&&l| l == 1).count(), 3);
        assert_eq!(gc.backward(&gc.forward(OldGen::F(0))).terms().count(), 2);
    }

    #[test]
    fn roundtrips() {
        for d in [a2(), triangle(), square(), cycle(4)] {
            let r = roundtrip_check(&d);
            assert!(r.all_pass(), "{:?}", r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn kappa_on_fixtures() {
        for d in [a2(), triangle(), square()] {
            let r = kappa_check(&d, 4);
            assert!(r.all_pass(), "{:?}", r.failures().collect::<Vec<_>>());
            assert!(r.summary().max_minimal_n <= 4);
        }
    }
}
