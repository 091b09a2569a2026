//! Axiom checks with per-instance minimal certification degree.

use super::HopfPresentation;
use crate::linalg::{EchelonBasis, Func, QVector, Rational};
use crate::path_algebra::{AlgElem, IdealFamily, IdealOracle, PathWord, Tensor2, Tensor3};
use crate::report::{Report, Status};
use std::collections::HashMap;

enum Mode {
    Bounded(IdealFamily),
    Closed { col: HashMap<PathWord, usize>, words: Vec<PathWord>, basis: EchelonBasis },
}

/// Zero tests modulo the relations of a presentation plus extra ideal
/// generators, in H, H⊗H and H⊗H⊗H.
pub struct Certifier<'a> {
    hp: &'a HopfPresentation,
    mode: Mode,
    degree: usize,
}

type Outcome = (Status, Option<usize>);

impl<'a> Certifier<'a> {
    pub fn new(hp: &'a HopfPresentation, extra: &[AlgElem], max_degree: usize) -> Self {
        let mut gens = hp.relation_elements();
        gens.extend(extra.iter().cloned());
        let mode = match &hp.closed {
            None => Mode::Bounded(IdealFamily::new(&hp.quiver, gens, max_degree)),
            Some(cf) => {
                let words = cf.basis.clone();
                let col: HashMap<PathWord, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
                let mut basis = EchelonBasis::new();
                let to_vec = |x: &AlgElem| -> QVector {
                    let mut v = QVector::new();
                    for (w, c) in x.terms() {
                        for (b, d) in (cf.reduce)(w).terms() {
                            let e = v.entry(col[b]).or_insert_with(Rational::zero);
                            *e += &(c * d);
                        }
                    }
                    v.retain(|_, c| !c.is_zero());
                    v
                };
                // reduce is the normal form of the quotient by the relations, so
                // anything it already kills only contributes zero sandwiches
                for g in gens.iter().filter(|g| !to_vec(g).is_empty()) {
                    for (_, piece) in g.blocks() {
                        for u in &words {
                            for v in &words {
                                let mut x = AlgElem::zero();
                                for (w, c) in piece.terms() {
                                    if let Some(full) = u.compose(w).and_then(|y| y.compose(v)) {
                                        x.add_term(full, c.clone());
                                    }
                                }
                                if !x.is_zero() {
                                    basis.insert(to_vec(&x));
                                }
                            }
                        }
                    }
                }
                Mode::Closed { col, words, basis }
            }
        };
        Certifier { hp, mode, degree: max_degree }
    }

    pub fn presentation(&self) -> &HopfPresentation {
        self.hp
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    fn closed_nf_word(&self, w: &PathWord) -> AlgElem {
        let Mode::Closed { col, words, basis } = &self.mode else { unreachable!() };
        let cf = self.hp.closed.as_ref().unwrap();
        let v: QVector = (cf.reduce)(w).terms().map(|(b, c)| (col[b], c.clone())).collect();
        basis.reduce(v).into_iter().map(|(k, c)| (words[k].clone(), c)).collect()
    }

    /// Normal form of a word modulo the ideal; bounded mode uses the top degree.
    pub fn nf_word(&self, w: &PathWord) -> AlgElem {
        match &self.mode {
            Mode::Bounded(f) => f.at(f.max_degree()).nf_word(w),
            Mode::Closed { .. } => self.closed_nf_word(w),
        }
    }

    pub fn nf(&self, x: &AlgElem) -> AlgElem {
        let mut out = AlgElem::zero();
        for (w, c) in x.terms() {
            out.add_scaled(c, &self.nf_word(w));
        }
        out
    }

    fn decide(&self, start: usize, pred: impl Fn(&IdealOracle) -> bool, closed: impl Fn() -> bool) -> Outcome {
        match &self.mode {
            Mode::Closed { .. } => {
                if closed() {
                    (Status::Pass, Some(0))
                } else {
                    (Status::Fail, None)
                }
            }
            Mode::Bounded(f) => match f.minimal(start, pred) {
                Some(n) => (Status::Pass, Some(n)),
                None if f.at(f.max_degree()).is_complete() => (Status::Fail, None),
                None => (Status::Unknown, None),
            },
        }
    }

    pub fn elem(&self, x: &AlgElem) -> Outcome {
        if x.is_zero() {
            return (Status::Pass, Some(0));
        }
        self.decide(x.max_len(), |o| o.nf(x).is_zero(), || self.nf(x).is_zero())
    }

    /// Zero test in H⊗_A H (or H⊗_{A^op} H when `op`).
    pub fn t2(&self, x: &Tensor2, op: bool) -> Outcome {
        let b = &self.hp.balancing;
        let x = if op { b.normalize_op(x) } else { b.normalize(x) };
        if x.is_zero() {
            return (Status::Pass, Some(0));
        }
        self.decide(
            x.max_len(),
            |o| o.tensor_reduces(&x),
            || {
                let y = x.map2(|w| self.nf_word(w), |w| self.nf_word(w));
                if op { b.normalize_op(&y) } else { b.normalize(&y) }.is_zero()
            },
        )
    }

    pub fn t3(&self, x: &Tensor3) -> Outcome {
        let x = self.hp.balancing.normalize3(x);
        if x.is_zero() {
            return (Status::Pass, Some(0));
        }
        self.decide(
            x.max_len(),
            |o| o.tensor3_reduces(&x),
            || {
                let mut y = Tensor3::zero();
                for ((a, b, c), v) in x.terms() {
                    let (p, q, r) = (self.nf_word(a), self.nf_word(b), self.nf_word(c));
                    for (pa, e) in p.terms() {
                        for (qb, f) in q.terms() {
                            for (rc, g) in r.terms() {
                                y.add_term(pa.clone(), qb.clone(), rc.clone(), &(&(v * e) * f) * g);
                            }
                        }
                    }
                }
                self.hp.balancing.normalize3(&y).is_zero()
            },
        )
    }
}

fn push(r: &mut Report, axiom: &str, idx: Vec<String>, o: Outcome) {
    r.push(axiom, idx, o.0, o.1);
}

fn coassoc_defect(hp: &HopfPresentation, d: &Tensor2) -> Tensor3 {
    let mut t = Tensor3::zero();
    for ((a, b), c) in d.terms() {
        for ((a1, a2), e) in hp.delta_word(a).terms() {
            t.add_term(a1.clone(), a2.clone(), b.clone(), c * e);
        }
        for ((b1, b2), e) in hp.delta_word(b).terms() {
            t.add_term(a.clone(), b1.clone(), b2.clone(), -(c * e));
        }
    }
    t
}

fn coring(c: &Certifier) -> Report {
    let hp = c.hp;
    let mut r = Report::new("coring", c.degree);
    let u = hp.unit();
    for g in 0..hp.gen_count() {
        let x = hp.gen_elem(g);
        let idx = vec![hp.gen_label(g)];
        let d = hp.delta_of(&x);
        push(&mut r, "coassociativity", idx.clone(), c.t3(&coassoc_defect(hp, &d)));
        let mut left = -&x;
        let mut right = -&x;
        for ((a, b), k) in d.terms() {
            let wa = AlgElem::word(a.clone());
            let wb = AlgElem::word(b.clone());
            left.add_scaled(k, &hp.s(&hp.eps_word(a)).mul(&wb));
            right.add_scaled(k, &hp.t(&hp.eps_word(b)).mul(&wa));
        }
        push(&mut r, "counit_left", idx.clone(), c.elem(&left));
        push(&mut r, "counit_right", idx.clone(), c.elem(&right));
        for i in 0..hp.base_count() {
            let fi = Func::delta(hp.base_count(), i);
            let ok = hp.eps_of(&x.mul(&hp.s(&fi))) == hp.eps_of(&x.mul(&hp.t(&fi)));
            r.exact("counit_base_balanced", vec![idx[0].clone(), hp.base_labels[i].clone()], ok);
        }
    }
    for i in 0..hp.base_count() {
        let fi = Func::delta(hp.base_count(), i);
        let (s, t) = (hp.s(&fi), hp.t(&fi));
        let idx = vec![hp.base_labels[i].clone()];
        push(&mut r, "delta_source", idx.clone(), c.t2(&hp.delta_of(&s).sub(&Tensor2::outer(&s, &u)), false));
        push(&mut r, "delta_target", idx.clone(), c.t2(&hp.delta_of(&t).sub(&Tensor2::outer(&u, &t)), false));
        r.exact("counit_source", idx.clone(), hp.eps_of(&s) == fi);
        r.exact("counit_target", idx, hp.eps_of(&t) == fi);
    }
    r
}

fn bialgebroid(c: &Certifier) -> Report {
    let hp = c.hp;
    let mut r = Report::new("bialgebroid", c.degree);
    let u = hp.unit();
    push(&mut r, "delta_unit", vec![], c.t2(&hp.delta_of(&u).sub(&Tensor2::outer(&u, &u)), false));
    r.exact("counit_unit", vec![], hp.eps_of(&u) == Func::one(hp.base_count()));
    for g in 0..hp.gen_count() {
        for h in 0..hp.gen_count() {
            let Some(w) = hp.gen_word(g).compose(&hp.gen_word(h)) else { continue };
            let idx = vec![hp.gen_label(g), hp.gen_label(h)];
            let prod = hp.delta[g].mul(&hp.delta[h]);
            push(&mut r, "delta_multiplicative", idx.clone(), c.t2(&hp.delta_word(&w).sub(&prod), false));
            let eh = hp.eps_of(&hp.gen_elem(h));
            let gx = hp.gen_elem(g);
            let e = hp.eps_word(&w);
            r.exact("counit_source_twist", idx.clone(), e == hp.eps_of(&gx.mul(&hp.s(&eh))));
            r.exact("counit_target_twist", idx, e == hp.eps_of(&gx.mul(&hp.t(&eh))));
        }
    }
    r
}

fn antipode(c: &Certifier) -> Report {
    let hp = c.hp;
    let mut r = Report::new("antipode", c.degree);
    if hp.antipode.is_none() {
        r.notice("no antipode table");
        return r;
    }
    let u = hp.unit();
    let sp = |x: &AlgElem| hp.antipode_of(x).unwrap();
    let spi = |x: &AlgElem| hp.antipode_inv_of(x).unwrap();
    for i in 0..hp.base_count() {
        let fi = Func::delta(hp.base_count(), i);
        r.exact("antipode_source", vec![hp.base_labels[i].clone()], sp(&hp.s(&fi)) == hp.t(&fi));
    }
    for g in 0..hp.gen_count() {
        let x = hp.gen_elem(g);
        let idx = vec![hp.gen_label(g)];
        let d = hp.delta_of(&x);
        let mut left = Tensor2::zero().sub(&Tensor2::outer(&u, &sp(&x)));
        let mut right = Tensor2::zero().sub(&Tensor2::outer(&spi(&x), &u));
        for ((b1, b2), k) in d.terms() {
            let sb1 = sp(&AlgElem::word(b1.clone()));
            for ((y1, y2), e) in hp.delta_of(&sb1).terms() {
                if let Some(z) = y1.compose(b2) {
                    left.add_term(z, y2.clone(), k * e);
                }
            }
            let sb2 = spi(&AlgElem::word(b2.clone()));
            for ((y1, y2), e) in hp.delta_of(&sb2).terms() {
                if let Some(z) = y2.compose(b1) {
                    right.add_term(y1.clone(), z, k * e);
                }
            }
        }
        push(&mut r, "antipode_left_translation", idx.clone(), c.t2(&left, false));
        push(&mut r, "antipode_inverse_translation", idx.clone(), c.t2(&right, false));
        push(&mut r, "inverse_after_antipode", idx.clone(), c.elem(&(&spi(&sp(&x)) - &x)));
        push(&mut r, "antipode_after_inverse", idx, c.elem(&(&sp(&spi(&x)) - &x)));
    }
    r
}

fn translation(c: &Certifier) -> Report {
    let hp = c.hp;
    let mut r = Report::new("translation", c.degree);
    r.notice("right translation map not checked");
    if hp.translation.is_none() {
        r.notice("no translation table");
        return r;
    }
    let u = hp.unit();
    for g in 0..hp.gen_count() {
        let x = hp.gen_elem(g);
        let tr = hp.translation_of(&x).unwrap();
        let mut beta = Tensor2::zero().sub(&Tensor2::outer(&x, &u));
        for ((a, b), k) in tr.terms() {
            for ((a1, a2), e) in hp.delta_word(a).terms() {
                if let Some(z) = a2.compose(b) {
                    beta.add_term(a1.clone(), z, k * e);
                }
            }
        }
        push(&mut r, "translation_inverts_galois", vec![hp.gen_label(g)], c.t2(&beta, false));
    }
    for i in 0..hp.base_count() {
        let fi = Func::delta(hp.base_count(), i);
        let (s, t) = (hp.s(&fi), hp.t(&fi));
        let idx = vec![hp.base_labels[i].clone()];
        let ts = hp.translation_of(&s).unwrap().sub(&Tensor2::outer(&s, &u));
        let tt = hp.translation_of(&t).unwrap().sub(&Tensor2::outer(&u, &s));
        push(&mut r, "translation_source", idx.clone(), c.t2(&ts, true));
        push(&mut r, "translation_target", idx, c.t2(&tt, true));
    }
    r
}

fn well_defined(c: &Certifier) -> Report {
    let hp = c.hp;
    let mut r = Report::new("well_defined", c.degree);
    let nb = hp.base_count();
    for (label, x) in &hp.relations.relations {
        let idx = vec![label.to_string()];
        push(&mut r, "delta_kills_relation", idx.clone(), c.t2(&hp.delta_of(x), false));
        let ok = (0..nb).all(|i| hp.eps_of(&x.mul(&hp.s(&Func::delta(nb, i)))).is_zero());
        r.exact("counit_kills_relation", idx.clone(), ok);
        if let Ok(s) = hp.antipode_of(x) {
            push(&mut r, "antipode_kills_relation", idx.clone(), c.elem(&s));
        }
        if let Ok(s) = hp.antipode_inv_of(x) {
            push(&mut r, "inverse_antipode_kills_relation", idx.clone(), c.elem(&s));
        }
        if let Ok(t) = hp.translation_of(x) {
            push(&mut r, "translation_kills_relation", idx, c.t2(&t, true));
        }
    }
    r
}

pub fn check_coring(hp: &HopfPresentation, n: usize) -> Report {
    coring(&Certifier::new(hp, &[], n))
}

pub fn check_bialgebroid(hp: &HopfPresentation, n: usize) -> Report {
    bialgebroid(&Certifier::new(hp, &[], n))
}

pub fn check_antipode(hp: &HopfPresentation, n: usize) -> Report {
    antipode(&Certifier::new(hp, &[], n))
}

pub fn check_translation(hp: &HopfPresentation, n: usize) -> Report {
    translation(&Certifier::new(hp, &[], n))
}

pub fn check_well_defined(hp: &HopfPresentation, n: usize) -> Report {
    well_defined(&Certifier::new(hp, &[], n))
}

/// Every suite against one shared ideal oracle.
pub fn check_all(hp: &HopfPresentation, n: usize) -> Report {
    let c = Certifier::new(hp, &[], n);
    let mut r = Report::new("all", n);
    for part in [well_defined(&c), coring(&c), bialgebroid(&c), antipode(&c), translation(&c)] {
        r.merge(part);
    }
    r
}

impl Certifier<'_> {
    pub fn coring(&self) -> Report {
        coring(self)
    }

    pub fn bialgebroid(&self) -> Report {
        bialgebroid(self)
    }

    pub fn antipode(&self) -> Report {
        antipode(self)
    }

    pub fn translation(&self) -> Report {
        translation(self)
    }

    pub fn well_defined(&self) -> Report {
        well_defined(self)
    }
}

/// Whether ε maps the ideal generated by `g` (plus the relations) into the
/// functions supported on `j`. Exact: ε of a word is a scalar multiple of ε of
/// its leftmost factor, and the scalars only depend on which factors are live.
fn counit_lands_in(hp: &HopfPresentation, g: &AlgElem, in_j: &[bool]) -> bool {
    let q = &hp.quiver;
    let nv = q.vertex_count();
    let spt = &hp.balancing.spt;
    let supported = |f: &Func| f.support().all(|i| in_j[i]);
    let live_edge: Vec<bool> = (0..q.edge_count()).map(|e| !hp.eps[nv + e].at(spt[q.edge(e).dst]).is_zero()).collect();
    let mut live_end: Vec<bool> = (0..nv).map(|x| !hp.eps[x].at(spt[x]).is_zero()).collect();
    for e in 0..q.edge_count() {
        if live_edge[e] {
            live_end[q.edge(e).dst] = true;
        }
    }
    let mut firsts_ok = HashMap::new();
    let mut ok_for = |i: usize| -> bool {
        *firsts_ok.entry(i).or_insert_with(|| {
            let mut seen: Vec<bool> = (0..nv).map(|y| spt[y] == i).collect();
            let mut stack: Vec<usize> = (0..nv).filter(|&y| seen[y]).collect();
            while let Some(y) = stack.pop() {
                for &e in q.out_edges(y) {
                    let z = q.edge(e).dst;
                    if live_edge[e] && !seen[z] {
                        seen[z] = true;
                        stack.push(z);
                    }
                }
            }
            (0..nv).filter(|&z| seen[z]).all(|z| {
                supported(&hp.eps[z]) && q.out_edges(z).iter().all(|&e| supported(&hp.eps[nv + e]))
            })
        })
    };
    for x in (0..nv).filter(|&x| live_end[x]) {
        let mut phi = Func::zero(hp.base_count());
        for (w, c) in g.terms() {
            if w.src() == x {
                phi = &phi + &hp.eps_word(w).scale(c);
            }
        }
        let sup: Vec<usize> = phi.support().collect();
        if !sup.into_iter().all(&mut ok_for) {
            return false;
        }
    }
    true
}

/// Checks that (J, I) is a Hopf ideal: J given by its support in the base, I
/// generated by `i_gens` over the relations.
pub fn is_hopf_ideal(hp: &HopfPresentation, j_support: &[usize], i_gens: &[AlgElem], n: usize) -> Report {
    Certifier::new(hp, i_gens, n).hopf_ideal(j_support, i_gens)
}

impl Certifier<'_> {
    /// Hopf-ideal axioms with this certifier's extra generators as I.
    pub fn hopf_ideal(&self, j_support: &[usize], i_gens: &[AlgElem]) -> Report {
        let hp = self.hp;
        let mut r = Report::new("hopf_ideal", self.degree);
        let nb = hp.base_count();
        let mut in_j = vec![false; nb];
        for &i in j_support {
            in_j[i] = true;
            let fi = Func::delta(nb, i);
            let idx = vec![hp.base_labels[i].clone()];
            push(&mut r, "source_of_base_ideal", idx.clone(), self.elem(&hp.s(&fi)));
            push(&mut r, "target_of_base_ideal", idx, self.elem(&hp.t(&fi)));
        }
        for (k, g) in i_gens.iter().enumerate() {
            let idx = vec![k.to_string()];
            push(&mut r, "coideal", idx.clone(), self.t2(&hp.delta_of(g), false));
            r.exact("counit_into_base_ideal", idx.clone(), counit_lands_in(hp, g, &in_j));
            match hp.translation_of(g) {
                Ok(t) => push(&mut r, "translation_into_ideal", idx, self.t2(&t, true)),
                Err(_) => r.notice(format!("translation of generator {k} not checked")),
            }
        }
        r
    }
}
