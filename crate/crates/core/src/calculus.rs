//! The digraph differential calculus up to degree 2.
//!
//! Ω¹ has basis ω_{a→b} over edges; Ω² = Ω²_top is spanned by 2-paths modulo
//! Σ_b ω_{ab}∧ω_{bc} for every a↛c. Degree-2 elements are stored in the basis
//! of 2-paths that avoid the distinguished middle vertex.

use crate::digraph::{distinguished_vertex, paths2, Digraph, Path2};
use crate::linalg::{Func, Rational};
use crate::report::Report;
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// Coefficients over edges: a 1-form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Form1(pub Vec<Rational>);

/// Coefficients over edges: a vector field e_{b←a}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vec1(pub Vec<Rational>);

/// 2-form in basis coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Form2(pub BTreeMap<Path2, Rational>);

/// Degree-2 vector field in basis coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Vec2(pub BTreeMap<Path2, Rational>);

fn add_into(m: &mut BTreeMap<Path2, Rational>, p: Path2, c: Rational) {
    if c.is_zero() {
        return;
    }
    let e = m.entry(p).or_insert_with(Rational::zero);
    *e += &c;
    if e.is_zero() {
        m.remove(&p);
    }
}

/// Precomputed combinatorics of a digraph calculus.
#[derive(Debug, Clone)]
pub struct Calculus {
    pub digraph: Digraph,
    paths: Vec<Path2>,
    basis: BTreeSet<Path2>,
    /// (a, c) with a↛c and a 2-path → distinguished middle vertex.
    dist: HashMap<(usize, usize), usize>,
}

impl Calculus {
    pub fn new(d: &Digraph) -> Self {
        let paths = paths2(d);
        let mut dist = HashMap::new();
        for p in &paths {
            if !d.has_edge(p.a, p.c) && !dist.contains_key(&(p.a, p.c)) {
                let b = distinguished_vertex(d, p.a, p.c).expect("a↛c").expect("2-path exists");
                dist.insert((p.a, p.c), b);
            }
        }
        let basis = paths.iter().copied().filter(|p| dist.get(&(p.a, p.c)) != Some(&p.b)).collect();
        Calculus { digraph: d.clone(), paths, basis, dist }
    }

    pub fn n(&self) -> usize {
        self.digraph.vertex_count()
    }

    pub fn m(&self) -> usize {
        self.digraph.edge_count()
    }

    pub fn paths2(&self) -> &[Path2] {
        &self.paths
    }

    pub fn basis2(&self) -> impl Iterator<Item = Path2> + '_ {
        self.basis.iter().copied()
    }

    /// Middle vertex of the 2-path dropped from the basis for (a, c), if any.
    pub fn distinguished(&self, a: usize, c: usize) -> Option<usize> {
        self.dist.get(&(a, c)).copied()
    }

    pub fn dim2(&self) -> usize {
        self.basis.len()
    }

    pub fn is_basis(&self, p: Path2) -> bool {
        self.basis.contains(&p)
    }

    /// Writes a raw 2-path in basis coordinates.
    pub fn rewrite(&self, p: Path2) -> BTreeMap<Path2, Rational> {
        let mut out = BTreeMap::new();
        if self.basis.contains(&p) {
            out.insert(p, Rational::one());
            return out;
        }
        for &b in self.digraph.out_nbrs(p.a) {
            if b != p.b && self.digraph.has_edge(b, p.c) {
                out.insert(Path2 { a: p.a, b, c: p.c }, -Rational::one());
            }
        }
        out
    }

    pub fn form2_from_raw(&self, raw: &BTreeMap<Path2, Rational>) -> Form2 {
        let mut out = BTreeMap::new();
        for (p, c) in raw {
            for (q, d) in self.rewrite(*p) {
                add_into(&mut out, q, c * &d);
            }
        }
        Form2(out)
    }

    pub fn vec2_from_raw(&self, raw: &BTreeMap<Path2, Rational>) -> Vec2 {
        Vec2(self.form2_from_raw(raw).0)
    }

    pub fn omega(&self, e: usize) -> Form1 {
        let mut v = vec![Rational::zero(); self.m()];
        v[e] = Rational::one();
        Form1(v)
    }

    pub fn evec(&self, e: usize) -> Vec1 {
        Vec1(self.omega(e).0)
    }

    pub fn zero1(&self) -> Form1 {
        Form1(vec![Rational::zero(); self.m()])
    }

    pub fn f(&self, p: usize) -> Func {
        Func::delta(self.n(), p)
    }

    /// ω_{ab}∧ω_{bc} for a basis or distinguished 2-path.
    pub fn omega2(&self, p: Path2) -> Form2 {
        Form2(self.rewrite(p))
    }

    pub fn e2(&self, p: Path2) -> Vec2 {
        Vec2(self.rewrite(p))
    }

    pub fn d0(&self, f: &Func) -> Form1 {
        Form1(self.digraph.edge_list().iter().map(|&(a, b)| f.at(b) - f.at(a)).collect())
    }

    pub fn d1(&self, w: &Form1) -> Form2 {
        let d = &self.digraph;
        let mut raw = BTreeMap::new();
        for (e, c) in w.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (a, b) = d.edge(e);
            for &t in d.out_nbrs(b) {
                add_into(&mut raw, Path2 { a, b, c: t }, c.clone());
            }
            for &s in d.in_nbrs(a) {
                add_into(&mut raw, Path2 { a: s, b: a, c: b }, c.clone());
            }
            for &i in d.out_nbrs(a) {
                if d.has_edge(i, b) {
                    add_into(&mut raw, Path2 { a, b: i, c: b }, -c);
                }
            }
        }
        self.form2_from_raw(&raw)
    }

    pub fn wedge(&self, w: &Form1, r: &Form1) -> Form2 {
        let d = &self.digraph;
        let mut raw = BTreeMap::new();
        for (e1, c1) in w.0.iter().enumerate() {
            if c1.is_zero() {
                continue;
            }
            let (a, b) = d.edge(e1);
            for &c in d.out_nbrs(b) {
                let e2 = d.edge_id(b, c).unwrap();
                add_into(&mut raw, Path2 { a, b, c }, c1 * &r.0[e2]);
            }
        }
        self.form2_from_raw(&raw)
    }

    pub fn lmul1(&self, f: &Func, w: &Form1) -> Form1 {
        Form1(w.0.iter().enumerate().map(|(e, c)| c * f.at(self.digraph.edge(e).0)).collect())
    }

    pub fn rmul1(&self, w: &Form1, f: &Func) -> Form1 {
        Form1(w.0.iter().enumerate().map(|(e, c)| c * f.at(self.digraph.edge(e).1)).collect())
    }

    pub fn lmul2(&self, f: &Func, w: &Form2) -> Form2 {
        let mut out = BTreeMap::new();
        for (p, c) in &w.0 {
            add_into(&mut out, *p, c * f.at(p.a));
        }
        Form2(out)
    }

    pub fn rmul2(&self, w: &Form2, f: &Func) -> Form2 {
        let mut out = BTreeMap::new();
        for (p, c) in &w.0 {
            add_into(&mut out, *p, c * f.at(p.c));
        }
        Form2(out)
    }

    /// f·e_{b←a} = f(b) e_{b←a}.
    pub fn lact1(&self, f: &Func, x: &Vec1) -> Vec1 {
        Vec1(x.0.iter().enumerate().map(|(e, c)| c * f.at(self.digraph.edge(e).1)).collect())
    }

    /// e_{b←a}·f = f(a) e_{b←a}.
    pub fn ract1(&self, x: &Vec1, f: &Func) -> Vec1 {
        Vec1(x.0.iter().enumerate().map(|(e, c)| c * f.at(self.digraph.edge(e).0)).collect())
    }

    pub fn lact2(&self, f: &Func, x: &Vec2) -> Vec2 {
        let mut out = BTreeMap::new();
        for (p, c) in &x.0 {
            add_into(&mut out, *p, c * f.at(p.c));
        }
        Vec2(out)
    }

    pub fn ract2(&self, x: &Vec2, f: &Func) -> Vec2 {
        let mut out = BTreeMap::new();
        for (p, c) in &x.0 {
            add_into(&mut out, *p, c * f.at(p.a));
        }
        Vec2(out)
    }

    pub fn ev1(&self, x: &Vec1, w: &Form1) -> Func {
        let mut f = Func::zero(self.n());
        for e in 0..self.m() {
            let c = &x.0[e] * &w.0[e];
            f.0[self.digraph.edge(e).1] += &c;
        }
        f
    }

    pub fn ev1r(&self, w: &Form1, x: &Vec1) -> Func {
        let mut f = Func::zero(self.n());
        for e in 0..self.m() {
            let c = &x.0[e] * &w.0[e];
            f.0[self.digraph.edge(e).0] += &c;
        }
        f
    }

    /// Σ_e ω_e ⊗ e_e.
    pub fn coev1(&self) -> Vec<(Form1, Vec1)> {
        (0..self.m()).map(|e| (self.omega(e), self.evec(e))).collect()
    }

    /// Σ_e e_e ⊗ ω_e.
    pub fn coev1r(&self) -> Vec<(Vec1, Form1)> {
        (0..self.m()).map(|e| (self.evec(e), self.omega(e))).collect()
    }

    pub fn ev2(&self, x: &Vec2, w: &Form2) -> Func {
        let mut f = Func::zero(self.n());
        for (p, c) in &x.0 {
            if let Some(d) = w.0.get(p) {
                f.0[p.c] += &(c * d);
            }
        }
        f
    }

    pub fn ev2r(&self, w: &Form2, x: &Vec2) -> Func {
        let mut f = Func::zero(self.n());
        for (p, c) in &x.0 {
            if let Some(d) = w.0.get(p) {
                f.0[p.a] += &(c * d);
            }
        }
        f
    }

    pub fn coev2(&self) -> Vec<(Form2, Vec2)> {
        self.basis2().map(|p| (self.omega2(p), self.e2(p))).collect()
    }

    pub fn coev2r(&self) -> Vec<(Vec2, Form2)> {
        self.basis2().map(|p| (self.e2(p), self.omega2(p))).collect()
    }

    /// Υ(e_{t←s}) = f_s − f_t.
    pub fn upsilon(&self, x: &Vec1) -> Func {
        let mut f = Func::zero(self.n());
        for (e, c) in x.0.iter().enumerate() {
            let (s, t) = self.digraph.edge(e);
            f.0[s] += c;
            f.0[t] -= c;
        }
        f
    }
}

fn vec1_add(a: &Vec1, b: &Vec1) -> Vec1 {
    Vec1(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
}

fn form1_add(a: &Form1, b: &Form1) -> Form1 {
    Form1(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
}

fn form2_add(a: &Form2, b: &Form2) -> Form2 {
    let mut out = a.0.clone();
    for (p, c) in &b.0 {
        add_into(&mut out, *p, c.clone());
    }
    Form2(out)
}

fn form2_neg(a: &Form2) -> Form2 {
    Form2(a.0.iter().map(|(p, c)| (*p, -c)).collect())
}

fn vec2_add(a: &Vec2, b: &Vec2) -> Vec2 {
    Vec2(form2_add(&Form2(a.0.clone()), &Form2(b.0.clone())).0)
}

impl Calculus {
    fn p2name(&self, p: Path2) -> String {
        let d = &self.digraph;
        format!("{}>{}>{}", d.name(p.a), d.name(p.b), d.name(p.c))
    }

    /// Left side minus right side of the pivotality equation for ∧, per basis
    /// element of 𝔛², as coefficients on composable pairs (first, second).
    pub fn pivotal_defect(&self, x2: &Vec2) -> BTreeMap<(usize, usize), Rational> {
        let d = &self.digraph;
        let mut out: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
        let mut add = |k: (usize, usize), c: Rational| {
            let e = out.entry(k).or_insert_with(Rational::zero);
            *e += &c;
        };
        for first in 0..self.m() {
            for second in 0..self.m() {
                let (c1, _) = d.edge(first);
                let (_, d2) = d.edge(second);
                if c1 != d2 {
                    continue;
                }
                // ω_second ∧ ω_first pairs with x2 on both sides
                let w = self.wedge(&self.omega(second), &self.omega(first));
                let lhs = self.ev2(x2, &w);
                let lhs = lhs.at(d.edge(first).1).clone();
                let rhs = self.ev2r(&w, x2);
                let rhs = rhs.at(d.edge(second).0).clone();
                add((first, second), &lhs - &rhs);
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    pub fn check_pivotal(&self) -> Report {
        let mut r = Report::new("pivotal", 0);
        for p in self.basis2() {
            let ok = self.pivotal_defect(&self.e2(p)).is_empty();
            r.exact("pivotal_wedge", vec![self.p2name(p)], ok);
        }
        r
    }

    /// Left side of the Υ-flatness equation for one element of 𝔛².
    pub fn upsilon_flat_value(&self, x2: &Vec2) -> Func {
        let mut total = Func::zero(self.n());
        for (w, x) in self.coev1() {
            let c = self.ev2(x2, &self.d1(&w));
            total = &total + &self.upsilon(&self.lact1(&c, &x));
        }
        for (wj, xj) in self.coev1() {
            for (wk, xk) in self.coev1() {
                let c = self.ev2(x2, &self.wedge(&wj, &wk));
                if c.is_zero() {
                    continue;
                }
                let inner = self.upsilon(&self.lact1(&c, &xk));
                total = &total + &self.upsilon(&self.lact1(&inner, &xj));
            }
        }
        total
    }

    pub fn check_upsilon_flat(&self) -> Report {
        let mut r = Report::new("upsilon_flat", 0);
        for p in self.basis2() {
            r.exact("upsilon_flat", vec![self.p2name(p)], self.upsilon_flat_value(&self.e2(p)).is_zero());
        }
        r
    }

    pub fn check_d_squared(&self) -> Report {
        let mut r = Report::new("d_squared", 0);
        for p in 0..self.n() {
            let ok = self.d1(&self.d0(&self.f(p))).0.is_empty();
            r.exact("d1_d0", vec![self.digraph.name(p).into()], ok);
        }
        r
    }

    pub fn check_leibniz(&self) -> Report {
        let mut r = Report::new("leibniz", 0);
        for p in 0..self.n() {
            let fp = self.f(p);
            let dfp = self.d0(&fp);
            for e in 0..self.m() {
                let w = self.omega(e);
                let idx = vec![self.digraph.name(p).into(), self.digraph.edge_name(e)];
                let lhs = self.d1(&self.lmul1(&fp, &w));
                let rhs = form2_add(&self.wedge(&dfp, &w), &self.lmul2(&fp, &self.d1(&w)));
                r.exact("leibniz_left", idx.clone(), lhs == rhs);
                let lhs = self.d1(&self.rmul1(&w, &fp));
                let rhs = form2_add(&self.rmul2(&self.d1(&w), &fp), &form2_neg(&self.wedge(&w, &dfp)));
                r.exact("leibniz_right", idx, lhs == rhs);
            }
        }
        r
    }

    pub fn check_snakes(&self) -> Report {
        let mut r = Report::new("snake", 0);
        let d = &self.digraph;
        for e in 0..self.m() {
            let idx = vec![d.edge_name(e)];
            // 𝔛¹ → 𝔛¹ through ev1 and coev1
            let x = self.evec(e);
            let mut acc = Vec1(vec![Rational::zero(); self.m()]);
            for (w, y) in self.coev1() {
                acc = vec1_add(&acc, &self.lact1(&self.ev1(&x, &w), &y));
            }
            r.exact("snake_ev1_vec", idx.clone(), acc == x);
            // Ω¹ → Ω¹ through coev1 and ev1
            let om = self.omega(e);
            let mut acc = self.zero1();
            for (w, y) in self.coev1() {
                acc = form1_add(&acc, &self.rmul1(&w, &self.ev1(&y, &om)));
            }
            r.exact("snake_ev1_form", idx.clone(), acc == om);
            let mut acc = self.zero1();
            for (y, w) in self.coev1r() {
                acc = form1_add(&acc, &self.lmul1(&self.ev1r(&om, &y), &w));
            }
            r.exact("snake_ev1r_form", idx.clone(), acc == om);
            let mut acc = Vec1(vec![Rational::zero(); self.m()]);
            for (y, w) in self.coev1r() {
                acc = vec1_add(&acc, &self.ract1(&y, &self.ev1r(&w, &x)));
            }
            r.exact("snake_ev1r_vec", idx, acc == x);
        }
        for p in self.basis2() {
            let idx = vec![self.p2name(p)];
            let x = self.e2(p);
            let om = self.omega2(p);
            let mut acc = Vec2::default();
            for (w, y) in self.coev2() {
                acc = vec2_add(&acc, &self.lact2(&self.ev2(&x, &w), &y));
            }
            r.exact("snake_ev2_vec", idx.clone(), acc == x);
            let mut acc = Form2::default();
            for (w, y) in self.coev2() {
                acc = form2_add(&acc, &self.rmul2(&w, &self.ev2(&y, &om)));
            }
            r.exact("snake_ev2_form", idx.clone(), acc == om);
            let mut acc = Form2::default();
            for (y, w) in self.coev2r() {
                acc = form2_add(&acc, &self.lmul2(&self.ev2r(&om, &y), &w));
            }
            r.exact("snake_ev2r_form", idx.clone(), acc == om);
            let mut acc = Vec2::default();
            for (y, w) in self.coev2r() {
                acc = vec2_add(&acc, &self.ract2(&y, &self.ev2r(&w, &x)));
            }
            r.exact("snake_ev2r_vec", idx, acc == x);
        }
        r
    }

    pub fn check_dimension(&self) -> Report {
        let mut r = Report::new("dim_omega2", 0);
        let pairs: BTreeSet<(usize, usize)> = self.paths.iter().map(|p| (p.a, p.c)).collect();
        let killed = pairs.iter().filter(|&&(a, c)| !self.digraph.has_edge(a, c)).count();
        r.exact("dim_omega2", vec![], self.dim2() == self.paths.len() - killed);
        r
    }

    /// Every calculus check.
    pub fn check_all(&self) -> Report {
        let mut r = Report::new("calculus", 0);
        r.merge(self.check_d_squared());
        r.merge(self.check_leibniz());
        r.merge(self.check_snakes());
        r.merge(self.check_pivotal());
        r.merge(self.check_upsilon_flat());
        r.merge(self.check_dimension());
        r
    }
}

pub fn check_pivotal(d: &Digraph) -> Report {
    Calculus::new(d).check_pivotal()
}

pub fn check_upsilon_flat(d: &Digraph) -> Report {
    Calculus::new(d).check_upsilon_flat()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::fixtures::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn d0_examples() {
        let c = Calculus::new(&triangle());
        assert!(c.d0(&Func::one(3)).0.iter().all(|x| x.is_zero()));
        // edges sorted: p>q, p>r, q>r
        assert_eq!(c.d0(&c.f(0)).0, vec![q(-1), q(-1), q(0)]);
        let a = Calculus::new(&a2());
        assert_eq!(a.d0(&a.f(1)).0, vec![q(1)]);
    }

    #[test]
    fn d1_examples() {
        let c = Calculus::new(&triangle());
        let pqr = Path2 { a: 0, b: 1, c: 2 };
        assert_eq!(c.d1(&c.omega(0)).0, BTreeMap::from([(pqr, q(1))]));
        let a = Calculus::new(&a2());
        assert!(a.d1(&a.omega(0)).0.is_empty());
        assert_eq!(a.dim2(), 0);
    }

    #[test]
    fn wedge_examples() {
        let c = Calculus::new(&triangle());
        assert!(c.wedge(&c.omega(0), &c.omega(1)).0.is_empty());
        let s = Calculus::new(&square());
        // vertices p,q,q',r = 0,1,2,3; edges p>q, p>q', q>r, q'>r
        let d = &s.digraph;
        let (pq, qr, pq2, q2r) = (d.edge_id(0, 1).unwrap(), d.edge_id(1, 3).unwrap(), d.edge_id(0, 2).unwrap(), d.edge_id(2, 3).unwrap());
        let w1 = s.wedge(&s.omega(pq), &s.omega(qr));
        let w2 = s.wedge(&s.omega(pq2), &s.omega(q2r));
        assert_eq!(w1.0, BTreeMap::from([(Path2 { a: 0, b: 2, c: 3 }, q(-1))]));
        assert_eq!(form2_add(&w1, &w2), Form2::default());
    }

    #[test]
    fn pairings() {
        let a = Calculus::new(&a2());
        assert_eq!(a.ev1(&a.evec(0), &a.omega(0)), a.f(1));
        assert_eq!(a.ev1r(&a.omega(0), &a.evec(0)), a.f(0));
        assert_eq!(a.upsilon(&a.evec(0)), &a.f(0) - &a.f(1));
        assert!(a.upsilon(&Vec1(vec![q(0)])).is_zero());
        let t = Calculus::new(&triangle());
        assert!(t.ev1(&t.evec(0), &t.omega(1)).is_zero());
        let pqr = Path2 { a: 0, b: 1, c: 2 };
        assert_eq!(t.ev2(&t.e2(pqr), &t.omega2(pqr)), t.f(2));
        let s = Calculus::new(&square());
        let dist = Path2 { a: 0, b: 1, c: 3 };
        let other = Path2 { a: 0, b: 2, c: 3 };
        assert!(!s.is_basis(dist));
        assert_eq!(s.ev2(&s.e2(other), &s.omega2(dist)), s.f(3).scale(&q(-1)));
    }

    #[test]
    fn fixtures_pass_everything() {
        for d in [a2(), triangle(), square(), cycle(3), cycle(4), cycle(5), cycle(6)] {
            let r = Calculus::new(&d).check_all();
            assert!(r.all_pass(), "{:?}", r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn two_cycles_allowed() {
        let d = Digraph::new(&["a", "b", "c"], &[("a", "b"), ("b", "a"), ("b", "c")], true).unwrap();
        let c = Calculus::new(&d);
        assert!(c.check_all().all_pass());
        // every 2-path is the only one between non-adjacent endpoints
        assert_eq!(c.dim2(), 0);
        let d = Digraph::new(&["a", "b", "c"], &[("a", "b"), ("b", "a"), ("b", "c"), ("a", "c")], true).unwrap();
        let c = Calculus::new(&d);
        assert!(c.check_all().all_pass());
        assert_eq!(c.dim2(), 2);
    }
}
