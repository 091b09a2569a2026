//! Structure maps of H𝔛¹ and D𝔛 on the double quiver.

use super::{sum, HopfError, HopfPresentation};
use crate::calculus::check_upsilon_flat;
use crate::digraph::{Digraph, DoubleEdge, DoubleQuiver};
use crate::linalg::{Func, Rational};
use crate::path_algebra::{unit, AlgElem, Balancing, PathWord, Tensor2};
use crate::presentations::{dx_relations, gen_change, hx1_relations, GenChange, OldExpr, OldGen, Presentation};

fn bal(dq: &DoubleQuiver) -> Balancing {
    let nv = dq.quiver.vertex_count();
    Balancing {
        spt: (0..nv).map(|v| dq.coords(v).0).collect(),
        tpt: (0..nv).map(|v| dq.coords(v).1).collect(),
    }
}

fn tsum(it: impl IntoIterator<Item = Tensor2>) -> Tensor2 {
    it.into_iter().fold(Tensor2::zero(), |a, b| a.add(&b))
}

fn t(x: &AlgElem, y: &AlgElem) -> Tensor2 {
    Tensor2::outer(x, y)
}

fn delta_table(dq: &DoubleQuiver) -> Vec<Tensor2> {
    let d = &dq.digraph;
    let (n, m) = (d.vertex_count(), d.edge_count());
    let mut out = Vec::new();
    for v in 0..dq.quiver.vertex_count() {
        let (p, q) = dq.coords(v);
        out.push(tsum((0..n).map(|i| t(&dq.pt(p, i), &dq.pt(i, q)))));
    }
    for &f in &dq.families {
        let x = match f {
            DoubleEdge::Left { ab, cd } => tsum((0..m).map(|st| t(&dq.gl(ab, st), &dq.gl(st, cd)))),
            DoubleEdge::Right { ab, cd } => tsum((0..m).map(|st| t(&dq.gr(ab, st), &dq.gr(st, cd)))),
            DoubleEdge::LeftY { ab, q: c } => tsum(
                (0..m)
                    .map(|st| t(&dq.gl(ab, st), &dq.gly(st, c)))
                    .chain((0..n).map(|tt| t(&dq.gly(ab, tt), &dq.pt(tt, c)))),
            ),
            DoubleEdge::RightY { cd: ab, p: c } => tsum(
                (0..m)
                    .map(|st| t(&dq.gry(st, c), &dq.gr(st, ab)))
                    .chain((0..n).map(|tt| t(&dq.pt(c, tt), &dq.gry(ab, tt)))),
            ),
        };
        out.push(x);
    }
    out
}

fn eps_table(dq: &DoubleQuiver) -> Vec<Func> {
    let d = &dq.digraph;
    let n = d.vertex_count();
    let mut out = Vec::new();
    for v in 0..dq.quiver.vertex_count() {
        let (p, q) = dq.coords(v);
        out.push(if p == q { Func::delta(n, p) } else { Func::zero(n) });
    }
    for &f in &dq.families {
        out.push(match f {
            DoubleEdge::Left { ab, cd } if ab == cd => Func::delta(n, d.edge(ab).1),
            DoubleEdge::Right { ab, cd } if ab == cd => Func::delta(n, d.edge(ab).0),
            _ => Func::zero(n),
        });
    }
    out
}

fn antipode_tables(dq: &DoubleQuiver) -> (Vec<AlgElem>, Vec<AlgElem>) {
    let d = &dq.digraph;
    let mut s = Vec::new();
    let mut si = Vec::new();
    for v in 0..dq.quiver.vertex_count() {
        let (p, q) = dq.coords(v);
        s.push(dq.pt(q, p));
        si.push(dq.pt(q, p));
    }
    for &f in &dq.families {
        match f {
            DoubleEdge::Left { ab, cd } => {
                s.push(dq.gr(cd, ab));
                si.push(dq.gr(cd, ab));
            }
            DoubleEdge::Right { ab, cd } => {
                s.push(dq.gl(cd, ab));
                si.push(dq.gl(cd, ab));
            }
            DoubleEdge::LeftY { ab, q: c } => {
                s.push(-dq.gry(ab, c));
                let x = sum(d.in_nbrs(c).iter().map(|&sv| {
                    let sc = d.edge_id(sv, c).unwrap();
                    dq.gly(sc, d.edge(ab).0).mul(&dq.gr(sc, ab))
                }));
                si.push(-x);
            }
            DoubleEdge::RightY { cd, p } => {
                let dd = d.edge(cd).1;
                let x = sum(d.out_nbrs(p).iter().map(|&tv| {
                    let pt = d.edge_id(p, tv).unwrap();
                    dq.gry(pt, dd).mul(&dq.gl(cd, pt))
                }));
                s.push(-x);
                si.push(-dq.gly(cd, p));
            }
        }
    }
    (s, si)
}

/// x₊ ⊗ x₋ for the old generators, as representatives in 𝕂D^db ⊗ 𝕂D^db.
fn old_translation(gc: &GenChange, g: OldGen) -> Tensor2 {
    let dq = &gc.quiver;
    let d = &dq.digraph;
    let u = unit(&dq.quiver);
    let fwd = |g: OldGen| gc.forward(g);
    let ex = OldExpr::gen;
    match g {
        OldGen::F(p) => t(&fwd(OldGen::F(p)), &u),
        OldGen::FBar(q) => t(&u, &fwd(OldGen::F(q))),
        OldGen::E(_) => {
            let mut x = t(&fwd(g), &u);
            for ab in 0..d.edge_count() {
                let b = d.edge(ab).1;
                let c = gc.eval(&ex(g).commutator(&ex(OldGen::FBar(b))));
                x = x.sub(&t(&c, &fwd(OldGen::EBar(ab))));
            }
            x
        }
        OldGen::EBar(st) => {
            let mut x = Tensor2::zero();
            for ab in 0..d.edge_count() {
                let a = d.edge(ab).0;
                let br = ex(OldGen::E(st)).commutator(&ex(OldGen::FBar(a)).scale(&-Rational::one()));
                let c = gc.eval(&br);
                let eb = fwd(OldGen::EBar(ab));
                x = x.add(&t(&eb, &c)).sub(&t(&u, &eb.mul(&c)));
            }
            x
        }
    }
}

fn filter(x: &Tensor2, keep: impl Fn(&PathWord, &PathWord) -> bool) -> Tensor2 {
    x.terms().filter(|((a, b), _)| keep(a, b)).map(|(k, c)| (k.clone(), c.clone())).collect()
}

/// Translation map on path generators, derived by expressing each one in the
/// old generators and multiplying their translations with the twisted product.
pub fn translation_table(dq: &DoubleQuiver) -> Vec<Tensor2> {
    let gc = gen_change(&dq.digraph);
    let b = bal(dq);
    let old: std::collections::BTreeMap<OldGen, Tensor2> =
        gc.old_generators().into_iter().filter(|g| matches!(g, OldGen::E(_) | OldGen::EBar(_))).map(|g| (g, old_translation(&gc, g))).collect();
    let u = unit(&dq.quiver);
    let first = |g: OldGen| match g {
        OldGen::F(p) => t(&dq.s_img(p), &u),
        OldGen::FBar(q) => t(&u, &dq.s_img(q)),
        _ => old[&g].clone(),
    };
    let word_t = |w: &[OldGen]| -> Tensor2 {
        let mut acc = first(w[0]);
        for &g in &w[1..] {
            acc = match g {
                // (x⊗y)(s(f_p)⊗1) = x•s(f_p) ⊗ y
                OldGen::F(p) => filter(&acc, |x, _| dq.coords(x.src()).0 == p),
                // (x⊗y)(1⊗s(f_q)) = x ⊗ s(f_q)•y
                OldGen::FBar(q) => filter(&acc, |_, y| dq.coords(y.dst()).0 == q),
                _ => acc.mul_op(&old[&g]),
            };
        }
        acc
    };
    let expr_t = |x: &OldExpr| {
        let mut out = Tensor2::zero();
        for (w, c) in x.terms() {
            out.add_scaled(c, &word_t(w));
        }
        b.normalize_op(&out)
    };
    let mut table = Vec::new();
    for v in 0..dq.quiver.vertex_count() {
        table.push(expr_t(&gc.backward_vertex(v)));
    }
    for &f in &dq.families {
        table.push(expr_t(&gc.backward_edge(f)));
    }
    table
}

fn build(pres: Presentation, name: &str) -> HopfPresentation {
    let dq = &pres.quiver;
    let d = &dq.digraph;
    let (s, si) = antipode_tables(dq);
    HopfPresentation {
        name: name.into(),
        quiver: dq.quiver.clone(),
        base_labels: d.vertices().iter().map(|v| v.0.clone()).collect(),
        balancing: bal(dq),
        source: (0..d.vertex_count()).map(|p| dq.s_img(p)).collect(),
        target: (0..d.vertex_count()).map(|q| dq.t_img(q)).collect(),
        delta: delta_table(dq),
        eps: eps_table(dq),
        antipode: Some(s),
        antipode_inv: Some(si),
        translation: Some(translation_table(dq)),
        closed: None,
        relations: pres.relations,
    }
}

pub fn hx1_hopf(d: &Digraph) -> HopfPresentation {
    build(hx1_relations(d), "hx1")
}

/// Fails unless the calculus is Υ-flat.
pub fn dx_hopf(d: &Digraph) -> Result<HopfPresentation, HopfError> {
    let r = check_upsilon_flat(d);
    if let Some(f) = r.failures().next() {
        return Err(HopfError::NotUpsilonFlat(f.indices.join(",")));
    }
    Ok(build(dx_relations(d), "dx"))
}
