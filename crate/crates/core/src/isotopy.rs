//! The isotropy ideal of a presented Hopf algebroid, its quotient, and the
//! two digraph cases: H𝔛¹ collapses to the free groupoid algebra on the
//! edges, D𝔛 to the algebra of Π_D.

use crate::digraph::{double, squares, triangles, Digraph, DoubleEdge, DoubleQuiver};
use crate::groupoid::{free_groupoid, fundamental_groupoid, ArrowClasses, GroupoidPresentation, GroupoidWord};
use crate::hopf::{
    arrow_element, dx_hopf, hx1_hopf, is_hopf_ideal, Certifier, FiniteGroupoid, HopfError, HopfPresentation,
};
use crate::linalg::Func;
use crate::path_algebra::{AlgElem, PathWord};
use crate::presentations::dx_relations;
use crate::report::Report;
use serde::Serialize;

/// J is given by its support in the base; for a function-algebra base it is
/// always empty.
#[derive(Debug, Clone)]
pub struct IsotopyIdeal {
    pub j_support: Vec<usize>,
    pub i_gens: Vec<AlgElem>,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdealSummary {
    pub j_gens: usize,
    pub i_gens: Vec<serde_json::Value>,
}

impl IsotopyIdeal {
    pub fn to_json(&self, hp: &HopfPresentation) -> serde_json::Value {
        serde_json::to_value(IdealSummary {
            j_gens: self.j_support.len(),
            i_gens: self.i_gens.iter().map(|g| g.to_json(&hp.quiver)).collect(),
        })
        .expect("serializable")
    }
}

/// I = ⟨s(f_i) − t(f_i)⟩ over the base idempotents.
pub fn isotropy_ideal(hp: &HopfPresentation) -> IsotopyIdeal {
    let nb = hp.base_count();
    let i_gens = (0..nb)
        .map(|i| {
            let f = Func::delta(nb, i);
            &hp.s(&f) - &hp.t(&f)
        })
        .collect();
    IsotopyIdeal { j_support: vec![], i_gens }
}

/// Hopf-ideal axioms for the isotropy ideal, plus S(I) ⊆ I.
pub fn check_isotropy_ideal(hp: &HopfPresentation, n: usize) -> Report {
    let ideal = isotropy_ideal(hp);
    let mut r = is_hopf_ideal(hp, &ideal.j_support, &ideal.i_gens, n);
    let c = Certifier::new(hp, &ideal.i_gens, n);
    for (k, g) in ideal.i_gens.iter().enumerate() {
        match hp.antipode_of(g) {
            Ok(x) => {
                let (st, m) = c.elem(&x);
                r.push("antipode_preserves_ideal", vec![k.to_string()], st, m);
            }
            Err(_) => r.notice(format!("antipode of generator {k} not checked")),
        }
    }
    r
}

/// Same structure tables over the quotient by the isotropy ideal.
pub fn isotopy_quotient(hp: &HopfPresentation) -> HopfPresentation {
    let ideal = isotropy_ideal(hp);
    let extra = ideal
        .i_gens
        .into_iter()
        .enumerate()
        .filter(|(_, g)| !g.is_zero())
        .map(|(i, g)| (vec![hp.base_labels[i].clone()], g))
        .collect();
    hp.quotient(&format!("{}_iso", hp.name), "isotropy", extra)
}

pub fn digraph_iso_hx1(d: &Digraph) -> GroupoidPresentation {
    free_groupoid(d)
}

pub fn digraph_iso_dx(d: &Digraph) -> GroupoidPresentation {
    fundamental_groupoid(d)
}

fn vname(d: &Digraph, v: usize) -> String {
    d.name(v).to_string()
}

/// Elements that vanish in every isotopy quotient on the double quiver:
/// off-diagonal vertices and generators not of the form GL(ab,ab), GR(ab,ab).
fn collapse_instances(dq: &DoubleQuiver) -> Vec<(&'static str, Vec<String>, AlgElem)> {
    let d = &dq.digraph;
    let n = d.vertex_count();
    let mut out = Vec::new();
    for p in 0..n {
        for q in (0..n).filter(|&q| q != p) {
            out.push(("vertex_collapse", vec![vname(d, p), vname(d, q)], dq.pt(p, q)));
        }
    }
    for &f in &dq.families {
        let keep = matches!(f, DoubleEdge::Left { ab, cd } | DoubleEdge::Right { ab, cd } if ab == cd);
        if !keep {
            let idx = match f {
                DoubleEdge::Left { ab, cd } | DoubleEdge::Right { ab, cd } => vec![d.edge_name(ab), d.edge_name(cd)],
                DoubleEdge::LeftY { ab, q } => vec![d.edge_name(ab), vname(d, q)],
                DoubleEdge::RightY { cd, p } => vec![d.edge_name(cd), vname(d, p)],
            };
            out.push(("generator_collapse", idx, dq.gen(f)));
        }
    }
    out
}

fn inverse_instances(dq: &DoubleQuiver) -> Vec<(&'static str, Vec<String>, AlgElem)> {
    let d = &dq.digraph;
    let mut out = Vec::new();
    for ab in 0..d.edge_count() {
        let (a, b) = d.edge(ab);
        let (l, r) = (dq.gl(ab, ab), dq.gr(ab, ab));
        out.push(("inverse_after_arrow", vec![d.edge_name(ab)], &r.mul(&l) - &dq.pt(a, a)));
        out.push(("arrow_after_inverse", vec![d.edge_name(ab)], &l.mul(&r) - &dq.pt(b, b)));
    }
    out
}

fn certify(hp: &HopfPresentation, items: Vec<(&'static str, Vec<String>, AlgElem)>, n: usize, suite: &str) -> Report {
    let c = Certifier::new(hp, &[], n);
    let mut r = Report::new(suite, n);
    for (axiom, idx, x) in items {
        let (st, m) = c.elem(&x);
        r.push(axiom, idx, st, m);
    }
    r
}

/// In the isotopy quotient of H𝔛¹: the collapses, and GR(ab,ab) inverting
/// GL(ab,ab).
pub fn verify_iso_hx1(d: &Digraph, n: usize) -> Report {
    let dq = double(d);
    let hp = isotopy_quotient(&hx1_hopf(d));
    let mut items = collapse_instances(&dq);
    items.extend(inverse_instances(&dq));
    certify(&hp, items, n, "iso_hx1")
}

fn diag(dq: &DoubleQuiver, a: usize, b: usize) -> AlgElem {
    let e = dq.digraph.edge_id(a, b).expect("edge");
    dq.gl(e, e)
}

/// In the isotopy quotient of D𝔛: everything checked for H𝔛¹, plus the
/// triangle and square relations of Π_D on the surviving generators.
pub fn verify_iso_dx(d: &Digraph, n: usize) -> Result<Report, HopfError> {
    let dq = double(d);
    let hp = isotopy_quotient(&dx_hopf(d)?);
    let mut items = collapse_instances(&dq);
    items.extend(inverse_instances(&dq));
    for (p, q, r) in triangles(d) {
        let x = &diag(&dq, q, r).mul(&diag(&dq, p, q)) - &diag(&dq, p, r);
        items.push(("triangle", vec![vname(d, p), vname(d, q), vname(d, r)], x));
    }
    for (p, q, q2, r) in squares(d) {
        let x = &diag(&dq, q, r).mul(&diag(&dq, p, q)) - &diag(&dq, q2, r).mul(&diag(&dq, p, q2));
        items.push(("square", vec![vname(d, p), vname(d, q), vname(d, q2), vname(d, r)], x));
    }
    Ok(certify(&hp, items, n, "iso_dx"))
}

/// The quotient map onto 𝕂G for a realized Π_D: (p|p) to the identity at p,
/// GL(ab,ab) to the arrow of the edge, GR(ab,ab) to its inverse, all other
/// generators to zero.
pub struct Projection<'a> {
    dq: DoubleQuiver,
    g: &'a FiniteGroupoid,
    images: Vec<AlgElem>,
}

impl<'a> Projection<'a> {
    pub fn new(d: &Digraph, g: &'a FiniteGroupoid, cls: &ArrowClasses) -> Self {
        let dq = double(d);
        let nv = dq.quiver.vertex_count();
        let arrow = |e: usize, s: i8| {
            let (a, b) = d.edge(e);
            let w = GroupoidWord { start: if s > 0 { a } else { b }, letters: vec![(e, s)] };
            arrow_element(g, cls.class_of(&w).expect("letter enumerated"))
        };
        let mut images = Vec::with_capacity(nv + dq.families.len());
        for v in 0..nv {
            let (p, q) = dq.coords(v);
            images.push(if p == q { AlgElem::vertex(p) } else { AlgElem::zero() });
        }
        for &f in &dq.families {
            images.push(match f {
                DoubleEdge::Left { ab, cd } if ab == cd => arrow(ab, 1),
                DoubleEdge::Right { ab, cd } if ab == cd => arrow(ab, -1),
                _ => AlgElem::zero(),
            });
        }
        Projection { dq, g, images }
    }

    fn word(&self, w: &PathWord) -> AlgElem {
        if w.is_vertex() {
            return self.images[w.src()].clone();
        }
        let nv = self.dq.quiver.vertex_count();
        let mut it = w.edges().iter().map(|&e| &self.images[nv + e as usize]);
        let first = it.next().unwrap().clone();
        it.fold(first, |acc, x| acc.mul(x))
    }

    pub fn apply(&self, x: &AlgElem) -> AlgElem {
        let mut out = AlgElem::zero();
        for (w, c) in x.terms() {
            out.add_scaled(c, &self.word(w));
        }
        out
    }

    pub fn groupoid(&self) -> &FiniteGroupoid {
        self.g
    }
}

/// Every relation of D𝔛 maps to zero in 𝕂G under the projection.
pub fn check_dx_projection(d: &Digraph, g: &FiniteGroupoid, cls: &ArrowClasses) -> Report {
    let proj = Projection::new(d, g, cls);
    let gr = crate::hopf::groupoid_ring(g);
    let c = Certifier::new(&gr, &[], 0);
    let mut r = Report::new("dx_projection", 0);
    for (label, x) in &dx_relations(d).relations.relations {
        r.exact(&label.family, label.indices.clone(), c.nf(&proj.apply(x)).is_zero());
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::fixtures::*;
    use crate::groupoid::realize;
    use crate::report::Status;

    #[test]
    fn ideal_generators_on_a2() {
        let hp = hx1_hopf(&a2());
        let ideal = isotropy_ideal(&hp);
        assert!(ideal.j_support.is_empty());
        assert_eq!(ideal.i_gens.len(), 2);
        let dq = double(&a2());
        let expect = &(&dq.pt(0, 0) + &dq.pt(0, 1)) - &(&dq.pt(0, 0) + &dq.pt(1, 0));
        assert_eq!(ideal.i_gens[0], expect);
    }

    #[test]
    fn isotropy_ideal_is_hopf_on_a2() {
        let r = check_isotropy_ideal(&hx1_hopf(&a2()), 3);
        assert!(r.all_pass(), "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn hx1_collapse_on_a2() {
        let r = verify_iso_hx1(&a2(), 3);
        assert!(r.all_pass(), "{:?}", r.failures().collect::<Vec<_>>());
        assert!(r.instances.iter().filter(|i| i.axiom.contains("inverse")).all(|i| i.minimal_n <= Some(2)));
    }

    #[test]
    fn groupoid_ring_ideal_is_zero() {
        let g = FiniteGroupoid::connected("x", 2, &[vec![0]]);
        let hp = crate::hopf::groupoid_ring(&g);
        assert!(isotropy_ideal(&hp).i_gens.iter().all(|x| x.is_zero()));
        assert_eq!(isotopy_quotient(&hp).relations.len(), hp.relations.len());
    }

    #[test]
    fn projection_kills_dx_relations_on_triangle() {
        let d = triangle();
        let (g, cls) = realize(&digraph_iso_dx(&d), 4).unwrap();
        let r = check_dx_projection(&d, &g, &cls);
        assert!(!r.instances.is_empty());
        assert!(r.instances.iter().all(|i| i.status == Status::Pass));
    }
}
