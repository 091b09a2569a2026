//! Hopf algebroid structure maps on path-algebra presentations and the
//! axiom checks built on them.
//!
//! Every structure map is stored on generators only: first the quiver
//! vertices, then the quiver edges. Δ and the translation map extend
//! multiplicatively (the latter with the twisted product), ε through the
//! base action and S anti-multiplicatively.

mod checks;
mod digraph_hopf;
mod groupoids;

pub use checks::{
    check_all, check_antipode, check_bialgebroid, check_coring, check_translation, check_well_defined, is_hopf_ideal,
    Certifier,
};
pub use digraph_hopf::{dx_hopf, hx1_hopf, translation_table};
pub use groupoids::{arrow_element, function_hopf, groupoid_ring, small_groupoids, FiniteGroupoid, GroupoidArrow, GroupoidError};

use crate::linalg::{Func, Rational};
use crate::path_algebra::{unit, AlgElem, Balancing, PathWord, Quiver, RelationSet, Tensor2};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HopfError {
    #[error("calculus not Υ-flat: {0}")]
    NotUpsilonFlat(String),
    #[error("no antipode table")]
    NoAntipode,
    #[error("no translation table")]
    NoTranslation,
}

/// Reduction of words to a finite canonical basis of the quotient algebra,
/// for presentations whose quotient is known in closed form. `reduce` must be
/// the normal form of the quotient by the presentation's own relations: it
/// vanishes on every relation and is compatible with products.
#[derive(Clone)]
pub struct ClosedForm {
    pub basis: Vec<PathWord>,
    pub reduce: Arc<dyn Fn(&PathWord) -> AlgElem + Send + Sync>,
}

impl std::fmt::Debug for ClosedForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ClosedForm({} basis words)", self.basis.len())
    }
}

#[derive(Debug, Clone)]
pub struct HopfPresentation {
    pub name: String,
    pub quiver: Quiver,
    pub relations: RelationSet,
    pub base_labels: Vec<String>,
    pub balancing: Balancing,
    pub source: Vec<AlgElem>,
    pub target: Vec<AlgElem>,
    pub delta: Vec<Tensor2>,
    pub eps: Vec<Func>,
    pub antipode: Option<Vec<AlgElem>>,
    pub antipode_inv: Option<Vec<AlgElem>>,
    pub translation: Option<Vec<Tensor2>>,
    pub closed: Option<ClosedForm>,
}

impl HopfPresentation {
    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn gen_count(&self) -> usize {
        self.quiver.vertex_count() + self.quiver.edge_count()
    }

    pub fn base_count(&self) -> usize {
        self.base_labels.len()
    }

    pub fn gen_word(&self, g: usize) -> PathWord {
        let nv = self.vertex_count();
        if g < nv {
            PathWord::vertex(g)
        } else {
            self.quiver.edge_word(g - nv)
        }
    }

    pub fn gen_elem(&self, g: usize) -> AlgElem {
        AlgElem::word(self.gen_word(g))
    }

    pub fn gen_label(&self, g: usize) -> String {
        let nv = self.vertex_count();
        if g < nv {
            self.quiver.vertex_label(g).to_string()
        } else {
            self.quiver.edge(g - nv).label.clone()
        }
    }

    pub fn unit(&self) -> AlgElem {
        unit(&self.quiver)
    }

    pub fn relation_elements(&self) -> Vec<AlgElem> {
        self.relations.elements().cloned().collect()
    }

    /// s(φ) = Σ φ(i) s(f_i).
    pub fn s(&self, f: &Func) -> AlgElem {
        let mut out = AlgElem::zero();
        for (i, c) in f.0.iter().enumerate() {
            if !c.is_zero() {
                out.add_scaled(c, &self.source[i]);
            }
        }
        out
    }

    pub fn t(&self, f: &Func) -> AlgElem {
        let mut out = AlgElem::zero();
        for (i, c) in f.0.iter().enumerate() {
            if !c.is_zero() {
                out.add_scaled(c, &self.target[i]);
            }
        }
        out
    }

    fn edge_gen(&self, e: u32) -> usize {
        self.vertex_count() + e as usize
    }

    pub fn delta_word(&self, w: &PathWord) -> Tensor2 {
        if w.is_vertex() {
            return self.balancing.normalize(&self.delta[w.src()]);
        }
        let mut it = w.edges().iter();
        let first = self.delta[self.edge_gen(*it.next().unwrap())].clone();
        let prod = it.fold(first, |acc, &e| acc.mul(&self.delta[self.edge_gen(e)]));
        self.balancing.normalize(&prod)
    }

    pub fn delta_of(&self, x: &AlgElem) -> Tensor2 {
        let mut out = Tensor2::zero();
        for (w, c) in x.terms() {
            out.add_scaled(c, &self.delta_word(w));
        }
        out
    }

    /// ε(g₁⋯g_k) = ε(g₁)·Π_{j≥2} ε(g_j)(spt(src g_{j−1})).
    pub fn eps_word(&self, w: &PathWord) -> Func {
        if w.is_vertex() {
            return self.eps[w.src()].clone();
        }
        let es = w.edges();
        let mut scalar = Rational::one();
        for j in 1..es.len() {
            let prev = self.quiver.edge(es[j - 1] as usize).src;
            scalar = &scalar * self.eps[self.edge_gen(es[j])].at(self.balancing.spt[prev]);
            if scalar.is_zero() {
                return Func::zero(self.base_count());
            }
        }
        self.eps[self.edge_gen(es[0])].scale(&scalar)
    }

    pub fn eps_of(&self, x: &AlgElem) -> Func {
        let mut out = Func::zero(self.base_count());
        for (w, c) in x.terms() {
            out = &out + &self.eps_word(w).scale(c);
        }
        out
    }

    fn anti_word(&self, table: &[AlgElem], w: &PathWord) -> AlgElem {
        if w.is_vertex() {
            return table[w.src()].clone();
        }
        let mut out: Option<AlgElem> = None;
        for &e in w.edges().iter().rev() {
            let img = &table[self.edge_gen(e)];
            out = Some(match out {
                None => img.clone(),
                Some(acc) => acc.mul(img),
            });
        }
        out.unwrap()
    }

    fn anti_of(&self, table: &[AlgElem], x: &AlgElem) -> AlgElem {
        let mut out = AlgElem::zero();
        for (w, c) in x.terms() {
            out.add_scaled(c, &self.anti_word(table, w));
        }
        out
    }

    pub fn antipode_of(&self, x: &AlgElem) -> Result<AlgElem, HopfError> {
        self.antipode.as_ref().map(|t| self.anti_of(t, x)).ok_or(HopfError::NoAntipode)
    }

    pub fn antipode_inv_of(&self, x: &AlgElem) -> Result<AlgElem, HopfError> {
        self.antipode_inv.as_ref().map(|t| self.anti_of(t, x)).ok_or(HopfError::NoAntipode)
    }

    pub fn translation_word(&self, w: &PathWord) -> Result<Tensor2, HopfError> {
        let table = self.translation.as_ref().ok_or(HopfError::NoTranslation)?;
        if w.is_vertex() {
            return Ok(table[w.src()].clone());
        }
        let mut it = w.edges().iter();
        let first = table[self.edge_gen(*it.next().unwrap())].clone();
        let prod = it.fold(first, |acc, &e| acc.mul_op(&table[self.edge_gen(e)]));
        Ok(self.balancing.normalize_op(&prod))
    }

    pub fn translation_of(&self, x: &AlgElem) -> Result<Tensor2, HopfError> {
        let mut out = Tensor2::zero();
        for (w, c) in x.terms() {
            out.add_scaled(c, &self.translation_word(w)?);
        }
        Ok(out)
    }

    /// Same structure maps over the quotient by extra relations.
    pub fn quotient(&self, name: &str, family: &str, extra: Vec<(Vec<String>, AlgElem)>) -> HopfPresentation {
        let mut hp = self.clone();
        hp.name = name.into();
        for (idx, x) in extra {
            hp.relations.push(family, idx, x);
        }
        hp
    }

    pub fn to_json(&self) -> serde_json::Value {
        let q = &self.quiver;
        let tensor_json = |t: &Tensor2| {
            t.terms()
                .map(|((a, b), c)| serde_json::json!([c.to_string(), a.display(q), b.display(q)]))
                .collect::<Vec<_>>()
        };
        let gens: Vec<serde_json::Value> = (0..self.gen_count())
            .map(|g| {
                let mut o = serde_json::json!({
                    "generator": self.gen_label(g),
                    "delta": tensor_json(&self.delta[g]),
                    "eps": self.eps[g].0.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                });
                if let Some(s) = &self.antipode {
                    o["antipode"] = s[g].to_json(q);
                }
                o
            })
            .collect();
        serde_json::json!({
            "name": self.name,
            "base": self.base_labels,
            "vertices": q.vertex_labels(),
            "relations": self.relations.len(),
            "generators": gens,
        })
    }
}

pub(crate) fn sum<I: IntoIterator<Item = AlgElem>>(it: I) -> AlgElem {
    it.into_iter().fold(AlgElem::zero(), |a, b| &a + &b)
}
