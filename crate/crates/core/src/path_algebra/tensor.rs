//! Tensor products over an idempotent base 𝕂(X).
//!
//! The base acts on the path algebra through sums of vertex idempotents, so
//! every quiver vertex v lies under exactly one s(f_i) (i = `spt[v]`) and
//! exactly one t̄(f_j) (j = `tpt[v]`). Balanced tensors then have a canonical
//! basis of matched word pairs.

use super::{AlgElem, PathWord};
use crate::linalg::Rational;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Balancing {
    pub spt: Vec<usize>,
    pub tpt: Vec<usize>,
}

impl Balancing {
    /// Pair is nonzero in H ⊗_A H, where t̄(a)•x ⊗ y = x ⊗ s(a)•y.
    pub fn matched(&self, x: &PathWord, y: &PathWord) -> bool {
        self.tpt[x.dst()] == self.spt[y.dst()]
    }

    /// Pair is nonzero in H ⊗_{A^op} H, where x•t̄(a) ⊗ y = x ⊗ t̄(a)•y.
    pub fn matched_op(&self, x: &PathWord, y: &PathWord) -> bool {
        self.tpt[x.src()] == self.tpt[y.dst()]
    }

    pub fn tensor(&self, x: &AlgElem, y: &AlgElem) -> Tensor2 {
        let mut t = Tensor2::zero();
        for (a, c) in x.terms() {
            for (b, d) in y.terms() {
                if self.matched(a, b) {
                    t.add_term(a.clone(), b.clone(), c * d);
                }
            }
        }
        t
    }

    pub fn tensor_op(&self, x: &AlgElem, y: &AlgElem) -> Tensor2 {
        let mut t = Tensor2::zero();
        for (a, c) in x.terms() {
            for (b, d) in y.terms() {
                if self.matched_op(a, b) {
                    t.add_term(a.clone(), b.clone(), c * d);
                }
            }
        }
        t
    }

    pub fn tensor3(&self, x: &AlgElem, y: &AlgElem, z: &AlgElem) -> Tensor3 {
        let mut t = Tensor3::zero();
        for (a, c) in x.terms() {
            for (b, d) in y.terms() {
                if !self.matched(a, b) {
                    continue;
                }
                for (e, f) in z.terms() {
                    if self.matched(b, e) {
                        t.add_term(a.clone(), b.clone(), e.clone(), &(c * d) * f);
                    }
                }
            }
        }
        t
    }

    pub fn normalize(&self, t: &Tensor2) -> Tensor2 {
        t.terms().filter(|((a, b), _)| self.matched(a, b)).map(|((a, b), c)| ((a.clone(), b.clone()), c.clone())).collect()
    }

    pub fn normalize3(&self, t: &Tensor3) -> Tensor3 {
        let mut out = Tensor3::zero();
        for ((a, b, c), v) in t.terms() {
            if self.matched(a, b) && self.matched(b, c) {
                out.add_term(a.clone(), b.clone(), c.clone(), v.clone());
            }
        }
        out
    }

    pub fn normalize_op(&self, t: &Tensor2) -> Tensor2 {
        t.terms().filter(|((a, b), _)| self.matched_op(a, b)).map(|((a, b), c)| ((a.clone(), b.clone()), c.clone())).collect()
    }
}

/// Sum of word pairs with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Tensor2 {
    terms: BTreeMap<(PathWord, PathWord), Rational>,
}

/// The A-balanced tensor square in matched normal form.
pub type BalancedTensor = Tensor2;

impl Tensor2 {
    pub fn zero() -> Self {
        Self::default()
    }

    /// x ⊗ y over the ground field, with no balancing applied.
    pub fn outer(x: &AlgElem, y: &AlgElem) -> Tensor2 {
        let mut t = Tensor2::zero();
        for (a, c) in x.terms() {
            for (b, d) in y.terms() {
                t.add_term(a.clone(), b.clone(), c * d);
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(PathWord, PathWord), &Rational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, a: PathWord, b: PathWord, c: Rational) {
        if c.is_zero() {
            return;
        }
        let k = (a, b);
        let e = self.terms.entry(k.clone()).or_insert_with(Rational::zero);
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn add_scaled(&mut self, c: &Rational, o: &Tensor2) {
        for ((a, b), v) in &o.terms {
            self.add_term(a.clone(), b.clone(), c * v);
        }
    }

    pub fn sub(&self, o: &Tensor2) -> Tensor2 {
        let mut t = self.clone();
        t.add_scaled(&-Rational::one(), o);
        t
    }

    pub fn add(&self, o: &Tensor2) -> Tensor2 {
        let mut t = self.clone();
        t.add_scaled(&Rational::one(), o);
        t
    }

    /// Factorwise product (x⊗y)(x'⊗y') = xx' ⊗ yy'.
    pub fn mul(&self, o: &Tensor2) -> Tensor2 {
        let mut t = Tensor2::zero();
        for ((a, b), c) in &self.terms {
            for ((a2, b2), d) in &o.terms {
                if let (Some(x), Some(y)) = (a.compose(a2), b.compose(b2)) {
                    t.add_term(x, y, c * d);
                }
            }
        }
        t
    }

    /// Twisted product (x⊗y)(x'⊗y') = xx' ⊗ y'y used for the translation map.
    pub fn mul_op(&self, o: &Tensor2) -> Tensor2 {
        let mut t = Tensor2::zero();
        for ((a, b), c) in &self.terms {
            for ((a2, b2), d) in &o.terms {
                if let (Some(x), Some(y)) = (a.compose(a2), b2.compose(b)) {
                    t.add_term(x, y, c * d);
                }
            }
        }
        t
    }

    /// Applies linear maps to each factor.
    pub fn map2(&self, f: impl Fn(&PathWord) -> AlgElem, g: impl Fn(&PathWord) -> AlgElem) -> Tensor2 {
        let mut t = Tensor2::zero();
        for ((a, b), c) in &self.terms {
            let (fa, gb) = (f(a), g(b));
            for (x, u) in fa.terms() {
                for (y, v) in gb.terms() {
                    t.add_term(x.clone(), y.clone(), &(c * u) * v);
                }
            }
        }
        t
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(|(a, b)| a.len().max(b.len())).max().unwrap_or(0)
    }
}

impl FromIterator<((PathWord, PathWord), Rational)> for Tensor2 {
    fn from_iter<I: IntoIterator<Item = ((PathWord, PathWord), Rational)>>(it: I) -> Self {
        let mut t = Tensor2::zero();
        for ((a, b), c) in it {
            t.add_term(a, b, c);
        }
        t
    }
}

/// Triple tensors, for coassociativity.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Tensor3 {
    terms: BTreeMap<(PathWord, PathWord, PathWord), Rational>,
}

impl Tensor3 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(PathWord, PathWord, PathWord), &Rational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, a: PathWord, b: PathWord, c: PathWord, v: Rational) {
        if v.is_zero() {
            return;
        }
        let k = (a, b, c);
        let e = self.terms.entry(k.clone()).or_insert_with(Rational::zero);
        *e += &v;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn sub(&self, o: &Tensor3) -> Tensor3 {
        let mut t = self.clone();
        for ((a, b, c), v) in &o.terms {
            t.add_term(a.clone(), b.clone(), c.clone(), -v);
        }
        t
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(|(a, b, c)| a.len().max(b.len()).max(c.len())).max().unwrap_or(0)
    }
}
