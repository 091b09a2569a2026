//! Functions on a finite point set, i.e. elements of 𝕂(X).

use super::Rational;
use serde::Serialize;
use std::ops::{Add, Mul, Neg, Sub};

/// Dense coefficient vector indexed by point index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct Func(pub Vec<Rational>);

impl Func {
    pub fn zero(n: usize) -> Self {
        Func(vec![Rational::zero(); n])
    }

    pub fn one(n: usize) -> Self {
        Func(vec![Rational::one(); n])
    }

    /// The indicator f_p.
    pub fn delta(n: usize, p: usize) -> Self {
        let mut f = Self::zero(n);
        f.0[p] = Rational::one();
        f
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn at(&self, p: usize) -> &Rational {
        &self.0[p]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Func(self.0.iter().map(|x| x * c).collect())
    }
}

impl Add for &Func {
    type Output = Func;
    fn add(self, o: &Func) -> Func {
        assert_eq!(self.len(), o.len());
        Func(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Func {
    type Output = Func;
    fn sub(self, o: &Func) -> Func {
        assert_eq!(self.len(), o.len());
        Func(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

/// Pointwise product.
impl Mul for &Func {
    type Output = Func;
    fn mul(self, o: &Func) -> Func {
        assert_eq!(self.len(), o.len());
        Func(self.0.iter().zip(&o.0).map(|(a, b)| a * b).collect())
    }
}

impl Neg for &Func {
    type Output = Func;
    fn neg(self) -> Func {
        Func(self.0.iter().map(|a| -a).collect())
    }
}
