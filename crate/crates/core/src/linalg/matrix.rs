//! Sparse matrices over ℚ, row reduction and span membership.

use super::Rational;
use std::collections::BTreeMap;

/// Sparse vector: column index to nonzero entry.
pub type QVector = BTreeMap<usize, Rational>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected} columns, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("entry ({0}, {1}) is not an integer")]
    NonInteger(usize, usize),
    #[error("index ({0}, {1}) out of range")]
    OutOfRange(usize, usize),
}

/// Row-major sparse matrix. Stored rows never contain zero entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: Vec<QVector>,
    cols: usize,
}

pub(crate) fn axpy(target: &mut QVector, c: &Rational, src: &QVector) {
    for (k, v) in src {
        let e = target.entry(*k).or_insert_with(Rational::zero);
        *e += &(c * v);
        if e.is_zero() {
            target.remove(k);
        }
    }
}

pub(crate) fn scale(v: &mut QVector, c: &Rational) {
    for x in v.values_mut() {
        *x = &*x * c;
    }
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows: vec![QVector::new(); rows], cols }
    }

    pub fn from_rows(cols: usize, rows: Vec<QVector>) -> Result<Self, LinalgError> {
        for (i, r) in rows.iter().enumerate() {
            if let Some((&k, _)) = r.iter().next_back() {
                if k >= cols {
                    return Err(LinalgError::OutOfRange(i, k));
                }
            }
        }
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Ok(QMatrix { rows, cols })
    }

    pub fn from_dense(d: &[Vec<Rational>]) -> Self {
        let cols = d.first().map_or(0, |r| r.len());
        let rows = d
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged dense matrix");
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(j, v)| (j, v.clone()))
                    .collect()
            })
            .collect();
        QMatrix { rows, cols }
    }

    pub fn from_ints(d: &[Vec<i64>]) -> Self {
        let d: Vec<Vec<Rational>> = d
            .iter()
            .map(|r| r.iter().map(|&x| Rational::from_int(x)).collect())
            .collect();
        Self::from_dense(&d)
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &QVector {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.rows[i].get(&j).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) -> Result<(), LinalgError> {
        if i >= self.rows.len() || j >= self.cols {
            return Err(LinalgError::OutOfRange(i, j));
        }
        if v.is_zero() {
            self.rows[i].remove(&j);
        } else {
            self.rows[i].insert(j, v);
        }
        Ok(())
    }

    pub fn push_row(&mut self, r: QVector) -> Result<(), LinalgError> {
        if let Some((&k, _)) = r.iter().next_back() {
            if k >= self.cols {
                return Err(LinalgError::OutOfRange(self.rows.len(), k));
            }
        }
        self.rows.push(r.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        Ok(())
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        (0..self.rows())
            .map(|i| (0..self.cols).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }
}

/// Reduced row-echelon form. Zero rows are moved to the bottom; the row count
/// is preserved.
pub fn rref(m: &QMatrix) -> (QMatrix, usize, Vec<usize>) {
    let mut rows = m.rows.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| rows[i].contains_key(&c)) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][&c].recip();
        scale(&mut rows[r], &inv);
        let piv = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r {
                if let Some(f) = row.get(&c).cloned() {
                    axpy(row, &-f, &piv);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (QMatrix { rows, cols: m.cols }, r, pivots)
}

pub fn rank(m: &QMatrix) -> usize {
    let mut b = EchelonBasis::new();
    for r in &m.rows {
        b.insert(r.clone());
    }
    b.rank()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpanDecision {
    /// Sparse coefficients over the basis rows.
    Yes(BTreeMap<usize, Rational>),
    No,
}

/// Decides whether `v` is a combination of the rows of `basis`.
pub fn in_span(v: &QVector, basis: &QMatrix) -> Result<SpanDecision, LinalgError> {
    if let Some((&k, _)) = v.iter().next_back() {
        if k >= basis.cols {
            return Err(LinalgError::Dimension { expected: basis.cols, got: k + 1 });
        }
    }
    let mut eb = EchelonBasis::with_tracking();
    for (i, r) in basis.rows.iter().enumerate() {
        eb.insert_tagged(r.clone(), i);
    }
    Ok(match eb.express(v) {
        Some(c) => SpanDecision::Yes(c),
        None => SpanDecision::No,
    })
}

/// Incrementally built basis in reduced echelon form: every pivot column is
/// zero in all other stored rows, so `reduce` is a well-defined linear map.
#[derive(Debug, Clone, Default)]
pub struct EchelonBasis {
    rows: Vec<QVector>,
    combos: Option<Vec<QVector>>,
    pivot_of: BTreeMap<usize, usize>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    /// Tracks, for every stored row, its expression in the inserted rows.
    pub fn with_tracking() -> Self {
        EchelonBasis { combos: Some(Vec::new()), ..Self::default() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivot_of.keys().copied()
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.pivot_of.contains_key(&c)
    }

    fn reduce_tracked(&self, mut v: QVector, mut combo: Option<QVector>) -> (QVector, Option<QVector>) {
        loop {
            let hit = v.iter().find(|(k, _)| self.pivot_of.contains_key(k)).map(|(k, x)| (*k, x.clone()));
            let Some((k, x)) = hit else { break };
            let i = self.pivot_of[&k];
            axpy(&mut v, &-&x, &self.rows[i]);
            if let (Some(c), Some(cs)) = (combo.as_mut(), self.combos.as_ref()) {
                axpy(c, &-&x, &cs[i]);
            }
        }
        (v, combo)
    }

    /// Remainder of `v` modulo the span; zero iff `v` is in the span.
    pub fn reduce(&self, v: QVector) -> QVector {
        self.reduce_tracked(v, None).0
    }

    pub fn insert(&mut self, v: QVector) -> bool {
        self.insert_with(v, None)
    }

    pub fn insert_tagged(&mut self, v: QVector, tag: usize) -> bool {
        self.insert_with(v, Some(tag))
    }

    fn insert_with(&mut self, v: QVector, tag: Option<usize>) -> bool {
        let combo = match (&self.combos, tag) {
            (Some(_), Some(t)) => Some(QVector::from([(t, Rational::one())])),
            (Some(_), None) => Some(QVector::new()),
            _ => None,
        };
        let (mut v, mut combo) = self.reduce_tracked(v, combo);
        let Some((&p, lead)) = v.iter().next() else { return false };
        let inv = lead.recip();
        scale(&mut v, &inv);
        if let Some(c) = combo.as_mut() {
            scale(c, &inv);
        }
        for i in 0..self.rows.len() {
            if let Some(f) = self.rows[i].get(&p).cloned() {
                axpy(&mut self.rows[i], &-&f, &v);
                if let (Some(cs), Some(c)) = (self.combos.as_mut(), combo.as_ref()) {
                    axpy(&mut cs[i], &-&f, c);
                }
            }
        }
        self.pivot_of.insert(p, self.rows.len());
        self.rows.push(v);
        if let (Some(cs), Some(c)) = (self.combos.as_mut(), combo) {
            cs.push(c);
        }
        true
    }

    /// Coefficients over inserted tags reproducing `v`, if `v` is in the span.
    /// Requires tracking.
    pub fn express(&self, v: &QVector) -> Option<QVector> {
        let cs = self.combos.as_ref().expect("express needs a tracking basis");
        let mut out = QVector::new();
        let mut rest = v.clone();
        loop {
            let hit = rest.iter().find(|(k, _)| self.pivot_of.contains_key(k)).map(|(k, x)| (*k, x.clone()));
            let Some((k, x)) = hit else { break };
            let i = self.pivot_of[&k];
            axpy(&mut rest, &-&x, &self.rows[i]);
            axpy(&mut out, &x, &cs[i]);
        }
        rest.is_empty().then_some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn rref_identity_and_dependent() {
        let i2 = QMatrix::from_ints(&[vec![1, 0], vec![0, 1]]);
        let (r, k, p) = rref(&i2);
        assert_eq!((r, k, p), (i2.clone(), 2, vec![0, 1]));
        let m = QMatrix::from_ints(&[vec![1, 2], vec![2, 4]]);
        let (r, k, _) = rref(&m);
        assert_eq!(k, 1);
        assert_eq!(r, QMatrix::from_ints(&[vec![1, 2], vec![0, 0]]));
    }

    #[test]
    fn in_span_basics() {
        let b = QMatrix::from_ints(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 2, 1]]);
        assert_eq!(in_span(&QVector::new(), &b).unwrap(), SpanDecision::Yes(QVector::new()));
        assert_eq!(
            in_span(b.row(0), &b).unwrap(),
            SpanDecision::Yes(QVector::from([(0, q(1))]))
        );
        let v = QVector::from([(0, q(1))]);
        assert_eq!(in_span(&v, &b).unwrap(), SpanDecision::No);
        let long = QVector::from([(5, q(1))]);
        assert!(in_span(&long, &b).is_err());
    }

    fn mat(rows: usize, cols: usize) -> impl Strategy<Value = QMatrix> {
        proptest::collection::vec(proptest::collection::vec(-3i64..4, cols), rows)
            .prop_map(|d| QMatrix::from_ints(&d))
    }

    proptest! {
        #[test]
        fn rref_idempotent(m in mat(4, 5)) {
            let (r, k, _) = rref(&m);
            let (r2, k2, _) = rref(&r);
            prop_assert_eq!(r, r2);
            prop_assert_eq!(k, k2);
            prop_assert_eq!(k, rank(&m));
        }

        #[test]
        fn rref_pivots_clean(m in mat(5, 4)) {
            let (r, k, piv) = rref(&m);
            for (i, &c) in piv.iter().enumerate() {
                prop_assert!(r.get(i, c).is_one());
                for j in 0..r.rows() {
                    if j != i { prop_assert!(r.get(j, c).is_zero()); }
                }
            }
            for i in 0..m.rows() {
                prop_assert_eq!(in_span(m.row(i), &r).unwrap() != SpanDecision::No, true);
            }
            prop_assert_eq!(piv.len(), k);
        }

        #[test]
        fn in_span_recombines(m in mat(3, 5), c in proptest::collection::vec(-3i64..4, 3)) {
            let mut v = QVector::new();
            for (i, ci) in c.iter().enumerate() {
                axpy(&mut v, &q(*ci), m.row(i));
            }
            match in_span(&v, &m).unwrap() {
                SpanDecision::Yes(coef) => {
                    let mut w = QVector::new();
                    for (i, ci) in &coef { axpy(&mut w, ci, m.row(*i)); }
                    prop_assert_eq!(w, v);
                }
                SpanDecision::No => prop_assert!(false, "combination not found"),
            }
        }
    }
}
