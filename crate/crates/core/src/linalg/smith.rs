//! Smith normal form of integer matrices.

use super::{LinalgError, QMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmithResult {
    /// min(rows, cols) entries; nonzero ones first, each dividing the next.
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
}

impl SmithResult {
    /// Factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors
            .iter()
            .filter(|d| **d > BigInt::from(1))
            .cloned()
            .collect()
    }
}

pub fn smith_normal_form(m: &QMatrix) -> Result<SmithResult, LinalgError> {
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let mut row = Vec::with_capacity(m.cols());
        for j in 0..m.cols() {
            row.push(m.get(i, j).to_bigint().ok_or(LinalgError::NonInteger(i, j))?);
        }
        a.push(row);
    }
    Ok(smith_dense(a, m.cols()))
}

pub fn smith_dense(mut a: Vec<Vec<BigInt>>, cols: usize) -> SmithResult {
    let rows = a.len();
    let n = rows.min(cols);
    let mut t = 0;
    while t < n {
        // smallest nonzero entry in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    for j in t..cols {
                        let s = &q * &a[t][j];
                        a[i][j] -= s;
                    }
                    if !a[i][t].is_zero() {
                        a.swap(t, i);
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for row in a.iter_mut().skip(t) {
                        let s = &q * &row[t];
                        row[j] -= s;
                    }
                    if !a[t][j].is_zero() {
                        for row in a.iter_mut() {
                            row.swap(t, j);
                        }
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            // divisibility: fold any offending row into row t
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a[i][j].is_multiple_of(&a[t][t]));
            match bad {
                Some((i, _)) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            a[t][t] = -a[t][t].clone();
        }
        t += 1;
    }
    let factors: Vec<BigInt> = (0..n).map(|i| a[i][i].clone()).collect();
    let rank = factors.iter().filter(|d| !d.is_zero()).count();
    SmithResult { invariant_factors: factors, rank }
}
