//! Oracles shared by the integration and acceptance tests. None of them call
//! into the library code they are used to check.
#![allow(dead_code)]

use digraph_hopf::digraph::Digraph;
use digraph_hopf::hopf::FiniteGroupoid;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

/// Random simple digraph without 2-cycles on at most `max_v` vertices and
/// `max_e` edges.
pub fn random_digraph<R: Rng>(rng: &mut R, max_v: usize, max_e: usize) -> Digraph {
    let n = rng.gen_range(1..=max_v);
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            pairs.push(if rng.gen_bool(0.5) { (a, b) } else { (b, a) });
        }
    }
    pairs.shuffle(rng);
    let m = rng.gen_range(0..=pairs.len().min(max_e));
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let edges: Vec<(String, String)> = pairs[..m].iter().map(|&(a, b)| (names[a].clone(), names[b].clone())).collect();
    Digraph::new(&names, &edges, false).expect("valid by construction")
}

/// Determinant by cofactor expansion along the first row.
pub fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect()).collect();
        let term = &m[0][j] * det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn minors(m: &[Vec<BigInt>], cols: usize, k: usize) -> Vec<BigInt> {
    let mut out = Vec::new();
    for rs in subsets(m.len(), k) {
        for cs in subsets(cols, k) {
            let sub: Vec<Vec<BigInt>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j].clone()).collect()).collect();
            out.push(det(&sub));
        }
    }
    out
}

/// Invariant factors d_k = g_k / g_{k−1}, g_k the gcd of all k×k minors.
pub fn snf_by_minors(m: &[Vec<BigInt>], cols: usize) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut prev = BigInt::from(1);
    for k in 1..=m.len().min(cols) {
        let g = minors(m, cols, k).iter().fold(BigInt::zero(), |a, b| a.gcd(b));
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

/// Largest k with a nonzero k×k minor.
pub fn rank_by_minors(m: &[Vec<BigInt>], cols: usize) -> usize {
    (1..=m.len().min(cols)).rev().find(|&k| minors(m, cols, k).iter().any(|d| !d.is_zero())).unwrap_or(0)
}

pub fn abs_all(v: &[BigInt]) -> Vec<BigInt> {
    v.iter().map(|x| x.abs()).collect()
}

/// Object components of a groupoid, by union-find over arrow endpoints.
pub fn components(g: &FiniteGroupoid) -> Vec<usize> {
    let n = g.objects.len();
    let mut p: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    for a in &g.arrows {
        let (x, y) = (find(&mut p, a.src), find(&mut p, a.dst));
        p[x.max(y)] = x.min(y);
    }
    (0..n).map(|x| find(&mut p, x)).collect()
}

/// The complement of (S0, S1) is a subgroupoid: closed under composition,
/// inverses, and containing identities at its objects. Checked from the
/// composition table by brute force over pairs.
pub fn complement_is_subgroupoid(g: &FiniteGroupoid, s0: &[bool], s1: &[bool]) -> bool {
    let na = g.arrows.len();
    let keep_a: Vec<bool> = s1.iter().map(|x| !x).collect();
    let keep_o: Vec<bool> = s0.iter().map(|x| !x).collect();
    for a in (0..na).filter(|&a| keep_a[a]) {
        if !keep_o[g.arrows[a].src] || !keep_o[g.arrows[a].dst] {
            return false;
        }
        // inverse: the unique b with a∘b an identity
        let inv = (0..na).find(|&b| g.compose(a, b).is_some_and(|c| g.arrows[c].src == g.arrows[c].dst && g.compose(c, c) == Some(c) && g.arrows[b].dst == g.arrows[a].src));
        if !inv.is_some_and(|b| keep_a[b]) {
            return false;
        }
        for b in (0..na).filter(|&b| keep_a[b]) {
            if let Some(c) = g.compose(a, b) {
                if !keep_a[c] {
                    return false;
                }
            }
        }
    }
    for o in (0..g.objects.len()).filter(|&o| keep_o[o]) {
        let id = (0..na).find(|&c| g.arrows[c].src == o && g.arrows[c].dst == o && g.compose(c, c) == Some(c));
        if !id.is_some_and(|c| keep_a[c]) {
            return false;
        }
    }
    true
}
