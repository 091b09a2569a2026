mod common;

use common::{abs_all, rank_by_minors, snf_by_minors};
use digraph_hopf::linalg::*;
use num_bigint::BigInt;
use proptest::prelude::*;

fn mat(rows: usize, cols: usize, r: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    proptest::collection::vec(proptest::collection::vec(-r..=r, cols), 1..=rows)
}

fn big(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

proptest! {
    #[test]
    fn smith_matches_minor_gcds(m in mat(4, 4, 9)) {
        let snf = smith_normal_form(&QMatrix::from_ints(&m)).unwrap();
        let nonzero: Vec<BigInt> = snf.invariant_factors.iter().filter(|x| **x != BigInt::from(0)).cloned().collect();
        prop_assert_eq!(abs_all(&nonzero), snf_by_minors(&big(&m), m[0].len()));
        prop_assert_eq!(snf.rank, nonzero.len());
        for w in nonzero.windows(2) {
            prop_assert_eq!(&w[1] % &w[0], BigInt::from(0));
        }
    }

    #[test]
    fn rank_matches_minors(m in mat(5, 5, 2)) {
        prop_assert_eq!(rank(&QMatrix::from_ints(&m)), rank_by_minors(&big(&m), m[0].len()));
    }

    #[test]
    fn rational_text_roundtrip(n in -10_000i64..10_000, d in 1i64..500) {
        let q = Rational::new(n, d);
        prop_assert_eq!(q.to_string().parse::<Rational>().unwrap(), q);
    }

    #[test]
    fn echelon_expresses_members(m in mat(4, 5, 3), c in proptest::collection::vec(-3i64..4, 4)) {
        let mut eb = EchelonBasis::with_tracking();
        let rows: Vec<QVector> = m.iter().map(|r| r.iter().enumerate().filter(|(_, x)| **x != 0).map(|(j, &x)| (j, Rational::from_int(x))).collect()).collect();
        for (k, r) in rows.iter().enumerate() {
            eb.insert_tagged(r.clone(), k);
        }
        let mut target = QVector::new();
        for (k, r) in rows.iter().enumerate() {
            for (j, x) in r {
                let e = target.entry(*j).or_insert_with(Rational::zero);
                *e += &(x * &Rational::from_int(c[k % c.len()]));
            }
        }
        target.retain(|_, x| !x.is_zero());
        let coeffs = eb.express(&target).expect("member of the span");
        let mut back = QVector::new();
        for (k, a) in coeffs {
            for (j, x) in &rows[k] {
                let e = back.entry(*j).or_insert_with(Rational::zero);
                *e += &(x * &a);
            }
        }
        back.retain(|_, x| !x.is_zero());
        prop_assert_eq!(back, target);
    }
}

#[test]
fn known_smith_forms() {
    let snf = smith_normal_form(&QMatrix::from_ints(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]])).unwrap();
    assert_eq!(snf.invariant_factors, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
    assert_eq!(snf.torsion().len(), 3);
    let zero = smith_normal_form(&QMatrix::zeros(2, 3)).unwrap();
    assert_eq!(zero.rank, 0);
    let half = QMatrix::from_dense(&[vec![Rational::new(1, 2)]]);
    assert!(smith_normal_form(&half).is_err());
}
