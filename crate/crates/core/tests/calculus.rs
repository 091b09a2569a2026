mod common;

use common::random_digraph;
use digraph_hopf::calculus::Calculus;
use digraph_hopf::digraph::fixtures::{by_name, square};
use digraph_hopf::digraph::{double, parse_digraph, Digraph, DigraphError};
use digraph_hopf::linalg::{Func, Rational};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn graph(seed: u64) -> Digraph {
    random_digraph(&mut ChaCha8Rng::seed_from_u64(seed), 8, 20)
}

fn func(vals: &[i64], n: usize) -> Func {
    Func((0..n).map(|i| Rational::from_int(vals[i % vals.len()])).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn all_identities_hold(seed in any::<u64>()) {
        let d = graph(seed);
        let r = Calculus::new(&d).check_all();
        prop_assert!(r.all_pass(), "{:?}", r.failures().next());
    }

    #[test]
    fn d0_is_the_edge_difference(seed in any::<u64>(), vals in proptest::collection::vec(-5i64..6, 1..8)) {
        let d = graph(seed);
        let c = Calculus::new(&d);
        let f = func(&vals, d.vertex_count());
        let df = c.d0(&f);
        for (e, &(a, b)) in d.edge_list().iter().enumerate() {
            prop_assert_eq!(&df.0[e], &(f.at(b) - f.at(a)));
        }
        prop_assert!(c.d1(&df).0.values().all(|x| x.is_zero()));
    }

    #[test]
    fn omega2_dimension_by_counting(seed in any::<u64>()) {
        let d = graph(seed);
        let n = d.vertex_count();
        let mut paths = 0;
        let mut killed = 0;
        for a in 0..n {
            for c in 0..n {
                let mids = (0..n).filter(|&b| d.has_edge(a, b) && d.has_edge(b, c)).count();
                paths += mids;
                if mids > 0 && a != c && !d.has_edge(a, c) {
                    killed += 1;
                }
            }
        }
        prop_assert_eq!(Calculus::new(&d).dim2(), paths - killed);
    }

    #[test]
    fn double_quiver_sizes(seed in any::<u64>()) {
        let d = graph(seed);
        let (n, m) = (d.vertex_count(), d.edge_count());
        let dq = double(&d);
        prop_assert_eq!(dq.quiver.vertex_count(), n * n);
        prop_assert_eq!(dq.family_counts(), [m * m, m * m, m * n, m * n]);
    }

    #[test]
    fn json_roundtrip(seed in any::<u64>()) {
        let d = graph(seed);
        let back = parse_digraph(&d.to_json().to_string()).unwrap();
        prop_assert_eq!(back.edge_list(), d.edge_list());
        prop_assert_eq!(back.vertices(), d.vertices());
    }
}

#[test]
fn malformed_digraphs_rejected() {
    let bad = [
        (r#"{"vertices": ["a", "a"], "edges": []}"#, "duplicate"),
        (r#"{"vertices": ["a"], "edges": [["a", "a"]]}"#, "loop"),
        (r#"{"vertices": ["a", "b"], "edges": [["a", "c"]]}"#, "unknown"),
        (r#"{"vertices": ["a", "b"], "edges": [["a", "b"], ["b", "a"]]}"#, "2-cycle"),
        (r#"{"vertices": ["a", "b"], "edges": [["a", "b"], ["a", "b"]]}"#, "duplicate edge"),
        (r#"{"vertices": [""], "edges": []}"#, "empty"),
        (r#"{"edges": []}"#, "schema"),
    ];
    for (text, what) in bad {
        assert!(parse_digraph(text).is_err(), "{what} accepted");
    }
    assert!(matches!(parse_digraph(r#"{"vertices": ["a"], "edges": [["a", "a"]]}"#), Err(DigraphError::Loop(_))));
    let ok = parse_digraph(r#"{"vertices": ["a", "b"], "edges": [["a", "b"], ["b", "a"]], "allow_two_cycles": true}"#);
    assert!(Calculus::new(&ok.unwrap()).check_all().all_pass());
}

#[test]
fn named_fixtures() {
    for name in ["a2", "t", "q", "c3", "c6"] {
        assert!(Calculus::new(&by_name(name).unwrap()).check_all().all_pass(), "{name}");
    }
    assert!(by_name("c2").is_none());
    assert_eq!(Calculus::new(&square()).dim2(), 1);
}
