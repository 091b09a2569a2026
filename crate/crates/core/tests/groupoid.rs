mod common;

use common::random_digraph;
use digraph_hopf::digraph::fixtures::{a2, cycle, square, triangle};
use digraph_hopf::digraph::{squares, triangles, Digraph};
use digraph_hopf::groupoid::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random walk in the underlying undirected graph, with backtracking allowed.
fn random_word(d: &Digraph, rng: &mut ChaCha8Rng, len: usize) -> GroupoidWord {
    let mut v = rng.gen_range(0..d.vertex_count());
    let start = v;
    let mut letters = Vec::new();
    for _ in 0..len {
        let mut opts: Vec<(usize, i8, usize)> = d.out_nbrs(v).iter().map(|&t| (d.edge_id(v, t).unwrap(), 1, t)).collect();
        opts.extend(d.in_nbrs(v).iter().map(|&s| (d.edge_id(s, v).unwrap(), -1, s)));
        if opts.is_empty() {
            break;
        }
        let (e, s, next) = opts[rng.gen_range(0..opts.len())];
        letters.push((e, s));
        v = next;
    }
    GroupoidWord::new(d, start, letters).unwrap()
}

fn components(d: &Digraph) -> usize {
    let n = d.vertex_count();
    let mut seen = vec![false; n];
    let mut count = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        count += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(x) = stack.pop() {
            for &y in d.out_nbrs(x).iter().chain(d.in_nbrs(x)) {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    count
}

fn graph(seed: u64) -> Digraph {
    random_digraph(&mut ChaCha8Rng::seed_from_u64(seed), 6, 10)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn free_reduce_idempotent_and_keeps_ends(seed in any::<u64>(), len in 0usize..12) {
        let d = graph(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let w = random_word(&d, &mut rng, len);
        let r = free_reduce(&w);
        prop_assert_eq!(free_reduce(&r), r.clone());
        prop_assert_eq!((r.start, r.end(&d)), (w.start, w.end(&d)));
        prop_assert!(r.letters.windows(2).all(|p| !(p[0].0 == p[1].0 && p[0].1 == -p[1].1)));
    }

    #[test]
    fn printed_words_parse_back(seed in any::<u64>(), len in 0usize..8) {
        let d = graph(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 2);
        let w = random_word(&d, &mut rng, len);
        prop_assert_eq!(parse_word(&d, &w.display(&d)).unwrap(), w);
    }

    #[test]
    fn word_equal_symmetric_with_replayable_certificates(seed in any::<u64>(), use_square in any::<bool>()) {
        let d = if use_square { square() } else { triangle() };
        let pres = fundamental_groupoid(&d);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (w1, w2) = (random_word(&d, &mut rng, 3), random_word(&d, &mut rng, 3));
        prop_assume!(w1.start == w2.start && w1.end(&d) == w2.end(&d));
        let there = word_equal(&pres, &w1, &w2, 5).unwrap();
        let back = word_equal(&pres, &w2, &w1, 5).unwrap();
        prop_assert_eq!(matches!(there, WordEq::Equal(_)), matches!(back, WordEq::Equal(_)));
        if let WordEq::Equal(steps) = there {
            prop_assert_eq!(replay(&pres, &w1, &steps).unwrap(), free_reduce(&w2));
        }
        prop_assert!(matches!(word_equal(&pres, &w1, &w1, 0).unwrap(), WordEq::Equal(_)));
    }

    #[test]
    fn tietze_keeps_abelianization(seed in any::<u64>()) {
        let d = graph(seed);
        let pres = fundamental_groupoid(&d);
        let gp = pi1_presentation(&pres, d.name(0)).unwrap();
        let simple = tietze_simplify(&gp, 50);
        prop_assert!(simple.generators.len() <= gp.generators.len());
        prop_assert_eq!(abelianization(&simple), abelianization(&gp));
    }

    #[test]
    fn isotropy_abelianization_matches_h1_on_connected(seed in any::<u64>()) {
        let d = graph(seed);
        prop_assume!(components(&d) == 1);
        let pres = fundamental_groupoid(&d);
        let gp = pi1_presentation(&pres, d.name(d.vertex_count() - 1)).unwrap();
        prop_assert_eq!(abelianization(&gp), h1(&pres));
    }

    #[test]
    fn cycle_rank_without_two_cells(seed in any::<u64>()) {
        let d = graph(seed);
        prop_assume!(triangles(&d).is_empty() && squares(&d).is_empty());
        let ab = h1(&fundamental_groupoid(&d));
        prop_assert!(ab.torsion.is_empty());
        prop_assert_eq!(ab.free_rank, d.edge_count() + components(&d) - d.vertex_count());
    }
}

#[test]
fn spec_word_examples() {
    let d = cycle(5);
    let e = |a: usize, b: usize| d.edge_id(a, b).unwrap();
    let w = GroupoidWord { start: 0, letters: vec![(e(0, 1), 1), (e(0, 1), -1)] };
    assert!(free_reduce(&w).is_empty());
    let w = GroupoidWord { start: 0, letters: vec![(e(0, 1), 1), (e(1, 2), 1), (e(1, 2), -1), (e(0, 1), -1)] };
    assert_eq!(free_reduce(&w), GroupoidWord::identity(0));
}

#[test]
fn loop_in_cycle_stays_unknown() {
    let d = cycle(5);
    let pres = fundamental_groupoid(&d);
    let lp = parse_word(&d, "(v0<v4).(v4<v3).(v3<v2).(v2<v1).(v1<v0)").unwrap();
    for cap in [5, 8, 12] {
        assert_eq!(word_equal(&pres, &lp, &GroupoidWord::identity(0), cap).unwrap(), WordEq::Unknown);
    }
}

#[test]
fn presentations_serialize() {
    let pres = fundamental_groupoid(&square());
    let j = pres.to_json();
    assert_eq!(j["objects"].as_array().unwrap().len(), 4);
    assert_eq!(j["relators"][0], "(q'<p)^-1.(r<q')^-1.(r<q).(q<p)");
    let gp = pi1_presentation(&free_groupoid(&a2()), "b").unwrap();
    assert_eq!(gp.to_json()["generators"].as_array().unwrap().len(), 0);
    assert_eq!(h1(&fundamental_groupoid(&cycle(5))).to_json(), serde_json::json!({"torsion": [], "free_rank": 1}));
}

#[test]
fn realized_square_groupoid_is_simply_connected() {
    let (g, cls) = realize(&fundamental_groupoid(&square()), 5).unwrap();
    assert_eq!(g.arrow_count(), 16);
    for a in 0..4 {
        for b in 0..4 {
            assert_eq!(g.arrows.iter().filter(|x| x.src == a && x.dst == b).count(), 1);
        }
    }
    let x = parse_word(&square(), "(r<q).(q<p)").unwrap();
    let y = parse_word(&square(), "(r<q').(q'<p)").unwrap();
    assert_eq!(cls.class_of(&x), cls.class_of(&y));
    assert!(realize(&fundamental_groupoid(&cycle(5)), 6).is_none());
}
