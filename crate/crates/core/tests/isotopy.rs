mod common;

use digraph_hopf::digraph::double;
use digraph_hopf::digraph::fixtures::{a2, by_name, square, triangle};
use digraph_hopf::groupoid::realize;
use digraph_hopf::hopf::*;
use digraph_hopf::isotopy::*;
use digraph_hopf::path_algebra::{AlgElem, PathWord, Quiver};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_path(q: &Quiver, rng: &mut ChaCha8Rng, max_len: usize) -> PathWord {
    let mut w = q.vertex_word(rng.gen_range(0..q.vertex_count()));
    for _ in 0..rng.gen_range(0..=max_len) {
        let outs = q.out_edges(w.dst());
        if outs.is_empty() {
            break;
        }
        w = q.edge_word(outs[rng.gen_range(0..outs.len())]).compose(&w).unwrap();
    }
    w
}

#[test]
fn isotropy_ideal_is_hopf_on_fixtures() {
    for name in ["a2", "t", "q"] {
        let d = by_name(name).unwrap();
        let r = check_isotropy_ideal(&hx1_hopf(&d), 2);
        assert!(r.all_pass(), "hx1 {name}: {:?}", r.failures().next());
        let r = check_isotropy_ideal(&dx_hopf(&d).unwrap(), 2);
        assert!(r.all_pass(), "dx {name}: {:?}", r.failures().next());
    }
}

#[test]
fn collapse_certifies() {
    for name in ["a2", "t", "q"] {
        let d = by_name(name).unwrap();
        assert!(verify_iso_hx1(&d, 3).all_pass(), "{name}");
        let r = verify_iso_dx(&d, 4).unwrap();
        assert!(r.all_pass(), "{name}: {:?}", r.failures().next());
    }
    let r = verify_iso_dx(&square(), 4).unwrap();
    assert!(r.instances.iter().any(|i| i.axiom == "square"));
}

#[test]
fn quotient_stays_hopf() {
    let q = isotopy_quotient(&hx1_hopf(&a2()));
    assert!(q.name.ends_with("_iso"));
    assert!(q.relations.len() > hx1_hopf(&a2()).relations.len());
    let r = check_all(&q, 3);
    assert!(r.all_pass(), "{:?}", r.failures().next());
}

#[test]
fn function_algebra_isotropy_is_hopf() {
    for (name, g) in small_groupoids(2, 4) {
        let hp = function_hopf(&g);
        assert!(check_isotropy_ideal(&hp, 2).all_pass(), "{name}");
    }
}

#[test]
fn ideal_json_counts_generators() {
    let hp = hx1_hopf(&triangle());
    let ideal = isotropy_ideal(&hp);
    let j = ideal.to_json(&hp);
    assert_eq!(j["j_gens"], 0);
    assert_eq!(j["i_gens"].as_array().unwrap().len(), 3);
    assert_eq!(digraph_iso_dx(&triangle()).relators.len(), 1);
    assert!(digraph_iso_hx1(&triangle()).relators.is_empty());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// The projection onto the groupoid ring is multiplicative on paths.
    #[test]
    fn projection_respects_products(seed in any::<u64>(), use_square in any::<bool>()) {
        let d = if use_square { square() } else { triangle() };
        let (g, cls) = realize(&digraph_iso_dx(&d), 5).unwrap();
        let proj = Projection::new(&d, &g, &cls);
        let gr = groupoid_ring(&g);
        let c = Certifier::new(&gr, &[], 0);
        let dq = double(&d);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_path(&dq.quiver, &mut rng, 2);
        let y = random_path(&dq.quiver, &mut rng, 2);
        let Some(xy) = x.compose(&y) else { return Ok(()) };
        let lhs = c.nf(&proj.apply(&AlgElem::word(xy)));
        let rhs = c.nf(&proj.apply(&AlgElem::word(x)).mul(&proj.apply(&AlgElem::word(y))));
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn projection_kills_the_isotropy_generators() {
    for d in [triangle(), square()] {
        let (g, cls) = realize(&digraph_iso_dx(&d), 5).unwrap();
        let proj = Projection::new(&d, &g, &cls);
        let gr = groupoid_ring(&g);
        let c = Certifier::new(&gr, &[], 0);
        for x in isotropy_ideal(&dx_hopf(&d).unwrap()).i_gens {
            assert!(c.nf(&proj.apply(&x)).is_zero());
        }
        assert!(check_dx_projection(&d, &g, &cls).all_pass());
    }
}
