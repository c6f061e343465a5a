use qsym_core::composition::pullback;
use qsym_core::fixtures::{example_b, example_c, graph_fixture};
use qsym_core::ncalgebra::{saturate, Generator, MonomialRules, NcPoly, Saturation, SaturationConfig, Word};
use qsym_core::presentation::{canonicalize, generate, RelationTag};

fn q(i: usize, j: usize) -> NcPoly {
    NcPoly::generator(i, j)
}

fn sat(t: &qsym_core::composition::Triple, bound: usize) -> Saturation {
    saturate(&generate(t).unwrap(), SaturationConfig::with_bound(bound)).unwrap()
}

#[test]
fn normal_form_examples() {
    let rules = MonomialRules::from_presentation(&generate(&example_c()).unwrap());
    let g = Generator::new;
    assert_eq!(rules.normal_form(&Word(vec![g(0, 1), g(0, 1)])), q(0, 1));
    assert!(rules.normal_form(&Word(vec![g(0, 1), g(0, 2)])).is_zero());
    let w = Word(vec![g(0, 1), g(2, 3)]);
    assert_eq!(rules.normal_form(&w), NcPoly::word(w));
}

#[test]
fn diagonal_entries_agree_in_the_two_cycle_example() {
    let mut s = sat(&example_b(), 2);
    assert!(s.membership(&(q(0, 0) - q(1, 1))).unwrap().is_proved());
}

#[test]
fn two_cycle_example_is_commutative() {
    let mut s = sat(&example_b(), 3);
    let comm = &q(0, 0) * &q(1, 1) - &q(1, 1) * &q(0, 0);
    assert!(s.membership(&comm).unwrap().is_proved());
    assert!(s.prove_commutativity().proved);
}

#[test]
fn twisted_complete_graph_forces_zeros() {
    let mut s = sat(&example_c(), 4);
    assert!(s.membership(&(q(0, 2) - q(0, 1))).unwrap().is_proved());
    assert!(s.membership(&q(0, 2)).unwrap().is_proved());
    assert!(s.prove_commutativity().proved);
    let map = s.derived_entry_map();
    for z in [[0, 1], [0, 2], [3, 1], [3, 2], [1, 0], [2, 0], [1, 3], [2, 3]] {
        assert!(map.zeros.contains(&z), "{z:?}");
    }
    // Nothing that holds at (2 3) or (1 4) may be proved.
    assert!(!s.membership(&q(1, 2)).unwrap().is_proved());
    assert!(!s.membership(&(q(0, 0) - NcPoly::one())).unwrap().is_proved());
}

#[test]
fn theta_relations_do_work_in_the_twisted_example() {
    let t = example_c();
    let p = generate(&t).unwrap();
    let mut without = saturate(&p.without(RelationTag::Theta), SaturationConfig::with_bound(4)).unwrap();
    assert!(!without.membership(&(q(0, 2) - q(0, 1))).unwrap().is_proved());
    let redundant = qsym_core::analyzer::check_theta_redundant(&t, SaturationConfig::with_bound(4)).unwrap();
    assert_eq!(redundant.len(), 1296);
    assert!(redundant.iter().any(|&r| !r));
}

#[test]
fn complete_graph_pullback_stays_inconclusive() {
    let t = pullback(&graph_fixture("k4").unwrap()).unwrap();
    for bound in 2..=4 {
        let mut s = sat(&t, bound);
        let c = s.prove_commutativity();
        assert!(!c.proved, "bound {bound}");
        assert!(!c.inconclusive.is_empty());
    }
}

#[test]
fn single_vertex_entry_map() {
    let t = pullback(&graph_fixture("loop").unwrap()).unwrap();
    let mut s = sat(&t, 2);
    let map = s.derived_entry_map();
    assert!(map.zeros.is_empty());
    assert_eq!(map.ones, vec![[0, 0]]);
    assert_eq!(map.classes, vec![vec![[0, 0]]]);
}

#[test]
fn every_generated_relation_is_a_member() {
    for t in [example_b(), example_c()] {
        let p = generate(&t).unwrap();
        let mut s = saturate(&p, SaturationConfig::with_bound(3)).unwrap();
        for r in &canonicalize(&p).relations {
            assert!(s.membership(&r.poly).unwrap().is_proved(), "{}", r.poly);
        }
    }
}

#[test]
fn dump_is_deterministic_and_serializable() {
    let mut a = sat(&example_b(), 3);
    let mut b = sat(&example_b(), 3);
    let da = serde_json::to_string(&a.dump()).unwrap();
    assert_eq!(da, serde_json::to_string(&b.dump()).unwrap());
    assert!(da.contains("\"degree_bound\":3"));
}
