mod support;

use std::sync::Arc;

use ends_core::ends_analysis::{ends_profile, Classification};
use ends_core::graph_build::{build_ball, CayleyGraph, DEFAULT_VERTEX_BUDGET};
use ends_core::group_core::*;
use ends_core::normal_forms::{AmalgamProduct, AmalgamSpec, HnnExtension, HnnSpec};
use proptest::prelude::*;
use support::models::{CyclicByZ, DihedralTk, Model, ZTimesC2};

fn families() -> Vec<Oracle> {
    vec![
        free_abelian(1),
        free_abelian(2),
        free(2),
        cyclic(5),
        product(free(2), free_abelian(1)),
        product(free_abelian(1), cyclic(2)),
        semidirect_fz(3, 2).unwrap(),
        semidirect_fz(5, 2).unwrap(),
        semidirect_zf(2).unwrap(),
        Arc::new(AmalgamProduct::new(AmalgamSpec::cyclic(4, 6, 2).unwrap()).unwrap()),
        Arc::new(HnnExtension::new(HnnSpec::cyclic(4, 2, 1).unwrap()).unwrap()),
        Arc::new(HnnExtension::new(HnnSpec::cyclic(6, 3, 2).unwrap()).unwrap()),
        quotient(product(free_abelian(1), cyclic(2)), vec![
            NormalForm::pair(NormalForm::Ints(vec![0]), NormalForm::Finite(0)),
            NormalForm::pair(NormalForm::Ints(vec![0]), NormalForm::Finite(1)),
        ])
        .unwrap(),
    ]
}

/// Identity, inverse and associativity over all triples from a small ball.
#[test]
fn group_laws_on_small_balls() {
    for g in families() {
        let radius = if g.generator_count() > 3 { 2 } else { 3 };
        let ball = build_ball(&CayleyGraph::new(g.clone()), radius, DEFAULT_VERTEX_BUDGET).unwrap();
        let elems: Vec<NormalForm> = ball.vertices().cloned().collect();
        let small: Vec<&NormalForm> = elems.iter().take(40).collect();
        for x in &elems {
            assert_eq!(g.product(x, &g.identity()).unwrap(), *x, "{}", g.name());
            assert_eq!(g.product(&g.identity(), x).unwrap(), *x, "{}", g.name());
            assert_eq!(g.product(x, &g.inverse(x).unwrap()).unwrap(), g.identity());
            assert_eq!(g.canonical(&g.word_of(x).unwrap()).unwrap(), *x);
        }
        for x in &small {
            for y in &small {
                let xy = g.product(x, y).unwrap();
                for z in &small {
                    assert_eq!(
                        g.product(&xy, z).unwrap(),
                        g.product(x, &g.product(y, z).unwrap()).unwrap(),
                        "{}",
                        g.name()
                    );
                }
            }
        }
    }
}

/// Canonical forms separate elements exactly as an independent model does.
fn check_against_model<M: Model>(g: &Oracle, m: &M, max_len: usize) {
    let alphabet: Vec<Gen> = (0..2 * g.generator_count()).map(Gen::from_slot).collect();
    let mut words = vec![Word::empty()];
    for len in 1..=max_len {
        words.extend(Word::all_of_length(&alphabet, len));
    }
    let mut by_form = std::collections::HashMap::new();
    let mut by_model = std::collections::HashMap::new();
    for w in &words {
        let f = g.canonical(w).unwrap();
        let e = m.eval(w);
        if let Some(prev) = by_form.insert(f.clone(), e.clone()) {
            assert_eq!(prev, e, "{}: {w} has a form shared with a different element", g.name());
        }
        if let Some(prev) = by_model.insert(e, f.clone()) {
            assert_eq!(prev, f, "{}: {w} has two forms", g.name());
        }
    }
}

#[test]
fn infinite_dihedral_matches_affine_model() {
    let d = semidirect_zf(2).unwrap();
    check_against_model(&d, &DihedralTk, 8);
    let ab = d.canonical(&"ab".parse().unwrap()).unwrap();
    let aba = d.canonical(&"aba".parse().unwrap()).unwrap();
    assert_eq!(d.multiply(&ab, Gen::pos(0)).unwrap(), aba);
}

#[test]
fn semidirect_products_match_models() {
    check_against_model(&semidirect_fz(3, 2).unwrap(), &CyclicByZ { n: 3, k: 2 }, 7);
    check_against_model(&semidirect_fz(5, 2).unwrap(), &CyclicByZ { n: 5, k: 2 }, 6);
    check_against_model(&product(free_abelian(1), cyclic(2)), &ZTimesC2, 7);
    // (x,0)(1,1)(x,0)(1,−1) = x · x² = 1 under inversion.
    let g = semidirect_fz(3, 2).unwrap();
    assert_eq!(g.canonical(&"abaB".parse().unwrap()).unwrap(), g.identity());
    let x = g.generator(Gen::pos(0)).unwrap();
    let x3 = g.product(&g.product(&x, &x).unwrap(), &x).unwrap();
    assert_eq!(x3, g.identity());
    assert_ne!(g.product(&x, &x).unwrap(), g.identity());
}

#[test]
fn trivial_action_gives_direct_product() {
    let k = Arc::new(FiniteGroup::cyclic(2));
    let g: Oracle = Arc::new(SemidirectFiniteByZ::with_power(k, 1).unwrap());
    let t = g.generator(Gen::pos(1)).unwrap();
    let x = g.generator(Gen::pos(0)).unwrap();
    assert_eq!(g.product(&t, &x).unwrap(), g.product(&x, &t).unwrap());
}

#[test]
fn quotients() {
    let zc2 = product(free_abelian(1), cyclic(2));
    let n = vec![
        NormalForm::pair(NormalForm::Ints(vec![0]), NormalForm::Finite(0)),
        NormalForm::pair(NormalForm::Ints(vec![0]), NormalForm::Finite(1)),
    ];
    let q = quotient(zc2.clone(), n).unwrap();
    let p = ends_profile(&CayleyGraph::new(q.clone()), 6, 16, DEFAULT_VERTEX_BUDGET).unwrap();
    let z = ends_profile(&CayleyGraph::new(free_abelian(1)), 6, 16, DEFAULT_VERTEX_BUDGET).unwrap();
    assert_eq!(p.classification, Classification::Two);
    assert_eq!((p.classification, p.stable_e), (z.classification, z.stable_e));

    // Representative does not depend on the chosen coset element.
    let ball = build_ball(&CayleyGraph::new(zc2.clone()), 4, DEFAULT_VERTEX_BUDGET).unwrap();
    for x in ball.vertices() {
        let w = zc2.word_of(x).unwrap();
        let flipped = w.concat(&"b".parse().unwrap());
        assert_eq!(q.canonical(&w).unwrap(), q.canonical(&flipped).unwrap());
    }

    let trivial = quotient(free(2), vec![free(2).identity()]).unwrap();
    let w: Word = "abAB".parse().unwrap();
    assert_eq!(trivial.canonical(&w).unwrap(), free(2).canonical(&w).unwrap());

    // A reflection subgroup of D∞ is not normal: conjugating k by t moves it.
    let d = semidirect_zf(2).unwrap();
    let k = d.generator(Gen::pos(1)).unwrap();
    assert!(matches!(
        quotient(d.clone(), vec![d.identity(), k]),
        Err(GroupError::Validation(m)) if m.contains("normal")
    ));
    // Not closed.
    let t = d.generator(Gen::pos(0)).unwrap();
    assert!(quotient(d.clone(), vec![d.identity(), t]).is_err());
}

#[test]
fn malformed_input_is_rejected() {
    let f = free(2);
    assert!(matches!(
        f.multiply(&f.identity(), Gen::pos(2)),
        Err(GroupError::MalformedWord { index: 2, count: 2 })
    ));
    assert!(matches!(
        f.multiply(&NormalForm::Ints(vec![1]), Gen::pos(0)),
        Err(GroupError::MalformedForm { .. })
    ));
    let k = Arc::new(FiniteGroup::cyclic(3));
    assert!(SemidirectFiniteByZ::new(k, vec![0, 1, 1]).is_err());
}

fn arb_word(gens: usize, len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..gens, any::<bool>()), 0..len)
        .prop_map(|v| v.into_iter().map(|(i, inv)| Gen::new(i, inv)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn words_times_inverse_are_trivial(pick in 0usize..13, w in arb_word(8, 16)) {
        let g = &families()[pick];
        let n = g.generator_count();
        let w: Word = w.iter().filter(|s| s.index() < n).collect();
        prop_assert_eq!(g.canonical(&w.concat(&w.inverse())).unwrap(), g.identity());
        let x = g.canonical(&w).unwrap();
        prop_assert_eq!(g.inverse(&x).unwrap(), g.canonical(&w.inverse()).unwrap());
    }

    #[test]
    fn canonical_respects_concatenation(pick in 0usize..13, a in arb_word(8, 10), b in arb_word(8, 10)) {
        let g = &families()[pick];
        let n = g.generator_count();
        let a: Word = a.iter().filter(|s| s.index() < n).collect();
        let b: Word = b.iter().filter(|s| s.index() < n).collect();
        let x = g.canonical(&a).unwrap();
        let y = g.canonical(&b).unwrap();
        prop_assert_eq!(g.product(&x, &y).unwrap(), g.canonical(&a.concat(&b)).unwrap());
    }
}
