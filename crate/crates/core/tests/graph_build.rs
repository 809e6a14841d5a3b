use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use ends_core::graph_build::*;
use ends_core::group_core::*;
use ends_core::normal_forms::{AmalgamProduct, AmalgamSpec};
use proptest::prelude::*;

fn words(ws: &[&str]) -> Vec<Word> {
    ws.iter().map(|w| w.parse().unwrap()).collect()
}

fn all_words(gens: usize, max_len: usize) -> Vec<Word> {
    let alphabet: Vec<Gen> = (0..2 * gens).map(Gen::from_slot).collect();
    (0..=max_len).flat_map(|l| Word::all_of_length(&alphabet, l)).collect()
}

#[test]
fn lattice_spheres_match_l1_enumeration() {
    let ball = build_ball(&CayleyGraph::new(free_abelian(2)), 5, DEFAULT_VERTEX_BUDGET).unwrap();
    for k in 0..=5i64 {
        let count = (-k..=k)
            .flat_map(|x| (-k..=k).map(move |y| (x, y)))
            .filter(|(x, y)| x.abs() + y.abs() == k)
            .count();
        assert_eq!(ball.level(k as u32).len(), count);
    }
}

#[test]
fn free_spheres_grow_by_three() {
    let ball = build_ball(&CayleyGraph::new(free(2)), 6, DEFAULT_VERTEX_BUDGET).unwrap();
    for k in 1..=6u32 {
        assert_eq!(ball.level(k).len(), 4 * 3usize.pow(k - 1));
    }
}

/// Ball sizes agree with direct word enumeration, norms with shortest
/// word length.
#[test]
fn ball_matches_word_enumeration() {
    let cases: Vec<(Oracle, usize)> = vec![
        (product(cyclic(2), free_abelian(1)), 6),
        (semidirect_zf(2).unwrap(), 6),
        (Arc::new(AmalgamProduct::new(AmalgamSpec::cyclic(2, 3, 1).unwrap()).unwrap()), 5),
    ];
    for (g, radius) in cases {
        let mut best: HashMap<NormalForm, usize> = HashMap::new();
        for w in all_words(g.generator_count(), radius) {
            let f = g.canonical(&w).unwrap();
            let e = best.entry(f).or_insert(w.len());
            *e = (*e).min(w.len());
        }
        let ball = build_ball(&CayleyGraph::new(g.clone()), radius as u32, DEFAULT_VERTEX_BUDGET).unwrap();
        assert_eq!(ball.len(), best.len(), "{}", g.name());
        for (f, d) in best {
            assert_eq!(ball.norm_of(&f), Some(d as u32), "{}", g.name());
        }
    }
}

#[test]
fn edges_change_norm_by_at_most_one_and_are_symmetric() {
    let g = Arc::new(AmalgamProduct::new(AmalgamSpec::cyclic(4, 6, 2).unwrap()).unwrap());
    let ball = build_ball(&CayleyGraph::new(g), 4, DEFAULT_VERTEX_BUDGET).unwrap();
    let mut edges = HashSet::new();
    for v in 0..ball.len() {
        for (s, w) in ball.neighbors(v) {
            assert!(ball.norm(v).abs_diff(ball.norm(w)) <= 1);
            edges.insert((v, s, w));
        }
        if ball.norm(v) < ball.radius() {
            assert_eq!(ball.degree(v), 16);
        }
    }
    for &(v, s, w) in &edges {
        assert!(edges.contains(&(w, s.inv(), v)));
    }
}

#[test]
fn ball_indices_are_deterministic() {
    let g = product(free(2), free_abelian(1));
    let a = build_ball(&CayleyGraph::new(g.clone()), 5, DEFAULT_VERTEX_BUDGET).unwrap();
    let b = build_ball(&CayleyGraph::new(g), 5, DEFAULT_VERTEX_BUDGET).unwrap();
    assert!(a.vertices().eq(b.vertices()));
    for k in 0..=5 {
        let level: Vec<&NormalForm> = a.level(k).map(|i| a.vertex(i)).collect();
        assert!(level.windows(2).all(|w| w[0] < w[1]));
    }
}

/// Membership by products of at most `depth` subgroup generators.
fn enumerate_subgroup(gens: &[Word], depth: usize) -> HashSet<Word> {
    let mut letters: Vec<Word> = gens.to_vec();
    letters.extend(gens.iter().map(|w| w.inverse()));
    let mut seen = HashSet::from([Word::empty()]);
    let mut frontier = vec![Word::empty()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for x in &frontier {
            for l in &letters {
                let y = x.concat(l).free_reduce();
                if seen.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    seen
}

#[test]
fn membership_matches_enumeration() {
    for gens in [vec!["a"], vec!["aa", "b"], vec!["a", "baB"], vec!["ab", "ba"]] {
        let gens = words(&gens);
        let aut = StallingsAutomaton::from_generators(2, &gens).unwrap();
        let members = enumerate_subgroup(&gens, 8);
        for w in all_words(2, 4) {
            let r = w.free_reduce();
            assert_eq!(aut.membership(&w), members.contains(&r), "{gens:?} {w}");
        }
    }
}

#[test]
fn coset_oracle_contract() {
    for gens in [vec!["a"], vec!["aa", "b"], vec!["a", "baB"]] {
        let aut = StallingsAutomaton::from_generators(2, &words(&gens)).unwrap();
        let oracle = free_coset_oracle(aut.clone());
        let ws = all_words(2, 4);
        let ids: Vec<NormalForm> = ws.iter().map(|w| oracle.coset_id(w).unwrap()).collect();
        for (i, w1) in ws.iter().enumerate() {
            for (j, w2) in ws.iter().enumerate() {
                let same = ids[i] == ids[j];
                assert_eq!(same, aut.membership(&w1.concat(&w2.inverse())), "{gens:?}: {w1} {w2}");
            }
        }
        // Residuals start with a letter that has no transition.
        for id in &ids {
            if let NormalForm::Coset { state, residual } = id {
                if let Some(&s) = residual.first() {
                    assert!(aut.transition(*state, s).is_none());
                }
            }
        }
    }
}

#[test]
fn schreier_neighbours_agree_with_coset_ids() {
    let aut = StallingsAutomaton::from_generators(2, &words(&["aa", "bab"])).unwrap();
    let oracle = free_coset_oracle(aut);
    for w in all_words(2, 3) {
        let id = oracle.coset_id(&w).unwrap();
        for (s, n) in oracle.neighbors(&id).unwrap() {
            let mut ws = w.clone();
            ws.push(s);
            assert_eq!(n, oracle.coset_id(&ws).unwrap());
        }
    }
}

#[test]
fn fold_is_idempotent() {
    for gens in [vec!["a"], vec!["aa", "b"], vec!["abA", "aab", "bbAB"], vec!["abab", "ba"]] {
        let aut = StallingsAutomaton::from_generators(2, &words(&gens)).unwrap();
        let again = fold(2, &aut.edges(), aut.base());
        assert_eq!(aut, again);
    }
}

#[test]
fn finite_index_gives_finite_schreier_graph() {
    let aut = StallingsAutomaton::from_generators(2, &words(&["aa", "b", "abA"])).unwrap();
    assert!(aut.is_complete());
    assert_eq!(aut.state_count(), 2);
    let ball = build_ball(&free_coset_oracle(aut), 6, DEFAULT_VERTEX_BUDGET).unwrap();
    assert_eq!(ball.len(), 2);

    let torus = lattice_coset_oracle(2, &[vec![2, 0], vec![0, 2]]).unwrap();
    let ball = build_ball(&torus, 5, DEFAULT_VERTEX_BUDGET).unwrap();
    assert_eq!(ball.len(), 4);
}

#[test]
fn lattice_oracle_examples() {
    let line = lattice_coset_oracle(2, &[vec![1, 0]]).unwrap();
    assert_eq!(line.coset_id(&"aaaaabbb".parse().unwrap()).unwrap(), NormalForm::Ints(vec![0, 3]));
    let trivial = lattice_coset_oracle(2, &[]).unwrap();
    let a = build_ball(&trivial, 4, DEFAULT_VERTEX_BUDGET).unwrap();
    let b = build_ball(&CayleyGraph::new(free_abelian(2)), 4, DEFAULT_VERTEX_BUDGET).unwrap();
    assert_eq!(a.sphere_sizes(), b.sphere_sizes());
}

/// A coset has Schreier norm `≤ ρ` iff some `x` with `|x| ≤ ρ` satisfies
/// `w x⁻¹ ∈ K`.
#[test]
fn schreier_norm_matches_definition() {
    let gens = words(&["a", "baB"]);
    let aut = StallingsAutomaton::from_generators(2, &gens).unwrap();
    let oracle = free_coset_oracle(aut.clone());
    let ball = build_ball(&oracle, 4, DEFAULT_VERTEX_BUDGET).unwrap();
    let short = all_words(2, 3);
    for w in all_words(2, 4) {
        let norm = ball.norm_of(&oracle.coset_id(&w).unwrap()).unwrap();
        let brute = short
            .iter()
            .filter(|x| aut.membership(&w.concat(&x.inverse())))
            .map(|x| x.len() as u32)
            .min();
        match brute {
            Some(d) => assert_eq!(norm, d, "{w}"),
            None => assert!(norm > 3, "{w}"),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lattice_residue_is_a_coset_invariant(
        v in prop::collection::vec(-20i64..20, 3),
        k in prop::collection::vec(-5i64..5, 2),
    ) {
        let basis = vec![vec![2, 4, -6], vec![0, 3, 9]];
        let o = lattice_coset_oracle(3, &basis).unwrap();
        let shifted: Vec<i64> = (0..3).map(|i| v[i] + k[0] * basis[0][i] + k[1] * basis[1][i]).collect();
        prop_assert_eq!(o.residue(&v), o.residue(&shifted));
        let r = o.residue(&v);
        prop_assert_eq!(o.residue(&r), r);
    }

    #[test]
    fn folding_preserves_membership(
        gens in prop::collection::vec(prop::collection::vec((0usize..2, any::<bool>()), 1..5), 1..3),
        probe in prop::collection::vec((0usize..2, any::<bool>()), 0..8),
    ) {
        let gens: Vec<Word> = gens
            .into_iter()
            .map(|v| v.into_iter().map(|(i, inv)| Gen::new(i, inv)).collect())
            .collect();
        let aut = StallingsAutomaton::from_generators(2, &gens).unwrap();
        for g in &gens {
            prop_assert!(aut.membership(g));
        }
        let w: Word = probe.into_iter().map(|(i, inv)| Gen::new(i, inv)).collect();
        let members = enumerate_subgroup(&gens, 6);
        if members.contains(&w.free_reduce()) {
            prop_assert!(aut.membership(&w));
        }
    }
}
