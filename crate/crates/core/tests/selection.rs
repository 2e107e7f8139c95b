mod common;

use lazyeq::equilibria::{backward_induction, is_nash};
use lazyeq::fixtures;
use lazyeq::io;
use lazyeq::markov::{build_chain, stable_profiles, StabilityParams};
use num_rational::{BigRational, Rational64};
use num_traits::One;

use common::*;

fn tree(text: &str) -> lazyeq::Game {
    tree_of(io::parse(text).unwrap())
}

fn profile(g: &lazyeq::Game, text: &str) -> lazyeq::Profile {
    io::parse_tree_profile(text, g).unwrap()
}

#[test]
fn bi_fails_without_transitivity() {
    let g = tree("game { players: a ; outcomes: x y z ; tree: (a (a [x] [z]) [y]) ; prefer a: pair x y, pair y z ; }");
    let bad = profile(&g, "(a (a *[x] [z]) *[y])");
    assert!(backward_induction(&g).unwrap().contains(&bad));
    assert!(!is_nash(&g, &bad));
    assert!(tree_nash(&g).binary_search(&bad).is_err());
}

#[test]
fn bi_fails_without_transitive_incomparability() {
    let g = tree("game { players: a ; outcomes: x y z ; tree: (a (a [z] [y]) [x]) ; prefer a: pair x z ; }");
    let bad = profile(&g, "(a (a [z] *[y]) *[x])");
    assert!(backward_induction(&g).unwrap().contains(&bad));
    assert!(!is_nash(&g, &bad));
    assert!(tree_nash(&g).binary_search(&bad).is_err());
}

#[test]
fn rows_sum_to_one_exactly() {
    for name in ["markov-simple", "markov-abcdefgh", "g1", "aumann"] {
        let g = tree_of(fixtures::load(name).unwrap());
        let chain = build_chain::<BigRational>(&g, Rational64::new(1, 20), Rational64::new(1, 100)).unwrap();
        for row in chain.dense() {
            assert!(row.iter().sum::<BigRational>().is_one(), "{name}");
        }
    }
}

#[test]
fn eight_state_fixed_point_at_a_second_pair() {
    let g = tree_of(fixtures::load("markov-abcdefgh").unwrap());
    let (p, eps) = (Rational64::new(1, 16), Rational64::new(1, 64));
    let m = build_chain::<Rational64>(&g, p, eps).unwrap().dense();
    let by_letter = fixtures::abcdefgh_fixed_point(p, eps);
    let v: Vec<Rational64> = fixtures::ABCDEFGH_BY_RANK.iter().map(|&c| by_letter[(c as u8 - b'A') as usize]).collect();
    for j in 0..8 {
        assert_eq!((0..8).map(|i| v[i] * m[i][j]).sum::<Rational64>(), v[j]);
    }
}

#[test]
fn limits_live_on_equilibria_and_off_weight_shrinks() {
    for name in ["markov-simple", "markov-abcdefgh"] {
        let g = tree_of(fixtures::load(name).unwrap());
        let report = stable_profiles(&g, &StabilityParams::new(Rational64::new(1, 10))).unwrap();
        let ne = tree_nash(&g);
        for st in &report.states {
            if ne.binary_search(&st.profile).is_err() {
                assert!(st.limit.abs() < 1e-6, "{name}: weight {} off the equilibria", st.limit);
            }
        }
        for pair in report.non_ne_weight.windows(2) {
            assert!(pair[1] < pair[0], "{name}: {:?}", report.non_ne_weight);
        }
    }
}
