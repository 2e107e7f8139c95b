mod common;

use lazyeq::fixtures;
use lazyeq::io::{self, Document};
use lazyeq::potentials::{big_delta, global_bound, potential_m, step_bound};
use lazyeq::PlayerId;

use common::*;

#[test]
fn g3_potential_is_nine() {
    let Document::Tree(d) = fixtures::load("g3").unwrap() else { panic!("tree") };
    let s = d.profile.unwrap();
    assert_eq!(potential_m(&d.game, &s, PlayerId::new(0)).unwrap(), 9);
    assert_eq!(potential_m(&d.game, &s, PlayerId::new(1)).unwrap(), 0);
}

#[test]
fn quadratic_bounds() {
    for n in 0..=20 {
        let g = tree_of(fixtures::load(&format!("quadratic-{n}")).unwrap());
        assert_eq!(g.tree.n_leaves(), 2 * (n + 1));
        let h = heights(g.universe.pref(PlayerId::new(0))).into_iter().max().unwrap();
        assert_eq!(h, n + 2);
        assert_eq!(global_bound(&g).unwrap(), (n + 1) * (2 * n + 1));
        assert!(fixtures::quadratic_steps(n) <= global_bound(&g).unwrap());
    }
}

#[test]
fn small_bounds() {
    assert_eq!(global_bound(&tree_of(fixtures::load("g2").unwrap())).unwrap(), 3);
    let leaf = tree_of(io::parse("game { players: a ; outcomes: x ; tree: [x] ; }").unwrap());
    assert_eq!(global_bound(&leaf).unwrap(), 0);
    assert_eq!(step_bound(&leaf, PlayerId::new(0)).unwrap(), 0);
    let g1 = tree_of(fixtures::load("g1").unwrap());
    assert_eq!(big_delta(&g1), dismissed_total(&g1));
    let cyclic = tree_of(io::parse("game { players: a ; outcomes: x y ; tree: (a [x] [y]) ; prefer a: pair x y, pair y x ; }").unwrap());
    assert!(global_bound(&cyclic).is_err());
}
