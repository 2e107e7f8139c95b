//! Dismissed-outcome counters, the potential `M` and termination bounds.

use crate::error::Result;
use crate::game::{Game, NodeId, PlayerId, Profile};

/// `Δ(g,a)` for every player: each node a player owns dismisses all but one child.
pub fn big_delta(g: &Game) -> Vec<usize> {
    let mut delta = vec![0; g.universe.n_players()];
    big_delta_at(g, NodeId::ROOT, &mut delta);
    delta
}

fn big_delta_at(g: &Game, v: NodeId, acc: &mut [usize]) {
    if let Some(slot) = g.tree.slot(v) {
        let children = g.tree.children_of_slot(slot);
        acc[g.tree.owner_of_slot(slot).index()] += children.len() - 1;
        for &c in children {
            big_delta_at(g, c, acc);
        }
    }
}

/// `δ(s,a,o)` as a `players × outcomes` table: how many subprofiles with
/// outcome `o` player `a` passes over in `s`.
pub fn small_delta(g: &Game, s: &Profile) -> Vec<Vec<usize>> {
    let mut table = vec![vec![0; g.universe.n_outcomes()]; g.universe.n_players()];
    for slot in 0..g.tree.n_internal() {
        let row = &mut table[g.tree.owner_of_slot(slot).index()];
        let chosen = s.choice(slot) as usize;
        for (j, &c) in g.tree.children_of_slot(slot).iter().enumerate() {
            if j != chosen {
                row[g.tree.outcome_from(s, c).index()] += 1;
            }
        }
    }
    table
}

/// `M(s,a) = Σ_o (h(a,o) − 1)·δ(s,a,o)`.
pub fn potential_m(g: &Game, s: &Profile, a: PlayerId) -> Result<usize> {
    let heights = g.universe.chain_heights(a)?;
    let row = &small_delta(g, s)[a.index()];
    Ok(row.iter().zip(&heights).map(|(d, h)| (h - 1) * d).sum())
}

/// `(h_a − 1)·Δ(g,a)`: most lazy improvements player `a` can make in any run.
pub fn step_bound(g: &Game, a: PlayerId) -> Result<usize> {
    let h = g.universe.max_chain_height(a)?;
    Ok(h.saturating_sub(1) * big_delta(g)[a.index()])
}

/// `(h − 1)(l − 1)` with `h` the largest chain over all players and `l` the leaf count.
pub fn global_bound(g: &Game) -> Result<usize> {
    let mut h = 0;
    for a in g.players() {
        h = h.max(g.universe.max_chain_height(a)?);
    }
    Ok(h.saturating_sub(1) * (g.tree.n_leaves() - 1))
}

/// Per-player bounds for the acyclic players; cyclic players are reported as errors.
pub fn bounds_report(g: &Game) -> Vec<(PlayerId, Result<usize>)> {
    g.players().map(|a| (a, step_bound(g, a))).collect()
}

/// Checks `Σ_o δ(s,a,o) = Δ(g,a)` for every player.
pub fn row_sums_match(g: &Game, s: &Profile) -> bool {
    let big = big_delta(g);
    small_delta(g, s)
        .iter()
        .zip(&big)
        .all(|(row, &d)| row.iter().sum::<usize>() == d)
}

/// Checks `1 + Σ_a Δ(g,a) = l`.
pub fn leaf_count_matches(g: &Game) -> bool {
    1 + big_delta(g).iter().sum::<usize>() == g.tree.n_leaves()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{OutcomeId, TreeSpec, Universe};
    use crate::error::Error;
    use crate::preference::Preference;

    fn o(i: usize) -> OutcomeId {
        OutcomeId::new(i)
    }

    /// a:( b:( b:(x|y), a:(z|t) ), b:( a:(x|t|t), a:(y|z) ) ) with x y z t = 0 1 2 3
    fn delta_game(pref_a: Preference) -> Game {
        let l = TreeSpec::leaf;
        let spec = TreeSpec::node(
            0,
            vec![
                TreeSpec::node(1, vec![TreeSpec::node(1, vec![l(0), l(1)]), TreeSpec::node(0, vec![l(2), l(3)])]),
                TreeSpec::node(1, vec![TreeSpec::node(0, vec![l(0), l(3), l(3)]), TreeSpec::node(0, vec![l(1), l(2)])]),
            ],
        );
        let u = Universe::new(
            vec!["a".into(), "b".into()],
            ["x", "y", "z", "t"].iter().map(|s| s.to_string()).collect(),
            vec![pref_a, Preference::empty(4)],
        )
        .unwrap();
        Game::from_spec(u, &spec).unwrap()
    }

    #[test]
    fn delta_figure() {
        let g = delta_game(Preference::empty(4));
        assert_eq!(big_delta(&g), vec![5, 3]);
        assert_eq!(g.profile_count(), 192);
        let s = g.tree.first_profile();
        let d = small_delta(&g, &s);
        assert_eq!(d[0], vec![1, 0, 1, 3]);
        assert_eq!(d[1], vec![0, 2, 1, 0]);
        assert!(row_sums_match(&g, &s));
        assert!(leaf_count_matches(&g));
    }

    #[test]
    fn potential_on_delta_figure() {
        // z ≺ y ≺ t ≺ x
        let g = delta_game(Preference::chain(4, &[o(2), o(1), o(3), o(0)]));
        let s = g.tree.first_profile();
        assert_eq!(potential_m(&g, &s, PlayerId(0)).unwrap(), 9);
        assert_eq!(potential_m(&g, &s, PlayerId(1)).unwrap(), 0);
        assert_eq!(step_bound(&g, PlayerId(0)).unwrap(), 15);
        assert_eq!(global_bound(&g).unwrap(), 3 * 8);
    }

    #[test]
    fn leaf_game_is_all_zero() {
        let u = Universe::new(vec!["a".into()], vec!["x".into()], vec![Preference::empty(1)]).unwrap();
        let g = Game::from_spec(u, &TreeSpec::leaf(0)).unwrap();
        assert_eq!(big_delta(&g), vec![0]);
        assert_eq!(small_delta(&g, &g.tree.first_profile()), vec![vec![0]]);
        assert_eq!(global_bound(&g).unwrap(), 0);
    }

    #[test]
    fn cyclic_player_has_no_bound() {
        let cyc = Preference::from_pairs(4, [(o(0), o(1)), (o(1), o(0))]);
        let g = delta_game(cyc);
        assert!(matches!(step_bound(&g, PlayerId(0)), Err(Error::CyclicPreference(_))));
        assert!(global_bound(&g).is_err());
        assert_eq!(step_bound(&g, PlayerId(1)).unwrap(), 0);
    }
}
