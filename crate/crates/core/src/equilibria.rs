//! Nash and subgame perfect equilibria, backward induction and ε-equilibria.

use num_rational::Rational64;

use crate::dynamics::Dynamics;
use crate::error::{Error, Result};
use crate::game::{check_cap, Game, NodeId, OutcomeId, PlayerId, Profile};

/// Outcomes `a` reaches from `v` over every rewrite of its own choices below `v`.
fn deviation_outcomes(g: &Game, s: &Profile, a: PlayerId, v: NodeId) -> Vec<OutcomeId> {
    let mine: Vec<usize> = g.tree.slots_below(v).filter(|&k| g.tree.owner_of_slot(k) == a).collect();
    let mut t = s.clone();
    let mut out = Vec::new();
    let mut digits = vec![0u16; mine.len()];
    loop {
        for (&k, &d) in mine.iter().zip(&digits) {
            t.set(k, d);
        }
        out.push(g.tree.outcome_from(&t, v));
        let mut i = mine.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            digits[i] += 1;
            if (digits[i] as usize) < g.tree.degree(mine[i]) {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// No player strictly prefers anything it can reach alone, judged from `v`.
fn is_nash_at(g: &Game, s: &Profile, v: NodeId) -> bool {
    let here = g.tree.outcome_from(s, v);
    g.players().all(|a| {
        let pref = g.universe.pref(a);
        deviation_outcomes(g, s, a, v).into_iter().all(|o| !pref.prefers(here, o))
    })
}

pub fn is_nash(g: &Game, s: &Profile) -> bool {
    is_nash_at(g, s, NodeId::ROOT)
}

/// Every profile checked against every unilateral deviation.
pub fn brute_force_nash(g: &Game) -> Result<Vec<Profile>> {
    Ok(g.all_profiles()?.filter(|s| is_nash(g, s)).collect())
}

/// The restriction of `s` to every subtree is an equilibrium of that subtree.
pub fn is_spe(g: &Game, s: &Profile) -> bool {
    g.tree.internal_nodes().iter().all(|&v| is_nash_at(g, s, v))
}

/// All outputs of backward induction, where each owner may pick any child
/// whose outcome has no strictly preferred sibling outcome.
pub fn backward_induction(g: &Game) -> Result<Vec<Profile>> {
    g.universe.require_acyclic()?;
    check_cap(g.profile_count())?;
    Ok(bi_at(g, NodeId::ROOT).into_iter().map(|(c, _)| Profile::new(c)).collect())
}

/// Choices for the slots below `v` (preorder) with the outcome they induce.
fn bi_at(g: &Game, v: NodeId) -> Vec<(Vec<u16>, OutcomeId)> {
    let Some(slot) = g.tree.slot(v) else {
        return vec![(Vec::new(), g.tree.leaf_outcome(v).expect("leaf"))];
    };
    let pref = g.universe.pref(g.tree.owner_of_slot(slot));
    let below: Vec<Vec<(Vec<u16>, OutcomeId)>> = g.tree.children_of_slot(slot).iter().map(|&c| bi_at(g, c)).collect();
    let mut out = Vec::new();
    let mut pick = vec![0usize; below.len()];
    loop {
        let outcomes: Vec<OutcomeId> = pick.iter().zip(&below).map(|(&i, b)| b[i].1).collect();
        for j in pref.maximal_indices(&outcomes) {
            let mut choices = vec![j as u16];
            for (&i, b) in pick.iter().zip(&below) {
                choices.extend_from_slice(&b[i].0);
            }
            out.push((choices, outcomes[j]));
        }
        let mut i = pick.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            pick[i] += 1;
            if pick[i] < below[i].len() {
                break;
            }
            pick[i] = 0;
        }
    }
}

/// Backward induction under linear extensions of the preferences; the
/// result is subgame perfect for the original preferences too.
pub fn spe_via_linear_extension(g: &Game) -> Result<Profile> {
    let linear = Game {
        universe: g.universe.linearized()?,
        tree: g.tree.clone(),
    };
    let s = bi_representative(&linear, NodeId::ROOT);
    debug_assert!(is_spe(g, &s));
    Ok(s)
}

/// One backward-induction output, always taking the first maximal child.
fn bi_representative(g: &Game, root: NodeId) -> Profile {
    let mut s = g.tree.first_profile();
    // children come after parents in preorder, so walk slots backwards
    for slot in (g.tree.slots_below(root).collect::<Vec<_>>()).into_iter().rev() {
        let pref = g.universe.pref(g.tree.owner_of_slot(slot));
        let outcomes: Vec<OutcomeId> = g
            .tree
            .children_of_slot(slot)
            .iter()
            .map(|&c| g.tree.outcome_from(&s, c))
            .collect();
        let j = pref.maximal_indices(&outcomes)[0];
        s.set(slot, j as u16);
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquilibriumReport {
    pub ne: Vec<Profile>,
    pub spe: Vec<Profile>,
    /// Empty when some preference is cyclic.
    pub bi_outputs: Vec<Profile>,
}

pub fn equilibrium_report(g: &Game) -> Result<EquilibriumReport> {
    let ne = brute_force_nash(g)?;
    let spe = ne.iter().filter(|s| is_spe(g, s)).cloned().collect();
    let bi_outputs = match backward_induction(g) {
        Ok(v) => v,
        Err(Error::CyclicPreference(_)) => Vec::new(),
        Err(e) => return Err(e),
    };
    Ok(EquilibriumReport { ne, spe, bi_outputs })
}

fn payoff(g: &Game, o: OutcomeId, a: PlayerId) -> Result<Rational64> {
    g.universe.payoff(o, a).ok_or(Error::RequiresPayoffMode)
}

/// Largest payoff increase `a` can secure by a unilateral deviation (never negative).
pub fn max_gain(g: &Game, s: &Profile, a: PlayerId) -> Result<Rational64> {
    if !g.universe.payoff_mode {
        return Err(Error::RequiresPayoffMode);
    }
    let here = payoff(g, g.outcome(s), a)?;
    let mut best = Rational64::from_integer(0);
    for o in deviation_outcomes(g, s, a, NodeId::ROOT) {
        best = best.max(payoff(g, o, a)? - here);
    }
    Ok(best)
}

/// No unilateral deviation raises the deviator's payoff by more than `eps`.
pub fn epsilon_nash(g: &Game, s: &Profile, eps: Rational64) -> Result<bool> {
    if eps < Rational64::from_integer(0) {
        return Err(Error::ParameterOutOfRange("epsilon must be non-negative".into()));
    }
    for a in g.players() {
        if max_gain(g, s, a)? > eps {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Lazy conversions of `a` that raise its payoff by more than `eps`.
pub fn epsilon_lazy_successors(g: &Game, s: &Profile, a: PlayerId, eps: Rational64) -> Result<Vec<Profile>> {
    if !g.universe.payoff_mode {
        return Err(Error::RequiresPayoffMode);
    }
    let here = payoff(g, g.outcome(s), a)?;
    let tree = &g.tree;
    let mut out = Vec::new();
    for (pos, path) in tree.leaf_paths().iter().enumerate() {
        let o = tree.leaf_outcome(tree.leaves()[pos]).expect("leaf");
        let reachable = path
            .iter()
            .all(|&(slot, c)| s.choice(slot as usize) == c || tree.owner_of_slot(slot as usize) == a);
        if reachable && payoff(g, o, a)? - here > eps {
            out.push(tree.redirect(s, pos));
        }
    }
    Ok(out)
}

/// Sinks of the lazy relation, for cross-checking against [`brute_force_nash`].
pub fn lazy_sinks(g: &Game) -> Result<Vec<Profile>> {
    Ok(g
        .all_profiles()?
        .filter(|s| g.is_sink(s, crate::dynamics::Relation::Lazy))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::lazy_successors;
    use crate::game::{TreeSpec, Universe};
    use crate::preference::Preference;

    fn r(n: i64) -> Rational64 {
        Rational64::from_integer(n)
    }

    fn payoff_game(payoffs: &[[i64; 2]], spec: TreeSpec) -> Game {
        let payoffs = payoffs.iter().map(|p| vec![r(p[0]), r(p[1])]).collect();
        Game::from_spec(Universe::from_payoffs(vec!["a".into(), "b".into()], payoffs).unwrap(), &spec).unwrap()
    }

    fn kuhn() -> Game {
        let l = TreeSpec::leaf;
        payoff_game(
            &[[4, 3], [1, 0], [3, 2]],
            TreeSpec::node(1, vec![TreeSpec::node(0, vec![TreeSpec::node(1, vec![l(0), l(1)]), l(2)]), l(1)]),
        )
    }

    #[test]
    fn kuhn_equilibria() {
        let g = kuhn();
        let ne = brute_force_nash(&g).unwrap();
        let bi = Profile::new(vec![0, 0, 0]);
        let other = Profile::new(vec![0, 1, 1]);
        assert_eq!(ne, vec![bi.clone(), other.clone()]);
        assert_eq!(backward_induction(&g).unwrap(), vec![bi.clone()]);
        assert!(is_spe(&g, &bi));
        assert!(!is_spe(&g, &other));
        assert_eq!(spe_via_linear_extension(&g).unwrap(), bi);
        assert_eq!(lazy_sinks(&g).unwrap(), ne);
        let report = equilibrium_report(&g).unwrap();
        assert_eq!(report.spe, vec![bi]);
    }

    #[test]
    fn aumann_bi_plays_left() {
        // a:( b:( a:(4,0|3,4), a:(2,1|1,2) ), 0,3 )
        let l = TreeSpec::leaf;
        let g = payoff_game(
            &[[4, 0], [3, 4], [2, 1], [1, 2], [0, 3]],
            TreeSpec::node(
                0,
                vec![
                    TreeSpec::node(1, vec![TreeSpec::node(0, vec![l(0), l(1)]), TreeSpec::node(0, vec![l(2), l(3)])]),
                    l(4),
                ],
            ),
        );
        assert_eq!(backward_induction(&g).unwrap(), vec![Profile::new(vec![0, 1, 0, 0])]);
    }

    #[test]
    fn weak_order_failures() {
        // a:( a:(x|z) | y ) with x≺y, y≺z only
        let u = Universe::new(
            vec!["a".into()],
            vec!["x".into(), "y".into(), "z".into()],
            vec![Preference::from_pairs(3, [(OutcomeId(0), OutcomeId(1)), (OutcomeId(1), OutcomeId(2))])],
        )
        .unwrap();
        let l = TreeSpec::leaf;
        let g = Game::from_spec(u, &TreeSpec::node(0, vec![TreeSpec::node(0, vec![l(0), l(2)]), l(1)])).unwrap();
        let outputs = backward_induction(&g).unwrap();
        let bad = Profile::new(vec![1, 0]);
        assert!(outputs.contains(&bad));
        assert!(!is_nash(&g, &bad));
    }

    #[test]
    fn empty_preferences_make_everything_nash() {
        let u = Universe::new(vec!["a".into()], vec!["x".into(), "y".into()], vec![Preference::empty(2)]).unwrap();
        let g = Game::from_spec(u, &TreeSpec::node(0, vec![TreeSpec::leaf(0), TreeSpec::leaf(1)])).unwrap();
        assert_eq!(brute_force_nash(&g).unwrap().len(), 2);
        assert_eq!(spe_via_linear_extension(&g).unwrap(), Profile::new(vec![1]));
        assert!(matches!(epsilon_nash(&g, &g.tree.first_profile(), r(0)), Err(Error::RequiresPayoffMode)));
    }

    #[test]
    fn epsilon_examples() {
        let g = kuhn();
        // b left at the root, a left, inner b right: payoff (1,0)
        let s = Profile::new(vec![0, 0, 1]);
        assert_eq!(max_gain(&g, &s, PlayerId(0)).unwrap(), r(2));
        assert_eq!(max_gain(&g, &s, PlayerId(1)).unwrap(), r(3));
        assert!(epsilon_nash(&g, &s, r(3)).unwrap());
        assert!(!epsilon_nash(&g, &s, r(1)).unwrap());
        for t in g.all_profiles().unwrap() {
            assert_eq!(epsilon_nash(&g, &t, r(0)).unwrap(), is_nash(&g, &t));
            for a in g.players() {
                assert_eq!(
                    epsilon_lazy_successors(&g, &t, a, r(0)).unwrap(),
                    lazy_successors(&g, &t, a)
                );
            }
        }
    }
}
