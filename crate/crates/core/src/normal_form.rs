//! Finite games in normal form: a table from strategy profiles to outcomes.
//!
//! A profile is a [`Profile`] with one slot per player holding the index of
//! that player's strategy.

use crate::dynamics::{improvement_graph, Dynamics, Relation, ScriptTarget};
use crate::error::{Error, Result};
use crate::game::{check_cap, count_product, Game, OutcomeId, PlayerId, Profile, ProfileIter, Universe};
use crate::graph::StateGraph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFormGame {
    pub universe: Universe,
    pub strategies: Vec<Vec<String>>,
    /// Outcomes by profile rank, first player most significant.
    table: Vec<OutcomeId>,
}

impl NormalFormGame {
    pub fn new(universe: Universe, strategies: Vec<Vec<String>>, table: Vec<OutcomeId>) -> Result<Self> {
        if strategies.len() != universe.n_players() {
            return Err(Error::Validation("one strategy set per player required".into()));
        }
        if strategies.iter().any(Vec::is_empty) {
            return Err(Error::Validation("empty strategy set".into()));
        }
        let count = count_product(strategies.iter().map(Vec::len));
        check_cap(count)?;
        if table.len() as u128 != count {
            return Err(Error::Validation(format!(
                "table has {} cells, expected {count}",
                table.len()
            )));
        }
        if table.iter().any(|o| o.index() >= universe.n_outcomes()) {
            return Err(Error::Validation("table names an unknown outcome".into()));
        }
        Ok(NormalFormGame { universe, strategies, table })
    }

    /// Builds the table by evaluating `cell` at every profile.
    pub fn from_fn(
        universe: Universe,
        strategies: Vec<Vec<String>>,
        cell: impl Fn(&Profile) -> OutcomeId,
    ) -> Result<Self> {
        let degrees: Vec<usize> = strategies.iter().map(Vec::len).collect();
        let table = ProfileIter::new(degrees)?.map(|s| cell(&s)).collect();
        NormalFormGame::new(universe, strategies, table)
    }

    /// The strategic form of a tree: strategies are full assignments of a
    /// player's nodes, cells are induced outcomes.
    pub fn from_tree(g: &Game) -> Result<Self> {
        let slots: Vec<Vec<usize>> = g.players().map(|a| g.slots_of(a)).collect();
        let plans: Vec<Vec<Vec<u16>>> = slots
            .iter()
            .map(|mine| {
                let degrees = mine.iter().map(|&k| g.tree.degree(k)).collect();
                Ok(ProfileIter::new(degrees)?.map(|p| p.choices().to_vec()).collect())
            })
            .collect::<Result<_>>()?;
        let names = plans
            .iter()
            .map(|ps| {
                ps.iter()
                    .map(|p| {
                        if p.is_empty() {
                            "-".to_string()
                        } else {
                            p.iter().map(u16::to_string).collect::<Vec<_>>().join(".")
                        }
                    })
                    .collect()
            })
            .collect();
        NormalFormGame::from_fn(g.universe.clone(), names, |s| {
            g.outcome(&tree_profile(g, &slots, &plans, s))
        })
    }

    pub fn degrees_vec(&self) -> Vec<usize> {
        self.strategies.iter().map(Vec::len).collect()
    }

    pub fn cell(&self, s: &Profile) -> OutcomeId {
        self.table[s.rank(&self.degrees_vec()) as usize]
    }

    pub fn profiles(&self) -> ProfileIter {
        ProfileIter::new(self.degrees_vec()).expect("checked at construction")
    }

    pub fn strategy_id(&self, a: PlayerId, name: &str) -> Option<u16> {
        self.strategies[a.index()].iter().position(|s| s == name).map(|i| i as u16)
    }

    pub fn profile_label(&self, s: &Profile) -> String {
        let parts: Vec<&str> = s
            .choices()
            .iter()
            .enumerate()
            .map(|(a, &c)| self.strategies[a][c as usize].as_str())
            .collect();
        format!("({})", parts.join(","))
    }
}

/// The tree profile behind a strategic-form profile of [`NormalFormGame::from_tree`].
fn tree_profile(g: &Game, slots: &[Vec<usize>], plans: &[Vec<Vec<u16>>], s: &Profile) -> Profile {
    let mut t = g.tree.first_profile();
    for (a, mine) in slots.iter().enumerate() {
        let plan = &plans[a][s.choice(a) as usize];
        for (&k, &c) in mine.iter().zip(plan) {
            t.set(k, c);
        }
    }
    t
}

impl Dynamics for NormalFormGame {
    fn universe(&self) -> &Universe {
        &self.universe
    }

    fn degrees(&self) -> Vec<usize> {
        self.degrees_vec()
    }

    fn owner(&self, slot: usize) -> PlayerId {
        PlayerId::new(slot)
    }

    fn outcome(&self, s: &Profile) -> OutcomeId {
        self.cell(s)
    }

    /// Without a tree there is nothing to be lazy about.
    fn lazy_successors(&self, s: &Profile, a: PlayerId) -> Vec<Profile> {
        self.plain_successors(s, a)
    }
}

impl ScriptTarget for NormalFormGame {
    /// Tables have no plays to aim at.
    fn redirect_along(&self, _: &Profile, _: &[u16]) -> Option<Profile> {
        None
    }
}

/// `s →_a t`: only `a`'s strategy may differ.
pub fn nf_convertible(g: &NormalFormGame, s: &Profile, t: &Profile, a: PlayerId) -> Result<bool> {
    g.check_profile(s)?;
    g.check_profile(t).map_err(|_| Error::ShapeMismatch)?;
    Ok(s.diff(t).all(|k| k == a.index()))
}

/// Equilibria by the definition, cross-checked against the improvement sinks.
pub fn nf_nash(g: &NormalFormGame) -> Result<Vec<Profile>> {
    let direct: Vec<Profile> = g.profiles().filter(|s| is_nf_nash(g, s)).collect();
    let sinks: Vec<Profile> = g.profiles().filter(|s| g.is_sink(s, Relation::Plain)).collect();
    assert_eq!(direct, sinks, "equilibria must be the improvement sinks");
    Ok(direct)
}

pub fn is_nf_nash(g: &NormalFormGame, s: &Profile) -> bool {
    let here = g.cell(s);
    g.universe.player_ids().all(|a| {
        (0..g.strategies[a.index()].len()).all(|k| {
            let mut t = s.clone();
            t.set(a.index(), k as u16);
            !g.universe.prefers(a, here, g.cell(&t))
        })
    })
}

pub fn nf_improvement_graph(g: &NormalFormGame) -> Result<StateGraph> {
    improvement_graph(g, Relation::Plain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    fn two_by_two(cells: [[i64; 2]; 4]) -> NormalFormGame {
        let payoffs = cells
            .iter()
            .map(|c| vec![Rational64::from_integer(c[0]), Rational64::from_integer(c[1])])
            .collect();
        let (u, table) = Universe::intern_payoffs(vec!["a".into(), "b".into()], payoffs).unwrap();
        NormalFormGame::new(u, vec![vec!["al".into(), "ar".into()], vec!["bl".into(), "br".into()]], table)
        .unwrap()
    }

    #[test]
    fn first_array_game() {
        let g = two_by_two([[1, 0], [5, 0], [2, 4], [5, 3]]);
        let p = |x: u16, y: u16| Profile::new(vec![x, y]);
        assert!(nf_convertible(&g, &p(0, 0), &p(1, 0), PlayerId(0)).unwrap());
        assert!(nf_convertible(&g, &p(0, 0), &p(0, 0), PlayerId(1)).unwrap());
        assert!(!nf_convertible(&g, &p(0, 0), &p(1, 1), PlayerId(0)).unwrap());
        assert_eq!(nf_nash(&g).unwrap(), vec![p(0, 1), p(1, 0)]);
        assert_eq!(g.profile_label(&p(1, 0)), "(ar,bl)");
    }

    #[test]
    fn pennies_has_a_four_cycle() {
        let g = two_by_two([[1, 0], [0, 1], [0, 1], [1, 0]]);
        assert!(nf_nash(&g).unwrap().is_empty());
        let graph = nf_improvement_graph(&g).unwrap();
        let cycle = graph.find_cycle().unwrap();
        assert_eq!(cycle.len(), 4);
        assert_eq!(graph.girth(), Some(4));
    }

    #[test]
    fn table_must_be_total() {
        let g = two_by_two([[1, 0], [0, 1], [0, 1], [1, 0]]);
        assert!(NormalFormGame::new(g.universe.clone(), g.strategies.clone(), vec![OutcomeId(0)]).is_err());
    }
}
