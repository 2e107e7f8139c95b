//! Seeded random games and preferences.
//!
//! Every generator draws from a `ChaCha8Rng` so the same seed gives the same
//! document on every platform.

use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use num_rational::Rational64;
use rand_chacha::ChaCha8Rng;

use crate::dag::{DagGame, DagNode};
use crate::error::{Error, Result};
use crate::game::{Game, OutcomeId, PlayerId, TreeSpec, Universe};
use crate::io::{DagDoc, Document, TreeDoc};
use crate::normal_form::NormalFormGame;
use crate::preference::Preference;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GameKind {
    Tree,
    Dag,
    NormalForm,
}

impl FromStr for GameKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "tree" => Ok(GameKind::Tree),
            "dag" => Ok(GameKind::Dag),
            "nf" | "normal-form" => Ok(GameKind::NormalForm),
            _ => Err(format!("unknown kind {s}")),
        }
    }
}

/// Requested preference class. `Mixed` draws one of the others per player.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrefKind {
    Linear,
    Acyclic,
    Swo,
    Crazy,
    Mixed,
}

impl FromStr for PrefKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "linear" => Ok(PrefKind::Linear),
            "acyclic" => Ok(PrefKind::Acyclic),
            "swo" => Ok(PrefKind::Swo),
            "crazy" => Ok(PrefKind::Crazy),
            "mixed" => Ok(PrefKind::Mixed),
            _ => Err(format!("unknown preference class {s}")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GenParams {
    pub kind: GameKind,
    pub players: usize,
    /// Tree depth; for DAGs the number of choice nodes.
    pub depth: usize,
    /// Most children per node; for normal form, strategies per player.
    pub branch: usize,
    pub outcomes: usize,
    pub pref: PrefKind,
    /// Redraw the shape until the profile count fits.
    pub max_profiles: Option<u128>,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            kind: GameKind::Tree,
            players: 2,
            depth: 2,
            branch: 2,
            outcomes: 3,
            pref: PrefKind::Linear,
            max_profiles: None,
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn player_names(n: usize) -> Vec<String> {
    const NAMES: [&str; 6] = ["a", "b", "c", "d", "e", "f"];
    (0..n)
        .map(|i| NAMES.get(i).map_or_else(|| format!("p{i}"), |s| s.to_string()))
        .collect()
}

fn outcome_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("o{i}")).collect()
}

fn shuffled(rng: &mut impl Rng, n: usize) -> Vec<OutcomeId> {
    let mut order: Vec<OutcomeId> = (0..n).map(OutcomeId::new).collect();
    order.shuffle(rng);
    order
}

/// A relation of exactly the requested class.
pub fn random_preference(rng: &mut impl Rng, n: usize, kind: PrefKind) -> Result<Preference> {
    let kind = match kind {
        // only classes that exist over n outcomes
        PrefKind::Mixed => {
            let feasible = [(PrefKind::Linear, 0), (PrefKind::Swo, 2), (PrefKind::Crazy, 2), (PrefKind::Acyclic, 3)];
            let options: Vec<PrefKind> = feasible.iter().filter(|&&(_, min)| n >= min).map(|&(k, _)| k).collect();
            *options.choose(rng).expect("linear always fits")
        }
        k => k,
    };
    let too_few = |class: &str, min: usize| {
        Error::ParameterOutOfRange(format!("{class} preferences need at least {min} outcomes, got {n}"))
    };
    match kind {
        PrefKind::Linear => Ok(Preference::chain(n, &shuffled(rng, n))),
        PrefKind::Swo => {
            if n < 2 {
                return Err(too_few("strict weak order", 2));
            }
            // cut a shuffled order into groups, at least one of them shared
            let order = shuffled(rng, n);
            let tied = rng.gen_range(0..n - 1);
            let mut groups: Vec<Vec<OutcomeId>> = vec![vec![order[0]]];
            for (i, &o) in order.iter().enumerate().skip(1) {
                if i == tied + 1 || rng.gen_bool(0.4) {
                    groups.last_mut().expect("non-empty").push(o);
                } else {
                    groups.push(vec![o]);
                }
            }
            Ok(Preference::layered(n, &groups))
        }
        PrefKind::Acyclic => {
            if n < 3 {
                return Err(too_few("acyclic (not weakly ordered)", 3));
            }
            loop {
                let order = shuffled(rng, n);
                let mut p = Preference::empty(n);
                for i in 0..n {
                    for j in i + 1..n {
                        if rng.gen_bool(0.5) {
                            p.insert(order[i], order[j]);
                        }
                    }
                }
                if p.classify() == crate::PreferenceClass::Acyclic {
                    return Ok(p);
                }
            }
        }
        PrefKind::Crazy => {
            if n < 2 {
                return Err(too_few("cyclic", 2));
            }
            let mut p = Preference::empty(n);
            for x in 0..n {
                for y in 0..n {
                    if x != y && rng.gen_bool(0.25) {
                        p.insert(OutcomeId::new(x), OutcomeId::new(y));
                    }
                }
            }
            let len = rng.gen_range(2..=n);
            let cycle = &shuffled(rng, n)[..len];
            for i in 0..len {
                p.insert(cycle[i], cycle[(i + 1) % len]);
            }
            Ok(p)
        }
        PrefKind::Mixed => unreachable!("resolved above"),
    }
}

pub fn random_universe(rng: &mut impl Rng, players: usize, outcomes: usize, pref: PrefKind) -> Result<Universe> {
    if players == 0 || outcomes == 0 {
        return Err(Error::ParameterOutOfRange("need at least one player and one outcome".into()));
    }
    let prefs = (0..players)
        .map(|_| random_preference(rng, outcomes, pref))
        .collect::<Result<_>>()?;
    Universe::new(player_names(players), outcome_names(outcomes), prefs)
}

/// Up to `outcomes` distinct integer payoff vectors with entries in `0..=max`.
pub fn random_payoff_universe(rng: &mut impl Rng, players: usize, outcomes: usize, max: i64) -> Result<Universe> {
    let cells = (0..outcomes)
        .map(|_| (0..players).map(|_| Rational64::from_integer(rng.gen_range(0..=max))).collect())
        .collect();
    Ok(Universe::intern_payoffs(player_names(players), cells)?.0)
}

fn random_spec(rng: &mut impl Rng, players: usize, depth: usize, branch: usize, outcomes: usize, root: bool) -> TreeSpec {
    if depth == 0 || !(root || rng.gen_bool(0.6)) {
        return TreeSpec::leaf(rng.gen_range(0..outcomes));
    }
    let k = rng.gen_range(branch.min(2)..=branch);
    let children = (0..k)
        .map(|_| random_spec(rng, players, depth - 1, branch, outcomes, false))
        .collect();
    TreeSpec::node(rng.gen_range(0..players), children)
}

pub fn random_tree_game(rng: &mut impl Rng, u: Universe, depth: usize, branch: usize, max_profiles: Option<u128>) -> Result<Game> {
    if branch == 0 {
        return Err(Error::ParameterOutOfRange("branch must be positive".into()));
    }
    let (players, outcomes) = (u.n_players(), u.n_outcomes());
    loop {
        let spec = random_spec(rng, players, depth, branch, outcomes, true);
        let g = Game::from_spec(u.clone(), &spec)?;
        if max_profiles.is_none_or(|m| g.profile_count() <= m) {
            return Ok(g);
        }
    }
}

/// Choice nodes `n0 … n{nodes-1}` in topological order, `n0` the root, one
/// sink per outcome that ends up reachable.
pub fn random_dag_game(rng: &mut impl Rng, u: Universe, nodes: usize, branch: usize, max_profiles: Option<u128>) -> Result<DagGame> {
    if nodes == 0 || branch == 0 {
        return Err(Error::ParameterOutOfRange("need at least one choice node and a positive branch".into()));
    }
    let (players, outcomes) = (u.n_players(), u.n_outcomes());
    loop {
        // targets: choice nodes by index, sinks as nodes + outcome
        let mut succ: Vec<Vec<usize>> = (0..nodes)
            .map(|i| {
                let mut pool: Vec<usize> = (i + 1..nodes + outcomes).collect();
                pool.shuffle(rng);
                let k = rng.gen_range(1..=branch.min(pool.len()));
                pool.truncate(k);
                pool
            })
            .collect();
        for j in 1..nodes {
            if !succ[..j].iter().any(|s| s.contains(&j)) {
                let i = rng.gen_range(0..j);
                succ[i].push(j);
            }
        }
        for s in &mut succ {
            s.sort_unstable();
        }
        let used: Vec<usize> = (0..outcomes).filter(|&o| succ.iter().any(|s| s.contains(&(nodes + o)))).collect();
        let index_of = |t: usize| if t < nodes { t } else { nodes + used.iter().position(|&o| o == t - nodes).expect("used") };
        let mut list: Vec<DagNode> = succ
            .iter()
            .enumerate()
            .map(|(i, s)| {
                DagNode::choice(format!("n{i}"), PlayerId::new(rng.gen_range(0..players)), s.iter().map(|&t| index_of(t)).collect())
            })
            .collect();
        list.extend(used.iter().map(|&o| DagNode::sink(format!("L{o}"), OutcomeId::new(o))));
        let g = DagGame::new(u.clone(), list, 0)?;
        if max_profiles.is_none_or(|m| g.profile_count() <= m) {
            return Ok(g);
        }
    }
}

pub fn random_nf_game(rng: &mut impl Rng, u: Universe, strategies: usize) -> Result<NormalFormGame> {
    if strategies == 0 {
        return Err(Error::ParameterOutOfRange("need at least one strategy".into()));
    }
    let names: Vec<Vec<String>> = player_names(u.n_players())
        .iter()
        .map(|p| (0..strategies).map(|k| format!("{p}{k}")).collect())
        .collect();
    let outcomes = u.n_outcomes();
    let count = crate::game::count_product(names.iter().map(Vec::len));
    crate::game::check_cap(count)?;
    let table = (0..count).map(|_| OutcomeId::new(rng.gen_range(0..outcomes))).collect();
    NormalFormGame::new(u, names, table)
}

pub fn generate(params: &GenParams, seed: u64) -> Result<Document> {
    let mut rng = rng(seed);
    let u = random_universe(&mut rng, params.players, params.outcomes, params.pref)?;
    Ok(match params.kind {
        GameKind::Tree => Document::Tree(TreeDoc {
            game: random_tree_game(&mut rng, u, params.depth, params.branch, params.max_profiles)?,
            profile: None,
            script: Vec::new(),
        }),
        GameKind::Dag => Document::Dag(DagDoc {
            game: random_dag_game(&mut rng, u, params.depth, params.branch, params.max_profiles)?,
            profile: None,
            script: Vec::new(),
        }),
        GameKind::NormalForm => Document::NormalForm(random_nf_game(&mut rng, u, params.branch)?),
    })
}

/// Strict linear preferences that agree on a random sequence of blocks of
/// one or two outcomes; inside a two-outcome block each player picks a side.
pub fn random_block_family(rng: &mut impl Rng, players: usize, outcomes: usize) -> Result<Universe> {
    let order = shuffled(rng, outcomes);
    let mut blocks: Vec<Vec<OutcomeId>> = Vec::new();
    let mut i = 0;
    while i < outcomes {
        let size = if i + 1 < outcomes && rng.gen_bool(0.5) { 2 } else { 1 };
        blocks.push(order[i..i + size].to_vec());
        i += size;
    }
    let prefs = (0..players)
        .map(|_| {
            let chain: Vec<OutcomeId> = blocks
                .iter()
                .flat_map(|b| {
                    let mut b = b.clone();
                    if rng.gen_bool(0.5) {
                        b.reverse();
                    }
                    b
                })
                .collect();
            Preference::chain(outcomes, &chain)
        })
        .collect();
    Universe::new(player_names(players), outcome_names(outcomes), prefs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::PreferenceClass;

    #[test]
    fn classes_are_honored() {
        let mut r = rng(7);
        for n in 3..7 {
            for _ in 0..50 {
                assert_eq!(random_preference(&mut r, n, PrefKind::Linear).unwrap().classify(), PreferenceClass::StrictLinear);
                assert_eq!(random_preference(&mut r, n, PrefKind::Swo).unwrap().classify(), PreferenceClass::StrictWeakOrder);
                assert_eq!(random_preference(&mut r, n, PrefKind::Acyclic).unwrap().classify(), PreferenceClass::Acyclic);
                assert_eq!(random_preference(&mut r, n, PrefKind::Crazy).unwrap().classify(), PreferenceClass::Arbitrary);
            }
        }
        assert!(random_preference(&mut r, 2, PrefKind::Acyclic).is_err());
        assert!(random_preference(&mut r, 1, PrefKind::Swo).is_err());
    }

    #[test]
    fn same_seed_same_document() {
        for kind in [GameKind::Tree, GameKind::Dag, GameKind::NormalForm] {
            let p = GenParams { kind, depth: 3, outcomes: 4, pref: PrefKind::Mixed, ..GenParams::default() };
            assert_eq!(generate(&p, 11).unwrap(), generate(&p, 11).unwrap());
        }
    }

    #[test]
    fn dags_have_one_root_and_fit_the_cap() {
        let mut r = rng(3);
        for _ in 0..100 {
            let u = random_universe(&mut r, 2, 4, PrefKind::Linear).unwrap();
            let g = random_dag_game(&mut r, u, 8, 3, Some(10_000)).unwrap();
            assert!(g.profile_count() <= 10_000);
            assert_eq!(crate::dag::sources(g.nodes()), vec![0]);
        }
    }
}
