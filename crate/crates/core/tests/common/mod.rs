//! Seeded corpora and brute-force oracles shared by the integration tests.
//! The oracles walk the game structures directly and do not call the
//! library's equilibrium or convertibility code.

#![allow(dead_code)]

use lazyeq::dag::DagGame;
use lazyeq::game::NodeKind;
use lazyeq::generate::{self, PrefKind};
use lazyeq::io::Document;
use lazyeq::{Game, NodeId, OutcomeId, PlayerId, Preference, Profile};
use rand::Rng;

pub const PROFILE_CAP: u128 = 20_000;

pub fn tree_from_seed(seed: u64, pref: PrefKind) -> Game {
    let mut rng = generate::rng(seed);
    let players = rng.gen_range(1..=3);
    let outcomes = rng.gen_range(3..=5);
    let depth = rng.gen_range(1..=3);
    let branch = rng.gen_range(2..=3);
    let u = generate::random_universe(&mut rng, players, outcomes, pref).unwrap();
    generate::random_tree_game(&mut rng, u, depth, branch, Some(4_000)).unwrap()
}

pub fn dag_from_seed(seed: u64, pref: PrefKind, max_nodes: usize) -> DagGame {
    let mut rng = generate::rng(seed);
    let players = rng.gen_range(1..=3);
    let outcomes = rng.gen_range(3..=5);
    let nodes = rng.gen_range(1..=max_nodes);
    let u = generate::random_universe(&mut rng, players, outcomes, pref).unwrap();
    generate::random_dag_game(&mut rng, u, nodes, 3, Some(4_000)).unwrap()
}

/// Trees with 1 to 3 players, depth 1 to 3, branching up to 3, 1 to 5
/// outcomes and per-player preference classes drawn at random.
pub fn tree_corpus(count: u64) -> Vec<Game> {
    (0..count)
        .map(|seed| {
            let mut rng = generate::rng(seed);
            let players = rng.gen_range(1..=3);
            let outcomes = rng.gen_range(1..=5);
            let depth = rng.gen_range(1..=3);
            let branch = rng.gen_range(2..=3);
            let u = generate::random_universe(&mut rng, players, outcomes, PrefKind::Mixed).unwrap();
            generate::random_tree_game(&mut rng, u, depth, branch, Some(PROFILE_CAP)).unwrap()
        })
        .collect()
}

/// DAGs with 1 to 8 choice nodes.
pub fn dag_corpus(count: u64) -> Vec<DagGame> {
    (0..count)
        .map(|seed| {
            let mut rng = generate::rng(10_000 + seed);
            let players = rng.gen_range(1..=3);
            let outcomes = rng.gen_range(1..=5);
            let nodes = rng.gen_range(1..=8);
            let branch = rng.gen_range(2..=3);
            let u = generate::random_universe(&mut rng, players, outcomes, PrefKind::Mixed).unwrap();
            generate::random_dag_game(&mut rng, u, nodes, branch, Some(PROFILE_CAP)).unwrap()
        })
        .collect()
}

/// Trees whose outcomes carry small integer payoffs.
pub fn payoff_corpus(count: u64) -> Vec<Game> {
    (0..count)
        .map(|seed| {
            let mut rng = generate::rng(20_000 + seed);
            let players = rng.gen_range(1..=3);
            let outcomes = rng.gen_range(1..=5);
            let depth = rng.gen_range(1..=3);
            let branch = rng.gen_range(2..=3);
            let u = generate::random_payoff_universe(&mut rng, players, outcomes, 4).unwrap();
            generate::random_tree_game(&mut rng, u, depth, branch, Some(PROFILE_CAP)).unwrap()
        })
        .collect()
}

pub fn tree_of(doc: Document) -> Game {
    match doc {
        Document::Tree(d) => d.game,
        other => panic!("expected a tree, got {}", other.kind()),
    }
}

pub fn dag_of(doc: Document) -> DagGame {
    match doc {
        Document::Dag(d) => d.game,
        other => panic!("expected a dag, got {}", other.kind()),
    }
}

/// Every assignment of choices to the given degrees, first slot slowest.
pub fn odometer(degrees: &[usize]) -> Vec<Vec<u16>> {
    let mut out = vec![Vec::new()];
    for &d in degrees {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..d as u16).map(move |c| {
                    let mut p = prefix.clone();
                    p.push(c);
                    p
                })
            })
            .collect();
    }
    out
}

pub fn tree_profiles(g: &Game) -> Vec<Profile> {
    odometer(&g.tree.degrees()).into_iter().map(Profile::new).collect()
}

fn children(g: &Game, v: NodeId) -> Option<(PlayerId, &[NodeId])> {
    match &g.tree.node(v).kind {
        NodeKind::Internal { owner, children } => Some((*owner, children)),
        NodeKind::Leaf(_) => None,
    }
}

/// Outcome reached from `v` by following `s`.
pub fn walk(g: &Game, s: &Profile, mut v: NodeId) -> OutcomeId {
    loop {
        match &g.tree.node(v).kind {
            NodeKind::Leaf(o) => return *o,
            NodeKind::Internal { children, .. } => {
                v = children[s.choice(g.tree.slot(v).unwrap()) as usize];
            }
        }
    }
}

/// Internal nodes on the play of `s`.
pub fn play_slots(g: &Game, s: &Profile) -> Vec<usize> {
    let mut v = NodeId::ROOT;
    let mut out = Vec::new();
    while let Some((_, kids)) = children(g, v) {
        let slot = g.tree.slot(v).unwrap();
        out.push(slot);
        v = kids[s.choice(slot) as usize];
    }
    out
}

/// All profiles `a` reaches by rewriting its own nodes, `s` included.
pub fn tree_conversions(g: &Game, s: &Profile, a: PlayerId) -> Vec<Profile> {
    let mine: Vec<usize> = (0..s.len()).filter(|&k| g.tree.owner_of_slot(k) == a).collect();
    let degrees: Vec<usize> = mine.iter().map(|&k| g.tree.degree(k)).collect();
    odometer(&degrees)
        .into_iter()
        .map(|choice| {
            let mut t = s.clone();
            for (&k, &c) in mine.iter().zip(&choice) {
                t.set(k, c);
            }
            t
        })
        .collect()
}

/// Changes only at `a`'s nodes, and only on the new play.
pub fn tree_lazy(g: &Game, s: &Profile, t: &Profile, a: PlayerId) -> bool {
    let on_play = play_slots(g, t);
    (0..s.len())
        .filter(|&k| s.choice(k) != t.choice(k))
        .all(|k| g.tree.owner_of_slot(k) == a && on_play.contains(&k))
}

pub fn tree_nash(g: &Game) -> Vec<Profile> {
    let u = &g.universe;
    let mut out: Vec<Profile> = tree_profiles(g)
        .into_iter()
        .filter(|s| {
            let here = walk(g, s, NodeId::ROOT);
            u.player_ids().all(|a| {
                tree_conversions(g, s, a)
                    .iter()
                    .all(|t| !u.pref(a).prefers(here, walk(g, t, NodeId::ROOT)))
            })
        })
        .collect();
    out.sort();
    out
}

/// Longest chain of an acyclic `p` ending at each outcome, by exhaustive search.
pub fn heights(p: &Preference) -> Vec<usize> {
    fn up(p: &Preference, o: usize, memo: &mut Vec<Option<usize>>) -> usize {
        if let Some(h) = memo[o] {
            return h;
        }
        let n = p.n_outcomes();
        let h = 1 + (0..n)
            .filter(|&x| p.prefers(OutcomeId::new(x), OutcomeId::new(o)))
            .map(|x| up(p, x, memo))
            .max()
            .unwrap_or(0);
        memo[o] = Some(h);
        h
    }
    let mut memo = vec![None; p.n_outcomes()];
    (0..p.n_outcomes()).map(|o| up(p, o, &mut memo)).collect()
}

/// Per player, the number of children passed over at its nodes.
pub fn dismissed_total(g: &Game) -> Vec<usize> {
    let mut out = vec![0; g.universe.n_players()];
    for slot in 0..g.tree.n_internal() {
        out[g.tree.owner_of_slot(slot).index()] += g.tree.degree(slot) - 1;
    }
    out
}

/// Per player and outcome, the passed-over children leading to that outcome.
pub fn dismissed(g: &Game, s: &Profile) -> Vec<Vec<usize>> {
    let mut out = vec![vec![0; g.universe.n_outcomes()]; g.universe.n_players()];
    for slot in 0..g.tree.n_internal() {
        let v = g.tree.node_of_slot(slot);
        let (owner, kids) = children(g, v).unwrap();
        for (j, &c) in kids.iter().enumerate() {
            if j != s.choice(slot) as usize {
                out[owner.index()][walk(g, s, c).index()] += 1;
            }
        }
    }
    out
}

pub fn dag_profiles(g: &DagGame) -> Vec<Profile> {
    let degrees: Vec<usize> = (0..g.n_slots()).map(|k| g.succ(g.node_of_slot(k)).len()).collect();
    odometer(&degrees).into_iter().map(Profile::new).collect()
}

/// Nodes visited from the root, ending at a sink.
pub fn dag_walk(g: &DagGame, s: &Profile) -> Vec<usize> {
    let mut v = g.root();
    let mut out = vec![v];
    while let Some(slot) = g.slot(v) {
        v = g.succ(v)[s.choice(slot) as usize];
        out.push(v);
    }
    out
}

pub fn dag_result(g: &DagGame, s: &Profile) -> OutcomeId {
    g.sink_outcome(*dag_walk(g, s).last().unwrap()).unwrap()
}

pub fn dag_conversions(g: &DagGame, s: &Profile, a: PlayerId) -> Vec<Profile> {
    let mine: Vec<usize> = (0..g.n_slots()).filter(|&k| g.node_owner(g.node_of_slot(k)) == Some(a)).collect();
    let degrees: Vec<usize> = mine.iter().map(|&k| g.succ(g.node_of_slot(k)).len()).collect();
    odometer(&degrees)
        .into_iter()
        .map(|choice| {
            let mut t = s.clone();
            for (&k, &c) in mine.iter().zip(&choice) {
                t.set(k, c);
            }
            t
        })
        .collect()
}

pub fn dag_lazy(g: &DagGame, s: &Profile, t: &Profile, a: PlayerId) -> bool {
    let on_play = dag_walk(g, t);
    (0..s.len())
        .filter(|&k| s.choice(k) != t.choice(k))
        .all(|k| {
            let v = g.node_of_slot(k);
            g.node_owner(v) == Some(a) && on_play.contains(&v)
        })
}

pub fn dag_nash_oracle(g: &DagGame) -> Vec<Profile> {
    let u = &g.universe;
    let mut out: Vec<Profile> = dag_profiles(g)
        .into_iter()
        .filter(|s| {
            let here = dag_result(g, s);
            u.player_ids().all(|a| {
                dag_conversions(g, s, a)
                    .iter()
                    .all(|t| !u.pref(a).prefers(here, dag_result(g, t)))
            })
        })
        .collect();
    out.sort();
    out
}

pub fn sorted(mut v: Vec<Profile>) -> Vec<Profile> {
    v.sort();
    v.dedup();
    v
}
