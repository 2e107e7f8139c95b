//! Convertibility, plain and lazy improvement, synchronous steps and the
//! run engine.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::game::{check_cap, count_product, Game, NodeId, NodeKind, OutcomeId, PlayerId, Profile, Universe};
use crate::graph::StateGraph;

/// Anything whose profiles are choice vectors and whose players improve by
/// rewriting their own choices: game trees, DAG games, restricted variants.
pub trait Dynamics: Sync {
    fn universe(&self) -> &Universe;
    fn degrees(&self) -> Vec<usize>;
    fn owner(&self, slot: usize) -> PlayerId;
    fn outcome(&self, s: &Profile) -> OutcomeId;
    fn lazy_successors(&self, s: &Profile, a: PlayerId) -> Vec<Profile>;

    fn n_players(&self) -> usize {
        self.universe().n_players()
    }

    fn check_profile(&self, s: &Profile) -> Result<()> {
        let degrees = self.degrees();
        if s.len() != degrees.len() {
            return Err(Error::ShapeMismatch);
        }
        for (slot, (&c, &d)) in s.choices().iter().zip(&degrees).enumerate() {
            if c as usize >= d {
                return Err(Error::InvalidProfile(format!("choice {c} out of range at node {slot}")));
            }
        }
        Ok(())
    }

    /// Every profile `a` can reach by rewriting only its own choices.
    fn conversions(&self, s: &Profile, a: PlayerId) -> Vec<Profile> {
        let degrees = self.degrees();
        let mine: Vec<usize> = (0..degrees.len()).filter(|&k| self.owner(k) == a).collect();
        let mut out = Vec::new();
        let mut t = s.clone();
        for &k in &mine {
            t.set(k, 0);
        }
        loop {
            out.push(t.clone());
            let mut i = mine.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                let k = mine[i];
                if (t.choice(k) as usize) + 1 < degrees[k] {
                    t.set(k, t.choice(k) + 1);
                    break;
                }
                t.set(k, 0);
            }
        }
    }

    fn plain_successors(&self, s: &Profile, a: PlayerId) -> Vec<Profile> {
        let here = self.outcome(s);
        let pref = self.universe().pref(a);
        self.conversions(s, a)
            .into_iter()
            .filter(|t| pref.prefers(here, self.outcome(t)))
            .collect()
    }

    fn successors(&self, s: &Profile, a: PlayerId, relation: Relation) -> Vec<Profile> {
        match relation {
            Relation::Plain => self.plain_successors(s, a),
            Relation::Lazy => self.lazy_successors(s, a),
        }
    }

    /// No player has an improvement: the sink characterization of equilibrium.
    fn is_sink(&self, s: &Profile, relation: Relation) -> bool {
        (0..self.n_players()).all(|a| self.successors(s, PlayerId::new(a), relation).is_empty())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Plain,
    Lazy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StepMode {
    Plain,
    Lazy,
    Sync,
}

impl FromStr for StepMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "plain" => Ok(StepMode::Plain),
            "lazy" => Ok(StepMode::Lazy),
            "sync" | "synchronous" => Ok(StepMode::Sync),
            _ => Err(format!("unknown mode {s}")),
        }
    }
}

impl Dynamics for Game {
    fn universe(&self) -> &Universe {
        &self.universe
    }

    fn degrees(&self) -> Vec<usize> {
        self.tree.degrees()
    }

    fn owner(&self, slot: usize) -> PlayerId {
        self.tree.owner_of_slot(slot)
    }

    fn outcome(&self, s: &Profile) -> OutcomeId {
        self.tree.outcome(s)
    }

    /// Leaf targeting: every leaf whose path crosses only `a`-nodes or nodes
    /// already pointing along it, and whose outcome `a` strictly prefers.
    fn lazy_successors(&self, s: &Profile, a: PlayerId) -> Vec<Profile> {
        let here = self.tree.outcome(s);
        let pref = self.universe.pref(a);
        let tree = &self.tree;
        let mut out = Vec::new();
        for (pos, path) in tree.leaf_paths().iter().enumerate() {
            let o = tree.leaf_outcome(tree.leaves()[pos]).expect("leaf");
            if !pref.prefers(here, o) {
                continue;
            }
            let reachable = path
                .iter()
                .all(|&(slot, c)| s.choice(slot as usize) == c || tree.owner_of_slot(slot as usize) == a);
            if reachable {
                out.push(tree.redirect(s, pos));
            }
        }
        out
    }
}

fn same_shape(g: &Game, s: &Profile, t: &Profile) -> Result<()> {
    g.tree.check_profile(s)?;
    g.tree.check_profile(t).map_err(|_| Error::ShapeMismatch)
}

/// `s ⇶ᶜ_a t`: the profiles agree at every node not owned by `a`.
pub fn convertible(g: &Game, s: &Profile, t: &Profile, a: PlayerId) -> Result<bool> {
    same_shape(g, s, t)?;
    Ok(s.diff(t).all(|k| g.tree.owner_of_slot(k) == a))
}

/// `s ⇀ᶜ_a t`, read off the new play: changes only at `a`-nodes that `t`'s play visits.
pub fn lazy_convertible(g: &Game, s: &Profile, t: &Profile, a: PlayerId) -> Result<bool> {
    same_shape(g, s, t)?;
    let play = g.tree.induced_play(t);
    Ok(s.diff(t).all(|k| {
        let node = g.tree.node_of_slot(k);
        g.tree.owner_of_slot(k) == a && play.nodes.contains(&node)
    }))
}

/// `s ⇀ᶜ_a t` by the recursive definition over subprofiles.
pub fn lazy_convertible_inductive(g: &Game, s: &Profile, t: &Profile, a: PlayerId) -> Result<bool> {
    same_shape(g, s, t)?;
    Ok(inductive_at(g, s, t, a, NodeId::ROOT))
}

fn inductive_at(g: &Game, s: &Profile, t: &Profile, a: PlayerId, v: NodeId) -> bool {
    let tree = &g.tree;
    match &tree.node(v).kind {
        NodeKind::Leaf(_) => true,
        NodeKind::Internal { owner, children } => {
            let slot = tree.slot(v).expect("internal");
            let (i, k) = (s.choice(slot) as usize, t.choice(slot) as usize);
            if *owner != a && i != k {
                return false;
            }
            let others_equal = children
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != k)
                .all(|(_, &c)| tree.slots_below(c).all(|x| s.choice(x) == t.choice(x)));
            others_equal && inductive_at(g, s, t, a, children[k])
        }
    }
}

/// `s ⇀ᶜ_a t` as change-minimality: `t` is an `a`-conversion and no profile
/// inducing `t`'s leaf differs from `s` at fewer nodes.
pub fn lazy_convertible_minimal(g: &Game, s: &Profile, t: &Profile, a: PlayerId) -> Result<bool> {
    if !convertible(g, s, t, a)? {
        return Ok(false);
    }
    let leaf = g.tree.induced_play(t).leaf;
    let pos = g.tree.leaves().binary_search(&leaf).expect("leaf");
    let fewest = g.tree.leaf_paths()[pos]
        .iter()
        .filter(|&&(slot, c)| s.choice(slot as usize) != c)
        .count();
    Ok(s.distance(t) <= fewest)
}

pub fn lazy_successors(g: &Game, s: &Profile, a: PlayerId) -> Vec<Profile> {
    Dynamics::lazy_successors(g, s, a)
}

pub fn plain_successors(g: &Game, s: &Profile, a: PlayerId) -> Vec<Profile> {
    Dynamics::plain_successors(g, s, a)
}

/// Merges one lazy improvement per selecting player: every node takes its
/// owner's selected choice, or keeps `s`'s choice if the owner sat out.
pub fn synchronous_step<D: Dynamics + ?Sized>(sys: &D, s: &Profile, selections: &[(PlayerId, Profile)]) -> Result<Profile> {
    sys.check_profile(s)?;
    let mut chosen: Vec<Option<&Profile>> = vec![None; sys.n_players()];
    for (a, t) in selections {
        if !sys.lazy_successors(s, *a).contains(t) {
            return Err(Error::NotLazySuccessor(sys.universe().player_name(*a).to_string()));
        }
        chosen[a.index()] = Some(t);
    }
    let mut merged = s.clone();
    for slot in 0..s.len() {
        if let Some(t) = chosen[sys.owner(slot).index()] {
            merged.set(slot, t.choice(slot));
        }
    }
    Ok(merged)
}

/// No acyclic player has a lazy improvement; cyclic players are ignored.
pub fn is_semi_nash<D: Dynamics + ?Sized>(sys: &D, s: &Profile) -> bool {
    let u = sys.universe();
    u.player_ids()
        .filter(|&a| u.pref(a).is_acyclic())
        .all(|a| sys.lazy_successors(s, a).is_empty())
}

pub fn improvement_graph<D: Dynamics + ?Sized>(sys: &D, relation: Relation) -> Result<StateGraph> {
    let degrees = sys.degrees();
    let count = count_product(degrees.iter().copied());
    check_cap(count)?;
    let players: Vec<PlayerId> = sys.universe().player_ids().collect();
    let adj: Vec<Vec<(u32, PlayerId)>> = (0..count as u64)
        .into_par_iter()
        .map(|rank| {
            let s = Profile::unrank(rank, &degrees);
            let mut out = Vec::new();
            for &a in &players {
                for t in sys.successors(&s, a, relation) {
                    out.push((t.rank(&degrees) as u32, a));
                }
            }
            out
        })
        .collect();
    Ok(StateGraph::new(degrees, adj))
}

/// A scripted move: `player` lazily redirects play toward the leaf at `path`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScriptStep {
    pub player: PlayerId,
    pub path: Vec<u16>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Policy {
    /// Lowest-numbered player with a move, then its first successor.
    First,
    /// Uniform over all (player, successor) pairs.
    UniformRandom,
    /// Players take turns; the mover picks uniformly among its successors.
    RoundRobin,
    /// Fixed moves, then `First` once the script runs out.
    Scripted(Vec<ScriptStep>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub mode: StepMode,
    pub policy: Policy,
    pub seed: u64,
    pub max_steps: usize,
    /// Stop at the first revisited profile; otherwise keep going to the cap.
    pub stop_on_cycle: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            mode: StepMode::Lazy,
            policy: Policy::UniformRandom,
            seed: 0,
            max_steps: 10_000,
            stop_on_cycle: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    TerminatedAtNe,
    /// `first_repeat_index` is the step whose profile was seen before.
    CycleDetected { first_repeat_index: usize, period: usize },
    StepCapReached,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::TerminatedAtNe => write!(f, "terminated at a Nash equilibrium"),
            Verdict::CycleDetected { first_repeat_index, period } => {
                write!(f, "cycle detected at step {first_repeat_index} with period {period}")
            }
            Verdict::StepCapReached => write!(f, "step cap reached"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub movers: Vec<PlayerId>,
    pub profile: Profile,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunTrace {
    pub start: Profile,
    pub steps: Vec<Step>,
    pub verdict: Verdict,
    /// First revisit, even when the run was told to continue past it.
    pub first_cycle: Option<(usize, usize)>,
    pub step_counts: Vec<usize>,
    pub seed: u64,
}

impl RunTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn last(&self) -> &Profile {
        self.steps.last().map_or(&self.start, |s| &s.profile)
    }

    /// Start followed by every visited profile.
    pub fn profiles(&self) -> impl Iterator<Item = &Profile> {
        std::iter::once(&self.start).chain(self.steps.iter().map(|s| &s.profile))
    }
}

/// Systems on which a move can be named by the play it leads to.
pub trait ScriptTarget {
    /// `s` with every node on the root path `path` pointing along it.
    fn redirect_along(&self, s: &Profile, path: &[u16]) -> Option<Profile>;
}

impl ScriptTarget for Game {
    fn redirect_along(&self, s: &Profile, path: &[u16]) -> Option<Profile> {
        let pos = self.tree.leaf_by_path(path)?;
        Some(self.tree.redirect(s, pos))
    }
}

/// Runs the selected dynamics from `start`. Deterministic for a given seed.
pub fn run<D: Dynamics + ScriptTarget>(sys: &D, start: &Profile, config: &RunConfig) -> Result<RunTrace> {
    sys.check_profile(start)?;
    if config.mode == StepMode::Sync && matches!(config.policy, Policy::Scripted(_)) {
        return Err(Error::Validation("scripted policy is not available in synchronous mode".into()));
    }
    let n = sys.n_players();
    let relation = if config.mode == StepMode::Plain { Relation::Plain } else { Relation::Lazy };
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut seen: HashMap<Profile, usize> = HashMap::from([(start.clone(), 0)]);
    let mut trace = RunTrace {
        start: start.clone(),
        steps: Vec::new(),
        verdict: Verdict::StepCapReached,
        first_cycle: None,
        step_counts: vec![0; n],
        seed: config.seed,
    };
    let mut current = start.clone();
    let mut turn = 0usize;

    while trace.steps.len() < config.max_steps {
        let options: Vec<Vec<Profile>> = (0..n)
            .map(|a| sys.successors(&current, PlayerId::new(a), relation))
            .collect();
        if options.iter().all(Vec::is_empty) {
            trace.verdict = Verdict::TerminatedAtNe;
            return Ok(trace);
        }

        let (movers, next) = if config.mode == StepMode::Sync {
            let mut selections = Vec::new();
            for (a, opts) in options.iter().enumerate() {
                if opts.is_empty() {
                    continue;
                }
                let pick = match config.policy {
                    Policy::First => &opts[0],
                    _ => opts.choose(&mut rng).expect("non-empty"),
                };
                selections.push((PlayerId::new(a), pick.clone()));
            }
            let next = synchronous_step(sys, &current, &selections)?;
            (selections.into_iter().map(|(a, _)| a).collect(), next)
        } else {
            let (a, t) = match &config.policy {
                Policy::Scripted(script) if trace.steps.len() < script.len() => {
                    let step = &script[trace.steps.len()];
                    let t = sys
                        .redirect_along(&current, &step.path)
                        .filter(|t| options[step.player.index()].contains(t))
                        .ok_or_else(|| Error::NotLazySuccessor(sys.universe().player_name(step.player).to_string()))?;
                    (step.player, t)
                }
                Policy::First | Policy::Scripted(_) => {
                    let a = options.iter().position(|o| !o.is_empty()).expect("some move");
                    (PlayerId::new(a), options[a][0].clone())
                }
                Policy::UniformRandom => {
                    let total: usize = options.iter().map(Vec::len).sum();
                    let mut k = rng.gen_range(0..total);
                    let mut chosen = None;
                    for (a, opts) in options.iter().enumerate() {
                        if k < opts.len() {
                            chosen = Some((PlayerId::new(a), opts[k].clone()));
                            break;
                        }
                        k -= opts.len();
                    }
                    chosen.expect("index in range")
                }
                Policy::RoundRobin => {
                    let a = (0..n)
                        .map(|i| (turn + i) % n)
                        .find(|&a| !options[a].is_empty())
                        .expect("some move");
                    turn = (a + 1) % n;
                    (PlayerId::new(a), options[a].choose(&mut rng).expect("non-empty").clone())
                }
            };
            (vec![a], t)
        };

        for a in &movers {
            trace.step_counts[a.index()] += 1;
        }
        trace.steps.push(Step { movers, profile: next.clone() });
        let index = trace.steps.len();
        if let Some(&earlier) = seen.get(&next) {
            if trace.first_cycle.is_none() {
                trace.first_cycle = Some((index, index - earlier));
            }
            if config.stop_on_cycle {
                trace.verdict = Verdict::CycleDetected {
                    first_repeat_index: index,
                    period: index - earlier,
                };
                return Ok(trace);
            }
        }
        seen.insert(next.clone(), index);
        current = next;
    }
    Ok(trace)
}

/// Parses `first`, `random`, `roundrobin`; scripts come from documents.
pub fn parse_policy(text: &str) -> std::result::Result<Policy, String> {
    match text {
        "first" => Ok(Policy::First),
        "random" | "uniform" | "uniform-random" => Ok(Policy::UniformRandom),
        "roundrobin" | "round-robin" => Ok(Policy::RoundRobin),
        _ => Err(format!("unknown policy {text}")),
    }
}
