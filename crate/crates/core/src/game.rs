//! Players, outcomes, game trees, profiles and plays.
//!
//! A tree is stored as an arena in depth-first preorder; node 0 is the root.
//! Internal nodes additionally get a dense *slot* number (their rank among
//! internal nodes in preorder) and a profile is just one choice per slot.

use std::collections::HashMap;
use std::fmt;

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::preference::{Preference, PreferenceClass};
use crate::scalar::format_rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlayerId(pub u16);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OutcomeId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u32);

impl PlayerId {
    pub fn new(i: usize) -> Self {
        PlayerId(i as u16)
    }
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl OutcomeId {
    pub fn new(i: usize) -> Self {
        OutcomeId(i as u32)
    }
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl NodeId {
    pub const ROOT: NodeId = NodeId(0);
    pub fn new(i: usize) -> Self {
        NodeId(i as u32)
    }
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub name: String,
    pub payoff: Option<Vec<Rational64>>,
}

impl Outcome {
    pub fn named(name: impl Into<String>) -> Self {
        Outcome { name: name.into(), payoff: None }
    }

    pub fn with_payoff(payoff: Vec<Rational64>) -> Self {
        let name = payoff.iter().map(format_rational).collect::<Vec<_>>().join(",");
        Outcome { name, payoff: Some(payoff) }
    }
}

/// Everything about a game except its shape: who plays, what can happen,
/// and who prefers what.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Universe {
    pub players: Vec<String>,
    pub outcomes: Vec<Outcome>,
    pub prefs: Vec<Preference>,
    pub payoff_mode: bool,
}

impl Universe {
    /// Named outcomes with explicit relations, one per player.
    pub fn new(players: Vec<String>, outcomes: Vec<String>, prefs: Vec<Preference>) -> Result<Self> {
        let u = Universe {
            players,
            outcomes: outcomes.into_iter().map(Outcome::named).collect(),
            prefs,
            payoff_mode: false,
        };
        u.validate()?;
        Ok(u)
    }

    /// Payoff vectors as outcomes; each player prefers a larger own component.
    pub fn from_payoffs(players: Vec<String>, payoffs: Vec<Vec<Rational64>>) -> Result<Self> {
        let n = players.len();
        if let Some(bad) = payoffs.iter().find(|p| p.len() != n) {
            return Err(Error::Validation(format!(
                "payoff of length {} in a game with {} players",
                bad.len(),
                n
            )));
        }
        let prefs = (0..n).map(|i| Preference::from_payoffs(&payoffs, i)).collect();
        let u = Universe {
            players,
            outcomes: payoffs.into_iter().map(Outcome::with_payoff).collect(),
            prefs,
            payoff_mode: true,
        };
        u.validate()?;
        Ok(u)
    }

    /// Payoff vectors that may repeat: equal vectors become one outcome.
    /// Returns the universe and the outcome of each input vector.
    pub fn intern_payoffs(players: Vec<String>, cells: Vec<Vec<Rational64>>) -> Result<(Self, Vec<OutcomeId>)> {
        let mut distinct: Vec<Vec<Rational64>> = Vec::new();
        let ids = cells
            .into_iter()
            .map(|c| match distinct.iter().position(|d| *d == c) {
                Some(i) => OutcomeId::new(i),
                None => {
                    distinct.push(c);
                    OutcomeId::new(distinct.len() - 1)
                }
            })
            .collect();
        Ok((Universe::from_payoffs(players, distinct)?, ids))
    }

    pub fn validate(&self) -> Result<()> {
        if self.players.is_empty() {
            return Err(Error::Validation("no players".into()));
        }
        if self.outcomes.is_empty() {
            return Err(Error::Validation("no outcomes".into()));
        }
        if self.prefs.len() != self.players.len() {
            return Err(Error::Validation("one preference per player required".into()));
        }
        let mut seen = HashMap::new();
        for (i, p) in self.players.iter().enumerate() {
            if seen.insert(p.as_str(), i).is_some() {
                return Err(Error::Validation(format!("duplicate player {p}")));
            }
        }
        let mut seen = HashMap::new();
        for (i, o) in self.outcomes.iter().enumerate() {
            if seen.insert(o.name.as_str(), i).is_some() {
                return Err(Error::Validation(format!("duplicate outcome {}", o.name)));
            }
        }
        for p in &self.prefs {
            if p.n_outcomes() != self.outcomes.len() {
                return Err(Error::Validation("preference over the wrong outcome set".into()));
            }
        }
        Ok(())
    }

    pub fn n_players(&self) -> usize {
        self.players.len()
    }

    pub fn n_outcomes(&self) -> usize {
        self.outcomes.len()
    }

    pub fn player_ids(&self) -> impl Iterator<Item = PlayerId> {
        (0..self.players.len()).map(PlayerId::new)
    }

    pub fn player_id(&self, name: &str) -> Option<PlayerId> {
        self.players.iter().position(|p| p == name).map(PlayerId::new)
    }

    pub fn outcome_id(&self, name: &str) -> Option<OutcomeId> {
        self.outcomes.iter().position(|o| o.name == name).map(OutcomeId::new)
    }

    pub fn player_name(&self, a: PlayerId) -> &str {
        &self.players[a.index()]
    }

    pub fn outcome_name(&self, o: OutcomeId) -> &str {
        &self.outcomes[o.index()].name
    }

    pub fn pref(&self, a: PlayerId) -> &Preference {
        &self.prefs[a.index()]
    }

    /// `v(s) ≺_a v(s′)`.
    #[inline]
    pub fn prefers(&self, a: PlayerId, from: OutcomeId, to: OutcomeId) -> bool {
        self.prefs[a.index()].prefers(from, to)
    }

    pub fn classify(&self, a: PlayerId) -> PreferenceClass {
        self.prefs[a.index()].classify()
    }

    pub fn payoff(&self, o: OutcomeId, a: PlayerId) -> Option<Rational64> {
        self.outcomes[o.index()].payoff.as_ref().map(|p| p[a.index()])
    }

    pub fn chain_heights(&self, a: PlayerId) -> Result<Vec<usize>> {
        self.prefs[a.index()]
            .chain_heights()
            .map_err(|_| Error::CyclicPreference(self.players[a.index()].clone()))
    }

    /// `h_a`, the longest chain cardinality of one player.
    pub fn max_chain_height(&self, a: PlayerId) -> Result<usize> {
        Ok(self.chain_heights(a)?.into_iter().max().unwrap_or(0))
    }

    pub fn linear_extension(&self, a: PlayerId) -> Result<Preference> {
        self.prefs[a.index()]
            .linear_extension()
            .map_err(|_| Error::CyclicPreference(self.players[a.index()].clone()))
    }

    /// The same universe with every relation replaced by a linear extension.
    pub fn linearized(&self) -> Result<Universe> {
        let prefs = self
            .player_ids()
            .map(|a| self.linear_extension(a))
            .collect::<Result<Vec<_>>>()?;
        Ok(Universe { prefs, ..self.clone() })
    }

    pub fn require_acyclic(&self) -> Result<()> {
        for a in self.player_ids() {
            if !self.pref(a).is_acyclic() {
                return Err(Error::CyclicPreference(self.player_name(a).to_string()));
            }
        }
        Ok(())
    }
}

/// Recursive description of a tree, convenient for building and printing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreeSpec {
    Leaf(OutcomeId),
    Node(PlayerId, Vec<TreeSpec>),
}

impl TreeSpec {
    pub fn leaf(o: usize) -> Self {
        TreeSpec::Leaf(OutcomeId::new(o))
    }

    pub fn node(owner: usize, children: Vec<TreeSpec>) -> Self {
        TreeSpec::Node(PlayerId::new(owner), children)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Leaf(OutcomeId),
    Internal { owner: PlayerId, children: Vec<NodeId> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeNode {
    pub kind: NodeKind,
    pub parent: Option<NodeId>,
    /// Index of this node among its parent's children.
    pub index_in_parent: u16,
    /// Preorder index of the last node of this subtree.
    pub subtree_end: u32,
}

/// A root-to-leaf descent fixed once per leaf: `(slot, child index)` pairs.
pub type LeafPath = Vec<(u32, u16)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameTree {
    nodes: Vec<TreeNode>,
    /// Internal nodes in preorder; position = slot.
    internal: Vec<NodeId>,
    slot_of: Vec<u32>,
    leaves: Vec<NodeId>,
    leaf_paths: Vec<LeafPath>,
}

const NO_SLOT: u32 = u32::MAX;

impl GameTree {
    pub fn from_spec(spec: &TreeSpec) -> Result<Self> {
        let mut nodes = Vec::new();
        build(spec, None, 0, &mut nodes)?;
        let mut internal = Vec::new();
        let mut slot_of = vec![NO_SLOT; nodes.len()];
        let mut leaves = Vec::new();
        for (i, n) in nodes.iter().enumerate() {
            match n.kind {
                NodeKind::Internal { .. } => {
                    slot_of[i] = internal.len() as u32;
                    internal.push(NodeId::new(i));
                }
                NodeKind::Leaf(_) => leaves.push(NodeId::new(i)),
            }
        }
        let mut tree = GameTree {
            nodes,
            internal,
            slot_of,
            leaves,
            leaf_paths: Vec::new(),
        };
        tree.leaf_paths = tree.leaves.iter().map(|&l| tree.path_to(l)).collect();
        Ok(tree)
    }

    pub fn to_spec(&self) -> TreeSpec {
        self.spec_at(NodeId::ROOT)
    }

    pub fn spec_at(&self, v: NodeId) -> TreeSpec {
        match &self.nodes[v.index()].kind {
            NodeKind::Leaf(o) => TreeSpec::Leaf(*o),
            NodeKind::Internal { owner, children } => {
                TreeSpec::Node(*owner, children.iter().map(|&c| self.spec_at(c)).collect())
            }
        }
    }

    fn path_to(&self, v: NodeId) -> LeafPath {
        let mut path = Vec::new();
        let mut cur = v;
        while let Some(p) = self.nodes[cur.index()].parent {
            path.push((self.slot_of[p.index()], self.nodes[cur.index()].index_in_parent));
            cur = p;
        }
        path.reverse();
        path
    }

    pub fn n_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn n_internal(&self) -> usize {
        self.internal.len()
    }

    pub fn n_leaves(&self) -> usize {
        self.leaves.len()
    }

    pub fn node(&self, v: NodeId) -> &TreeNode {
        &self.nodes[v.index()]
    }

    pub fn internal_nodes(&self) -> &[NodeId] {
        &self.internal
    }

    pub fn leaves(&self) -> &[NodeId] {
        &self.leaves
    }

    /// Leaf paths, aligned with [`GameTree::leaves`].
    pub fn leaf_paths(&self) -> &[LeafPath] {
        &self.leaf_paths
    }

    pub fn slot(&self, v: NodeId) -> Option<usize> {
        let s = self.slot_of[v.index()];
        (s != NO_SLOT).then_some(s as usize)
    }

    pub fn node_of_slot(&self, slot: usize) -> NodeId {
        self.internal[slot]
    }

    pub fn owner_of_slot(&self, slot: usize) -> PlayerId {
        match &self.nodes[self.internal[slot].index()].kind {
            NodeKind::Internal { owner, .. } => *owner,
            NodeKind::Leaf(_) => unreachable!("slots index internal nodes"),
        }
    }

    pub fn children_of_slot(&self, slot: usize) -> &[NodeId] {
        match &self.nodes[self.internal[slot].index()].kind {
            NodeKind::Internal { children, .. } => children,
            NodeKind::Leaf(_) => unreachable!("slots index internal nodes"),
        }
    }

    pub fn degree(&self, slot: usize) -> usize {
        self.children_of_slot(slot).len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n_internal()).map(|s| self.degree(s)).collect()
    }

    pub fn leaf_outcome(&self, v: NodeId) -> Option<OutcomeId> {
        match self.nodes[v.index()].kind {
            NodeKind::Leaf(o) => Some(o),
            NodeKind::Internal { .. } => None,
        }
    }

    /// Slots of the internal nodes in the subtree rooted at `v`, in preorder.
    pub fn slots_below(&self, v: NodeId) -> impl Iterator<Item = usize> + '_ {
        let end = self.nodes[v.index()].subtree_end as usize;
        (v.index()..=end).filter_map(move |i| self.slot(NodeId::new(i)))
    }

    /// Leaves (as positions in [`GameTree::leaves`]) inside the subtree at `v`.
    pub fn leaves_below(&self, v: NodeId) -> std::ops::Range<usize> {
        let end = self.nodes[v.index()].subtree_end;
        let lo = self.leaves.partition_point(|l| l.0 < v.0);
        let hi = self.leaves.partition_point(|l| l.0 <= end);
        lo..hi
    }

    /// Number of profiles, saturating far beyond any usable cap.
    pub fn profile_count(&self) -> u128 {
        count_product(self.degrees())
    }

    pub fn first_profile(&self) -> Profile {
        Profile::zeros(self.n_internal())
    }

    pub fn check_profile(&self, s: &Profile) -> Result<()> {
        if s.len() != self.n_internal() {
            return Err(Error::ShapeMismatch);
        }
        for (slot, &c) in s.choices().iter().enumerate() {
            if c as usize >= self.degree(slot) {
                return Err(Error::InvalidProfile(format!(
                    "choice {c} out of range at internal node {slot}"
                )));
            }
        }
        Ok(())
    }

    /// Follows the choices of `s` from `v` down to a leaf.
    pub fn descend(&self, s: &Profile, mut v: NodeId) -> NodeId {
        loop {
            match &self.nodes[v.index()].kind {
                NodeKind::Leaf(_) => return v,
                NodeKind::Internal { children, .. } => {
                    v = children[s.choice(self.slot_of[v.index()] as usize) as usize];
                }
            }
        }
    }

    pub fn outcome_from(&self, s: &Profile, v: NodeId) -> OutcomeId {
        self.leaf_outcome(self.descend(s, v)).expect("descent ends at a leaf")
    }

    pub fn induced_play(&self, s: &Profile) -> Play {
        let mut path = Vec::new();
        let mut nodes = Vec::new();
        let mut v = NodeId::ROOT;
        loop {
            match &self.nodes[v.index()].kind {
                NodeKind::Leaf(o) => {
                    return Play { path, nodes, leaf: v, outcome: *o };
                }
                NodeKind::Internal { children, .. } => {
                    let c = s.choice(self.slot_of[v.index()] as usize);
                    path.push(c);
                    nodes.push(v);
                    v = children[c as usize];
                }
            }
        }
    }

    pub fn outcome(&self, s: &Profile) -> OutcomeId {
        self.outcome_from(s, NodeId::ROOT)
    }

    /// Profile whose choices follow the path of leaf `leaf_pos` and copy `s` elsewhere.
    pub fn redirect(&self, s: &Profile, leaf_pos: usize) -> Profile {
        let mut t = s.clone();
        for &(slot, c) in &self.leaf_paths[leaf_pos] {
            t.set(slot as usize, c);
        }
        t
    }

    /// Profile from a root-to-leaf child-index path.
    pub fn leaf_by_path(&self, path: &[u16]) -> Option<usize> {
        let mut v = NodeId::ROOT;
        for &c in path {
            match &self.nodes[v.index()].kind {
                NodeKind::Internal { children, .. } => v = *children.get(c as usize)?,
                NodeKind::Leaf(_) => return None,
            }
        }
        self.leaf_outcome(v)?;
        self.leaves.binary_search(&v).ok()
    }

    pub fn profiles(&self) -> Result<ProfileIter> {
        ProfileIter::new(self.degrees())
    }
}

fn build(spec: &TreeSpec, parent: Option<NodeId>, index_in_parent: u16, nodes: &mut Vec<TreeNode>) -> Result<NodeId> {
    let id = NodeId::new(nodes.len());
    match spec {
        TreeSpec::Leaf(o) => nodes.push(TreeNode {
            kind: NodeKind::Leaf(*o),
            parent,
            index_in_parent,
            subtree_end: id.0,
        }),
        TreeSpec::Node(owner, children) => {
            if children.is_empty() {
                return Err(Error::Validation("internal node without children".into()));
            }
            if children.len() > u16::MAX as usize {
                return Err(Error::Validation("too many children".into()));
            }
            nodes.push(TreeNode {
                kind: NodeKind::Internal { owner: *owner, children: Vec::new() },
                parent,
                index_in_parent,
                subtree_end: id.0,
            });
            let kids = children
                .iter()
                .enumerate()
                .map(|(i, c)| build(c, Some(id), i as u16, nodes))
                .collect::<Result<Vec<_>>>()?;
            let end = nodes.len() as u32 - 1;
            let n = &mut nodes[id.index()];
            n.kind = NodeKind::Internal { owner: *owner, children: kids };
            n.subtree_end = end;
        }
    }
    Ok(id)
}

pub(crate) fn count_product(degrees: impl IntoIterator<Item = usize>) -> u128 {
    degrees
        .into_iter()
        .fold(1u128, |acc, d| acc.saturating_mul(d as u128))
}

/// Profile-count cap for exhaustive operations; `LAZYEQ_CAP` overrides it.
pub fn profile_cap() -> u64 {
    std::env::var("LAZYEQ_CAP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(1 << 24)
}

pub(crate) fn check_cap(count: u128) -> Result<()> {
    let cap = profile_cap();
    if count > cap as u128 {
        return Err(Error::StateSpaceTooLarge { count, cap });
    }
    Ok(())
}

/// One choice per choosing node (tree internal node or DAG non-sink).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Profile {
    choices: Box<[u16]>,
}

impl fmt::Debug for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Profile{:?}", &self.choices[..])
    }
}

impl Profile {
    pub fn new(choices: Vec<u16>) -> Self {
        Profile { choices: choices.into_boxed_slice() }
    }

    pub fn zeros(n: usize) -> Self {
        Profile::new(vec![0; n])
    }

    pub fn choices(&self) -> &[u16] {
        &self.choices
    }

    #[inline]
    pub fn choice(&self, slot: usize) -> u16 {
        self.choices[slot]
    }

    pub fn set(&mut self, slot: usize, c: u16) {
        self.choices[slot] = c;
    }

    pub fn len(&self) -> usize {
        self.choices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.choices.is_empty()
    }

    /// Slots where the two profiles choose differently.
    pub fn diff<'a>(&'a self, other: &'a Profile) -> impl Iterator<Item = usize> + 'a {
        (0..self.choices.len()).filter(move |&i| self.choices[i] != other.choices[i])
    }

    pub fn distance(&self, other: &Profile) -> usize {
        self.choices.iter().zip(other.choices.iter()).filter(|(a, b)| a != b).count()
    }

    /// Mixed-radix rank; the first slot is the most significant digit.
    pub fn rank(&self, degrees: &[usize]) -> u64 {
        self.choices
            .iter()
            .zip(degrees)
            .fold(0u64, |acc, (&c, &d)| acc * d as u64 + c as u64)
    }

    pub fn unrank(mut rank: u64, degrees: &[usize]) -> Profile {
        let mut choices = vec![0u16; degrees.len()];
        for i in (0..degrees.len()).rev() {
            choices[i] = (rank % degrees[i] as u64) as u16;
            rank /= degrees[i] as u64;
        }
        Profile::new(choices)
    }
}

/// Odometer over all choice vectors, last slot spinning fastest.
pub struct ProfileIter {
    degrees: Vec<usize>,
    next: Option<Vec<u16>>,
}

impl ProfileIter {
    pub fn new(degrees: Vec<usize>) -> Result<Self> {
        check_cap(count_product(degrees.iter().copied()))?;
        let next = if degrees.contains(&0) { None } else { Some(vec![0; degrees.len()]) };
        Ok(ProfileIter { degrees, next })
    }
}

impl Iterator for ProfileIter {
    type Item = Profile;

    fn next(&mut self) -> Option<Profile> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let mut i = succ.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            succ[i] += 1;
            if (succ[i] as usize) < self.degrees[i] {
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(Profile::new(cur))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Play {
    /// Child index taken at each internal node along the way.
    pub path: Vec<u16>,
    /// The internal nodes visited, aligned with `path`.
    pub nodes: Vec<NodeId>,
    pub leaf: NodeId,
    pub outcome: OutcomeId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Game {
    pub universe: Universe,
    pub tree: GameTree,
}

impl Game {
    pub fn new(universe: Universe, tree: GameTree) -> Result<Self> {
        let g = Game { universe, tree };
        g.validate()?;
        Ok(g)
    }

    pub fn from_spec(universe: Universe, spec: &TreeSpec) -> Result<Self> {
        Game::new(universe, GameTree::from_spec(spec)?)
    }

    fn validate(&self) -> Result<()> {
        self.universe.validate()?;
        for n in &self.tree.nodes {
            match &n.kind {
                NodeKind::Leaf(o) if o.index() >= self.universe.n_outcomes() => {
                    return Err(Error::Validation(format!("unknown outcome #{}", o.0)));
                }
                NodeKind::Internal { owner, .. } if owner.index() >= self.universe.n_players() => {
                    return Err(Error::Validation(format!("unknown player #{}", owner.0)));
                }
                _ => {}
            }
        }
        Ok(())
    }

    pub fn players(&self) -> impl Iterator<Item = PlayerId> {
        self.universe.player_ids()
    }

    pub fn outcome(&self, s: &Profile) -> OutcomeId {
        self.tree.outcome(s)
    }

    pub fn induced_play(&self, s: &Profile) -> Play {
        self.tree.induced_play(s)
    }

    pub fn all_profiles(&self) -> Result<ProfileIter> {
        self.tree.profiles()
    }

    pub fn profile_count(&self) -> u128 {
        self.tree.profile_count()
    }

    /// Slots owned by `a`.
    pub fn slots_of(&self, a: PlayerId) -> Vec<usize> {
        (0..self.tree.n_internal())
            .filter(|&s| self.tree.owner_of_slot(s) == a)
            .collect()
    }

    /// The subgame rooted at `v` with its own dense slot numbering.
    pub fn subgame(&self, v: NodeId) -> Result<Game> {
        Game::from_spec(self.universe.clone(), &self.tree.spec_at(v))
    }

    /// Restriction of `s` to the subgame at `v`, matching [`Game::subgame`].
    pub fn subprofile(&self, s: &Profile, v: NodeId) -> Profile {
        Profile::new(self.tree.slots_below(v).map(|slot| s.choice(slot)).collect())
    }

    pub fn outcome_label(&self, o: OutcomeId) -> &str {
        self.universe.outcome_name(o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kuhn() -> Game {
        // b:( a:( b:([4,3]|[1,0]) | [3,2] ) | [1,0] )
        let r = |n| Rational64::from_integer(n);
        let u = Universe::from_payoffs(
            vec!["a".into(), "b".into()],
            vec![vec![r(4), r(3)], vec![r(1), r(0)], vec![r(3), r(2)]],
        )
        .unwrap();
        let spec = TreeSpec::node(
            1,
            vec![
                TreeSpec::node(0, vec![TreeSpec::node(1, vec![TreeSpec::leaf(0), TreeSpec::leaf(1)]), TreeSpec::leaf(2)]),
                TreeSpec::leaf(1),
            ],
        );
        Game::from_spec(u, &spec).unwrap()
    }

    #[test]
    fn arena_layout_is_preorder() {
        let g = kuhn();
        assert_eq!(g.tree.n_nodes(), 7);
        assert_eq!(g.tree.n_internal(), 3);
        assert_eq!(g.tree.n_leaves(), 4);
        assert_eq!(g.tree.internal_nodes(), &[NodeId(0), NodeId(1), NodeId(2)]);
        assert_eq!(g.tree.leaves(), &[NodeId(3), NodeId(4), NodeId(5), NodeId(6)]);
        assert_eq!(g.tree.leaves_below(NodeId(1)), 0..3);
        assert_eq!(g.tree.slots_below(NodeId(1)).collect::<Vec<_>>(), vec![1, 2]);
        assert_eq!(g.tree.leaf_paths()[1], vec![(0, 0), (1, 0), (2, 1)]);
        assert_eq!(g.tree.to_spec(), GameTree::from_spec(&g.tree.to_spec()).unwrap().to_spec());
    }

    #[test]
    fn play_and_outcome() {
        let g = kuhn();
        // b goes right at the root
        let s = Profile::new(vec![1, 0, 1]);
        let play = g.induced_play(&s);
        assert_eq!(play.path, vec![1]);
        assert_eq!(g.outcome_label(play.outcome), "1,0");
        let s = Profile::new(vec![0, 0, 0]);
        assert_eq!(g.outcome_label(g.outcome(&s)), "4,3");
        assert_eq!(g.induced_play(&s).path, vec![0, 0, 0]);
    }

    #[test]
    fn leaf_game_has_one_profile() {
        let u = Universe::new(vec!["a".into()], vec!["x".into()], vec![Preference::empty(1)]).unwrap();
        let g = Game::from_spec(u, &TreeSpec::leaf(0)).unwrap();
        let all: Vec<_> = g.all_profiles().unwrap().collect();
        assert_eq!(all.len(), 1);
        let play = g.induced_play(&all[0]);
        assert!(play.path.is_empty());
        assert_eq!(play.outcome, OutcomeId(0));
    }

    #[test]
    fn enumeration_is_odometer_order() {
        let g = kuhn();
        let all: Vec<_> = g.all_profiles().unwrap().collect();
        assert_eq!(all.len(), 8);
        let degrees = g.tree.degrees();
        for (i, s) in all.iter().enumerate() {
            assert_eq!(s.rank(&degrees), i as u64);
            assert_eq!(&Profile::unrank(i as u64, &degrees), s);
        }
        assert_eq!(all[1].choices(), &[0, 0, 1]);
    }

    #[test]
    fn cap_is_enforced() {
        let err = ProfileIter::new(vec![2; 30]).err().unwrap();
        assert!(matches!(err, Error::StateSpaceTooLarge { .. }));
    }

    #[test]
    fn validation_rejects_bad_references() {
        let u = Universe::new(vec!["a".into()], vec!["x".into()], vec![Preference::empty(1)]).unwrap();
        assert!(Game::from_spec(u.clone(), &TreeSpec::leaf(3)).is_err());
        assert!(Game::from_spec(u.clone(), &TreeSpec::node(2, vec![TreeSpec::leaf(0)])).is_err());
        assert!(Game::from_spec(u, &TreeSpec::node(0, vec![])).is_err());
        assert!(Universe::new(vec!["a".into(), "a".into()], vec!["x".into()], vec![Preference::empty(1); 2]).is_err());
    }

    #[test]
    fn subgame_restriction() {
        let g = kuhn();
        let s = Profile::new(vec![1, 0, 1]);
        let sub = g.subgame(NodeId(1)).unwrap();
        let t = g.subprofile(&s, NodeId(1));
        assert_eq!(t.choices(), &[0, 1]);
        assert_eq!(sub.outcome(&t), g.tree.outcome_from(&s, NodeId(1)));
    }
}
