//! Games on finite rooted DAGs.
//!
//! Non-sink nodes are owned by players and each chooses one out-edge; sinks
//! carry outcomes. A profile holds one choice per non-sink node, in the
//! order the nodes were declared.

use std::cmp::Ordering;
use std::fmt;

use crate::dynamics::{Dynamics, ScriptTarget};
use crate::error::{Error, Result};
use crate::game::{count_product, Game, NodeKind, OutcomeId, PlayerId, Profile, ProfileIter, Universe};
use crate::preference::PreferenceClass;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DagNodeKind {
    Choice { owner: PlayerId, succ: Vec<usize> },
    Sink(OutcomeId),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DagNode {
    pub name: String,
    pub kind: DagNodeKind,
}

impl DagNode {
    pub fn choice(name: impl Into<String>, owner: PlayerId, succ: Vec<usize>) -> Self {
        DagNode { name: name.into(), kind: DagNodeKind::Choice { owner, succ } }
    }

    pub fn sink(name: impl Into<String>, outcome: OutcomeId) -> Self {
        DagNode { name: name.into(), kind: DagNodeKind::Sink(outcome) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DagGame {
    pub universe: Universe,
    nodes: Vec<DagNode>,
    root: usize,
    /// Non-sink nodes in declaration order; position = slot.
    choosers: Vec<usize>,
    slot_of: Vec<Option<usize>>,
    /// All nodes, every edge pointing forward.
    topo: Vec<usize>,
}

/// The nodes with no incoming edge.
pub fn sources(nodes: &[DagNode]) -> Vec<usize> {
    let mut has_pred = vec![false; nodes.len()];
    for n in nodes {
        if let DagNodeKind::Choice { succ, .. } = &n.kind {
            for &w in succ {
                has_pred[w] = true;
            }
        }
    }
    (0..nodes.len()).filter(|&v| !has_pred[v]).collect()
}

impl DagGame {
    pub fn new(universe: Universe, nodes: Vec<DagNode>, root: usize) -> Result<Self> {
        universe.validate()?;
        let n = nodes.len();
        if root >= n {
            return Err(Error::Validation("root is not a node".into()));
        }
        for node in &nodes {
            match &node.kind {
                DagNodeKind::Choice { owner, succ } => {
                    if succ.is_empty() {
                        return Err(Error::Validation(format!("node {} has no out-edge", node.name)));
                    }
                    if succ.len() > u16::MAX as usize {
                        return Err(Error::Validation(format!("node {} has too many out-edges", node.name)));
                    }
                    if owner.index() >= universe.n_players() {
                        return Err(Error::Validation(format!("node {} has an unknown owner", node.name)));
                    }
                    if let Some(&w) = succ.iter().find(|&&w| w >= n) {
                        return Err(Error::Validation(format!("node {} points at unknown node #{w}", node.name)));
                    }
                }
                DagNodeKind::Sink(o) => {
                    if o.index() >= universe.n_outcomes() {
                        return Err(Error::Validation(format!("sink {} has an unknown outcome", node.name)));
                    }
                }
            }
        }
        let srcs = sources(&nodes);
        if srcs != vec![root] {
            let names: Vec<&str> = srcs.iter().filter(|&&v| v != root).map(|&v| nodes[v].name.as_str()).collect();
            if srcs.contains(&root) {
                return Err(Error::Validation(format!("nodes other than the root lack a predecessor: {}", names.join(", "))));
            }
            return Err(Error::Validation(format!("root {} has a predecessor", nodes[root].name)));
        }
        let topo = topological(&nodes, root)
            .ok_or_else(|| Error::Validation("the graph has a directed cycle".into()))?;
        let mut slot_of = vec![None; n];
        let mut choosers = Vec::new();
        for (v, node) in nodes.iter().enumerate() {
            if matches!(node.kind, DagNodeKind::Choice { .. }) {
                slot_of[v] = Some(choosers.len());
                choosers.push(v);
            }
        }
        Ok(DagGame { universe, nodes, root, choosers, slot_of, topo })
    }

    /// The tree as a DAG with slots in the same preorder as the tree's.
    pub fn from_tree(g: &Game) -> Result<Self> {
        let nodes = (0..g.tree.n_nodes())
            .map(|i| {
                let v = crate::game::NodeId::new(i);
                match &g.tree.node(v).kind {
                    NodeKind::Leaf(o) => DagNode::sink(format!("l{i}"), *o),
                    NodeKind::Internal { owner, children } => {
                        DagNode::choice(format!("n{i}"), *owner, children.iter().map(|c| c.index()).collect())
                    }
                }
            })
            .collect();
        DagGame::new(g.universe.clone(), nodes, 0)
    }

    pub fn nodes(&self) -> &[DagNode] {
        &self.nodes
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn node_id(&self, name: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.name == name)
    }

    pub fn n_slots(&self) -> usize {
        self.choosers.len()
    }

    pub fn slot(&self, v: usize) -> Option<usize> {
        self.slot_of[v]
    }

    pub fn node_of_slot(&self, slot: usize) -> usize {
        self.choosers[slot]
    }

    pub fn succ(&self, v: usize) -> &[usize] {
        match &self.nodes[v].kind {
            DagNodeKind::Choice { succ, .. } => succ,
            DagNodeKind::Sink(_) => &[],
        }
    }

    pub fn node_owner(&self, v: usize) -> Option<PlayerId> {
        match &self.nodes[v].kind {
            DagNodeKind::Choice { owner, .. } => Some(*owner),
            DagNodeKind::Sink(_) => None,
        }
    }

    pub fn sink_outcome(&self, v: usize) -> Option<OutcomeId> {
        match &self.nodes[v].kind {
            DagNodeKind::Sink(o) => Some(*o),
            DagNodeKind::Choice { .. } => None,
        }
    }

    /// All nodes in a topological order starting at the root.
    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    pub fn profile_count(&self) -> u128 {
        count_product(self.degrees())
    }

    pub fn profiles(&self) -> Result<ProfileIter> {
        ProfileIter::new(self.degrees())
    }

    pub fn first_profile(&self) -> Profile {
        Profile::zeros(self.n_slots())
    }

    /// Follows the choices of `s` from `v`; returns the visited nodes, sink included.
    pub fn play_from(&self, s: &Profile, mut v: usize) -> Vec<usize> {
        let mut path = vec![v];
        while let Some(slot) = self.slot_of[v] {
            v = self.succ(v)[s.choice(slot) as usize];
            path.push(v);
        }
        path
    }

    pub fn play(&self, s: &Profile) -> DagPlay {
        let nodes = self.play_from(s, self.root);
        let sink = *nodes.last().expect("non-empty");
        DagPlay { outcome: self.sink_outcome(sink).expect("sink"), nodes }
    }

    pub fn outcome_from(&self, s: &Profile, v: usize) -> OutcomeId {
        let path = self.play_from(s, v);
        self.sink_outcome(*path.last().expect("non-empty")).expect("sink")
    }

    /// `s` with the choice of node `node` set to the edge towards `target`.
    pub fn with_edge(&self, s: &Profile, node: &str, target: &str) -> Result<Profile> {
        let v = self.node_id(node).ok_or_else(|| Error::Validation(format!("unknown node {node}")))?;
        let w = self.node_id(target).ok_or_else(|| Error::Validation(format!("unknown node {target}")))?;
        let slot = self.slot_of[v].ok_or_else(|| Error::Validation(format!("{node} is a sink")))?;
        let k = self
            .succ(v)
            .iter()
            .position(|&x| x == w)
            .ok_or_else(|| Error::Validation(format!("no edge {node} -> {target}")))?;
        let mut t = s.clone();
        t.set(slot, k as u16);
        Ok(t)
    }

    /// Applies several `node -> target` edits at once.
    pub fn with_edges(&self, s: &Profile, edits: &[(&str, &str)]) -> Result<Profile> {
        edits.iter().try_fold(s.clone(), |t, (v, w)| self.with_edge(&t, v, w))
    }

    /// Every root-to-sink path `a` can open given the other players' choices.
    fn open_paths(&self, s: &Profile, a: PlayerId) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut path = vec![self.root];
        self.open_paths_from(s, a, &mut path, &mut out);
        out
    }

    fn open_paths_from(&self, s: &Profile, a: PlayerId, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let v = *path.last().expect("non-empty");
        match &self.nodes[v].kind {
            DagNodeKind::Sink(_) => out.push(path.clone()),
            DagNodeKind::Choice { owner, succ } => {
                if *owner == a {
                    for &w in succ {
                        path.push(w);
                        self.open_paths_from(s, a, path, out);
                        path.pop();
                    }
                } else {
                    let slot = self.slot_of[v].expect("choice");
                    path.push(succ[s.choice(slot) as usize]);
                    self.open_paths_from(s, a, path, out);
                    path.pop();
                }
            }
        }
    }

    /// `s` with every node on `path` pointing along it.
    fn along(&self, s: &Profile, path: &[usize]) -> Profile {
        let mut t = s.clone();
        for w in path.windows(2) {
            let slot = self.slot_of[w[0]].expect("choice");
            let k = self.succ(w[0]).iter().position(|&x| x == w[1]).expect("edge");
            t.set(slot, k as u16);
        }
        t
    }

    /// Lazy conversions of `a` with their plays, whether improving or not.
    pub fn lazy_conversions(&self, s: &Profile, a: PlayerId) -> Vec<(Profile, Vec<usize>)> {
        self.open_paths(s, a)
            .into_iter()
            .map(|p| (self.along(s, &p), p))
            .collect()
    }
}

fn topological(nodes: &[DagNode], root: usize) -> Option<Vec<usize>> {
    let n = nodes.len();
    let mut indegree = vec![0usize; n];
    for node in nodes {
        if let DagNodeKind::Choice { succ, .. } = &node.kind {
            for &w in succ {
                indegree[w] += 1;
            }
        }
    }
    let mut order = vec![root];
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        if let DagNodeKind::Choice { succ, .. } = &nodes[v].kind {
            for &w in succ {
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    order.push(w);
                }
            }
        }
    }
    (order.len() == n).then_some(order)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DagPlay {
    /// Visited nodes from the root, sink included.
    pub nodes: Vec<usize>,
    pub outcome: OutcomeId,
}

impl Dynamics for DagGame {
    fn universe(&self) -> &Universe {
        &self.universe
    }

    fn degrees(&self) -> Vec<usize> {
        self.choosers.iter().map(|&v| self.succ(v).len()).collect()
    }

    fn owner(&self, slot: usize) -> PlayerId {
        self.node_owner(self.choosers[slot]).expect("choice")
    }

    fn outcome(&self, s: &Profile) -> OutcomeId {
        self.outcome_from(s, self.root)
    }

    fn lazy_successors(&self, s: &Profile, a: PlayerId) -> Vec<Profile> {
        let here = self.outcome(s);
        let pref = self.universe.pref(a);
        self.open_paths(s, a)
            .into_iter()
            .filter(|p| pref.prefers(here, self.sink_outcome(*p.last().expect("non-empty")).expect("sink")))
            .map(|p| self.along(s, &p))
            .collect()
    }
}

impl ScriptTarget for DagGame {
    fn redirect_along(&self, s: &Profile, path: &[u16]) -> Option<Profile> {
        let mut nodes = vec![self.root];
        for &c in path {
            let v = *nodes.last().expect("non-empty");
            nodes.push(*self.succ(v).get(c as usize)?);
        }
        self.sink_outcome(*nodes.last().expect("non-empty"))?;
        Some(self.along(s, &nodes))
    }
}

fn same_shape(g: &DagGame, s: &Profile, t: &Profile) -> Result<()> {
    g.check_profile(s)?;
    g.check_profile(t).map_err(|_| Error::ShapeMismatch)
}

/// Changes happen only at `a`'s nodes on the play of `t`.
pub fn dag_lazy_convertible(g: &DagGame, s: &Profile, t: &Profile, a: PlayerId) -> Result<bool> {
    same_shape(g, s, t)?;
    let play = g.play(t);
    Ok(s.diff(t).all(|k| {
        let v = g.node_of_slot(k);
        g.node_owner(v) == Some(a) && play.nodes.contains(&v)
    }))
}

pub fn dag_lazy_successors(g: &DagGame, s: &Profile, a: PlayerId) -> Vec<Profile> {
    Dynamics::lazy_successors(g, s, a)
}

pub fn is_dag_nash(g: &DagGame, s: &Profile) -> bool {
    let here = g.outcome(s);
    g.universe.player_ids().all(|a| {
        let pref = g.universe.pref(a);
        g.conversions(s, a).iter().all(|t| !pref.prefers(here, g.outcome(t)))
    })
}

/// Brute-force equilibria, checked against the sinks of lazy improvement.
pub fn dag_nash(g: &DagGame) -> Result<Vec<Profile>> {
    let ne: Vec<Profile> = g.profiles()?.filter(|s| is_dag_nash(g, s)).collect();
    debug_assert!(ne
        .iter()
        .all(|s| g.is_sink(s, crate::dynamics::Relation::Lazy)));
    Ok(ne)
}

/// Backward pass in reverse topological order, each owner taking a best
/// continuation under a linear extension of its preference.
pub fn dag_spe_via_linear_extension(g: &DagGame) -> Result<Profile> {
    let lin = g.universe.linearized()?;
    let mut s = g.first_profile();
    let mut value: Vec<Option<OutcomeId>> = vec![None; g.nodes.len()];
    for &v in g.topo.iter().rev() {
        match &g.nodes[v].kind {
            DagNodeKind::Sink(o) => value[v] = Some(*o),
            DagNodeKind::Choice { owner, succ } => {
                let outcomes: Vec<OutcomeId> = succ.iter().map(|&w| value[w].expect("done")).collect();
                let j = lin.pref(*owner).maximal_indices(&outcomes)[0];
                s.set(g.slot_of[v].expect("choice"), j as u16);
                value[v] = Some(outcomes[j]);
            }
        }
    }
    Ok(s)
}

/// The ordered blocks of a terminating preference family, worst first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreferencePartition {
    pub blocks: Vec<Vec<OutcomeId>>,
    /// Per block: whether some two players order it oppositely.
    pub split: Vec<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pattern {
    /// `z <_a y <_a x` and `x <_b y <_b z`.
    Reversed,
    /// `z <_a y <_a x` and `x <_b z <_b y`.
    Rotated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Witness {
    pub a: PlayerId,
    pub b: PlayerId,
    pub x: OutcomeId,
    pub y: OutcomeId,
    pub z: OutcomeId,
    pub pattern: Pattern,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyCheck {
    Terminating(PreferencePartition),
    Violating(Witness),
}

impl fmt::Display for FamilyCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyCheck::Terminating(p) => write!(f, "terminating with {} blocks", p.blocks.len()),
            FamilyCheck::Violating(w) => write!(f, "violating ({:?})", w.pattern),
        }
    }
}

/// Decides whether lazy improvement terminates on every DAG game over these
/// strict linear preferences, returning blocks or a forbidden pattern.
pub fn check_preference_family(u: &Universe) -> Result<FamilyCheck> {
    for a in u.player_ids() {
        if u.classify(a) != PreferenceClass::StrictLinear {
            return Err(Error::NotStrictLinear(u.player_name(a).to_string()));
        }
    }
    let n = u.n_outcomes();
    let lt = |a: PlayerId, x: usize, y: usize| u.prefers(a, OutcomeId::new(x), OutcomeId::new(y));
    for pattern in [Pattern::Reversed, Pattern::Rotated] {
        for a in u.player_ids() {
            for b in u.player_ids() {
                for x in 0..n {
                    for y in 0..n {
                        for z in 0..n {
                            if !(lt(a, z, y) && lt(a, y, x)) {
                                continue;
                            }
                            let hit = match pattern {
                                Pattern::Reversed => lt(b, x, y) && lt(b, y, z),
                                Pattern::Rotated => lt(b, x, z) && lt(b, z, y),
                            };
                            if hit {
                                let (x, y, z) = (OutcomeId::new(x), OutcomeId::new(y), OutcomeId::new(z));
                                return Ok(FamilyCheck::Violating(Witness { a, b, x, y, z, pattern }));
                            }
                        }
                    }
                }
            }
        }
    }

    // x ~ y iff some a, b have x ≤_a y ≤_b x; with no forbidden pattern the
    // classes are intervals of every order and hold at most two outcomes.
    let le = |a: PlayerId, x: usize, y: usize| x == y || lt(a, x, y);
    let related = |x: usize, y: usize| {
        u.player_ids().any(|a| u.player_ids().any(|b| le(a, x, y) && le(b, y, x)))
    };
    let first = PlayerId(0);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| {
        if lt(first, x, y) {
            Ordering::Less
        } else if lt(first, y, x) {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    });
    let mut blocks: Vec<Vec<OutcomeId>> = Vec::new();
    for &x in &order {
        match blocks.last_mut() {
            Some(last) if related(last[0].index(), x) => last.push(OutcomeId::new(x)),
            _ => blocks.push(vec![OutcomeId::new(x)]),
        }
    }
    let split = blocks
        .iter()
        .map(|blk| {
            blk.len() == 2
                && u.player_ids()
                    .any(|a| u.player_ids().any(|b| lt(a, blk[0].index(), blk[1].index()) && lt(b, blk[1].index(), blk[0].index())))
        })
        .collect();
    Ok(FamilyCheck::Terminating(PreferencePartition { blocks, split }))
}

/// Checks that a partition certifies termination: blocks of size at most
/// two, and every player ranks any later block above any earlier one.
pub fn partition_is_certificate(u: &Universe, p: &PreferencePartition) -> bool {
    let mut seen = vec![false; u.n_outcomes()];
    for blk in &p.blocks {
        if blk.is_empty() || blk.len() > 2 {
            return false;
        }
        for o in blk {
            if std::mem::replace(&mut seen[o.index()], true) {
                return false;
            }
        }
    }
    if seen.contains(&false) {
        return false;
    }
    p.blocks.iter().enumerate().all(|(i, lower)| {
        p.blocks[i + 1..].iter().all(|upper| {
            lower
                .iter()
                .all(|&x| upper.iter().all(|&y| u.player_ids().all(|a| u.prefers(a, x, y))))
        })
    })
}

/// Win-lose numbering: non-sink nodes numbered so that edges decrease the
/// number and the root gets the largest. Returns nodes by number, 1 first.
pub fn decreasing_numbering(g: &DagGame) -> Vec<usize> {
    g.topo
        .iter()
        .rev()
        .copied()
        .filter(|&v| g.slot_of[v].is_some())
        .collect()
}

/// `b(s)`: for nodes numbered 1..n, whether the owner wins from there.
/// Every lazy improvement makes it lexicographically larger.
pub fn lex_potential(g: &DagGame, s: &Profile) -> Result<Vec<bool>> {
    let winners = win_outcomes(&g.universe)?;
    Ok(decreasing_numbering(g)
        .into_iter()
        .map(|v| {
            let owner = g.node_owner(v).expect("choice");
            g.outcome_from(s, v) == winners[owner.index()]
        })
        .collect())
}

/// Each player's winning outcome in a two-outcome game with strict preferences.
fn win_outcomes(u: &Universe) -> Result<Vec<OutcomeId>> {
    if u.n_outcomes() != 2 {
        return Err(Error::NotWinLose(format!("{} outcomes", u.n_outcomes())));
    }
    let (w, l) = (OutcomeId(0), OutcomeId(1));
    u.player_ids()
        .map(|a| match (u.prefers(a, l, w), u.prefers(a, w, l)) {
            (true, false) => Ok(w),
            (false, true) => Ok(l),
            _ => Err(Error::NotWinLose(format!("player {} has no strict winner", u.player_name(a)))),
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VeryLazyVariant {
    MinChanges,
    MinPlayDistance,
    MinPlayLength,
}

impl VeryLazyVariant {
    pub const ALL: [VeryLazyVariant; 3] = [
        VeryLazyVariant::MinChanges,
        VeryLazyVariant::MinPlayDistance,
        VeryLazyVariant::MinPlayLength,
    ];

    pub fn name(self) -> &'static str {
        match self {
            VeryLazyVariant::MinChanges => "min-changes",
            VeryLazyVariant::MinPlayDistance => "min-play-distance",
            VeryLazyVariant::MinPlayLength => "min-play-length",
        }
    }
}

impl std::str::FromStr for VeryLazyVariant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        VeryLazyVariant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| format!("unknown variant {s}"))
    }
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// Improvements of `a`, keeping per target outcome only the conversions
/// that minimize the variant's cost. Ties keep every minimizer.
pub fn very_lazy_successors(g: &DagGame, s: &Profile, a: PlayerId, variant: VeryLazyVariant) -> Vec<Profile> {
    let here = g.outcome(s);
    let current = g.play(s).nodes;
    let pref = g.universe.pref(a);
    // cost; smaller is better. Play distance 2^-prefix is ranked by -prefix.
    let mut best: Vec<Option<(i64, Vec<Profile>)>> = vec![None; g.universe.n_outcomes()];
    for t in g.conversions(s, a) {
        let path = g.play(&t).nodes;
        let o = g.sink_outcome(*path.last().expect("non-empty")).expect("sink");
        if !pref.prefers(here, o) {
            continue;
        }
        let cost = match variant {
            VeryLazyVariant::MinChanges => s.distance(&t) as i64,
            VeryLazyVariant::MinPlayDistance => -(common_prefix(&current, &path) as i64),
            VeryLazyVariant::MinPlayLength => path.len() as i64 - 1,
        };
        match &mut best[o.index()] {
            Some((c, list)) if *c == cost => list.push(t),
            Some((c, _)) if *c < cost => {}
            slot => *slot = Some((cost, vec![t])),
        }
    }
    best.into_iter().flatten().flat_map(|(_, list)| list).collect()
}

/// A DAG game whose improvement is one of the very lazy restrictions.
pub struct VeryLazy<'a> {
    pub game: &'a DagGame,
    pub variant: VeryLazyVariant,
}

impl Dynamics for VeryLazy<'_> {
    fn universe(&self) -> &Universe {
        &self.game.universe
    }

    fn degrees(&self) -> Vec<usize> {
        self.game.degrees()
    }

    fn owner(&self, slot: usize) -> PlayerId {
        self.game.owner(slot)
    }

    fn outcome(&self, s: &Profile) -> OutcomeId {
        self.game.outcome(s)
    }

    fn lazy_successors(&self, s: &Profile, a: PlayerId) -> Vec<Profile> {
        very_lazy_successors(self.game, s, a, self.variant)
    }
}

impl ScriptTarget for VeryLazy<'_> {
    fn redirect_along(&self, s: &Profile, path: &[u16]) -> Option<Profile> {
        self.game.redirect_along(s, path)
    }
}
