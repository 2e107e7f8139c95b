//! Recursive-descent reader for the three document kinds.
//!
//! Syntax is checked first into raw statements; names, shapes and stars are
//! resolved afterwards so validation errors can point back at a position.

use std::collections::HashMap;

use num_rational::Rational64;

use super::lexer::{tokenize, Tok, Token};
use super::{DagDoc, Document, TreeDoc};
use crate::dag::{sources, DagGame, DagNode};
use crate::dynamics::ScriptStep;
use crate::error::{Error, ParseError, Result};
use crate::game::{Game, NodeKind, OutcomeId, PlayerId, Profile, TreeSpec, Universe};
use crate::normal_form::NormalFormGame;
use crate::preference::Preference;
use crate::scalar::parse_rational;

type Pos = (usize, usize);
type Name = (String, Pos);

fn invalid(pos: Pos, msg: impl std::fmt::Display) -> Error {
    Error::Validation(format!("{}:{}: {msg}", pos.0, pos.1))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Game,
    Dag,
    Nf,
}

enum RawTree {
    Leaf { items: Vec<Name>, pos: Pos, star: bool },
    Node { owner: Name, children: Vec<RawTree>, pos: Pos, star: bool },
}

impl RawTree {
    fn star(&self) -> bool {
        match self {
            RawTree::Leaf { star, .. } | RawTree::Node { star, .. } => *star,
        }
    }

    fn pos(&self) -> Pos {
        match self {
            RawTree::Leaf { pos, .. } | RawTree::Node { pos, .. } => *pos,
        }
    }

    fn any_star(&self) -> bool {
        match self {
            RawTree::Leaf { star, .. } => *star,
            RawTree::Node { star, children, .. } => *star || children.iter().any(RawTree::any_star),
        }
    }
}

enum PrefItem {
    Chain(Vec<Vec<Name>>),
    Pair(Name, Name),
}

enum OutcomesDecl {
    Named(Vec<Name>),
    Payoff(usize, Pos),
}

struct RawNode {
    name: Name,
    /// `None` for a leaf.
    owner: Option<Name>,
    succ: Vec<(Name, bool)>,
    outcome: Vec<Name>,
}

struct RawCell {
    strategies: Vec<Name>,
    outcome: Vec<Name>,
    pos: Pos,
}

#[derive(Default)]
struct Raw {
    players: Option<Vec<Name>>,
    outcomes: Option<OutcomesDecl>,
    tree: Option<RawTree>,
    prefs: Vec<(Name, Vec<PrefItem>)>,
    script: Vec<(Name, Name)>,
    nodes: Vec<RawNode>,
    root: Option<Name>,
    strategies: Vec<(Name, Vec<Name>)>,
    cells: Vec<RawCell>,
}

struct Parser {
    toks: Vec<Token>,
    at: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        Ok(Parser { toks: tokenize(text)?, at: 0 })
    }

    fn peek(&self) -> &Token {
        &self.toks[self.at]
    }

    fn pos(&self) -> Pos {
        let t = self.peek();
        (t.line, t.column)
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T> {
        let t = self.peek();
        Err(Error::Parse(ParseError {
            line: t.line,
            column: t.column,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: t.tok.describe(),
        }))
    }

    fn is_punct(&self, c: char) -> bool {
        self.peek().tok == Tok::Punct(c)
    }

    fn punct(&mut self, c: char) -> Result<()> {
        if self.is_punct(c) {
            self.bump();
            Ok(())
        } else {
            self.fail(&[&format!("'{c}'")])
        }
    }

    fn eat(&mut self, c: char) -> bool {
        let hit = self.is_punct(c);
        if hit {
            self.bump();
        }
        hit
    }

    fn is_word(&self) -> bool {
        matches!(self.peek().tok, Tok::Word(_))
    }

    fn word(&mut self, what: &str) -> Result<Name> {
        let pos = self.pos();
        match &self.peek().tok {
            Tok::Word(w) => {
                let w = w.clone();
                self.bump();
                Ok((w, pos))
            }
            _ => self.fail(&[what]),
        }
    }

    fn words_until_semicolon(&mut self, what: &str) -> Result<Vec<Name>> {
        let mut out = vec![self.word(what)?];
        while self.is_word() {
            out.push(self.word(what)?);
        }
        self.punct(';')?;
        Ok(out)
    }

    fn document(&mut self) -> Result<(Kind, Raw)> {
        let kind = match &self.peek().tok {
            Tok::Word(w) if w == "game" => Kind::Game,
            Tok::Word(w) if w == "dag" => Kind::Dag,
            Tok::Word(w) if w == "nf" => Kind::Nf,
            _ => return self.fail(&["'game'", "'dag'", "'nf'"]),
        };
        self.bump();
        self.punct('{')?;
        let mut raw = Raw::default();
        while !self.eat('}') {
            self.statement(kind, &mut raw)?;
        }
        if self.peek().tok != Tok::Eof {
            return self.fail(&["end of input"]);
        }
        Ok((kind, raw))
    }

    fn statement(&mut self, kind: Kind, raw: &mut Raw) -> Result<()> {
        let keywords: &[&str] = match kind {
            Kind::Game => &["'players'", "'outcomes'", "'tree'", "'prefer'", "'script'", "'}'"],
            Kind::Dag => &["'players'", "'outcomes'", "'node'", "'leaf'", "'root'", "'prefer'", "'script'", "'}'"],
            Kind::Nf => &["'players'", "'strategies'", "'outcomes'", "'cell'", "'prefer'", "'}'"],
        };
        let Tok::Word(kw) = self.peek().tok.clone() else {
            return self.fail(keywords);
        };
        match (kind, kw.as_str()) {
            (_, "players") => {
                let pos = self.pos();
                self.bump();
                self.punct(':')?;
                if raw.players.is_some() {
                    return Err(invalid(pos, "players declared twice"));
                }
                raw.players = Some(self.words_until_semicolon("a player name")?);
            }
            (_, "outcomes") => {
                let pos = self.pos();
                self.bump();
                self.punct(':')?;
                if raw.outcomes.is_some() {
                    return Err(invalid(pos, "outcomes declared twice"));
                }
                let names = self.words_until_semicolon("an outcome name")?;
                raw.outcomes = Some(match names.as_slice() {
                    [(p, _), (n, npos)] if p == "payoff" => match n.parse::<usize>() {
                        Ok(k) => OutcomesDecl::Payoff(k, *npos),
                        Err(_) => OutcomesDecl::Named(names),
                    },
                    _ => OutcomesDecl::Named(names),
                });
            }
            (_, "prefer") => {
                self.bump();
                let player = self.word("a player name")?;
                self.punct(':')?;
                let mut items = vec![self.pref_item()?];
                while self.eat(',') {
                    items.push(self.pref_item()?);
                }
                self.punct(';')?;
                raw.prefs.push((player, items));
            }
            (Kind::Game, "tree") => {
                let pos = self.pos();
                self.bump();
                self.punct(':')?;
                if raw.tree.is_some() {
                    return Err(invalid(pos, "tree declared twice"));
                }
                raw.tree = Some(self.tree()?);
                self.punct(';')?;
            }
            (Kind::Game | Kind::Dag, "script") => {
                self.bump();
                self.punct(':')?;
                loop {
                    let player = self.word("a player name")?;
                    let path = self.word("a path such as 0.1 or -")?;
                    raw.script.push((player, path));
                    if !self.eat(',') {
                        break;
                    }
                }
                self.punct(';')?;
            }
            (Kind::Dag, "node") => {
                self.bump();
                let name = self.word("a node name")?;
                let owner = self.word("a player name")?;
                if self.peek().tok != Tok::Arrow {
                    return self.fail(&["'->'"]);
                }
                self.bump();
                let mut succ = Vec::new();
                loop {
                    let star = self.eat('*');
                    succ.push((self.word("a node name")?, star));
                    if !self.is_word() && !self.is_punct('*') {
                        break;
                    }
                }
                self.punct(';')?;
                raw.nodes.push(RawNode { name, owner: Some(owner), succ, outcome: Vec::new() });
            }
            (Kind::Dag, "leaf") => {
                self.bump();
                let name = self.word("a node name")?;
                let outcome = self.outcome_ref()?;
                self.punct(';')?;
                raw.nodes.push(RawNode { name, owner: None, succ: Vec::new(), outcome });
            }
            (Kind::Dag, "root") => {
                let pos = self.pos();
                self.bump();
                if raw.root.is_some() {
                    return Err(invalid(pos, "root declared twice"));
                }
                raw.root = Some(self.word("a node name")?);
                self.punct(';')?;
            }
            (Kind::Nf, "strategies") => {
                self.bump();
                let player = self.word("a player name")?;
                self.punct(':')?;
                let names = self.words_until_semicolon("a strategy name")?;
                raw.strategies.push((player, names));
            }
            (Kind::Nf, "cell") => {
                let pos = self.pos();
                self.bump();
                let mut strategies = vec![self.word("a strategy name")?];
                while self.is_word() {
                    strategies.push(self.word("a strategy name")?);
                }
                self.punct('=')?;
                let outcome = self.outcome_ref()?;
                self.punct(';')?;
                raw.cells.push(RawCell { strategies, outcome, pos });
            }
            _ => return self.fail(keywords),
        }
        Ok(())
    }

    fn pref_item(&mut self) -> Result<PrefItem> {
        let (kw, _) = self.word("'chain' or 'pair'")?;
        match kw.as_str() {
            "chain" => {
                let mut groups = Vec::new();
                loop {
                    if self.eat('{') {
                        let mut g = vec![self.word("an outcome name")?];
                        while !self.eat('}') {
                            g.push(self.word("an outcome name or '}'")?);
                        }
                        groups.push(g);
                    } else if self.is_word() {
                        groups.push(vec![self.word("an outcome name")?]);
                    } else {
                        break;
                    }
                }
                if groups.is_empty() {
                    return self.fail(&["an outcome name", "'{'"]);
                }
                Ok(PrefItem::Chain(groups))
            }
            "pair" => Ok(PrefItem::Pair(self.word("an outcome name")?, self.word("an outcome name")?)),
            _ => {
                self.at -= 1;
                self.fail(&["'chain'", "'pair'"])
            }
        }
    }

    /// `[x]`, `[4,3]` or a bare outcome name.
    fn outcome_ref(&mut self) -> Result<Vec<Name>> {
        if self.is_punct('[') {
            self.bracket()
        } else {
            Ok(vec![self.word("an outcome or '['")?])
        }
    }

    fn bracket(&mut self) -> Result<Vec<Name>> {
        self.punct('[')?;
        let mut items = vec![self.word("an outcome or payoff")?];
        while self.eat(',') {
            items.push(self.word("a payoff component")?);
        }
        self.punct(']')?;
        Ok(items)
    }

    fn tree(&mut self) -> Result<RawTree> {
        let star = self.eat('*');
        let pos = self.pos();
        if self.is_punct('[') {
            let items = self.bracket()?;
            Ok(RawTree::Leaf { items, pos, star })
        } else if self.eat('(') {
            let owner = self.word("a player name")?;
            let mut children = vec![self.tree()?];
            while !self.eat(')') {
                if !self.is_punct('(') && !self.is_punct('[') && !self.is_punct('*') {
                    return self.fail(&["'('", "'['", "'*'", "')'"]);
                }
                children.push(self.tree()?);
            }
            Ok(RawTree::Node { owner, children, pos, star })
        } else {
            self.fail(&["'('", "'['"])
        }
    }
}

/// Builds the outcome set: declared names, or payoff vectors interned in
/// order of appearance.
struct Outcomes {
    payoff: Option<usize>,
    names: Vec<String>,
    payoffs: Vec<Vec<Rational64>>,
}

impl Outcomes {
    fn new(decl: Option<OutcomesDecl>, players: usize) -> Result<Self> {
        match decl {
            None => Err(Error::Validation("missing outcomes declaration".into())),
            Some(OutcomesDecl::Payoff(k, pos)) => {
                if k != players {
                    return Err(invalid(pos, format!("payoff length {k} but {players} players")));
                }
                Ok(Outcomes { payoff: Some(k), names: Vec::new(), payoffs: Vec::new() })
            }
            Some(OutcomesDecl::Named(names)) => {
                let mut seen = HashMap::new();
                for (n, pos) in &names {
                    if seen.insert(n.clone(), ()).is_some() {
                        return Err(invalid(*pos, format!("duplicate outcome {n}")));
                    }
                }
                Ok(Outcomes { payoff: None, names: names.into_iter().map(|(n, _)| n).collect(), payoffs: Vec::new() })
            }
        }
    }

    fn resolve(&mut self, items: &[Name]) -> Result<OutcomeId> {
        let pos = items[0].1;
        match self.payoff {
            None => {
                if items.len() != 1 {
                    return Err(invalid(pos, "expected a single outcome name"));
                }
                self.names
                    .iter()
                    .position(|n| *n == items[0].0)
                    .map(OutcomeId::new)
                    .ok_or_else(|| invalid(pos, format!("unknown outcome {}", items[0].0)))
            }
            Some(k) => {
                if items.len() != k {
                    return Err(invalid(pos, format!("payoff with {} components, expected {k}", items.len())));
                }
                let v = items
                    .iter()
                    .map(|(w, p)| parse_rational(w).ok_or_else(|| invalid(*p, format!("bad rational {w}"))))
                    .collect::<Result<Vec<_>>>()?;
                Ok(OutcomeId::new(match self.payoffs.iter().position(|x| *x == v) {
                    Some(i) => i,
                    None => {
                        self.payoffs.push(v);
                        self.payoffs.len() - 1
                    }
                }))
            }
        }
    }

    fn universe(self, players: Vec<String>, prefs: &[(Name, Vec<PrefItem>)]) -> Result<Universe> {
        if self.payoff.is_some() {
            if let Some(((_, pos), _)) = prefs.first() {
                return Err(invalid(*pos, "prefer is not allowed in payoff mode"));
            }
            if self.payoffs.is_empty() {
                return Err(Error::Validation("no outcomes".into()));
            }
            return Universe::from_payoffs(players, self.payoffs);
        }
        let n = self.names.len();
        let mut rels = vec![Preference::empty(n); players.len()];
        let id = |(w, pos): &Name| {
            self.names
                .iter()
                .position(|x| x == w)
                .map(OutcomeId::new)
                .ok_or_else(|| invalid(*pos, format!("unknown outcome {w}")))
        };
        for ((player, pos), items) in prefs {
            let a = players
                .iter()
                .position(|p| p == player)
                .ok_or_else(|| invalid(*pos, format!("unknown player {player}")))?;
            for item in items {
                let extra = match item {
                    PrefItem::Pair(x, y) => Preference::from_pairs(n, [(id(x)?, id(y)?)]),
                    PrefItem::Chain(groups) => {
                        let ids = groups
                            .iter()
                            .map(|g| g.iter().map(id).collect::<Result<Vec<_>>>())
                            .collect::<Result<Vec<_>>>()?;
                        Preference::layered(n, &ids)
                    }
                };
                for (x, y) in extra.pairs() {
                    rels[a].insert(x, y);
                }
            }
        }
        Universe::new(players, self.names, rels)
    }
}

fn players(raw: &mut Raw) -> Result<Vec<String>> {
    let names = raw.players.take().ok_or_else(|| Error::Validation("missing players declaration".into()))?;
    let mut seen = HashMap::new();
    for (n, pos) in &names {
        if seen.insert(n.clone(), ()).is_some() {
            return Err(invalid(*pos, format!("duplicate player {n}")));
        }
    }
    Ok(names.into_iter().map(|(n, _)| n).collect())
}

fn player_index(players: &[String], (name, pos): &Name) -> Result<PlayerId> {
    players
        .iter()
        .position(|p| p == name)
        .map(PlayerId::new)
        .ok_or_else(|| invalid(*pos, format!("unknown player {name}")))
}

fn script(players: &[String], raw: &[(Name, Name)]) -> Result<Vec<ScriptStep>> {
    raw.iter()
        .map(|(player, (path, pos))| {
            let player = player_index(players, player)?;
            let path = if path == "-" {
                Vec::new()
            } else {
                path.split('.')
                    .map(|c| c.parse::<u16>().map_err(|_| invalid(*pos, format!("bad path {path}"))))
                    .collect::<Result<_>>()?
            };
            Ok(ScriptStep { player, path })
        })
        .collect()
}

fn tree_spec(t: &RawTree, players: &[String], outcomes: &mut Outcomes) -> Result<TreeSpec> {
    match t {
        RawTree::Leaf { items, .. } => Ok(TreeSpec::Leaf(outcomes.resolve(items)?)),
        RawTree::Node { owner, children, .. } => {
            let a = player_index(players, owner)?;
            let kids = children
                .iter()
                .map(|c| tree_spec(c, players, outcomes))
                .collect::<Result<Vec<_>>>()?;
            Ok(TreeSpec::Node(a, kids))
        }
    }
}

/// Chosen child per internal node, in preorder.
fn tree_stars(t: &RawTree, out: &mut Vec<u16>) -> Result<()> {
    if let RawTree::Node { children, pos, .. } = t {
        let starred: Vec<usize> = (0..children.len()).filter(|&i| children[i].star()).collect();
        if starred.len() != 1 {
            return Err(invalid(*pos, format!("expected exactly one starred child, found {}", starred.len())));
        }
        out.push(starred[0] as u16);
        for c in children {
            tree_stars(c, out)?;
        }
    }
    Ok(())
}

fn tree_profile(t: &RawTree) -> Result<Option<Profile>> {
    if !t.any_star() {
        return Ok(None);
    }
    if t.star() {
        return Err(invalid(t.pos(), "the root cannot be starred"));
    }
    let mut choices = Vec::new();
    tree_stars(t, &mut choices)?;
    Ok(Some(Profile::new(choices)))
}

fn game_doc(mut raw: Raw) -> Result<TreeDoc> {
    let players = players(&mut raw)?;
    let mut outcomes = Outcomes::new(raw.outcomes.take(), players.len())?;
    let tree = raw.tree.take().ok_or_else(|| Error::Validation("missing tree".into()))?;
    let spec = tree_spec(&tree, &players, &mut outcomes)?;
    let profile = tree_profile(&tree)?;
    let script = script(&players, &raw.script)?;
    let universe = outcomes.universe(players, &raw.prefs)?;
    let game = Game::from_spec(universe, &spec)?;
    Ok(TreeDoc { game, profile, script })
}

fn dag_doc(mut raw: Raw) -> Result<DagDoc> {
    let players = players(&mut raw)?;
    let mut outcomes = Outcomes::new(raw.outcomes.take(), players.len())?;
    let mut index = HashMap::new();
    for (i, n) in raw.nodes.iter().enumerate() {
        if index.insert(n.name.0.clone(), i).is_some() {
            return Err(invalid(n.name.1, format!("duplicate node {}", n.name.0)));
        }
    }
    let mut nodes = Vec::with_capacity(raw.nodes.len());
    let mut stars: Vec<Option<Vec<usize>>> = Vec::new();
    for n in &raw.nodes {
        match &n.owner {
            None => {
                nodes.push(DagNode::sink(n.name.0.clone(), outcomes.resolve(&n.outcome)?));
                stars.push(None);
            }
            Some(owner) => {
                let a = player_index(&players, owner)?;
                let succ = n
                    .succ
                    .iter()
                    .map(|((w, pos), _)| index.get(w).copied().ok_or_else(|| invalid(*pos, format!("unknown node {w}"))))
                    .collect::<Result<Vec<_>>>()?;
                nodes.push(DagNode::choice(n.name.0.clone(), a, succ));
                stars.push(Some((0..n.succ.len()).filter(|&k| n.succ[k].1).collect()));
            }
        }
    }
    let root = match &raw.root {
        Some((w, pos)) => *index.get(w).ok_or_else(|| invalid(*pos, format!("unknown node {w}")))?,
        None => {
            let names: Vec<&str> = sources(&nodes).into_iter().map(|v| nodes[v].name.as_str()).collect();
            return Err(Error::Validation(format!("missing root; nodes without a predecessor: {}", names.join(", "))));
        }
    };
    let any_star = stars.iter().flatten().any(|s| !s.is_empty());
    let profile = if any_star {
        let mut choices = Vec::new();
        for (n, s) in raw.nodes.iter().zip(&stars) {
            if let Some(s) = s {
                if s.len() != 1 {
                    return Err(invalid(n.name.1, format!("expected exactly one starred successor, found {}", s.len())));
                }
                choices.push(s[0] as u16);
            }
        }
        Some(Profile::new(choices))
    } else {
        None
    };
    let script = script(&players, &raw.script)?;
    let universe = outcomes.universe(players, &raw.prefs)?;
    let game = DagGame::new(universe, nodes, root)?;
    Ok(DagDoc { game, profile, script })
}

fn nf_doc(mut raw: Raw) -> Result<NormalFormGame> {
    let players = players(&mut raw)?;
    let mut outcomes = Outcomes::new(raw.outcomes.take(), players.len())?;
    let mut strategies: Vec<Option<Vec<String>>> = vec![None; players.len()];
    for (player, names) in &raw.strategies {
        let a = player_index(&players, player)?;
        if strategies[a.index()].is_some() {
            return Err(invalid(player.1, format!("strategies of {} declared twice", player.0)));
        }
        strategies[a.index()] = Some(names.iter().map(|(n, _)| n.clone()).collect());
    }
    let strategies: Vec<Vec<String>> = strategies
        .into_iter()
        .enumerate()
        .map(|(a, s)| s.ok_or_else(|| Error::Validation(format!("missing strategies for {}", players[a]))))
        .collect::<Result<_>>()?;
    let degrees: Vec<usize> = strategies.iter().map(Vec::len).collect();
    let count = crate::game::count_product(degrees.iter().copied());
    crate::game::check_cap(count)?;
    let mut table: Vec<Option<OutcomeId>> = vec![None; count as usize];
    for cell in &raw.cells {
        if cell.strategies.len() != players.len() {
            return Err(invalid(cell.pos, format!("cell names {} strategies, expected {}", cell.strategies.len(), players.len())));
        }
        let choices = cell
            .strategies
            .iter()
            .enumerate()
            .map(|(a, (w, pos))| {
                strategies[a]
                    .iter()
                    .position(|s| s == w)
                    .map(|i| i as u16)
                    .ok_or_else(|| invalid(*pos, format!("unknown strategy {w} for {}", players[a])))
            })
            .collect::<Result<Vec<_>>>()?;
        let rank = Profile::new(choices).rank(&degrees) as usize;
        if table[rank].is_some() {
            return Err(invalid(cell.pos, "cell given twice"));
        }
        table[rank] = Some(outcomes.resolve(&cell.outcome)?);
    }
    let table = table
        .into_iter()
        .enumerate()
        .map(|(rank, o)| {
            o.ok_or_else(|| {
                let s = Profile::unrank(rank as u64, &degrees);
                let names: Vec<&str> =
                    s.choices().iter().enumerate().map(|(a, &c)| strategies[a][c as usize].as_str()).collect();
                Error::Validation(format!("missing cell {}", names.join(" ")))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let universe = outcomes.universe(players, &raw.prefs)?;
    NormalFormGame::new(universe, strategies, table)
}

pub fn parse_document(text: &str) -> Result<Document> {
    let mut p = Parser::new(text)?;
    let (kind, raw) = p.document()?;
    Ok(match kind {
        Kind::Game => Document::Tree(game_doc(raw)?),
        Kind::Dag => Document::Dag(dag_doc(raw)?),
        Kind::Nf => Document::NormalForm(nf_doc(raw)?),
    })
}

/// A starred tree such as `(b *(a [x] *[y]) [z])`, checked against `g`.
pub fn parse_tree_profile(text: &str, g: &Game) -> Result<Profile> {
    let mut p = Parser::new(text)?;
    let tree = p.tree()?;
    p.eat(';');
    if p.peek().tok != Tok::Eof {
        return p.fail(&["end of input"]);
    }
    let profile = tree_profile(&tree)?.ok_or_else(|| Error::Validation("profile has no stars".into()))?;
    if !same_shape(&tree, g, crate::game::NodeId::ROOT) {
        return Err(invalid(tree.pos(), "profile does not match the game tree"));
    }
    Ok(profile)
}

fn same_shape(t: &RawTree, g: &Game, v: crate::game::NodeId) -> bool {
    match (t, &g.tree.node(v).kind) {
        (RawTree::Leaf { items, .. }, NodeKind::Leaf(o)) => {
            let name = items.iter().map(|(w, _)| w.as_str()).collect::<Vec<_>>().join(",");
            match g.universe.outcomes[o.index()].payoff.as_ref() {
                Some(pay) => items.len() == pay.len()
                    && items.iter().zip(pay).all(|((w, _), x)| parse_rational(w) == Some(*x)),
                None => name == g.universe.outcome_name(*o),
            }
        }
        (RawTree::Node { owner, children, .. }, NodeKind::Internal { owner: a, children: kids }) => {
            owner.0 == g.universe.player_name(*a)
                && children.len() == kids.len()
                && children.iter().zip(kids).all(|(c, &k)| same_shape(c, g, k))
        }
        _ => false,
    }
}
