//! Canonical text: one statement per line, two-space indent, outcomes and
//! nodes in declaration order.

use std::fmt::Write as _;

use crate::dag::{DagGame, DagNodeKind};
use crate::dynamics::{Dynamics, ScriptStep};
use crate::game::{Game, NodeId, NodeKind, Profile, Universe};
use crate::normal_form::NormalFormGame;
use crate::preference::Preference;

fn header(out: &mut String, u: &Universe) {
    let _ = writeln!(out, "  players: {} ;", u.players.join(" "));
    if u.payoff_mode {
        let _ = writeln!(out, "  outcomes: payoff {} ;", u.n_players());
    } else {
        let names: Vec<&str> = u.outcomes.iter().map(|o| o.name.as_str()).collect();
        let _ = writeln!(out, "  outcomes: {} ;", names.join(" "));
    }
}

fn preference_items(u: &Universe, p: &Preference) -> Option<String> {
    if p.is_empty() {
        return None;
    }
    let name = |o| u.outcome_name(o);
    if let Some(layers) = p.as_layers() {
        let groups: Vec<String> = layers
            .iter()
            .map(|g| match g.as_slice() {
                [one] => name(*one).to_string(),
                many => format!("{{{}}}", many.iter().map(|&o| name(o)).collect::<Vec<_>>().join(" ")),
            })
            .collect();
        return Some(format!("chain {}", groups.join(" ")));
    }
    let pairs: Vec<String> = p.pairs().map(|(x, y)| format!("pair {} {}", name(x), name(y))).collect();
    Some(pairs.join(", "))
}

fn preferences(out: &mut String, u: &Universe) {
    if u.payoff_mode {
        return;
    }
    for a in u.player_ids() {
        if let Some(items) = preference_items(u, u.pref(a)) {
            let _ = writeln!(out, "  prefer {}: {items} ;", u.player_name(a));
        }
    }
}

fn script(out: &mut String, u: &Universe, steps: &[ScriptStep]) {
    if steps.is_empty() {
        return;
    }
    let parts: Vec<String> = steps
        .iter()
        .map(|s| {
            let path = if s.path.is_empty() {
                "-".to_string()
            } else {
                s.path.iter().map(u16::to_string).collect::<Vec<_>>().join(".")
            };
            format!("{} {path}", u.player_name(s.player))
        })
        .collect();
    let _ = writeln!(out, "  script: {} ;", parts.join(", "));
}

/// The tree expression, with stars on the chosen children if `profile` is given.
pub fn print_tree(g: &Game, profile: Option<&Profile>) -> String {
    let mut out = String::new();
    tree_at(&mut out, g, profile, NodeId::ROOT);
    out
}

fn tree_at(out: &mut String, g: &Game, profile: Option<&Profile>, v: NodeId) {
    match &g.tree.node(v).kind {
        NodeKind::Leaf(o) => {
            let _ = write!(out, "[{}]", g.universe.outcome_name(*o));
        }
        NodeKind::Internal { owner, children } => {
            let chosen = profile.map(|s| s.choice(g.tree.slot(v).expect("internal")) as usize);
            let _ = write!(out, "({}", g.universe.player_name(*owner));
            for (j, &c) in children.iter().enumerate() {
                out.push(' ');
                if chosen == Some(j) {
                    out.push('*');
                }
                tree_at(out, g, profile, c);
            }
            out.push(')');
        }
    }
}

pub fn print_game(g: &Game, profile: Option<&Profile>, steps: &[ScriptStep]) -> String {
    let mut out = String::from("game {\n");
    header(&mut out, &g.universe);
    let _ = writeln!(out, "  tree: {} ;", print_tree(g, profile));
    preferences(&mut out, &g.universe);
    script(&mut out, &g.universe, steps);
    out.push_str("}\n");
    out
}

pub fn print_dag(g: &DagGame, profile: Option<&Profile>, steps: &[ScriptStep]) -> String {
    let mut out = String::from("dag {\n");
    header(&mut out, &g.universe);
    for (v, node) in g.nodes().iter().enumerate() {
        match &node.kind {
            DagNodeKind::Choice { owner, succ } => {
                let chosen = profile.map(|s| s.choice(g.slot(v).expect("choice")) as usize);
                let targets: Vec<String> = succ
                    .iter()
                    .enumerate()
                    .map(|(j, &w)| {
                        let star = if chosen == Some(j) { "*" } else { "" };
                        format!("{star}{}", g.nodes()[w].name)
                    })
                    .collect();
                let _ = writeln!(
                    out,
                    "  node {} {} -> {} ;",
                    node.name,
                    g.universe.player_name(*owner),
                    targets.join(" ")
                );
            }
            DagNodeKind::Sink(o) => {
                let _ = writeln!(out, "  leaf {} [{}] ;", node.name, g.universe.outcome_name(*o));
            }
        }
    }
    let _ = writeln!(out, "  root {} ;", g.nodes()[g.root()].name);
    preferences(&mut out, &g.universe);
    script(&mut out, &g.universe, steps);
    out.push_str("}\n");
    out
}

pub fn print_nf(g: &NormalFormGame) -> String {
    let mut out = String::from("nf {\n");
    let u = &g.universe;
    let _ = writeln!(out, "  players: {} ;", u.players.join(" "));
    for a in u.player_ids() {
        let _ = writeln!(out, "  strategies {}: {} ;", u.player_name(a), g.strategies[a.index()].join(" "));
    }
    if u.payoff_mode {
        let _ = writeln!(out, "  outcomes: payoff {} ;", u.n_players());
    } else {
        let names: Vec<&str> = u.outcomes.iter().map(|o| o.name.as_str()).collect();
        let _ = writeln!(out, "  outcomes: {} ;", names.join(" "));
    }
    for s in g.profiles() {
        let names: Vec<&str> = s
            .choices()
            .iter()
            .enumerate()
            .map(|(a, &c)| g.strategies[a][c as usize].as_str())
            .collect();
        let _ = writeln!(out, "  cell {} = [{}] ;", names.join(" "), u.outcome_name(g.outcome(&s)));
    }
    preferences(&mut out, u);
    out.push_str("}\n");
    out
}
