//! The built-in corpus of worked examples, as documents plus the extra data
//! (frames, selections, expected values) needed to replay each one.

use std::fmt::Write as _;

use num_rational::Rational64;
use num_traits::Zero;

use crate::dag::{DagGame, VeryLazy, VeryLazyVariant};
use crate::dynamics::{improvement_graph, run, synchronous_step, Dynamics, Policy, Relation, RunConfig, ScriptTarget, Verdict};
use crate::equilibria::{backward_induction, brute_force_nash, is_spe};
use crate::error::{Error, Result};
use crate::game::{Game, PlayerId, Profile};
use crate::io::{self, parse_tree_profile, Document};
use crate::markov::{build_chain, stable_profiles, ExactChain, StabilityParams};
use crate::potentials::{big_delta, global_bound, small_delta};
use crate::scalar::big;

/// Fixture names; `quadratic-N` stands for `quadratic-0` … `quadratic-20`.
pub const NAMES: &[&str] = &[
    "g1-kuhn",
    "g2-cycle",
    "g3-delta",
    "aumann",
    "quadratic-N",
    "sync-cycle",
    "dag-cycle-11",
    "dag-cycle-8",
    "verylazy-cycle",
    "lazy-vs-crazy",
    "lazy-vs-crazy-primed",
    "markov-simple",
    "markov-abcdefgh",
];

pub const QUADRATIC_MAX: usize = 20;

/// Every concrete fixture, with `quadratic-N` expanded to the ones written to disk.
pub fn concrete_names() -> Vec<String> {
    NAMES
        .iter()
        .flat_map(|&n| {
            if n == "quadratic-N" {
                [0, 1, 2, 3, 5].iter().map(|k| format!("quadratic-{k}")).collect()
            } else {
                vec![n.to_string()]
            }
        })
        .collect()
}

pub fn summary(name: &str) -> Option<&'static str> {
    Some(match name {
        "g1-kuhn" => "payoff tree with two equilibria, one of them subgame perfect",
        "g2-cycle" => "plain improvement cycles, lazy improvement does not",
        "g3-delta" => "dismissed-outcome counters of a four-outcome profile",
        "aumann" => "centipede-like tree; backward induction goes down then right",
        "quadratic-N" => "lazy run of exactly (n+2)(n+3)/2 - 2 steps",
        "sync-cycle" => "synchronous lazy improvement cycles in four steps",
        "dag-cycle-11" => "eleven-step lazy cycle in a DAG game (reversed pattern)",
        "dag-cycle-8" => "eight-step lazy cycle in a DAG game (rotated pattern)",
        "verylazy-cycle" => "cycle surviving all three very lazy restrictions",
        "lazy-vs-crazy" => "win-lose DAG game, crazy b drags a into a cycle",
        "lazy-vs-crazy-primed" => "the same with four outcomes, cycling under very lazy steps",
        "markov-simple" => "perturbed chain selecting the subgame perfect equilibrium",
        "markov-abcdefgh" => "perturbed chain with limit weights 7/16, 1/4, 5/16",
        _ => return None,
    })
}

/// File name under `fixtures/`.
pub fn file_name(name: &str) -> String {
    match name {
        "g1-kuhn" => "g1.game".into(),
        "g2-cycle" => "g2.game".into(),
        "g3-delta" => "g3.game".into(),
        other => format!("{other}.game"),
    }
}

fn quadratic_n(name: &str) -> Option<usize> {
    let n: usize = name.strip_prefix("quadratic-")?.parse().ok()?;
    (n <= QUADRATIC_MAX).then_some(n)
}

pub fn source(name: &str) -> Option<String> {
    if let Some(n) = quadratic_n(name) {
        return Some(quadratic(n));
    }
    let name = match name {
        "g1" => "g1-kuhn",
        "g2" => "g2-cycle",
        "g3" => "g3-delta",
        other => other,
    };
    Some(match name {
        "g1-kuhn" => payoff_tree("(b (a (b [4,3] [1,0]) [3,2]) [1,0])"),
        "g2-cycle" => payoff_tree("(a (b [1,0] [0,1]) (b [1,0] [0,1]))"),
        "g3-delta" => "game { players: a b ; outcomes: x y z t ;\n\
             tree: (a *(b *(b *[x] [y]) (a *[z] [t])) (b *(a *[x] [t] [t]) (a *[y] [z]))) ;\n\
             prefer a: chain z y t x ; }"
            .into(),
        "aumann" => payoff_tree("(a (b (a [4,0] [3,4]) (a [2,1] [1,2])) [0,3])"),
        "sync-cycle" => payoff_tree("(a (b (a [3,2] [2,0]) [1,1]) (b [1,1] (a [2,0] [3,2])))"),
        "dag-cycle-11" => ladder_dag(&["a1", "b1", "a2", "b2", "a3", "b3", "a4", "b4"], "chain z y x", "chain x y z"),
        "dag-cycle-8" => ladder_dag(&["b1", "a2", "a3", "b3", "a4", "b4", "a5"], "chain z y x", "chain x z y"),
        "verylazy-cycle" => VERYLAZY.into(),
        "lazy-vs-crazy" => LAZY_VS_CRAZY.into(),
        "lazy-vs-crazy-primed" => LAZY_VS_CRAZY_PRIMED.into(),
        "markov-simple" => payoff_tree("(a (b [3,1] [0,0]) [2,2])"),
        "markov-abcdefgh" => payoff_tree("(a (b (a [1,0] [0,3]) [3,2]) [2,0])"),
        _ => return None,
    })
}

/// The fixture as a parsed document, with its starting profile where it has one.
pub fn load(name: &str) -> Result<Document> {
    let text = source(name).ok_or_else(|| Error::Validation(format!("unknown fixture {name}")))?;
    let mut doc = io::parse(&text)?;
    if let Document::Dag(d) = &mut doc {
        if let Some(frames) = dag_frames(name) {
            d.profile = Some(frames_from(&d.game, frames)?[0].clone());
        }
    }
    Ok(doc)
}

/// Canonical text of the fixture.
pub fn emit(name: &str) -> Result<String> {
    Ok(io::print(&load(name)?))
}

fn payoff_tree(tree: &str) -> String {
    format!("game {{ players: a b ; outcomes: payoff 2 ; tree: {tree} ; }}")
}

/// Root `a` over `n+1` nodes `b:(x_i | y)`; `a` wants higher `i`, `b` wants `y`.
/// Starts on `x0` with every `b` choosing its `x`.
pub fn quadratic(n: usize) -> String {
    let xs: Vec<String> = (0..=n).map(|i| format!("x{i}")).collect();
    let children: Vec<String> = xs
        .iter()
        .enumerate()
        .map(|(i, x)| format!("{}(b *[{x}] [y])", if i == 0 { "*" } else { "" }))
        .collect();
    let tree = format!("(a {})", children.join(" "));
    let script: Vec<String> = quadratic_script(n).iter().map(|(p, path)| format!("{p} {}.{}", path[0], path[1])).collect();
    format!(
        "game {{ players: a b ; outcomes: {} y ; tree: {tree} ;\n prefer a: chain y {} ;\n prefer b: chain {{{}}} y ;\n script: {} ; }}",
        xs.join(" "),
        xs.join(" "),
        xs.join(" "),
        script.join(", ")
    )
}

/// `a` walks up `x1 … xn`, `b` answers with `y`, `a` retreats to `x0`; then
/// the same with one child fewer.
fn quadratic_script(n: usize) -> Vec<(&'static str, [usize; 2])> {
    let mut out = Vec::new();
    for m in (1..=n).rev() {
        out.extend((1..=m).map(|i| ("a", [i, 0])));
        out.push(("b", [m, 1]));
        out.push(("a", [0, 0]));
    }
    out.push(("b", [0, 1]));
    out
}

pub fn quadratic_steps(n: usize) -> usize {
    (n + 2) * (n + 3) / 2 - 2
}

/// Each node points at every lower node, then at the sinks `X Y Z`.
fn ladder_dag(order: &[&str], pref_a: &str, pref_b: &str) -> String {
    let mut text = String::from("dag {\n players: a b ;\n outcomes: x y z ;\n");
    for (i, v) in order.iter().enumerate() {
        let owner = &v[..1];
        let lower: Vec<&str> = order[i + 1..].iter().copied().chain(["X", "Y", "Z"]).collect();
        let _ = writeln!(text, " node {v} {owner} -> {} ;", lower.join(" "));
    }
    let _ = write!(
        text,
        " leaf X x ; leaf Y y ; leaf Z z ;\n root {} ;\n prefer a: {pref_a} ;\n prefer b: {pref_b} ;\n}}",
        order[0]
    );
    text
}

/// The two unnamed middle nodes `d1 d2` are given to `a`; their owner does not matter.
const VERYLAZY: &str = "dag {
 players: a b ;
 outcomes: t1 y2 x3 t3 z4 x7 z8 y9 x9 ;
 node b1 b -> a2 a3 b3 T1 ;
 node a2 a -> a3 Y2 d1 ;
 node a3 a -> b3 a4 X3 T3 ;
 node b3 b -> a4 Z4 ;
 node d1 a -> d2 ;
 node d2 a -> a4 ;
 node a4 a -> X7 b4 ;
 node b4 b -> a5 Z8 ;
 node a5 a -> Y9 X9 ;
 leaf T1 t1 ; leaf Y2 y2 ; leaf X3 x3 ; leaf T3 t3 ; leaf Z4 z4 ;
 leaf X7 x7 ; leaf Z8 z8 ; leaf Y9 y9 ; leaf X9 x9 ;
 root b1 ;
 prefer a: chain {z4 z8} {y2 y9} {t1 t3} {x3 x7 x9} ;
 prefer b: chain {x3 x7 x9} {z4 z8} {t1 t3} {y2 y9} ;
}";

const LAZY_VS_CRAZY: &str = "dag {
 players: a b ;
 outcomes: zero one ;
 node top b -> mid left right ;
 node mid a -> left right ;
 node left b -> L0 L1 ;
 node right b -> R0 R1 ;
 leaf L0 zero ; leaf L1 one ; leaf R0 zero ; leaf R1 one ;
 root top ;
 prefer a: pair zero one ;
 prefer b: pair zero one, pair one zero ;
}";

/// Left sinks are `zero one`, right sinks their primed copies.
const LAZY_VS_CRAZY_PRIMED: &str = "dag {
 players: a b ;
 outcomes: zero zero' one one' ;
 node top b -> mid left right ;
 node mid a -> left right ;
 node left b -> L0 L1 ;
 node right b -> R0 R1 ;
 leaf L0 zero ; leaf L1 one ; leaf R0 zero' ; leaf R1 one' ;
 root top ;
 prefer a: chain {zero zero'} {one one'} ;
 prefer b: pair one' zero', pair zero' one, pair one zero', pair one zero, pair zero one', pair one' zero ;
}";

type Frame = &'static [(&'static str, &'static str)];

/// First frame in full, then only the edges that change.
const DAG_CYCLE_11: &[Frame] = &[
    &[("a1", "b1"), ("b1", "a2"), ("a2", "b2"), ("b2", "a3"), ("a3", "X"), ("b3", "a4"), ("a4", "b4"), ("b4", "Y")],
    &[("b1", "b3")],
    &[("a1", "a2")],
    &[("b2", "Z")],
    &[("a1", "a3"), ("a3", "b3")],
    &[("a1", "b1"), ("a4", "X")],
    &[("b1", "a2")],
    &[("a2", "a4"), ("a4", "b4")],
    &[("b1", "b2"), ("b2", "a3"), ("b4", "Z")],
    &[("a3", "X")],
    &[("b1", "a2"), ("b4", "Y")],
];

const DAG_CYCLE_8: &[Frame] = &[
    &[("b1", "a2"), ("a2", "a3"), ("a3", "b3"), ("b3", "a4"), ("a4", "X"), ("b4", "a5"), ("a5", "Y")],
    &[("b3", "Z")],
    &[("a2", "a4"), ("a4", "b4"), ("a5", "X")],
    &[("b1", "a3")],
    &[("a3", "a4"), ("a5", "Y")],
    &[("a3", "X")],
    &[("b1", "b3"), ("b3", "a4"), ("b4", "Z")],
    &[("b1", "a2"), ("b4", "a5")],
];

const LAZY_VS_CRAZY_FRAMES: &[Frame] = &[
    &[("top", "mid"), ("mid", "left"), ("left", "L0"), ("right", "R1")],
    &[("mid", "right")],
    &[("right", "R0")],
    &[("top", "left"), ("left", "L1")],
    &[("top", "mid")],
    &[("mid", "left")],
    &[("left", "L0")],
    &[("top", "right"), ("right", "R1")],
];

const VERYLAZY_FRAMES: &[Frame] = &[
    &[("b1", "a2"), ("a2", "a3"), ("a3", "b3"), ("b3", "a4"), ("a4", "X7"), ("b4", "a5"), ("a5", "Y9")],
    &[("b3", "Z4")],
    &[("a2", "Y2")],
    &[("a2", "d1"), ("a4", "b4"), ("a5", "X9")],
    &[("b1", "a3")],
    &[("a3", "a4"), ("a5", "Y9")],
    &[("a3", "X3")],
    &[("b1", "b3"), ("b3", "a4"), ("b4", "Z8")],
    &[("b1", "T1")],
    &[("b1", "a2"), ("b4", "a5")],
    &[("a2", "a3"), ("a3", "T3")],
];

fn dag_frames(name: &str) -> Option<&'static [Frame]> {
    match name {
        "verylazy-cycle" => Some(VERYLAZY_FRAMES),
        "dag-cycle-11" => Some(DAG_CYCLE_11),
        "dag-cycle-8" => Some(DAG_CYCLE_8),
        "lazy-vs-crazy" | "lazy-vs-crazy-primed" => Some(LAZY_VS_CRAZY_FRAMES),
        _ => None,
    }
}

/// Applies the frame edits in turn, starting from the all-first profile.
pub fn frames_from(g: &DagGame, frames: &[Frame]) -> Result<Vec<Profile>> {
    let mut out: Vec<Profile> = Vec::new();
    let mut s = g.first_profile();
    for f in frames {
        s = g.with_edges(&s, f)?;
        out.push(s.clone());
    }
    Ok(out)
}

/// The frames of a DAG fixture, if it has them.
pub fn frames(name: &str) -> Result<Option<Vec<Profile>>> {
    let Some(f) = dag_frames(name) else { return Ok(None) };
    let Document::Dag(d) = load(name)? else { unreachable!("frames belong to DAG fixtures") };
    frames_from(&d.game, f).map(Some)
}

/// Whether consecutive profiles, wrapping around, are single improvement
/// steps of some player, all distinct.
pub fn is_improvement_cycle<D: Dynamics + ?Sized>(sys: &D, cycle: &[Profile]) -> bool {
    let distinct = cycle.iter().enumerate().all(|(i, s)| !cycle[..i].contains(s));
    distinct
        && cycle.len() > 1
        && (0..cycle.len()).all(|i| {
            let (s, t) = (&cycle[i], &cycle[(i + 1) % cycle.len()]);
            sys.universe().player_ids().any(|a| sys.lazy_successors(s, a).contains(t))
        })
}

/// Start profile and the four pairs of selections, as (player, leaf path).
pub const SYNC_START: [u16; 5] = [0, 0, 1, 1, 1];
pub const SYNC_SELECTIONS: [[(&str, &[u16]); 2]; 4] = [
    [("a", &[0, 0, 0]), ("b", &[0, 1])],
    [("a", &[1, 1, 0]), ("b", &[0, 0, 0])],
    [("a", &[1, 1, 1]), ("b", &[1, 0])],
    [("a", &[0, 0, 1]), ("b", &[1, 1, 1])],
];

/// Replays the synchronous selections; returns every visited profile.
pub fn sync_cycle(g: &Game) -> Result<Vec<Profile>> {
    let mut s = Profile::new(SYNC_START.to_vec());
    let mut seen = vec![s.clone()];
    for step in SYNC_SELECTIONS {
        let selections = step
            .iter()
            .map(|&(p, path)| {
                let a = g.universe.player_id(p).expect("player");
                let t = g.redirect_along(&s, path).ok_or_else(|| Error::Validation(format!("no leaf at {path:?}")))?;
                Ok((a, t))
            })
            .collect::<Result<Vec<_>>>()?;
        s = synchronous_step(g, &s, &selections)?;
        seen.push(s.clone());
    }
    Ok(seen)
}

/// Letters of the eight-state chain by profile rank.
pub const ABCDEFGH_BY_RANK: [char; 8] = ['B', 'C', 'A', 'D', 'F', 'G', 'E', 'H'];

/// The claimed fixed point `(7p,3ε,6ε,12ε,4ε,4p,5p,5ε)` over `A…H`.
pub fn abcdefgh_fixed_point(p: Rational64, eps: Rational64) -> [Rational64; 8] {
    [p * 7, eps * 3, eps * 6, eps * 12, eps * 4, p * 4, p * 5, eps * 5]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub what: String,
    pub ok: bool,
}

fn check(what: impl Into<String>, ok: bool) -> Check {
    Check { what: what.into(), ok }
}

fn tree(doc: &Document) -> &Game {
    match doc {
        Document::Tree(d) => &d.game,
        _ => unreachable!("tree fixture"),
    }
}

fn dag(doc: &Document) -> &DagGame {
    match doc {
        Document::Dag(d) => &d.game,
        _ => unreachable!("dag fixture"),
    }
}

/// Replays the property the fixture exists for.
pub fn verify(name: &str) -> Result<Vec<Check>> {
    let doc = load(name)?;
    let mut out = Vec::new();
    if let Some(n) = quadratic_n(name) {
        let Document::Tree(d) = &doc else { unreachable!() };
        let start = d.profile.clone().expect("starred");
        let config = RunConfig { policy: Policy::Scripted(d.script.clone()), max_steps: 10_000, ..RunConfig::default() };
        let trace = run(&d.game, &start, &config)?;
        out.push(check(
            format!("scripted run stops at equilibrium after {} steps", quadratic_steps(n)),
            trace.verdict == Verdict::TerminatedAtNe && trace.len() == quadratic_steps(n),
        ));
        out.push(check("run length within (h-1)(l-1)", trace.len() <= global_bound(&d.game)?));
        return Ok(out);
    }
    match name {
        "g1-kuhn" | "g1" => {
            let g = tree(&doc);
            let ne = brute_force_nash(g)?;
            let bi = backward_induction(g)?;
            out.push(check("two equilibria", ne.len() == 2));
            out.push(check("backward induction is unique and subgame perfect", bi.len() == 1 && is_spe(g, &bi[0])));
            out.push(check(
                "the other equilibrium is not subgame perfect",
                ne.iter().filter(|s| !bi.contains(s)).all(|s| !is_spe(g, s)),
            ));
            let fourth = parse_tree_profile("(b *(a *(b *[4,3] [1,0]) [3,2]) [1,0])", g)?;
            out.push(check("starred backward induction profile parses as subgame perfect", is_spe(g, &fourth) && bi == [fourth]));
        }
        "g2-cycle" | "g2" => {
            let g = tree(&doc);
            let plain = improvement_graph(g, Relation::Plain)?;
            let lazy = improvement_graph(g, Relation::Lazy)?;
            out.push(check("plain improvement has a 4-cycle", plain.girth() == Some(4)));
            out.push(check("lazy improvement is acyclic", lazy.is_acyclic()));
            out.push(check("longest lazy path at most 3", lazy.longest_path().is_some_and(|l| l <= 3)));
        }
        "g3-delta" | "g3" => {
            let g = tree(&doc);
            let s = doc.profile().expect("starred");
            out.push(check("big delta is a:5 b:3", big_delta(g) == [5, 3]));
            out.push(check("small delta matches x y z t rows", small_delta(g, s) == [vec![1, 0, 1, 3], vec![0, 2, 1, 0]]));
        }
        "aumann" => {
            let g = tree(&doc);
            let bi = backward_induction(g)?;
            out.push(check("backward induction gives [0,1,0,0]", bi == [Profile::new(vec![0, 1, 0, 0])]));
        }
        "sync-cycle" => {
            let seen = sync_cycle(tree(&doc))?;
            let distinct = (0..4).all(|i| !seen[..i].contains(&seen[i]));
            out.push(check("four synchronous steps return to the start", distinct && seen[4] == seen[0]));
        }
        "dag-cycle-11" | "dag-cycle-8" | "lazy-vs-crazy" => {
            let g = dag(&doc);
            let cycle = frames(name)?.expect("frames");
            out.push(check(
                format!("{} frames form a lazy improvement cycle", cycle.len()),
                is_improvement_cycle(g, &cycle),
            ));
            if name == "lazy-vs-crazy" {
                let graph = improvement_graph(g, Relation::Lazy)?;
                out.push(check("some lazy cycle has an a step", graph.cycle_through_label(PlayerId(0)).is_some()));
            }
        }
        "verylazy-cycle" | "lazy-vs-crazy-primed" => {
            let g = dag(&doc);
            let cycle = frames(name)?.expect("frames");
            out.push(check(
                format!("{} frames form a lazy improvement cycle", cycle.len()),
                is_improvement_cycle(g, &cycle),
            ));
            // Under min-play-length, b's shortcuts leave a no cycle in the primed game.
            let variants: &[VeryLazyVariant] = if name == "verylazy-cycle" {
                &VeryLazyVariant::ALL
            } else {
                &[VeryLazyVariant::MinChanges, VeryLazyVariant::MinPlayDistance]
            };
            for &variant in variants {
                let graph = improvement_graph(&VeryLazy { game: g, variant }, Relation::Lazy)?;
                let found = if name == "verylazy-cycle" {
                    graph.find_cycle().is_some()
                } else {
                    graph.cycle_through_label(PlayerId(0)).is_some()
                };
                out.push(check(format!("cycle under {}", variant.name()), found));
            }
        }
        "markov-simple" => {
            let g = tree(&doc);
            let report = stable_profiles(g, &StabilityParams::new(Rational64::new(1, 10)))?;
            let spe = backward_induction(g)?;
            let ne = brute_force_nash(g)?;
            let shape = crate::markov::chain_shape(g)?;
            let spe_state = shape.state(&spe[0]);
            out.push(check("weight 1 on the subgame perfect equilibrium", (report.limit(spe_state) - 1.0).abs() < 1e-6));
            out.push(check(
                "other equilibrium unstable",
                ne.iter().filter(|s| **s != spe[0]).all(|s| !report.states[shape.state(s)].stable),
            ));
        }
        "markov-abcdefgh" => {
            let g = tree(&doc);
            let (p, eps) = (Rational64::new(1, 10), Rational64::new(1, 100));
            let chain: ExactChain = build_chain(g, p, eps)?;
            let by_letter = abcdefgh_fixed_point(p, eps);
            let v: Vec<_> = ABCDEFGH_BY_RANK
                .iter()
                .map(|&c| big(&by_letter[(c as u8 - b'A') as usize]))
                .collect();
            out.push(check("exact fixed point at p=1/10, eps=1/100", chain.is_fixed_point(&v) && !v.iter().all(Zero::is_zero)));
            let report = stable_profiles(g, &StabilityParams::new(p))?;
            let expected = [('A', 7.0 / 16.0), ('F', 0.25), ('G', 5.0 / 16.0)];
            let rank = |c: char| ABCDEFGH_BY_RANK.iter().position(|&l| l == c).expect("letter");
            let mut stable: Vec<usize> = expected.iter().map(|&(c, _)| rank(c)).collect();
            stable.sort_unstable();
            out.push(check("stable set is A F G", report.stable() == stable));
            for (c, w) in expected {
                out.push(check(format!("limit weight of {c} is {w}"), (report.limit(rank(c)) - w).abs() < 1e-6));
            }
        }
        _ => return Err(Error::Validation(format!("unknown fixture {name}"))),
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_loads_and_round_trips() {
        for name in concrete_names() {
            let text = emit(&name).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(io::print(&io::parse(&text).unwrap()), text, "{name}");
        }
    }

    #[test]
    fn quadratic_script_length() {
        for n in 0..6 {
            assert_eq!(quadratic_script(n).len(), quadratic_steps(n));
        }
    }

    #[test]
    fn every_fixture_verifies() {
        let mut failed = Vec::new();
        for name in concrete_names() {
            for c in verify(&name).unwrap_or_else(|e| panic!("{name}: {e}")) {
                if !c.ok {
                    failed.push(format!("{name}: {}", c.what));
                }
            }
        }
        assert!(failed.is_empty(), "{failed:#?}");
    }
}
