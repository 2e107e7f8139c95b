//! Text formats for tree, DAG and normal-form games.
//!
//! ```text
//! game { players: a b ; outcomes: x y z ; tree: (b (a (b [x] [y]) [z]) [y]) ;
//!        prefer a: chain y z x ; prefer b: pair x y ; }
//! ```
//!
//! `chain` accepts braced groups (`chain {x y} z`, each member of a group
//! below every member of a later one). `outcomes: payoff N ;` switches to
//! payoff leaves like `[4,3]` with preferences derived per component. A `*`
//! before a child (tree) or successor (DAG) marks a profile. `script:` lists
//! moves as `player path`, the path being the child indices down to the
//! targeted leaf.

mod lexer;
mod parse;
mod print;

pub use lexer::is_word;
pub use parse::{parse_document, parse_tree_profile};
pub use print::{print_dag, print_game, print_nf, print_tree};

use crate::dag::DagGame;
use crate::dynamics::ScriptStep;
use crate::error::{Error, Result};
use crate::game::{Game, Profile};
use crate::normal_form::NormalFormGame;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDoc {
    pub game: Game,
    pub profile: Option<Profile>,
    pub script: Vec<ScriptStep>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DagDoc {
    pub game: DagGame,
    pub profile: Option<Profile>,
    pub script: Vec<ScriptStep>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Tree(TreeDoc),
    Dag(DagDoc),
    NormalForm(NormalFormGame),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Tree(_) => "tree",
            Document::Dag(_) => "dag",
            Document::NormalForm(_) => "nf",
        }
    }

    pub fn profile(&self) -> Option<&Profile> {
        match self {
            Document::Tree(d) => d.profile.as_ref(),
            Document::Dag(d) => d.profile.as_ref(),
            Document::NormalForm(_) => None,
        }
    }
}

pub fn parse(text: &str) -> Result<Document> {
    parse_document(text)
}

pub fn print(doc: &Document) -> String {
    match doc {
        Document::Tree(d) => print_game(&d.game, d.profile.as_ref(), &d.script),
        Document::Dag(d) => print_dag(&d.game, d.profile.as_ref(), &d.script),
        Document::NormalForm(g) => print_nf(g),
    }
}

/// Reads a profile for `doc`: a starred tree for tree games, or a full
/// document of the same game carrying stars.
pub fn parse_profile_for(text: &str, doc: &Document) -> Result<Profile> {
    if let Document::Tree(d) = doc {
        if text.trim_start().starts_with(['(', '[', '*']) {
            return parse_tree_profile(text, &d.game);
        }
    }
    let other = parse_document(text)?;
    let same = match (doc, &other) {
        (Document::Tree(a), Document::Tree(b)) => a.game == b.game,
        (Document::Dag(a), Document::Dag(b)) => a.game == b.game,
        _ => false,
    };
    if !same {
        return Err(Error::Validation("profile document describes a different game".into()));
    }
    other
        .profile()
        .cloned()
        .ok_or_else(|| Error::Validation("profile document has no stars".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    const KUHN: &str = "game { players: a b ; outcomes: x y z ; tree: (b (a (b [x] [y]) [z]) [y]) ; prefer a: chain y z x ; prefer b: pair x y ; }";

    #[test]
    fn canonical_round_trip() {
        let doc = parse(KUHN).unwrap();
        let text = print(&doc);
        assert_eq!(
            text,
            "game {\n  players: a b ;\n  outcomes: x y z ;\n  tree: (b (a (b [x] [y]) [z]) [y]) ;\n  prefer a: chain y z x ;\n  prefer b: chain x y ;\n}\n"
        );
        assert_eq!(print(&parse(&text).unwrap()), text);
        assert_eq!(parse(&text).unwrap(), doc);
    }

    #[test]
    fn starred_profiles() {
        let Document::Tree(d) = parse(KUHN).unwrap() else { panic!() };
        let s = parse_tree_profile("(b *(a (b *[x] [y]) *[z]) [y])", &d.game).unwrap();
        assert_eq!(s, Profile::new(vec![0, 1, 0]));
        assert_eq!(print_tree(&d.game, Some(&s)), "(b *(a (b *[x] [y]) *[z]) [y])");
        let two = parse_tree_profile("(b *(a *(b *[x] [y]) *[z]) [y])", &d.game);
        assert!(matches!(two, Err(Error::Validation(_))));
        let wrong = parse_tree_profile("(b *(a (b *[x] [z]) *[z]) [y])", &d.game);
        assert!(matches!(wrong, Err(Error::Validation(_))));
    }

    #[test]
    fn parse_errors_have_positions() {
        let err = parse("game {\n  players: a b ;\n  tree (b [x]) ;\n}").unwrap_err();
        let Error::Parse(p) = err else { panic!("{err}") };
        assert_eq!((p.line, p.column), (3, 8));
        assert_eq!(p.expected, vec!["':'"]);
        let err = parse("game { players: a ; outcomes: x ; tree: (a [x] [w]) ; }").unwrap_err();
        assert!(err.to_string().contains("unknown outcome w"));
    }

    #[test]
    fn payoff_mode() {
        let doc = parse("game { players: a b ; outcomes: payoff 2 ; tree: (a (b [4,3] [1/2,0]) [4,3]) ; }").unwrap();
        let Document::Tree(d) = &doc else { panic!() };
        assert_eq!(d.game.universe.n_outcomes(), 2);
        assert_eq!(print(&doc), "game {\n  players: a b ;\n  outcomes: payoff 2 ;\n  tree: (a (b [4,3] [1/2,0]) [4,3]) ;\n}\n");
        let bad = parse("game { players: a b ; outcomes: payoff 2 ; tree: (a [1,2] [2,1]) ; prefer a: pair x y ; }");
        assert!(matches!(bad, Err(Error::Validation(_))));
    }

    #[test]
    fn dag_documents() {
        let text = "dag { players: a b ; outcomes: x y ;\n node r a -> m *L1 ; node m b -> *L1 L2 ; leaf L1 x ; leaf L2 [y] ; root r ; prefer a: pair x y ; }";
        let doc = parse(text).unwrap();
        let Document::Dag(d) = &doc else { panic!() };
        assert_eq!(d.profile, Some(Profile::new(vec![1, 0])));
        let printed = print(&doc);
        assert_eq!(parse(&printed).unwrap(), doc);
        let missing = parse("dag { players: a ; outcomes: x ; node r a -> L ; node q a -> L ; leaf L x ; }").unwrap_err();
        let msg = missing.to_string();
        assert!(msg.contains("r, q"), "{msg}");
        let cyclic = parse("dag { players: a ; outcomes: x ; node r a -> p ; node p a -> q L ; node q a -> p ; leaf L x ; root r ; }");
        assert!(matches!(cyclic, Err(Error::Validation(_))));
    }

    #[test]
    fn nf_documents() {
        let text = "nf { players: a b ; strategies a: al ar ; strategies b: bl br ; outcomes: payoff 2 ;
            cell al bl = [1,0] ; cell al br = [5,0] ; cell ar bl = [2,4] ; cell ar br = [5,3] ; }";
        let doc = parse(text).unwrap();
        assert_eq!(parse(&print(&doc)).unwrap(), doc);
        let missing = parse("nf { players: a ; strategies a: u v ; outcomes: x ; cell u = x ; }").unwrap_err();
        assert!(missing.to_string().contains("missing cell v"));
    }

    #[test]
    fn grouped_chains_print_back() {
        let text = "game {\n  players: a ;\n  outcomes: x y z t ;\n  tree: (a [x] [y] [z] [t]) ;\n  prefer a: chain {x y} z ;\n  script: a 2 ;\n}\n";
        assert_eq!(print(&parse(text).unwrap()), text);
        let pairs = "game {\n  players: a ;\n  outcomes: x y z t ;\n  tree: (a [x] [y] [z] [t]) ;\n  prefer a: pair x y, pair z t ;\n}\n";
        assert_eq!(print(&parse(pairs).unwrap()), pairs);
    }
}
