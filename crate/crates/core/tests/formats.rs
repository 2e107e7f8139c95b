mod common;

use std::path::Path;

use lazyeq::dynamics::{improvement_graph, Relation};
use lazyeq::equilibria::is_spe;
use lazyeq::generate::{self, GameKind, GenParams, PrefKind};
use lazyeq::io::{self, Document};
use lazyeq::{fixtures, Error};
use proptest::prelude::*;

use common::*;

fn fixture_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures"))
}

#[test]
fn fixture_corpus_round_trips() {
    for name in fixtures::concrete_names() {
        let text = fixtures::emit(&name).unwrap();
        let doc = io::parse(&text).unwrap();
        assert_eq!(io::print(&doc), text, "{name}");
        assert_eq!(doc, fixtures::load(&name).unwrap(), "{name}");
    }
}

#[test]
fn fixture_files_are_current() {
    for name in fixtures::concrete_names() {
        let path = fixture_dir().join(fixtures::file_name(&name));
        let on_disk = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(on_disk, fixtures::emit(&name).unwrap(), "{name}");
    }
}

#[test]
fn every_fixture_replays() {
    for name in fixtures::concrete_names() {
        for check in fixtures::verify(&name).unwrap() {
            assert!(check.ok, "{name}: {}", check.what);
        }
    }
}

#[test]
fn g1_round_trips_byte_identically() {
    let text = fixtures::emit("g1").unwrap();
    let again = io::print(&io::parse(&text).unwrap());
    assert_eq!(text.as_bytes(), again.as_bytes());
}

#[test]
fn starred_bi_profile_is_spe() {
    let text = "game { players: a b ; outcomes: payoff 2 ;\n  tree: (b *(a *(b *[4,3] [1,0]) [3,2]) [1,0]) ; }";
    let Document::Tree(d) = io::parse(text).unwrap() else { panic!("tree") };
    assert!(is_spe(&d.game, d.profile.as_ref().unwrap()));
}

#[test]
fn comments_and_whitespace_are_ignored() {
    let plain = "game { players: a b ; outcomes: x y z ; tree: (b (a (b [x] [y]) [z]) [y]) ; prefer a: chain y z x ; prefer b: pair x y ; }";
    let spaced = "# header\ngame{players:a b;\n  outcomes : x y z ; # trailing\n tree:(b(a(b[x][y])[z])[y]);prefer a:chain y z x;prefer b:pair x y;}";
    assert_eq!(io::parse(plain).unwrap(), io::parse(spaced).unwrap());
}

#[test]
fn normal_form_documents_parse() {
    let text = "nf { players: a b ; strategies a: al ar ; strategies b: bl br ; outcomes: payoff 2 ;\n\
                cell al bl = [1,0] ; cell al br = [0,1] ; cell ar bl = [0,1] ; cell ar br = [1,0] ; }";
    let doc = io::parse(text).unwrap();
    assert_eq!(doc.kind(), "nf");
    assert_eq!(io::parse(&io::print(&doc)).unwrap(), doc);
}

fn parse_err(text: &str) -> Error {
    io::parse(text).expect_err("should be rejected")
}

#[test]
fn parse_errors_carry_positions() {
    match parse_err("game {\n  players: a b\n  outcomes: x ; }") {
        Error::Parse(e) => assert_eq!((e.line, e.column), (3, 11)),
        other => panic!("{other}"),
    }
}

#[test]
fn validation_errors() {
    let rootless = parse_err("dag { players: a ; outcomes: x ; node n1 a -> L ; node n2 a -> L ; leaf L x ; }").to_string();
    assert!(rootless.contains("n1") && rootless.contains("n2"), "{rootless}");
    assert!(matches!(parse_err("dag { players: a ; outcomes: x ; node p a -> q L ; node q a -> p ; leaf L x ; root p ; }"), Error::Validation(_)));
    let two_stars = parse_err("game { players: a ; outcomes: x y ; tree: (a *[x] *[y]) ; }");
    assert!(!matches!(two_stars, Error::Parse(_)), "{two_stars}");
    let unknown = parse_err("game { players: a ; outcomes: x ; tree: (a [x] [w]) ; }");
    assert!(unknown.to_string().contains('w'), "{unknown}");
    let missing = parse_err("nf { players: a b ; strategies a: al ar ; strategies b: bl ; outcomes: payoff 2 ; cell al bl = [1,0] ; }");
    assert!(!matches!(missing, Error::Parse(_)), "{missing}");
}

#[test]
fn gen_matches_golden_file() {
    let params = GenParams { kind: GameKind::Tree, players: 2, depth: 2, branch: 2, pref: PrefKind::Linear, ..GenParams::default() };
    let golden = include_str!("golden/gen-tree-seed0.game");
    assert_eq!(io::print(&generate::generate(&params, 0).unwrap()), golden);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn generated_documents_round_trip(seed in any::<u64>(), kind in 0usize..3, pref in 0usize..5) {
        let kind = [GameKind::Tree, GameKind::Dag, GameKind::NormalForm][kind];
        let pref = [PrefKind::Linear, PrefKind::Acyclic, PrefKind::Swo, PrefKind::Crazy, PrefKind::Mixed][pref];
        let params = GenParams { kind, players: 3, depth: 3, branch: 3, outcomes: 4, pref, max_profiles: Some(100_000) };
        let doc = generate::generate(&params, seed).unwrap();
        let text = io::print(&doc);
        let back = io::parse(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(io::print(&back), text);
    }

    #[test]
    fn starred_profiles_round_trip(seed in any::<u64>()) {
        let g = tree_from_seed(seed, PrefKind::Mixed);
        let profiles = tree_profiles(&g);
        let s = &profiles[seed as usize % profiles.len()];
        let doc = Document::Tree(io::TreeDoc { game: g.clone(), profile: Some(s.clone()), script: Vec::new() });
        let back = io::parse(&io::print(&doc)).unwrap();
        prop_assert_eq!(back.profile(), Some(s));
    }

    #[test]
    fn dot_export_is_well_formed(seed in any::<u64>()) {
        let g = tree_from_seed(seed, PrefKind::Mixed);
        for relation in [Relation::Plain, Relation::Lazy] {
            let graph = improvement_graph(&g, relation).unwrap();
            let doc = Document::Tree(io::TreeDoc { game: g.clone(), profile: None, script: Vec::new() });
            let dot = graph.to_dot(|i| lazyeq::cli::profile_text(&doc, &graph.profile(i)), |a| g.universe.player_name(a).to_string());
            prop_assert_eq!(dot::check(&dot), Ok(()), "{}", dot);
        }
    }
}

#[test]
fn dot_checker_rejects_broken_input() {
    assert!(dot::check("digraph { a -> b; }").is_ok());
    assert!(dot::check("graph g { a -- b [label=\"x \\\" y\"] }").is_ok());
    assert!(dot::check("digraph { a -- b }").is_err());
    assert!(dot::check("digraph { a -> }").is_err());
    assert!(dot::check("digraph { a [label=\"open }").is_err());
    assert!(dot::check("digraph { a -> b ").is_err());
}

/// A checker for the DOT language: graph header, statement lists, node,
/// edge and attribute statements, subgraphs, and the ID forms.
mod dot {
    #[derive(Clone, Debug, PartialEq)]
    enum Tok {
        Id(String),
        Sym(&'static str),
    }

    fn lex(text: &str) -> Result<Vec<Tok>, String> {
        let chars: Vec<char> = text.chars().collect();
        let mut out = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if c.is_whitespace() {
                i += 1;
            } else if c == '"' {
                let mut s = String::new();
                i += 1;
                loop {
                    match chars.get(i) {
                        None => return Err("unterminated string".into()),
                        Some('\\') => {
                            s.push('\\');
                            s.push(*chars.get(i + 1).ok_or("dangling escape")?);
                            i += 2;
                        }
                        Some('"') => break,
                        Some(&ch) => {
                            s.push(ch);
                            i += 1;
                        }
                    }
                }
                i += 1;
                out.push(Tok::Id(s));
            } else if c == '-' && matches!(chars.get(i + 1), Some('>') | Some('-')) {
                out.push(Tok::Sym(if chars[i + 1] == '>' { "->" } else { "--" }));
                i += 2;
            } else if let Some(sym) = ["{", "}", "[", "]", "=", ";", ",", ":"].iter().find(|s| s.starts_with(c)) {
                out.push(Tok::Sym(sym));
                i += 1;
            } else if c.is_alphanumeric() || c == '_' || c == '.' || c == '-' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '.' || chars[i] == '-') {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                let numeral = word.chars().all(|ch| ch.is_ascii_digit() || ch == '.' || ch == '-');
                let ident = !word.starts_with(|ch: char| ch.is_ascii_digit()) && word.chars().all(|ch| ch.is_alphanumeric() || ch == '_');
                if !numeral && !ident {
                    return Err(format!("bad id {word}"));
                }
                out.push(Tok::Id(word));
            } else {
                return Err(format!("unexpected {c:?}"));
            }
        }
        Ok(out)
    }

    struct Parser {
        toks: Vec<Tok>,
        pos: usize,
        edge_op: &'static str,
    }

    impl Parser {
        fn peek(&self) -> Option<&Tok> {
            self.toks.get(self.pos)
        }

        fn eat(&mut self, sym: &str) -> bool {
            if matches!(self.peek(), Some(Tok::Sym(s)) if *s == sym) {
                self.pos += 1;
                true
            } else {
                false
            }
        }

        fn expect(&mut self, sym: &str) -> Result<(), String> {
            if self.eat(sym) {
                Ok(())
            } else {
                Err(format!("expected {sym} at token {}", self.pos))
            }
        }

        fn keyword(&self, word: &str) -> bool {
            matches!(self.peek(), Some(Tok::Id(w)) if w.eq_ignore_ascii_case(word))
        }

        fn id(&mut self) -> Result<String, String> {
            match self.peek() {
                Some(Tok::Id(w)) => {
                    let w = w.clone();
                    self.pos += 1;
                    Ok(w)
                }
                _ => Err(format!("expected an id at token {}", self.pos)),
            }
        }

        fn graph(&mut self) -> Result<(), String> {
            if self.keyword("strict") {
                self.pos += 1;
            }
            self.edge_op = if self.keyword("digraph") {
                "->"
            } else if self.keyword("graph") {
                "--"
            } else {
                return Err("expected graph or digraph".into());
            };
            self.pos += 1;
            if matches!(self.peek(), Some(Tok::Id(_))) {
                self.pos += 1;
            }
            self.block()?;
            if self.pos != self.toks.len() {
                return Err("trailing tokens".into());
            }
            Ok(())
        }

        fn block(&mut self) -> Result<(), String> {
            self.expect("{")?;
            while !self.eat("}") {
                if self.peek().is_none() {
                    return Err("unclosed brace".into());
                }
                self.stmt()?;
                self.eat(";");
            }
            Ok(())
        }

        fn attr_list(&mut self) -> Result<(), String> {
            while self.eat("[") {
                while !self.eat("]") {
                    self.id()?;
                    self.expect("=")?;
                    self.id()?;
                    if !self.eat(",") {
                        self.eat(";");
                    }
                }
            }
            Ok(())
        }

        fn endpoint(&mut self) -> Result<(), String> {
            if self.keyword("subgraph") || matches!(self.peek(), Some(Tok::Sym("{"))) {
                return self.subgraph();
            }
            self.id()?;
            if self.eat(":") {
                self.id()?;
                if self.eat(":") {
                    self.id()?;
                }
            }
            Ok(())
        }

        fn subgraph(&mut self) -> Result<(), String> {
            if self.keyword("subgraph") {
                self.pos += 1;
                if matches!(self.peek(), Some(Tok::Id(_))) {
                    self.pos += 1;
                }
            }
            self.block()
        }

        fn stmt(&mut self) -> Result<(), String> {
            if ["graph", "node", "edge"].iter().any(|k| self.keyword(k)) {
                self.pos += 1;
                return self.attr_list();
            }
            if matches!(self.peek(), Some(Tok::Id(_))) && matches!(self.toks.get(self.pos + 1), Some(Tok::Sym("="))) {
                self.pos += 2;
                return self.id().map(|_| ());
            }
            self.endpoint()?;
            loop {
                match self.peek() {
                    Some(Tok::Sym(op)) if *op == "->" || *op == "--" => {
                        if *op != self.edge_op {
                            return Err(format!("{op} in a graph using {}", self.edge_op));
                        }
                        self.pos += 1;
                        self.endpoint()?;
                    }
                    _ => break,
                }
            }
            self.attr_list()
        }
    }

    pub fn check(text: &str) -> Result<(), String> {
        let toks = lex(text)?;
        Parser { toks, pos: 0, edge_op: "->" }.graph()
    }
}
