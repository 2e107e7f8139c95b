//! Tokens with positions. Words run over anything that is not whitespace,
//! punctuation or the start of a comment.

use crate::error::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Word(String),
    Punct(char),
    Arrow,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Word(w) => format!("'{w}'"),
            Tok::Punct(c) => format!("'{c}'"),
            Tok::Arrow => "'->'".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

const PUNCT: &[char] = &['{', '}', '(', ')', '[', ']', ';', ':', ',', '*', '='];

pub fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut column) = (0, 1, 1);
    let advance = |i: &mut usize, line: &mut usize, column: &mut usize| {
        if chars[*i] == '\n' {
            *line += 1;
            *column = 1;
        } else {
            *column += 1;
        }
        *i += 1;
    };
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            advance(&mut i, &mut line, &mut column);
        } else if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                advance(&mut i, &mut line, &mut column);
            }
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            out.push(Token { tok: Tok::Arrow, line, column });
            advance(&mut i, &mut line, &mut column);
            advance(&mut i, &mut line, &mut column);
        } else if PUNCT.contains(&c) {
            out.push(Token { tok: Tok::Punct(c), line, column });
            advance(&mut i, &mut line, &mut column);
        } else if c.is_control() {
            return Err(ParseError {
                line,
                column,
                expected: vec!["a word or punctuation".into()],
                found: format!("{c:?}"),
            });
        } else {
            let (l0, c0) = (line, column);
            let mut word = String::new();
            while i < chars.len() {
                let d = chars[i];
                let arrow = d == '-' && chars.get(i + 1) == Some(&'>');
                if d.is_whitespace() || d == '#' || PUNCT.contains(&d) || arrow || d.is_control() {
                    break;
                }
                word.push(d);
                advance(&mut i, &mut line, &mut column);
            }
            out.push(Token { tok: Tok::Word(word), line: l0, column: c0 });
        }
    }
    out.push(Token { tok: Tok::Eof, line, column });
    Ok(out)
}

/// Whether `name` prints back as a single word token.
pub fn is_word(name: &str) -> bool {
    !name.is_empty()
        && !name.contains("->")
        && name
            .chars()
            .all(|c| !c.is_whitespace() && !c.is_control() && c != '#' && !PUNCT.contains(&c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_and_arrows() {
        let toks = tokenize("node n8 a -> n7 *n6 # comment\n leaf L1 [-1/2,3] ;").unwrap();
        let kinds: Vec<Tok> = toks.iter().map(|t| t.tok.clone()).collect();
        assert_eq!(kinds[3], Tok::Arrow);
        assert_eq!(kinds[5], Tok::Punct('*'));
        assert_eq!((toks[7].line, toks[7].column), (2, 2));
        assert_eq!(kinds[10], Tok::Word("-1/2".into()));
        assert!(is_word("z4") && !is_word("a b") && !is_word("x,y"));
    }
}
