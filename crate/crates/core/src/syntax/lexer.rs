use std::fmt;

use thiserror::Error;

/// Parse failure with a 1-based position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, col: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            col,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    /// Identifiers and numbers, including a leading `-` on numbers.
    Word(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Dot,
    Tilde,
    Amp,
    Bar,
    Arrow,
    DoubleArrow,
    Eq,
    Slash,
    Colon,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Word(w) => return write!(f, "`{w}`"),
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::Comma => ",",
            Tok::Semi => ";",
            Tok::Dot => ".",
            Tok::Tilde => "~",
            Tok::Amp => "&",
            Tok::Bar => "|",
            Tok::Arrow => "->",
            Tok::DoubleArrow => "<->",
            Tok::Eq => "=",
            Tok::Slash => "/",
            Tok::Colon => ":",
        };
        write!(f, "`{s}`")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

fn is_word_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// Splits `text` into tokens. `line` and `col` give the position of the
/// first character.
pub fn lex(text: &str, line: usize, col: usize) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let (mut line, mut col) = (line, col);
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let advance = |n: usize, i: &mut usize, col: &mut usize| {
            *i += n;
            *col += n;
        };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            advance(1, &mut i, &mut col);
            continue;
        }
        let next = chars.get(i + 1).copied();
        let tok = if is_word_char(c) || (c == '-' && next.is_some_and(|n| n.is_ascii_digit())) {
            let start = i;
            advance(1, &mut i, &mut col);
            while i < chars.len() && is_word_char(chars[i]) {
                advance(1, &mut i, &mut col);
            }
            out.push(Token {
                tok: Tok::Word(chars[start..i].iter().collect()),
                line: tl,
                col: tc,
            });
            continue;
        } else {
            match (c, next, chars.get(i + 2).copied()) {
                ('-', Some('>'), _) => (Tok::Arrow, 2),
                ('<', Some('-'), Some('>')) => (Tok::DoubleArrow, 3),
                ('(', ..) => (Tok::LParen, 1),
                (')', ..) => (Tok::RParen, 1),
                ('[', ..) => (Tok::LBracket, 1),
                (']', ..) => (Tok::RBracket, 1),
                (',', ..) => (Tok::Comma, 1),
                (';', ..) => (Tok::Semi, 1),
                ('.', ..) => (Tok::Dot, 1),
                ('~', ..) => (Tok::Tilde, 1),
                ('&', ..) => (Tok::Amp, 1),
                ('|', ..) => (Tok::Bar, 1),
                ('=', ..) => (Tok::Eq, 1),
                ('/', ..) => (Tok::Slash, 1),
                (':', ..) => (Tok::Colon, 1),
                _ => {
                    return Err(ParseError::new(
                        tl,
                        tc,
                        format!("unexpected character `{c}`"),
                    ))
                }
            }
        };
        advance(tok.1, &mut i, &mut col);
        out.push(Token {
            tok: tok.0,
            line: tl,
            col: tc,
        });
    }
    Ok(out)
}
