//! Tokenizer shared by the chart and guard parsers.

use std::fmt;

use super::parser::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Semi,
    Comma,
    Eq,
    Bang,
    Amp,
    Pipe,
    Arrow,
    FatArrow,
    Star,
    OpenStereo,
    CloseStereo,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(name) => return f.write_str(name),
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Semi => ";",
            Tok::Comma => ",",
            Tok::Eq => "=",
            Tok::Bang => "!",
            Tok::Amp => "&",
            Tok::Pipe => "|",
            Tok::Arrow => "->",
            Tok::FatArrow => "=>",
            Tok::Star => "*",
            Tok::OpenStereo => "<<",
            Tok::CloseStereo => ">>",
            Tok::Eof => "end of input",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

/// Splits `src` into tokens. `//` starts a comment running to end of line.
pub fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let next = chars.get(i + 1).copied();
        let (start_line, start_col) = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '/' && next == Some('/') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let two = |t: Tok| (t, 2usize);
        let (tok, width) = match (c, next) {
            ('-', Some('>')) => two(Tok::Arrow),
            ('=', Some('>')) => two(Tok::FatArrow),
            ('<', Some('<')) => two(Tok::OpenStereo),
            ('>', Some('>')) => two(Tok::CloseStereo),
            ('{', _) => (Tok::LBrace, 1),
            ('}', _) => (Tok::RBrace, 1),
            ('[', _) => (Tok::LBracket, 1),
            (']', _) => (Tok::RBracket, 1),
            ('(', _) => (Tok::LParen, 1),
            (')', _) => (Tok::RParen, 1),
            (';', _) => (Tok::Semi, 1),
            (',', _) => (Tok::Comma, 1),
            ('=', _) => (Tok::Eq, 1),
            ('!', _) => (Tok::Bang, 1),
            ('&', _) => (Tok::Amp, 1),
            ('|', _) => (Tok::Pipe, 1),
            ('*', _) => (Tok::Star, 1),
            (c, _) if c.is_ascii_alphabetic() => {
                let start = i;
                let mut j = i;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                let word: String = chars[start..j].iter().collect();
                (Tok::Ident(word), j - start)
            }
            (c, _) => {
                return Err(ParseError::new(
                    start_line,
                    start_col,
                    c.to_string(),
                    "unexpected character",
                ))
            }
        };
        out.push(Token {
            tok,
            line: start_line,
            column: start_col,
        });
        i += width;
        col += width;
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}

/// Cursor over a token vector. The last token is always `Eof`.
pub struct Cursor {
    tokens: Vec<Token>,
    pos: usize,
}

impl Cursor {
    pub fn new(tokens: Vec<Token>) -> Self {
        debug_assert!(matches!(tokens.last(), Some(Token { tok: Tok::Eof, .. })));
        Cursor { tokens, pos: 0 }
    }

    pub fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    pub fn peek_tok(&self) -> &Tok {
        &self.peek().tok
    }

    pub fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    pub fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek_tok(), Tok::Ident(w) if w == kw)
    }

    pub fn error_here(&self, message: impl Into<String>) -> ParseError {
        let t = self.peek();
        ParseError::new(t.line, t.column, t.tok.to_string(), message)
    }

    pub fn expect(&mut self, tok: Tok) -> Result<Token, ParseError> {
        if *self.peek_tok() == tok {
            Ok(self.bump())
        } else {
            Err(self.error_here(format!("expected `{tok}`")))
        }
    }

    pub fn expect_keyword(&mut self, kw: &str) -> Result<Token, ParseError> {
        if self.is_keyword(kw) {
            Ok(self.bump())
        } else {
            Err(self.error_here(format!("expected `{kw}`")))
        }
    }

    /// A non-reserved identifier.
    pub fn expect_name(&mut self) -> Result<(String, Token), ParseError> {
        match self.peek_tok() {
            Tok::Ident(w) if super::signature::is_usable_name(w) => {
                let w = w.clone();
                Ok((w, self.bump()))
            }
            Tok::Ident(_) => Err(self.error_here("reserved word used as a name")),
            _ => Err(self.error_here("expected a name")),
        }
    }
}
