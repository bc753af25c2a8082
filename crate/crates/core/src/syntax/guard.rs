//! Guards and the pluggable guard language.
//!
//! Whatever language a guard is written in, it is stored as the set of flag
//! valuations that satisfy it. Valuation `v` assigns flag `i` the value of
//! bit `i` of `v`, flags being indexed in signature order.

use std::fmt;

use super::lexer::{tokenize, Cursor, Tok};
use super::parser::ParseError;
use super::signature::{Signature, MAX_FLAGS};

/// Which guard language the parser accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum GuardLanguage {
    /// Only the constants `true` and `false`.
    Literal,
    /// Negation, conjunction and disjunction over declared flags.
    #[default]
    Propositional,
}

impl GuardLanguage {
    pub fn id(self) -> &'static str {
        match self {
            GuardLanguage::Literal => "literal",
            GuardLanguage::Propositional => "propositional",
        }
    }
}

/// A guard in normal form: a set of satisfying valuations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Guard {
    flags: u8,
    mask: u64,
}

impl Guard {
    fn full_mask(flags: usize) -> u64 {
        let n = 1u32 << flags;
        if n == 64 {
            u64::MAX
        } else {
            (1u64 << n) - 1
        }
    }

    /// The guard satisfied by every valuation over `flags` flags.
    pub fn always(flags: usize) -> Self {
        assert!(flags <= MAX_FLAGS, "too many flags");
        Guard {
            flags: flags as u8,
            mask: Self::full_mask(flags),
        }
    }

    pub fn never(flags: usize) -> Self {
        assert!(flags <= MAX_FLAGS, "too many flags");
        Guard {
            flags: flags as u8,
            mask: 0,
        }
    }

    /// Builds a guard from a bitset over valuations. Bits beyond
    /// `2^flags` are discarded.
    pub fn from_mask(flags: usize, mask: u64) -> Self {
        assert!(flags <= MAX_FLAGS, "too many flags");
        Guard {
            flags: flags as u8,
            mask: mask & Self::full_mask(flags),
        }
    }

    pub fn from_valuations(flags: usize, valuations: impl IntoIterator<Item = usize>) -> Self {
        let mut g = Guard::never(flags);
        for v in valuations {
            assert!(v < g.valuation_count(), "valuation out of range");
            g.mask |= 1 << v;
        }
        g
    }

    pub fn flag_count(&self) -> usize {
        self.flags as usize
    }

    pub fn valuation_count(&self) -> usize {
        1 << self.flags
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn contains(&self, valuation: usize) -> bool {
        valuation < self.valuation_count() && self.mask >> valuation & 1 == 1
    }

    pub fn is_full(&self) -> bool {
        self.mask == Self::full_mask(self.flags as usize)
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn overlaps(&self, other: &Guard) -> bool {
        self.mask & other.mask != 0
    }

    pub fn union(&self, other: &Guard) -> Guard {
        debug_assert_eq!(self.flags, other.flags);
        Guard {
            flags: self.flags,
            mask: self.mask | other.mask,
        }
    }

    pub fn valuations(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.valuation_count()).filter(|v| self.contains(*v))
    }

    /// Renders the guard as text in `language` over the flags of `sig`.
    ///
    /// Constants print as `true`/`false`; other guards print as a
    /// disjunction of full minterms. Non-constant guards have no Literal
    /// rendering, so the propositional form is used for them.
    pub fn render(&self, sig: &Signature) -> String {
        if self.is_full() {
            return "true".into();
        }
        if self.is_empty() {
            return "false".into();
        }
        let terms: Vec<String> = self
            .valuations()
            .map(|v| {
                sig.flags
                    .iter()
                    .enumerate()
                    .take(self.flag_count())
                    .map(|(i, f)| {
                        if v >> i & 1 == 1 {
                            f.clone()
                        } else {
                            format!("!{f}")
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(" & ")
            })
            .collect();
        terms.join(" | ")
    }
}

/// Guard syntax as written, before normalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GuardExpr {
    Const(bool),
    Flag(String),
    Not(Box<GuardExpr>),
    And(Box<GuardExpr>, Box<GuardExpr>),
    Or(Box<GuardExpr>, Box<GuardExpr>),
}

impl fmt::Display for GuardExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GuardExpr::Const(b) => write!(f, "{b}"),
            GuardExpr::Flag(name) => f.write_str(name),
            GuardExpr::Not(e) => write!(f, "!({e})"),
            GuardExpr::And(a, b) => write!(f, "({a} & {b})"),
            GuardExpr::Or(a, b) => write!(f, "({a} | {b})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GuardError {
    #[error("guard `{expr}` is outside the {language} guard language")]
    GuardLanguageViolation { expr: String, language: &'static str },
    #[error("guard mentions undeclared flag `{0}`")]
    UnknownFlag(String),
    #[error("{0}")]
    Syntax(ParseError),
}

impl GuardExpr {
    /// Parses `or := and ('|' and)*`, `and := unary ('&' unary)*`,
    /// `unary := '!' unary | '(' or ')' | 'true' | 'false' | NAME`.
    pub fn parse(cur: &mut Cursor) -> Result<GuardExpr, ParseError> {
        let mut lhs = Self::parse_and(cur)?;
        while *cur.peek_tok() == Tok::Pipe {
            cur.bump();
            let rhs = Self::parse_and(cur)?;
            lhs = GuardExpr::Or(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn parse_and(cur: &mut Cursor) -> Result<GuardExpr, ParseError> {
        let mut lhs = Self::parse_unary(cur)?;
        while *cur.peek_tok() == Tok::Amp {
            cur.bump();
            let rhs = Self::parse_unary(cur)?;
            lhs = GuardExpr::And(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn parse_unary(cur: &mut Cursor) -> Result<GuardExpr, ParseError> {
        match cur.peek_tok().clone() {
            Tok::Bang => {
                cur.bump();
                Ok(GuardExpr::Not(Box::new(Self::parse_unary(cur)?)))
            }
            Tok::LParen => {
                cur.bump();
                let e = Self::parse(cur)?;
                cur.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(w) if w == "true" || w == "false" => {
                cur.bump();
                Ok(GuardExpr::Const(w == "true"))
            }
            Tok::Ident(_) => Ok(GuardExpr::Flag(cur.expect_name()?.0)),
            _ => Err(cur.error_here("expected a guard expression")),
        }
    }

    fn eval(&self, sig: &Signature, valuation: usize) -> bool {
        match self {
            GuardExpr::Const(b) => *b,
            GuardExpr::Flag(name) => sig
                .flag_index(name)
                .map(|i| valuation >> i & 1 == 1)
                .unwrap_or(false),
            GuardExpr::Not(e) => !e.eval(sig, valuation),
            GuardExpr::And(a, b) => a.eval(sig, valuation) && b.eval(sig, valuation),
            GuardExpr::Or(a, b) => a.eval(sig, valuation) || b.eval(sig, valuation),
        }
    }

    fn first_unknown_flag<'a>(&'a self, sig: &Signature) -> Option<&'a str> {
        match self {
            GuardExpr::Const(_) => None,
            GuardExpr::Flag(name) => sig.flag_index(name).is_none().then_some(name.as_str()),
            GuardExpr::Not(e) => e.first_unknown_flag(sig),
            GuardExpr::And(a, b) | GuardExpr::Or(a, b) => {
                a.first_unknown_flag(sig).or_else(|| b.first_unknown_flag(sig))
            }
        }
    }

    /// Checks the expression against `language` and computes its
    /// satisfying-valuation set over `sig`.
    pub fn normalize(&self, sig: &Signature, language: GuardLanguage) -> Result<Guard, GuardError> {
        if language == GuardLanguage::Literal && !matches!(self, GuardExpr::Const(_)) {
            return Err(GuardError::GuardLanguageViolation {
                expr: self.to_string(),
                language: language.id(),
            });
        }
        if let Some(flag) = self.first_unknown_flag(sig) {
            return Err(GuardError::UnknownFlag(flag.to_string()));
        }
        let flags = sig.flags.len();
        if flags > MAX_FLAGS {
            return Err(GuardError::Syntax(ParseError::new(
                0,
                0,
                String::new(),
                format!("{flags} flags declared, at most {MAX_FLAGS} supported"),
            )));
        }
        Ok(Guard::from_valuations(
            flags,
            (0..1usize << flags).filter(|v| self.eval(sig, *v)),
        ))
    }
}

/// Normalizes guard text (with or without surrounding brackets) into its
/// satisfying-valuation set. An empty text is the omitted guard, `true`.
pub fn normalize_guard(text: &str, sig: &Signature, language: GuardLanguage) -> Result<Guard, GuardError> {
    let tokens = tokenize(text).map_err(GuardError::Syntax)?;
    let mut cur = Cursor::new(tokens);
    if *cur.peek_tok() == Tok::Eof {
        return GuardExpr::Const(true).normalize(sig, language);
    }
    let bracketed = *cur.peek_tok() == Tok::LBracket;
    if bracketed {
        cur.bump();
    }
    let expr = GuardExpr::parse(&mut cur).map_err(GuardError::Syntax)?;
    if bracketed {
        cur.expect(Tok::RBracket).map_err(GuardError::Syntax)?;
    }
    cur.expect(Tok::Eof).map_err(GuardError::Syntax)?;
    expr.normalize(sig, language)
}
