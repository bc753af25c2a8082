//! Recursive-descent parser for `.sc` chart files.
//!
//! ```text
//! chart  := stereo? "statechart" NAME "{" decl* "}"
//! stereo := "<<" item ("," item)* ">>"      item := NAME ("=" NAME)?
//! decl   := "events" NAME+ ";" | "flags" NAME+ ";" | "initial" NAME ";" | state
//! state  := "*"? "state" NAME (";" | "{" body* "}")
//! body   := "initial" NAME ";" | "on" NAME ("[" guard "]")? ("->" | "=>") NAME ";" | state
//! ```
//!
//! `=>` and `*state` are presentation options and are rejected unless the
//! variant enables them. Parsing is purely syntactic apart from guard
//! normalization, which needs the declared flags.

use std::collections::BTreeSet;
use std::fmt;

use super::ast::{Ast, ConcreteModel, StateNode, Stereotype, Transition};
use super::guard::{Guard, GuardError, GuardExpr, GuardLanguage};
use super::lexer::{tokenize, Cursor, Tok, Token};
use super::signature::{Signature, MAX_FLAGS};
use crate::variability::{LanguageVariant, PresentationOption};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub token: String,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, token: String, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            token,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {} (at `{}`)", self.line, self.column, self.message, self.token)
    }
}

impl std::error::Error for ParseError {}

/// One or more parse errors, in source order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseErrors(pub Vec<ParseError>);

impl fmt::Display for ParseErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseErrors {}

impl From<ParseError> for ParseErrors {
    fn from(e: ParseError) -> Self {
        ParseErrors(vec![e])
    }
}

/// A transition whose guard has not been normalized yet.
struct RawTransition {
    event: String,
    guard: Option<(GuardExpr, Token)>,
    target: String,
}

struct RawState {
    name: String,
    initial: Option<String>,
    children: Vec<RawState>,
    transitions: Vec<RawTransition>,
}

struct Parser<'v> {
    cur: Cursor,
    variant: &'v LanguageVariant,
}

impl Parser<'_> {
    fn stereotypes(&mut self) -> Result<BTreeSet<Stereotype>, ParseError> {
        let mut out = BTreeSet::new();
        if *self.cur.peek_tok() != Tok::OpenStereo {
            return Ok(out);
        }
        self.cur.bump();
        loop {
            let (key, _) = self.cur.expect_name()?;
            let value = if *self.cur.peek_tok() == Tok::Eq {
                self.cur.bump();
                Some(self.cur.expect_name()?.0)
            } else {
                None
            };
            out.insert(Stereotype { key, value });
            match self.cur.peek_tok() {
                Tok::Comma => {
                    self.cur.bump();
                }
                Tok::CloseStereo => {
                    self.cur.bump();
                    return Ok(out);
                }
                _ => return Err(self.cur.error_here("expected `,` or `>>`")),
            }
        }
    }

    fn names_until_semi(&mut self) -> Result<Vec<String>, ParseError> {
        let mut names = vec![self.cur.expect_name()?.0];
        while *self.cur.peek_tok() != Tok::Semi {
            names.push(self.cur.expect_name()?.0);
        }
        self.cur.bump();
        Ok(names)
    }

    fn set_initial(&self, slot: &mut Option<String>, name: String, at: &Token) -> Result<(), ParseError> {
        if slot.is_some() {
            return Err(ParseError::new(
                at.line,
                at.column,
                at.tok.to_string(),
                "duplicate initial declaration in this scope",
            ));
        }
        *slot = Some(name);
        Ok(())
    }

    /// Parses `"*"? "state" ...`, reporting whether the star marker was used.
    fn state(&mut self) -> Result<(RawState, Option<Token>), ParseError> {
        let star = if *self.cur.peek_tok() == Tok::Star {
            if !self.variant.has(PresentationOption::InitialStar) {
                return Err(self
                    .cur
                    .error_here("presentation option InitialStar (`*state`) is not enabled"));
            }
            Some(self.cur.bump())
        } else {
            None
        };
        self.cur.expect_keyword("state")?;
        let (name, _) = self.cur.expect_name()?;
        let mut st = RawState {
            name,
            initial: None,
            children: Vec::new(),
            transitions: Vec::new(),
        };
        match self.cur.peek_tok() {
            Tok::Semi => {
                self.cur.bump();
            }
            Tok::LBrace => {
                self.cur.bump();
                self.state_body(&mut st)?;
                self.cur.expect(Tok::RBrace)?;
            }
            _ => return Err(self.cur.error_here("expected `;` or `{` after state name")),
        }
        Ok((st, star))
    }

    fn state_body(&mut self, st: &mut RawState) -> Result<(), ParseError> {
        loop {
            match self.cur.peek_tok() {
                Tok::RBrace => return Ok(()),
                Tok::Ident(w) if w == "initial" => {
                    let at = self.cur.bump();
                    let (name, _) = self.cur.expect_name()?;
                    self.cur.expect(Tok::Semi)?;
                    self.set_initial(&mut st.initial, name, &at)?;
                }
                Tok::Ident(w) if w == "on" => {
                    self.cur.bump();
                    let t = self.transition()?;
                    st.transitions.push(t);
                }
                Tok::Ident(w) if w == "state" => {
                    let (child, _) = self.state()?;
                    st.children.push(child);
                }
                Tok::Star => {
                    let (child, star) = self.state()?;
                    if let Some(at) = star {
                        self.set_initial(&mut st.initial, child.name.clone(), &at)?;
                    }
                    st.children.push(child);
                }
                _ => return Err(self.cur.error_here("expected `initial`, `on`, `state` or `}`")),
            }
        }
    }

    fn transition(&mut self) -> Result<RawTransition, ParseError> {
        let (event, _) = self.cur.expect_name()?;
        let guard = if *self.cur.peek_tok() == Tok::LBracket {
            let open = self.cur.bump();
            let expr = GuardExpr::parse(&mut self.cur)?;
            self.cur.expect(Tok::RBracket)?;
            Some((expr, open))
        } else {
            None
        };
        match self.cur.peek_tok() {
            Tok::Arrow => {
                self.cur.bump();
            }
            Tok::FatArrow if self.variant.has(PresentationOption::FatArrow) => {
                self.cur.bump();
            }
            Tok::FatArrow => {
                return Err(self
                    .cur
                    .error_here("presentation option FatArrow (`=>`) is not enabled"))
            }
            _ => return Err(self.cur.error_here("expected `->`")),
        }
        let (target, _) = self.cur.expect_name()?;
        self.cur.expect(Tok::Semi)?;
        Ok(RawTransition { event, guard, target })
    }

    fn chart(&mut self) -> Result<RawChart, ParseError> {
        let stereotypes = self.stereotypes()?;
        self.cur.expect_keyword("statechart")?;
        let (name, _) = self.cur.expect_name()?;
        self.cur.expect(Tok::LBrace)?;
        let mut chart = RawChart {
            name,
            stereotypes,
            events: Vec::new(),
            flags: Vec::new(),
            flags_at: None,
            initial: None,
            states: Vec::new(),
        };
        loop {
            match self.cur.peek_tok() {
                Tok::RBrace => break,
                Tok::Ident(w) if w == "events" => {
                    self.cur.bump();
                    let names = self.names_until_semi()?;
                    chart.events.extend(names);
                }
                Tok::Ident(w) if w == "flags" => {
                    let at = self.cur.bump();
                    chart.flags_at.get_or_insert(at);
                    let names = self.names_until_semi()?;
                    chart.flags.extend(names);
                }
                Tok::Ident(w) if w == "initial" => {
                    let at = self.cur.bump();
                    let (name, _) = self.cur.expect_name()?;
                    self.cur.expect(Tok::Semi)?;
                    self.set_initial(&mut chart.initial, name, &at)?;
                }
                Tok::Ident(w) if w == "state" => {
                    let (st, _) = self.state()?;
                    chart.states.push(st);
                }
                Tok::Star => {
                    let (st, star) = self.state()?;
                    if let Some(at) = star {
                        self.set_initial(&mut chart.initial, st.name.clone(), &at)?;
                    }
                    chart.states.push(st);
                }
                _ => {
                    return Err(self
                        .cur
                        .error_here("expected `events`, `flags`, `initial`, `state` or `}`"))
                }
            }
        }
        self.cur.expect(Tok::RBrace)?;
        self.cur.expect(Tok::Eof)?;
        Ok(chart)
    }
}

struct RawChart {
    name: String,
    stereotypes: BTreeSet<Stereotype>,
    events: Vec<String>,
    flags: Vec<String>,
    flags_at: Option<Token>,
    initial: Option<String>,
    states: Vec<RawState>,
}

fn resolve_state(
    raw: RawState,
    sig: &Signature,
    language: GuardLanguage,
    errors: &mut Vec<ParseError>,
) -> StateNode {
    let transitions = raw
        .transitions
        .into_iter()
        .map(|t| {
            let guard = match &t.guard {
                None => Guard::always(sig.flags.len()),
                Some((expr, at)) => match expr.normalize(sig, language) {
                    Ok(g) => g,
                    Err(e) => {
                        let message = match e {
                            GuardError::Syntax(p) => p.message,
                            other => other.to_string(),
                        };
                        errors.push(ParseError::new(at.line, at.column, expr.to_string(), message));
                        Guard::always(sig.flags.len())
                    }
                },
            };
            Transition {
                event: t.event,
                guard,
                target: t.target,
            }
        })
        .collect();
    StateNode {
        name: raw.name,
        initial: raw.initial,
        children: raw
            .children
            .into_iter()
            .map(|c| resolve_state(c, sig, language, errors))
            .collect(),
        transitions,
    }
}

/// Maps concrete syntax to abstract syntax under `variant`'s presentation
/// options and guard language.
pub fn parse(model: &ConcreteModel, variant: &LanguageVariant) -> Result<Ast, ParseErrors> {
    let tokens = tokenize(&model.body)?;
    let mut parser = Parser {
        cur: Cursor::new(tokens),
        variant,
    };
    let raw = parser.chart()?;
    if raw.flags.len() > MAX_FLAGS {
        let at = raw.flags_at.expect("flags were declared");
        return Err(ParseError::new(
            at.line,
            at.column,
            at.tok.to_string(),
            format!("{} flags declared, at most {MAX_FLAGS} are supported", raw.flags.len()),
        )
        .into());
    }
    let signature = Signature {
        events: raw.events,
        flags: raw.flags,
    };
    let mut errors = Vec::new();
    let states = raw
        .states
        .into_iter()
        .map(|s| resolve_state(s, &signature, variant.guard_language, &mut errors))
        .collect();
    if !errors.is_empty() {
        return Err(ParseErrors(errors));
    }
    Ok(Ast {
        name: raw.name,
        stereotypes: raw.stereotypes,
        signature,
        root_initial: raw.initial,
        states,
    })
}
