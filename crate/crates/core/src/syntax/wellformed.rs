//! Context conditions on abstract syntax.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::ast::{Ast, StateNode};
use super::signature::is_usable_name;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Diagnostic {
    Signature(String),
    InvalidName(String),
    DuplicateState(String),
    MissingRootInitial,
    RootInitialNotTopLevel(String),
    MissingInitial { state: String },
    InitialNotChild { state: String, initial: String },
    InitialOnLeaf { state: String, initial: String },
    UndeclaredTarget { source: String, target: String },
    UndeclaredEvent { source: String, event: String },
    GuardWidth { source: String, event: String },
    Nondeterminism { state: String, event: String },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::Signature(msg) => write!(f, "signature: {msg}"),
            Diagnostic::InvalidName(n) => write!(f, "invalid name `{n}`"),
            Diagnostic::DuplicateState(n) => write!(f, "state `{n}` declared more than once"),
            Diagnostic::MissingRootInitial => write!(f, "chart has no initial state"),
            Diagnostic::RootInitialNotTopLevel(n) => {
                write!(f, "initial state `{n}` is not a top-level state")
            }
            Diagnostic::MissingInitial { state } => {
                write!(f, "composite state `{state}` lacks an initial child")
            }
            Diagnostic::InitialNotChild { state, initial } => {
                write!(f, "initial `{initial}` of `{state}` is not one of its children")
            }
            Diagnostic::InitialOnLeaf { state, initial } => {
                write!(f, "leaf state `{state}` declares initial `{initial}`")
            }
            Diagnostic::UndeclaredTarget { source, target } => {
                write!(f, "transition from `{source}` targets undeclared state `{target}`")
            }
            Diagnostic::UndeclaredEvent { source, event } => {
                write!(f, "transition from `{source}` uses undeclared event `{event}`")
            }
            Diagnostic::GuardWidth { source, event } => {
                write!(f, "guard of `{source}` on `{event}` ranges over the wrong flags")
            }
            Diagnostic::Nondeterminism { state, event } => {
                write!(f, "determinism violation at ({state},{event}): overlapping guards with different targets")
            }
        }
    }
}

/// Every violation found, in a stable order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostics(pub Vec<Diagnostic>);

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl std::error::Error for Diagnostics {}

fn check_node(ast: &Ast, node: &StateNode, declared: &BTreeSet<&str>, out: &mut Vec<Diagnostic>) {
    match (&node.initial, node.is_composite()) {
        (None, true) => out.push(Diagnostic::MissingInitial {
            state: node.name.clone(),
        }),
        (Some(init), true) if !node.children.iter().any(|c| &c.name == init) => {
            out.push(Diagnostic::InitialNotChild {
                state: node.name.clone(),
                initial: init.clone(),
            })
        }
        (Some(init), false) => out.push(Diagnostic::InitialOnLeaf {
            state: node.name.clone(),
            initial: init.clone(),
        }),
        _ => {}
    }
    let flags = ast.signature.flags.len();
    for t in &node.transitions {
        if !declared.contains(t.target.as_str()) {
            out.push(Diagnostic::UndeclaredTarget {
                source: node.name.clone(),
                target: t.target.clone(),
            });
        }
        if ast.signature.event_index(&t.event).is_none() {
            out.push(Diagnostic::UndeclaredEvent {
                source: node.name.clone(),
                event: t.event.clone(),
            });
        }
        if t.guard.flag_count() != flags {
            out.push(Diagnostic::GuardWidth {
                source: node.name.clone(),
                event: t.event.clone(),
            });
        }
    }
    // Two transitions of one state on one event may only overlap if they
    // agree on the target.
    let mut by_event: BTreeMap<&str, Vec<_>> = BTreeMap::new();
    for t in &node.transitions {
        by_event.entry(t.event.as_str()).or_default().push(t);
    }
    for (event, ts) in by_event {
        let clash = ts.iter().enumerate().any(|(i, a)| {
            ts[i + 1..]
                .iter()
                .any(|b| a.target != b.target && a.guard.overlaps(&b.guard))
        });
        if clash {
            out.push(Diagnostic::Nondeterminism {
                state: node.name.clone(),
                event: event.to_string(),
            });
        }
    }
    for c in &node.children {
        check_node(ast, c, declared, out);
    }
}

/// Ok iff the chart satisfies every context condition, including
/// determinism of its flattening; otherwise every violation.
pub fn check_wellformed(ast: &Ast) -> Result<(), Diagnostics> {
    let mut out = Vec::new();
    out.extend(
        ast.signature
            .problems()
            .into_iter()
            .map(|p| Diagnostic::Signature(p.to_string())),
    );
    let nodes = ast.nodes();
    if !is_usable_name(&ast.name) {
        out.push(Diagnostic::InvalidName(ast.name.clone()));
    }
    let mut declared = BTreeSet::new();
    for n in &nodes {
        if !is_usable_name(&n.name) {
            out.push(Diagnostic::InvalidName(n.name.clone()));
        }
        if !declared.insert(n.name.as_str()) {
            out.push(Diagnostic::DuplicateState(n.name.clone()));
        }
    }
    for st in &ast.stereotypes {
        for name in std::iter::once(&st.key).chain(st.value.as_ref()) {
            if !is_usable_name(name) {
                out.push(Diagnostic::InvalidName(name.clone()));
            }
        }
    }
    match &ast.root_initial {
        None => out.push(Diagnostic::MissingRootInitial),
        Some(init) if !ast.states.iter().any(|s| &s.name == init) => {
            out.push(Diagnostic::RootInitialNotTopLevel(init.clone()))
        }
        _ => {}
    }
    for st in &ast.states {
        check_node(ast, st, &declared, &mut out);
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(Diagnostics(out))
    }
}
