use std::collections::BTreeSet;
use std::fmt;

use super::guard::Guard;
use super::signature::Signature;

/// A model in concrete syntax: any text at all, plus where it came from.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConcreteModel {
    pub source_name: String,
    pub body: String,
}

impl ConcreteModel {
    pub fn new(source_name: impl Into<String>, body: impl Into<String>) -> Self {
        ConcreteModel {
            source_name: source_name.into(),
            body: body.into(),
        }
    }
}

/// A stereotype annotation `<<key>>` or `<<key=value>>`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Stereotype {
    pub key: String,
    pub value: Option<String>,
}

impl Stereotype {
    pub fn new(key: impl Into<String>, value: Option<&str>) -> Self {
        Stereotype {
            key: key.into(),
            value: value.map(str::to_string),
        }
    }
}

impl fmt::Display for Stereotype {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Some(v) => write!(f, "{}={}", self.key, v),
            None => f.write_str(&self.key),
        }
    }
}

/// An outgoing transition; the source is the state that owns it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Transition {
    pub event: String,
    pub guard: Guard,
    pub target: String,
}

/// A node of the state tree. It is composite iff it has children.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StateNode {
    pub name: String,
    pub initial: Option<String>,
    pub children: Vec<StateNode>,
    pub transitions: Vec<Transition>,
}

impl StateNode {
    pub fn leaf(name: impl Into<String>) -> Self {
        StateNode {
            name: name.into(),
            initial: None,
            children: Vec::new(),
            transitions: Vec::new(),
        }
    }

    pub fn composite(name: impl Into<String>, initial: impl Into<String>, children: Vec<StateNode>) -> Self {
        StateNode {
            name: name.into(),
            initial: Some(initial.into()),
            children,
            transitions: Vec::new(),
        }
    }

    pub fn with_transition(mut self, event: impl Into<String>, guard: Guard, target: impl Into<String>) -> Self {
        self.transitions.push(Transition {
            event: event.into(),
            guard,
            target: target.into(),
        });
        self
    }

    pub fn is_composite(&self) -> bool {
        !self.children.is_empty()
    }
}

/// Abstract syntax of a chart: the state tree with transitions attached to
/// their source states.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ast {
    pub name: String,
    pub stereotypes: BTreeSet<Stereotype>,
    pub signature: Signature,
    pub root_initial: Option<String>,
    pub states: Vec<StateNode>,
}

impl Ast {
    /// All state nodes in pre-order.
    pub fn nodes(&self) -> Vec<&StateNode> {
        fn walk<'a>(nodes: &'a [StateNode], out: &mut Vec<&'a StateNode>) {
            for n in nodes {
                out.push(n);
                walk(&n.children, out);
            }
        }
        let mut out = Vec::new();
        walk(&self.states, &mut out);
        out
    }

    pub fn find(&self, name: &str) -> Option<&StateNode> {
        self.nodes().into_iter().find(|n| n.name == name)
    }

    /// Every transition as `(source, transition)`, sources in pre-order.
    pub fn transitions(&self) -> Vec<(&str, &Transition)> {
        self.nodes()
            .into_iter()
            .flat_map(|n| n.transitions.iter().map(move |t| (n.name.as_str(), t)))
            .collect()
    }
}

/// Membership in the reduced abstract syntax: no composite states.
pub fn is_reduced(ast: &Ast) -> bool {
    ast.states.iter().all(|s| !s.is_composite())
}
