//! Reduced abstract syntax and the hierarchy-eliminating transformation.
//!
//! Flattening keeps the leaves of the state tree, resolves targets and the
//! root initial state through composites to their initial leaves, and
//! copies a composite's transitions onto its leaves. When a leaf (or an
//! intermediate composite) has its own transition on the same event, it
//! takes priority on every valuation its guard covers; the outer
//! transition still applies on the remaining valuations.

use std::collections::{BTreeMap, BTreeSet};

use super::ast::{is_reduced, Ast, StateNode, Stereotype};
use super::guard::Guard;
use super::signature::Signature;
use super::wellformed::{check_wellformed, Diagnostics};
use crate::variability::LanguageVariant;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FlatTransition {
    pub source: String,
    pub event: String,
    pub target: String,
    pub guard: Guard,
}

/// A flat, deterministic chart in canonical form.
///
/// At most one transition exists per `(source, event, target)`, its guard
/// is never empty, and guards of transitions sharing source and event are
/// disjoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FlatAst {
    name: String,
    stereotypes: BTreeSet<Stereotype>,
    signature: Signature,
    states: Vec<String>,
    initial: String,
    transitions: BTreeSet<FlatTransition>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FlattenError {
    #[error("variant disables hierarchy but the chart has composite states")]
    HierarchyDisabled,
    #[error("chart is not well-formed:\n{0}")]
    NotWellFormed(Diagnostics),
}

impl FlatAst {
    /// Builds a flat chart from a partial transition table indexed by
    /// `(state * |events| + event) * |valuations| + valuation`, entries
    /// being target state indices.
    pub fn from_table(
        name: impl Into<String>,
        stereotypes: BTreeSet<Stereotype>,
        signature: Signature,
        states: Vec<String>,
        initial: usize,
        table: &[Option<usize>],
    ) -> FlatAst {
        let events = signature.events.len();
        let vals = signature.valuation_count();
        let flags = signature.flags.len();
        assert_eq!(table.len(), states.len() * events * vals, "table size");
        assert!(initial < states.len(), "initial out of range");
        let mut transitions = BTreeSet::new();
        for (s, src) in states.iter().enumerate() {
            for (e, ev) in signature.events.iter().enumerate() {
                let mut by_target: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
                for v in 0..vals {
                    if let Some(t) = table[(s * events + e) * vals + v] {
                        by_target.entry(t).or_default().push(v);
                    }
                }
                for (t, vs) in by_target {
                    transitions.insert(FlatTransition {
                        source: src.clone(),
                        event: ev.clone(),
                        target: states[t].clone(),
                        guard: Guard::from_valuations(flags, vs),
                    });
                }
            }
        }
        FlatAst {
            name: name.into(),
            stereotypes,
            initial: states[initial].clone(),
            signature,
            states,
            transitions,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn stereotypes(&self) -> &BTreeSet<Stereotype> {
        &self.stereotypes
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn initial(&self) -> &str {
        &self.initial
    }

    pub fn initial_index(&self) -> usize {
        self.state_index(&self.initial).expect("initial is a state")
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }

    pub fn transitions(&self) -> &BTreeSet<FlatTransition> {
        &self.transitions
    }

    pub fn with_stereotypes(mut self, stereotypes: BTreeSet<Stereotype>) -> Self {
        self.stereotypes = stereotypes;
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// The partial transition function as a table, see [`FlatAst::from_table`].
    pub fn table(&self) -> Vec<Option<usize>> {
        let events = self.signature.events.len();
        let vals = self.signature.valuation_count();
        let mut table = vec![None; self.states.len() * events * vals];
        for t in &self.transitions {
            let s = self.state_index(&t.source).expect("declared source");
            let e = self.signature.event_index(&t.event).expect("declared event");
            let target = self.state_index(&t.target).expect("declared target");
            for v in t.guard.valuations() {
                table[(s * events + e) * vals + v] = Some(target);
            }
        }
        table
    }

    /// Number of `(state, event, valuation)` triples with no transition.
    pub fn unspecified_count(&self) -> usize {
        self.table().iter().filter(|t| t.is_none()).count()
    }

    /// Embeds the flat chart back into the full abstract syntax.
    pub fn to_ast(&self) -> Ast {
        let states = self
            .states
            .iter()
            .map(|name| {
                let mut node = StateNode::leaf(name.clone());
                for t in self.transitions.iter().filter(|t| &t.source == name) {
                    node = node.with_transition(t.event.clone(), t.guard, t.target.clone());
                }
                node
            })
            .collect();
        Ast {
            name: self.name.clone(),
            stereotypes: self.stereotypes.clone(),
            signature: self.signature.clone(),
            root_initial: Some(self.initial.clone()),
            states,
        }
    }
}

/// Resolves a state name through composites to the initial leaf.
fn resolve_leaf<'a>(index: &BTreeMap<&'a str, &'a StateNode>, name: &'a str) -> &'a str {
    let mut cur = name;
    while let Some(node) = index.get(cur) {
        match (&node.initial, node.is_composite()) {
            (Some(init), true) => cur = init,
            _ => break,
        }
    }
    cur
}

fn collect_leaves<'a>(nodes: &'a [StateNode], chain: &mut Vec<&'a StateNode>, out: &mut Vec<Vec<&'a StateNode>>) {
    for n in nodes {
        chain.push(n);
        if n.is_composite() {
            collect_leaves(&n.children, chain, out);
        } else {
            // innermost first
            out.push(chain.iter().rev().copied().collect());
        }
        chain.pop();
    }
}

/// The transformation into reduced abstract syntax under `variant`.
pub fn flatten(ast: &Ast, variant: &LanguageVariant) -> Result<FlatAst, FlattenError> {
    if !variant.hierarchy_enabled && !is_reduced(ast) {
        return Err(FlattenError::HierarchyDisabled);
    }
    check_wellformed(ast).map_err(FlattenError::NotWellFormed)?;

    let nodes = ast.nodes();
    let index: BTreeMap<&str, &StateNode> = nodes.iter().map(|n| (n.name.as_str(), *n)).collect();
    let mut chains = Vec::new();
    collect_leaves(&ast.states, &mut Vec::new(), &mut chains);
    let leaves: Vec<String> = chains.iter().map(|c| c[0].name.clone()).collect();
    let leaf_index: BTreeMap<&str, usize> = leaves.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();

    let sig = &ast.signature;
    let events = sig.events.len();
    let vals = sig.valuation_count();
    let mut table = vec![None; leaves.len() * events * vals];
    for (s, chain) in chains.iter().enumerate() {
        for (e, ev) in sig.events.iter().enumerate() {
            for v in 0..vals {
                let hit = chain.iter().find_map(|node| {
                    node.transitions
                        .iter()
                        .find(|t| &t.event == ev && t.guard.contains(v))
                });
                if let Some(t) = hit {
                    let target = resolve_leaf(&index, &t.target);
                    table[(s * events + e) * vals + v] = Some(leaf_index[target]);
                }
            }
        }
    }
    let root = ast.root_initial.as_deref().expect("well-formed chart has an initial state");
    let initial = leaf_index[resolve_leaf(&index, root)];
    Ok(FlatAst::from_table(
        ast.name.clone(),
        ast.stereotypes.clone(),
        sig.clone(),
        leaves,
        initial,
        &table,
    ))
}
