//! Syntactic filters cutting a variant's reduced syntax out of the full
//! reduced syntax.

use std::fmt;

use super::variant::LanguageVariant;
use crate::syntax::{FlatAst, GuardLanguage};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConstraintSpec {
    /// Every guard is `true` (empty guards never survive flattening).
    NoGuards,
    /// At most `k` states.
    MaxStates(usize),
    /// Every flat chart is deterministic by construction, so this always
    /// holds. Kept so configurations can name it.
    Deterministic,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown constraint `{0}`")]
pub struct UnknownConstraint(pub String);

impl ConstraintSpec {
    /// Parses `NoGuards`, `Deterministic` or `MaxStates<k>` with `k >= 1`.
    pub fn from_id(id: &str) -> Result<ConstraintSpec, UnknownConstraint> {
        match id {
            "NoGuards" => Ok(ConstraintSpec::NoGuards),
            "Deterministic" => Ok(ConstraintSpec::Deterministic),
            _ => id
                .strip_prefix("MaxStates")
                .filter(|k| !k.is_empty() && k.bytes().all(|b| b.is_ascii_digit()))
                .and_then(|k| k.parse::<usize>().ok())
                .filter(|&k| k >= 1)
                .map(ConstraintSpec::MaxStates)
                .ok_or_else(|| UnknownConstraint(id.to_string())),
        }
    }
}

impl fmt::Display for ConstraintSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstraintSpec::NoGuards => f.write_str("NoGuards"),
            ConstraintSpec::MaxStates(k) => write!(f, "MaxStates{k}"),
            ConstraintSpec::Deterministic => f.write_str("Deterministic"),
        }
    }
}

fn all_guards_full(m: &FlatAst) -> bool {
    m.transitions().iter().all(|t| t.guard.is_full())
}

pub fn check_constraint(m: &FlatAst, c: &ConstraintSpec) -> bool {
    match c {
        ConstraintSpec::NoGuards => all_guards_full(m),
        ConstraintSpec::MaxStates(k) => m.states().len() <= *k,
        ConstraintSpec::Deterministic => true,
    }
}

/// Every stereotype key is whitelisted and, where the whitelist pins
/// values, carries one of them.
pub fn check_stereotypes(m: &FlatAst, v: &LanguageVariant) -> bool {
    m.stereotypes().iter().all(|s| match v.allowed_stereotypes.get(&s.key) {
        None => false,
        Some(None) => true,
        Some(Some(values)) => s.value.as_ref().is_some_and(|x| values.contains(x)),
    })
}

impl LanguageVariant {
    /// Membership of a flat chart in the variant's reduced syntax.
    pub fn admits(&self, m: &FlatAst) -> bool {
        check_stereotypes(m, self)
            && self.constraints.iter().all(|c| check_constraint(m, c))
            && (self.guard_language == GuardLanguage::Propositional || all_guards_full(m))
    }
}
