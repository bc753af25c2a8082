use std::fmt;
use std::str::FromStr;

use super::machine::{Machine, Universe};
use super::mapping::SemSet;
use super::SemanticsError;

/// A property of a single machine.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PropertySpec {
    Reachable(String),
    Unreachable(String),
    AllStatesReachable,
}

impl PropertySpec {
    /// Every built-in property over the states of `universe`.
    pub fn all_for(universe: &Universe) -> Vec<PropertySpec> {
        let mut out = Vec::new();
        for s in universe.states() {
            out.push(PropertySpec::Reachable(s.clone()));
            out.push(PropertySpec::Unreachable(s.clone()));
        }
        out.push(PropertySpec::AllStatesReachable);
        out
    }

    fn check_states(&self, universe: &Universe) -> Result<Option<usize>, SemanticsError> {
        match self {
            PropertySpec::Reachable(q) | PropertySpec::Unreachable(q) => universe
                .state_index(q)
                .map(Some)
                .ok_or_else(|| SemanticsError::UnknownState(q.clone())),
            PropertySpec::AllStatesReachable => Ok(None),
        }
    }
}

impl fmt::Display for PropertySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PropertySpec::Reachable(q) => write!(f, "reachable:{q}"),
            PropertySpec::Unreachable(q) => write!(f, "unreachable:{q}"),
            PropertySpec::AllStatesReachable => f.write_str("all-reachable"),
        }
    }
}

impl FromStr for PropertySpec {
    type Err = SemanticsError;

    /// `reachable:<state>`, `unreachable:<state>` or `all-reachable`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once(':') {
            Some(("reachable", q)) if !q.is_empty() => Ok(PropertySpec::Reachable(q.to_string())),
            Some(("unreachable", q)) if !q.is_empty() => Ok(PropertySpec::Unreachable(q.to_string())),
            None if s == "all-reachable" => Ok(PropertySpec::AllStatesReachable),
            _ => Err(SemanticsError::UnknownProperty(s.to_string())),
        }
    }
}

pub fn eval_property(machine: &Machine, phi: &PropertySpec) -> Result<bool, SemanticsError> {
    let target = phi.check_states(machine.universe())?;
    let reach = machine.reachable();
    Ok(match (phi, target) {
        (PropertySpec::Reachable(_), Some(q)) => reach[q],
        (PropertySpec::Unreachable(_), Some(q)) => !reach[q],
        _ => reach.iter().all(|r| *r),
    })
}

/// `phi` holds for every machine in `set`; vacuously true when empty.
pub fn holds_universally(set: &SemSet, phi: &PropertySpec) -> Result<bool, SemanticsError> {
    phi.check_states(set.universe())?;
    for m in set.machines() {
        if !eval_property(&m, phi)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// First machine of `set` violating `phi`, if any.
pub fn first_violation(set: &SemSet, phi: &PropertySpec) -> Result<Option<Machine>, SemanticsError> {
    phi.check_states(set.universe())?;
    for m in set.machines() {
        if !eval_property(&m, phi)? {
            return Ok(Some(m));
        }
    }
    Ok(None)
}
