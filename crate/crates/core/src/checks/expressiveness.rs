//! Whether constraining a language loses expressiveness.

use std::collections::BTreeMap;

use super::refinement::model_text;
use super::report::{CheckReport, Counterexample, Stats, Verdict};
use super::scope::{enumerate_models, Scope};
use super::CheckError;
use crate::semantics::{resolve_mapping, semantics_of, CanonicalSet};
use crate::syntax::FlatAst;
use crate::variability::LanguageVariant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// Every constrained model has a semantically equal base model.
    AsWritten,
    /// Every base model has a semantically equal constrained model.
    Converse,
}

impl Direction {
    pub fn id(self) -> &'static str {
        match self {
            Direction::AsWritten => "as-written",
            Direction::Converse => "converse",
        }
    }
}

/// Canonical semantics of `m` under `v`, plus the number of machines.
pub fn canonical_semantics(m: &FlatAst, v: &LanguageVariant, cap: u64) -> Result<(CanonicalSet, usize), CheckError> {
    let set = semantics_of(m, resolve_mapping(m, v)?, v.domain, cap)?;
    Ok((CanonicalSet::of(&set), set.len()))
}

/// Compares `constrained` to `base` over one scope, semantic equality
/// being equality of canonicalized machine sets. Models of the searched
/// side are indexed by their canonical semantics first.
pub fn check_expressiveness(
    base: &LanguageVariant,
    constrained: &LanguageVariant,
    scope: &Scope,
    direction: Direction,
) -> Result<CheckReport, CheckError> {
    if !constrained.restricts(base) {
        return Err(CheckError::IncompatibleVariants(
            "the constrained variant may only add constraints or narrow the guard language".into(),
        ));
    }
    let (from_v, to_v) = match direction {
        Direction::AsWritten => (constrained, base),
        Direction::Converse => (base, constrained),
    };
    let sources = enumerate_models(scope, from_v)?;
    let targets = enumerate_models(scope, to_v)?;
    let mut stats = Stats::default();
    let mut index: BTreeMap<CanonicalSet, usize> = BTreeMap::new();
    for (i, m) in targets.iter().enumerate() {
        let (c, n) = canonical_semantics(m, to_v, scope.cap)?;
        stats.machines_checked += n as u64;
        index.entry(c).or_insert(i);
    }
    let condition = format!("expressiveness[{}]", direction.id());
    for m in &sources {
        stats.models_checked += 1;
        let (c, n) = canonical_semantics(m, from_v, scope.cap)?;
        stats.machines_checked += n as u64;
        if !index.contains_key(&c) {
            let cex = Counterexample {
                text: model_text(m, from_v),
                model: Some(m.clone()),
                witness: None,
                reason: format!(
                    "no model among the {} {} models has the same semantics",
                    targets.len(),
                    match direction {
                        Direction::AsWritten => "base",
                        Direction::Converse => "constrained",
                    }
                ),
            };
            return Ok(CheckReport::failed(condition, scope.to_string(), stats, cex));
        }
    }
    Ok(match direction {
        Direction::AsWritten => CheckReport::passed(condition, Verdict::Holds, scope.to_string(), stats)
            .with_note("trivial: every constrained model is itself a base model, so m2 = m1 always matches"),
        Direction::Converse => CheckReport::passed(condition, Verdict::HoldsUpToBound, scope.to_string(), stats)
            .with_note("only base models inside the scope were examined"),
    })
}
