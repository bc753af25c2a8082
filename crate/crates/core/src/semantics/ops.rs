//! Composition and refinement of model semantics.

use super::mapping::{Provenance, SemSet};
use super::SemanticsError;

fn same_universe(a: &SemSet, b: &SemSet) -> Result<(), SemanticsError> {
    if a.universe() == b.universe() {
        Ok(())
    } else {
        Err(SemanticsError::IncomparableUniverses)
    }
}

/// Intersection of the semantics of several models: the systems that
/// realize all of them at once.
pub fn integrated_semantics(sets: &[SemSet]) -> Result<SemSet, SemanticsError> {
    let (first, rest) = sets.split_first().ok_or(SemanticsError::EmptyComposition)?;
    let mut deltas = first.deltas().clone();
    let mut mapping = first.provenance().mapping;
    let mut domain = first.provenance().domain;
    for s in rest {
        same_universe(first, s)?;
        deltas.retain(|d| s.deltas().contains(d));
        if mapping != s.provenance().mapping {
            mapping = None;
        }
        if domain != s.provenance().domain {
            domain = None;
        }
    }
    let provenance = Provenance {
        mapping,
        domain,
        universe: first.universe().clone(),
    };
    Ok(SemSet::from_deltas(provenance, deltas))
}

/// `refined` refines `original` iff every realization of the former
/// realizes the latter.
pub fn is_model_refinement(refined: &SemSet, original: &SemSet) -> Result<bool, SemanticsError> {
    same_universe(refined, original)?;
    Ok(refined.deltas().is_subset(original.deltas()))
}
