//! Mechanical checks of variability conditions over bounded scopes.

mod abbreviation;
mod expressiveness;
mod presentation;
mod refinement;
mod report;
mod scope;

pub use abbreviation::check_abbreviation;
pub use expressiveness::{canonical_semantics, check_expressiveness, Direction};
pub use presentation::{check_presentation_option, check_presentation_option_with, Frontend, StandardFrontend};
pub use refinement::{check_property_preservation, check_property_preservation_over, check_semantic_refinement};
pub use report::{CheckReport, Counterexample, Stats, Verdict};
pub use scope::{enumerate_models, state_names, Scope, ScopeSource};

use crate::semantics::SemanticsError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CheckError {
    #[error("scope too large: {} candidate models exceed the cap of {cap}", .size.map(|s| s.to_string()).unwrap_or_else(|| "more than 2^64".into()))]
    ScopeTooLarge { size: Option<u64>, cap: u64 },
    #[error("invalid scope: {0}")]
    InvalidScope(String),
    #[error("incompatible variants: {0}")]
    IncompatibleVariants(String),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
}

impl CheckError {
    /// True for errors caused by an enumeration cap.
    pub fn is_cap_exceeded(&self) -> bool {
        matches!(
            self,
            CheckError::ScopeTooLarge { .. } | CheckError::Semantics(SemanticsError::DomainTooLarge { .. })
        )
    }
}
