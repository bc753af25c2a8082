//! The semantic domain of total deterministic machines and the set-valued
//! semantic mappings into it.

mod canonical;
mod domain;
mod machine;
mod mapping;
mod ops;
mod property;

pub use canonical::{canonicalize, CanonicalSet};
pub use domain::{enumerate_domain, DomainVariant, DEFAULT_CAP};
pub use machine::{Machine, StateId, Universe};
pub use mapping::{admits, resolve_mapping, semantics_of, Mapping, Provenance, SemSet, COMPLETION_KEY};
pub use ops::{integrated_semantics, is_model_refinement};
pub use property::{eval_property, first_violation, holds_universally, PropertySpec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SemanticsError {
    #[error("domain too large: {} machines exceed the cap of {cap}", .size.map(|s| s.to_string()).unwrap_or_else(|| "more than 2^64".into()))]
    DomainTooLarge { size: Option<u64>, cap: u64 },
    #[error("semantic sets range over different universes")]
    IncomparableUniverses,
    #[error("nothing to compose")]
    EmptyComposition,
    #[error("model carries conflicting completion stereotypes")]
    ConflictingStereotype,
    #[error("unknown completion `{0}`")]
    UnknownCompletion(String),
    #[error("unknown domain variant `{0}`")]
    UnknownDomainVariant(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown property `{0}`")]
    UnknownProperty(String),
}
