//! Variants of a small statechart language: parsing, flattening,
//! set-valued semantics, feature-model configuration and mechanical
//! checks of variability conditions over bounded model scopes.

pub mod checks;
pub mod semantics;
pub mod syntax;
pub mod variability;

pub use semantics::{DomainVariant, Machine, Mapping, SemSet, SemanticsError, Universe};
pub use syntax::{Ast, ConcreteModel, FlatAst, Guard, GuardLanguage, Signature};
pub use variability::{Configuration, ConstraintSpec, FeatureModel, LanguageVariant, PresentationOption};
pub use checks::{CheckError, CheckReport, Scope, Verdict};
