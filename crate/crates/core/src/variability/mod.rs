//! Feature models, configurations, resolved language variants and the
//! syntactic filters they induce.

mod config;
mod feature_model;
mod filters;
mod variant;

pub use config::{build_variant, validate_configuration, BuildError, Configuration, Violation, Violations, CHAOS_CFG, IGNORE_CFG};
pub use feature_model::{
    default_feature_model, parse_feature_model, Feature, FeatureId, FeatureModel, FeatureModelError, Group, GroupKind,
    DEFAULT_FEATURE_MODEL,
};
pub use filters::{check_constraint, check_stereotypes, ConstraintSpec, UnknownConstraint};
pub use variant::{AllowedStereotypes, LanguageVariant, PresentationOption};
