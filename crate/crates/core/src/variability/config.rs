//! Configurations of a feature model and their interpretation as a
//! language variant.

use std::collections::BTreeSet;
use std::fmt;

use super::feature_model::{FeatureModel, GroupKind};
use super::filters::ConstraintSpec;
use super::variant::{LanguageVariant, PresentationOption};
use crate::semantics::{DomainVariant, Mapping, COMPLETION_KEY};
use crate::syntax::GuardLanguage;

/// A set of selected feature names.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Configuration {
    pub selected: BTreeSet<String>,
}

impl Configuration {
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Configuration {
            selected: names.into_iter().map(Into::into).collect(),
        }
    }

    /// One feature name per line; `#` starts a comment.
    pub fn parse(text: &str) -> Configuration {
        Configuration::new(
            text.lines()
                .map(|l| l.split('#').next().unwrap_or("").trim())
                .filter(|l| !l.is_empty()),
        )
    }

    pub fn is_selected(&self, name: &str) -> bool {
        self.selected.contains(name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    RootNotSelected(String),
    UnknownFeature(String),
    ParentNotSelected { feature: String, parent: String },
    MandatoryNotSelected { feature: String, parent: String },
    AlternativeCardinality { parent: String, selected: Vec<String> },
    OrEmpty { parent: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::RootNotSelected(r) => write!(f, "root feature `{r}` is not selected"),
            Violation::UnknownFeature(n) => write!(f, "unknown feature `{n}`"),
            Violation::ParentNotSelected { feature, parent } => {
                write!(f, "`{feature}` is selected but its parent `{parent}` is not")
            }
            Violation::MandatoryNotSelected { feature, parent } => {
                write!(f, "mandatory feature `{feature}` of `{parent}` is not selected")
            }
            Violation::AlternativeCardinality { parent, selected } => write!(
                f,
                "alternative group under `{parent}` needs exactly one selection, got {}",
                if selected.is_empty() { "none".to_string() } else { selected.join(", ") }
            ),
            Violation::OrEmpty { parent } => write!(f, "or group under `{parent}` needs at least one selection"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violations(pub Vec<Violation>);

impl fmt::Display for Violations {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lines: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        f.write_str(&lines.join("\n"))
    }
}

impl std::error::Error for Violations {}

pub fn validate_configuration(fm: &FeatureModel, cfg: &Configuration) -> Result<(), Violations> {
    let mut out = Vec::new();
    let root = fm.feature(fm.root());
    if !cfg.is_selected(&root.name) {
        out.push(Violation::RootNotSelected(root.name.clone()));
    }
    for n in &cfg.selected {
        if !fm.contains(n) {
            out.push(Violation::UnknownFeature(n.clone()));
        }
    }
    for feat in fm.features() {
        let on = cfg.is_selected(&feat.name);
        if let Some(p) = feat.parent {
            let parent = &fm.feature(p).name;
            if on && !cfg.is_selected(parent) {
                out.push(Violation::ParentNotSelected {
                    feature: feat.name.clone(),
                    parent: parent.clone(),
                });
            }
        }
        if !on {
            continue;
        }
        for g in &feat.groups {
            let chosen: Vec<String> = g
                .members
                .iter()
                .map(|&m| fm.feature(m).name.clone())
                .filter(|n| cfg.is_selected(n))
                .collect();
            match g.kind {
                GroupKind::Mandatory if chosen.is_empty() => out.push(Violation::MandatoryNotSelected {
                    feature: fm.feature(g.members[0]).name.clone(),
                    parent: feat.name.clone(),
                }),
                GroupKind::Alternative if chosen.len() != 1 => out.push(Violation::AlternativeCardinality {
                    parent: feat.name.clone(),
                    selected: chosen,
                }),
                GroupKind::Or if chosen.is_empty() => out.push(Violation::OrEmpty {
                    parent: feat.name.clone(),
                }),
                _ => {}
            }
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(Violations(out))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BuildError {
    #[error("invalid configuration:\n{0}")]
    Invalid(Violations),
    #[error("selected leaf feature `{0}` has no interpretation")]
    UnknownLeaf(String),
}

/// Interprets one selected leaf feature.
fn apply_leaf(v: &mut LanguageVariant, leaf: &str) -> Result<(), BuildError> {
    match leaf {
        "FatArrow" => {
            v.presentation.insert(PresentationOption::FatArrow);
        }
        "InitialStar" => {
            v.presentation.insert(PresentationOption::InitialStar);
        }
        "Hierarchy" => v.hierarchy_enabled = true,
        "CompletionStereotype" => {
            let values = Mapping::ALL.iter().map(|m| m.id().to_string()).collect();
            v.allowed_stereotypes.insert(COMPLETION_KEY.to_string(), Some(values));
        }
        "PriorityStereotype" => {
            v.allowed_stereotypes.insert("priority".to_string(), None);
        }
        "GuardLiteral" => v.guard_language = GuardLanguage::Literal,
        "GuardProp" => v.guard_language = GuardLanguage::Propositional,
        "Chaos" => v.mapping = Mapping::Chaos,
        "Ignore" => v.mapping = Mapping::Ignore,
        other => {
            if let Ok(d) = other.parse::<DomainVariant>() {
                v.domain = d;
            } else if let Ok(c) = ConstraintSpec::from_id(other) {
                v.constraints.insert(c);
            } else {
                return Err(BuildError::UnknownLeaf(other.to_string()));
            }
        }
    }
    Ok(())
}

/// The variant a valid configuration denotes. Non-leaf features carry no
/// meaning of their own, every selected leaf must be interpretable.
pub fn build_variant(fm: &FeatureModel, cfg: &Configuration) -> Result<LanguageVariant, BuildError> {
    validate_configuration(fm, cfg).map_err(BuildError::Invalid)?;
    let mut v = LanguageVariant::base();
    for feat in fm.features() {
        if feat.is_leaf() && cfg.is_selected(&feat.name) {
            apply_leaf(&mut v, &feat.name)?;
        }
    }
    Ok(v)
}

pub const CHAOS_CFG: &str = include_str!("../../data/chaos.cfg");
pub const IGNORE_CFG: &str = include_str!("../../data/ignore.cfg");
