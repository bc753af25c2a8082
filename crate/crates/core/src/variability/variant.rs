//! A resolved language variant: one choice at every variation point.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::filters::ConstraintSpec;
use crate::semantics::{DomainVariant, Mapping};
use crate::syntax::GuardLanguage;

/// Alternative notations that map to the same abstract syntax.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PresentationOption {
    /// `=>` accepted as an alternative to `->`.
    FatArrow,
    /// `*state A` accepted in place of `initial A;`.
    InitialStar,
}

impl PresentationOption {
    pub const ALL: [PresentationOption; 2] = [PresentationOption::FatArrow, PresentationOption::InitialStar];

    pub fn id(self) -> &'static str {
        match self {
            PresentationOption::FatArrow => "FatArrow",
            PresentationOption::InitialStar => "InitialStar",
        }
    }
}

/// Stereotype whitelist. A key mapped to `None` admits any value (or none);
/// `Some(values)` pins the admissible values.
pub type AllowedStereotypes = BTreeMap<String, Option<BTreeSet<String>>>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LanguageVariant {
    pub presentation: BTreeSet<PresentationOption>,
    pub hierarchy_enabled: bool,
    pub allowed_stereotypes: AllowedStereotypes,
    pub guard_language: GuardLanguage,
    pub constraints: BTreeSet<ConstraintSpec>,
    pub mapping: Mapping,
    pub domain: DomainVariant,
}

impl Default for LanguageVariant {
    fn default() -> Self {
        Self::base()
    }
}

impl LanguageVariant {
    /// No presentation options, flat charts only, no stereotypes,
    /// propositional guards, no constraints, chaos completion over the
    /// model's own states.
    pub fn base() -> Self {
        LanguageVariant {
            presentation: BTreeSet::new(),
            hierarchy_enabled: false,
            allowed_stereotypes: BTreeMap::new(),
            guard_language: GuardLanguage::Propositional,
            constraints: BTreeSet::new(),
            mapping: Mapping::Chaos,
            domain: DomainVariant::StatesEqualSyntactic,
        }
    }

    pub fn with_presentation(mut self, opts: impl IntoIterator<Item = PresentationOption>) -> Self {
        self.presentation.extend(opts);
        self
    }

    pub fn with_hierarchy(mut self, enabled: bool) -> Self {
        self.hierarchy_enabled = enabled;
        self
    }

    pub fn with_guard_language(mut self, language: GuardLanguage) -> Self {
        self.guard_language = language;
        self
    }

    pub fn with_constraint(mut self, c: ConstraintSpec) -> Self {
        self.constraints.insert(c);
        self
    }

    pub fn with_mapping(mut self, mapping: Mapping) -> Self {
        self.mapping = mapping;
        self
    }

    pub fn with_domain(mut self, domain: DomainVariant) -> Self {
        self.domain = domain;
        self
    }

    pub fn allow_stereotype(mut self, key: &str, values: Option<&[&str]>) -> Self {
        self.allowed_stereotypes.insert(
            key.to_string(),
            values.map(|vs| vs.iter().map(|v| v.to_string()).collect()),
        );
        self
    }

    pub fn has(&self, opt: PresentationOption) -> bool {
        self.presentation.contains(&opt)
    }

    /// True if `self` and `other` agree on every syntactic field, so both
    /// semantics are defined on the same set of models.
    pub fn same_syntax(&self, other: &LanguageVariant) -> bool {
        self.presentation == other.presentation
            && self.hierarchy_enabled == other.hierarchy_enabled
            && self.allowed_stereotypes == other.allowed_stereotypes
            && self.guard_language == other.guard_language
            && self.constraints == other.constraints
    }

    /// True if the variants differ at most in their presentation options.
    pub fn differs_only_in_presentation(&self, other: &LanguageVariant) -> bool {
        let mut a = self.clone();
        a.presentation = other.presentation.clone();
        a == *other
    }

    /// True if the variants differ at most in hierarchy support.
    pub fn differs_only_in_hierarchy(&self, other: &LanguageVariant) -> bool {
        let mut a = self.clone();
        a.hierarchy_enabled = other.hierarchy_enabled;
        a == *other
    }

    /// True if `self` equals `base` except for added constraints or a
    /// narrower guard language.
    pub fn restricts(&self, base: &LanguageVariant) -> bool {
        let mut a = self.clone();
        a.constraints = base.constraints.clone();
        a.guard_language = base.guard_language;
        a == *base
            && base.constraints.is_subset(&self.constraints)
            && (self.guard_language == base.guard_language || self.guard_language == GuardLanguage::Literal)
    }
}

impl fmt::Display for LanguageVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let po: Vec<&str> = self.presentation.iter().map(|p| p.id()).collect();
        let cs: Vec<String> = self.constraints.iter().map(|c| c.to_string()).collect();
        write!(
            f,
            "presentation=[{}] hierarchy={} guards={} constraints=[{}] mapping={} domain={}",
            po.join(","),
            self.hierarchy_enabled,
            self.guard_language.id(),
            cs.join(","),
            self.mapping.id(),
            self.domain.id()
        )
    }
}
