//! Feature diagrams documenting the variation points of a language.
//!
//! Text format:
//!
//! ```text
//! feature L {
//!   mandatory Syntax { optional Constraints { or { NoGuards MaxStates2 } } }
//!   mandatory Semantics { mandatory Mapping { alternative { Chaos Ignore } } }
//! }
//! ```

use std::collections::BTreeMap;
use std::fmt;

use crate::syntax::lexer::{tokenize, Cursor, Tok};
use crate::syntax::ParseError;

pub type FeatureId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupKind {
    Mandatory,
    Optional,
    /// Exactly one member.
    Alternative,
    /// At least one member.
    Or,
}

impl GroupKind {
    pub fn keyword(self) -> &'static str {
        match self {
            GroupKind::Mandatory => "mandatory",
            GroupKind::Optional => "optional",
            GroupKind::Alternative => "alternative",
            GroupKind::Or => "or",
        }
    }
}

/// Children of one feature under one group kind. Mandatory and optional
/// children each form a singleton group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    pub kind: GroupKind,
    pub members: Vec<FeatureId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Feature {
    pub name: String,
    pub parent: Option<FeatureId>,
    pub groups: Vec<Group>,
}

impl Feature {
    pub fn is_leaf(&self) -> bool {
        self.groups.is_empty()
    }
}

/// A feature tree stored as an arena; feature 0 is the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureModel {
    features: Vec<Feature>,
    by_name: BTreeMap<String, FeatureId>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FeatureModelError {
    #[error("{0}")]
    Parse(ParseError),
    #[error("feature `{0}` declared more than once")]
    DuplicateFeature(String),
    #[error("empty {kind} group under `{parent}`", kind = .kind.keyword())]
    EmptyGroup { parent: String, kind: GroupKind },
}

impl From<ParseError> for FeatureModelError {
    fn from(e: ParseError) -> Self {
        FeatureModelError::Parse(e)
    }
}

impl FeatureModel {
    pub fn root(&self) -> FeatureId {
        0
    }

    pub fn feature(&self, id: FeatureId) -> &Feature {
        &self.features[id]
    }

    pub fn features(&self) -> &[Feature] {
        &self.features
    }

    pub fn id(&self, name: &str) -> Option<FeatureId> {
        self.by_name.get(name).copied()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.by_name.contains_key(name)
    }

    /// Children of `id` with the kind of group they belong to.
    pub fn children(&self, id: FeatureId) -> impl Iterator<Item = (GroupKind, FeatureId)> + '_ {
        self.features[id]
            .groups
            .iter()
            .flat_map(|g| g.members.iter().map(move |&m| (g.kind, m)))
    }

    fn add(&mut self, name: String, parent: Option<FeatureId>) -> Result<FeatureId, FeatureModelError> {
        if self.by_name.contains_key(&name) {
            return Err(FeatureModelError::DuplicateFeature(name));
        }
        let id = self.features.len();
        self.by_name.insert(name.clone(), id);
        self.features.push(Feature {
            name,
            parent,
            groups: Vec::new(),
        });
        Ok(id)
    }
}

impl fmt::Display for FeatureModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn body(fm: &FeatureModel, id: FeatureId, depth: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            let feat = fm.feature(id);
            if feat.is_leaf() {
                return writeln!(f);
            }
            writeln!(f, " {{")?;
            let pad = "  ".repeat(depth + 1);
            for g in &feat.groups {
                match g.kind {
                    GroupKind::Mandatory | GroupKind::Optional => {
                        let m = g.members[0];
                        write!(f, "{pad}{} {}", g.kind.keyword(), fm.feature(m).name)?;
                        body(fm, m, depth + 1, f)?;
                    }
                    GroupKind::Alternative | GroupKind::Or => {
                        writeln!(f, "{pad}{} {{", g.kind.keyword())?;
                        for &m in &g.members {
                            write!(f, "{pad}  {}", fm.feature(m).name)?;
                            body(fm, m, depth + 2, f)?;
                        }
                        writeln!(f, "{pad}}}")?;
                    }
                }
            }
            writeln!(f, "{}}}", "  ".repeat(depth))
        }
        write!(f, "feature {}", self.feature(0).name)?;
        body(self, 0, 0, f)
    }
}

fn name(cur: &mut Cursor) -> Result<String, ParseError> {
    match cur.peek_tok() {
        Tok::Ident(w) if !matches!(w.as_str(), "feature" | "mandatory" | "optional" | "alternative" | "or") => {
            let w = w.clone();
            cur.bump();
            Ok(w)
        }
        _ => Err(cur.error_here("expected a feature name")),
    }
}

fn parse_body(cur: &mut Cursor, fm: &mut FeatureModel, parent: FeatureId) -> Result<(), FeatureModelError> {
    if *cur.peek_tok() != Tok::LBrace {
        return Ok(());
    }
    cur.bump();
    loop {
        let kind = match cur.peek_tok() {
            Tok::RBrace => {
                cur.bump();
                return Ok(());
            }
            Tok::Ident(w) => match w.as_str() {
                "mandatory" => GroupKind::Mandatory,
                "optional" => GroupKind::Optional,
                "alternative" => GroupKind::Alternative,
                "or" => GroupKind::Or,
                _ => return Err(cur.error_here("expected `mandatory`, `optional`, `alternative`, `or` or `}`").into()),
            },
            _ => return Err(cur.error_here("expected a group or `}`").into()),
        };
        cur.bump();
        let mut members = Vec::new();
        match kind {
            GroupKind::Mandatory | GroupKind::Optional => {
                let n = name(cur)?;
                let id = fm.add(n, Some(parent))?;
                parse_body(cur, fm, id)?;
                members.push(id);
            }
            GroupKind::Alternative | GroupKind::Or => {
                cur.expect(Tok::LBrace)?;
                while *cur.peek_tok() != Tok::RBrace {
                    let n = name(cur)?;
                    let id = fm.add(n, Some(parent))?;
                    parse_body(cur, fm, id)?;
                    members.push(id);
                }
                cur.bump();
                if members.is_empty() {
                    return Err(FeatureModelError::EmptyGroup {
                        parent: fm.features[parent].name.clone(),
                        kind,
                    });
                }
            }
        }
        fm.features[parent].groups.push(Group { kind, members });
    }
}

pub fn parse_feature_model(text: &str) -> Result<FeatureModel, FeatureModelError> {
    let mut cur = Cursor::new(tokenize(text)?);
    cur.expect_keyword("feature")?;
    let mut fm = FeatureModel {
        features: Vec::new(),
        by_name: BTreeMap::new(),
    };
    let root_name = name(&mut cur)?;
    let root = fm.add(root_name, None)?;
    parse_body(&mut cur, &mut fm, root)?;
    cur.expect(Tok::Eof)?;
    Ok(fm)
}

/// The shipped feature model for the statechart language family.
pub const DEFAULT_FEATURE_MODEL: &str = include_str!("../../data/default.fm");

pub fn default_feature_model() -> FeatureModel {
    parse_feature_model(DEFAULT_FEATURE_MODEL).expect("shipped feature model parses")
}
