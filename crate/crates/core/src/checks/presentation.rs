//! Presentation options: alternative notations for the same abstract syntax.

use super::report::{CheckReport, Counterexample, Stats, Verdict};
use super::CheckError;
use crate::syntax::{check_wellformed, parse, pretty_print, Ast, ConcreteModel, ParseErrors};
use crate::variability::LanguageVariant;

/// A parser together with its pretty-printer.
pub trait Frontend {
    fn parse(&self, model: &ConcreteModel, v: &LanguageVariant) -> Result<Ast, ParseErrors>;
    fn print(&self, ast: &Ast, v: &LanguageVariant) -> ConcreteModel;
}

/// The library's own parser and printer.
#[derive(Debug, Clone, Copy, Default)]
pub struct StandardFrontend;

impl Frontend for StandardFrontend {
    fn parse(&self, model: &ConcreteModel, v: &LanguageVariant) -> Result<Ast, ParseErrors> {
        parse(model, v)
    }

    fn print(&self, ast: &Ast, v: &LanguageVariant) -> ConcreteModel {
        pretty_print(ast, v)
    }
}

/// Parses and keeps only well-formed results: the domain of `p`.
fn parse_wf(fe: &dyn Frontend, m: &ConcreteModel, v: &LanguageVariant) -> Option<Ast> {
    fe.parse(m, v).ok().filter(|a| check_wellformed(a).is_ok())
}

pub fn check_presentation_option(
    base: &LanguageVariant,
    variant: &LanguageVariant,
    corpus: &[ConcreteModel],
) -> Result<CheckReport, CheckError> {
    check_presentation_option_with(base, variant, corpus, &StandardFrontend, &StandardFrontend)
}

/// Checks, over `corpus`, that texts in both languages parse identically
/// and that every variant text has a base text with the same abstract
/// syntax. The base printer supplies that text.
pub fn check_presentation_option_with(
    base: &LanguageVariant,
    variant: &LanguageVariant,
    corpus: &[ConcreteModel],
    base_fe: &dyn Frontend,
    variant_fe: &dyn Frontend,
) -> Result<CheckReport, CheckError> {
    if !variant.differs_only_in_presentation(base) {
        return Err(CheckError::IncompatibleVariants(
            "presentation check compares variants that differ only in presentation options".into(),
        ));
    }
    let condition = "presentation-option";
    let scope = format!("corpus of {} texts", corpus.len());
    let mut stats = Stats::default();
    let mut shared = 0;
    let mut variant_only = 0;
    for text in corpus {
        stats.models_checked += 1;
        let p = parse_wf(base_fe, text, base);
        let pv = parse_wf(variant_fe, text, variant);
        let fail = |reason: String| Counterexample {
            text: text.body.clone(),
            model: None,
            witness: None,
            reason,
        };
        match (p, pv) {
            (Some(a), Some(b)) => {
                shared += 1;
                if a != b {
                    let cex = fail(format!("`{}` parses differently under the two variants", text.source_name));
                    return Ok(CheckReport::failed(condition, scope, stats, cex));
                }
            }
            (None, Some(b)) => {
                variant_only += 1;
                let m2 = base_fe.print(&b, base);
                match parse_wf(base_fe, &m2, base) {
                    Some(a) if a == b => {}
                    _ => {
                        let cex = fail(format!(
                            "no base text found for `{}`: the base printout does not parse back to the same syntax",
                            text.source_name
                        ));
                        return Ok(CheckReport::failed(condition, scope, stats, cex));
                    }
                }
            }
            (_, None) => stats.skipped += 1,
        }
    }
    Ok(CheckReport::passed(condition, Verdict::Holds, scope, stats)
        .with_note(format!("{shared} texts in both languages, {variant_only} only in the variant")))
}
