//! Abbreviations: syntax removed by the reducing transformation.

use super::refinement::model_text;
use super::report::{CheckReport, Counterexample, Stats, Verdict};
use super::CheckError;
use crate::syntax::{flatten, is_reduced, pretty_print, Ast, FlatAst};
use crate::variability::LanguageVariant;

/// Checks the three abbreviation laws for the transformations of `base`
/// and `variant`:
///
/// * identity: `t(m) = m` for every reduced model, here `flat_models` and
///   the reductions of the corpus;
/// * agreement: `t_v(m) = t(m)` wherever both are defined, corpus charts
///   outside the domain of `t` being counted as skipped;
/// * existence: every `t_v(m1)` equals `t(m2)` for `m2 := t_v(m1)`.
pub fn check_abbreviation(
    base: &LanguageVariant,
    variant: &LanguageVariant,
    corpus: &[Ast],
    flat_models: &[FlatAst],
) -> Result<CheckReport, CheckError> {
    if !variant.differs_only_in_hierarchy(base) {
        return Err(CheckError::IncompatibleVariants(
            "abbreviation check compares variants that differ only in hierarchy support".into(),
        ));
    }
    let condition = "abbreviation";
    let scope = format!("corpus of {} charts and {} flat charts", corpus.len(), flat_models.len());
    let mut stats = Stats::default();
    let ast_failure = |ast: &Ast, reason: String| Counterexample {
        text: pretty_print(ast, variant).body,
        model: None,
        witness: None,
        reason,
    };

    for m in flat_models {
        stats.models_checked += 1;
        if flatten(&m.to_ast(), base).as_ref() != Ok(m) {
            let cex = Counterexample {
                text: model_text(m, base),
                model: Some(m.clone()),
                witness: None,
                reason: "the transformation is not the identity on this reduced chart".into(),
            };
            return Ok(CheckReport::failed(condition, scope, stats, cex));
        }
    }

    for ast in corpus {
        stats.models_checked += 1;
        let tv = flatten(ast, variant).ok();
        let t = flatten(ast, base).ok();
        match (&tv, &t) {
            (Some(a), Some(b)) if a != b => {
                let cex = ast_failure(ast, "the two transformations disagree".into());
                return Ok(CheckReport::failed(condition, scope, stats, cex));
            }
            (Some(_), Some(_)) => {}
            _ => stats.skipped += 1,
        }
        if let Some(m1) = tv {
            let m2 = m1.to_ast();
            let ok = is_reduced(&m2) && flatten(&m2, base).as_ref() == Ok(&m1) && flatten(&m2, variant).as_ref() == Ok(&m1);
            if !ok {
                let cex = ast_failure(ast, "the reduced form is not reproduced by the base transformation".into());
                return Ok(CheckReport::failed(condition, scope, stats, cex));
            }
        }
    }
    Ok(CheckReport::passed(condition, Verdict::Holds, scope, stats).with_note(
        "existence is discharged by m2 = t_v(m1), since t is the identity on reduced charts",
    ))
}
