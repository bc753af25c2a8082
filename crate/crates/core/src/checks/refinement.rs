//! Semantic language refinement and its property-preservation corollary.

use super::report::{CheckReport, Counterexample, Stats, Verdict};
use super::scope::{enumerate_models, Scope};
use super::CheckError;
use crate::semantics::{
    admits, enumerate_domain, first_violation, holds_universally, is_model_refinement, resolve_mapping, semantics_of,
    DomainVariant, Machine, PropertySpec, Universe,
};
use crate::syntax::{pretty_print, FlatAst};
use crate::variability::LanguageVariant;

pub(crate) fn model_text(m: &FlatAst, v: &LanguageVariant) -> String {
    pretty_print(&m.to_ast(), v).body
}

fn require_same_syntax(v1: &LanguageVariant, v2: &LanguageVariant) -> Result<(), CheckError> {
    if v1.same_syntax(v2) {
        Ok(())
    } else {
        Err(CheckError::IncompatibleVariants(
            "refinement compares variants that differ only in mapping and domain".into(),
        ))
    }
}

/// The machine of `extra` closest to `base`: fewest differing triples,
/// then the earliest differing triple, then the lexicographically smallest.
fn nearest_witness<'a>(extra: &'a [Machine], base: &[Machine]) -> &'a Machine {
    let key = |m: &Machine| -> (usize, usize) {
        base.iter()
            .map(|b| {
                let diff: Vec<usize> = (0..m.delta().len()).filter(|&i| m.delta()[i] != b.delta()[i]).collect();
                (diff.len(), diff.first().copied().unwrap_or(0))
            })
            .min()
            .unwrap_or((0, 0))
    };
    extra
        .iter()
        .min_by(|a, b| key(a).cmp(&key(b)).then_with(|| a.delta().cmp(b.delta())))
        .expect("nonempty witness set")
}

/// `sem_v1(m) ⊇ sem_v2(m)` for every model of the scope.
///
/// Each model's whole semantic domain is swept and every machine tested
/// against both mappings; the statistics count these membership tests.
/// A failure reports the first model in enumeration order together with
/// the member of `sem_v2(m) \ sem_v1(m)` nearest to `sem_v1(m)`.
pub fn check_semantic_refinement(v1: &LanguageVariant, v2: &LanguageVariant, scope: &Scope) -> Result<CheckReport, CheckError> {
    require_same_syntax(v1, v2)?;
    let models = enumerate_models(scope, v1)?;
    let mut stats = Stats::default();
    let condition = "semantic-refinement";
    for m in &models {
        let (map1, map2) = (resolve_mapping(m, v1)?, resolve_mapping(m, v2)?);
        let universe = Universe::of(m);
        let table = m.table();
        let domain = enumerate_domain(&universe, DomainVariant::StatesEqualSyntactic, scope.cap)?;
        stats.models_checked += 1;
        stats.machines_checked += domain.len() as u64;
        let mut in_v1 = Vec::new();
        let mut extra = Vec::new();
        for s in domain {
            let a1 = admits(&table, map1, v1.domain, &s);
            let a2 = admits(&table, map2, v2.domain, &s);
            if a2 && !a1 {
                extra.push(s);
            } else if a1 {
                in_v1.push(s);
            }
        }
        if !extra.is_empty() {
            let witness = nearest_witness(&extra, &in_v1).clone();
            let cex = Counterexample {
                text: model_text(m, v1),
                model: Some(m.clone()),
                reason: format!(
                    "{} realizations under {}/{} are not realizations under {}/{}",
                    extra.len(),
                    map2,
                    v2.domain,
                    map1,
                    v1.domain
                ),
                witness: Some(witness),
            };
            return Ok(CheckReport::failed(condition, scope.to_string(), stats, cex));
        }
    }
    Ok(CheckReport::passed(condition, Verdict::Holds, scope.to_string(), stats))
}

/// `(∀s ∈ sem_v1(m): φ(s)) ⟹ (∀s ∈ sem_v2(m): φ(s))` for one model.
pub fn check_property_preservation(
    m: &FlatAst,
    v1: &LanguageVariant,
    v2: &LanguageVariant,
    phi: &PropertySpec,
    cap: u64,
) -> Result<CheckReport, CheckError> {
    require_same_syntax(v1, v2)?;
    let s1 = semantics_of(m, resolve_mapping(m, v1)?, v1.domain, cap)?;
    let s2 = semantics_of(m, resolve_mapping(m, v2)?, v2.domain, cap)?;
    let antecedent = holds_universally(&s1, phi)?;
    let consequent = holds_universally(&s2, phi)?;
    let refines = is_model_refinement(&s2, &s1)?;
    let stats = Stats {
        models_checked: 1,
        machines_checked: (s1.len() + s2.len()) as u64,
        skipped: 0,
    };
    let condition = format!("property-preservation[{phi}]");
    let scope = format!("model {}", m.name());
    if antecedent && !consequent {
        let witness = first_violation(&s2, phi)?;
        let mut reason = format!("{phi} holds for every realization under v1 but not under v2");
        if refines {
            reason.push_str("; inconsistent with refinement holding for this model");
        }
        let cex = Counterexample {
            text: model_text(m, v1),
            model: Some(m.clone()),
            witness,
            reason,
        };
        return Ok(CheckReport::failed(condition, scope, stats, cex));
    }
    let mut report = CheckReport::passed(condition, Verdict::Holds, scope, stats);
    if !antecedent {
        report = report.with_note(format!("{phi} fails under v1; the implication holds vacuously"));
    }
    if refines {
        report = report.with_note("refinement holds for this model");
    }
    Ok(report)
}

/// Property preservation over every model of a scope; the first failing
/// model is reported.
pub fn check_property_preservation_over(
    v1: &LanguageVariant,
    v2: &LanguageVariant,
    scope: &Scope,
    phi: &PropertySpec,
) -> Result<CheckReport, CheckError> {
    require_same_syntax(v1, v2)?;
    let models = enumerate_models(scope, v1)?;
    let mut stats = Stats::default();
    let condition = format!("property-preservation[{phi}]");
    for m in &models {
        let r = check_property_preservation(m, v1, v2, phi, scope.cap)?;
        stats.models_checked += 1;
        stats.machines_checked += r.stats().machines_checked;
        if let Some(cex) = r.counterexample() {
            return Ok(CheckReport::failed(condition, scope.to_string(), stats, cex.clone()));
        }
    }
    Ok(CheckReport::passed(condition, Verdict::Holds, scope.to_string(), stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::{Mapping, DEFAULT_CAP};
    use crate::syntax::{flatten, parse, ConcreteModel, Signature};

    fn scope81() -> Scope {
        Scope::exactly(Signature::new(["a", "b"], Vec::<String>::new()).unwrap(), 2)
    }

    fn chaos() -> LanguageVariant {
        LanguageVariant::base()
    }

    fn ignore() -> LanguageVariant {
        LanguageVariant::base().with_mapping(Mapping::Ignore)
    }

    fn flat(src: &str) -> FlatAst {
        let v = LanguageVariant::base();
        flatten(&parse(&ConcreteModel::new("t.sc", src), &v).unwrap(), &v).unwrap()
    }

    const M1: &str = "statechart M1 { events a b; initial A; state A { on a -> B; } state B; }";

    #[test]
    fn chaos_refined_by_ignore() {
        let r = check_semantic_refinement(&chaos(), &ignore(), &scope81()).unwrap();
        assert_eq!(r.verdict(), Verdict::Holds);
        assert_eq!(r.stats().models_checked, 81);
        assert_eq!(r.stats().machines_checked, 1296);
    }

    #[test]
    fn ignore_not_refined_by_chaos() {
        let r = check_semantic_refinement(&ignore(), &chaos(), &scope81()).unwrap();
        assert_eq!(r.verdict(), Verdict::Fails);
        let cex = r.counterexample().unwrap();
        // the chart without transitions is first in enumeration order
        assert!(cex.model.as_ref().unwrap().transitions().is_empty());
        assert!(cex.witness.is_some());
    }

    #[test]
    fn m1_witness() {
        let r = check_semantic_refinement(&ignore(), &chaos(), &Scope::corpus(vec![flat(M1)])).unwrap();
        assert_eq!(r.verdict(), Verdict::Fails);
        let w = r.counterexample().unwrap().witness.clone().unwrap();
        assert_eq!(w.step_named("A", "b", 0), Some("B"));
        assert_eq!(w.step_named("A", "a", 0), Some("B"));
    }

    #[test]
    fn reflexive_and_domain_aware() {
        for v in [chaos(), ignore(), chaos().with_domain(DomainVariant::AllStatesReachable)] {
            assert!(check_semantic_refinement(&v, &v, &scope81()).unwrap().holds());
        }
        let reach = chaos().with_domain(DomainVariant::AllStatesReachable);
        assert!(check_semantic_refinement(&chaos(), &reach, &scope81()).unwrap().holds());
        assert!(!check_semantic_refinement(&reach, &chaos(), &scope81()).unwrap().holds());
    }

    #[test]
    fn syntax_must_agree() {
        let h = chaos().with_hierarchy(true);
        assert!(matches!(
            check_semantic_refinement(&chaos(), &h, &scope81()),
            Err(CheckError::IncompatibleVariants(_))
        ));
    }

    #[test]
    fn stereotype_overrides_per_model() {
        let v = chaos().allow_stereotype("completion", Some(&["chaos", "ignore"]));
        let pinned = flat(M1).with_stereotypes([crate::syntax::Stereotype::new("completion", Some("ignore"))].into());
        let r = check_semantic_refinement(&v.clone().with_mapping(Mapping::Ignore), &v, &Scope::corpus(vec![pinned])).unwrap();
        assert!(r.holds());
    }

    #[test]
    fn preservation_examples() {
        let m1 = flat(M1);
        let reach_b = PropertySpec::Reachable("B".into());
        let r = check_property_preservation(&m1, &chaos(), &ignore(), &reach_b, DEFAULT_CAP).unwrap();
        assert_eq!(r.verdict(), Verdict::Holds);
        assert!(r.notes().iter().all(|n| !n.contains("vacuous")));
        let r = check_property_preservation(&m1, &chaos(), &ignore(), &PropertySpec::Unreachable("B".into()), DEFAULT_CAP).unwrap();
        assert_eq!(r.verdict(), Verdict::Holds);
        assert!(r.notes().iter().any(|n| n.contains("vacuous")));
        let m2 = flat("statechart M2 { events a b; initial A; state A { on a -> B; on b -> A; } state B { on a -> A; on b -> B; } }");
        for phi in crate::semantics::PropertySpec::all_for(&Universe::of(&m2)) {
            assert!(check_property_preservation(&m2, &ignore(), &chaos(), &phi, DEFAULT_CAP).unwrap().holds());
        }
    }

    #[test]
    fn preservation_can_fail_without_refinement() {
        // every chaos realization of M1 reaches B, not so for the empty chart
        let empty = flat("statechart E { events a b; initial A; state A; state B; }");
        let phi = PropertySpec::Unreachable("B".into());
        let r = check_property_preservation(&empty, &ignore(), &chaos(), &phi, DEFAULT_CAP).unwrap();
        assert_eq!(r.verdict(), Verdict::Fails);
        let w = r.counterexample().unwrap().witness.clone().unwrap();
        assert!(w.reachable()[1]);
        let over = check_property_preservation_over(&ignore(), &chaos(), &scope81(), &phi).unwrap();
        assert_eq!(over.verdict(), Verdict::Fails);
        assert!(check_property_preservation_over(&chaos(), &ignore(), &scope81(), &phi).unwrap().holds());
    }
}
