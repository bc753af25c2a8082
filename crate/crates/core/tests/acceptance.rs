//! Acceptance suite: one line per criterion, with its time bound.
//!
//! A criterion fails if its check fails or it exceeds the bound. The
//! process exits non-zero on any failure not listed in `EXPECTED_FAILURES`.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::*;
use langvar_core::checks::{
    check_abbreviation, check_expressiveness, check_presentation_option, check_property_preservation,
    check_semantic_refinement, enumerate_models, Direction, Scope, Verdict,
};
use langvar_core::semantics::{
    integrated_semantics, is_model_refinement, semantics_of, DomainVariant, Mapping, PropertySpec, Universe, DEFAULT_CAP,
};
use langvar_core::syntax::{flatten, parse, pretty_print, FlatAst};
use langvar_core::variability::{
    default_feature_model, validate_configuration, Configuration, ConstraintSpec, LanguageVariant, Violation, CHAOS_CFG,
    IGNORE_CFG,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

/// Sub-criteria that cannot pass as stated. Their lines still print FAIL.
const EXPECTED_FAILURES: &[&str] = &["2b"];

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn scope81() -> Scope {
    Scope::exactly(sig(&["a", "b"], &[]), 2)
}

fn models81() -> Vec<FlatAst> {
    enumerate_models(&scope81(), &LanguageVariant::base()).unwrap()
}

fn variants() -> Vec<LanguageVariant> {
    let mut out = Vec::new();
    for m in Mapping::ALL {
        for d in DomainVariant::ALL {
            out.push(LanguageVariant::base().with_mapping(m).with_domain(d));
        }
    }
    out
}

fn ignore() -> LanguageVariant {
    LanguageVariant::base().with_mapping(Mapping::Ignore)
}

fn c1_chaos_count_law() -> Outcome {
    let models = models81();
    ensure(models.len() == 81, || format!("{} models", models.len()))?;
    for m in &models {
        let s = semantics_of(m, Mapping::Chaos, DomainVariant::StatesEqualSyntactic, DEFAULT_CAP).map_err(|e| e.to_string())?;
        let u = m.unspecified_count();
        let brute = brute_semantics(m, Mapping::Chaos, DomainVariant::StatesEqualSyntactic);
        let got: BTreeSet<Vec<u16>> = s.machines().map(|x| x.delta().to_vec()).collect();
        ensure(s.len() == 1 << u && brute.len() == 1 << u && got == brute, || {
            format!("u={u}: library {} brute {}", s.len(), brute.len())
        })?;
    }
    Ok("81 charts, |sem| = 2^u against a 16-machine filter".into())
}

fn c2a_refinement_pair() -> Outcome {
    let holds = check_semantic_refinement(&LanguageVariant::base(), &ignore(), &scope81()).map_err(|e| e.to_string())?;
    ensure(holds.verdict() == Verdict::Holds, || format!("chaos/ignore: {}", holds.verdict()))?;
    let fails = check_semantic_refinement(&ignore(), &LanguageVariant::base(), &scope81()).map_err(|e| e.to_string())?;
    ensure(fails.verdict() == Verdict::Fails, || "reversed direction did not fail".into())?;
    // M1 on its own is a counterexample with the expected witness
    let alone = check_semantic_refinement(&ignore(), &LanguageVariant::base(), &Scope::corpus(vec![flat(M1)]))
        .map_err(|e| e.to_string())?;
    let w = alone.counterexample().and_then(|c| c.witness.clone()).ok_or("M1 has no witness")?;
    ensure(w.step_named("A", "b", 0) == Some("B"), || format!("witness {w}"))?;
    Ok(format!(
        "Holds over {} models; reversed Fails; M1 witness {w}",
        holds.stats().models_checked
    ))
}

fn c2b_first_counterexample_is_m1() -> Outcome {
    let fails = check_semantic_refinement(&ignore(), &LanguageVariant::base(), &scope81()).map_err(|e| e.to_string())?;
    let cex = fails.counterexample().ok_or("no counterexample")?;
    let got = cex.model.clone().ok_or("no model")?;
    let m1 = flat(M1);
    let same = got.table() == m1.table();
    let w = cex.witness.clone().ok_or("no witness")?;
    ensure(same && w.step_named("A", "b", 0) == Some("B"), || {
        format!(
            "first counterexample in enumeration order has {} transitions, witness {w}; every chart with an unspecified triple fails, so M1 is never first",
            got.transitions().len()
        )
    })?;
    Ok("counterexample is M1".into())
}

fn c3_property_preservation() -> Outcome {
    let models = models81();
    let mut checks = 0;
    for v1 in variants() {
        for v2 in variants() {
            for m in &models {
                let refines = check_semantic_refinement(&v1, &v2, &Scope::corpus(vec![m.clone()]))
                    .map_err(|e| e.to_string())?
                    .holds();
                if !refines {
                    continue;
                }
                for phi in PropertySpec::all_for(&Universe::of(m)) {
                    let r = check_property_preservation(m, &v1, &v2, &phi, DEFAULT_CAP).map_err(|e| e.to_string())?;
                    checks += 1;
                    ensure(r.holds(), || format!("{phi} not preserved from {v1} to {v2}"))?;
                }
            }
        }
    }
    Ok(format!("{checks} property checks over refining variant pairs"))
}

fn c4_flattening_laws() -> Outcome {
    let base = LanguageVariant::base();
    let hier = base.clone().with_hierarchy(true);
    let texts = corpus_texts();
    let corpus: Vec<_> = texts.iter().map(|t| parse(t, &hier).unwrap()).collect();
    let hierarchical = corpus.iter().filter(|a| !langvar_core::syntax::is_reduced(a)).count();
    ensure(hierarchical >= 20, || format!("only {hierarchical} hierarchical charts"))?;
    let mut flats = enumerate_models(&Scope::up_to(sig(&["a", "b"], &[]), 2), &base).unwrap();
    flats.extend(enumerate_models(&Scope::up_to(sig(&["a"], &["f"]), 2), &base).unwrap());
    for m in &flats {
        ensure(flatten(&m.to_ast(), &base).as_ref() == Ok(m), || "identity fails".into())?;
    }
    for a in &corpus {
        let once = flatten(a, &hier).map_err(|e| e.to_string())?;
        ensure(flatten(&once.to_ast(), &hier).as_ref() == Ok(&once), || "idempotence fails".into())?;
    }
    let report = check_abbreviation(&base, &hier, &corpus, &flats).map_err(|e| e.to_string())?;
    ensure(report.verdict() == Verdict::Holds, || report.to_string())?;
    let h1 = flatten(&corpus[0], &hier).map_err(|e| e.to_string())?;
    let edges: BTreeSet<(String, String, String)> = h1
        .transitions()
        .iter()
        .filter(|t| t.guard.is_full())
        .map(|t| (t.source.clone(), t.event.clone(), t.target.clone()))
        .collect();
    let expected: BTreeSet<(String, String, String)> = [("A", "e", "C"), ("B", "e", "C"), ("A", "f", "B")]
        .into_iter()
        .map(|(a, b, c)| (a.into(), b.into(), c.into()))
        .collect();
    ensure(
        h1.name() == "H1" && h1.states() == ["A", "B", "C"] && h1.initial() == "A" && edges == expected && h1.transitions().len() == 3,
        || format!("H1 flattened to {h1:?}"),
    )?;
    Ok(format!(
        "{hierarchical} corpus charts, {} flat charts, H1 as derived by hand",
        flats.len()
    ))
}

fn c5_presentation_options() -> Outcome {
    let base = LanguageVariant::base();
    let models = models81();
    let mut summary = Vec::new();
    for v in presentation_variants().into_iter().skip(1) {
        let mut texts = corpus_texts();
        for m in &models {
            texts.push(pretty_print(&m.to_ast(), &base));
            texts.push(pretty_print(&m.to_ast(), &v));
        }
        for t in corpus_texts() {
            texts.push(pretty_print(&parse(&t, &base).unwrap(), &v));
        }
        let r = check_presentation_option(&base, &v, &texts).map_err(|e| e.to_string())?;
        ensure(r.verdict() == Verdict::Holds && r.stats().skipped == 0, || r.to_string())?;
        summary.push(r.notes()[0].clone());
    }
    Ok(summary.join("; "))
}

fn c6_expressiveness() -> Outcome {
    let base = LanguageVariant::base();
    let cases = [
        (
            "NoGuards",
            base.clone().with_constraint(ConstraintSpec::NoGuards),
            Scope::up_to(sig(&["a"], &["f"]), 2),
        ),
        (
            "MaxStates2",
            base.clone().with_constraint(ConstraintSpec::MaxStates(2)),
            Scope::up_to(sig(&["a"], &[]), 3),
        ),
    ];
    let mut out = Vec::new();
    for (name, constrained, scope) in cases {
        let r = check_expressiveness(&base, &constrained, &scope, Direction::Converse).map_err(|e| e.to_string())?;
        ensure(r.verdict() == Verdict::Fails, || format!("{name}: {}", r.verdict()))?;
        let m2 = r.counterexample().and_then(|c| c.model.clone()).ok_or("no counterexample chart")?;
        // independent re-check: no constrained chart has the same semantics
        let target = brute_semantic_class(&m2, Mapping::Chaos, DomainVariant::StatesEqualSyntactic);
        for m1 in enumerate_models(&scope, &constrained).unwrap() {
            let c = brute_semantic_class(&m1, Mapping::Chaos, DomainVariant::StatesEqualSyntactic);
            ensure(c != target, || format!("{name}: counterexample has a match"))?;
        }
        match name {
            "NoGuards" => ensure(m2.transitions().iter().any(|t| !t.guard.is_full()), || "no proper guard".into())?,
            _ => ensure(m2.states().len() == 3, || "not a 3-state chart".into())?,
        }
        let aw = check_expressiveness(&base, &constrained, &scope, Direction::AsWritten).map_err(|e| e.to_string())?;
        ensure(
            aw.verdict() == Verdict::Holds && aw.notes().iter().any(|n| n.starts_with("trivial")),
            || format!("{name} as written: {aw}"),
        )?;
        out.push(format!("{name}: {} states, {} transitions", m2.states().len(), m2.transitions().len()));
    }
    Ok(out.join("; "))
}

fn c7_feature_model() -> Outcome {
    let fm = default_feature_model();
    let chaos = Configuration::parse(CHAOS_CFG);
    ensure(validate_configuration(&fm, &chaos).is_ok(), || "chaos.cfg rejected".into())?;
    ensure(validate_configuration(&fm, &Configuration::parse(IGNORE_CFG)).is_ok(), || "ignore.cfg rejected".into())?;
    let mut dual = chaos.clone();
    dual.selected.insert("Ignore".into());
    let err = validate_configuration(&fm, &dual).err().ok_or("dual mapping accepted")?;
    ensure(
        err.0.iter().any(|v| matches!(v, Violation::AlternativeCardinality { parent, .. } if parent == "Mapping")),
        || err.to_string(),
    )?;
    let mut missing = chaos.clone();
    for f in ["Semantics", "Mapping", "Chaos", "Domain", "StatesEqualSyntactic"] {
        missing.selected.remove(f);
    }
    let err = validate_configuration(&fm, &missing).err().ok_or("missing Semantics accepted")?;
    ensure(
        err.0.iter().any(|v| matches!(v, Violation::MandatoryNotSelected { feature, .. } if feature == "Semantics")),
        || err.to_string(),
    )?;
    Ok("accepts both references, rejects dual Mapping and missing Semantics".into())
}

fn c8_composition_and_monotonicity() -> Outcome {
    let models = models81();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..100 {
        let a = &models[rng.gen_range(0..models.len())];
        let b = &models[rng.gen_range(0..models.len())];
        let (mapping, dv) = (Mapping::ALL[rng.gen_range(0..2)], DomainVariant::ALL[rng.gen_range(0..3)]);
        let sa = semantics_of(a, mapping, dv, DEFAULT_CAP).map_err(|e| e.to_string())?;
        let sb = semantics_of(b, mapping, dv, DEFAULT_CAP).map_err(|e| e.to_string())?;
        let both = integrated_semantics(&[sa, sb]).map_err(|e| e.to_string())?;
        let got: BTreeSet<Vec<u16>> = both.machines().map(|m| m.delta().to_vec()).collect();
        let brute: BTreeSet<Vec<u16>> = brute_semantics(a, mapping, dv)
            .intersection(&brute_semantics(b, mapping, dv))
            .cloned()
            .collect();
        ensure(got == brute, || "intersection differs from brute force".into())?;
    }
    let mut extensions = 0;
    for m in &models {
        let table = m.table();
        for dv in DomainVariant::ALL {
            let s = semantics_of(m, Mapping::Chaos, dv, DEFAULT_CAP).map_err(|e| e.to_string())?;
            for i in (0..table.len()).filter(|&i| table[i].is_none()) {
                for t in 0..m.states().len() {
                    let mut more = table.clone();
                    more[i] = Some(t);
                    let m2 = FlatAst::from_table("M", BTreeSet::new(), m.signature().clone(), m.states().to_vec(), 0, &more);
                    let s2 = semantics_of(&m2, Mapping::Chaos, dv, DEFAULT_CAP).map_err(|e| e.to_string())?;
                    extensions += 1;
                    ensure(is_model_refinement(&s2, &s).unwrap(), || "extension enlarged the semantics".into())?;
                    ensure(
                        brute_semantics(&m2, Mapping::Chaos, dv).is_subset(&brute_semantics(m, Mapping::Chaos, dv)),
                        || "brute-force subset fails".into(),
                    )?;
                }
            }
        }
    }
    Ok(format!("100 random intersections, {extensions} single-triple extensions"))
}

fn main() {
    let criteria: Vec<(&str, &str, u64, fn() -> Outcome)> = vec![
        ("1", "chaos count law", 1000, c1_chaos_count_law),
        ("2a", "refinement holds/fails pair", 1000, c2a_refinement_pair),
        ("2b", "reversed refinement reports M1 first", 1000, c2b_first_counterexample_is_m1),
        ("3", "property preservation corollary", 5000, c3_property_preservation),
        ("4", "flattening laws", 1000, c4_flattening_laws),
        ("5", "presentation-option conditions", 1000, c5_presentation_options),
        ("6", "expressiveness", 30000, c6_expressiveness),
        ("7", "feature-model validation", 100, c7_feature_model),
        ("8", "composition and model refinement", 5000, c8_composition_and_monotonicity),
    ];
    let mut unexpected = 0;
    for (id, name, bound_ms, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let bound = Duration::from_millis(bound_ms);
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= bound => (true, d),
            Ok(d) => (false, format!("{d}; too slow")),
            Err(e) => (false, e),
        };
        let expected = EXPECTED_FAILURES.contains(&id);
        let status = match (ok, expected) {
            (true, _) => "PASS",
            (false, true) => "FAIL (expected)",
            (false, false) => "FAIL",
        };
        if !ok && !expected {
            unexpected += 1;
        }
        println!(
            "criterion {id:<3} {status:<15} {name} [{} ms / {bound_ms} ms] {detail}",
            elapsed.as_millis()
        );
    }
    if unexpected > 0 {
        println!("{unexpected} criteria failed");
        std::process::exit(1);
    }
}
