use criterion::{criterion_group, criterion_main, Criterion};
use langvar_core::checks::{check_semantic_refinement, Scope};
use langvar_core::semantics::{semantics_of, DomainVariant, Mapping, DEFAULT_CAP};
use langvar_core::syntax::{flatten, parse, ConcreteModel, Signature};
use langvar_core::LanguageVariant;
use std::hint::black_box;

const H: &str = "statechart H { events a b; flags f; initial S;
    state S { initial A; on a -> C; state A { on b [f] -> B; } state B { on a [!f] -> A; } }
    state C { on b -> S; } }";

fn pipeline(c: &mut Criterion) {
    let v = LanguageVariant::base().with_hierarchy(true);
    let src = ConcreteModel::new("h.sc", H);
    let ast = parse(&src, &v).unwrap();
    let flat = flatten(&ast, &v).unwrap();

    c.bench_function("parse", |b| b.iter(|| parse(black_box(&src), &v).unwrap()));
    c.bench_function("flatten", |b| b.iter(|| flatten(black_box(&ast), &v).unwrap()));
    c.bench_function("semantics_chaos", |b| {
        b.iter(|| semantics_of(black_box(&flat), Mapping::Chaos, DomainVariant::AllStatesReachable, DEFAULT_CAP).unwrap())
    });

    let scope = Scope::exactly(Signature::new(["a", "b"], Vec::<String>::new()).unwrap(), 2);
    let ignore = LanguageVariant::base().with_mapping(Mapping::Ignore);
    c.bench_function("refinement_81", |b| {
        b.iter(|| check_semantic_refinement(&LanguageVariant::base(), black_box(&ignore), &scope).unwrap())
    });
}

criterion_group!(benches, pipeline);
criterion_main!(benches);
