//! Shared generators and brute-force oracles for the integration suites.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::Path;

use langvar_core::semantics::{DomainVariant, Machine, Mapping, Universe};
use langvar_core::syntax::{flatten, parse, Ast, ConcreteModel, FlatAst, Guard, Signature, StateNode, Stereotype};
use langvar_core::variability::{LanguageVariant, PresentationOption};
use proptest::prelude::*;

pub const M1: &str = "statechart M1 { events a b; initial A; state A { on a -> B; } state B; }";

pub fn flat(src: &str) -> FlatAst {
    let v = LanguageVariant::base().with_hierarchy(true);
    flatten(&parse(&ConcreteModel::new("t.sc", src), &v).unwrap(), &v).unwrap()
}

pub fn sig(events: &[&str], flags: &[&str]) -> Signature {
    Signature::new(events.iter().copied(), flags.iter().copied()).unwrap()
}

pub fn corpus_dir() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data/corpus")
}

pub fn corpus_texts() -> Vec<ConcreteModel> {
    let mut files: Vec<_> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "sc"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| ConcreteModel::new(p.file_name().unwrap().to_string_lossy(), std::fs::read_to_string(&p).unwrap()))
        .collect()
}

/// Every subset of the presentation options applied to the base variant.
pub fn presentation_variants() -> Vec<LanguageVariant> {
    let mut out = Vec::new();
    for bits in 0..4u8 {
        let opts = PresentationOption::ALL
            .into_iter()
            .enumerate()
            .filter(|(i, _)| bits & (1 << i) != 0)
            .map(|(_, o)| o);
        out.push(LanguageVariant::base().with_presentation(opts));
    }
    out
}

/// Every machine over `u`, without going through the library's enumerator.
pub fn all_machines(u: &std::sync::Arc<Universe>) -> Vec<Machine> {
    let n = u.state_count();
    let len = u.triple_count();
    let total = n.pow(len as u32);
    (0..total)
        .map(|mut code| {
            let mut delta = vec![0u16; len];
            for slot in delta.iter_mut().rev() {
                *slot = (code % n) as u16;
                code /= n;
            }
            Machine::new(u.clone(), delta)
        })
        .collect()
}

/// Brute-force semantics: filter every machine by agreement with the table.
pub fn brute_semantics(m: &FlatAst, mapping: Mapping, dv: DomainVariant) -> BTreeSet<Vec<u16>> {
    let u = Universe::of(m);
    let table = m.table();
    all_machines(&u)
        .into_iter()
        .filter(|s| {
            s.delta().iter().enumerate().all(|(i, &t)| match table[i] {
                Some(target) => target == t as usize,
                None => mapping == Mapping::Chaos || u.triple(i).0 == t as usize,
            })
        })
        .filter(|s| match dv {
            DomainVariant::StatesEqualSyntactic => true,
            DomainVariant::SelfLoopFreeInitial => {
                let q0 = u.initial();
                (0..s.delta().len()).all(|i| u.triple(i).0 != q0 || s.delta()[i] as usize != q0)
            }
            DomainVariant::AllStatesReachable => {
                // fixpoint iteration rather than a search
                let mut r = vec![false; u.state_count()];
                r[u.initial()] = true;
                loop {
                    let mut changed = false;
                    for i in 0..s.delta().len() {
                        let (src, _, _) = u.triple(i);
                        let t = s.delta()[i] as usize;
                        if r[src] && !r[t] {
                            r[t] = true;
                            changed = true;
                        }
                    }
                    if !changed {
                        break;
                    }
                }
                r.into_iter().all(|x| x)
            }
        })
        .map(|s| s.delta().to_vec())
        .collect()
}

pub fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| char::from(b'A' + i as u8).to_string()).collect()
}

/// Random flat charts with up to `max_states` states, 1..=2 events and up
/// to `max_flags` flags.
pub fn arb_flat(max_states: usize, max_flags: usize) -> impl Strategy<Value = FlatAst> {
    (1..=max_states, 1..=2usize, 0..=max_flags).prop_flat_map(|(n, e, f)| {
        let len = n * e * (1 << f);
        proptest::collection::vec(proptest::option::of(0..n), len).prop_map(move |table| {
            let events = ["a", "b"][..e].to_vec();
            let flags = ["f", "g"][..f].to_vec();
            FlatAst::from_table("R", BTreeSet::new(), sig(&events, &flags), names(n), 0, &table)
        })
    })
}

pub fn domain_variant() -> impl Strategy<Value = DomainVariant> {
    prop::sample::select(DomainVariant::ALL.to_vec())
}

pub fn mapping() -> impl Strategy<Value = Mapping> {
    prop::sample::select(Mapping::ALL.to_vec())
}

#[derive(Debug, Clone)]
pub struct TreeShape {
    pub events: usize,
    pub flags: usize,
    pub parents: Vec<usize>,
    pub transitions: Vec<(usize, usize, u64, usize)>,
    pub stereotypes: Vec<usize>,
}

pub fn arb_shape() -> impl Strategy<Value = TreeShape> {
    (1..=2usize, 0..=2usize, proptest::collection::vec(0..8usize, 0..6)).prop_flat_map(|(events, flags, parents)| {
        let n = parents.len() + 1;
        (
            proptest::collection::vec((0..n, 0..events, 0..(1u64 << (1 << flags)), 0..n), 0..8),
            proptest::collection::vec(0..3usize, 0..3),
        )
            .prop_map(move |(transitions, stereotypes)| TreeShape {
                events,
                flags,
                parents: parents.clone(),
                transitions,
                stereotypes,
            })
    })
}

/// Builds a well-formed, possibly hierarchical chart. Node `i > 0` nests
/// under node `parents[i-1] % (i+1)`, or sits at top level when that
/// value equals `i`. Transitions that would make a state nondeterministic
/// are dropped.
pub fn build_tree(shape: &TreeShape) -> Ast {
    let n = shape.parents.len() + 1;
    let parent: Vec<Option<usize>> = std::iter::once(None)
        .chain(shape.parents.iter().enumerate().map(|(k, &c)| {
            let i = k + 1;
            let p = c % (i + 1);
            (p != i).then_some(p)
        }))
        .collect();
    let name = |i: usize| format!("S{i}");
    let events = ["a", "b"][..shape.events].to_vec();
    let flags = ["f", "g"][..shape.flags].to_vec();
    let signature = sig(&events, &flags);
    let mut trans: Vec<Vec<(usize, Guard, usize)>> = vec![Vec::new(); n];
    for &(src, ev, mask, tgt) in &shape.transitions {
        let g = Guard::from_mask(shape.flags, mask);
        let clash = trans[src].iter().any(|(e, h, t)| *e == ev && *t != tgt && h.overlaps(&g));
        if !clash {
            trans[src].push((ev, g, tgt));
        }
    }
    fn build(i: usize, parent: &[Option<usize>], trans: &[Vec<(usize, Guard, usize)>], events: &[&str]) -> StateNode {
        let kids: Vec<usize> = (0..parent.len()).filter(|&k| parent[k] == Some(i)).collect();
        let mut node = StateNode::leaf(format!("S{i}"));
        for &(e, g, t) in &trans[i] {
            node = node.with_transition(events[e], g, format!("S{t}"));
        }
        if let Some(&first) = kids.first() {
            node.initial = Some(format!("S{first}"));
            node.children = kids.iter().map(|&k| build(k, parent, trans, events)).collect();
        }
        node
    }
    let top: Vec<usize> = (0..n).filter(|&k| parent[k].is_none()).collect();
    let all_stereo = [
        Stereotype::new("completion", Some("chaos")),
        Stereotype::new("priority", None),
        Stereotype::new("priority", Some("high")),
    ];
    Ast {
        name: "T".into(),
        stereotypes: shape.stereotypes.iter().map(|&i| all_stereo[i].clone()).collect(),
        signature,
        root_initial: Some(name(top[0])),
        states: top.iter().map(|&k| build(k, &parent, &trans, &events)).collect(),
    }
}

/// Canonical table by exhaustive search: the smallest relabelled table
/// over all bijections sending the initial state to 0.
pub fn brute_canonical(m: &Machine) -> Vec<u16> {
    let u = m.universe();
    let n = u.state_count();
    let per = u.events() * u.valuations();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<u16>> = None;
    loop {
        if perm[u.initial()] == 0 {
            let mut d = vec![0u16; m.delta().len()];
            for s in 0..n {
                for k in 0..per {
                    d[perm[s] * per + k] = perm[m.delta()[s * per + k] as usize] as u16;
                }
            }
            if best.as_ref().is_none_or(|b| d < *b) {
                best = Some(d);
            }
        }
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    best.unwrap()
}

/// Semantics up to renaming, computed without the library's canonical form.
pub fn brute_semantic_class(m: &FlatAst, mapping: Mapping, dv: DomainVariant) -> (usize, BTreeSet<Vec<u16>>) {
    let u = Universe::of(m);
    let class = brute_semantics(m, mapping, dv)
        .into_iter()
        .map(|d| brute_canonical(&Machine::new(u.clone(), d)))
        .collect();
    (u.state_count(), class)
}
