//! Name-independent machine comparison.

use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use super::machine::{Machine, StateId, Universe};
use super::mapping::SemSet;

/// Unreachable states above this count are ordered by name instead of
/// by search.
const EXACT_UNREACHABLE_LIMIT: usize = 8;

/// Renumbers states in breadth-first discovery order from the initial
/// state, successors visited by event then valuation index. States not
/// reachable from the initial state follow, ordered so that the resulting
/// table is lexicographically smallest (by name when there are more than
/// eight of them). The result's states are named `q0, q1, ...` with `q0`
/// initial, so machines that are isomorphic as rooted labelled graphs over
/// the same signature canonicalize identically.
pub fn canonicalize(machine: &Machine) -> Machine {
    let u = machine.universe();
    let n = u.state_count();
    let per = u.events() * u.valuations();
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([u.initial()]);
    seen[u.initial()] = true;
    order.push(u.initial());
    while let Some(s) = queue.pop_front() {
        for &t in &machine.delta()[s * per..(s + 1) * per] {
            let t = t as usize;
            if !seen[t] {
                seen[t] = true;
                order.push(t);
                queue.push_back(t);
            }
        }
    }
    let mut rest: Vec<usize> = (0..n).filter(|&s| !seen[s]).collect();
    rest.sort_by(|&a, &b| u.states()[a].cmp(&u.states()[b]));
    let reached = order.len();
    order.extend(&rest);
    let mut best = relabel(machine, &order, per);
    if rest.len() > 1 && rest.len() <= EXACT_UNREACHABLE_LIMIT {
        let mut perm: Vec<usize> = (0..rest.len()).collect();
        while next_permutation(&mut perm) {
            for (k, &p) in perm.iter().enumerate() {
                order[reached + k] = rest[p];
            }
            let cand = relabel(machine, &order, per);
            if cand < best {
                best = cand;
            }
        }
    }
    let names = (0..n).map(|i| format!("q{i}")).collect();
    Machine::from_parts_unchecked(Universe::new(names, 0, u.signature().clone()), best)
}

/// The table of `machine` with old state `order[i]` renamed to `i`.
fn relabel(machine: &Machine, order: &[usize], per: usize) -> Vec<StateId> {
    let mut new_id = vec![0; order.len()];
    for (i, &old) in order.iter().enumerate() {
        new_id[old] = i as StateId;
    }
    let mut delta = Vec::with_capacity(machine.delta().len());
    for &old in order {
        for &t in &machine.delta()[old * per..(old + 1) * per] {
            delta.push(new_id[t as usize]);
        }
    }
    delta
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (0..p.len().saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..p.len()).rev().find(|&j| p[j] > p[i]).expect("successor exists");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// A semantics set up to state renaming.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalSet {
    universe: Arc<Universe>,
    deltas: BTreeSet<Vec<StateId>>,
}

impl CanonicalSet {
    pub fn of(set: &SemSet) -> CanonicalSet {
        let mut universe = None;
        let mut deltas = BTreeSet::new();
        for m in set.machines() {
            let c = canonicalize(&m);
            universe.get_or_insert_with(|| c.universe().clone());
            deltas.insert(c.delta().to_vec());
        }
        let u = set.universe();
        let universe = universe.unwrap_or_else(|| {
            let names = (0..u.state_count()).map(|i| format!("q{i}")).collect();
            Universe::new(names, 0, u.signature().clone())
        });
        CanonicalSet { universe, deltas }
    }

    pub fn len(&self) -> usize {
        self.deltas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.deltas.is_empty()
    }
}
