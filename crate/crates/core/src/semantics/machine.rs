use std::fmt;
use std::sync::Arc;

use crate::syntax::{FlatAst, Signature};

pub type StateId = u16;

/// The state set, initial state and signature shared by a family of
/// machines.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Universe {
    states: Vec<String>,
    initial: usize,
    signature: Signature,
}

impl Universe {
    pub fn new(states: Vec<String>, initial: usize, signature: Signature) -> Arc<Universe> {
        assert!(!states.is_empty(), "a universe needs at least one state");
        assert!(initial < states.len(), "initial out of range");
        assert!(states.len() <= StateId::MAX as usize, "too many states");
        Arc::new(Universe {
            states,
            initial,
            signature,
        })
    }

    /// The implementation universe of a model: exactly its own states.
    pub fn of(model: &FlatAst) -> Arc<Universe> {
        Universe::new(model.states().to_vec(), model.initial_index(), model.signature().clone())
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }

    pub fn events(&self) -> usize {
        self.signature.events.len()
    }

    pub fn valuations(&self) -> usize {
        self.signature.valuation_count()
    }

    /// Number of `(state, event, valuation)` triples.
    pub fn triple_count(&self) -> usize {
        self.states.len() * self.events() * self.valuations()
    }

    pub fn index(&self, state: usize, event: usize, valuation: usize) -> usize {
        (state * self.events() + event) * self.valuations() + valuation
    }

    /// Inverse of [`Universe::index`].
    pub fn triple(&self, index: usize) -> (usize, usize, usize) {
        let v = index % self.valuations();
        let rest = index / self.valuations();
        (rest / self.events(), rest % self.events(), v)
    }

    /// `|states|^|triples|`, or `None` on overflow.
    pub fn domain_size(&self) -> Option<u64> {
        (self.states.len() as u64).checked_pow(u32::try_from(self.triple_count()).ok()?)
    }
}

/// A total deterministic machine over a universe: one element of the
/// semantic domain.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Machine {
    universe: Arc<Universe>,
    delta: Vec<StateId>,
}

impl Machine {
    /// `delta` is indexed as in [`Universe::index`].
    pub fn new(universe: Arc<Universe>, delta: Vec<StateId>) -> Machine {
        assert_eq!(delta.len(), universe.triple_count(), "delta must be total");
        assert!(
            delta.iter().all(|&t| (t as usize) < universe.state_count()),
            "delta target out of range"
        );
        Machine { universe, delta }
    }

    pub(crate) fn from_parts_unchecked(universe: Arc<Universe>, delta: Vec<StateId>) -> Machine {
        debug_assert_eq!(delta.len(), universe.triple_count());
        Machine { universe, delta }
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn delta(&self) -> &[StateId] {
        &self.delta
    }

    pub fn initial(&self) -> usize {
        self.universe.initial
    }

    pub fn step(&self, state: usize, event: usize, valuation: usize) -> usize {
        self.delta[self.universe.index(state, event, valuation)] as usize
    }

    /// Looks a transition up by names; the valuation is a bitset over flags.
    pub fn step_named(&self, state: &str, event: &str, valuation: usize) -> Option<&str> {
        let s = self.universe.state_index(state)?;
        let e = self.universe.signature.event_index(event)?;
        if valuation >= self.universe.valuations() {
            return None;
        }
        Some(&self.universe.states[self.step(s, e, valuation)])
    }

    /// States reachable from the initial state in zero or more steps.
    pub fn reachable(&self) -> Vec<bool> {
        let u = &self.universe;
        let mut seen = vec![false; u.state_count()];
        let mut stack = vec![u.initial];
        seen[u.initial] = true;
        let per_state = u.events() * u.valuations();
        while let Some(s) = stack.pop() {
            for &t in &self.delta[s * per_state..(s + 1) * per_state] {
                let t = t as usize;
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    /// `initial=<q0>; <q>,<e>,<val>-><q'>; ...` with entries sorted by name.
    pub fn export_line(&self) -> String {
        let u = &self.universe;
        let sig = &u.signature;
        let mut entries: Vec<(&str, &str, String, &str)> = (0..self.delta.len())
            .map(|i| {
                let (s, e, v) = u.triple(i);
                (
                    u.states[s].as_str(),
                    sig.events[e].as_str(),
                    sig.show_valuation(v),
                    u.states[self.delta[i] as usize].as_str(),
                )
            })
            .collect();
        entries.sort();
        let mut line = format!("initial={}", u.states[u.initial]);
        for (s, e, v, t) in entries {
            line.push_str(&format!("; {s},{e},{v}->{t}"));
        }
        line
    }
}

impl fmt::Display for Machine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.export_line())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uni() -> Arc<Universe> {
        Universe::new(
            vec!["A".into(), "B".into()],
            0,
            Signature::new(["a", "b"], Vec::<String>::new()).unwrap(),
        )
    }

    #[test]
    fn indexing_round_trips() {
        let u = Universe::new(
            vec!["A".into(), "B".into(), "C".into()],
            1,
            Signature::new(["a", "b"], ["f"]).unwrap(),
        );
        assert_eq!(u.triple_count(), 12);
        for i in 0..12 {
            let (s, e, v) = u.triple(i);
            assert_eq!(u.index(s, e, v), i);
        }
        assert_eq!(u.domain_size(), Some(3u64.pow(12)));
    }

    #[test]
    fn export_and_reachability() {
        let m = Machine::new(uni(), vec![1, 0, 1, 1]);
        assert_eq!(m.export_line(), "initial=A; A,a,{}->B; A,b,{}->A; B,a,{}->B; B,b,{}->B");
        assert_eq!(m.reachable(), vec![true, true]);
        assert_eq!(m.step_named("A", "a", 0), Some("B"));
        let stuck = Machine::new(uni(), vec![0, 0, 0, 0]);
        assert_eq!(stuck.reachable(), vec![true, false]);
    }

    #[test]
    #[should_panic(expected = "total")]
    fn partial_delta_is_rejected() {
        Machine::new(uni(), vec![0, 0]);
    }
}
