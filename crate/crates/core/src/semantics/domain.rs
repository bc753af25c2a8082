use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use super::machine::{Machine, StateId, Universe};
use super::SemanticsError;

/// Default upper bound on the number of machines any enumeration visits.
pub const DEFAULT_CAP: u64 = 1_000_000;

/// A restriction of the semantic domain to machines with extra properties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DomainVariant {
    /// The machine's states are the model's states. Always true for
    /// machines built over a model's own universe.
    StatesEqualSyntactic,
    /// No transition from the initial state back to itself.
    SelfLoopFreeInitial,
    /// Every state is reachable from the initial state.
    AllStatesReachable,
}

impl DomainVariant {
    pub const ALL: [DomainVariant; 3] = [
        DomainVariant::StatesEqualSyntactic,
        DomainVariant::SelfLoopFreeInitial,
        DomainVariant::AllStatesReachable,
    ];

    pub fn id(self) -> &'static str {
        match self {
            DomainVariant::StatesEqualSyntactic => "StatesEqualSyntactic",
            DomainVariant::SelfLoopFreeInitial => "SelfLoopFreeInitial",
            DomainVariant::AllStatesReachable => "AllStatesReachable",
        }
    }

    pub fn holds(self, machine: &Machine) -> bool {
        match self {
            DomainVariant::StatesEqualSyntactic => true,
            DomainVariant::SelfLoopFreeInitial => {
                let u = machine.universe();
                let q0 = u.initial();
                let per = u.events() * u.valuations();
                machine.delta()[q0 * per..(q0 + 1) * per]
                    .iter()
                    .all(|&t| t as usize != q0)
            }
            DomainVariant::AllStatesReachable => machine.reachable().into_iter().all(|r| r),
        }
    }
}

impl fmt::Display for DomainVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for DomainVariant {
    type Err = SemanticsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DomainVariant::ALL
            .into_iter()
            .find(|d| d.id() == s)
            .ok_or_else(|| SemanticsError::UnknownDomainVariant(s.to_string()))
    }
}

/// Visits every assignment of `0..base` to the `free` positions of
/// `template`, in lexicographic order of the resulting vectors (`free`
/// must be ascending).
pub(crate) fn for_each_completion(
    template: &[StateId],
    free: &[usize],
    base: usize,
    mut visit: impl FnMut(&[StateId]),
) {
    let mut cur = template.to_vec();
    for &p in free {
        cur[p] = 0;
    }
    loop {
        visit(&cur);
        // increment, least significant position last
        let mut k = free.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            let p = free[k];
            if (cur[p] as usize) + 1 < base {
                cur[p] += 1;
                break;
            }
            cur[p] = 0;
        }
    }
}

pub(crate) fn checked_power(base: usize, exp: usize) -> Option<u64> {
    (base as u64).checked_pow(u32::try_from(exp).ok()?)
}

/// All total deterministic machines over `universe` satisfying `variant`,
/// in lexicographic order of their transition tables.
pub fn enumerate_domain(universe: &Arc<Universe>, variant: DomainVariant, cap: u64) -> Result<Vec<Machine>, SemanticsError> {
    let size = universe.domain_size();
    match size {
        Some(n) if n <= cap => {}
        _ => return Err(SemanticsError::DomainTooLarge { size, cap }),
    }
    let free: Vec<usize> = (0..universe.triple_count()).collect();
    let template = vec![0; free.len()];
    let mut out = Vec::new();
    for_each_completion(&template, &free, universe.state_count(), |delta| {
        let m = Machine::from_parts_unchecked(universe.clone(), delta.to_vec());
        if variant.holds(&m) {
            out.push(m);
        }
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Signature;

    fn uni(states: &[&str], events: &[&str]) -> Arc<Universe> {
        Universe::new(
            states.iter().map(|s| s.to_string()).collect(),
            0,
            Signature::new(events.iter().copied(), Vec::<String>::new()).unwrap(),
        )
    }

    #[test]
    fn two_states_two_events() {
        let all = enumerate_domain(&uni(&["A", "B"], &["a", "b"]), DomainVariant::StatesEqualSyntactic, DEFAULT_CAP).unwrap();
        assert_eq!(all.len(), 16);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn single_state_forces_self_loop() {
        let all = enumerate_domain(&uni(&["A"], &["a"]), DomainVariant::StatesEqualSyntactic, DEFAULT_CAP).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].delta(), [0]);
    }

    #[test]
    fn self_loop_free_initial() {
        let u = uni(&["A", "B"], &["a", "b"]);
        let all = enumerate_domain(&u, DomainVariant::SelfLoopFreeInitial, DEFAULT_CAP).unwrap();
        assert_eq!(all.len(), 4);
        assert!(all.iter().all(|m| m.step(0, 0, 0) == 1 && m.step(0, 1, 0) == 1));
    }

    #[test]
    fn all_states_reachable() {
        let u = uni(&["A", "B"], &["a", "b"]);
        let all = enumerate_domain(&u, DomainVariant::AllStatesReachable, DEFAULT_CAP).unwrap();
        // A must reach B on a or b: 16 - (machines with delta(A,.) = A) = 16 - 4
        assert_eq!(all.len(), 12);
    }

    #[test]
    fn cap_is_enforced() {
        let u = uni(&["A", "B"], &["a", "b"]);
        assert_eq!(
            enumerate_domain(&u, DomainVariant::StatesEqualSyntactic, 15),
            Err(SemanticsError::DomainTooLarge { size: Some(16), cap: 15 })
        );
        let big = uni(&["A", "B", "C", "D", "E", "F", "G", "H"], &["a", "b", "c", "d"]);
        assert!(matches!(
            enumerate_domain(&big, DomainVariant::StatesEqualSyntactic, DEFAULT_CAP),
            Err(SemanticsError::DomainTooLarge { size: None, .. })
        ));
    }

    #[test]
    fn ids_parse() {
        for d in DomainVariant::ALL {
            assert_eq!(d.id().parse::<DomainVariant>().unwrap(), d);
        }
        assert!("Nope".parse::<DomainVariant>().is_err());
    }
}
