//! Bounded model scopes standing in for the unbounded quantifiers over
//! reduced syntax.

use std::collections::BTreeSet;
use std::fmt;

use super::CheckError;
use crate::semantics::DEFAULT_CAP;
use crate::syntax::{FlatAst, Signature};
use crate::variability::LanguageVariant;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScopeSource {
    /// Every flat chart with between `min_states` and `max_states` states.
    Enumerated,
    /// An explicit list of models.
    Corpus(Vec<FlatAst>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scope {
    pub signature: Signature,
    pub min_states: usize,
    pub max_states: usize,
    pub source: ScopeSource,
    /// Upper bound on the number of candidate models enumerated.
    pub cap: u64,
}

impl Scope {
    /// All charts with `1..=max_states` states.
    pub fn up_to(signature: Signature, max_states: usize) -> Scope {
        Scope {
            signature,
            min_states: 1,
            max_states,
            source: ScopeSource::Enumerated,
            cap: DEFAULT_CAP,
        }
    }

    /// All charts with exactly `states` states.
    pub fn exactly(signature: Signature, states: usize) -> Scope {
        Scope {
            min_states: states,
            ..Scope::up_to(signature, states)
        }
    }

    pub fn corpus(models: Vec<FlatAst>) -> Scope {
        let signature = models
            .first()
            .map(|m| m.signature().clone())
            .unwrap_or_default();
        let max_states = models.iter().map(|m| m.states().len()).max().unwrap_or(1);
        Scope {
            signature,
            min_states: 1,
            max_states,
            source: ScopeSource::Corpus(models),
            cap: DEFAULT_CAP,
        }
    }

    pub fn with_cap(mut self, cap: u64) -> Scope {
        self.cap = cap;
        self
    }

    pub fn is_enumerated(&self) -> bool {
        self.source == ScopeSource::Enumerated
    }

    /// Number of candidate charts an enumeration visits before filtering,
    /// or `None` on overflow.
    pub fn candidate_count(&self) -> Option<u64> {
        let triples_per_state = self.signature.events.len() * self.signature.valuation_count();
        let mut total: u64 = 0;
        for n in self.min_states..=self.max_states {
            let exp = u32::try_from(n * triples_per_state).ok()?;
            total = total.checked_add((n as u64 + 1).checked_pow(exp)?)?;
        }
        Some(total)
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.source {
            ScopeSource::Corpus(ms) => write!(f, "corpus of {} models", ms.len()),
            ScopeSource::Enumerated => {
                if self.min_states == self.max_states {
                    write!(f, "all charts with {} states", self.max_states)?;
                } else {
                    write!(f, "all charts with {}..={} states", self.min_states, self.max_states)?;
                }
                write!(
                    f,
                    " over events {{{}}} flags {{{}}}",
                    self.signature.events.join(","),
                    self.signature.flags.join(",")
                )
            }
        }
    }
}

/// `A`, `B`, ... for the first 26 states, then `S26`, `S27`, ...
pub fn state_names(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| {
            if i < 26 {
                char::from(b'A' + i as u8).to_string()
            } else {
                format!("S{i}")
            }
        })
        .collect()
}

/// The models of `scope` that `v` admits.
///
/// Enumerated charts are named `M` with states `A, B, ...` and initial
/// state `A`. They come ordered by state count, then by their transition
/// tables read as numbers whose most significant digit is the first
/// `(state, event, valuation)` triple, each digit being unspecified (0)
/// or a target index plus one. The chart without transitions comes first.
pub fn enumerate_models(scope: &Scope, v: &LanguageVariant) -> Result<Vec<FlatAst>, CheckError> {
    if scope.max_states == 0 || scope.min_states == 0 || scope.min_states > scope.max_states {
        return Err(CheckError::InvalidScope(format!(
            "state bounds {}..={} must satisfy 1 <= min <= max",
            scope.min_states, scope.max_states
        )));
    }
    if let ScopeSource::Corpus(models) = &scope.source {
        return Ok(models.iter().filter(|m| v.admits(m)).cloned().collect());
    }
    let size = scope.candidate_count();
    match size {
        Some(n) if n <= scope.cap => {}
        _ => return Err(CheckError::ScopeTooLarge { size, cap: scope.cap }),
    }
    let sig = &scope.signature;
    let mut out = Vec::new();
    for n in scope.min_states..=scope.max_states {
        let names = state_names(n);
        let len = n * sig.events.len() * sig.valuation_count();
        let mut digits = vec![0usize; len];
        loop {
            let table: Vec<Option<usize>> = digits.iter().map(|&d| d.checked_sub(1)).collect();
            let m = FlatAst::from_table("M", BTreeSet::new(), sig.clone(), names.clone(), 0, &table);
            if v.admits(&m) {
                out.push(m);
            }
            let mut k = len;
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                if digits[k] < n {
                    digits[k] += 1;
                    break;
                }
                digits[k] = 0;
            }
            if digits.iter().all(|&d| d == 0) {
                break;
            }
        }
    }
    Ok(out)
}
