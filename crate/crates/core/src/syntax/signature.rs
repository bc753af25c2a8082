//! The alphabet a chart is built over: events and guard flags.

use std::collections::BTreeSet;
use std::fmt;

/// Maximum number of flags a signature may declare. Guards are stored as a
/// bitset over all valuations, so `2^MAX_FLAGS` must fit in a `u64`.
pub const MAX_FLAGS: usize = 6;

/// Words that cannot be used as names in chart files.
pub const RESERVED: &[&str] = &[
    "statechart", "events", "flags", "initial", "state", "on", "true", "false",
];

/// Returns true if `name` matches `[A-Za-z][A-Za-z0-9_]*`.
pub fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Returns true if `name` is a valid, non-reserved identifier.
pub fn is_usable_name(name: &str) -> bool {
    is_valid_name(name) && !RESERVED.contains(&name)
}

/// Events and flags in declaration order.
///
/// The fields are public so that an [`Ast`](super::Ast) can carry a
/// signature that violates the invariants; `check_wellformed` reports them.
/// [`Signature::new`] is the validating constructor.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Signature {
    pub events: Vec<String>,
    pub flags: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SignatureError {
    #[error("signature declares no events")]
    NoEvents,
    #[error("invalid name `{0}`")]
    InvalidName(String),
    #[error("duplicate name `{0}`")]
    Duplicate(String),
    #[error("{0} flags declared, at most {MAX_FLAGS} are supported")]
    TooManyFlags(usize),
}

impl Signature {
    pub fn new<E, F>(events: E, flags: F) -> Result<Self, SignatureError>
    where
        E: IntoIterator,
        E::Item: Into<String>,
        F: IntoIterator,
        F::Item: Into<String>,
    {
        let sig = Signature {
            events: events.into_iter().map(Into::into).collect(),
            flags: flags.into_iter().map(Into::into).collect(),
        };
        match sig.problems().into_iter().next() {
            Some(err) => Err(err),
            None => Ok(sig),
        }
    }

    /// Every invariant violation, in a stable order.
    pub fn problems(&self) -> Vec<SignatureError> {
        let mut out = Vec::new();
        if self.events.is_empty() {
            out.push(SignatureError::NoEvents);
        }
        if self.flags.len() > MAX_FLAGS {
            out.push(SignatureError::TooManyFlags(self.flags.len()));
        }
        let mut seen = BTreeSet::new();
        for name in self.events.iter().chain(&self.flags) {
            if !is_usable_name(name) {
                out.push(SignatureError::InvalidName(name.clone()));
            }
            if !seen.insert(name.as_str()) {
                out.push(SignatureError::Duplicate(name.clone()));
            }
        }
        out
    }

    pub fn event_index(&self, event: &str) -> Option<usize> {
        self.events.iter().position(|e| e == event)
    }

    pub fn flag_index(&self, flag: &str) -> Option<usize> {
        self.flags.iter().position(|f| f == flag)
    }

    /// Number of flag valuations, `2^|flags|`.
    pub fn valuation_count(&self) -> usize {
        1usize << self.flags.len().min(MAX_FLAGS)
    }

    /// Renders a valuation as the braced set of flags it makes true.
    pub fn show_valuation(&self, valuation: usize) -> String {
        let on: Vec<&str> = self
            .flags
            .iter()
            .enumerate()
            .filter(|(i, _)| valuation >> i & 1 == 1)
            .map(|(_, f)| f.as_str())
            .collect();
        format!("{{{}}}", on.join(","))
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "events {}", self.events.join(","))?;
        if !self.flags.is_empty() {
            write!(f, "; flags {}", self.flags.join(","))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_names_and_uniqueness() {
        assert!(Signature::new(["a", "b"], ["f"]).is_ok());
        assert_eq!(
            Signature::new(Vec::<String>::new(), ["f"]),
            Err(SignatureError::NoEvents)
        );
        assert_eq!(
            Signature::new(["a", "a"], Vec::<String>::new()),
            Err(SignatureError::Duplicate("a".into()))
        );
        assert_eq!(
            Signature::new(["a"], ["a"]),
            Err(SignatureError::Duplicate("a".into()))
        );
        assert_eq!(
            Signature::new(["1x"], Vec::<String>::new()),
            Err(SignatureError::InvalidName("1x".into()))
        );
        assert_eq!(
            Signature::new(["state"], Vec::<String>::new()),
            Err(SignatureError::InvalidName("state".into()))
        );
        assert!(matches!(
            Signature::new(["a"], ["f0", "f1", "f2", "f3", "f4", "f5", "f6"]),
            Err(SignatureError::TooManyFlags(7))
        ));
    }

    #[test]
    fn valuation_rendering() {
        let sig = Signature::new(["a"], ["f", "g"]).unwrap();
        assert_eq!(sig.valuation_count(), 4);
        assert_eq!(sig.show_valuation(0), "{}");
        assert_eq!(sig.show_valuation(3), "{f,g}");
        assert_eq!(sig.show_valuation(2), "{g}");
    }
}
