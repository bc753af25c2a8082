use std::fmt;

use crate::semantics::Machine;
use crate::syntax::FlatAst;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Holds,
    Fails,
    /// No violation inside the scope, but the condition quantifies beyond it.
    HoldsUpToBound,
}

impl Verdict {
    pub fn id(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::HoldsUpToBound => "holds_up_to_bound",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "Holds",
            Verdict::Fails => "Fails",
            Verdict::HoldsUpToBound => "HoldsUpToBound",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    /// Concrete text of the offending model.
    pub text: String,
    /// The model in reduced form, when it has one.
    pub model: Option<FlatAst>,
    pub witness: Option<Machine>,
    pub reason: String,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Stats {
    pub models_checked: usize,
    pub machines_checked: u64,
    /// Models outside the domain of some compared operation.
    pub skipped: usize,
}

/// Outcome of one check. A failing report always carries a counterexample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    condition: String,
    verdict: Verdict,
    counterexample: Option<Counterexample>,
    scope: String,
    stats: Stats,
    notes: Vec<String>,
}

impl CheckReport {
    pub fn passed(condition: impl Into<String>, verdict: Verdict, scope: impl Into<String>, stats: Stats) -> Self {
        assert_ne!(verdict, Verdict::Fails, "a failing report needs a counterexample");
        CheckReport {
            condition: condition.into(),
            verdict,
            counterexample: None,
            scope: scope.into(),
            stats,
            notes: Vec::new(),
        }
    }

    pub fn failed(condition: impl Into<String>, scope: impl Into<String>, stats: Stats, cex: Counterexample) -> Self {
        CheckReport {
            condition: condition.into(),
            verdict: Verdict::Fails,
            counterexample: Some(cex),
            scope: scope.into(),
            stats,
            notes: Vec::new(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn condition(&self) -> &str {
        &self.condition
    }

    pub fn verdict(&self) -> Verdict {
        self.verdict
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        self.counterexample.as_ref()
    }

    pub fn scope(&self) -> &str {
        &self.scope
    }

    pub fn stats(&self) -> Stats {
        self.stats
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    pub fn holds(&self) -> bool {
        self.verdict != Verdict::Fails
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}, {} models", self.condition, self.verdict, self.stats.models_checked)?;
        if self.stats.machines_checked > 0 {
            write!(f, ", {} machine memberships checked", self.stats.machines_checked)?;
        }
        if self.stats.skipped > 0 {
            write!(f, ", {} skipped", self.stats.skipped)?;
        }
        write!(f, " ({})", self.scope)?;
        if let Some(c) = &self.counterexample {
            write!(f, "\ncounterexample: {}\n{}", c.reason, c.text.trim_end())?;
            if let Some(w) = &c.witness {
                write!(f, "\nwitness: {w}")?;
            }
        }
        for n in &self.notes {
            write!(f, "\nnote: {n}")?;
        }
        Ok(())
    }
}
