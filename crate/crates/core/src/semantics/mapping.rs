//! Set-valued semantic mappings from flat charts to sets of machines.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use super::domain::{checked_power, for_each_completion, DomainVariant};
use super::machine::{Machine, StateId, Universe};
use super::SemanticsError;
use crate::syntax::FlatAst;
use crate::variability::LanguageVariant;

/// How behaviour a chart leaves unspecified is completed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mapping {
    /// Unspecified triples may go anywhere.
    Chaos,
    /// Unspecified triples discard the event: the machine stays put.
    Ignore,
}

impl Mapping {
    pub const ALL: [Mapping; 2] = [Mapping::Chaos, Mapping::Ignore];

    pub fn id(self) -> &'static str {
        match self {
            Mapping::Chaos => "chaos",
            Mapping::Ignore => "ignore",
        }
    }
}

impl fmt::Display for Mapping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Mapping {
    type Err = SemanticsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "chaos" => Ok(Mapping::Chaos),
            "ignore" => Ok(Mapping::Ignore),
            _ => Err(SemanticsError::UnknownCompletion(s.to_string())),
        }
    }
}

/// Which mapping and domain produced a set, and over which universe.
/// `None` marks a set combined from several sources.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Provenance {
    pub mapping: Option<Mapping>,
    pub domain: Option<DomainVariant>,
    pub universe: Arc<Universe>,
}

/// A finite set of machines sharing one universe.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SemSet {
    provenance: Provenance,
    deltas: BTreeSet<Vec<StateId>>,
}

impl SemSet {
    pub fn empty(provenance: Provenance) -> SemSet {
        SemSet {
            provenance,
            deltas: BTreeSet::new(),
        }
    }

    /// Panics if a machine lives in a different universe.
    pub fn from_machines(provenance: Provenance, machines: impl IntoIterator<Item = Machine>) -> SemSet {
        let mut set = SemSet::empty(provenance);
        for m in machines {
            assert_eq!(m.universe(), &set.provenance.universe, "machine from another universe");
            set.deltas.insert(m.delta().to_vec());
        }
        set
    }

    pub(crate) fn from_deltas(provenance: Provenance, deltas: BTreeSet<Vec<StateId>>) -> SemSet {
        SemSet { provenance, deltas }
    }

    pub(crate) fn deltas(&self) -> &BTreeSet<Vec<StateId>> {
        &self.deltas
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.provenance.universe
    }

    pub fn len(&self) -> usize {
        self.deltas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.deltas.is_empty()
    }

    pub fn contains(&self, m: &Machine) -> bool {
        m.universe() == self.universe() && self.deltas.contains(m.delta())
    }

    /// Machines in lexicographic order of their transition tables.
    pub fn machines(&self) -> impl Iterator<Item = Machine> + '_ {
        self.deltas
            .iter()
            .map(|d| Machine::from_parts_unchecked(self.provenance.universe.clone(), d.clone()))
    }

    /// One machine per line, see [`Machine::export_line`]; lines sorted.
    pub fn export(&self) -> String {
        let mut lines: Vec<String> = self.machines().map(|m| m.export_line()).collect();
        lines.sort();
        let mut out = lines.join("\n");
        if !out.is_empty() {
            out.push('\n');
        }
        out
    }
}

/// Membership test: is `machine` a realization of a chart with partial
/// transition `table` under `mapping` and `domain`?
pub fn admits(table: &[Option<usize>], mapping: Mapping, domain: DomainVariant, machine: &Machine) -> bool {
    let u = machine.universe();
    if table.len() != machine.delta().len() {
        return false;
    }
    let agrees = table.iter().zip(machine.delta()).enumerate().all(|(i, (spec, &t))| match spec {
        Some(target) => *target == t as usize,
        None => match mapping {
            Mapping::Chaos => true,
            Mapping::Ignore => u.triple(i).0 == t as usize,
        },
    });
    agrees && domain.holds(machine)
}

/// The semantics of a flat chart: every machine over the chart's own
/// states that agrees with it on all specified triples, completed per
/// `mapping` and restricted to `domain`.
///
/// `cap` bounds the number of completions visited. An empty result is a
/// legal outcome.
pub fn semantics_of(model: &FlatAst, mapping: Mapping, domain: DomainVariant, cap: u64) -> Result<SemSet, SemanticsError> {
    let universe = Universe::of(model);
    let table = model.table();
    let provenance = Provenance {
        mapping: Some(mapping),
        domain: Some(domain),
        universe: universe.clone(),
    };
    let mut deltas = BTreeSet::new();
    match mapping {
        Mapping::Chaos => {
            let free: Vec<usize> = (0..table.len()).filter(|&i| table[i].is_none()).collect();
            let size = checked_power(universe.state_count(), free.len());
            match size {
                Some(n) if n <= cap => {}
                _ => return Err(SemanticsError::DomainTooLarge { size, cap }),
            }
            let template: Vec<StateId> = table.iter().map(|t| t.unwrap_or(0) as StateId).collect();
            for_each_completion(&template, &free, universe.state_count(), |delta| {
                let m = Machine::from_parts_unchecked(universe.clone(), delta.to_vec());
                if domain.holds(&m) {
                    deltas.insert(delta.to_vec());
                }
            });
        }
        Mapping::Ignore => {
            let delta: Vec<StateId> = table
                .iter()
                .enumerate()
                .map(|(i, t)| t.unwrap_or_else(|| universe.triple(i).0) as StateId)
                .collect();
            let m = Machine::from_parts_unchecked(universe.clone(), delta);
            if domain.holds(&m) {
                deltas.insert(m.delta().to_vec());
            }
        }
    }
    Ok(SemSet::from_deltas(provenance, deltas))
}

/// Stereotype key selecting the completion mapping per model.
pub const COMPLETION_KEY: &str = "completion";

/// The mapping that applies to `model` under `variant`: a `completion`
/// stereotype on the model wins over the variant's default.
pub fn resolve_mapping(model: &FlatAst, variant: &LanguageVariant) -> Result<Mapping, SemanticsError> {
    let chosen: BTreeSet<&str> = model
        .stereotypes()
        .iter()
        .filter(|s| s.key == COMPLETION_KEY)
        .filter_map(|s| s.value.as_deref())
        .collect();
    let mut mappings = BTreeSet::new();
    for value in &chosen {
        mappings.insert(value.parse::<Mapping>()?);
    }
    match mappings.len() {
        0 => Ok(variant.mapping),
        1 => Ok(*mappings.iter().next().expect("one element")),
        _ => Err(SemanticsError::ConflictingStereotype),
    }
}
