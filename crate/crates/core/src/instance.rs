//! JSON instance documents.
//!
//! A document describes either a finite sample space (`omega`) with
//! generators, a measure and optional extras, or a countable presentation
//! (`countable`). Probabilities are always strings, `"a/b"` or `"a"`.
//!
//! ```json
//! {
//!   "omega": ["1", "2", "3", "4", "5", "6"],
//!   "generators": [["2", "4", "6"]],
//!   "measure": [[["2", "4", "6"], "1/3"]]
//! }
//! ```
//!
//! Optional finite-space keys: `random_variable` (element label → value
//! label), `codomain` (value labels, may list unattained values),
//! `distribution` (value label → probability), `pmf` (element label →
//! probability), `conditional_pmfs` (one list of probabilities per atom, in
//! atom order, aligned with the atom's members in `omega` order).
//!
//! Countable form:
//!
//! ```json
//! {
//!   "countable": {
//!     "atoms": [
//!       { "members": [0], "mass": "1/2" },
//!       { "progression": { "start": 1, "step": 1 }, "mass": "1/2" }
//!     ],
//!     "label_prefix": "n"
//!   }
//! }
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Deserialize;

use crate::atoms::AtomPartition;
use crate::countable::{AtomDescriptor, CountablePresentation};
use crate::error::Error;
use crate::model::{GeneratorFamily, MeasureAssignment, Pmf};
use crate::random_variable::FiniteRandomVariable;
use crate::scalar::Scalar;
use crate::space::{FiniteSpace, SubsetMask, DEFAULT_MAX_ELEMENTS};
use crate::Rational;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub omega: Option<Vec<String>>,
    #[serde(default)]
    pub generators: Vec<Vec<String>>,
    #[serde(default)]
    pub measure: Vec<(Vec<String>, String)>,
    pub random_variable: Option<BTreeMap<String, String>>,
    pub codomain: Option<Vec<String>>,
    pub distribution: Option<BTreeMap<String, String>>,
    pub pmf: Option<BTreeMap<String, String>>,
    pub conditional_pmfs: Option<Vec<Vec<String>>>,
    pub countable: Option<CountableDocument>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CountableDocument {
    pub atoms: Vec<CountableAtomDocument>,
    pub label_prefix: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CountableAtomDocument {
    pub members: Option<Vec<u64>>,
    pub progression: Option<ProgressionDocument>,
    pub mass: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProgressionDocument {
    pub start: u64,
    pub step: u64,
}

/// A problem with an instance file, with a location inside it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceError {
    pub location: String,
    pub message: String,
    /// The library error behind the message, when there is one.
    pub cause: Option<Error>,
}

impl InstanceError {
    fn at(location: impl Into<String>, cause: Error) -> Self {
        Self { location: location.into(), message: cause.to_string(), cause: Some(cause) }
    }

    fn msg(location: impl Into<String>, message: impl Into<String>) -> Self {
        Self { location: location.into(), message: message.into(), cause: None }
    }
}

impl fmt::Display for InstanceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

impl std::error::Error for InstanceError {}

/// The finite part of a resolved instance.
#[derive(Debug, Clone)]
pub struct FiniteInstance {
    pub space: Arc<FiniteSpace>,
    /// Explicit generators followed by the level sets of the random
    /// variable, if any.
    pub generators: GeneratorFamily,
    /// Explicit measure entries followed by `(A_x, P(X = x))` for every
    /// value in the distribution. Not range-checked; see
    /// [`MeasureAssignment::new_unchecked`].
    pub measure: MeasureAssignment<Rational>,
    pub random_variable: Option<FiniteRandomVariable>,
    pub distribution: Option<Pmf<Rational>>,
    pub pmf: Option<Pmf<Rational>>,
    /// Per-atom mass lists, still unaligned; see
    /// [`FiniteInstance::conditionals_for`].
    pub conditional_pmfs: Option<Vec<Vec<Rational>>>,
}

#[derive(Debug, Clone)]
pub enum Instance {
    Finite(Box<FiniteInstance>),
    Countable(CountablePresentation<Rational>),
}

fn rational(location: &str, s: &str) -> Result<Rational, InstanceError> {
    Rational::parse_exact(s).map_err(|e| InstanceError::at(location, e))
}

fn label_set(space: &Arc<FiniteSpace>, location: &str, labels: &[String]) -> Result<SubsetMask, InstanceError> {
    SubsetMask::from_labels(space, labels).map_err(|e| InstanceError::at(location, e))
}

/// Parses and resolves a JSON document. `max_elements` caps `|omega|`.
pub fn parse_instance(text: &str, max_elements: usize) -> Result<Instance, InstanceError> {
    let doc: InstanceDocument = serde_json::from_str(text).map_err(|e| {
        InstanceError::msg(format!("line {}, column {}", e.line(), e.column()), e.to_string())
    })?;
    resolve(doc, max_elements)
}

pub fn parse_instance_default(text: &str) -> Result<Instance, InstanceError> {
    parse_instance(text, DEFAULT_MAX_ELEMENTS)
}

fn resolve(doc: InstanceDocument, max_elements: usize) -> Result<Instance, InstanceError> {
    match (&doc.omega, &doc.countable) {
        (Some(_), Some(_)) => Err(InstanceError::msg("document", "give either omega or countable, not both")),
        (None, None) => Err(InstanceError::msg("document", "missing omega (or countable)")),
        (None, Some(c)) => {
            let extras = [
                ("generators", !doc.generators.is_empty()),
                ("measure", !doc.measure.is_empty()),
                ("random_variable", doc.random_variable.is_some()),
                ("codomain", doc.codomain.is_some()),
                ("distribution", doc.distribution.is_some()),
                ("pmf", doc.pmf.is_some()),
                ("conditional_pmfs", doc.conditional_pmfs.is_some()),
            ];
            if let Some((key, _)) = extras.iter().find(|(_, present)| *present) {
                return Err(InstanceError::msg(*key, "only allowed together with omega"));
            }
            resolve_countable(c).map(Instance::Countable)
        }
        (Some(omega), None) => resolve_finite(&doc, omega, max_elements).map(|f| Instance::Finite(Box::new(f))),
    }
}

fn resolve_countable(doc: &CountableDocument) -> Result<CountablePresentation<Rational>, InstanceError> {
    let mut atoms = Vec::with_capacity(doc.atoms.len());
    for (k, a) in doc.atoms.iter().enumerate() {
        let loc = format!("countable.atoms[{k}]");
        let descriptor = match (&a.members, &a.progression) {
            (Some(m), None) => AtomDescriptor::finite(m.iter().copied()),
            (None, Some(p)) => AtomDescriptor::progression(p.start, p.step).map_err(|e| InstanceError::at(&loc, e))?,
            _ => return Err(InstanceError::msg(loc, "give exactly one of members or progression")),
        };
        atoms.push((descriptor, rational(&format!("{loc}.mass"), &a.mass)?));
    }
    let presentation = CountablePresentation::new(atoms).map_err(|e| InstanceError::at("countable", e))?;
    Ok(match &doc.label_prefix {
        Some(prefix) => {
            let prefix = prefix.clone();
            presentation.with_labeler(move |i| format!("{prefix}{i}"))
        }
        None => presentation,
    })
}

fn resolve_finite(doc: &InstanceDocument, omega: &[String], max_elements: usize) -> Result<FiniteInstance, InstanceError> {
    let space = FiniteSpace::with_limit(omega.iter().cloned(), max_elements).map_err(|e| InstanceError::at("omega", e))?;

    let mut generators = GeneratorFamily::empty(&space);
    for (i, g) in doc.generators.iter().enumerate() {
        let set = label_set(&space, &format!("generators[{i}]"), g)?;
        generators.push(set).expect("same space");
    }

    let mut entries = Vec::new();
    for (i, (labels, mass)) in doc.measure.iter().enumerate() {
        let set = label_set(&space, &format!("measure[{i}]"), labels)?;
        entries.push((set, rational(&format!("measure[{i}].mass"), mass)?));
    }

    let random_variable = match &doc.random_variable {
        None => {
            for key in ["codomain", "distribution"] {
                let present = if key == "codomain" { doc.codomain.is_some() } else { doc.distribution.is_some() };
                if present {
                    return Err(InstanceError::msg(key, "requires random_variable"));
                }
            }
            None
        }
        Some(map) => {
            for label in map.keys() {
                space
                    .index_of(label)
                    .map_err(|e| InstanceError::at(format!("random_variable.{label}"), e))?;
            }
            let values: Vec<String> = space
                .labels()
                .iter()
                .map(|l| {
                    map.get(l).cloned().ok_or_else(|| {
                        InstanceError::msg("random_variable", format!("no value for element {l:?}"))
                    })
                })
                .collect::<Result<_, _>>()?;
            let extra = doc.codomain.clone().unwrap_or_default();
            let x = FiniteRandomVariable::from_labels(&space, &values, &extra)
                .map_err(|e| InstanceError::at("codomain", e))?;
            for v in x.codomain().labels() {
                generators.push(x.level_set(x.codomain().index_of(v).expect("own label"))).expect("same space");
            }
            Some(x)
        }
    };

    let distribution = match (&doc.distribution, &random_variable) {
        (Some(map), Some(x)) => {
            let mut masses = vec![Rational::from_count(0); x.codomain().size()];
            for (value, mass) in map {
                let loc = format!("distribution.{value}");
                let v = x.codomain().index_of(value).map_err(|e| InstanceError::at(&loc, e))?;
                masses[v] = rational(&loc, mass)?;
            }
            for (v, mass) in masses.iter().enumerate() {
                if map.contains_key(x.codomain().label(v)) {
                    entries.push((x.level_set(v), mass.clone()));
                }
            }
            Some(Pmf::new(x.codomain(), masses).expect("one mass per value"))
        }
        _ => None,
    };

    let pmf = match &doc.pmf {
        None => None,
        Some(map) => {
            let mut masses = vec![Rational::from_count(0); space.size()];
            for (label, mass) in map {
                let loc = format!("pmf.{label}");
                let e = space.index_of(label).map_err(|err| InstanceError::at(&loc, err))?;
                masses[e] = rational(&loc, mass)?;
            }
            Some(Pmf::new(&space, masses).expect("one mass per element"))
        }
    };

    let conditional_pmfs = match &doc.conditional_pmfs {
        None => None,
        Some(lists) => Some(
            lists
                .iter()
                .enumerate()
                .map(|(k, list)| {
                    list.iter()
                        .enumerate()
                        .map(|(j, s)| rational(&format!("conditional_pmfs[{k}][{j}]"), s))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?,
        ),
    };

    let measure = MeasureAssignment::new_unchecked(&space, entries).expect("same space");
    Ok(FiniteInstance {
        space,
        generators,
        measure,
        random_variable,
        distribution,
        pmf,
        conditional_pmfs,
    })
}

impl FiniteInstance {
    /// Aligns the per-atom mass lists with `atoms`, producing one p.m.f. on
    /// the whole space per atom.
    pub fn conditionals_for(&self, atoms: &AtomPartition) -> Result<Option<Vec<Pmf<Rational>>>, InstanceError> {
        let Some(lists) = &self.conditional_pmfs else {
            return Ok(None);
        };
        if lists.len() != atoms.len() {
            return Err(InstanceError::msg(
                "conditional_pmfs",
                format!("expected {} lists (one per atom), got {}", atoms.len(), lists.len()),
            ));
        }
        let mut out = Vec::with_capacity(lists.len());
        for (k, (list, atom)) in lists.iter().zip(atoms.atoms()).enumerate() {
            if list.len() != atom.len() {
                return Err(InstanceError::msg(
                    format!("conditional_pmfs[{k}]"),
                    format!("atom {atom} has {} elements, got {} masses", atom.len(), list.len()),
                ));
            }
            let mut masses = vec![Rational::from_count(0); self.space.size()];
            for (e, m) in atom.iter().zip(list) {
                masses[e] = m.clone();
            }
            out.push(Pmf::new(&self.space, masses).expect("one mass per element"));
        }
        Ok(Some(out))
    }
}
