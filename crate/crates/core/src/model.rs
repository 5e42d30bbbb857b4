//! Generator families, measure assignments and probability mass functions on
//! finite spaces.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::{exact_sum, Scalar};
use crate::space::{ensure_same_space, FiniteSpace, SubsetMask};
use crate::Rational;

/// A finite list of subsets generating a σ-field.
#[derive(Debug, Clone)]
pub struct GeneratorFamily {
    space: Arc<FiniteSpace>,
    generators: Vec<SubsetMask>,
}

impl GeneratorFamily {
    pub fn new(space: &Arc<FiniteSpace>, generators: Vec<SubsetMask>) -> Result<Self> {
        for g in &generators {
            ensure_same_space(space, g.space())?;
        }
        Ok(Self { space: Arc::clone(space), generators })
    }

    pub fn empty(space: &Arc<FiniteSpace>) -> Self {
        Self { space: Arc::clone(space), generators: Vec::new() }
    }

    pub fn space(&self) -> &Arc<FiniteSpace> {
        &self.space
    }

    pub fn generators(&self) -> &[SubsetMask] {
        &self.generators
    }

    pub fn push(&mut self, generator: SubsetMask) -> Result<()> {
        ensure_same_space(&self.space, generator.space())?;
        self.generators.push(generator);
        Ok(())
    }

    /// Deduplicated generators in canonical (sorted member list) order.
    pub fn normalized(&self) -> Self {
        let unique: BTreeSet<SubsetMask> = self.generators.iter().cloned().collect();
        Self { space: Arc::clone(&self.space), generators: unique.into_iter().collect() }
    }
}

/// Probabilities assigned to some measurable sets.
#[derive(Debug, Clone)]
pub struct MeasureAssignment<T: Scalar = Rational> {
    space: Arc<FiniteSpace>,
    entries: Vec<(SubsetMask, T)>,
}

impl<T: Scalar> MeasureAssignment<T> {
    /// Checks that every mass lies in `[0, 1]` and that the full space, if
    /// assigned, has mass 1.
    pub fn new(space: &Arc<FiniteSpace>, entries: Vec<(SubsetMask, T)>) -> Result<Self> {
        let m = Self::new_unchecked(space, entries)?;
        for (set, mass) in &m.entries {
            if !mass.is_probability() {
                return Err(Error::MassOutOfRange {
                    set: set.to_string(),
                    mass: mass.to_fraction_string(),
                });
            }
            if set.is_full() && !mass.is_one() {
                return Err(Error::FullSpaceMassNotOne(mass.to_fraction_string()));
            }
        }
        Ok(m)
    }

    /// Skips the range checks; only the space of every set is verified. Used
    /// for diagnostics, where out-of-range masses should be reported rather
    /// than rejected.
    pub fn new_unchecked(space: &Arc<FiniteSpace>, entries: Vec<(SubsetMask, T)>) -> Result<Self> {
        for (set, _) in &entries {
            ensure_same_space(space, set.space())?;
        }
        Ok(Self { space: Arc::clone(space), entries })
    }

    pub fn space(&self) -> &Arc<FiniteSpace> {
        &self.space
    }

    pub fn entries(&self) -> &[(SubsetMask, T)] {
        &self.entries
    }
}

/// A point-mass function on a finite space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pmf<T: Scalar = Rational> {
    space: Arc<FiniteSpace>,
    masses: Vec<T>,
}

impl<T: Scalar> Pmf<T> {
    /// Only the length is checked; use [`pmf_validate`] for the p.m.f.
    /// conditions.
    pub fn new(space: &Arc<FiniteSpace>, masses: Vec<T>) -> Result<Self> {
        if masses.len() != space.size() {
            return Err(Error::LengthMismatch { expected: space.size(), actual: masses.len() });
        }
        Ok(Self { space: Arc::clone(space), masses })
    }

    /// Like [`Pmf::new`] but fails unless the masses form a valid p.m.f.
    pub fn validated(space: &Arc<FiniteSpace>, masses: Vec<T>) -> Result<Self> {
        let p = Self::new(space, masses)?;
        let report = pmf_validate(&p);
        if report.is_valid() {
            Ok(p)
        } else {
            Err(Error::InvalidPmf(report.to_string()))
        }
    }

    pub fn uniform(space: &Arc<FiniteSpace>) -> Self {
        let share = T::one() / T::from_count(space.size() as u64);
        Self { space: Arc::clone(space), masses: vec![share; space.size()] }
    }

    pub fn point_mass(space: &Arc<FiniteSpace>, index: usize) -> Result<Self> {
        if index >= space.size() {
            return Err(Error::IndexOutOfRange { index, size: space.size() });
        }
        let mut masses = vec![T::zero(); space.size()];
        masses[index] = T::one();
        Ok(Self { space: Arc::clone(space), masses })
    }

    pub fn space(&self) -> &Arc<FiniteSpace> {
        &self.space
    }

    pub fn masses(&self) -> &[T] {
        &self.masses
    }

    pub fn mass(&self, index: usize) -> &T {
        &self.masses[index]
    }

    pub fn total(&self) -> T {
        exact_sum(&self.masses)
    }
}

/// Violations of the p.m.f. conditions. Empty means valid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PmfReport<T: Scalar = Rational> {
    /// Elements with negative mass, with their masses.
    pub negative: Vec<(usize, T)>,
    /// The exact total when it differs from 1.
    pub total_mismatch: Option<T>,
}

impl<T: Scalar> PmfReport<T> {
    pub fn is_valid(&self) -> bool {
        self.negative.is_empty() && self.total_mismatch.is_none()
    }
}

impl<T: Scalar> fmt::Display for PmfReport<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        let mut parts = Vec::new();
        for (i, m) in &self.negative {
            parts.push(format!("element {i} has negative mass {}", m.to_fraction_string()));
        }
        if let Some(t) = &self.total_mismatch {
            parts.push(format!("total is {}, expected 1/1", t.to_fraction_string()));
        }
        write!(f, "{}", parts.join("; "))
    }
}

/// Checks nonnegativity of every mass and that the masses sum to exactly 1.
pub fn pmf_validate<T: Scalar>(p: &Pmf<T>) -> PmfReport<T> {
    let negative = p
        .masses
        .iter()
        .enumerate()
        .filter(|(_, m)| m.is_negative())
        .map(|(i, m)| (i, m.clone()))
        .collect();
    let total = p.total();
    PmfReport {
        negative,
        total_mismatch: (!total.is_one()).then_some(total),
    }
}

/// `P(A) = Σ_{ω ∈ A} p(ω)`.
pub fn pmf_to_measure<T: Scalar>(p: &Pmf<T>, set: &SubsetMask) -> Result<T> {
    ensure_same_space(&p.space, set.space())?;
    Ok(set.iter().fold(T::zero(), |acc, i| acc + p.masses[i].clone()))
}
