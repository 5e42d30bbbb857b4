//! The σ-field generated by an atom partition: enumeration, membership,
//! and recovery of atom masses from a measure given on arbitrary measurable
//! sets.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::atoms::AtomPartition;
use crate::error::{Error, Result};
use crate::linsolve::{Insertion, LinearSystem};
use crate::model::{GeneratorFamily, MeasureAssignment};
use crate::scalar::{exact_sum, Scalar};
use crate::space::{ensure_same_space, FiniteSpace, SubsetMask};
use crate::Rational;

/// Default bound on the number of atoms [`enumerate_field`] accepts.
pub const DEFAULT_FIELD_GUARD: usize = 20;

/// Default bound on the number of sets [`closure_oracle`] may produce.
pub const DEFAULT_ORACLE_LIMIT: usize = 1 << 20;

/// Every member of a finite σ-field, with the atoms generating it.
#[derive(Debug, Clone)]
pub struct EnumeratedField {
    sets: Vec<SubsetMask>,
    atom_basis: AtomPartition,
}

impl EnumeratedField {
    pub fn space(&self) -> &Arc<FiniteSpace> {
        self.atom_basis.space()
    }

    pub fn sets(&self) -> &[SubsetMask] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn atom_basis(&self) -> &AtomPartition {
        &self.atom_basis
    }

    pub fn contains(&self, set: &SubsetMask) -> bool {
        self.sets.contains(set)
    }

    /// The members as an order-independent set.
    pub fn as_set(&self) -> BTreeSet<SubsetMask> {
        self.sets.iter().cloned().collect()
    }
}

/// All `2^k` unions of the `k` atoms, ordered lexicographically by the sorted
/// list of atom indices they contain (`∅, {0}, {0,1}, …, {1}, …`).
pub fn enumerate_field(atoms: &AtomPartition) -> Result<EnumeratedField> {
    enumerate_field_with_guard(atoms, DEFAULT_FIELD_GUARD)
}

pub fn enumerate_field_with_guard(atoms: &AtomPartition, guard: usize) -> Result<EnumeratedField> {
    if atoms.len() > guard {
        return Err(Error::FieldGuardExceeded { atoms: atoms.len(), bound: guard });
    }
    let mut sets = Vec::with_capacity(1 << atoms.len());
    sets.push(SubsetMask::empty(atoms.space()));
    // Depth-first over index lists yields lexicographic order.
    fn extend(atoms: &AtomPartition, start: usize, current: &SubsetMask, out: &mut Vec<SubsetMask>) {
        for k in start..atoms.len() {
            let mut next = current.clone();
            next.union_in_place(atoms.atom(k));
            out.push(next.clone());
            extend(atoms, k + 1, &next, out);
        }
    }
    extend(atoms, 0, &SubsetMask::empty(atoms.space()), &mut sets);
    Ok(EnumeratedField { sets, atom_basis: atoms.clone() })
}

/// Smallest family containing the generators, `∅` and `Ω` that is closed
/// under complement and pairwise union. On a finite space this is `σ(g)`.
/// Sets are returned sorted by member list.
pub fn closure_oracle(g: &GeneratorFamily) -> Result<EnumeratedField> {
    closure_oracle_with_limit(g, DEFAULT_ORACLE_LIMIT)
}

pub fn closure_oracle_with_limit(g: &GeneratorFamily, limit: usize) -> Result<EnumeratedField> {
    let space = g.space();
    let mut seen: HashSet<SubsetMask> = HashSet::new();
    let mut members: Vec<SubsetMask> = Vec::new();
    let mut queue: Vec<SubsetMask> = Vec::new();
    let seeds = [SubsetMask::empty(space), SubsetMask::full(space)];
    for s in seeds.into_iter().chain(g.generators().iter().cloned()) {
        if seen.insert(s.clone()) {
            queue.push(s);
        }
    }
    while let Some(set) = queue.pop() {
        let mut fresh = vec![set.complement()];
        for m in &members {
            let mut u = set.clone();
            u.union_in_place(m);
            fresh.push(u);
        }
        members.push(set);
        for f in fresh {
            if seen.insert(f.clone()) {
                if seen.len() > limit {
                    return Err(Error::OracleGuardExceeded { limit });
                }
                queue.push(f);
            }
        }
    }
    members.sort();
    // Atoms: C_ω is the intersection of all members containing ω.
    let mut minimal = BTreeSet::new();
    for omega in 0..space.size() {
        let mut c = SubsetMask::full(space);
        for m in members.iter().filter(|m| m.contains(omega)) {
            c.intersect_in_place(m);
        }
        minimal.insert(c);
    }
    let atom_basis = AtomPartition::from_blocks(space, minimal.into_iter().collect())?;
    Ok(EnumeratedField { sets: members, atom_basis })
}

/// `A ∈ σ(atoms)` iff `A` is a union of atoms.
pub fn is_measurable(set: &SubsetMask, atoms: &AtomPartition) -> Result<bool> {
    Ok(atoms.decompose(set)?.is_some())
}

/// The probability `P(B_i)` of every atom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomMasses<T: Scalar = Rational> {
    partition: AtomPartition,
    masses: Vec<T>,
}

impl<T: Scalar> AtomMasses<T> {
    /// Requires one nonnegative mass per atom, summing to exactly 1.
    pub fn new(partition: AtomPartition, masses: Vec<T>) -> Result<Self> {
        if masses.len() != partition.len() {
            return Err(Error::LengthMismatch { expected: partition.len(), actual: masses.len() });
        }
        if let Some(k) = masses.iter().position(|m| m.is_negative()) {
            return Err(Error::NegativeAtomMass { atom: k, mass: masses[k].to_fraction_string() });
        }
        let total = exact_sum(&masses);
        if !total.is_one() {
            return Err(Error::InvalidAtomMasses(format!(
                "masses sum to {}, expected 1/1",
                total.to_fraction_string()
            )));
        }
        Ok(Self { partition, masses })
    }

    pub fn partition(&self) -> &AtomPartition {
        &self.partition
    }

    pub fn masses(&self) -> &[T] {
        &self.masses
    }

    pub fn mass(&self, atom: usize) -> &T {
        &self.masses[atom]
    }

    /// `P(A)` for a measurable `A`, as the sum of the masses of its atoms.
    pub fn measure_of(&self, set: &SubsetMask) -> Result<T> {
        match self.partition.decompose(set)? {
            Some(inside) => Ok(inside.into_iter().map(|k| self.masses[k].clone()).sum()),
            None => Err(Error::NotMeasurable(set.to_string())),
        }
    }
}

fn equation_for<T: Scalar>(atoms: &AtomPartition, inside: &[usize]) -> Vec<T> {
    let mut coeffs = vec![T::zero(); atoms.len()];
    for &k in inside {
        coeffs[k] = T::one();
    }
    coeffs
}

/// Solves `Σ_{B_i ⊆ A} x_i = m(A)` for every assigned `A`, together with
/// `Σ x_i = 1`, and returns the unique nonnegative solution.
pub fn solve_atom_masses<T: Scalar>(
    m: &MeasureAssignment<T>,
    atoms: &AtomPartition,
) -> Result<AtomMasses<T>> {
    ensure_same_space(m.space(), atoms.space())?;
    let mut system = LinearSystem::new(atoms.len());
    for (set, mass) in m.entries() {
        let inside = atoms
            .decompose(set)?
            .ok_or_else(|| Error::NotMeasurable(set.to_string()))?;
        let coeffs = equation_for(atoms, &inside);
        if let Insertion::Inconsistent { .. } = system.insert(coeffs.clone(), mass.clone()) {
            let implied = system.evaluate(&coeffs).expect("inconsistent rows are implied");
            return Err(Error::Inconsistent {
                witness: format!(
                    "m({set}) = {} but earlier assignments imply {}",
                    mass.to_fraction_string(),
                    implied.to_fraction_string()
                ),
            });
        }
    }
    let ones = vec![T::one(); atoms.len()];
    if let Insertion::Inconsistent { .. } = system.insert(ones.clone(), T::one()) {
        let implied = system.evaluate(&ones).expect("inconsistent rows are implied");
        return Err(Error::Inconsistent {
            witness: format!(
                "total mass must be 1/1 but the assignments imply {}",
                implied.to_fraction_string()
            ),
        });
    }
    let Some(solution) = system.unique_solution() else {
        return Err(Error::Underdetermined { atoms: system.undetermined() });
    };
    AtomMasses::new(atoms.clone(), solution)
}

/// One violated probability-measure axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MeasureViolation<T: Scalar = Rational> {
    NegativeMass { set: String, mass: T },
    MassAboveOne { set: String, mass: T },
    NotMeasurable { set: String },
    FullSpaceNotOne { mass: T },
    /// The assignment of `set` contradicts the earlier ones.
    Additivity { set: String, assigned: T, implied: T },
    /// The assignments force a total mass other than 1.
    TotalNotOne { total: T },
    /// The assignments force a negative mass on an atom.
    NegativeAtomMass { atom: usize, mass: T },
}

impl<T: Scalar> fmt::Display for MeasureViolation<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NegativeMass { set, mass } => {
                write!(f, "m({set}) = {} is negative", mass.to_fraction_string())
            }
            Self::MassAboveOne { set, mass } => {
                write!(f, "m({set}) = {} exceeds 1", mass.to_fraction_string())
            }
            Self::NotMeasurable { set } => write!(f, "{set} is not measurable"),
            Self::FullSpaceNotOne { mass } => {
                write!(f, "m(Ω) = {}, expected 1/1", mass.to_fraction_string())
            }
            Self::Additivity { set, assigned, implied } => write!(
                f,
                "additivity fails: m({set}) = {} but the other assignments imply {}",
                assigned.to_fraction_string(),
                implied.to_fraction_string()
            ),
            Self::TotalNotOne { total } => {
                write!(f, "total {} ≠ 1", total.to_fraction_string())
            }
            Self::NegativeAtomMass { atom, mass } => write!(
                f,
                "atom {atom} is forced to negative mass {}",
                mass.to_fraction_string()
            ),
        }
    }
}

/// Outcome of [`verify_measure`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasureReport<T: Scalar = Rational> {
    pub violations: Vec<MeasureViolation<T>>,
    /// Atom masses pinned down by the assignment (and total mass 1), `None`
    /// where the assignment leaves them free.
    pub atom_masses: Vec<Option<T>>,
}

impl<T: Scalar> MeasureReport<T> {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn undetermined_atoms(&self) -> Vec<usize> {
        self.atom_masses
            .iter()
            .enumerate()
            .filter(|(_, m)| m.is_none())
            .map(|(k, _)| k)
            .collect()
    }
}

/// Checks nonnegativity, total mass 1 and additivity over atom decompositions.
/// Never fails; problems are listed in the report.
pub fn verify_measure<T: Scalar>(m: &MeasureAssignment<T>, atoms: &AtomPartition) -> MeasureReport<T> {
    let mut violations = Vec::new();
    if ensure_same_space(m.space(), atoms.space()).is_err() {
        violations.push(MeasureViolation::NotMeasurable { set: "(foreign space)".into() });
        return MeasureReport { violations, atom_masses: vec![None; atoms.len()] };
    }
    let mut system = LinearSystem::new(atoms.len());
    let mut full_space_assigned = false;
    for (set, mass) in m.entries() {
        let name = set.to_string();
        if mass.is_negative() {
            violations.push(MeasureViolation::NegativeMass { set: name.clone(), mass: mass.clone() });
        } else if *mass > T::one() {
            violations.push(MeasureViolation::MassAboveOne { set: name.clone(), mass: mass.clone() });
        }
        if set.is_full() {
            full_space_assigned = true;
            if !mass.is_one() {
                violations.push(MeasureViolation::FullSpaceNotOne { mass: mass.clone() });
            }
        }
        let Some(inside) = atoms.decompose(set).expect("space checked") else {
            violations.push(MeasureViolation::NotMeasurable { set: name });
            continue;
        };
        let coeffs = equation_for::<T>(atoms, &inside);
        if let Insertion::Inconsistent { .. } = system.insert(coeffs.clone(), mass.clone()) {
            let implied = system.evaluate(&coeffs).expect("inconsistent rows are implied");
            violations.push(MeasureViolation::Additivity {
                set: name,
                assigned: mass.clone(),
                implied,
            });
        }
    }
    let ones = vec![T::one(); atoms.len()];
    match system.evaluate(&ones) {
        Some(total) if !total.is_one() => {
            if !full_space_assigned {
                violations.push(MeasureViolation::TotalNotOne { total });
            }
        }
        _ => {
            system.insert(ones, T::one());
        }
    }
    let atom_masses: Vec<Option<T>> = (0..atoms.len()).map(|k| system.determined_value(k)).collect();
    for (atom, mass) in atom_masses.iter().enumerate() {
        if let Some(mass) = mass {
            if mass.is_negative() {
                violations.push(MeasureViolation::NegativeAtomMass { atom, mass: mass.clone() });
            }
        }
    }
    MeasureReport { violations, atom_masses }
}
