//! Countably infinite sample spaces given by presentations.
//!
//! Elements are natural-number indices. A presentation lists finitely many
//! atoms, each either an explicit finite set of indices or an infinite set
//! with an enumeration `φ: atom → {1, 2, 3, …}`. Masses inside an atom are
//! split uniformly (finite atom) or dyadically, `P(B)·2^{-φ(ω)}` (infinite
//! atom). Nothing is ever enumerated eagerly.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;

use crate::atoms::AtomPartition;
use crate::error::{Error, Result};
use crate::extension::DofReport;
use crate::field::AtomMasses;
use crate::scalar::{exact_sum, Scalar};
use crate::space::{FiniteSpace, SubsetMask};
use crate::Rational;

/// A bijection between an infinite atom and `{1, 2, 3, …}`.
pub trait Enumeration: fmt::Debug + Send + Sync {
    /// Rank of `index` within the atom (starting at 1), or `None` when
    /// `index` is not a member.
    fn rank_of(&self, index: u64) -> Option<u64>;

    /// The member of rank `rank` (`rank ≥ 1`).
    fn member_at(&self, rank: u64) -> u64;

    fn describe(&self) -> String;

    /// The same enumeration as a progression, when it is one. Used to check
    /// disjointness at construction time.
    fn as_progression(&self) -> Option<Progression> {
        None
    }
}

/// The indices `start, start + step, start + 2·step, …`, i.e. all
/// `i ≥ start` with `i ≡ start (mod step)`, ranked in increasing order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Progression {
    start: u64,
    step: u64,
}

impl Progression {
    pub fn new(start: u64, step: u64) -> Result<Self> {
        if step == 0 {
            return Err(Error::InvalidPresentation("progression step must be positive".into()));
        }
        Ok(Self { start, step })
    }

    pub fn start(&self) -> u64 {
        self.start
    }

    pub fn step(&self) -> u64 {
        self.step
    }

    fn intersects(&self, other: &Progression) -> bool {
        let g = self.step.gcd(&other.step);
        self.start % g == other.start % g
    }
}

impl Enumeration for Progression {
    fn rank_of(&self, index: u64) -> Option<u64> {
        if index < self.start || (index - self.start) % self.step != 0 {
            return None;
        }
        Some((index - self.start) / self.step + 1)
    }

    fn member_at(&self, rank: u64) -> u64 {
        self.start + (rank - 1) * self.step
    }

    fn describe(&self) -> String {
        format!("{{i ≥ {} : i ≡ {} mod {}}}", self.start, self.start % self.step, self.step)
    }

    fn as_progression(&self) -> Option<Progression> {
        Some(*self)
    }
}

#[derive(Debug, Clone)]
pub enum AtomDescriptor {
    /// Explicit members, kept in increasing order.
    Finite(Vec<u64>),
    Infinite(Arc<dyn Enumeration>),
}

impl AtomDescriptor {
    pub fn finite(members: impl IntoIterator<Item = u64>) -> Self {
        let mut members: Vec<u64> = members.into_iter().collect();
        members.sort_unstable();
        Self::Finite(members)
    }

    pub fn progression(start: u64, step: u64) -> Result<Self> {
        Ok(Self::Infinite(Arc::new(Progression::new(start, step)?)))
    }

    /// `None` for infinite atoms.
    pub fn size(&self) -> Option<u64> {
        match self {
            Self::Finite(m) => Some(m.len() as u64),
            Self::Infinite(_) => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Self::Infinite(_))
    }

    fn rank_of(&self, index: u64) -> Option<u64> {
        match self {
            Self::Finite(m) => m.binary_search(&index).ok().map(|p| p as u64 + 1),
            Self::Infinite(e) => e.rank_of(index),
        }
    }

    /// The first `n` members in enumeration order (fewer for small finite
    /// atoms).
    pub fn first_members(&self, n: u64) -> Vec<u64> {
        match self {
            Self::Finite(m) => m.iter().copied().take(n as usize).collect(),
            Self::Infinite(e) => (1..=n).map(|r| e.member_at(r)).collect(),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Self::Finite(m) => {
                let items: Vec<String> = m.iter().map(u64::to_string).collect();
                format!("{{{}}}", items.join(","))
            }
            Self::Infinite(e) => e.describe(),
        }
    }
}

type Labeler = Arc<dyn Fn(u64) -> String + Send + Sync>;
type Indexer = Arc<dyn Fn(u64) -> Option<usize> + Send + Sync>;

/// A countable sample space with finitely many atoms and their masses.
#[derive(Clone)]
pub struct CountablePresentation<T: Scalar = Rational> {
    atoms: Vec<AtomDescriptor>,
    masses: Vec<T>,
    labeler: Option<Labeler>,
    indexer: Option<Indexer>,
}

impl<T: Scalar> fmt::Debug for CountablePresentation<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CountablePresentation")
            .field("atoms", &self.atoms)
            .field("masses", &self.masses)
            .field("custom_labeler", &self.labeler.is_some())
            .field("custom_indexer", &self.indexer.is_some())
            .finish()
    }
}

fn overlap(a: &AtomDescriptor, b: &AtomDescriptor) -> Option<bool> {
    match (a, b) {
        (AtomDescriptor::Finite(m), other) | (other, AtomDescriptor::Finite(m)) => {
            Some(m.iter().any(|&i| other.rank_of(i).is_some()))
        }
        (AtomDescriptor::Infinite(x), AtomDescriptor::Infinite(y)) => {
            Some(x.as_progression()?.intersects(&y.as_progression()?))
        }
    }
}

impl<T: Scalar> CountablePresentation<T> {
    /// Checks that there is at least one atom, finite atoms are non-empty
    /// without repeats, atoms are pairwise disjoint (where decidable: custom
    /// enumerations are checked lazily on query), and masses are nonnegative
    /// with sum exactly 1.
    pub fn new(atoms: Vec<(AtomDescriptor, T)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidPresentation("at least one atom is required".into()));
        }
        let (atoms, masses): (Vec<_>, Vec<_>) = atoms.into_iter().unzip();
        for (k, atom) in atoms.iter().enumerate() {
            if let AtomDescriptor::Finite(m) = atom {
                if m.is_empty() {
                    return Err(Error::InvalidPresentation(format!("atom {k} is empty")));
                }
                if m.windows(2).any(|w| w[0] == w[1]) {
                    return Err(Error::InvalidPresentation(format!("atom {k} repeats a member")));
                }
            }
            for (j, other) in atoms.iter().enumerate().take(k) {
                if overlap(atom, other) == Some(true) {
                    return Err(Error::InvalidPresentation(format!("atoms {j} and {k} overlap")));
                }
            }
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
        Ok(Self { atoms, masses, labeler: None, indexer: None })
    }

    /// `Ω = ℕ = {1, 2, …}` as one infinite atom of mass 1 with `φ` the
    /// identity: the dyadic split is the geometric(1/2) p.m.f.
    pub fn geometric() -> Self {
        let atom = AtomDescriptor::progression(1, 1).expect("positive step");
        Self::new(vec![(atom, T::one())]).expect("valid presentation")
    }

    pub fn with_labeler(mut self, labeler: impl Fn(u64) -> String + Send + Sync + 'static) -> Self {
        self.labeler = Some(Arc::new(labeler));
        self
    }

    /// Installs a user-supplied element → atom map. Every query cross-checks
    /// it against the atom descriptors.
    pub fn with_indexer(mut self, indexer: impl Fn(u64) -> Option<usize> + Send + Sync + 'static) -> Self {
        self.indexer = Some(Arc::new(indexer));
        self
    }

    pub fn atoms(&self) -> &[AtomDescriptor] {
        &self.atoms
    }

    pub fn masses(&self) -> &[T] {
        &self.masses
    }

    fn atom_checked(&self, atom: usize) -> Result<&AtomDescriptor> {
        self.atoms
            .get(atom)
            .ok_or(Error::AtomOutOfRange { index: atom, count: self.atoms.len() })
    }

    pub fn label(&self, index: u64) -> String {
        match &self.labeler {
            Some(f) => f(index),
            None => index.to_string(),
        }
    }

    /// The atom containing `index` and the rank of `index` within it.
    pub fn locate(&self, index: u64) -> Result<(usize, u64)> {
        let mut found = None;
        for (k, atom) in self.atoms.iter().enumerate() {
            if let Some(rank) = atom.rank_of(index) {
                if let Some((first, _)) = found {
                    return Err(Error::IndexerInconsistent {
                        index,
                        reason: format!("claimed by atoms {first} and {k}"),
                    });
                }
                if rank == 0 {
                    return Err(Error::IndexerInconsistent { index, reason: "rank must start at 1".into() });
                }
                if let AtomDescriptor::Infinite(e) = atom {
                    if e.member_at(rank) != index {
                        return Err(Error::IndexerInconsistent {
                            index,
                            reason: format!("enumeration of atom {k} is not injective at rank {rank}"),
                        });
                    }
                }
                found = Some((k, rank));
            }
        }
        let Some((atom, rank)) = found else {
            return Err(Error::NotInPresentation(index));
        };
        if let Some(indexer) = &self.indexer {
            let claimed = indexer(index);
            if claimed != Some(atom) {
                return Err(Error::IndexerInconsistent {
                    index,
                    reason: format!("indexer says {claimed:?}, descriptors say atom {atom}"),
                });
            }
        }
        Ok((atom, rank))
    }

    pub fn atom_of(&self, index: u64) -> Result<usize> {
        Ok(self.locate(index)?.0)
    }

    /// `p(ω)`: `P(B)/|B|` in a finite atom, `P(B)·2^{-φ(ω)}` in an infinite
    /// one.
    pub fn lazy_pmf_eval(&self, index: u64) -> Result<T> {
        let (atom, rank) = self.locate(index)?;
        let mass = self.masses[atom].clone();
        Ok(match &self.atoms[atom] {
            AtomDescriptor::Finite(m) => mass / T::from_count(m.len() as u64),
            AtomDescriptor::Infinite(_) => mass * T::dyadic(rank),
        })
    }

    /// Sum of `p` over the first `n` members of the atom.
    pub fn partial_sum(&self, atom: usize, n: u64) -> Result<T> {
        let descriptor = self.atom_checked(atom)?;
        let mass = self.masses[atom].clone();
        Ok(match descriptor {
            AtomDescriptor::Finite(m) => {
                let size = m.len() as u64;
                mass * T::from_count(n.min(size)) / T::from_count(size)
            }
            AtomDescriptor::Infinite(_) => mass * (T::one() - T::dyadic(n)),
        })
    }

    /// Mass of the atom beyond its first `n` members, `P(B)·2^{-n}`.
    pub fn tail_bound(&self, atom: usize, n: u64) -> Result<T> {
        match self.atom_checked(atom)? {
            AtomDescriptor::Finite(_) => Err(Error::TailUndefinedForFiniteAtom(atom)),
            AtomDescriptor::Infinite(_) => Ok(self.masses[atom].clone() * T::dyadic(n)),
        }
    }

    /// `P(A)` for the union `A` of the selected atoms.
    pub fn measure_of_presented_set(&self, atom_subset: &[usize]) -> Result<T> {
        let mut selected = vec![false; self.atoms.len()];
        for &k in atom_subset {
            self.atom_checked(k)?;
            selected[k] = true;
        }
        Ok(exact_sum(self.masses.iter().zip(&selected).filter(|(_, s)| **s).map(|(m, _)| m)))
    }

    pub fn degrees_of_freedom(&self) -> DofReport {
        DofReport::from_atoms(self.atoms.iter().zip(&self.masses).map(|(a, m)| (a.size(), m.is_positive())))
    }

    /// Turns a presentation whose atoms are all finite into a finite space
    /// (elements in increasing index order) with its atom partition and
    /// masses.
    pub fn materialize(&self) -> Result<(Arc<FiniteSpace>, AtomMasses<T>)> {
        let mut members = Vec::new();
        for (k, atom) in self.atoms.iter().enumerate() {
            match atom {
                AtomDescriptor::Finite(m) => members.extend(m.iter().map(|&i| (i, k))),
                AtomDescriptor::Infinite(_) => {
                    return Err(Error::InvalidPresentation(format!("atom {k} is infinite")))
                }
            }
        }
        members.sort_unstable();
        let space = FiniteSpace::new(members.iter().map(|&(i, _)| self.label(i)))?;
        let mut blocks = vec![Vec::new(); self.atoms.len()];
        for (pos, &(_, k)) in members.iter().enumerate() {
            blocks[k].push(pos);
        }
        let blocks = blocks
            .into_iter()
            .map(|b| SubsetMask::from_indices(&space, b))
            .collect::<Result<Vec<_>>>()?;
        // Partition order follows least element; carry masses along.
        let partition = AtomPartition::from_blocks(&space, blocks.clone())?;
        let masses = partition
            .atoms()
            .iter()
            .map(|a| self.masses[blocks.iter().position(|b| b == a).expect("same blocks")].clone())
            .collect();
        Ok((Arc::clone(&space), AtomMasses::new(partition, masses)?))
    }
}
