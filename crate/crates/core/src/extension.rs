//! Extensions of a measure on `σ(atoms)` to the full power set.
//!
//! Every extension is determined by a conditional p.m.f. `q_i` on each atom
//! `B_i`: `p(ω) = P(B_i) · q_i(ω)`. The canonical extension takes each `q_i`
//! uniform.

use std::fmt;

use crate::atoms::{atoms_by_refinement, AtomPartition};
use crate::error::{Error, Result};
use crate::field::{enumerate_field_with_guard, solve_atom_masses, AtomMasses, DEFAULT_FIELD_GUARD};
use crate::model::{pmf_to_measure, GeneratorFamily, MeasureAssignment, Pmf};
use crate::scalar::Scalar;
use crate::space::ensure_same_space;
use crate::Rational;

/// Atom masses plus, optionally, one conditional p.m.f. per atom.
#[derive(Debug, Clone)]
pub struct ExtensionSpec<T: Scalar = Rational> {
    pub masses: AtomMasses<T>,
    /// `per_atom_pmfs[i]` is a p.m.f. on the whole space supported on atom
    /// `i`. `None` means uniform on every atom.
    pub per_atom_pmfs: Option<Vec<Pmf<T>>>,
}

/// `p(ω) = P(B_i) / |B_i|` for `ω ∈ B_i`.
pub fn canonical_extension<T: Scalar>(masses: &AtomMasses<T>) -> Pmf<T> {
    let atoms = masses.partition();
    let space = atoms.space();
    let mut p = vec![T::zero(); space.size()];
    for (k, atom) in atoms.atoms().iter().enumerate() {
        let share = masses.mass(k).clone() / T::from_count(atom.len() as u64);
        for e in atom.iter() {
            p[e] = share.clone();
        }
    }
    Pmf::new(space, p).expect("one mass per element")
}

/// The uniform conditional p.m.f. on atom `atom`.
pub fn uniform_conditional<T: Scalar>(atoms: &AtomPartition, atom: usize) -> Pmf<T> {
    let block = atoms.atom(atom);
    let share = T::one() / T::from_count(block.len() as u64);
    let mut q = vec![T::zero(); atoms.space().size()];
    for e in block.iter() {
        q[e] = share.clone();
    }
    Pmf::new(atoms.space(), q).expect("one mass per element")
}

fn check_conditional<T: Scalar>(atoms: &AtomPartition, atom: usize, q: &Pmf<T>) -> Result<()> {
    let fail = |reason: String| Error::InvalidConditional { atom, reason };
    ensure_same_space(atoms.space(), q.space()).map_err(|e| fail(e.to_string()))?;
    let block = atoms.atom(atom);
    let mut total = T::zero();
    for (e, mass) in q.masses().iter().enumerate() {
        if mass.is_negative() {
            return Err(fail(format!(
                "negative mass {} at {}",
                mass.to_fraction_string(),
                atoms.space().label(e)
            )));
        }
        if !block.contains(e) {
            if !mass.is_zero() {
                return Err(fail(format!("supported off its atom at {}", atoms.space().label(e))));
            }
            continue;
        }
        total = total + mass.clone();
    }
    if !total.is_one() {
        return Err(fail(format!("sums to {}, expected 1/1", total.to_fraction_string())));
    }
    Ok(())
}

/// `p(ω) = P(B_i) · q_i(ω)` for `ω ∈ B_i`. Without conditionals this is the
/// canonical extension.
pub fn parametrized_extension<T: Scalar>(spec: &ExtensionSpec<T>) -> Result<Pmf<T>> {
    let Some(conditionals) = &spec.per_atom_pmfs else {
        return Ok(canonical_extension(&spec.masses));
    };
    let atoms = spec.masses.partition();
    if conditionals.len() != atoms.len() {
        return Err(Error::LengthMismatch { expected: atoms.len(), actual: conditionals.len() });
    }
    let mut p = vec![T::zero(); atoms.space().size()];
    for (k, q) in conditionals.iter().enumerate() {
        check_conditional(atoms, k, q)?;
        let mass = spec.masses.mass(k);
        for e in atoms.atom(k).iter() {
            p[e] = mass.clone() * q.mass(e).clone();
        }
    }
    Pmf::new(atoms.space(), p)
}

/// Restricts `p` to `σ(atoms)`: each atom gets the sum of `p` over it.
pub fn restrict_pmf<T: Scalar>(p: &Pmf<T>, atoms: &AtomPartition) -> Result<AtomMasses<T>> {
    ensure_same_space(p.space(), atoms.space())?;
    let masses = atoms
        .atoms()
        .iter()
        .map(|a| pmf_to_measure(p, a))
        .collect::<Result<Vec<T>>>()?;
    AtomMasses::new(atoms.clone(), masses)
}

/// Splits `p` into its atom masses and the conditional p.m.f. on each atom.
/// The conditional is `None` on atoms of mass zero, where it is not
/// determined by `p`.
pub fn decompose_pmf<T: Scalar>(
    p: &Pmf<T>,
    atoms: &AtomPartition,
) -> Result<(AtomMasses<T>, Vec<Option<Pmf<T>>>)> {
    let masses = restrict_pmf(p, atoms)?;
    let conditionals = (0..atoms.len())
        .map(|k| {
            let mass = masses.mass(k);
            if mass.is_zero() {
                return None;
            }
            let mut q = vec![T::zero(); atoms.space().size()];
            for e in atoms.atom(k).iter() {
                q[e] = p.mass(e).clone() / mass.clone();
            }
            Some(Pmf::new(atoms.space(), q).expect("one mass per element"))
        })
        .collect();
    Ok((masses, conditionals))
}

/// A dimension count: finite, or countably infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Dof {
    Finite(u64),
    CountablyInfinite,
}

impl fmt::Display for Dof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dof::Finite(n) => write!(f, "{n}"),
            Dof::CountablyInfinite => write!(f, "countably infinite"),
        }
    }
}

/// Degrees of freedom in choosing an extension.
///
/// `parametrization` counts `Σ (|B_i| − 1)` over all atoms: the dimension of
/// the family `(q_i)`. `distinct_extensions` counts only atoms of positive
/// mass, since the conditional on a null atom does not change `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DofReport {
    pub parametrization: Dof,
    pub distinct_extensions: Dof,
}

impl DofReport {
    /// Builds the report from `(size, has_positive_mass)` pairs; a size of
    /// `None` marks a countably infinite atom.
    pub fn from_atoms(atoms: impl IntoIterator<Item = (Option<u64>, bool)>) -> Self {
        fn add(acc: Dof, size: Option<u64>) -> Dof {
            match (acc, size) {
                (Dof::Finite(a), Some(s)) => Dof::Finite(a + s.saturating_sub(1)),
                _ => Dof::CountablyInfinite,
            }
        }
        let mut parametrization = Dof::Finite(0);
        let mut distinct_extensions = Dof::Finite(0);
        for (size, positive) in atoms {
            parametrization = add(parametrization, size);
            if positive {
                distinct_extensions = add(distinct_extensions, size);
            }
        }
        Self { parametrization, distinct_extensions }
    }
}

impl fmt::Display for DofReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parametrization dof {}, distinct-extension dof {}",
            self.parametrization, self.distinct_extensions
        )
    }
}

pub fn degrees_of_freedom<T: Scalar>(atoms: &AtomPartition, masses: &AtomMasses<T>) -> Result<DofReport> {
    if atoms != masses.partition() {
        return Err(Error::InvalidAtomMasses("masses belong to a different partition".into()));
    }
    Ok(DofReport::from_atoms(
        atoms
            .atoms()
            .iter()
            .zip(masses.masses())
            .map(|(a, m)| (Some(a.len() as u64), m.is_positive())),
    ))
}

/// Result of [`extension_roundtrip_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundtripReport<T: Scalar = Rational> {
    pub atoms: AtomPartition,
    pub masses: AtomMasses<T>,
    pub extension: Pmf<T>,
    /// Number of field sets compared.
    pub sets_checked: usize,
    /// First set where `Σ_{ω∈A} p(ω)` differs from `P(A)`, with both values.
    pub first_disagreement: Option<(String, T, T)>,
}

impl<T: Scalar> RoundtripReport<T> {
    pub fn agrees(&self) -> bool {
        self.first_disagreement.is_none()
    }
}

/// Atoms, atom masses, canonical extension, then a comparison of the
/// extension against the measure on every set of the field and on every
/// assigned set.
pub fn extension_roundtrip_check<T: Scalar>(
    m: &MeasureAssignment<T>,
    g: &GeneratorFamily,
) -> Result<RoundtripReport<T>> {
    extension_roundtrip_check_with_guard(m, g, DEFAULT_FIELD_GUARD)
}

pub fn extension_roundtrip_check_with_guard<T: Scalar>(
    m: &MeasureAssignment<T>,
    g: &GeneratorFamily,
    guard: usize,
) -> Result<RoundtripReport<T>> {
    let atoms = atoms_by_refinement(g);
    let masses = solve_atom_masses(m, &atoms)?;
    let extension = canonical_extension(&masses);
    let field = enumerate_field_with_guard(&atoms, guard)?;
    let mut first_disagreement = None;
    let assigned = m.entries().iter().map(|(s, v)| (s, v.clone()));
    let derived = field.sets().iter().map(|s| (s, masses.measure_of(s).expect("field sets are measurable")));
    let mut sets_checked = 0;
    for (set, expected) in assigned.chain(derived) {
        sets_checked += 1;
        let got = pmf_to_measure(&extension, set)?;
        if got != expected {
            first_disagreement = Some((set.to_string(), expected, got));
            break;
        }
    }
    Ok(RoundtripReport { atoms, masses, extension, sets_checked, first_disagreement })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::pmf_validate;
    use crate::space::{FiniteSpace, SubsetMask};
    use num_traits::Zero;
    use std::sync::Arc;

    fn q(s: &str) -> Rational {
        Rational::parse_exact(s).unwrap()
    }

    fn die_masses(evens: &str, odds: &str) -> (Arc<FiniteSpace>, AtomMasses) {
        let space = FiniteSpace::one_based(6).unwrap();
        let ev = SubsetMask::from_labels(&space, ["2", "4", "6"]).unwrap();
        let atoms = atoms_by_refinement(&GeneratorFamily::new(&space, vec![ev]).unwrap());
        // atoms[0] = odds, atoms[1] = evens
        (space, AtomMasses::new(atoms, vec![q(odds), q(evens)]).unwrap())
    }

    fn cond(space: &Arc<FiniteSpace>, masses: &[&str]) -> Pmf {
        Pmf::new(space, masses.iter().map(|m| q(m)).collect()).unwrap()
    }

    #[test]
    fn canonical_examples() {
        let (_, masses) = die_masses("1/3", "2/3");
        let p = canonical_extension(&masses);
        let expected: Vec<_> = ["2/9", "1/9", "2/9", "1/9", "2/9", "1/9"].iter().map(|m| q(m)).collect();
        assert_eq!(p.masses(), &expected[..]);
        assert!(pmf_validate(&p).is_valid());

        let abc = FiniteSpace::new(["a", "b", "c"]).unwrap();
        let singles = AtomPartition::singletons(&abc);
        let m = AtomMasses::new(singles, vec![q("1/5"), q("3/5"), q("1/5")]).unwrap();
        assert_eq!(canonical_extension(&m).masses(), m.masses());

        let m = AtomMasses::new(AtomPartition::trivial(&abc), vec![q("1")]).unwrap();
        assert_eq!(canonical_extension(&m), Pmf::uniform(&abc));
    }

    #[test]
    fn parametrized_examples() {
        let (space, masses) = die_masses("1/3", "2/3");
        let q_odds = cond(&space, &["1/3", "0", "1/3", "0", "1/3", "0"]);
        let q_evens = cond(&space, &["0", "1", "0", "0", "0", "0"]);
        let spec = ExtensionSpec { masses: masses.clone(), per_atom_pmfs: Some(vec![q_odds, q_evens]) };
        let p = parametrized_extension(&spec).unwrap();
        let expected: Vec<_> = ["2/9", "1/3", "2/9", "0", "2/9", "0"].iter().map(|m| q(m)).collect();
        assert_eq!(p.masses(), &expected[..]);

        let uniform = ExtensionSpec {
            masses: masses.clone(),
            per_atom_pmfs: Some((0..2).map(|k| uniform_conditional(masses.partition(), k)).collect()),
        };
        assert_eq!(parametrized_extension(&uniform).unwrap(), canonical_extension(&masses));

        // Null atom: its conditional does not matter.
        let (space, null_evens) = die_masses("0", "1");
        let a = ExtensionSpec {
            masses: null_evens.clone(),
            per_atom_pmfs: Some(vec![
                uniform_conditional(null_evens.partition(), 0),
                cond(&space, &["0", "1", "0", "0", "0", "0"]),
            ]),
        };
        let p = parametrized_extension(&a).unwrap();
        assert_eq!(p, canonical_extension(&null_evens));
        assert!(p.mass(1).is_zero());
    }

    #[test]
    fn parametrized_rejects_bad_conditionals() {
        let (space, masses) = die_masses("1/3", "2/3");
        let odd_ok = uniform_conditional(masses.partition(), 0);
        let off_atom = cond(&space, &["1", "0", "0", "0", "0", "0"]);
        let spec = ExtensionSpec { masses: masses.clone(), per_atom_pmfs: Some(vec![odd_ok.clone(), off_atom]) };
        let err = parametrized_extension(&spec).unwrap_err();
        assert!(matches!(err, Error::InvalidConditional { atom: 1, .. }), "{err}");
        assert!(err.to_string().contains("supported off its atom"));

        let short = cond(&space, &["0", "1/2", "0", "1/4", "0", "0"]);
        let spec = ExtensionSpec { masses, per_atom_pmfs: Some(vec![odd_ok, short]) };
        let err = parametrized_extension(&spec).unwrap_err();
        assert!(err.to_string().contains("sums to 3/4"), "{err}");
    }

    #[test]
    fn restrict_examples() {
        let (space, masses) = die_masses("1/3", "2/3");
        let atoms = masses.partition().clone();
        let half = restrict_pmf(&Pmf::<Rational>::uniform(&space), &atoms).unwrap();
        assert_eq!(half.masses(), &[q("1/2"), q("1/2")]);
        assert_eq!(restrict_pmf(&canonical_extension(&masses), &atoms).unwrap(), masses);
        let two = space.index_of("2").unwrap();
        let point = restrict_pmf(&Pmf::<Rational>::point_mass(&space, two).unwrap(), &atoms).unwrap();
        // (evens, odds) = (1, 0)
        assert_eq!(point.masses(), &[q("0"), q("1")]);
    }

    #[test]
    fn dof_examples() {
        let (space, masses) = die_masses("1/3", "2/3");
        let r = degrees_of_freedom(masses.partition(), &masses).unwrap();
        assert_eq!(r.parametrization, Dof::Finite(4));
        assert_eq!(r.distinct_extensions, Dof::Finite(4));

        let singles = AtomPartition::singletons(&space);
        let m = AtomMasses::new(singles.clone(), vec![q("1/6"); 6]).unwrap();
        assert_eq!(degrees_of_freedom(&singles, &m).unwrap().parametrization, Dof::Finite(0));

        let trivial = AtomPartition::trivial(&space);
        let m = AtomMasses::new(trivial.clone(), vec![q("1")]).unwrap();
        assert_eq!(degrees_of_freedom(&trivial, &m).unwrap().parametrization, Dof::Finite(5));

        let (_, null) = die_masses("0", "1");
        let r = degrees_of_freedom(null.partition(), &null).unwrap();
        assert_eq!((r.parametrization, r.distinct_extensions), (Dof::Finite(4), Dof::Finite(2)));
    }

    #[test]
    fn roundtrip_examples() {
        let space = FiniteSpace::one_based(6).unwrap();
        let ev = SubsetMask::from_labels(&space, ["2", "4", "6"]).unwrap();
        let g = GeneratorFamily::new(&space, vec![ev.clone()]).unwrap();
        let m = MeasureAssignment::new(&space, vec![(ev, q("1/3"))]).unwrap();
        let r = extension_roundtrip_check(&m, &g).unwrap();
        assert!(r.agrees());
        assert_eq!(r.sets_checked, 1 + 4);

        let trivial = GeneratorFamily::empty(&space);
        let m = MeasureAssignment::new(&space, vec![(SubsetMask::full(&space), q("1"))]).unwrap();
        let r = extension_roundtrip_check(&m, &trivial).unwrap();
        assert!(r.agrees());
        assert_eq!(r.sets_checked, 1 + 2);
    }

    #[test]
    fn zero_dof_forces_a_unique_extension() {
        let abc = FiniteSpace::new(["a", "b", "c"]).unwrap();
        let singles = AtomPartition::singletons(&abc);
        let m = AtomMasses::new(singles.clone(), vec![q("1/2"), q("1/3"), q("1/6")]).unwrap();
        assert_eq!(degrees_of_freedom(&singles, &m).unwrap().distinct_extensions, Dof::Finite(0));
        let conds = (0..3).map(|k| uniform_conditional(&singles, k)).collect();
        let p = parametrized_extension(&ExtensionSpec { masses: m.clone(), per_atom_pmfs: Some(conds) }).unwrap();
        assert_eq!(p, canonical_extension(&m));
    }
}
