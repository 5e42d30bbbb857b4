//! Random variables on finite sample spaces and the σ-fields they generate.

use std::sync::Arc;

use crate::atoms::AtomPartition;
use crate::error::{Error, Result};
use crate::extension::{canonical_extension, degrees_of_freedom, DofReport};
use crate::field::AtomMasses;
use crate::model::{GeneratorFamily, Pmf};
use crate::scalar::Scalar;
use crate::space::{ensure_same_space, FiniteSpace, SubsetMask};

/// A map `X: Ω → E` between finite spaces. Values of `E` that `X` never
/// takes are allowed and reported by [`FiniteRandomVariable::unattained`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteRandomVariable {
    domain: Arc<FiniteSpace>,
    codomain: Arc<FiniteSpace>,
    value_of: Vec<usize>,
}

impl FiniteRandomVariable {
    pub fn new(domain: &Arc<FiniteSpace>, codomain: &Arc<FiniteSpace>, value_of: Vec<usize>) -> Result<Self> {
        if value_of.len() != domain.size() {
            return Err(Error::LengthMismatch { expected: domain.size(), actual: value_of.len() });
        }
        if let Some(&v) = value_of.iter().find(|&&v| v >= codomain.size()) {
            return Err(Error::IndexOutOfRange { index: v, size: codomain.size() });
        }
        Ok(Self { domain: Arc::clone(domain), codomain: Arc::clone(codomain), value_of })
    }

    /// Builds `X` from a value label per domain element; the codomain is the
    /// listed values (which may include unattained ones) followed by any
    /// further values in order of first appearance.
    pub fn from_labels<S: AsRef<str>>(
        domain: &Arc<FiniteSpace>,
        values: &[S],
        extra_codomain: &[S],
    ) -> Result<Self> {
        let mut codomain_labels: Vec<String> = extra_codomain.iter().map(|s| s.as_ref().to_string()).collect();
        for v in values {
            if !codomain_labels.iter().any(|c| c == v.as_ref()) {
                codomain_labels.push(v.as_ref().to_string());
            }
        }
        let codomain = FiniteSpace::new(codomain_labels)?;
        let value_of = values
            .iter()
            .map(|v| codomain.index_of(v.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(domain, &codomain, value_of)
    }

    pub fn domain(&self) -> &Arc<FiniteSpace> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FiniteSpace> {
        &self.codomain
    }

    pub fn value_of(&self, element: usize) -> usize {
        self.value_of[element]
    }

    /// `X^{-1}({v})`.
    pub fn level_set(&self, value: usize) -> SubsetMask {
        let members = (0..self.domain.size()).filter(|&e| self.value_of[e] == value);
        SubsetMask::from_indices(&self.domain, members).expect("indices in range")
    }

    pub fn unattained(&self) -> Vec<usize> {
        (0..self.codomain.size())
            .filter(|v| !self.value_of.contains(v))
            .collect()
    }

    /// `{X^{-1}({v}) : v ∈ E}`, unattained values included (as empty sets).
    pub fn level_set_generators(&self) -> GeneratorFamily {
        let sets = (0..self.codomain.size()).map(|v| self.level_set(v)).collect();
        GeneratorFamily::new(&self.domain, sets).expect("same domain")
    }

    /// Composes with a relabeling of values, `v ↦ relabel[v]`, into a new
    /// codomain.
    pub fn relabel(&self, codomain: &Arc<FiniteSpace>, relabel: &[usize]) -> Result<Self> {
        let values = self.value_of.iter().map(|&v| relabel[v]).collect();
        Self::new(&self.domain, codomain, values)
    }
}

/// `σ(X)`: its atoms are the non-empty level sets.
pub fn sigma_of(x: &FiniteRandomVariable) -> AtomPartition {
    let blocks = (0..x.codomain.size())
        .map(|v| x.level_set(v))
        .filter(|s| !s.is_empty())
        .collect();
    AtomPartition::from_blocks(&x.domain, blocks).expect("level sets partition the domain")
}

/// `P_X(v) = Σ_{ω ∈ X^{-1}(v)} p(ω)`.
pub fn induced_distribution<T: Scalar>(x: &FiniteRandomVariable, p: &Pmf<T>) -> Result<Pmf<T>> {
    ensure_same_space(&x.domain, p.space())?;
    let mut dist = vec![T::zero(); x.codomain.size()];
    for (e, &v) in x.value_of.iter().enumerate() {
        dist[v] = dist[v].clone() + p.mass(e).clone();
    }
    Pmf::new(&x.codomain, dist)
}

/// Atom masses, canonical extension and degrees of freedom for a scenario
/// space where only the law of `X` is known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioExtension<T: Scalar> {
    pub masses: AtomMasses<T>,
    pub pmf: Pmf<T>,
    pub dof: DofReport,
}

/// Assigns each level set `A_x` the mass `P(X = x)` and spreads it uniformly
/// over the scenarios in `A_x`.
pub fn scenario_extension<T: Scalar>(
    x: &FiniteRandomVariable,
    dist: &Pmf<T>,
) -> Result<ScenarioExtension<T>> {
    ensure_same_space(&x.codomain, dist.space())?;
    for v in x.unattained() {
        if !dist.mass(v).is_zero() {
            return Err(Error::UnsupportedDistribution(x.codomain.label(v).to_string()));
        }
    }
    let atoms = sigma_of(x);
    let masses = atoms
        .atoms()
        .iter()
        .map(|a| dist.mass(x.value_of(a.first().expect("atoms are non-empty"))).clone())
        .collect();
    let masses = AtomMasses::new(atoms.clone(), masses)?;
    let pmf = canonical_extension(&masses);
    let dof = degrees_of_freedom(&atoms, &masses)?;
    Ok(ScenarioExtension { masses, pmf, dof })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atoms::atoms_by_refinement;
    use crate::extension::Dof;
    use crate::Rational;

    fn q(s: &str) -> Rational {
        Rational::parse_exact(s).unwrap()
    }

    fn parity() -> FiniteRandomVariable {
        let die = FiniteSpace::one_based(6).unwrap();
        let values: Vec<&str> = (1..=6).map(|i| if i % 2 == 0 { "even" } else { "odd" }).collect();
        FiniteRandomVariable::from_labels(&die, &values, &[]).unwrap()
    }

    #[test]
    fn sigma_examples() {
        let x = parity();
        let atoms = sigma_of(&x);
        let names: Vec<_> = atoms.atoms().iter().map(|a| a.to_string()).collect();
        assert_eq!(names, ["{1,3,5}", "{2,4,6}"]);
        assert_eq!(atoms, atoms_by_refinement(&x.level_set_generators()));

        let d = x.domain().clone();
        let injective = FiniteRandomVariable::new(&d, &FiniteSpace::indexed(6).unwrap(), (0..6).collect()).unwrap();
        assert_eq!(sigma_of(&injective), AtomPartition::singletons(&d));

        let constant = FiniteRandomVariable::new(&d, &FiniteSpace::indexed(1).unwrap(), vec![0; 6]).unwrap();
        assert_eq!(sigma_of(&constant), AtomPartition::trivial(&d));
    }

    #[test]
    fn unattained_values_produce_no_atom() {
        let d = FiniteSpace::indexed(3).unwrap();
        let x = FiniteRandomVariable::from_labels(&d, &["u", "u", "w"], &["v"]).unwrap();
        assert_eq!(x.codomain().labels(), ["v", "u", "w"]);
        assert_eq!(x.unattained(), vec![0]);
        assert_eq!(sigma_of(&x).len(), 2);
    }

    #[test]
    fn induced_examples() {
        let x = parity();
        let d = induced_distribution(&x, &Pmf::<Rational>::uniform(x.domain())).unwrap();
        assert_eq!(d.masses(), &[q("1/2"), q("1/2")]);

        let constant = FiniteRandomVariable::new(x.domain(), &FiniteSpace::indexed(1).unwrap(), vec![0; 6]).unwrap();
        let p = Pmf::validated(x.domain(), ["1/7", "1/7", "1/7", "1/7", "1/7", "2/7"].iter().map(|s| q(s)).collect()).unwrap();
        assert_eq!(induced_distribution(&constant, &p).unwrap().masses(), &[q("1")]);

        // Canonical extension of (evens, odds) = (1/3, 2/3).
        let atoms = sigma_of(&x);
        let ext = canonical_extension(&AtomMasses::new(atoms, vec![q("2/3"), q("1/3")]).unwrap());
        let d = induced_distribution(&x, &ext).unwrap();
        let even = x.codomain().index_of("even").unwrap();
        assert_eq!(d.mass(even), &q("1/3"));
    }

    #[test]
    fn scenario_examples() {
        let omega = FiniteSpace::new(["s1", "s2", "s3", "s4", "s5"]).unwrap();
        let x = FiniteRandomVariable::from_labels(&omega, &["lo", "lo", "hi", "hi", "hi"], &[]).unwrap();
        let dist = Pmf::new(x.codomain(), vec![q("1/2"), q("1/2")]).unwrap();
        let s = scenario_extension(&x, &dist).unwrap();
        let expected: Vec<_> = ["1/4", "1/4", "1/6", "1/6", "1/6"].iter().map(|m| q(m)).collect();
        assert_eq!(s.pmf.masses(), &expected[..]);
        assert_eq!(s.dof.parametrization, Dof::Finite(3));
        assert_eq!(induced_distribution(&x, &s.pmf).unwrap(), dist);

        let injective = FiniteRandomVariable::new(&omega, &FiniteSpace::indexed(5).unwrap(), vec![4, 3, 2, 1, 0]).unwrap();
        let dist = Pmf::new(injective.codomain(), ["1/10", "2/10", "3/10", "4/10", "0"].iter().map(|m| q(m)).collect()).unwrap();
        let s = scenario_extension(&injective, &dist).unwrap();
        let pulled: Vec<_> = (0..5).map(|e| dist.mass(injective.value_of(e)).clone()).collect();
        assert_eq!(s.pmf.masses(), &pulled[..]);
        assert_eq!(s.dof.parametrization, Dof::Finite(0));

        let constant = FiniteRandomVariable::new(&omega, &FiniteSpace::indexed(1).unwrap(), vec![0; 5]).unwrap();
        let s = scenario_extension(&constant, &Pmf::<Rational>::point_mass(constant.codomain(), 0).unwrap()).unwrap();
        assert_eq!(s.pmf, Pmf::uniform(&omega));
        assert_eq!(s.dof.parametrization, Dof::Finite(4));
    }

    #[test]
    fn scenario_rejects_mass_on_unattained_values() {
        let d = FiniteSpace::indexed(2).unwrap();
        let x = FiniteRandomVariable::from_labels(&d, &["a", "a"], &["b"]).unwrap();
        let dist = Pmf::new(x.codomain(), vec![q("1/2"), q("1/2")]).unwrap();
        let err = scenario_extension(&x, &dist).unwrap_err();
        assert_eq!(err, Error::UnsupportedDistribution("b".into()));
        assert!(err.to_string().starts_with("distribution not supported on range of X"));
    }

    #[test]
    fn sigma_ignores_value_relabeling() {
        let x = parity();
        let swapped = FiniteSpace::new(["B", "A", "unused"]).unwrap();
        let y = x.relabel(&swapped, &[1, 0]).unwrap();
        assert_eq!(sigma_of(&x), sigma_of(&y));
    }
}
