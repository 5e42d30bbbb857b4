//! Atoms of σ-fields on countable sample spaces, and exact extensions of
//! probability measures from a σ-field to the full power set.
//!
//! On a countable space every σ-field is generated by its atoms, the minimal
//! non-empty measurable sets. A probability measure on the σ-field is then
//! the same thing as a mass per atom, and spreading each atom's mass over its
//! points (uniformly, or by any conditional p.m.f.) yields a p.m.f. whose
//! induced measure agrees with the original one on every measurable set.
//!
//! The pipeline:
//!
//! 1. [`atoms`] computes the atom partition of `σ(generators)`;
//! 2. [`field`] enumerates the field and solves a measure given on arbitrary
//!    measurable sets for the atom masses;
//! 3. [`extension`] builds the canonical and parametrized extensions;
//! 4. [`countable`] handles countably infinite spaces through presentations;
//! 5. [`random_variable`] covers `σ(X)` and induced laws.
//!
//! All arithmetic is exact. Algorithms are generic over [`Scalar`]; the
//! aliases below fix the scalar to arbitrary-precision rationals.
//!
//! ```
//! use sigmaext::{
//!     atoms_by_refinement, canonical_extension, solve_atom_masses, FiniteSpace,
//!     GeneratorFamily, MeasureAssignment, Rational, Scalar, SubsetMask,
//! };
//!
//! let die = FiniteSpace::one_based(6).unwrap();
//! let evens = SubsetMask::from_labels(&die, ["2", "4", "6"]).unwrap();
//! let g = GeneratorFamily::new(&die, vec![evens.clone()]).unwrap();
//! let m = MeasureAssignment::new(&die, vec![(evens, Rational::parse_exact("1/3").unwrap())]).unwrap();
//!
//! let atoms = atoms_by_refinement(&g);
//! let masses = solve_atom_masses(&m, &atoms).unwrap();
//! let p = canonical_extension(&masses);
//! assert_eq!(p.mass(1).to_fraction_string(), "1/9");
//! ```

#![forbid(unsafe_code)]

pub mod atoms;
pub mod cli;
pub mod countable;
pub mod error;
pub mod extension;
pub mod field;
pub mod instance;
pub mod linsolve;
pub mod model;
pub mod random_variable;
pub mod scalar;
pub mod space;

pub use atoms::{
    atoms_bruteforce_oracle, atoms_by_refinement, atoms_by_separators, separator, AtomPartition,
};
pub use countable::{AtomDescriptor, CountablePresentation, Enumeration, Progression};
pub use error::{Error, Result};
pub use extension::{
    canonical_extension, decompose_pmf, degrees_of_freedom, extension_roundtrip_check,
    parametrized_extension, restrict_pmf, Dof, DofReport, ExtensionSpec, RoundtripReport,
};
pub use field::{
    closure_oracle, enumerate_field, is_measurable, solve_atom_masses, verify_measure, AtomMasses,
    EnumeratedField, MeasureReport, MeasureViolation,
};
pub use model::{pmf_to_measure, pmf_validate, GeneratorFamily, MeasureAssignment, Pmf, PmfReport};
pub use random_variable::{
    induced_distribution, scenario_extension, sigma_of, FiniteRandomVariable, ScenarioExtension,
};
pub use scalar::{normalize_rational, Scalar};
pub use space::{FiniteSpace, SubsetMask, DEFAULT_MAX_ELEMENTS};

/// Arbitrary-precision rational; the default scalar everywhere.
pub type Rational = num_rational::BigRational;
/// Fixed-width rationals for callers that know their denominators stay small.
pub type Rational64 = num_rational::Ratio<i64>;
pub type Rational128 = num_rational::Ratio<i128>;

pub type ExactPmf = Pmf<Rational>;
pub type ExactAtomMasses = AtomMasses<Rational>;
pub type ExactMeasure = MeasureAssignment<Rational>;
pub type ExactPresentation = CountablePresentation<Rational>;
