//! Atom partitions of σ-fields generated by finite families of subsets.
//!
//! Three independent routes produce the partition:
//!
//! * [`atoms_by_refinement`] splits blocks by each generator in turn;
//! * [`atoms_by_separators`] intersects, for every point ω, one separating set
//!   `D(ω, η)` per point η and deduplicates the resulting sets `C_ω`;
//! * [`atoms_bruteforce_oracle`] enumerates the whole field and intersects
//!   every member containing ω. It is meant for tests.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{closure_oracle_with_limit, DEFAULT_ORACLE_LIMIT};
use crate::model::GeneratorFamily;
use crate::space::{ensure_same_space, FiniteSpace, SubsetMask};

/// A partition of a finite space into non-empty, pairwise disjoint blocks.
///
/// Blocks are ordered by their least element index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomPartition {
    space: Arc<FiniteSpace>,
    atoms: Vec<SubsetMask>,
    atom_of: Vec<usize>,
}

impl AtomPartition {
    /// Validates the partition axioms and sorts the blocks into canonical
    /// order.
    pub fn from_blocks(space: &Arc<FiniteSpace>, mut blocks: Vec<SubsetMask>) -> Result<Self> {
        let mut atom_of = vec![usize::MAX; space.size()];
        for b in &blocks {
            ensure_same_space(space, b.space())?;
            if b.is_empty() {
                return Err(Error::InvalidPartition("partition block is empty".into()));
            }
        }
        blocks.sort_by_key(|b| b.first());
        for (k, b) in blocks.iter().enumerate() {
            for e in b.iter() {
                if atom_of[e] != usize::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "element {} lies in two blocks",
                        space.label(e)
                    )));
                }
                atom_of[e] = k;
            }
        }
        if let Some(e) = atom_of.iter().position(|&k| k == usize::MAX) {
            return Err(Error::InvalidPartition(format!(
                "element {} is not covered",
                space.label(e)
            )));
        }
        Ok(Self { space: Arc::clone(space), atoms: blocks, atom_of })
    }

    pub fn trivial(space: &Arc<FiniteSpace>) -> Self {
        Self {
            space: Arc::clone(space),
            atoms: vec![SubsetMask::full(space)],
            atom_of: vec![0; space.size()],
        }
    }

    pub fn singletons(space: &Arc<FiniteSpace>) -> Self {
        let atoms = (0..space.size())
            .map(|i| SubsetMask::singleton(space, i).expect("index in range"))
            .collect();
        Self { space: Arc::clone(space), atoms, atom_of: (0..space.size()).collect() }
    }

    pub fn space(&self) -> &Arc<FiniteSpace> {
        &self.space
    }

    pub fn atoms(&self) -> &[SubsetMask] {
        &self.atoms
    }

    pub fn atom(&self, index: usize) -> &SubsetMask {
        &self.atoms[index]
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Index of the atom containing `element`.
    pub fn atom_of(&self, element: usize) -> usize {
        self.atom_of[element]
    }

    /// Atom indices whose blocks lie inside `set`, or `None` if `set` cuts
    /// through some atom.
    pub fn decompose(&self, set: &SubsetMask) -> Result<Option<Vec<usize>>> {
        ensure_same_space(&self.space, set.space())?;
        let mut inside = Vec::new();
        for (k, atom) in self.atoms.iter().enumerate() {
            if atom.subset_unchecked(set) {
                inside.push(k);
            } else if !atom.disjoint_unchecked(set) {
                return Ok(None);
            }
        }
        Ok(Some(inside))
    }

    /// Union of the atoms with the given indices.
    pub fn union_of(&self, indices: impl IntoIterator<Item = usize>) -> SubsetMask {
        let mut out = SubsetMask::empty(&self.space);
        for k in indices {
            out.union_in_place(&self.atoms[k]);
        }
        out
    }

    /// Lists every violated partition axiom; empty when the partition is
    /// sound.
    pub fn axiom_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut cover = SubsetMask::empty(&self.space);
        for (i, a) in self.atoms.iter().enumerate() {
            if a.is_empty() {
                out.push(format!("atom {i} is empty"));
            }
            for (j, b) in self.atoms.iter().enumerate().skip(i + 1) {
                if !a.disjoint_unchecked(b) {
                    out.push(format!("atoms {i} and {j} overlap"));
                }
            }
            cover.union_in_place(a);
            for e in a.iter() {
                if self.atom_of[e] != i {
                    out.push(format!("atom_of({e}) disagrees with atom {i}"));
                }
            }
        }
        if !cover.is_full() {
            out.push("atoms do not cover the space".into());
        }
        out
    }

    /// Same blocks, regardless of order.
    pub fn same_blocks(&self, other: &Self) -> bool {
        let a: BTreeSet<&SubsetMask> = self.atoms.iter().collect();
        let b: BTreeSet<&SubsetMask> = other.atoms.iter().collect();
        a == b
    }
}

/// Splits `Ω` by every generator: points stay together iff no generator
/// contains one but not the other.
pub fn atoms_by_refinement(g: &GeneratorFamily) -> AtomPartition {
    let space = g.space();
    let mut blocks = vec![SubsetMask::full(space)];
    for generator in g.generators() {
        let outside = generator.complement();
        let mut next = Vec::with_capacity(blocks.len() * 2);
        for block in blocks {
            let mut inside_part = block.clone();
            inside_part.intersect_in_place(generator);
            let mut outside_part = block;
            outside_part.intersect_in_place(&outside);
            for part in [inside_part, outside_part] {
                if !part.is_empty() {
                    next.push(part);
                }
            }
        }
        blocks = next;
    }
    AtomPartition::from_blocks(space, blocks).expect("refinement yields a partition")
}

/// A set of `σ(g)` containing `omega` but not `eta`, or `Ω` when no such set
/// exists.
///
/// Two points are separated by the field iff some generator separates them,
/// so the first separating generator (or its complement, whichever contains
/// `omega`) is returned.
pub fn separator(omega: usize, eta: usize, g: &GeneratorFamily) -> Result<SubsetMask> {
    let size = g.space().size();
    for index in [omega, eta] {
        if index >= size {
            return Err(Error::IndexOutOfRange { index, size });
        }
    }
    for generator in g.generators() {
        match (generator.contains(omega), generator.contains(eta)) {
            (true, false) => return Ok(generator.clone()),
            (false, true) => return Ok(generator.complement()),
            _ => {}
        }
    }
    Ok(SubsetMask::full(g.space()))
}

/// `C_ω = ∩_η D(ω, η)` for one point.
pub fn minimal_set_of(omega: usize, g: &GeneratorFamily) -> Result<SubsetMask> {
    let mut c = SubsetMask::full(g.space());
    for eta in 0..g.space().size() {
        // An η already outside C contributes nothing new: every point γ
        // outside the final intersection is removed by D(ω, γ) itself.
        if !c.contains(eta) {
            continue;
        }
        c.intersect_in_place(&separator(omega, eta, g)?);
    }
    Ok(c)
}

/// Computes `C_ω` for every ω and keeps the distinct ones.
pub fn atoms_by_separators(g: &GeneratorFamily) -> AtomPartition {
    let space = g.space();
    let distinct: BTreeSet<SubsetMask> = (0..space.size())
        .map(|omega| minimal_set_of(omega, g).expect("omega in range"))
        .collect();
    AtomPartition::from_blocks(space, distinct.into_iter().collect())
        .expect("minimal sets are identical or disjoint")
}

/// Enumerates `σ(g)` by fixpoint closure and intersects all members containing
/// each point. Fails once the field exceeds 2^20 sets.
pub fn atoms_bruteforce_oracle(g: &GeneratorFamily) -> Result<AtomPartition> {
    atoms_bruteforce_oracle_with_limit(g, DEFAULT_ORACLE_LIMIT)
}

pub fn atoms_bruteforce_oracle_with_limit(g: &GeneratorFamily, limit: usize) -> Result<AtomPartition> {
    Ok(closure_oracle_with_limit(g, limit)?.atom_basis().clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn family(space: &Arc<FiniteSpace>, gens: &[&[&str]]) -> GeneratorFamily {
        let masks = gens
            .iter()
            .map(|g| SubsetMask::from_labels(space, g.iter().copied()).unwrap())
            .collect();
        GeneratorFamily::new(space, masks).unwrap()
    }

    fn blocks(p: &AtomPartition) -> Vec<String> {
        p.atoms().iter().map(|a| a.to_string()).collect()
    }

    #[test]
    fn refinement_examples() {
        let die = FiniteSpace::one_based(6).unwrap();
        let p = atoms_by_refinement(&family(&die, &[&["2", "4", "6"]]));
        assert_eq!(blocks(&p), ["{1,3,5}", "{2,4,6}"]);

        let abcd = FiniteSpace::new(["a", "b", "c", "d"]).unwrap();
        let p = atoms_by_refinement(&family(&abcd, &[&["a", "b"], &["b", "c"]]));
        assert_eq!(blocks(&p), ["{a}", "{b}", "{c}", "{d}"]);

        let p = atoms_by_refinement(&GeneratorFamily::empty(&abcd));
        assert_eq!(blocks(&p), ["{a,b,c,d}"]);
    }

    #[test]
    fn separator_examples() {
        let abcd = FiniteSpace::new(["a", "b", "c", "d"]).unwrap();
        let g = family(&abcd, &[&["a", "b"]]);
        let (a, b, c) = (0, 1, 2);
        assert_eq!(separator(a, c, &g).unwrap().to_string(), "{a,b}");
        assert_eq!(separator(c, a, &g).unwrap().to_string(), "{c,d}");
        assert!(separator(a, b, &g).unwrap().is_full());
        assert!(separator(c, c, &g).unwrap().is_full());
        assert!(separator(0, 4, &g).is_err());
    }

    #[test]
    fn separator_examples_by_enumeration() {
        // C_a = C_b = {a,b}
        let abcd = FiniteSpace::new(["a", "b", "c", "d"]).unwrap();
        let g = family(&abcd, &[&["a", "b"]]);
        assert_eq!(minimal_set_of(0, &g).unwrap().to_string(), "{a,b}");
        assert_eq!(minimal_set_of(1, &g).unwrap().to_string(), "{a,b}");
        assert_eq!(blocks(&atoms_by_separators(&g)), ["{a,b}", "{c,d}"]);

        let x = FiniteSpace::new(["x"]).unwrap();
        assert_eq!(blocks(&atoms_by_separators(&GeneratorFamily::empty(&x))), ["{x}"]);

        let die = FiniteSpace::one_based(6).unwrap();
        let g = family(&die, &[&["2", "4", "6"], &["1", "2"]]);
        assert_eq!(blocks(&atoms_by_separators(&g)), ["{1}", "{2}", "{3,5}", "{4,6}"]);
    }

    #[test]
    fn oracle_examples() {
        let ab = FiniteSpace::new(["a", "b"]).unwrap();
        let p = atoms_bruteforce_oracle(&family(&ab, &[&["a"]])).unwrap();
        assert_eq!(blocks(&p), ["{a}", "{b}"]);

        let four = FiniteSpace::one_based(4).unwrap();
        let p = atoms_bruteforce_oracle(&family(&four, &[&["1", "2"]])).unwrap();
        assert_eq!(blocks(&p), ["{1,2}", "{3,4}"]);

        let p = atoms_bruteforce_oracle(&family(&four, &[&["1", "2"], &["2", "3"]])).unwrap();
        assert_eq!(blocks(&p), ["{1}", "{2}", "{3}", "{4}"]);
    }

    #[test]
    fn oracle_guard() {
        let space = FiniteSpace::indexed(6).unwrap();
        let gens = (0..5).map(|i| SubsetMask::singleton(&space, i).unwrap()).collect();
        let g = GeneratorFamily::new(&space, gens).unwrap();
        let err = atoms_bruteforce_oracle_with_limit(&g, 32).unwrap_err();
        assert_eq!(err, Error::OracleGuardExceeded { limit: 32 });
        assert_eq!(err.to_string(), "oracle guard exceeded: more than 32 sets in the generated field");
        assert_eq!(atoms_bruteforce_oracle_with_limit(&g, 64).unwrap().len(), 6);
    }

    #[test]
    fn from_blocks_rejects_non_partitions() {
        let space = FiniteSpace::indexed(3).unwrap();
        let a = SubsetMask::from_indices(&space, [0, 1]).unwrap();
        let b = SubsetMask::from_indices(&space, [1, 2]).unwrap();
        assert!(AtomPartition::from_blocks(&space, vec![a.clone(), b]).is_err());
        assert!(AtomPartition::from_blocks(&space, vec![a.clone()]).is_err());
        assert!(AtomPartition::from_blocks(&space, vec![a, SubsetMask::empty(&space)]).is_err());
    }

    #[test]
    fn decompose_measurable_sets() {
        let die = FiniteSpace::one_based(6).unwrap();
        let p = atoms_by_refinement(&family(&die, &[&["2", "4", "6"]]));
        let odds = SubsetMask::from_labels(&die, ["1", "3", "5"]).unwrap();
        assert_eq!(p.decompose(&odds).unwrap(), Some(vec![0]));
        let cut = SubsetMask::from_labels(&die, ["1", "2"]).unwrap();
        assert_eq!(p.decompose(&cut).unwrap(), None);
        assert_eq!(p.union_of([0, 1]), SubsetMask::full(&die));
    }

    #[test]
    fn adding_a_generator_never_merges_atoms() {
        // Exhaustive over |Ω| = 4, two generators plus one more.
        let space = FiniteSpace::indexed(4).unwrap();
        let mask = |m: u32| SubsetMask::from_indices(&space, (0..4).filter(|i| m >> i & 1 == 1)).unwrap();
        for a in 0..16 {
            for b in 0..16 {
                let g = GeneratorFamily::new(&space, vec![mask(a), mask(b)]).unwrap();
                let before = atoms_by_refinement(&g);
                for c in 0..16 {
                    let mut h = g.clone();
                    h.push(mask(c)).unwrap();
                    let after = atoms_by_refinement(&h);
                    for atom in after.atoms() {
                        let parent = before.atom(before.atom_of(atom.first().unwrap()));
                        assert!(atom.is_subset_of(parent).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn minimal_sets_are_identical_or_disjoint() {
        let space = FiniteSpace::indexed(5).unwrap();
        let mask = |m: u32| SubsetMask::from_indices(&space, (0..5).filter(|i| m >> i & 1 == 1)).unwrap();
        for a in 0..32 {
            for b in (a..32).step_by(3) {
                let g = GeneratorFamily::new(&space, vec![mask(a), mask(b)]).unwrap();
                let cs: Vec<_> = (0..5).map(|w| minimal_set_of(w, &g).unwrap()).collect();
                for (w, cw) in cs.iter().enumerate() {
                    assert!(cw.contains(w));
                    for cv in &cs {
                        assert!(cw == cv || cw.is_disjoint_from(cv).unwrap());
                    }
                }
            }
        }
    }
}
