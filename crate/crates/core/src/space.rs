//! Finite sample spaces and subsets of them.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Default cap on the number of elements the finite engine accepts.
pub const DEFAULT_MAX_ELEMENTS: usize = 10_000;

/// A labeled finite sample space. Elements are addressed by index; labels are
/// for presentation only.
#[derive(Debug, PartialEq, Eq)]
pub struct FiniteSpace {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl FiniteSpace {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Arc<Self>> {
        Self::with_limit(labels, DEFAULT_MAX_ELEMENTS)
    }

    pub fn with_limit<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
        limit: usize,
    ) -> Result<Arc<Self>> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptySpace);
        }
        if labels.len() > limit {
            return Err(Error::SpaceTooLarge { size: labels.len(), limit });
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty() {
                return Err(Error::EmptyLabel(i));
            }
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(Arc::new(Self { labels, index }))
    }

    /// `{0, 1, ..., n-1}` labeled by their decimal indices.
    pub fn indexed(n: usize) -> Result<Arc<Self>> {
        Self::new((0..n).map(|i| i.to_string()))
    }

    /// `{1, ..., n}` labeled `"1"` to `"n"`.
    pub fn one_based(n: usize) -> Result<Arc<Self>> {
        Self::new((1..=n).map(|i| i.to_string()))
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }
}

pub(crate) fn same_space(a: &Arc<FiniteSpace>, b: &Arc<FiniteSpace>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

pub(crate) fn ensure_same_space(a: &Arc<FiniteSpace>, b: &Arc<FiniteSpace>) -> Result<()> {
    if same_space(a, b) {
        Ok(())
    } else {
        Err(Error::SpaceMismatch)
    }
}

/// A subset of a [`FiniteSpace`], stored as a bit vector of exactly
/// `space.size()` bits.
#[derive(Clone)]
pub struct SubsetMask {
    space: Arc<FiniteSpace>,
    bits: FixedBitSet,
}

impl SubsetMask {
    pub fn empty(space: &Arc<FiniteSpace>) -> Self {
        Self {
            space: Arc::clone(space),
            bits: FixedBitSet::with_capacity(space.size()),
        }
    }

    pub fn full(space: &Arc<FiniteSpace>) -> Self {
        let mut mask = Self::empty(space);
        mask.bits.insert_range(..);
        mask
    }

    pub fn from_indices(
        space: &Arc<FiniteSpace>,
        indices: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let mut mask = Self::empty(space);
        for i in indices {
            if i >= space.size() {
                return Err(Error::IndexOutOfRange { index: i, size: space.size() });
            }
            mask.bits.insert(i);
        }
        Ok(mask)
    }

    pub fn from_labels<S: AsRef<str>>(
        space: &Arc<FiniteSpace>,
        labels: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        let indices = labels
            .into_iter()
            .map(|l| space.index_of(l.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(space, indices)
    }

    pub fn singleton(space: &Arc<FiniteSpace>, index: usize) -> Result<Self> {
        Self::from_indices(space, [index])
    }

    pub fn space(&self) -> &Arc<FiniteSpace> {
        &self.space
    }

    pub fn contains(&self, index: usize) -> bool {
        self.bits.contains(index)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.space.size()
    }

    /// Member indices in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn first(&self) -> Option<usize> {
        self.bits.minimum()
    }

    pub fn labels(&self) -> Vec<&str> {
        self.iter().map(|i| self.space.label(i)).collect()
    }

    pub fn complement(&self) -> Self {
        let mut out = self.clone();
        out.bits.toggle_range(..);
        out
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        ensure_same_space(&self.space, &other.space)?;
        let mut out = self.clone();
        out.bits.union_with(&other.bits);
        Ok(out)
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        ensure_same_space(&self.space, &other.space)?;
        let mut out = self.clone();
        out.bits.intersect_with(&other.bits);
        Ok(out)
    }

    pub fn difference(&self, other: &Self) -> Result<Self> {
        ensure_same_space(&self.space, &other.space)?;
        let mut out = self.clone();
        out.bits.difference_with(&other.bits);
        Ok(out)
    }

    pub fn is_subset_of(&self, other: &Self) -> Result<bool> {
        ensure_same_space(&self.space, &other.space)?;
        Ok(self.bits.is_subset(&other.bits))
    }

    pub fn is_disjoint_from(&self, other: &Self) -> Result<bool> {
        ensure_same_space(&self.space, &other.space)?;
        Ok(self.bits.is_disjoint(&other.bits))
    }

    // Unchecked variants for hot loops where both operands are known to share
    // a space.
    pub(crate) fn intersect_in_place(&mut self, other: &Self) {
        self.bits.intersect_with(&other.bits);
    }

    pub(crate) fn union_in_place(&mut self, other: &Self) {
        self.bits.union_with(&other.bits);
    }

    pub(crate) fn subset_unchecked(&self, other: &Self) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub(crate) fn disjoint_unchecked(&self, other: &Self) -> bool {
        self.bits.is_disjoint(&other.bits)
    }
}

impl PartialEq for SubsetMask {
    fn eq(&self, other: &Self) -> bool {
        same_space(&self.space, &other.space) && self.bits == other.bits
    }
}

impl Eq for SubsetMask {}

impl std::hash::Hash for SubsetMask {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.bits.hash(state);
    }
}

impl PartialOrd for SubsetMask {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders subsets by their sorted member lists, lexicographically.
impl Ord for SubsetMask {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels().join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn space_rejects_bad_labels() {
        assert_eq!(FiniteSpace::new(Vec::<String>::new()).unwrap_err(), Error::EmptySpace);
        assert_eq!(FiniteSpace::new(["a", ""]).unwrap_err(), Error::EmptyLabel(1));
        assert_eq!(
            FiniteSpace::new(["a", "b", "a"]).unwrap_err(),
            Error::DuplicateLabel("a".into())
        );
        assert_eq!(
            FiniteSpace::with_limit(["a", "b", "c"], 2).unwrap_err(),
            Error::SpaceTooLarge { size: 3, limit: 2 }
        );
    }

    #[test]
    fn labels_and_indices_are_a_bijection() {
        let space = FiniteSpace::new(["x", "y", "z"]).unwrap();
        for (i, l) in space.labels().iter().enumerate() {
            assert_eq!(space.index_of(l).unwrap(), i);
        }
        assert_eq!(space.index_of("w").unwrap_err(), Error::UnknownLabel("w".into()));
    }

    #[test]
    fn set_algebra_basics() {
        let space = FiniteSpace::one_based(6).unwrap();
        let evens = SubsetMask::from_labels(&space, ["2", "4", "6"]).unwrap();
        let low = SubsetMask::from_labels(&space, ["1", "2"]).unwrap();
        assert_eq!(evens.complement().to_string(), "{1,3,5}");
        assert_eq!(evens.union(&low).unwrap().to_string(), "{1,2,4,6}");
        assert_eq!(evens.intersection(&low).unwrap().to_string(), "{2}");
        assert!(!low.is_subset_of(&evens).unwrap());
        assert!(evens.is_disjoint_from(&evens.complement()).unwrap());
        assert!(SubsetMask::full(&space).is_full());
        assert_eq!(SubsetMask::full(&space).complement(), SubsetMask::empty(&space));
    }

    #[test]
    fn mixing_spaces_is_an_error() {
        let a = FiniteSpace::new(["a", "b"]).unwrap();
        let b = FiniteSpace::new(["a", "c"]).unwrap();
        let err = SubsetMask::full(&a).union(&SubsetMask::full(&b)).unwrap_err();
        assert_eq!(err, Error::SpaceMismatch);
        // Structurally equal spaces are interchangeable.
        let a2 = FiniteSpace::new(["a", "b"]).unwrap();
        assert!(SubsetMask::full(&a).union(&SubsetMask::empty(&a2)).is_ok());
    }

    #[test]
    fn out_of_range_index() {
        let space = FiniteSpace::indexed(3).unwrap();
        assert_eq!(
            SubsetMask::from_indices(&space, [3]).unwrap_err(),
            Error::IndexOutOfRange { index: 3, size: 3 }
        );
    }

    proptest! {
        #[test]
        fn complement_is_involutive_and_de_morgan_holds(a in 0u32..256, b in 0u32..256) {
            let space = FiniteSpace::indexed(8).unwrap();
            let mk = |m: u32| SubsetMask::from_indices(&space, (0..8).filter(|i| m >> i & 1 == 1)).unwrap();
            let (x, y) = (mk(a), mk(b));
            prop_assert_eq!(x.complement().complement(), x.clone());
            prop_assert_eq!(
                x.union(&y).unwrap().complement(),
                x.complement().intersection(&y.complement()).unwrap()
            );
            prop_assert_eq!(x.union(&x).unwrap(), x.clone());
            prop_assert_eq!(x.intersection(&x).unwrap(), x);
        }
    }
}
