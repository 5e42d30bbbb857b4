//! Exact incremental Gaussian elimination.
//!
//! Equations are inserted one at a time and the system is kept in reduced row
//! echelon form. Each incoming row is reduced against the stored rows; its
//! pivot is its first non-zero column, and rows stay sorted by pivot. A row
//! that reduces to `0 = c` with `c ≠ 0` is reported as inconsistent and is not
//! stored, so the equation that broke consistency is always known.

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Insertion<T> {
    /// The equation added a new pivot.
    Independent { pivot: usize },
    /// The equation is implied by the ones already stored.
    Redundant,
    /// The equation contradicts the stored ones: after reduction it reads
    /// `0 = residual`.
    Inconsistent { residual: T },
}

#[derive(Debug, Clone)]
struct Row<T> {
    pivot: usize,
    coeffs: Vec<T>,
    rhs: T,
}

/// A consistent linear system `A x = b` over an exact field.
#[derive(Debug, Clone)]
pub struct LinearSystem<T: Scalar> {
    vars: usize,
    rows: Vec<Row<T>>,
}

impl<T: Scalar> LinearSystem<T> {
    pub fn new(vars: usize) -> Self {
        Self { vars, rows: Vec::new() }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `(coeffs, rhs)` against the stored rows.
    fn reduce(&self, coeffs: &mut [T], rhs: &mut T) {
        for row in &self.rows {
            let factor = coeffs[row.pivot].clone();
            if factor.is_zero() {
                continue;
            }
            for (c, r) in coeffs.iter_mut().zip(&row.coeffs).skip(row.pivot) {
                if !r.is_zero() {
                    *c = c.clone() - factor.clone() * r.clone();
                }
            }
            *rhs = rhs.clone() - factor * row.rhs.clone();
        }
    }

    pub fn insert(&mut self, mut coeffs: Vec<T>, mut rhs: T) -> Insertion<T> {
        assert_eq!(coeffs.len(), self.vars, "equation width must match the variable count");
        self.reduce(&mut coeffs, &mut rhs);
        let Some(pivot) = coeffs.iter().position(|c| !c.is_zero()) else {
            return if rhs.is_zero() {
                Insertion::Redundant
            } else {
                Insertion::Inconsistent { residual: rhs }
            };
        };
        let scale = coeffs[pivot].clone();
        if !scale.is_one() {
            for c in coeffs.iter_mut().skip(pivot) {
                *c = c.clone() / scale.clone();
            }
            rhs = rhs / scale;
        }
        // Clear the new pivot column from the stored rows.
        for row in &mut self.rows {
            let factor = row.coeffs[pivot].clone();
            if factor.is_zero() {
                continue;
            }
            for (c, r) in row.coeffs.iter_mut().zip(&coeffs).skip(pivot) {
                if !r.is_zero() {
                    *c = c.clone() - factor.clone() * r.clone();
                }
            }
            row.rhs = row.rhs.clone() - factor * rhs.clone();
        }
        let at = self.rows.partition_point(|r| r.pivot < pivot);
        self.rows.insert(at, Row { pivot, coeffs, rhs });
        Insertion::Independent { pivot }
    }

    /// The value of `coeffs · x` if every solution agrees on it.
    pub fn evaluate(&self, coeffs: &[T]) -> Option<T> {
        assert_eq!(coeffs.len(), self.vars);
        // coeffs = Σ λ_r row_r  ⇒  coeffs · x = Σ λ_r rhs_r.
        let mut rest = coeffs.to_vec();
        let mut value = T::zero();
        for row in &self.rows {
            let factor = rest[row.pivot].clone();
            if factor.is_zero() {
                continue;
            }
            for (c, r) in rest.iter_mut().zip(&row.coeffs).skip(row.pivot) {
                if !r.is_zero() {
                    *c = c.clone() - factor.clone() * r.clone();
                }
            }
            value = value + factor * row.rhs.clone();
        }
        rest.iter().all(|c| c.is_zero()).then_some(value)
    }

    /// Value of variable `var` when it is pinned by the system.
    pub fn determined_value(&self, var: usize) -> Option<T> {
        let mut unit = vec![T::zero(); self.vars];
        unit[var] = T::one();
        self.evaluate(&unit)
    }

    /// Variables not pinned down by the system, in increasing order.
    pub fn undetermined(&self) -> Vec<usize> {
        (0..self.vars)
            .filter(|&v| {
                match self.rows.iter().find(|r| r.pivot == v) {
                    // A pivot variable is pinned iff its row has no entries in
                    // free columns; other pivot columns are zero in RREF.
                    Some(row) => row
                        .coeffs
                        .iter()
                        .enumerate()
                        .any(|(c, x)| c != v && !x.is_zero()),
                    None => true,
                }
            })
            .collect()
    }

    /// The unique solution, if the system has full rank.
    pub fn unique_solution(&self) -> Option<Vec<T>> {
        if self.rows.len() != self.vars {
            return None;
        }
        Some(self.rows.iter().map(|r| r.rhs.clone()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn q(s: &str) -> Rational {
        Rational::parse_exact(s).unwrap()
    }

    fn row(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_integer(x.into())).collect()
    }

    #[test]
    fn three_variable_system() {
        // x_a + x_b = 1/2, x_b + x_c = 3/4, x_a + x_b + x_c = 1
        let mut s = LinearSystem::new(3);
        assert_eq!(s.insert(row(&[1, 1, 0]), q("1/2")), Insertion::Independent { pivot: 0 });
        assert_eq!(s.insert(row(&[0, 1, 1]), q("3/4")), Insertion::Independent { pivot: 1 });
        assert_eq!(s.undetermined(), vec![0, 1, 2]);
        assert_eq!(s.insert(row(&[1, 1, 1]), q("1")), Insertion::Independent { pivot: 2 });
        assert_eq!(s.unique_solution().unwrap(), vec![q("1/4"), q("1/4"), q("1/2")]);
    }

    #[test]
    fn redundant_and_inconsistent_rows() {
        let mut s = LinearSystem::new(2);
        s.insert(row(&[1, 0]), q("1/3"));
        s.insert(row(&[0, 1]), q("1/3"));
        assert_eq!(s.insert(row(&[1, 1]), q("2/3")), Insertion::Redundant);
        assert_eq!(
            s.insert(row(&[1, 1]), q("1")),
            Insertion::Inconsistent { residual: q("1/3") }
        );
        assert_eq!(s.rank(), 2);
    }

    #[test]
    fn evaluate_reports_implied_values() {
        let mut s = LinearSystem::new(3);
        s.insert(row(&[1, 1, 0]), q("1/2"));
        s.insert(row(&[0, 0, 1]), q("1/4"));
        assert_eq!(s.evaluate(&row(&[1, 1, 1])), Some(q("3/4")));
        assert_eq!(s.evaluate(&row(&[1, 0, 0])), None);
        assert_eq!(s.determined_value(2), Some(q("1/4")));
        assert_eq!(s.undetermined(), vec![0, 1]);
    }

    proptest! {
        // Random integer systems built from a known solution stay consistent,
        // and full-rank ones recover that solution exactly.
        #[test]
        fn recovers_planted_solution(
            sol in prop::collection::vec(-5i64..5, 1..6),
            seed_rows in prop::collection::vec(prop::collection::vec(-3i64..4, 6), 1..10),
        ) {
            let n = sol.len();
            let x = row(&sol);
            let mut s = LinearSystem::new(n);
            for r in &seed_rows {
                let coeffs = row(&r[..n]);
                let rhs = coeffs.iter().zip(&x).fold(Rational::zero(), |a, (c, v)| a + c * v);
                let ins = s.insert(coeffs.clone(), rhs.clone());
                let consistent = !matches!(ins, Insertion::Inconsistent { .. });
                prop_assert!(consistent);
                prop_assert_eq!(s.evaluate(&coeffs), Some(rhs));
            }
            if let Some(found) = s.unique_solution() {
                prop_assert_eq!(found, x.clone());
            }
            for v in 0..n {
                if let Some(val) = s.determined_value(v) {
                    prop_assert_eq!(&val, &x[v]);
                }
            }
        }
    }
}
