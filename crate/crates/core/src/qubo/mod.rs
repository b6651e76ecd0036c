//! Upper-triangular QUBO models.
//!
//! The energy of an assignment `x` is
//!
//! ```text
//! E(x) = sum_i Q[i,i] x_i + sum_{i<j} Q[i,j] x_i x_j
//! ```
//!
//! plus a constant offset that is tracked separately so that absolute
//! energies of compiled instances stay meaningful.

mod build;
mod file;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::instance::Assignment;

pub use build::{build_qubo, cardinality_penalty, subset_penalty};
pub use file::{export_qubo, import_qubo};

#[derive(Clone, Debug, PartialEq)]
pub struct Qubo {
    num_variables: usize,
    linear: Vec<f64>,
    quadratic: BTreeMap<(usize, usize), f64>,
    offset: f64,
    // Symmetric adjacency derived from `quadratic`, for O(degree) deltas.
    neighbors: Vec<Vec<(usize, f64)>>,
}

/// Accumulates coefficients additively, then freezes them into a [`Qubo`].
#[derive(Clone, Debug)]
pub struct QuboBuilder {
    num_variables: usize,
    linear: Vec<f64>,
    quadratic: BTreeMap<(usize, usize), f64>,
    offset: f64,
}

impl QuboBuilder {
    pub fn new(num_variables: usize) -> Self {
        QuboBuilder {
            num_variables,
            linear: vec![0.0; num_variables],
            quadratic: BTreeMap::new(),
            offset: 0.0,
        }
    }

    pub fn add_linear(&mut self, i: usize, value: f64) -> Result<&mut Self> {
        if i >= self.num_variables {
            return Err(Error::IndexOutOfRange {
                index: i,
                num_variables: self.num_variables,
            });
        }
        self.linear[i] += value;
        Ok(self)
    }

    /// Adds to the coupling between `i` and `j`; the pair is stored as
    /// `(min, max)`.
    pub fn add_quadratic(&mut self, i: usize, j: usize, value: f64) -> Result<&mut Self> {
        if i == j || i.max(j) >= self.num_variables {
            return Err(Error::InvalidCoupling {
                i,
                j,
                num_variables: self.num_variables,
            });
        }
        *self.quadratic.entry((i.min(j), i.max(j))).or_insert(0.0) += value;
        Ok(self)
    }

    pub fn add_offset(&mut self, value: f64) -> &mut Self {
        self.offset += value;
        self
    }

    pub fn build(self) -> Qubo {
        let mut quadratic = self.quadratic;
        quadratic.retain(|_, v| *v != 0.0);
        let mut linear = self.linear;
        for v in &mut linear {
            // normalise -0.0 so it never reaches the exporter
            if *v == 0.0 {
                *v = 0.0;
            }
        }
        let mut neighbors = vec![Vec::new(); self.num_variables];
        for (&(i, j), &v) in &quadratic {
            neighbors[i].push((j, v));
            neighbors[j].push((i, v));
        }
        Qubo {
            num_variables: self.num_variables,
            linear,
            quadratic,
            offset: self.offset,
            neighbors,
        }
    }
}

impl Qubo {
    pub fn num_variables(&self) -> usize {
        self.num_variables
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// Diagonal coefficient `Q[i,i]`.
    pub fn linear(&self, i: usize) -> f64 {
        self.linear[i]
    }

    /// Nonzero diagonal terms in ascending index order.
    pub fn linear_terms(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.linear
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0.0)
            .map(|(i, v)| (i, *v))
    }

    /// Coupling `Q[i,j]`, in either argument order; zero when absent.
    pub fn quadratic(&self, i: usize, j: usize) -> f64 {
        self.quadratic
            .get(&(i.min(j), i.max(j)))
            .copied()
            .unwrap_or(0.0)
    }

    /// Nonzero couplings keyed `(i, j)` with `i < j`, in ascending order.
    pub fn quadratic_terms(&self) -> impl Iterator<Item = ((usize, usize), f64)> + '_ {
        self.quadratic.iter().map(|(k, v)| (*k, *v))
    }

    pub fn num_interactions(&self) -> usize {
        self.quadratic.len()
    }

    pub fn neighbors(&self, i: usize) -> &[(usize, f64)] {
        &self.neighbors[i]
    }

    fn check_len(&self, x: &Assignment) -> Result<()> {
        if x.len() != self.num_variables {
            return Err(Error::LengthMismatch {
                expected: self.num_variables,
                actual: x.len(),
            });
        }
        Ok(())
    }

    /// Energy without the offset. Terms are summed in a fixed order (diagonal
    /// ascending, then couplings ascending), so the result is reproducible
    /// bit for bit.
    pub fn energy(&self, x: &Assignment) -> Result<f64> {
        self.check_len(x)?;
        Ok(self.evaluate(x.bits()))
    }

    pub fn energy_with_offset(&self, x: &Assignment) -> Result<f64> {
        Ok(self.energy(x)? + self.offset)
    }

    pub(crate) fn evaluate(&self, bits: &[bool]) -> f64 {
        let mut e = 0.0;
        for (i, &v) in self.linear.iter().enumerate() {
            if bits[i] {
                e += v;
            }
        }
        for (&(i, j), &v) in &self.quadratic {
            if bits[i] && bits[j] {
                e += v;
            }
        }
        e
    }

    /// `E(x with bit i flipped) - E(x)`, in O(degree of i).
    pub fn single_bit_flip_delta(&self, x: &Assignment, i: usize) -> Result<f64> {
        self.check_len(x)?;
        if i >= self.num_variables {
            return Err(Error::IndexOutOfRange {
                index: i,
                num_variables: self.num_variables,
            });
        }
        let field = self.local_field(x.bits(), i);
        Ok(if x.get(i) { -field } else { field })
    }

    /// `Q[i,i] + sum_j Q[i,j] x_j`: the energy change of switching bit `i` on.
    pub(crate) fn local_field(&self, bits: &[bool], i: usize) -> f64 {
        self.neighbors[i]
            .iter()
            .filter(|(j, _)| bits[*j])
            .fold(self.linear[i], |acc, (_, v)| acc + v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Q from the five-element worked example, read off the matrix.
    fn worked_qubo() -> Qubo {
        let mut b = QuboBuilder::new(5);
        for (i, v) in [(0, -2.0), (1, -2.0), (2, -1.0), (3, -1.0), (4, -1.0)] {
            b.add_linear(i, v).unwrap();
        }
        for (i, j, v) in [(0, 1, 2.0), (0, 2, 1.0), (0, 4, 1.0), (1, 3, 2.0), (2, 4, 1.0)] {
            b.add_quadratic(i, j, v).unwrap();
        }
        b.add_offset(3.5);
        b.build()
    }

    #[test]
    fn worked_energy() {
        let q = worked_qubo();
        let x: Assignment = "01101".parse().unwrap();
        assert_eq!(q.energy(&x).unwrap(), -3.0);
        assert_eq!(q.energy_with_offset(&x).unwrap(), 0.5);
        assert_eq!(q.energy(&Assignment::zeros(5)).unwrap(), 0.0);
    }

    #[test]
    fn worked_flip_delta() {
        let q = worked_qubo();
        let zeros = Assignment::zeros(5);
        assert_eq!(q.single_bit_flip_delta(&zeros, 0).unwrap(), -2.0);
        let mut x = zeros.clone();
        let d1 = q.single_bit_flip_delta(&x, 0).unwrap();
        x.flip(0);
        let d2 = q.single_bit_flip_delta(&x, 0).unwrap();
        assert_eq!(d1 + d2, 0.0);
        assert!(matches!(
            q.single_bit_flip_delta(&zeros, 5),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn length_mismatch() {
        let q = worked_qubo();
        assert!(matches!(
            q.energy(&Assignment::zeros(4)),
            Err(Error::LengthMismatch { expected: 5, actual: 4 })
        ));
    }

    #[test]
    fn builder_merges_and_drops_zeros() {
        let mut b = QuboBuilder::new(3);
        b.add_quadratic(2, 0, 1.5).unwrap();
        b.add_quadratic(0, 2, -1.5).unwrap();
        b.add_quadratic(1, 2, 0.25).unwrap();
        b.add_quadratic(2, 1, 0.25).unwrap();
        assert!(b.add_quadratic(1, 1, 1.0).is_err());
        assert!(b.add_quadratic(0, 3, 1.0).is_err());
        assert!(b.add_linear(3, 1.0).is_err());
        let q = b.build();
        assert_eq!(q.quadratic_terms().collect::<Vec<_>>(), vec![((1, 2), 0.5)]);
        assert_eq!(q.quadratic(2, 1), 0.5);
        assert_eq!(q.neighbors(0), &[]);
        assert_eq!(q.linear_terms().count(), 0);
    }
}
