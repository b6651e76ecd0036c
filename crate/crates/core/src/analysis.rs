//! Partition decoding and split verification.
//!
//! Verification scans subsets directly and never looks at energies, so the
//! cases where the penalty QUBO and the split count disagree (subsets of
//! cardinality four or more) remain visible.

use std::fmt::Write;

use thiserror::Error;

use crate::error::{Error, Result};
use crate::instance::{Assignment, Instance};
use crate::qubo::{build_qubo, cardinality_penalty};
use crate::solvers::BRUTE_FORCE_LIMIT;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubsetStatus {
    pub split: bool,
    /// Number of the subset's elements in `S1`.
    pub ones: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SplitReport {
    pub s1: Vec<usize>,
    pub s2: Vec<usize>,
    pub per_subset: Vec<SubsetStatus>,
    pub num_split: usize,
    pub weighted_split_sum: f64,
    pub fully_split: bool,
}

impl SplitReport {
    /// TOML rendering using the same key style as instance files.
    pub fn to_text(&self) -> String {
        let list = |items: Vec<String>| format!("[{}]", items.join(", "));
        let mut out = String::new();
        writeln!(out, "fully_split = {}", self.fully_split).unwrap();
        writeln!(out, "num_subsets = {}", self.per_subset.len()).unwrap();
        writeln!(out, "num_split = {}", self.num_split).unwrap();
        writeln!(out, "weighted_split_sum = {:?}", self.weighted_split_sum).unwrap();
        writeln!(out, "s1 = {}", list(self.s1.iter().map(usize::to_string).collect())).unwrap();
        writeln!(out, "s2 = {}", list(self.s2.iter().map(usize::to_string).collect())).unwrap();
        let split = self.per_subset.iter().map(|s| s.split.to_string()).collect();
        writeln!(out, "split = {}", list(split)).unwrap();
        let ones = self.per_subset.iter().map(|s| s.ones.to_string()).collect();
        writeln!(out, "ones_count = {}", list(ones)).unwrap();
        out
    }
}

pub fn decode_and_verify(instance: &Instance, x: &Assignment) -> Result<SplitReport> {
    if x.len() != instance.num_elements {
        return Err(Error::LengthMismatch {
            expected: instance.num_elements,
            actual: x.len(),
        });
    }
    let (s1, s2): (Vec<usize>, Vec<usize>) = (0..x.len()).partition(|&i| x.get(i));
    let mut weighted_split_sum = 0.0;
    let per_subset: Vec<SubsetStatus> = instance
        .subsets
        .iter()
        .enumerate()
        .map(|(j, subset)| {
            let ones = subset.iter().filter(|&&e| x.get(e)).count();
            let split = ones > 0 && ones < subset.len();
            if split {
                weighted_split_sum += instance.weight(j);
            }
            SubsetStatus { split, ones }
        })
        .collect();
    let num_split = per_subset.iter().filter(|s| s.split).count();
    Ok(SplitReport {
        s1,
        s2,
        fully_split: num_split == per_subset.len(),
        per_subset,
        num_split,
        weighted_split_sum,
    })
}

/// Why the number of split subsets cannot be read off an energy.
#[derive(Clone, Debug, PartialEq, Error)]
pub enum SplitCountError {
    #[error("subset {subset} (cardinality {cardinality}) has split penalties that depend on the balance of the split")]
    UnevenSplitPenalty { subset: usize, cardinality: usize },
    #[error("subset {subset} has an unsplit-minus-split gap of {gap}, others have {expected}")]
    NonUniformGap { subset: usize, gap: f64, expected: f64 },
    #[error("energy {0} is not attainable by any assignment")]
    OffGrid(f64),
}

const GAP_TOL: f64 = 1e-12;

/// Recovers how many subsets are split from the energy-with-offset of the
/// compiled QUBO.
///
/// This works whenever every subset has a single penalty value for all of
/// its split configurations and the jump to an unsplit configuration is the
/// same for every subset, which for unit weights means cardinality at most
/// three (gap 1: 0 or 1 for pairs, 0.5 or 1.5 for triples).
pub fn split_count_from_energy(instance: &Instance, energy_with_offset: f64) -> std::result::Result<usize, SplitCountError> {
    let mut baseline = 0.0;
    let mut gap: Option<f64> = None;
    for (j, subset) in instance.subsets.iter().enumerate() {
        let m = subset.len();
        let w = instance.weight(j);
        let split = cardinality_penalty(m, 1, w);
        if (2..m).any(|a| (cardinality_penalty(m, a, w) - split).abs() > GAP_TOL * (1.0 + split)) {
            return Err(SplitCountError::UnevenSplitPenalty {
                subset: j,
                cardinality: m,
            });
        }
        let g = cardinality_penalty(m, 0, w) - split;
        match gap {
            None => gap = Some(g),
            Some(expected) if (g - expected).abs() > GAP_TOL * (1.0 + expected) => {
                return Err(SplitCountError::NonUniformGap { subset: j, gap: g, expected })
            }
            Some(_) => {}
        }
        baseline += split;
    }

    let tol = 1e-9 * (1.0 + energy_with_offset.abs());
    let excess = energy_with_offset - baseline;
    let unsplit = match gap {
        None => 0.0,
        Some(g) => (excess / g).round(),
    };
    let reconstructed = baseline + unsplit * gap.unwrap_or(0.0);
    let n = instance.num_subsets() as f64;
    if (energy_with_offset - reconstructed).abs() > tol || unsplit < 0.0 || unsplit > n {
        return Err(SplitCountError::OffGrid(energy_with_offset));
    }
    Ok(instance.num_subsets() - unsplit as usize)
}

/// Exhaustive comparison of the QUBO's energy minimizers with the
/// assignments that maximize the (weighted) number of split subsets.
#[derive(Clone, Debug, PartialEq)]
pub struct LargeKReport {
    pub num_assignments: u64,
    /// Minimum energy including the offset.
    pub min_energy: f64,
    pub energy_argmin: Vec<Assignment>,
    /// Maximum of the weighted split sum (the split count when unweighted).
    pub max_split_weight: f64,
    pub split_argmax: Vec<Assignment>,
    /// Weighted split sum achieved by each energy minimizer.
    pub argmin_split_weights: Vec<f64>,
    /// The two sets of optimizers are identical.
    pub coincide: bool,
}

impl LargeKReport {
    pub fn to_text(&self) -> String {
        let bits = |xs: &[Assignment]| {
            let items: Vec<String> = xs.iter().map(|x| format!("\"{x}\"")).collect();
            format!("[{}]", items.join(", "))
        };
        let floats: Vec<String> = self.argmin_split_weights.iter().map(|w| format!("{w:?}")).collect();
        let mut out = String::new();
        writeln!(out, "assignments = {}", self.num_assignments).unwrap();
        writeln!(out, "min_energy = {:?}", self.min_energy).unwrap();
        writeln!(out, "energy_argmin = {}", bits(&self.energy_argmin)).unwrap();
        writeln!(out, "max_split_weight = {:?}", self.max_split_weight).unwrap();
        writeln!(out, "split_argmax = {}", bits(&self.split_argmax)).unwrap();
        writeln!(out, "argmin_split_weights = [{}]", floats.join(", ")).unwrap();
        writeln!(out, "coincide = {}", self.coincide).unwrap();
        out
    }
}

fn collect_optimizers(best: &mut f64, set: &mut Vec<u64>, value: f64, code: u64, tol: f64) {
    if value < *best - tol {
        *best = value;
        set.clear();
        set.push(code);
    } else if value <= *best + tol {
        *best = best.min(value);
        set.push(code);
    }
}

pub fn demonstrate_large_k_failure(instance: &Instance) -> Result<LargeKReport> {
    let qubo = build_qubo(instance)?;
    let n = instance.num_elements;
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::Capacity {
            num_variables: n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let total_weight: f64 = (0..instance.num_subsets()).map(|j| instance.weight(j)).sum();
    let tol = 1e-9 * (1.0 + qubo.offset().abs() + total_weight);

    let mut min_energy = f64::INFINITY;
    let mut argmin = Vec::new();
    let mut neg_max_split = f64::INFINITY;
    let mut argmax = Vec::new();
    for code in 0..(1u64 << n) {
        let x = Assignment::from_index(code, n);
        let energy = qubo.energy_with_offset(&x)?;
        let split = decode_and_verify(instance, &x)?.weighted_split_sum;
        collect_optimizers(&mut min_energy, &mut argmin, energy, code, tol);
        collect_optimizers(&mut neg_max_split, &mut argmax, -split, code, tol);
    }

    // the running best may have drifted within tolerance; re-filter
    let to_assignments = |codes: &[u64]| -> Vec<Assignment> {
        let mut xs: Vec<Assignment> = codes.iter().map(|&c| Assignment::from_index(c, n)).collect();
        xs.sort();
        xs
    };
    let energy_argmin: Vec<Assignment> = to_assignments(&argmin)
        .into_iter()
        .filter(|x| qubo.energy_with_offset(x).unwrap() <= min_energy + tol)
        .collect();
    let split_argmax: Vec<Assignment> = to_assignments(&argmax)
        .into_iter()
        .filter(|x| -decode_and_verify(instance, x).unwrap().weighted_split_sum <= neg_max_split + tol)
        .collect();
    let argmin_split_weights = energy_argmin
        .iter()
        .map(|x| decode_and_verify(instance, x).map(|r| r.weighted_split_sum))
        .collect::<Result<Vec<_>>>()?;

    Ok(LargeKReport {
        num_assignments: 1u64 << n,
        min_energy,
        coincide: energy_argmin == split_argmax,
        energy_argmin,
        max_split_weight: -neg_max_split + 0.0,
        split_argmax,
        argmin_split_weights,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn worked() -> Instance {
        Instance::new(5, vec![vec![0, 1], vec![1, 3], vec![0, 2, 4]])
    }

    #[test]
    fn decodes_worked_solution() {
        let r = decode_and_verify(&worked(), &"01101".parse().unwrap()).unwrap();
        assert!(r.fully_split);
        assert_eq!(r.s1, vec![1, 2, 4]);
        assert_eq!(r.s2, vec![0, 3]);
        assert_eq!(r.num_split, 3);
        assert_eq!(r.weighted_split_sum, 3.0);
    }

    #[test]
    fn invalid_split_leaves_pair_inside_s1() {
        // S1 = {1, 2, 3}, S2 = {0, 4}
        let r = decode_and_verify(&worked(), &"01110".parse().unwrap()).unwrap();
        assert!(!r.fully_split);
        assert!(!r.per_subset[1].split);
        assert_eq!(r.per_subset[1].ones, 2);
        assert_eq!(r.num_split, 2);
    }

    #[test]
    fn all_zeros_splits_nothing() {
        let r = decode_and_verify(&worked(), &Assignment::zeros(5)).unwrap();
        assert!(!r.fully_split);
        assert_eq!(r.num_split, 0);
        assert!(r.s1.is_empty());
        assert!(decode_and_verify(&worked(), &Assignment::zeros(4)).is_err());
    }

    #[test]
    fn report_text() {
        let r = decode_and_verify(&worked(), &"01101".parse().unwrap()).unwrap();
        assert_eq!(
            r.to_text(),
            "fully_split = true\nnum_subsets = 3\nnum_split = 3\nweighted_split_sum = 3.0\n\
             s1 = [1, 2, 4]\ns2 = [0, 3]\nsplit = [true, true, true]\nones_count = [1, 1, 2]\n"
        );
    }

    #[test]
    fn split_count_examples() {
        assert_eq!(split_count_from_energy(&worked(), 0.5), Ok(3));
        assert_eq!(split_count_from_energy(&worked(), 1.5), Ok(2));
        assert_eq!(split_count_from_energy(&worked(), 3.5), Ok(0));
        assert!(matches!(split_count_from_energy(&worked(), 0.75), Err(SplitCountError::OffGrid(_))));
        assert!(matches!(split_count_from_energy(&worked(), 4.5), Err(SplitCountError::OffGrid(_))));
        let pairs = Instance::new(3, vec![vec![0, 1], vec![1, 2]]);
        assert_eq!(split_count_from_energy(&pairs, 0.0), Ok(2));
        assert_eq!(split_count_from_energy(&Instance::new(3, vec![]), 0.0), Ok(0));
    }

    #[test]
    fn split_count_undefined_for_large_subsets() {
        let inst = Instance::new(6, vec![vec![0, 1], vec![0, 1, 2, 3, 4]]);
        assert_eq!(
            split_count_from_energy(&inst, 1.0),
            Err(SplitCountError::UnevenSplitPenalty {
                subset: 1,
                cardinality: 5
            })
        );
        let mixed = worked().with_weights(vec![1.0, 2.0, 1.0]);
        assert!(matches!(
            split_count_from_energy(&mixed, 0.5),
            Err(SplitCountError::NonUniformGap { subset: 1, .. })
        ));
    }

    #[test]
    fn pure_pairs_coincide() {
        let inst = Instance::new(4, vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 2]]);
        let r = demonstrate_large_k_failure(&inst).unwrap();
        assert!(r.coincide);
        assert_eq!(r.num_assignments, 16);
    }

    #[test]
    fn empty_family_everything_optimal() {
        let r = demonstrate_large_k_failure(&Instance::new(3, vec![])).unwrap();
        assert_eq!(r.energy_argmin.len(), 8);
        assert_eq!(r.split_argmax.len(), 8);
        assert!(r.coincide);
        assert_eq!(r.min_energy, 0.0);
        assert_eq!(r.max_split_weight, 0.0);
    }
}
