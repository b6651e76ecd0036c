//! Samplers for [`Qubo`] models.
//!
//! Both samplers return a [`SampleSet`]: distinct assignments with their
//! energy (offset excluded) and how many reads produced them, sorted by
//! energy and then lexicographically by bitstring.

mod anneal;
mod exact;
mod file;

use std::collections::BTreeMap;
use std::time::Duration;

use crate::error::Result;
use crate::instance::Assignment;
use crate::qubo::Qubo;

pub use anneal::{simulated_anneal, AnnealSchedule, ScheduleShape};
pub use exact::{brute_force, energy_spectrum, BRUTE_FORCE_LIMIT};
pub use file::{export_sampleset, import_sampleset};

#[derive(Clone, Debug, PartialEq)]
pub struct Sample {
    pub assignment: Assignment,
    /// Energy without the offset.
    pub energy: f64,
    pub occurrences: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleSetInfo {
    pub sampler: String,
    pub schedule: Option<AnnealSchedule>,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleSet {
    num_variables: usize,
    records: Vec<Sample>,
    offset: f64,
    info: SampleSetInfo,
}

impl SampleSet {
    /// Aggregates raw reads into occurrence-counted records. Energies are
    /// recomputed from scratch so they match [`Qubo::energy`] exactly.
    pub fn from_reads(
        qubo: &Qubo,
        reads: impl IntoIterator<Item = Assignment>,
        info: SampleSetInfo,
    ) -> SampleSet {
        let mut counts: BTreeMap<Assignment, usize> = BTreeMap::new();
        for read in reads {
            *counts.entry(read).or_default() += 1;
        }
        let records = counts
            .into_iter()
            .map(|(assignment, occurrences)| Sample {
                energy: qubo.evaluate(assignment.bits()),
                assignment,
                occurrences,
            })
            .collect();
        SampleSet::from_records(qubo.num_variables(), records, qubo.offset(), info)
    }

    pub(crate) fn from_records(
        num_variables: usize,
        mut records: Vec<Sample>,
        offset: f64,
        info: SampleSetInfo,
    ) -> SampleSet {
        records.sort_by(|a, b| {
            a.energy
                .total_cmp(&b.energy)
                .then_with(|| a.assignment.cmp(&b.assignment))
        });
        SampleSet {
            num_variables,
            records,
            offset,
            info,
        }
    }

    pub fn num_variables(&self) -> usize {
        self.num_variables
    }

    pub fn records(&self) -> &[Sample] {
        &self.records
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn info(&self) -> &SampleSetInfo {
        &self.info
    }

    /// Total occurrences across all records.
    pub fn num_reads(&self) -> usize {
        self.records.iter().map(|r| r.occurrences).sum()
    }

    pub fn lowest(&self) -> Option<&Sample> {
        self.records.first()
    }

    pub fn min_energy(&self) -> Option<f64> {
        self.lowest().map(|s| s.energy)
    }

    /// Fraction of reads whose energy is within `tol` of `energy`.
    pub fn fraction_at(&self, energy: f64, tol: f64) -> f64 {
        let total = self.num_reads();
        if total == 0 {
            return 0.0;
        }
        let hits: usize = self
            .records
            .iter()
            .filter(|r| (r.energy - energy).abs() <= tol)
            .map(|r| r.occurrences)
            .sum();
        hits as f64 / total as f64
    }

    /// Occurrences per distinct energy, ascending. Energies are grouped by
    /// exact equality.
    pub fn histogram(&self) -> Vec<(f64, usize)> {
        let mut out: Vec<(f64, usize)> = Vec::new();
        for r in &self.records {
            match out.last_mut() {
                Some((e, n)) if *e == r.energy => *n += r.occurrences,
                _ => out.push((r.energy, r.occurrences)),
            }
        }
        out
    }
}

/// Anything that turns a QUBO into a sample set.
pub trait Sampler {
    fn name(&self) -> &'static str;

    fn sample(&self, qubo: &Qubo) -> Result<SampleSet>;
}

/// Exhaustive search returning every ground state.
#[derive(Clone, Copy, Debug, Default)]
pub struct ExactSolver;

impl Sampler for ExactSolver {
    fn name(&self) -> &'static str {
        exact::NAME
    }

    fn sample(&self, qubo: &Qubo) -> Result<SampleSet> {
        brute_force(qubo)
    }
}

#[derive(Clone, Debug)]
pub struct SimulatedAnnealer {
    pub schedule: AnnealSchedule,
}

impl Sampler for SimulatedAnnealer {
    fn name(&self) -> &'static str {
        anneal::NAME
    }

    fn sample(&self, qubo: &Qubo) -> Result<SampleSet> {
        simulated_anneal(qubo, &self.schedule)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Instance;
    use crate::qubo::build_qubo;

    fn info() -> SampleSetInfo {
        SampleSetInfo {
            sampler: "test".into(),
            schedule: None,
            elapsed: Duration::ZERO,
        }
    }

    #[test]
    fn aggregation_sorts_and_counts() {
        let q = build_qubo(&Instance::new(5, vec![vec![0, 1], vec![1, 3], vec![0, 2, 4]])).unwrap();
        let reads = ["10010", "01101", "00000", "01101", "10010", "01101"]
            .iter()
            .map(|s| s.parse().unwrap());
        let set = SampleSet::from_reads(&q, reads, info());
        assert_eq!(set.num_reads(), 6);
        let rows: Vec<(String, f64, usize)> = set
            .records()
            .iter()
            .map(|r| (r.assignment.to_string(), r.energy, r.occurrences))
            .collect();
        assert_eq!(
            rows,
            vec![
                ("01101".to_string(), -3.0, 3),
                ("10010".to_string(), -3.0, 2),
                ("00000".to_string(), 0.0, 1),
            ]
        );
        assert_eq!(set.histogram(), vec![(-3.0, 5), (0.0, 1)]);
        assert!((set.fraction_at(-3.0, 1e-9) - 5.0 / 6.0).abs() < 1e-12);
        assert_eq!(set.offset(), 3.5);
    }
}
