//! Metropolis simulated annealing.
//!
//! Every read starts from a uniformly random assignment and performs
//! `sweeps_per_read` sweeps; one sweep visits each variable once in index
//! order and accepts a flip with probability `min(1, exp(-beta * delta))`.
//! Read `r` draws from stream `r` of a ChaCha8 generator seeded with the
//! schedule seed, so reads are independent and the result does not depend
//! on how reads are scheduled across threads.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{SampleSet, SampleSetInfo};
use crate::error::{Error, Result};
use crate::instance::Assignment;
use crate::qubo::Qubo;

pub(super) const NAME: &str = "simulated-annealing";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScheduleShape {
    Geometric,
    Linear,
}

impl ScheduleShape {
    pub fn as_str(&self) -> &'static str {
        match self {
            ScheduleShape::Geometric => "geometric",
            ScheduleShape::Linear => "linear",
        }
    }
}

impl std::str::FromStr for ScheduleShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "geometric" => Ok(ScheduleShape::Geometric),
            "linear" => Ok(ScheduleShape::Linear),
            other => Err(Error::InvalidSchedule(format!("unknown schedule shape {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnnealSchedule {
    pub num_reads: usize,
    pub sweeps_per_read: usize,
    pub beta_initial: f64,
    pub beta_final: f64,
    pub shape: ScheduleShape,
    pub seed: u64,
}

impl AnnealSchedule {
    pub const DEFAULT_READS: usize = 2000;
    pub const DEFAULT_BETA_INITIAL: f64 = 0.1;
    pub const DEFAULT_BETA_FINAL: f64 = 10.0;
    pub const DEFAULT_SWEEPS_PER_VARIABLE: usize = 64;

    /// Geometric 0.1 -> 10 over `64 * num_variables` sweeps, 2000 reads.
    pub fn default_for(num_variables: usize) -> Self {
        AnnealSchedule {
            num_reads: Self::DEFAULT_READS,
            sweeps_per_read: Self::DEFAULT_SWEEPS_PER_VARIABLE * num_variables,
            beta_initial: Self::DEFAULT_BETA_INITIAL,
            beta_final: Self::DEFAULT_BETA_FINAL,
            shape: ScheduleShape::Geometric,
            seed: 0,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_reads(mut self, num_reads: usize) -> Self {
        self.num_reads = num_reads;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.num_reads == 0 {
            return Err(Error::InvalidSchedule("num_reads must be positive".into()));
        }
        if !(self.beta_initial > 0.0 && self.beta_final > self.beta_initial && self.beta_final.is_finite()) {
            return Err(Error::InvalidSchedule(format!(
                "need 0 < beta_initial < beta_final, got {} and {}",
                self.beta_initial, self.beta_final
            )));
        }
        Ok(())
    }

    /// Inverse temperature for each sweep.
    pub fn betas(&self) -> Vec<f64> {
        let n = self.sweeps_per_read;
        if n == 1 {
            return vec![self.beta_final];
        }
        let (b0, b1) = (self.beta_initial, self.beta_final);
        (0..n)
            .map(|s| {
                let t = s as f64 / (n - 1) as f64;
                match self.shape {
                    ScheduleShape::Geometric => b0 * (b1 / b0).powf(t),
                    ScheduleShape::Linear => b0 + (b1 - b0) * t,
                }
            })
            .collect()
    }
}

/// Memo of `exp(-beta * delta)` for one sweep. Deltas repeat heavily within
/// a sweep (they are small multiples of the coupling scale), so most lookups
/// skip the `exp` call. Values are bit-identical to computing it directly.
struct AcceptanceCache {
    beta: f64,
    keys: [u64; 16],
    values: [f64; 16],
}

impl AcceptanceCache {
    // NaN bit pattern: never the key of a real delta
    const EMPTY: u64 = u64::MAX;

    fn new() -> Self {
        AcceptanceCache {
            beta: f64::NAN,
            keys: [Self::EMPTY; 16],
            values: [0.0; 16],
        }
    }

    fn reset(&mut self, beta: f64) {
        self.beta = beta;
        self.keys = [Self::EMPTY; 16];
    }

    #[inline]
    fn probability(&mut self, delta: f64) -> f64 {
        let key = delta.to_bits();
        let slot = (key.wrapping_mul(0x9E37_79B9_7F4A_7C15) >> 60) as usize;
        if self.keys[slot] != key {
            self.keys[slot] = key;
            self.values[slot] = (-self.beta * delta).exp();
        }
        self.values[slot]
    }
}

fn anneal_read(qubo: &Qubo, betas: &[f64], seed: u64, read: usize) -> Assignment {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(read as u64);
    let n = qubo.num_variables();
    let mut bits: Vec<bool> = (0..n).map(|_| rng.random()).collect();
    let mut field: Vec<f64> = (0..n).map(|i| qubo.local_field(&bits, i)).collect();

    let mut cache = AcceptanceCache::new();
    for &beta in betas {
        cache.reset(beta);
        for i in 0..n {
            let delta = if bits[i] { -field[i] } else { field[i] };
            if delta <= 0.0 || rng.random::<f64>() < cache.probability(delta) {
                bits[i] = !bits[i];
                let sign = if bits[i] { 1.0 } else { -1.0 };
                for &(j, v) in qubo.neighbors(i) {
                    field[j] += sign * v;
                }
            }
        }
    }
    Assignment::new(bits)
}

pub fn simulated_anneal(qubo: &Qubo, schedule: &AnnealSchedule) -> Result<SampleSet> {
    schedule.validate()?;
    let start = Instant::now();
    let betas = schedule.betas();
    let reads: Vec<Assignment> = (0..schedule.num_reads)
        .into_par_iter()
        .map(|r| anneal_read(qubo, &betas, schedule.seed, r))
        .collect();
    let info = SampleSetInfo {
        sampler: NAME.to_string(),
        schedule: Some(schedule.clone()),
        elapsed: start.elapsed(),
    };
    Ok(SampleSet::from_reads(qubo, reads, info))
}
