//! Exhaustive enumeration.

use std::collections::HashMap;
use std::time::Instant;

use super::{Sample, SampleSet, SampleSetInfo};
use crate::error::{Error, Result};
use crate::instance::Assignment;
use crate::qubo::Qubo;

pub(super) const NAME: &str = "exact";

/// Largest number of variables accepted by exhaustive search.
pub const BRUTE_FORCE_LIMIT: usize = 26;

// Incremental energies are resynchronised with a full evaluation this often.
const RESYNC_INTERVAL: u64 = 1 << 12;

fn check_capacity(qubo: &Qubo) -> Result<()> {
    if qubo.num_variables() > BRUTE_FORCE_LIMIT {
        return Err(Error::Capacity {
            num_variables: qubo.num_variables(),
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    Ok(())
}

/// Tolerance under which two energies of `qubo` count as tied.
pub(crate) fn tie_tolerance(qubo: &Qubo) -> f64 {
    let scale: f64 = qubo.linear_terms().map(|(_, v)| v.abs()).sum::<f64>()
        + qubo.quadratic_terms().map(|(_, v)| v.abs()).sum::<f64>();
    1e-9 * (1.0 + scale)
}

/// Walks all `2^n` assignments in Gray-code order, calling `visit(code, energy)`.
/// Bit `i` of `code` is variable `i`.
pub(crate) fn for_each_state(qubo: &Qubo, mut visit: impl FnMut(u64, f64)) {
    let n = qubo.num_variables();
    let mut bits = vec![false; n];
    let mut field: Vec<f64> = (0..n).map(|i| qubo.linear(i)).collect();
    let mut code = 0u64;
    let mut energy = 0.0;
    visit(code, energy);
    for step in 1..(1u64 << n) {
        let i = step.trailing_zeros() as usize;
        let turning_on = !bits[i];
        energy += if turning_on { field[i] } else { -field[i] };
        bits[i] = turning_on;
        code ^= 1 << i;
        let sign = if turning_on { 1.0 } else { -1.0 };
        for &(j, v) in qubo.neighbors(i) {
            field[j] += sign * v;
        }
        if step % RESYNC_INTERVAL == 0 {
            energy = qubo.evaluate(&bits);
            for (k, f) in field.iter_mut().enumerate() {
                *f = qubo.local_field(&bits, k);
            }
        }
        visit(code, energy);
    }
}

/// Every minimum-energy assignment of `qubo`, one record each.
pub fn brute_force(qubo: &Qubo) -> Result<SampleSet> {
    check_capacity(qubo)?;
    let start = Instant::now();
    let n = qubo.num_variables();
    let tol = tie_tolerance(qubo);

    let mut best = f64::INFINITY;
    let mut candidates: Vec<u64> = Vec::new();
    for_each_state(qubo, |code, energy| {
        if energy < best - tol {
            best = energy;
            candidates.clear();
            candidates.push(code);
        } else if energy <= best + tol {
            best = best.min(energy);
            candidates.push(code);
        }
    });

    let scored: Vec<(Assignment, f64)> = candidates
        .into_iter()
        .map(|code| {
            let x = Assignment::from_index(code, n);
            let e = qubo.evaluate(x.bits());
            (x, e)
        })
        .collect();
    let exact_min = scored.iter().map(|(_, e)| *e).fold(f64::INFINITY, f64::min);
    let records = scored
        .into_iter()
        .filter(|(_, e)| *e <= exact_min + tol)
        .map(|(assignment, energy)| Sample {
            assignment,
            energy,
            occurrences: 1,
        })
        .collect();

    let info = SampleSetInfo {
        sampler: NAME.to_string(),
        schedule: None,
        elapsed: start.elapsed(),
    };
    Ok(SampleSet::from_records(n, records, qubo.offset(), info))
}

/// Number of assignments at each exact energy (offset excluded), ascending.
pub fn energy_spectrum(qubo: &Qubo) -> Result<Vec<(f64, u64)>> {
    check_capacity(qubo)?;
    let n = qubo.num_variables();
    let mut counts: HashMap<u64, u64> = HashMap::new();
    for code in 0..(1u64 << n) {
        let x = Assignment::from_index(code, n);
        let e = qubo.evaluate(x.bits());
        // fold -0.0 into 0.0 so both land in one bin
        *counts.entry((e + 0.0).to_bits()).or_default() += 1;
    }
    let mut out: Vec<(f64, u64)> = counts
        .into_iter()
        .map(|(bits, c)| (f64::from_bits(bits), c))
        .collect();
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(out)
}
