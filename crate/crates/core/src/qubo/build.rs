//! Compilation of Set Splitting instances into penalty QUBOs.
//!
//! Each subset `F_j` of cardinality `m` and weight `W_j` contributes
//!
//! ```text
//! W_j/(m-1) * sum_{a<b in F_j} [ x_a x_b + (1 - x_a)(1 - x_b) ]
//! ```
//!
//! The first product penalizes pairs that both land in `S1`, the second
//! pairs that both land in `S2`. Expanding the second product gives, per
//! pair, `+2c` on the coupling, `-c` on both diagonal entries and `+c` on
//! the offset, with `c = W_j/(m-1)`.

use crate::error::Result;
use crate::instance::{Assignment, Instance};

use super::{Qubo, QuboBuilder};

pub fn build_qubo(instance: &Instance) -> Result<Qubo> {
    instance.check()?;
    let mut builder = QuboBuilder::new(instance.num_elements);
    for (j, subset) in instance.subsets.iter().enumerate() {
        let scale = instance.weight(j) / (subset.len() - 1) as f64;
        for (p, &a) in subset.iter().enumerate() {
            for &b in &subset[p + 1..] {
                builder.add_quadratic(a, b, 2.0 * scale)?;
                builder.add_linear(a, -scale)?;
                builder.add_linear(b, -scale)?;
                builder.add_offset(scale);
            }
        }
    }
    Ok(builder.build())
}

/// Penalty of a weight-`weight` subset of cardinality `m` with `ones` of
/// its elements in `S1`: `weight/(m-1) * (C(ones,2) + C(m-ones,2))`.
pub fn cardinality_penalty(m: usize, ones: usize, weight: f64) -> f64 {
    debug_assert!(m >= 2 && ones <= m);
    let pairs = |n: usize| (n * n.saturating_sub(1) / 2) as f64;
    weight / (m - 1) as f64 * (pairs(ones) + pairs(m - ones))
}

/// Exact contribution of one subset to the energy-with-offset at `x`.
pub fn subset_penalty(subset: &[usize], weight: f64, x: &Assignment) -> f64 {
    let ones = subset.iter().filter(|&&e| x.get(e)).count();
    cardinality_penalty(subset.len(), ones, weight)
}
