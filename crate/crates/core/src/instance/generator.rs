//! Benchmark instances with a planted solution.
//!
//! For k = 2 the subsets are edges of a graph and an assignment splits every
//! subset exactly when it is a proper 2-coloring. The generator draws a
//! random nondegenerate target partition and adds uniformly random
//! cross-partition edges until the graph is connected; a connected bipartite
//! graph has exactly two proper 2-colorings, the target and its complement.
//!
//! For k >= 3, k-subsets are sampled uniformly and kept only when the target
//! splits them, until the hypergraph is connected. The target is guaranteed
//! to split every subset but need not be the only such assignment.

use std::collections::HashSet;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Assignment, Instance};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub num_elements: usize,
    /// Cardinality of every generated subset.
    pub k: usize,
    pub seed: u64,
    pub allow_duplicate_subsets: bool,
    /// Keep adding target-splitting subsets past connectivity until the
    /// family has at least this many members.
    pub min_subsets: Option<usize>,
}

impl GeneratorConfig {
    pub fn new(num_elements: usize, k: usize, seed: u64) -> Self {
        GeneratorConfig {
            num_elements,
            k,
            seed,
            allow_duplicate_subsets: false,
            min_subsets: None,
        }
    }

    fn check(&self) -> Result<()> {
        if self.num_elements < 2 {
            return Err(Error::InvalidConfig(format!(
                "num_elements must be at least 2, got {}",
                self.num_elements
            )));
        }
        if self.k < 2 || self.k > self.num_elements {
            return Err(Error::InvalidConfig(format!(
                "k must lie in [2, {}], got {}",
                self.num_elements, self.k
            )));
        }
        Ok(())
    }
}

struct DisjointSets {
    parent: Vec<usize>,
    components: usize,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            components: n,
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
            self.components -= 1;
        }
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| {
        acc.saturating_mul((n - i) as u128) / (i as u128 + 1)
    })
}

/// Generates an instance together with a target assignment that splits
/// every subset. Deterministic in `config.seed`.
pub fn generate_unique_solution_instance(config: &GeneratorConfig) -> Result<(Instance, Assignment)> {
    config.check()?;
    let n = config.num_elements;
    let k = config.k;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let target = loop {
        let bits: Vec<bool> = (0..n).map(|_| rng.random()).collect();
        if bits.iter().any(|&b| b) && bits.iter().any(|&b| !b) {
            break Assignment::new(bits);
        }
    };
    let ones = target.count_ones();

    // Number of distinct k-subsets the target splits.
    let available = binomial(n, k) - binomial(ones, k) - binomial(n - ones, k);
    let min_subsets = config.min_subsets.unwrap_or(0);
    if !config.allow_duplicate_subsets && min_subsets as u128 > available {
        return Err(Error::InvalidConfig(format!(
            "{min_subsets} distinct subsets requested but the target splits only {available}"
        )));
    }

    let (left, right): (Vec<usize>, Vec<usize>) = (0..n).partition(|&i| target.get(i));
    let mut components = DisjointSets::new(n);
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut subsets = Vec::new();

    while components.components > 1 || subsets.len() < min_subsets {
        let subset = if k == 2 {
            let a = left[rng.random_range(0..left.len())];
            let b = right[rng.random_range(0..right.len())];
            vec![a.min(b), a.max(b)]
        } else {
            let mut s = index::sample(&mut rng, n, k).into_vec();
            s.sort_unstable();
            let a = s.iter().filter(|&&e| target.get(e)).count();
            if a == 0 || a == k {
                continue;
            }
            s
        };
        if !config.allow_duplicate_subsets && !seen.insert(subset.clone()) {
            continue;
        }
        for w in subset.windows(2) {
            components.union(w[0], w[1]);
        }
        subsets.push(subset);
    }

    Ok((Instance::new(n, subsets), target))
}
