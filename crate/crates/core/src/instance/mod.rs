//! Set Splitting instances and partition assignments.
//!
//! An [`Instance`] is a ground set `{0, .., num_elements}` together with a
//! family of subsets, each of cardinality at least two, and optional
//! positive per-subset weights. An [`Assignment`] places every element on
//! one side of a 2-partition: bit `1` means the element belongs to `S1`,
//! bit `0` means it belongs to `S2`.

mod file;
mod generator;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub use file::{load, load_document, save, save_document, InstanceDocument};
pub use generator::{generate_unique_solution_instance, GeneratorConfig};

#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub num_elements: usize,
    pub subsets: Vec<Vec<usize>>,
    pub weights: Option<Vec<f64>>,
}

/// A single reason an [`Instance`] is malformed.
#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    NoElements,
    IndexOutOfRange { subset: usize, element: usize },
    SubsetTooSmall { subset: usize, len: usize },
    DuplicateElement { subset: usize, element: usize },
    WeightCountMismatch { weights: usize, subsets: usize },
    NonPositiveWeight { subset: usize, weight: f64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::NoElements => write!(f, "instance has no elements"),
            Violation::IndexOutOfRange { subset, element } => {
                write!(f, "subset {subset}: element {element} out of range")
            }
            Violation::SubsetTooSmall { subset, len } => {
                write!(f, "subset {subset}: cardinality {len} is below 2")
            }
            Violation::DuplicateElement { subset, element } => {
                write!(f, "subset {subset}: element {element} appears more than once")
            }
            Violation::WeightCountMismatch { weights, subsets } => {
                write!(f, "{weights} weights given for {subsets} subsets")
            }
            Violation::NonPositiveWeight { subset, weight } => {
                write!(f, "subset {subset}: weight {weight} is not a positive finite number")
            }
        }
    }
}

impl Instance {
    pub fn new(num_elements: usize, subsets: Vec<Vec<usize>>) -> Self {
        Instance {
            num_elements,
            subsets,
            weights: None,
        }
    }

    pub fn with_weights(mut self, weights: Vec<f64>) -> Self {
        self.weights = Some(weights);
        self
    }

    /// Lists every structural problem with the instance. Empty means valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.num_elements == 0 {
            out.push(Violation::NoElements);
        }
        let mut seen = vec![usize::MAX; self.num_elements];
        for (j, subset) in self.subsets.iter().enumerate() {
            if subset.len() < 2 {
                out.push(Violation::SubsetTooSmall {
                    subset: j,
                    len: subset.len(),
                });
            }
            for &e in subset {
                match seen.get_mut(e) {
                    None => out.push(Violation::IndexOutOfRange {
                        subset: j,
                        element: e,
                    }),
                    Some(mark) if *mark == j => {
                        out.push(Violation::DuplicateElement {
                            subset: j,
                            element: e,
                        })
                    }
                    Some(mark) => *mark = j,
                }
            }
        }
        if let Some(weights) = &self.weights {
            if weights.len() != self.subsets.len() {
                out.push(Violation::WeightCountMismatch {
                    weights: weights.len(),
                    subsets: self.subsets.len(),
                });
            }
            for (j, &w) in weights.iter().enumerate() {
                if !(w > 0.0 && w.is_finite()) {
                    out.push(Violation::NonPositiveWeight { subset: j, weight: w });
                }
            }
        }
        out
    }

    /// Like [`Instance::validate`], but as a `Result`.
    pub fn check(&self) -> Result<()> {
        let violations = self.validate();
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidInstance(violations))
        }
    }

    pub fn num_subsets(&self) -> usize {
        self.subsets.len()
    }

    /// Weight of subset `j`, `1.0` for unweighted instances.
    pub fn weight(&self, j: usize) -> f64 {
        self.weights.as_ref().map_or(1.0, |w| w[j])
    }

    pub fn is_unit_weighted(&self) -> bool {
        self.weights
            .as_ref()
            .is_none_or(|w| w.iter().all(|&x| x == 1.0))
    }

    pub fn max_cardinality(&self) -> usize {
        self.subsets.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Reads a plain `u v` edge list as a k = 2 instance.
    ///
    /// Blank lines and lines starting with `#` are skipped. The ground set
    /// is sized to the largest index seen.
    pub fn from_edge_list(text: &str) -> Result<Instance> {
        let mut subsets = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(Error::parse(n + 1, "expected two element indices"));
            }
            let mut edge = Vec::with_capacity(2);
            for f in fields {
                let v = f
                    .parse::<usize>()
                    .map_err(|e| Error::parse(n + 1, format!("bad element index {f:?}: {e}")))?;
                edge.push(v);
            }
            subsets.push(edge);
        }
        let num_elements = subsets.iter().flatten().max().map_or(0, |&m| m + 1);
        let instance = Instance::new(num_elements, subsets);
        instance.check()?;
        Ok(instance)
    }
}

/// A 2-partition of the ground set, one bit per element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment(Vec<bool>);

impl Assignment {
    pub fn new(bits: Vec<bool>) -> Self {
        Assignment(bits)
    }

    pub fn zeros(len: usize) -> Self {
        Assignment(vec![false; len])
    }

    /// The assignment whose bits are the low `len` bits of `code`, element 0
    /// being the least significant.
    pub fn from_index(code: u64, len: usize) -> Self {
        Assignment((0..len).map(|i| code >> i & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i]
    }

    pub fn flip(&mut self, i: usize) {
        self.0[i] = !self.0[i];
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn complement(&self) -> Assignment {
        Assignment(self.0.iter().map(|b| !b).collect())
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }
}

impl From<Vec<bool>> for Assignment {
    fn from(bits: Vec<bool>) -> Self {
        Assignment(bits)
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Assignment {
    type Err = Error;

    /// Parses a bitstring such as `01101`.
    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::parse(1, format!("invalid bit {other:?} in assignment"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Assignment)
    }
}
