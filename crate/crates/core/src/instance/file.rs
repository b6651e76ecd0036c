//! TOML instance files.
//!
//! ```toml
//! num_elements = 5
//! subsets = [
//!   [0, 1],
//!   [1, 3],
//!   [0, 2, 4],
//! ]
//! weights = [1.0, 1.0, 2.0]   # optional
//! target = [0, 1, 1, 0, 1]    # optional
//! ```
//!
//! Unknown keys are rejected. [`save`] writes the canonical layout above, so
//! saving a loaded canonical file reproduces it byte for byte.

use std::fmt::Write;

use serde::Deserialize;

use super::{Assignment, Instance};
use crate::error::{Error, Result};

/// An instance together with the optional planted target stored beside it.
#[derive(Clone, Debug, PartialEq)]
pub struct InstanceDocument {
    pub instance: Instance,
    pub target: Option<Assignment>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    num_elements: usize,
    subsets: Vec<Vec<usize>>,
    weights: Option<Vec<f64>>,
    target: Option<Vec<u8>>,
}

pub fn load_document(text: &str) -> Result<InstanceDocument> {
    let raw: RawDocument = toml::from_str(text)?;
    let instance = Instance {
        num_elements: raw.num_elements,
        subsets: raw.subsets,
        weights: raw.weights,
    };
    instance.check()?;
    let target = match raw.target {
        None => None,
        Some(bits) => {
            if bits.len() != instance.num_elements {
                return Err(Error::LengthMismatch {
                    expected: instance.num_elements,
                    actual: bits.len(),
                });
            }
            let bits = bits
                .into_iter()
                .map(|b| match b {
                    0 => Ok(false),
                    1 => Ok(true),
                    other => Err(Error::parse(0, format!("target: bit value {other} is not 0 or 1"))),
                })
                .collect::<Result<Vec<_>>>()?;
            Some(Assignment::new(bits))
        }
    };
    Ok(InstanceDocument { instance, target })
}

pub fn load(text: &str) -> Result<Instance> {
    load_document(text).map(|doc| doc.instance)
}

pub fn save_document(doc: &InstanceDocument) -> String {
    let inst = &doc.instance;
    let mut out = String::new();
    writeln!(out, "num_elements = {}", inst.num_elements).unwrap();
    if inst.subsets.is_empty() {
        out.push_str("subsets = []\n");
    } else {
        out.push_str("subsets = [\n");
        for subset in &inst.subsets {
            writeln!(out, "  {},", int_list(subset.iter())).unwrap();
        }
        out.push_str("]\n");
    }
    if let Some(weights) = &inst.weights {
        let items: Vec<String> = weights.iter().map(|w| format!("{w:?}")).collect();
        writeln!(out, "weights = [{}]", items.join(", ")).unwrap();
    }
    if let Some(target) = &doc.target {
        let bits = target.bits().iter().map(|&b| usize::from(b));
        writeln!(out, "target = {}", int_list(bits)).unwrap();
    }
    out
}

pub fn save(instance: &Instance) -> String {
    save_document(&InstanceDocument {
        instance: instance.clone(),
        target: None,
    })
}

fn int_list<T: ToString>(items: impl Iterator<Item = T>) -> String {
    let items: Vec<String> = items.map(|v| v.to_string()).collect();
    format!("[{}]", items.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    const WORKED: &str = "num_elements = 5
subsets = [
  [0, 1],
  [1, 3],
  [0, 2, 4],
]
";

    #[test]
    fn worked_example_round_trip() {
        let inst = load(WORKED).unwrap();
        assert_eq!(inst.subsets, vec![vec![0, 1], vec![1, 3], vec![0, 2, 4]]);
        assert_eq!(save(&inst), WORKED);
    }

    #[test]
    fn weights_and_target_round_trip() {
        let doc = InstanceDocument {
            instance: Instance::new(5, vec![vec![0, 1], vec![1, 3], vec![0, 2, 4]])
                .with_weights(vec![1.0, 0.1, 2.5]),
            target: Some("01101".parse().unwrap()),
        };
        let text = save_document(&doc);
        assert!(text.contains("weights = [1.0, 0.1, 2.5]"));
        assert!(text.contains("target = [0, 1, 1, 0, 1]"));
        let back = load_document(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(save_document(&back), text);
    }

    #[test]
    fn empty_family() {
        let inst = load("num_elements = 3\nsubsets = []\n").unwrap();
        assert!(inst.subsets.is_empty());
        assert_eq!(save(&inst), "num_elements = 3\nsubsets = []\n");
    }

    #[test]
    fn field_order_is_irrelevant() {
        let inst = load("subsets = [[0, 1]]\nnum_elements = 2\n").unwrap();
        assert_eq!(inst.num_elements, 2);
    }

    #[test]
    fn unknown_field_is_named() {
        let err = load("num_elements = 2\nsubset = [[0, 1]]\n").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("subset"), "{msg}");
        assert!(msg.contains("line 2"), "{msg}");
    }

    #[test]
    fn missing_and_invalid() {
        assert!(load("num_elements = 2\n").unwrap_err().to_string().contains("subsets"));
        assert!(matches!(
            load("num_elements = 3\nsubsets = [[0, 5]]\n"),
            Err(Error::InvalidInstance(_))
        ));
        assert!(load_document("num_elements = 2\nsubsets = []\ntarget = [0, 2]\n").is_err());
        assert!(load_document("num_elements = 2\nsubsets = []\ntarget = [0]\n").is_err());
    }
}
