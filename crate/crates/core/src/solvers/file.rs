//! Plain-text sample set files.
//!
//! ```text
//! sampleset
//! num_variables 5
//! offset 3.5
//! sampler simulated-annealing
//! num_reads 2000
//! sweeps_per_read 320
//! beta_initial 0.1
//! beta_final 10
//! schedule geometric
//! seed 7
//! elapsed_seconds 0.0123
//! records 2
//! -3 1999 01101
//! -2 1 01001
//! ```
//!
//! The metadata block is `key value` lines; schedule keys appear only for
//! annealing runs. Each record line is `energy occurrences bitstring`, with
//! the energy excluding the offset.

use std::collections::HashMap;
use std::fmt::Write;
use std::time::Duration;

use super::{AnnealSchedule, Sample, SampleSet, SampleSetInfo};
use crate::error::{Error, Result};
use crate::instance::Assignment;

pub fn export_sampleset(set: &SampleSet) -> String {
    let mut out = String::from("sampleset\n");
    let info = set.info();
    writeln!(out, "num_variables {}", set.num_variables()).unwrap();
    writeln!(out, "offset {}", set.offset()).unwrap();
    writeln!(out, "sampler {}", info.sampler).unwrap();
    if let Some(s) = &info.schedule {
        writeln!(out, "num_reads {}", s.num_reads).unwrap();
        writeln!(out, "sweeps_per_read {}", s.sweeps_per_read).unwrap();
        writeln!(out, "beta_initial {}", s.beta_initial).unwrap();
        writeln!(out, "beta_final {}", s.beta_final).unwrap();
        writeln!(out, "schedule {}", s.shape.as_str()).unwrap();
        writeln!(out, "seed {}", s.seed).unwrap();
    }
    writeln!(out, "elapsed_seconds {}", info.elapsed.as_secs_f64()).unwrap();
    writeln!(out, "records {}", set.records().len()).unwrap();
    for r in set.records() {
        writeln!(out, "{} {} {}", r.energy, r.occurrences, r.assignment).unwrap();
    }
    out
}

const SCHEDULE_KEYS: [&str; 6] = [
    "num_reads",
    "sweeps_per_read",
    "beta_initial",
    "beta_final",
    "schedule",
    "seed",
];

fn parse<T: std::str::FromStr>(value: &str, line: usize, key: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    value
        .parse()
        .map_err(|e| Error::parse(line, format!("bad {key} {value:?}: {e}")))
}

pub fn import_sampleset(text: &str) -> Result<SampleSet> {
    let mut lines = text.lines().enumerate().map(|(n, l)| (n + 1, l));
    match lines.next() {
        Some((_, "sampleset")) => {}
        _ => return Err(Error::parse(1, "expected `sampleset` header")),
    }

    let mut meta: HashMap<&str, (usize, &str)> = HashMap::new();
    let record_count: usize = loop {
        let (n, line) = lines
            .next()
            .ok_or_else(|| Error::parse(0, "missing `records` line"))?;
        let (key, value) = line
            .split_once(' ')
            .ok_or_else(|| Error::parse(n, format!("expected `key value`, got {line:?}")))?;
        if key == "records" {
            break parse(value, n, key)?;
        }
        let known = ["num_variables", "offset", "sampler", "elapsed_seconds"];
        if !known.contains(&key) && !SCHEDULE_KEYS.contains(&key) {
            return Err(Error::parse(n, format!("unknown field {key:?}")));
        }
        if meta.insert(key, (n, value)).is_some() {
            return Err(Error::parse(n, format!("repeated field {key:?}")));
        }
    };

    let required = |key: &str| {
        meta.get(key)
            .copied()
            .ok_or_else(|| Error::parse(0, format!("missing field {key:?}")))
    };
    let (n, v) = required("num_variables")?;
    let num_variables: usize = parse(v, n, "num_variables")?;
    let (n, v) = required("offset")?;
    let offset: f64 = parse(v, n, "offset")?;
    let (_, sampler) = required("sampler")?;
    let (n, v) = required("elapsed_seconds")?;
    let elapsed = Duration::try_from_secs_f64(parse(v, n, "elapsed_seconds")?)
        .map_err(|e| Error::parse(n, format!("bad elapsed_seconds: {e}")))?;

    let present = SCHEDULE_KEYS.iter().filter(|k| meta.contains_key(*k)).count();
    let schedule = match present {
        0 => None,
        6 => {
            let get = |key: &str| meta[key];
            let (n, v) = get("num_reads");
            let num_reads = parse(v, n, "num_reads")?;
            let (n, v) = get("sweeps_per_read");
            let sweeps_per_read = parse(v, n, "sweeps_per_read")?;
            let (n, v) = get("beta_initial");
            let beta_initial = parse(v, n, "beta_initial")?;
            let (n, v) = get("beta_final");
            let beta_final = parse(v, n, "beta_final")?;
            let (n, v) = get("schedule");
            let shape = parse(v, n, "schedule")?;
            let (n, v) = get("seed");
            let seed = parse(v, n, "seed")?;
            Some(AnnealSchedule {
                num_reads,
                sweeps_per_read,
                beta_initial,
                beta_final,
                shape,
                seed,
            })
        }
        _ => return Err(Error::parse(0, "incomplete schedule block")),
    };

    let mut records = Vec::with_capacity(record_count);
    for (n, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let energy: f64 = parse(tokens.next().unwrap_or(""), n, "energy")?;
        let occurrences: usize = parse(tokens.next().unwrap_or(""), n, "occurrences")?;
        let assignment: Assignment = match tokens.next() {
            Some(bits) => bits.parse().map_err(|_| Error::parse(n, format!("bad bitstring {bits:?}")))?,
            None => Assignment::zeros(0),
        };
        if tokens.next().is_some() {
            return Err(Error::parse(n, "trailing fields"));
        }
        if assignment.len() != num_variables {
            return Err(Error::parse(
                n,
                format!("bitstring has {} bits, expected {num_variables}", assignment.len()),
            ));
        }
        if occurrences == 0 {
            return Err(Error::parse(n, "occurrences must be positive"));
        }
        records.push(Sample {
            assignment,
            energy,
            occurrences,
        });
    }
    if records.len() != record_count {
        return Err(Error::parse(
            0,
            format!("expected {record_count} records, found {}", records.len()),
        ));
    }

    let info = SampleSetInfo {
        sampler: sampler.to_string(),
        schedule,
        elapsed,
    };
    Ok(SampleSet::from_records(num_variables, records, offset, info))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Instance;
    use crate::qubo::build_qubo;
    use crate::solvers::{brute_force, simulated_anneal};

    fn worked() -> crate::qubo::Qubo {
        build_qubo(&Instance::new(5, vec![vec![0, 1], vec![1, 3], vec![0, 2, 4]])).unwrap()
    }

    #[test]
    fn exact_round_trip() {
        let set = brute_force(&worked()).unwrap();
        let text = export_sampleset(&set);
        assert!(text.starts_with("sampleset\nnum_variables 5\noffset 3.5\nsampler exact\n"));
        assert!(text.contains("records 6\n-3 1 01001\n"));
        let back = import_sampleset(&text).unwrap();
        assert_eq!(back, set);
    }

    #[test]
    fn anneal_round_trip() {
        let mut schedule = AnnealSchedule::default_for(5).with_reads(50).with_seed(3);
        schedule.sweeps_per_read = 10;
        let set = simulated_anneal(&worked(), &schedule).unwrap();
        let text = export_sampleset(&set);
        assert!(text.contains("seed 3\n"));
        assert_eq!(import_sampleset(&text).unwrap(), set);
    }

    #[test]
    fn parse_errors() {
        let ok = "sampleset\nnum_variables 2\noffset 1\nsampler exact\nelapsed_seconds 0\nrecords 1\n-1 1 01\n";
        assert!(import_sampleset(ok).is_ok());
        for bad in [
            "samples\n",
            "sampleset\nnum_variables 2\n",
            "sampleset\nnum_variables 2\noffset 1\nsampler exact\nelapsed_seconds 0\ncolour red\nrecords 0\n",
            "sampleset\nnum_variables 2\noffset 1\nsampler exact\nelapsed_seconds 0\nrecords 1\n-1 1 011\n",
            "sampleset\nnum_variables 2\noffset 1\nsampler exact\nelapsed_seconds 0\nrecords 1\nx 1 01\n",
            "sampleset\nnum_variables 2\noffset 1\nsampler exact\nelapsed_seconds 0\nrecords 2\n-1 1 01\n",
            "sampleset\nnum_variables 2\noffset 1\nsampler exact\nelapsed_seconds 0\nseed 4\nrecords 1\n-1 1 01\n",
            "sampleset\nnum_variables 2\noffset 1\nsampler exact\nelapsed_seconds 0\nrecords 1\n-1 0 01\n",
        ] {
            assert!(import_sampleset(bad).is_err(), "{bad:?}");
        }
    }
}
