//! Plain-text QUBO interchange.
//!
//! ```text
//! qubo <num_variables> <offset>
//! <i> <j> <value>
//! ...
//! ```
//!
//! One line per nonzero coefficient with `i <= j` (`i == j` for diagonal
//! terms), in ascending `(i, j)` order. Values use the shortest decimal that
//! round-trips to the same `f64`.

use std::fmt::Write;

use super::{Qubo, QuboBuilder};
use crate::error::{Error, Result};

pub fn export_qubo(qubo: &Qubo) -> String {
    let mut out = String::new();
    writeln!(out, "qubo {} {}", qubo.num_variables(), qubo.offset()).unwrap();
    let mut quadratic = qubo.quadratic_terms().peekable();
    for (i, v) in qubo.linear_terms() {
        // couplings (p, q) with p < i precede the diagonal entry (i, i)
        while let Some(&((p, q), w)) = quadratic.peek() {
            if p >= i {
                break;
            }
            writeln!(out, "{p} {q} {w}").unwrap();
            quadratic.next();
        }
        writeln!(out, "{i} {i} {v}").unwrap();
    }
    for ((p, q), w) in quadratic {
        writeln!(out, "{p} {q} {w}").unwrap();
    }
    out
}

fn field<T: std::str::FromStr>(token: Option<&str>, line: usize, name: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    let token = token.ok_or_else(|| Error::parse(line, format!("missing {name}")))?;
    token
        .parse()
        .map_err(|e| Error::parse(line, format!("bad {name} {token:?}: {e}")))
}

fn finite(v: f64, line: usize, name: &str) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::parse(line, format!("{name} must be finite")))
    }
}

pub fn import_qubo(text: &str) -> Result<Qubo> {
    let mut lines = text.lines().enumerate().map(|(n, l)| (n + 1, l));
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "empty input, expected `qubo` header"))?;
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some("qubo") {
        return Err(Error::parse(1, "expected header `qubo <num_variables> <offset>`"));
    }
    let num_variables: usize = field(tokens.next(), 1, "num_variables")?;
    let offset = finite(field(tokens.next(), 1, "offset")?, 1, "offset")?;
    if tokens.next().is_some() {
        return Err(Error::parse(1, "trailing fields in header"));
    }

    let mut builder = QuboBuilder::new(num_variables);
    builder.add_offset(offset);
    let mut last: Option<(usize, usize)> = None;
    for (n, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let i: usize = field(tokens.next(), n, "row index")?;
        let j: usize = field(tokens.next(), n, "column index")?;
        let v = finite(field(tokens.next(), n, "value")?, n, "value")?;
        if tokens.next().is_some() {
            return Err(Error::parse(n, "trailing fields"));
        }
        if i > j || j >= num_variables {
            return Err(Error::parse(
                n,
                format!("entry ({i}, {j}) outside the upper triangle of {num_variables} variables"),
            ));
        }
        if last.is_some_and(|prev| prev >= (i, j)) {
            return Err(Error::parse(n, format!("entry ({i}, {j}) is out of order or repeated")));
        }
        if v == 0.0 {
            return Err(Error::parse(n, format!("explicit zero coefficient at ({i}, {j})")));
        }
        last = Some((i, j));
        if i == j {
            builder.add_linear(i, v)?;
        } else {
            builder.add_quadratic(i, j, v)?;
        }
    }
    Ok(builder.build())
}
