//! Size sweep: generate, build and solve planted instances.

use std::path::Path;
use std::time::Instant;

use anyhow::{ensure, Result};
use setsplit_core::instance::{generate_unique_solution_instance, GeneratorConfig};
use setsplit_core::qubo::build_qubo;
use setsplit_core::solvers::AnnealSchedule;

use crate::{solve, SolverKind};

pub struct Row {
    pub problem_size: usize,
    pub logical_variables: usize,
    pub num_subsets: usize,
    pub solver: SolverKind,
    pub seed: u64,
    pub wall_clock: f64,
    pub ground_energy: f64,
    pub target_energy: f64,
    pub ground_hit_fraction: f64,
}

pub fn run(
    sizes: &[usize],
    k: usize,
    seeds: &[u64],
    solver: SolverKind,
    reads: usize,
    sweeps_per_variable: usize,
) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for &size in sizes {
        for &seed in seeds {
            let (inst, target) = generate_unique_solution_instance(&GeneratorConfig::new(size, k, seed))?;
            let qubo = build_qubo(&inst)?;
            ensure!(qubo.num_variables() == size, "one variable per element");
            let schedule = AnnealSchedule {
                num_reads: reads,
                sweeps_per_read: sweeps_per_variable * size,
                seed,
                ..AnnealSchedule::default_for(size)
            };
            // timed region covers the solver only
            let start = Instant::now();
            let set = solve(&qubo, solver, &schedule)?;
            let wall_clock = start.elapsed().as_secs_f64();
            let target_energy = qubo.energy(&target)?;
            let tol = 1e-9 * (1.0 + target_energy.abs());
            rows.push(Row {
                problem_size: size,
                logical_variables: qubo.num_variables(),
                num_subsets: inst.num_subsets(),
                solver,
                seed,
                wall_clock,
                ground_energy: set.min_energy().unwrap_or(f64::NAN),
                target_energy,
                ground_hit_fraction: set.fraction_at(target_energy, tol),
            });
        }
    }
    Ok(rows)
}

const HEADER: [&str; 9] = [
    "problem_size",
    "logical_variables",
    "num_subsets",
    "solver",
    "seed",
    "wall_clock",
    "ground_energy",
    "target_energy",
    "ground_hit_fraction",
];

fn fields(r: &Row) -> [String; 9] {
    [
        r.problem_size.to_string(),
        r.logical_variables.to_string(),
        r.num_subsets.to_string(),
        r.solver.as_str().to_string(),
        r.seed.to_string(),
        format!("{:.6}", r.wall_clock),
        r.ground_energy.to_string(),
        r.target_energy.to_string(),
        format!("{:.4}", r.ground_hit_fraction),
    ]
}

pub fn table(rows: &[Row]) -> String {
    let cells: Vec<[String; 9]> = rows.iter().map(fields).collect();
    let widths: Vec<usize> = (0..HEADER.len())
        .map(|c| cells.iter().map(|r| r[c].len()).chain([HEADER[c].len()]).max().unwrap())
        .collect();
    let line = |items: &[String]| {
        let padded: Vec<String> = items.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(&HEADER.map(String::from));
    for r in &cells {
        out.push_str(&line(r));
    }
    out
}

pub fn write_csv(path: &Path, rows: &[Row]) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(path)?;
    w.write_record(HEADER)?;
    for r in rows {
        w.write_record(fields(r))?;
    }
    w.flush()?;
    Ok(())
}
