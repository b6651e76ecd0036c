use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use setsplit_core::analysis::{decode_and_verify, demonstrate_large_k_failure};
use setsplit_core::instance::{self, generate_unique_solution_instance, Assignment, GeneratorConfig, Instance, InstanceDocument};
use setsplit_core::qubo::{build_qubo, export_qubo, import_qubo, Qubo};
use setsplit_core::solvers::{
    brute_force, export_sampleset, import_sampleset, simulated_anneal, AnnealSchedule, SampleSet, ScheduleShape,
};

mod bench;

#[derive(Parser)]
#[command(name = "setsplit", version, about = "Set Splitting as QUBO: generate, build, solve, verify")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SolverKind {
    Exact,
    Anneal,
}

impl SolverKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolverKind::Exact => "exact",
            SolverKind::Anneal => "anneal",
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Shape {
    Geometric,
    Linear,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance with a planted splitting partition.
    Generate {
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, env = "SETSPLIT_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
        /// Where to write the target bitstring [default: <output>.target]
        #[arg(long)]
        target_output: Option<PathBuf>,
        #[arg(long)]
        min_subsets: Option<usize>,
        #[arg(long)]
        allow_duplicates: bool,
    },
    /// Convert a k = 2 edge list ("a b" per line) into an instance file.
    ImportEdges {
        edges: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compile an instance into a QUBO file.
    Build {
        instance: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Sample a QUBO file.
    Solve {
        qubo: PathBuf,
        #[arg(long, value_enum, default_value_t = SolverKind::Anneal)]
        solver: SolverKind,
        #[arg(long, default_value_t = AnnealSchedule::DEFAULT_READS)]
        reads: usize,
        /// Sweeps per read [default: 64 per variable]
        #[arg(long)]
        sweeps: Option<usize>,
        #[arg(long, default_value_t = AnnealSchedule::DEFAULT_BETA_INITIAL)]
        beta_initial: f64,
        #[arg(long, default_value_t = AnnealSchedule::DEFAULT_BETA_FINAL)]
        beta_final: f64,
        #[arg(long, value_enum, default_value_t = Shape::Geometric)]
        schedule: Shape,
        #[arg(long, env = "SETSPLIT_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check an assignment against an instance. Exits 1 if some subset is not split.
    Verify {
        instance: PathBuf,
        /// Bitstring, file holding a bitstring, or sample set (lowest record is used).
        /// Defaults to the target stored in the instance file.
        solution: Option<String>,
    },
    /// Generate, build and solve a range of sizes.
    Bench {
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, value_delimiter = ',', default_value = "0")]
        seeds: Vec<u64>,
        #[arg(long, value_enum, default_value_t = SolverKind::Anneal)]
        solver: SolverKind,
        #[arg(long, default_value_t = 100)]
        reads: usize,
        #[arg(long, default_value_t = AnnealSchedule::DEFAULT_SWEEPS_PER_VARIABLE)]
        sweeps_per_variable: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Energy histogram of a sample set as CSV.
    Hist {
        sampleset: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also draw a bar chart on stderr.
        #[arg(long)]
        chart: bool,
    },
    /// Compare energy minimizers with split-count maximizers by enumeration.
    LargeK {
        instance: PathBuf,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn load_instance(path: &Path) -> Result<InstanceDocument> {
    instance::load_document(&read(path)?).with_context(|| format!("loading instance {}", path.display()))
}

fn load_qubo(path: &Path) -> Result<Qubo> {
    import_qubo(&read(path)?).with_context(|| format!("loading QUBO {}", path.display()))
}

pub fn solve(qubo: &Qubo, solver: SolverKind, schedule: &AnnealSchedule) -> Result<SampleSet> {
    Ok(match solver {
        SolverKind::Exact => brute_force(qubo)?,
        SolverKind::Anneal => simulated_anneal(qubo, schedule)?,
    })
}

/// Number of assignments that split every subset, when small enough to count.
fn count_splitting(inst: &Instance) -> Option<u64> {
    let n = inst.num_elements;
    if n > 20 {
        return None;
    }
    let count = (0..1u64 << n)
        .filter(|&code| {
            inst.subsets.iter().all(|s| {
                let ones = s.iter().filter(|&&e| code >> e & 1 == 1).count();
                ones > 0 && ones < s.len()
            })
        })
        .count();
    Some(count as u64)
}

fn resolve_solution(doc: &InstanceDocument, solution: Option<&str>) -> Result<Assignment> {
    let Some(arg) = solution else {
        return doc.target.clone().context("no solution given and the instance stores no target");
    };
    let path = Path::new(arg);
    let text = if path.is_file() { read(path)? } else { arg.to_string() };
    if text.starts_with("sampleset") {
        let set = import_sampleset(&text)?;
        return Ok(set.lowest().context("sample set has no records")?.assignment.clone());
    }
    text.trim().parse::<Assignment>().with_context(|| format!("parsing assignment {:?}", text.trim()))
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Generate {
            size,
            k,
            seed,
            output,
            target_output,
            min_subsets,
            allow_duplicates,
        } => {
            let cfg = GeneratorConfig {
                allow_duplicate_subsets: allow_duplicates,
                min_subsets,
                ..GeneratorConfig::new(size, k, seed)
            };
            let (inst, target) = generate_unique_solution_instance(&cfg)?;
            let doc = InstanceDocument {
                instance: inst,
                target: Some(target.clone()),
            };
            fs::write(&output, instance::save_document(&doc))?;
            let target_path = target_output.unwrap_or_else(|| {
                let mut p = output.clone().into_os_string();
                p.push(".target");
                p.into()
            });
            fs::write(&target_path, format!("{target}\n"))?;
            println!(
                "wrote {} ({} elements, {} subsets of size {k}, seed {seed})",
                output.display(),
                size,
                doc.instance.num_subsets()
            );
            println!("target {} -> {}", target, target_path.display());
            if let Some(count) = count_splitting(&doc.instance) {
                println!("splitting assignments: {count} (unique up to complement: {})", count == 2);
            }
        }
        Command::ImportEdges { edges, output } => {
            let inst = Instance::from_edge_list(&read(&edges)?)?;
            write_or_print(output.as_deref(), &instance::save(&inst))?;
        }
        Command::Build { instance, output } => {
            let doc = load_instance(&instance)?;
            let qubo = build_qubo(&doc.instance)?;
            write_or_print(output.as_deref(), &export_qubo(&qubo))?;
        }
        Command::Solve {
            qubo,
            solver,
            reads,
            sweeps,
            beta_initial,
            beta_final,
            schedule,
            seed,
            output,
        } => {
            let q = load_qubo(&qubo)?;
            let defaults = AnnealSchedule::default_for(q.num_variables());
            let sched = AnnealSchedule {
                num_reads: reads,
                sweeps_per_read: sweeps.unwrap_or(defaults.sweeps_per_read),
                beta_initial,
                beta_final,
                shape: match schedule {
                    Shape::Geometric => ScheduleShape::Geometric,
                    Shape::Linear => ScheduleShape::Linear,
                },
                seed,
            };
            let set = solve(&q, solver, &sched)?;
            write_or_print(output.as_deref(), &export_sampleset(&set))?;
            if output.is_some() {
                let low = set.lowest().context("no samples")?;
                eprintln!(
                    "{} records, lowest energy {} ({} with offset), {:.3} s",
                    set.records().len(),
                    low.energy,
                    low.energy + set.offset(),
                    set.info().elapsed.as_secs_f64()
                );
            }
        }
        Command::Verify { instance, solution } => {
            let doc = load_instance(&instance)?;
            let x = resolve_solution(&doc, solution.as_deref())?;
            let report = decode_and_verify(&doc.instance, &x)?;
            print!("{}", report.to_text());
            if !report.fully_split {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Bench {
            sizes,
            k,
            seeds,
            solver,
            reads,
            sweeps_per_variable,
            csv,
        } => {
            let rows = bench::run(&sizes, k, &seeds, solver, reads, sweeps_per_variable)?;
            print!("{}", bench::table(&rows));
            if let Some(path) = csv {
                bench::write_csv(&path, &rows)?;
            }
        }
        Command::Hist { sampleset, output, chart } => {
            let set = import_sampleset(&read(&sampleset)?)?;
            let hist = set.histogram();
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(Vec::new());
            w.write_record(["energy", "occurrences"])?;
            for (e, c) in &hist {
                w.write_record([e.to_string(), c.to_string()])?;
            }
            let text = String::from_utf8(w.into_inner()?)?;
            write_or_print(output.as_deref(), &text)?;
            if chart {
                eprint!("{}", bar_chart(&hist, 50));
            }
        }
        Command::LargeK { instance } => {
            let doc = load_instance(&instance)?;
            print!("{}", demonstrate_large_k_failure(&doc.instance)?.to_text());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn bar_chart(hist: &[(f64, usize)], width: usize) -> String {
    let max = hist.iter().map(|&(_, c)| c).max().unwrap_or(0).max(1);
    let label_width = hist.iter().map(|(e, _)| e.to_string().len()).max().unwrap_or(0);
    let mut out = String::new();
    for (e, c) in hist {
        let len = (c * width).div_ceil(max);
        out.push_str(&format!("{:>label_width$} | {} {c}\n", e.to_string(), "#".repeat(len)));
    }
    out
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
