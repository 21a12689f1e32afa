//! Command-line front end: `verify` targets print JSON reports, `trace`
//! writes per-operation cost CSVs, `mutants` runs the fault-seeding suite.
//!
//! Exit codes: 0 when the checked property holds, 1 when a check fails,
//! 2 for usage errors (bad flags, unreadable or unparsable inputs,
//! out-of-range elements, blown budgets).

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use amortq::harness::{
    cong_node_estimate, ensure_within_budget, mutants_node_estimate, run_mutants,
    theorem1_node_estimate, theorem2_node_estimate, verify_cong, verify_laws, verify_lemma,
    verify_theorem1, verify_theorem2,
};
use amortq::mutants::Mutant;
use amortq::queue::Alphabet;
use amortq::trace::{TraceImpl, parse_ops, run_trace, write_csv};

#[derive(Parser)]
#[command(
    name = "amortq",
    version,
    about = "Bounded equivalence checking for cost-instrumented queues"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one verification target and print a JSON report.
    Verify {
        /// Property to check.
        #[arg(value_enum)]
        target: Target,
        /// Alphabet size k; elements are 0..k.
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..))]
        alphabet: u8,
        /// Longest initial lists swept by theorem1.
        #[arg(long = "max-init-len", default_value_t = 3)]
        max_init_len: usize,
        /// Observation depth for the tree searches.
        #[arg(long, default_value_t = 6)]
        depth: u32,
        /// Largest program size swept by theorem2.
        #[arg(long = "max-nodes", default_value_t = 6)]
        max_nodes: usize,
        /// Implementation under test: "batched" or a mutant name.
        #[arg(long = "impl", default_value = "batched")]
        implementation: String,
        /// Sample count for the randomized targets (lemma, laws, cong).
        #[arg(long, default_value_t = 1_000)]
        samples: u64,
        /// Seed for the randomized targets.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Refuse searches estimated to visit more nodes than this.
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replay a JSON op script and write a per-operation cost CSV.
    Trace {
        /// JSON array of {"op":"enqueue","elem":N} and {"op":"dequeue"}.
        #[arg(long)]
        input: PathBuf,
        /// Implementation to replay against.
        #[arg(long = "impl", value_enum)]
        implementation: ImplArg,
        /// Alphabet size; when given, enqueued elements are range-checked.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..))]
        alphabet: Option<u8>,
        /// CSV output path.
        #[arg(long)]
        output: PathBuf,
    },
    /// Check that every seeded fault is caught; print a JSON report.
    Mutants {
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..))]
        alphabet: u8,
        #[arg(long = "max-init-len", default_value_t = 2)]
        max_init_len: usize,
        #[arg(long, default_value_t = 6)]
        depth: u32,
        #[arg(long = "max-nodes", default_value_t = 6)]
        max_nodes: usize,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    /// Batched queue vs potential-charged flat queue, all small states.
    Theorem1,
    /// Observation search vs program sweep at matched bounds.
    Theorem2,
    /// Evaluation commutes with stepping, on random samples.
    Lemma,
    /// Cost monoid, monad, fusion and distribution laws.
    Laws,
    /// Verdicts are stable under stepping both sides.
    Cong,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ImplArg {
    Spec,
    Batched,
}

impl From<ImplArg> for TraceImpl {
    fn from(arg: ImplArg) -> TraceImpl {
        match arg {
            ImplArg::Spec => TraceImpl::Spec,
            ImplArg::Batched => TraceImpl::Batched,
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(pass)` maps to exit 0/1, `Err` to a complaint on stderr and exit 2.
fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Verify {
            target,
            alphabet,
            max_init_len,
            depth,
            max_nodes,
            implementation,
            samples,
            seed,
            budget,
            out,
        } => {
            let alphabet = Alphabet::new(alphabet);
            let mutant = parse_impl(&implementation)?;
            let (pass, json) = match target {
                Target::Theorem1 => {
                    let estimate = theorem1_node_estimate(alphabet, max_init_len, depth);
                    ensure_within_budget(estimate, budget as u128).map_err(|e| e.to_string())?;
                    let report = verify_theorem1(mutant, alphabet, max_init_len, depth);
                    (report.pass, to_json(&report))
                }
                Target::Theorem2 => {
                    if (depth as usize) < max_nodes {
                        return Err(format!(
                            "theorem2 compares at matched bounds; --depth {depth} must be at \
                             least --max-nodes {max_nodes}"
                        ));
                    }
                    let estimate = theorem2_node_estimate(alphabet, max_nodes);
                    ensure_within_budget(estimate, budget as u128).map_err(|e| e.to_string())?;
                    let report = verify_theorem2(mutant, alphabet, max_nodes);
                    (report.pass, to_json(&report))
                }
                Target::Lemma => {
                    let report = verify_lemma(samples, seed, alphabet);
                    (report.pass, to_json(&report))
                }
                Target::Laws => {
                    let report = verify_laws(samples, seed, alphabet);
                    (report.pass, to_json(&report))
                }
                Target::Cong => {
                    let estimate = cong_node_estimate(samples, depth, alphabet);
                    ensure_within_budget(estimate, budget as u128).map_err(|e| e.to_string())?;
                    let report = verify_cong(samples, seed, depth, alphabet);
                    (report.pass, to_json(&report))
                }
            };
            emit(&json, out.as_deref())?;
            let name = target.to_possible_value().expect("no skipped variants");
            eprintln!(
                "{}: {}",
                name.get_name(),
                if pass { "pass" } else { "fail" }
            );
            Ok(pass)
        }
        Command::Trace {
            input,
            implementation,
            alphabet,
            output,
        } => {
            let text = fs::read_to_string(&input)
                .map_err(|e| format!("cannot read {}: {e}", input.display()))?;
            let ops = parse_ops(&text).map_err(|e| e.to_string())?;
            let rows = run_trace(&ops, implementation.into(), alphabet.map(Alphabet::new))
                .map_err(|e| e.to_string())?;
            let file = fs::File::create(&output)
                .map_err(|e| format!("cannot create {}: {e}", output.display()))?;
            write_csv(&rows, file).map_err(|e| e.to_string())?;
            eprintln!(
                "trace: {} ops -> {} rows ({})",
                ops.len(),
                rows.len(),
                output.display()
            );
            Ok(true)
        }
        Command::Mutants {
            alphabet,
            max_init_len,
            depth,
            max_nodes,
            budget,
            out,
        } => {
            let alphabet = Alphabet::new(alphabet);
            let estimate = mutants_node_estimate(alphabet, max_init_len, depth, max_nodes);
            ensure_within_budget(estimate, budget as u128).map_err(|e| e.to_string())?;
            let report = run_mutants(alphabet, max_init_len, depth, max_nodes);
            emit(&to_json(&report), out.as_deref())?;
            eprintln!("mutants: {}", if report.pass { "pass" } else { "fail" });
            Ok(report.pass)
        }
    }
}

fn parse_impl(name: &str) -> Result<Option<Mutant>, String> {
    if name == "batched" {
        return Ok(None);
    }
    if let Some(mutant) = Mutant::from_name(name) {
        return Ok(Some(mutant));
    }
    let known: Vec<&str> = Mutant::ALL.iter().map(|m| m.name()).collect();
    Err(format!(
        "unknown implementation {name:?}; expected \"batched\" or one of: {}",
        known.join(", ")
    ))
}

fn to_json<T: Serialize>(report: &T) -> String {
    serde_json::to_string_pretty(report).expect("reports always serialize")
}

fn emit(json: &str, out: Option<&std::path::Path>) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, format!("{json}\n"))
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            println!("{json}");
            Ok(())
        }
    }
}
