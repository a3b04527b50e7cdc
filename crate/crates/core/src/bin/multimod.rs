use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;

use multimod::benchgen::{generate, Family, GenParams};
use multimod::calculus::refute_instance;
use multimod::frontend::{parse, ProblemInstance};
use multimod::oracle::{brute_force, OracleVerdict};
use multimod::settings::{LiftStrategy, SolverSettings};

#[derive(Parser)]
#[command(name = "multimod", version, about = "Refute multimodular integer polynomial systems")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Try to refute an instance; prints `unsat` or `unknown` first.
    Solve {
        file: PathBuf,
        #[arg(long, default_value = "weighted-gb")]
        lift_strategy: LiftStrategy,
        #[arg(long, default_value_t = 30000, value_parser = clap::value_parser!(u64).range(1..))]
        gb_budget_ms: u64,
        #[arg(long, default_value_t = 30000, value_parser = clap::value_parser!(u64).range(1..))]
        ilp_budget_ms: u64,
        /// Search the linear system exactly instead of on log-scaled constants.
        #[arg(long)]
        no_ilp_scale: bool,
        #[arg(long, default_value_t = 16)]
        max_depth: usize,
        #[arg(long, default_value_t = 4096)]
        max_nodes: usize,
        /// Wall-clock limit in seconds.
        #[arg(long, default_value_t = 1200, value_parser = clap::value_parser!(u64).range(1..))]
        timeout: u64,
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        stats: bool,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Decide a bounded instance by exhaustive search.
    Oracle { file: PathBuf },
    /// Write a generated instance as `<out>.smt2` and `<out>.mma`.
    Gen {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        p: BigInt,
        #[arg(long)]
        q: Option<BigInt>,
        #[arg(long, default_value_t = 1)]
        limbs: usize,
        #[arg(long)]
        buggy: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        o: PathBuf,
    },
}

fn load(path: &Path) -> Result<ProblemInstance, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn run(cli: Cli) -> Result<(), String> {
    match cli.cmd {
        Cmd::Solve {
            file,
            lift_strategy,
            gb_budget_ms,
            ilp_budget_ms,
            no_ilp_scale,
            max_depth,
            max_nodes,
            timeout,
            trace,
            stats,
            threads,
        } => {
            let inst = load(&file)?;
            let settings = SolverSettings {
                lift_strategy,
                gb_budget: Duration::from_millis(gb_budget_ms),
                ilp_budget: Duration::from_millis(ilp_budget_ms),
                ilp_scale: !no_ilp_scale,
                max_depth,
                max_nodes,
                timeout: Duration::from_secs(timeout),
                trace,
                threads: threads.max(1),
            };
            let r = refute_instance(&inst, &settings);
            println!("{}", r.verdict);
            if let multimod::calculus::Verdict::Unknown(why) = r.verdict {
                println!("reason: {why}");
            }
            for line in &r.trace {
                println!("{line}");
            }
            if stats {
                for line in r.stats.render() {
                    println!("{line}");
                }
                println!("time-ms: {}", r.elapsed.as_millis());
            }
            Ok(())
        }
        Cmd::Oracle { file } => {
            let inst = load(&file)?;
            match brute_force(&inst).map_err(|e| e.to_string())? {
                OracleVerdict::Sat(pt) => {
                    println!("sat");
                    for (name, v) in inst.names().iter().zip(pt) {
                        println!("{name} = {v}");
                    }
                }
                OracleVerdict::Unsat => println!("unsat"),
            }
            Ok(())
        }
        Cmd::Gen {
            family,
            p,
            q,
            limbs,
            buggy,
            seed,
            o,
        } => {
            let params = GenParams {
                family,
                p,
                q,
                limbs,
                buggy,
                seed,
            };
            let b = generate(&params).map_err(|e| e.to_string())?;
            let smt = o.with_extension("smt2");
            let mma = o.with_extension("mma");
            fs::write(&smt, b.to_smt2()).map_err(|e| format!("{}: {e}", smt.display()))?;
            fs::write(&mma, b.to_native()).map_err(|e| format!("{}: {e}", mma.display()))?;
            println!("{}", smt.display());
            println!("{}", mma.display());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
