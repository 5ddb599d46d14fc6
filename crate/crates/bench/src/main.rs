use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use slick_core::{CleaningPolicy, SlickConfig};
use workload_bench::{
    run_grid, run_plan, write_csv, Baseline, BenchError, BenchPlan, BenchRecord, Phase, RunOutput,
    DESK_SCALE, FULL_SCALE,
};

/// Times slick tables against the standard library's maps.
#[derive(Parser)]
#[command(name = "slick-bench", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Benchmark a single slick configuration.
    Bench {
        #[command(flatten)]
        common: CommonArgs,
        /// Defaults to 10.
        #[arg(long)]
        block_size: Option<usize>,
        /// Defaults to twice the block size.
        #[arg(long)]
        sliding_block_size: Option<usize>,
        /// Defaults to the block size.
        #[arg(long)]
        max_offset: Option<usize>,
        /// Defaults to the block size.
        #[arg(long)]
        max_threshold: Option<usize>,
    },
    /// Run the full hyperparameter sweep (8 configurations).
    Grid {
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Args, Clone)]
struct CommonArgs {
    #[arg(long, default_value_t = DESK_SCALE)]
    capacity: usize,
    #[arg(long, default_value_t = DESK_SCALE)]
    ops: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 3)]
    reps: u32,
    /// Comma-separated subset of insert,query,delete.
    #[arg(long, value_delimiter = ',', default_value = "insert,query,delete")]
    phases: Vec<Phase>,
    /// Comma-separated subset of unordered_map,ordered_map, or `none`.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "unordered_map,ordered_map"
    )]
    baselines: Vec<String>,
    /// Backyard cleaning run after each slick deletion.
    #[arg(long, value_enum, default_value_t = Cleaning::None)]
    cleaning: Cleaning,
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Use capacity = ops = 2,000,000.
    #[arg(long)]
    paper_scale: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Cleaning {
    None,
    Targeted,
    Naive,
}

impl CommonArgs {
    fn plan(&self, configs: Vec<SlickConfig>) -> Result<BenchPlan, BenchError> {
        let (capacity, n_ops) = if self.paper_scale {
            (FULL_SCALE, FULL_SCALE)
        } else {
            (self.capacity, self.ops)
        };
        let baselines = self
            .baselines
            .iter()
            .filter(|b| b.as_str() != "none")
            .map(|b| b.parse::<Baseline>())
            .collect::<Result<_, _>>()?;
        let plan = BenchPlan {
            capacity,
            n_ops,
            phases: self.phases.clone(),
            configs,
            baselines,
            cleaning: match self.cleaning {
                Cleaning::None => CleaningPolicy::None,
                Cleaning::Targeted => CleaningPolicy::Targeted,
                Cleaning::Naive => CleaningPolicy::NaiveFull,
            },
            seed: self.seed,
            repetitions: self.reps,
        };
        plan.validate()?;
        Ok(plan)
    }
}

fn print_summary(records: &[BenchRecord]) {
    println!(
        "{:<14} {:<16} {:<7} {:>10} {:>12} {:>10}",
        "impl", "config", "phase", "ops", "ns/op", "backyard"
    );
    for r in records {
        println!(
            "{:<14} {:<16} {:<7} {:>10} {:>12.2} {:>10}",
            r.impl_name,
            r.config,
            r.phase,
            r.ops,
            r.ns_per_op,
            r.backyard_len.map(|b| b.to_string()).unwrap_or_default()
        );
    }
}

fn profiler_hint() {
    let args: Vec<String> = std::env::args().collect();
    eprintln!(
        "hardware counters: perf stat -e cache-misses,branch-misses -- {} --phases <phase>",
        args.join(" ")
    );
}

fn run(cli: Cli) -> Result<(), BenchError> {
    let (common, output) = match cli.command {
        Command::Bench {
            common,
            block_size,
            sliding_block_size,
            max_offset,
            max_threshold,
        } => {
            let b = block_size.unwrap_or(10);
            let config = SlickConfig {
                block_size: b,
                sliding_block_size: sliding_block_size.unwrap_or(2 * b),
                max_offset: max_offset.unwrap_or(b),
                max_threshold: max_threshold.unwrap_or(b),
                capacity: if common.paper_scale {
                    FULL_SCALE
                } else {
                    common.capacity
                },
                seed: common.seed,
            };
            config.validate()?;
            let plan = common.plan(vec![config])?;
            (common, run_plan(&plan)?)
        }
        Command::Grid { common } => {
            let plan = common.plan(Vec::new())?;
            (common, run_grid(&plan)?)
        }
    };
    let RunOutput {
        mut records,
        failures,
    } = output;
    workload_bench::record::sort_records(&mut records);
    print_summary(&records);
    if let Some(path) = &common.csv {
        write_csv(&records, path)?;
        eprintln!("wrote {} rows to {}", records.len(), path.display());
    }
    profiler_hint();
    if let Some((name, err)) = failures.into_iter().next() {
        return Err(BenchError::InvalidPlan(format!("{name}: {err}")));
    }
    Ok(())
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
