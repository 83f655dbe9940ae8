use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};

use cyclepack::generate::{gen_complete, gen_random_mindeg_with, gen_sharpness, DEFAULT_FILL_PROBABILITY};
use cyclepack::harness::{self, TrialConfig, EXIT_INPUT_ERROR};
use cyclepack::packer::{default_oracle_limit, PackConfig};
use cyclepack::profile::{CycleProfile, Mode};

#[derive(Parser)]
#[command(name = "cyclepack", version, about = "Vertex-disjoint even-cycle packings in bipartite graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct ProfileArgs {
    /// Comma-separated minimum cycle lengths, e.g. 6,6,8.
    #[arg(long)]
    profile: String,
    #[arg(long, default_value = "theorem")]
    mode: Mode,
}

impl ProfileArgs {
    fn parse(&self) -> anyhow::Result<CycleProfile> {
        CycleProfile::parse(&self.profile, self.mode).context("bad --profile")
    }
}

#[derive(Subcommand)]
enum Command {
    /// Pack a profile into a graph file.
    Solve {
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        profile: ProfileArgs,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        #[arg(long, default_value_t = 8)]
        restarts: usize,
        #[arg(long)]
        oracle_limit: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Seeded random-instance campaign.
    Trials {
        #[arg(long)]
        side: usize,
        /// Minimum degree; defaults to the profile's threshold.
        #[arg(long)]
        delta: Option<usize>,
        #[command(flatten)]
        profile: ProfileArgs,
        #[arg(long)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        #[arg(long, default_value_t = 8)]
        restarts: usize,
        #[arg(long)]
        oracle_limit: Option<usize>,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        json: bool,
        #[arg(long, conflicts_with = "json")]
        csv: bool,
    },
    /// Every bipartite graph on side+side vertices.
    Exhaustive {
        #[arg(long)]
        side: usize,
        #[command(flatten)]
        profile: ProfileArgs,
        #[arg(long)]
        force: bool,
    },
    /// Certify the sharpness construction for even k.
    Sharpness {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        oracle_limit: Option<usize>,
    },
    /// Search for hosts refuting the conjectured threshold.
    Hunt {
        #[arg(long)]
        side: usize,
        #[arg(long)]
        profile: String,
        #[arg(long)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        oracle_limit: Option<usize>,
    },
    /// Write a generated graph.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GenKind {
    Complete {
        #[arg(long)]
        m: usize,
    },
    Random {
        #[arg(long)]
        x: usize,
        #[arg(long)]
        y: usize,
        #[arg(long)]
        delta: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_FILL_PROBABILITY)]
        fill: f64,
    },
    Sharpness {
        #[arg(long)]
        k: usize,
    },
}

fn print_json<T: serde::Serialize>(v: &T) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    let limit = |o: Option<usize>| o.unwrap_or_else(default_oracle_limit);
    match cli.command {
        Command::Solve {
            graph,
            profile,
            budget,
            restarts,
            oracle_limit,
            seed,
            json,
        } => {
            let prof = profile.parse()?;
            let cfg = PackConfig {
                budget,
                restarts,
                oracle_limit: limit(oracle_limit),
                seed,
                record_trace: false,
            };
            let res = harness::cmd_solve(&graph, &prof, &cfg)?;
            if json {
                println!("{}", res.to_json());
            } else {
                print!("{}", res.to_text());
            }
            Ok(res.exit_code())
        }
        Command::Trials {
            side,
            delta,
            profile,
            trials,
            seed,
            budget,
            restarts,
            oracle_limit,
            threads,
            json,
            csv,
        } => {
            let mut cfg = TrialConfig::new(profile.parse()?, side, trials, seed);
            cfg.delta = delta;
            cfg.budget = budget;
            cfg.restarts = restarts;
            cfg.oracle_limit = limit(oracle_limit);
            cfg.threads = threads;
            let summary = harness::cmd_trials(&cfg)?;
            if json {
                println!("{}", summary.to_json());
            } else if csv {
                print!("{}", summary.to_csv());
            } else {
                print!("{}", summary.to_text());
            }
            Ok(if summary.aggregate.theorem_violations > 0 { 4 } else { 0 })
        }
        Command::Exhaustive { side, profile, force } => {
            let summary = harness::cmd_exhaustive(side, &profile.parse()?, force)?;
            print_json(&summary);
            if !summary.ok() {
                eprintln!("THEOREM VIOLATION: {} unpacked graphs", summary.violations.len());
                return Ok(4);
            }
            Ok(0)
        }
        Command::Sharpness { k, oracle_limit } => {
            let report = harness::cmd_sharpness(k, limit(oracle_limit))?;
            print_json(&report);
            Ok(if report.certified { 0 } else { 4 })
        }
        Command::Hunt {
            side,
            profile,
            trials,
            seed,
            out,
            oracle_limit,
        } => {
            let prof = CycleProfile::parse(&profile, Mode::Conjecture).context("bad --profile")?;
            let report = harness::cmd_conjecture_hunt(side, &prof, trials, seed, &out, limit(oracle_limit))?;
            print_json(&report);
            Ok(0)
        }
        Command::Gen { kind, out } => {
            let g = match kind {
                GenKind::Complete { m } => gen_complete(m)?,
                GenKind::Random { x, y, delta, seed, fill } => gen_random_mindeg_with(x, y, delta, fill, seed)?,
                GenKind::Sharpness { k } => gen_sharpness(k)?.0,
            };
            match out {
                Some(path) => harness::write_graph(&path, &g)?,
                None => print!("{}", cyclepack::io::serialize_graph(&g)),
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT_ERROR as u8)
        }
    }
}
