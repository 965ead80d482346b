use clap::{Parser, Subcommand};
use powergin::harness::{self, ExperimentId, ExperimentSpec, HarnessError, RunConfig, TestReport};
use powergin::latent::expand_vandermonde_power_guarded;
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "powergin", version, about = "Run the power-map experiments and inspect latent weight tables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment.
    Run {
        experiment: String,
        /// Override a parameter, `key=value`; repeatable.
        #[arg(long = "param", value_name = "KEY=VALUE")]
        params: Vec<String>,
        #[arg(long)]
        seed: Option<u64>,
        /// Draw the seed from the clock (recorded in the report).
        #[arg(long, conflicts_with = "seed")]
        fresh_seed: bool,
        #[arg(long, default_value = "results")]
        out: PathBuf,
    },
    /// Run every experiment, or those selected by the config file.
    RunAll {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List experiments and their parameters.
    List,
    /// Print the coefficient table of the p-th power of the Vandermonde in N variables as JSON.
    Table {
        n: usize,
        p: u32,
        /// Allow sizes above the default guard.
        #[arg(long)]
        allow_large: bool,
    },
}

fn parse_params(raw: &[String]) -> Result<BTreeMap<String, String>, HarnessError> {
    raw.iter()
        .map(|kv| {
            kv.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| HarnessError::Parameter { key: kv.clone(), value: String::new(), reason: "expected key=value".into() })
        })
        .collect()
}

fn print_report(r: &TestReport) {
    let status = if r.pass { "PASS" } else { "FAIL" };
    println!("[{status}] {} ({:.2} s, seed {})", r.experiment, r.runtime_seconds, r.seed);
    if let Some(e) = &r.error {
        println!("    error: {e}");
    }
    for c in &r.checks {
        let mark = if c.pass { "ok  " } else { "FAIL" };
        println!("    {mark} {}: {:.6e} vs {:.6e} (margin {:.3e})", c.name, c.statistic, c.reference, c.margin);
    }
}

fn fresh_seed() -> u64 {
    let t = std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).unwrap_or_default();
    powergin::samplers::splitmix64(t.as_nanos() as u64)
}

fn main_inner(cli: Cli) -> Result<bool, HarnessError> {
    match cli.command {
        Command::Run { experiment, params, seed, fresh_seed: fresh, out } => {
            let id = ExperimentId::parse(&experiment)?;
            let seed = match (seed, fresh) {
                (Some(s), _) => s,
                (None, true) => fresh_seed(),
                (None, false) => harness::default_seed()?,
            };
            let spec = ExperimentSpec::new(id, parse_params(&params)?, seed)?.with_out_dir(out.join(id.as_str()));
            let report = harness::run(&spec);
            print_report(&report);
            println!("outputs in {}", out.join(id.as_str()).display());
            Ok(report.pass)
        }
        Command::RunAll { config, seed, out } => {
            let mut cfg = match config {
                Some(path) => RunConfig::load(&path)?,
                None => RunConfig::default(),
            };
            if seed.is_some() {
                cfg.seed = seed;
            }
            if out.is_some() {
                cfg.out = out;
            }
            if cfg.out.is_none() {
                cfg.out = Some(PathBuf::from("results"));
            }
            let summary = harness::run_all(&cfg)?;
            for r in &summary.reports {
                print_report(r);
            }
            println!("{} passed, {} failed", summary.passed, summary.failed);
            Ok(summary.pass)
        }
        Command::List => {
            for id in ExperimentId::ALL {
                println!("{:<24} {}", id.as_str(), id.description());
                for p in id.params() {
                    println!("    {:<16} {:<10} {}", p.key, p.default, p.doc);
                }
            }
            Ok(true)
        }
        Command::Table { n, p, allow_large } => {
            let guard = if allow_large { (n, p) } else { powergin::latent::DEFAULT_GUARD };
            let table = expand_vandermonde_power_guarded(n, p, guard)?;
            println!("{}", table.to_json());
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match main_inner(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
