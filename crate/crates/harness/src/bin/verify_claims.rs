//! Exit 0 when every expectation is met, 1 on a mismatch, 2 when an
//! undecided check blocks the decision. Without paths the default suite
//! is run first.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use lightchaos::Budget;
use lightchaos_harness::persist::load_reports;
use lightchaos_harness::report::status;
use lightchaos_harness::{registry, run_many, verify_claims, Config, RunConfig, RunReport};

#[derive(Parser)]
#[command(name = "verify_claims", version, about = "Compare computed verdicts with the registered expectations")]
struct Args {
    /// Report files or run directories.
    paths: Vec<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long = "kmax")]
    k_max: Option<u32>,
    #[arg(long = "pmax")]
    p_max: Option<u32>,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    let reports = match collect(&args) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    };
    for r in &reports {
        for v in &r.verdicts {
            let s = status(v.expected, v.computed);
            println!("{:<16} {:<36} {:<8} {:?}", r.experiment.name, v.check, v.computed.as_str(), s);
        }
    }
    let code = verify_claims(&reports);
    println!("exit {code}");
    ExitCode::from(code as u8)
}

fn collect(args: &Args) -> Result<Vec<RunReport>, String> {
    if !args.paths.is_empty() {
        let mut all = Vec::new();
        for p in &args.paths {
            all.extend(load_reports(p).map_err(|e| e.to_string())?);
        }
        return Ok(all);
    }
    let config = Config { seed: args.seed, k_max: args.k_max, p_max: args.p_max, ..Config::default() };
    let run = RunConfig::new(&config, &Budget::default()).map_err(|e| e.to_string())?;
    let names: Vec<String> = registry().into_iter().map(|s| s.name).collect();
    let results = run_many(&names, &run).map_err(|e| e.to_string())?;
    Ok(results.into_iter().map(|(r, _)| r).collect())
}
