use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use lightchaos::catalog::CatalogMap;
use lightchaos::detect::{
    check_light_periodic_density, check_light_sensitivity, check_light_transitivity, check_periodic_density,
    check_sensitivity, check_transitivity, replay_certificate, replay_witness,
};
use lightchaos::subbase::{generate_family, Scheme};
use lightchaos::{Budget, Rat, Verdict};
use lightchaos_harness::persist::{run_dir, save_report, write_atomic};
use lightchaos_harness::report::Format;
use lightchaos_harness::{registry, render_report, run_many, verify_claims, Config, RunConfig};

#[derive(Parser)]
#[command(name = "lightchaos", version, about = "Check (light) chaos of catalog systems and reproduce the experiment suite")]
struct Cli {
    /// Output format: json or md.
    #[arg(long, global = true, default_value = "json")]
    format: Format,
    /// Directory for run bundles.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// TOML file with default settings.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long = "kmax", global = true)]
    k_max: Option<u32>,
    #[arg(long = "pmax", global = true)]
    p_max: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one detector on one system.
    Check {
        #[arg(long)]
        system: Option<String>,
        /// transitivity, periodic_density, sensitivity, or their light_ forms.
        #[arg(long)]
        property: String,
        #[arg(long)]
        scheme: Option<String>,
        #[arg(long)]
        resolution: Option<u32>,
        #[arg(long)]
        delta: Option<Rat>,
    },
    /// Run a registered experiment, or `all`.
    Reproduce { experiment: String },
    /// List registered experiments.
    List,
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(3)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let file = match &cli.config {
        Some(p) => match Config::load(p) {
            Ok(c) => c,
            Err(e) => return fail(e),
        },
        None => Config::default(),
    };
    let mut flags = Config { seed: cli.seed, k_max: cli.k_max, p_max: cli.p_max, out_dir: cli.out.clone(), ..Config::default() };
    if let Command::Check { system, scheme, resolution, delta, .. } = &cli.command {
        flags.system = system.clone();
        flags.scheme = scheme.clone();
        flags.resolution = *resolution;
        flags.delta = delta.clone();
    }
    let config = file.overlay(flags);
    let run = match RunConfig::new(&config, &Budget::default()) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    match &cli.command {
        Command::List => {
            for s in registry() {
                println!("{:<16} {:<8} {:<26} {:<14} {}", s.name, format!("{:?}", s.expected).to_uppercase(), s.system, s.scheme, s.claim);
            }
            ExitCode::SUCCESS
        }
        Command::Reproduce { experiment } => reproduce(experiment, &config, &run, cli.format),
        Command::Check { property, .. } => check(property, &config, &run, cli.format),
    }
}

fn reproduce(experiment: &str, config: &Config, run: &RunConfig, format: Format) -> ExitCode {
    let names: Vec<String> = if experiment == "all" {
        registry().into_iter().map(|s| s.name).collect()
    } else {
        vec![experiment.to_string()]
    };
    let results = match run_many(&names, run) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let reports: Vec<_> = results.iter().map(|(r, _)| r.clone()).collect();
    match format {
        Format::Json if reports.len() == 1 => print!("{}", render_report(&reports[0], format)),
        Format::Json => println!("{}", serde_json::to_string_pretty(&reports).expect("reports serialize")),
        Format::Markdown => reports.iter().for_each(|r| print!("{}", render_report(r, format))),
    }
    if let Some(out) = &config.out_dir {
        let saved = run_dir(out).and_then(|dir| {
            for r in &reports {
                save_report(&dir, r)?;
            }
            let timing: serde_json::Map<_, _> = results.iter().map(|(r, t)| (r.experiment.name.clone(), json!(t))).collect();
            write_atomic(&dir.join("timing.json"), serde_json::to_string_pretty(&timing)?.as_bytes())?;
            Ok(dir)
        });
        match saved {
            Ok(dir) => eprintln!("saved to {}", dir.display()),
            Err(e) => return fail(e),
        }
    }
    ExitCode::from(verify_claims(&reports) as u8)
}

fn check(property: &str, config: &Config, run: &RunConfig, format: Format) -> ExitCode {
    let system = config.system.as_deref().unwrap_or("tent");
    match run_check(system, property, config, run) {
        Ok((scheme, verdict)) => {
            let r = run.resolution.unwrap_or(3);
            match format {
                Format::Json => {
                    let body = json!({ "system": system, "property": property, "scheme": scheme, "resolution": r, "budget": run.budget, "verdict": verdict });
                    println!("{}", serde_json::to_string_pretty(&body).expect("verdicts serialize"));
                }
                Format::Markdown => println!("# {property} of {system}\n\n- scheme: `{scheme}`, r = {r}\n- verdict: {verdict}"),
            }
            if matches!(verdict, Verdict::Unknown { .. }) {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => fail(e),
    }
}

fn run_check(system: &str, property: &str, config: &Config, run: &RunConfig) -> lightchaos::Result<(String, Verdict)> {
    let map = CatalogMap::named(system)?;
    let space = map.space();
    let r = run.resolution.unwrap_or(3);
    let b = &run.budget;
    let delta = run.delta.clone().unwrap_or_else(|| Rat::new(1, 4));
    let scheme: Scheme = match &config.scheme {
        Some(s) => s.parse()?,
        None => Scheme::basic_for(&space),
    };
    let family = || generate_family(&space, &scheme, r);
    let verdict = match property {
        "transitivity" => check_transitivity(&map, r, b)?,
        "periodic_density" => check_periodic_density(&map, r, b)?,
        "sensitivity" => check_sensitivity(&map, &delta, b)?,
        "light_transitivity" => check_light_transitivity(&map, &family()?, b)?,
        "light_periodic_density" => check_light_periodic_density(&map, &family()?, b)?,
        "light_sensitivity" => check_light_sensitivity(&map, &family()?, &delta, b)?,
        other => return Err(lightchaos::Error::Config(format!("unknown property {other:?}"))),
    };
    for w in verdict.witnesses() {
        replay_witness(&map, w)?;
    }
    if let Some(c) = verdict.certificate().filter(|c| !c.is_evidence_only()) {
        replay_certificate(&map, c)?;
    }
    let shown = if property.starts_with("light_") { scheme.tag().to_string() } else { Scheme::basic_for(&space).tag().to_string() };
    Ok((shown, verdict))
}
