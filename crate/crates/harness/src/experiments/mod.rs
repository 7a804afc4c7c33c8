//! The registered experiments. Each one runs a handful of checks and
//! replays every witness and certificate it reports.

mod base;
mod envelope;

use serde::Serialize;
use serde_json::Value;

use crate::config::RunConfig;
use crate::registry::{lookup, ExperimentSpec};
use crate::report::{status, CheckVerdict, Discrepancy, Evidence, Expect, Label, RunReport};
use lightchaos::catalog::CatalogMap;
use lightchaos::detect::{replay_certificate, replay_witness};
use lightchaos::verdict::PeriodicDescription;
use lightchaos::{Certificate, Error, Result, Verdict};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Outcome of one check inside an experiment.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub expected: Expect,
    pub computed: Label,
    pub note: String,
    pub witnesses: Vec<Value>,
    pub certificates: Vec<Value>,
}

impl Check {
    pub fn new(name: impl Into<String>, expected: Expect, computed: Label, note: impl Into<String>) -> Check {
        Check { name: name.into(), expected, computed, note: note.into(), witnesses: vec![], certificates: vec![] }
    }

    pub fn unknown(name: impl Into<String>, expected: Expect, note: impl Into<String>) -> Check {
        Check::new(name, expected, Label::Unknown, note)
    }

    pub fn witness(mut self, w: &impl Serialize) -> Check {
        self.witnesses.push(to_value(w));
        self
    }

    pub fn certificate(mut self, c: &impl Serialize) -> Check {
        self.certificates.push(to_value(c));
        self
    }

    /// Replays `v` against `map` and records it.
    pub fn verdict(name: impl Into<String>, expected: Expect, map: &CatalogMap, v: &Verdict) -> Result<Check> {
        for w in v.witnesses() {
            replay_witness(map, w)?;
        }
        let mut check = Check::new(name, expected, label(v), "");
        match v {
            Verdict::Holds { witnesses } => {
                check.note = format!("{} witnesses", witnesses.len());
                check.witnesses = witnesses.iter().map(to_value).collect();
            }
            Verdict::Fails { certificate } => {
                if certificate.is_evidence_only() {
                    check.note = format!("{} (evidence only)", describe(certificate));
                } else {
                    replay_certificate(map, certificate)?;
                    check.note = describe(certificate);
                }
                check.certificates.push(to_value(certificate));
            }
            Verdict::Unknown { snapshot } => {
                check.note = format!("{} of {} decided: {}", snapshot.decided, snapshot.total, snapshot.note);
            }
        }
        Ok(check)
    }
}

/// Short human-readable summary of a certificate.
pub fn describe(c: &Certificate) -> String {
    match c {
        Certificate::RangeBound { range, target } => format!("range_bound: f(X) = {range} misses {target}"),
        Certificate::AbsorbingSet { avoidance, target, .. } => {
            format!("absorbing_set: {} after {} steps, missing {target}", avoidance.region, avoidance.entry)
        }
        Certificate::PeriodicSet { description, set, .. } => match description {
            PeriodicDescription::Region { periodic, up_to } => {
                format!("periodic_set_characterization: periods <= {up_to} fill {periodic}, which misses {set}")
            }
            PeriodicDescription::Points { points } => {
                format!("periodic_set_characterization: {} periodic points listed, none in {set}", points.len())
            }
            PeriodicDescription::Empty { reason } => format!("periodic_set_characterization: {reason}"),
        },
        Certificate::PointwiseBound { x, neighborhood, delta, bound, .. } => {
            format!("pointwise_bound at x = {x} over {neighborhood}, delta = {delta}: {}", to_value(bound)["kind"])
        }
    }
}

pub(crate) fn to_value(x: &impl Serialize) -> Value {
    serde_json::to_value(x).expect("evidence serializes")
}

pub fn label(v: &Verdict) -> Label {
    match v {
        Verdict::Holds { .. } => Label::Holds,
        Verdict::Fails { .. } => Label::Fails,
        Verdict::Unknown { .. } => Label::Unknown,
    }
}

/// Budget exhaustion becomes an undecided check; other errors propagate.
pub(crate) fn settle<T>(r: Result<T>) -> Result<std::result::Result<T, String>> {
    match r {
        Ok(x) => Ok(Ok(x)),
        Err(Error::Budget(m)) => Ok(Err(m)),
        Err(e) => Err(e),
    }
}

pub(crate) fn holds() -> Expect {
    Expect::Is(Label::Holds)
}

pub(crate) fn fails() -> Expect {
    Expect::Is(Label::Fails)
}

/// Combines per-item outcomes: any unknown leaves the check undecided,
/// otherwise `decided` applies.
pub(crate) fn combine(unknown: usize, decided: Label) -> Label {
    if unknown > 0 {
        Label::Unknown
    } else {
        decided
    }
}

pub fn assemble(spec: ExperimentSpec, run: &RunConfig, checks: Vec<Check>) -> RunReport {
    let mut report = RunReport {
        experiment: ExperimentSpec { budget: run.budget.clone(), ..spec },
        verdicts: vec![],
        witnesses: vec![],
        certificates: vec![],
        flags: vec![],
        seed: run.seed,
        budget: run.budget.clone(),
        version: VERSION.into(),
    };
    for c in checks {
        if let Expect::Flagged(claimed) = c.expected {
            report.flags.push(Discrepancy {
                check: c.name.clone(),
                claimed,
                computed: c.computed,
                claim: report.experiment.claim.clone(),
            });
        }
        let evidence = |data: Vec<Value>| data.into_iter().map(|data| Evidence { check: c.name.clone(), data });
        report.witnesses.extend(evidence(c.witnesses));
        report.certificates.extend(evidence(c.certificates));
        report.verdicts.push(CheckVerdict {
            check: c.name,
            expected: c.expected,
            computed: c.computed,
            status: status(c.expected, c.computed),
            note: c.note,
        });
    }
    report
}

/// Runs the named experiment.
pub fn run_experiment(name: &str, run: &RunConfig) -> Result<RunReport> {
    let spec = lookup(name)?;
    let checks = match name {
        "ex3_4" => base::ex3_4(run)?,
        "ex3_5" => base::ex3_5(run)?,
        "ex3_6" => base::ex3_6(run)?,
        "ex3_7" => base::ex3_7(run)?,
        "ex3_8" => base::ex3_8(run)?,
        "abs_example" => base::abs_example(run)?,
        "rem4_1" => envelope::rem4_1(run)?,
        "thm4_2_forward" => envelope::thm4_2_forward(run)?,
        "thm4_2_converse" => envelope::thm4_2_converse(run)?,
        "thm4_6_i" => envelope::thm4_6_i(run)?,
        "thm4_6_ii" => envelope::thm4_6_ii(run)?,
        "thm4_6_iv" => envelope::thm4_6_iv(run)?,
        "ex4_7" => envelope::ex4_7(run)?,
        other => return Err(Error::Config(format!("no runner for {other:?}"))),
    };
    Ok(assemble(spec, run, checks))
}

/// Runs several experiments concurrently; reports come back in the order
/// of `names`, each with its wall-clock time in seconds.
pub fn run_many(names: &[String], run: &RunConfig) -> Result<Vec<(RunReport, f64)>> {
    use rayon::prelude::*;
    names
        .par_iter()
        .map(|n| {
            let start = std::time::Instant::now();
            let report = run_experiment(n, run)?;
            Ok((report, start.elapsed().as_secs_f64()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Config;
    use crate::report::Status;
    use lightchaos::Budget;

    fn run() -> RunConfig {
        RunConfig::new(&Config::default(), &Budget::default()).unwrap()
    }

    #[test]
    fn assemble_flags_and_statuses() {
        let checks = vec![
            Check::new("a", holds(), Label::Holds, ""),
            Check::new("b", Expect::Flagged(Label::Holds), Label::Fails, "").certificate(&1),
            Check::unknown("c", fails(), "budget"),
        ];
        let r = assemble(lookup("ex3_7").unwrap(), &run(), checks);
        let statuses: Vec<Status> = r.verdicts.iter().map(|v| v.status).collect();
        assert_eq!(statuses, [Status::Match, Status::Flagged, Status::Undecided]);
        assert_eq!(r.flags.len(), 1);
        assert_eq!(r.certificates[0].check, "b");
    }

    #[test]
    fn every_registered_name_has_a_runner() {
        for spec in crate::registry::registry() {
            let r = run_experiment(&spec.name, &RunConfig { budget: Budget::default().with_k_max(1), ..run() });
            assert!(r.is_ok(), "{}: {:?}", spec.name, r.err());
        }
        assert!(run_experiment("nope", &run()).is_err());
    }
}
