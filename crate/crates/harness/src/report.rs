use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::registry::{Expected, ExperimentSpec};
use lightchaos::Budget;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Label {
    Holds,
    Fails,
    Unknown,
}

impl Label {
    pub fn as_str(self) -> &'static str {
        match self {
            Label::Holds => "HOLDS",
            Label::Fails => "FAILS",
            Label::Unknown => "UNKNOWN",
        }
    }
}

/// What a single check is expected to produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "claimed")]
pub enum Expect {
    Is(Label),
    /// A known discrepancy: the claim says one thing, any decided verdict
    /// is reported next to it.
    Flagged(Label),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Match,
    Mismatch,
    Undecided,
    Flagged,
}

pub fn status(expected: Expect, computed: Label) -> Status {
    match (expected, computed) {
        (_, Label::Unknown) => Status::Undecided,
        (Expect::Flagged(_), _) => Status::Flagged,
        (Expect::Is(e), c) if e == c => Status::Match,
        _ => Status::Mismatch,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckVerdict {
    pub check: String,
    pub expected: Expect,
    pub computed: Label,
    pub status: Status,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    pub check: String,
    pub data: Value,
}

/// A stated claim shown next to the computed verdict it disagrees with.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub check: String,
    pub claimed: Label,
    pub computed: Label,
    pub claim: String,
}

/// Everything one run produced. Wall-clock time is kept out so that equal
/// inputs give byte-identical reports.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub experiment: ExperimentSpec,
    pub verdicts: Vec<CheckVerdict>,
    pub witnesses: Vec<Evidence>,
    pub certificates: Vec<Evidence>,
    pub flags: Vec<Discrepancy>,
    pub seed: u64,
    pub budget: Budget,
    pub version: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Markdown,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Format, String> {
        match s {
            "json" => Ok(Format::Json),
            "md" | "markdown" => Ok(Format::Markdown),
            _ => Err(format!("unknown format {s:?}; use json or md")),
        }
    }
}

pub fn render_report(report: &RunReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Markdown => markdown(report),
    }
}

fn expect_str(e: Expect) -> String {
    match e {
        Expect::Is(l) => l.as_str().into(),
        Expect::Flagged(l) => format!("{} (claimed, flagged)", l.as_str()),
    }
}

fn markdown(r: &RunReport) -> String {
    let e = &r.experiment;
    let mut s = String::new();
    let _ = writeln!(s, "# {}\n", e.name);
    if e.expected == Expected::Flagged || !r.flags.is_empty() {
        let _ = writeln!(s, "> **DISCREPANCY**: the stated claim and the certified verdicts disagree; both are listed.\n");
    }
    let _ = writeln!(s, "- system: `{}`\n- scheme: `{}`\n- seed: {}\n- version: {}", e.system, e.scheme, r.seed, r.version);
    let _ = writeln!(s, "- budget: k_max = {}, p_max = {}, epsilon = {}\n", r.budget.k_max, r.budget.p_max, r.budget.epsilon);
    let _ = writeln!(s, "Claim: {}\n", e.claim);
    for v in &r.verdicts {
        let _ = writeln!(s, "## {}\n", v.check);
        let _ = writeln!(s, "- expected: {}", expect_str(v.expected));
        let _ = writeln!(s, "- computed: {}", v.computed.as_str());
        let _ = writeln!(s, "- status: {:?}", v.status);
        let w = r.witnesses.iter().filter(|x| x.check == v.check).count();
        let c = r.certificates.iter().filter(|x| x.check == v.check).count();
        let _ = writeln!(s, "- evidence: {w} witnesses, {c} certificates");
        if !v.note.is_empty() {
            let _ = writeln!(s, "\n{}", v.note);
        }
        s.push('\n');
    }
    if !r.flags.is_empty() {
        let _ = writeln!(s, "## Discrepancies\n");
        for f in &r.flags {
            let _ = writeln!(s, "- {}: claimed {}, computed {}. {}", f.check, f.claimed.as_str(), f.computed.as_str(), f.claim);
        }
    }
    s
}

/// 0 when every expectation is met, 1 on any mismatch, 2 when an undecided
/// check blocks the decision. Statuses are recomputed from the expected and
/// computed fields rather than trusted.
pub fn verify_claims(reports: &[RunReport]) -> i32 {
    let statuses: Vec<Status> = reports
        .iter()
        .flat_map(|r| r.verdicts.iter().map(|v| status(v.expected, v.computed)))
        .collect();
    if statuses.contains(&Status::Mismatch) {
        1
    } else if statuses.contains(&Status::Undecided) {
        2
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry::lookup;

    fn sample() -> RunReport {
        RunReport {
            experiment: lookup("ex3_7").unwrap(),
            verdicts: vec![
                CheckVerdict {
                    check: "transitivity".into(),
                    expected: Expect::Is(Label::Fails),
                    computed: Label::Fails,
                    status: Status::Match,
                    note: String::new(),
                },
                CheckVerdict {
                    check: "light_transitivity".into(),
                    expected: Expect::Flagged(Label::Holds),
                    computed: Label::Fails,
                    status: Status::Flagged,
                    note: "range [1/2, 1]".into(),
                },
            ],
            witnesses: vec![],
            certificates: vec![Evidence { check: "transitivity".into(), data: serde_json::json!({"kind": "range_bound"}) }],
            flags: vec![Discrepancy {
                check: "light_transitivity".into(),
                claimed: Label::Holds,
                computed: Label::Fails,
                claim: "stated".into(),
            }],
            seed: 7,
            budget: Budget::default(),
            version: "0".into(),
        }
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        let back: RunReport = serde_json::from_str(&render_report(&r, Format::Json)).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn markdown_sections_and_banner() {
        let md = render_report(&sample(), Format::Markdown);
        assert_eq!(md.matches("\n## ").count(), 3);
        assert!(md.contains("DISCREPANCY"));
    }

    #[test]
    fn exit_codes() {
        let r = sample();
        assert_eq!(verify_claims(std::slice::from_ref(&r)), 0);
        let mut unknown = r.clone();
        unknown.verdicts[0].computed = Label::Unknown;
        assert_eq!(verify_claims(&[unknown.clone()]), 2);
        let mut tampered = r.clone();
        tampered.verdicts[0].expected = Expect::Is(Label::Holds);
        assert_eq!(verify_claims(&[tampered.clone()]), 1);
        assert_eq!(verify_claims(&[unknown, tampered]), 1);
    }
}
