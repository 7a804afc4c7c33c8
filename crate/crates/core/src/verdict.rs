//! Three-valued verdicts with their evidence.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::interval::IntervalUnion;
use crate::scalar::Rat;
use crate::space::{Distance, PhasePoint};
use crate::subbase::SubbasicSet;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Witness {
    /// `point ∈ source` and `f^k(point) = image ∈ target`.
    Transit { source: SubbasicSet, target: SubbasicSet, k: u64, point: PhasePoint, image: PhasePoint },
    /// `point ∈ set` with least period `period`.
    Periodic { set: SubbasicSet, point: PhasePoint, period: u32 },
    /// `y ∈ neighborhood ∋ x` and `d(f^k x, f^k y) = distance`.
    Separation { x: PhasePoint, neighborhood: SubbasicSet, y: PhasePoint, k: u64, distance: Distance },
}

/// Coordinate in which a region of a certificate is expressed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Coordinate {
    /// The point itself, on the line.
    Value,
    /// `|t|` for points of the double cone.
    AbsAltitude,
}

/// A forward-invariant region reached by every orbit from a set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Avoidance {
    pub coordinate: Coordinate,
    /// `J` with `f(J) ⊆ J`.
    pub region: IntervalUnion,
    /// `f^entry(set) ⊆ J`.
    pub entry: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum PeriodicDescription {
    /// Union of the fixed sets of `f^k` for `k <= up_to`, computed exactly.
    Region { periodic: IntervalUnion, up_to: u32 },
    /// The periodic points are exactly these.
    Points { points: Vec<PhasePoint> },
    /// No periodic points at all.
    Empty { reason: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum PointwiseKind {
    /// `f^steps(V)` is the single point `f^steps(x)`; earlier images have
    /// the listed diameters, all below `δ`.
    Collapse { steps: u32, diameters: Vec<Rat> },
    /// `V = (−ε, ε)` around `0` under `y ↦ y/(|y|+1)`:
    /// `|f^k(y)| = |y|/(k|y|+1) <= |y|/(|y|+1) < ε/(ε+1) < δ`.
    ContractionClosedForm { epsilon: Rat },
    /// The map preserves distances and `V` has diameter at most `bound < δ`.
    Isometry { bound: Rat },
    /// The map preserves distances and `V` is the cap `{u·e > 1 − η}` of a
    /// unit direction `e` on the double cone, so `d(x, y)² <= 2η < δ²`.
    IsometryCap { eta: Rat },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Certificate {
    /// The image of the whole space misses `target`.
    RangeBound { range: IntervalUnion, target: SubbasicSet },
    /// Every orbit from `source` enters the invariant region `J` after
    /// `entry` steps, `J` misses `target`, and the first `entry − 1` images
    /// of `source` miss it too.
    AbsorbingSet { avoidance: Avoidance, source: SubbasicSet, target: SubbasicSet },
    /// `set` contains no periodic point.
    PeriodicSet { description: PeriodicDescription, set: SubbasicSet, avoidance: Option<Avoidance> },
    /// Every `y` in `neighborhood` stays within `δ` of the orbit of `x`.
    PointwiseBound { x: PhasePoint, neighborhood: SubbasicSet, delta: Rat, bound: PointwiseKind, evidence_only: bool },
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::RangeBound { .. } => "range_bound",
            Certificate::AbsorbingSet { .. } => "absorbing_set",
            Certificate::PeriodicSet { .. } => "periodic_set_characterization",
            Certificate::PointwiseBound { .. } => "pointwise_bound",
        }
    }

    pub fn is_evidence_only(&self) -> bool {
        matches!(self, Certificate::PointwiseBound { evidence_only: true, .. })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Snapshot {
    pub budget: Budget,
    pub decided: usize,
    pub total: usize,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum Verdict {
    Holds { witnesses: Vec<Witness> },
    Fails { certificate: Certificate },
    Unknown { snapshot: Snapshot },
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Holds { .. } => "HOLDS",
            Verdict::Fails { .. } => "FAILS",
            Verdict::Unknown { .. } => "UNKNOWN",
        }
    }

    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds { .. })
    }

    pub fn fails(&self) -> bool {
        matches!(self, Verdict::Fails { .. })
    }

    pub fn witnesses(&self) -> &[Witness] {
        match self {
            Verdict::Holds { witnesses } => witnesses,
            _ => &[],
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Verdict::Fails { certificate } => Some(certificate),
            _ => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds { witnesses } => write!(f, "HOLDS ({} witnesses)", witnesses.len()),
            Verdict::Fails { certificate } => write!(f, "FAILS ({})", certificate.kind()),
            Verdict::Unknown { snapshot } => write!(f, "UNKNOWN ({}/{} decided)", snapshot.decided, snapshot.total),
        }
    }
}

/// Per-item outcome of a detector before aggregation.
#[derive(Clone, Debug)]
pub(crate) enum Outcome {
    Witnessed(Witness),
    Refuted(Certificate),
    Open,
}

/// Aggregates in enumeration order: the first certificate refutes; all
/// witnessed holds; anything else is unknown.
pub(crate) fn aggregate(outcomes: Vec<Outcome>, budget: &Budget, note: &str) -> Verdict {
    let total = outcomes.len();
    let mut witnesses = Vec::with_capacity(total);
    let mut open = 0;
    for o in outcomes {
        match o {
            Outcome::Refuted(certificate) => return Verdict::Fails { certificate },
            Outcome::Witnessed(w) => witnesses.push(w),
            Outcome::Open => open += 1,
        }
    }
    if open == 0 {
        Verdict::Holds { witnesses }
    } else {
        Verdict::Unknown {
            snapshot: Snapshot { budget: budget.clone(), decided: total - open, total, note: note.to_string() },
        }
    }
}
