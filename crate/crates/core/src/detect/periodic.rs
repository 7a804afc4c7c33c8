use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{check_family, constraints, engine, Engine, LineSystem};
use crate::budget::Budget;
use crate::catalog::{CatalogMap, PeriodicRecord};
use crate::error::Result;
use crate::interval::IntervalUnion;
use crate::pl::PLMap;
use crate::scalar::Rat;
use crate::sequence::BinarySeq;
use crate::space::PhasePoint;
use crate::subbase::{generate_family, Family, Member, Scheme};
use crate::verdict::{aggregate, Certificate, Outcome, PeriodicDescription, Verdict, Witness};

/// Every member must contain a periodic point of period at most `p_max`.
pub fn check_light_periodic_density(map: &CatalogMap, family: &Family, budget: &Budget) -> Result<Verdict> {
    check_family(map, family)?;
    budget.validate()?;
    let deadline = budget.deadline();
    let outcomes: Vec<Outcome> = match engine(map) {
        Engine::Line => {
            let sys = LineSystem::new(map, budget)?;
            family
                .members
                .par_iter()
                .map(|m| if deadline.expired() { Outcome::Open } else { line_member(&sys, m) })
                .collect()
        }
        Engine::Circle => family.members.iter().map(|m| circle_member(map, m, budget)).collect(),
        Engine::Shift => family.members.iter().map(shift_member).collect(),
        Engine::Cone => family.members.par_iter().map(|m| cone_member(map, m, budget)).collect(),
    };
    Ok(aggregate(outcomes, budget, "members without a periodic point or a certificate"))
}

/// Periodic density relative to the basic open sets at resolution `r`.
pub fn check_periodic_density(map: &CatalogMap, r: u32, budget: &Budget) -> Result<Verdict> {
    let space = map.space();
    let family = generate_family(&space, &Scheme::basic_for(&space), r)?;
    check_light_periodic_density(map, &family, budget)
}

fn line_member(sys: &LineSystem<'_>, m: &Member) -> Outcome {
    let Some(region) = m.set.realize(&sys.space) else { return Outcome::Open };
    match sys.periodic_in(&region) {
        Ok(Some((x, period))) => {
            return Outcome::Witnessed(Witness::Periodic { set: m.set.clone(), point: PhasePoint::Real(x), period });
        }
        Ok(None) => {}
        Err(_) => return Outcome::Open,
    }
    match sys.avoidance(&region, &region) {
        Some(avoidance) => {
            let (periodic, up_to) = sys.periodic_hull();
            Outcome::Refuted(Certificate::PeriodicSet {
                description: PeriodicDescription::Region { periodic, up_to },
                set: m.set.clone(),
                avoidance: Some(avoidance),
            })
        }
        None => Outcome::Open,
    }
}

fn circle_member(map: &CatalogMap, m: &Member, budget: &Budget) -> Outcome {
    let alpha = map.rotation_angle().expect("rotation");
    if !alpha.is_rational() {
        return Outcome::Refuted(Certificate::PeriodicSet {
            description: PeriodicDescription::Empty {
                reason: "an irrational rotation has no periodic points: kα is never an integer".into(),
            },
            set: m.set.clone(),
            avoidance: None,
        });
    }
    // every point of a rational rotation is periodic with the same period
    match map.least_period(&m.witness, budget.p_max) {
        Ok(Some(period)) => Outcome::Witnessed(Witness::Periodic { set: m.set.clone(), point: m.witness.clone(), period }),
        _ => Outcome::Open,
    }
}

/// Periodic points of the shift on eventually constant sequences and the
/// orbit of the stream are exactly the two constant sequences.
fn shift_member(m: &Member) -> Outcome {
    let Some(bits) = constraints(&m.set) else { return Outcome::Open };
    for value in [false, true] {
        if bits.iter().all(|&(_, b)| b == value) {
            return Outcome::Witnessed(Witness::Periodic {
                set: m.set.clone(),
                point: PhasePoint::Sequence(BinarySeq::constant(value)),
                period: 1,
            });
        }
    }
    Outcome::Refuted(Certificate::PeriodicSet {
        description: PeriodicDescription::Points {
            points: vec![
                PhasePoint::Sequence(BinarySeq::constant(false)),
                PhasePoint::Sequence(BinarySeq::constant(true)),
            ],
        },
        set: m.set.clone(),
        avoidance: None,
    })
}

fn cone_member(map: &CatalogMap, m: &Member, budget: &Budget) -> Outcome {
    let cap = match map {
        CatalogMap::Glissorotation { q, .. } => budget.p_max.max(2 * q),
        _ => budget.p_max,
    };
    match map.least_period(&m.witness, cap) {
        Ok(Some(period)) => Outcome::Witnessed(Witness::Periodic { set: m.set.clone(), point: m.witness.clone(), period }),
        _ => Outcome::Open,
    }
}

/// `Fix(f^k)` within a region: isolated points with their least periods,
/// and the intervals of fixed points (each with the least exponent that
/// fixes it pointwise).
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PeriodicPoints {
    pub records: Vec<PeriodicRecord>,
    pub continua: Vec<(IntervalUnion, u32)>,
    /// False when a power exceeded the piece budget; the lists are then
    /// exhaustive only up to the last completed exponent.
    pub complete: bool,
}

impl PeriodicPoints {
    pub fn points(&self) -> Vec<Rat> {
        self.records.iter().filter_map(|r| r.point.as_real().cloned()).collect()
    }
}

/// Exact, exhaustive periodic points of `map^k` in `region`, by solving the
/// fixed-point equation on every piece of the composed map.
pub fn find_periodic_points(map: &PLMap, k: u32, region: &IntervalUnion, budget: &Budget) -> Result<PeriodicPoints> {
    if k == 0 || k > budget.p_max {
        return Err(crate::error::Error::Config(format!("period {k} must lie in 1..={}", budget.p_max)));
    }
    let divisors: Vec<u32> = (1..=k).filter(|d| k.is_multiple_of(*d)).collect();
    let mut fixed: Vec<(u32, IntervalUnion)> = Vec::with_capacity(divisors.len());
    let mut complete = true;
    for &d in &divisors {
        match map.power(d, budget.max_pieces) {
            Ok(p) => fixed.push((d, p.fixed_set().intersect(region))),
            Err(_) => {
                complete = false;
                break;
            }
        }
    }
    let mut out = PeriodicPoints { complete, ..PeriodicPoints::default() };
    let Some((_, top)) = fixed.last() else { return Ok(out) };
    let least = |x: &Rat| fixed.iter().find(|(_, f)| f.contains(x)).map(|(d, _)| *d).unwrap_or(k);
    for part in top.parts() {
        if part.is_point() {
            let x = part.representative();
            let period = least(&x);
            out.records.push(PeriodicRecord { point: PhasePoint::Real(x), period });
        } else {
            let d = fixed
                .iter()
                .find(|(_, f)| IntervalUnion::from(part.clone()).is_subset(f))
                .map(|(d, _)| *d)
                .unwrap_or(k);
            out.continua.push((part.clone().into(), d));
        }
    }
    Ok(out)
}
