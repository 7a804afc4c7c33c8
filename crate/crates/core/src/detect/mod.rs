//! Detectors for (light) transitivity, periodic density and sensitivity.
//!
//! Every detector works over a finite family of subbasic sets and returns
//! a [`Verdict`]: witnesses are exact and replayable, certificates hold for
//! every set of the scheme they are stated for, and anything undecided
//! within the budget is reported as unknown.

mod line;
mod periodic;
mod probe;
mod replay;
mod sensitivity;
mod transitivity;

pub use periodic::{check_light_periodic_density, check_periodic_density, find_periodic_points, PeriodicPoints};
pub use probe::{orbit_density_probe, GapReport};
pub use replay::{replay_certificate, replay_witness};
pub use sensitivity::{check_light_sensitivity, check_sensitivity, SENSITIVITY_RADII};
pub use transitivity::{check_light_transitivity, check_transitivity, pair_witness_at};

pub(crate) use line::{check_avoidance, LineSystem};
pub(crate) use transitivity::{escape_step, region_transit, RegionTransit};

use crate::catalog::CatalogMap;
use crate::error::{Error, Result};
use crate::scalar::Rat;
use crate::subbase::{Family, SubbasicSet};

/// How a system is searched.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Engine {
    Line,
    Circle,
    Shift,
    Cone,
}

pub(crate) fn engine(map: &CatalogMap) -> Engine {
    match map {
        CatalogMap::Rotation(_) => Engine::Circle,
        CatalogMap::Shift => Engine::Shift,
        CatalogMap::Glissorotation { .. } => Engine::Cone,
        _ => Engine::Line,
    }
}

pub(crate) fn check_family(map: &CatalogMap, family: &Family) -> Result<()> {
    if family.space != map.space() {
        return Err(Error::Config(format!("family lives on {} but {map} acts on {}", family.space, map.space())));
    }
    if family.is_empty() {
        return Err(Error::Config("empty family".into()));
    }
    Ok(())
}

/// Coordinate constraints `(index, bit)` defining a cylinder set.
pub(crate) fn constraints(set: &SubbasicSet) -> Option<Vec<(u64, bool)>> {
    match set {
        SubbasicSet::Cylinder { index, value } => Some(vec![(*index, *value)]),
        SubbasicSet::Word { bits } => Some(bits.iter().enumerate().map(|(i, &b)| (i as u64, b)).collect()),
        _ => None,
    }
}

/// Smallest integer `n` with `n² >= m`.
pub(crate) fn ceil_sqrt(m: i64) -> i64 {
    let mut n = (m as f64).sqrt() as i64;
    while n * n < m {
        n += 1;
    }
    while n > 0 && (n - 1) * (n - 1) >= m {
        n -= 1;
    }
    n
}

/// `τ` with `set ⊆ {|t| > τ}`, for horizontal half-spaces with a
/// nonnegative offset.
pub(crate) fn altitude_floor(set: &SubbasicSet) -> Option<Rat> {
    match set {
        SubbasicSet::HalfSpace { normal: [0, 0, c], offset } if *c != 0 && !offset.is_negative() => {
            Some(offset / &Rat::int(c.abs()))
        }
        _ => None,
    }
}

/// `τ` with `set ⊆ {|t| < τ}`, for vertical half-spaces with a positive
/// offset: `(1 − |t|)·√(a² + b²) > d` forces `|t| < 1 − d/⌈√(a² + b²)⌉`.
pub(crate) fn altitude_ceiling(set: &SubbasicSet) -> Option<Rat> {
    match set {
        SubbasicSet::HalfSpace { normal: [a, b, 0], offset } if offset.is_positive() => {
            let rho = ceil_sqrt(a * a + b * b);
            Some(Rat::one() - offset / &Rat::int(rho))
        }
        _ => None,
    }
}
