//! Independent re-checks of witnesses and certificates.

use super::{altitude_ceiling, altitude_floor, check_avoidance};
use crate::catalog::CatalogMap;
use crate::error::{Error, Result};
use crate::interval::{Bound, Interval, IntervalUnion};
use crate::scalar::Rat;
use crate::space::{ConePoint, PhasePoint};
use crate::subbase::SubbasicSet;
use crate::verdict::{Certificate, Coordinate, PeriodicDescription, PointwiseKind, Witness};

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok { Ok(()) } else { Err(Error::Verification(msg())) }
}

fn region_of(map: &CatalogMap, set: &SubbasicSet) -> Result<IntervalUnion> {
    let space = map.space();
    set.realize(&space)
        .ok_or_else(|| Error::Verification(format!("{set} has no exact region on {space}")))
}

/// Recomputes a witness from scratch.
pub fn replay_witness(map: &CatalogMap, witness: &Witness) -> Result<()> {
    let space = map.space();
    match witness {
        Witness::Transit { source, target, k, point, image } => {
            ensure(*k >= 1, || "transit exponent must be positive".into())?;
            ensure(source.contains(&space, point), || format!("{point} is not in {source}"))?;
            let y = map.iterate(*k, point)?;
            ensure(&y == image, || format!("f^{k}({point}) = {y}, not {image}"))?;
            ensure(target.contains(&space, &y), || format!("{y} is not in {target}"))
        }
        Witness::Periodic { set, point, period } => {
            ensure(set.contains(&space, point), || format!("{point} is not in {set}"))?;
            let least = map.least_period(point, *period)?;
            ensure(least == Some(*period), || format!("{point} has least period {least:?}, not {period}"))
        }
        Witness::Separation { x, neighborhood, y, k, distance } => {
            ensure(*k >= 1, || "separation exponent must be positive".into())?;
            ensure(neighborhood.contains(&space, x), || format!("{x} is not in {neighborhood}"))?;
            ensure(neighborhood.contains(&space, y), || format!("{y} is not in {neighborhood}"))?;
            let d = space.metric(&map.iterate(*k, x)?, &map.iterate(*k, y)?)?;
            let agree = match (&d, distance) {
                (a, b) if a.is_exact() && b.is_exact() => a == b,
                (a, b) => (a.to_f64() - b.to_f64()).abs() < 1e-9,
            };
            ensure(agree, || format!("distance recomputes to {d}, not {distance}"))
        }
    }
}

/// Re-verifies a certificate with exact operations (float margins for the
/// cone, which is flagged as evidence).
pub fn replay_certificate(map: &CatalogMap, certificate: &Certificate) -> Result<()> {
    match certificate {
        Certificate::RangeBound { range, target } => {
            let dom = map
                .domain_region()
                .ok_or_else(|| Error::Verification(format!("{map} has no exact range")))?;
            let image = map.image(&dom)?;
            ensure(&image == range, || format!("the range is {image}, not {range}"))?;
            let v = region_of(map, target)?;
            ensure(!range.meets(&v), || format!("{range} meets {target}"))
        }
        Certificate::AbsorbingSet { avoidance, source, target } => match avoidance.coordinate {
            Coordinate::Value => {
                let u = region_of(map, source)?;
                let v = region_of(map, target)?;
                check_avoidance(map, avoidance, &u)?;
                ensure(!avoidance.region.meets(&v), || format!("{} meets {target}", avoidance.region))?;
                let mut img = u;
                for i in 1..avoidance.entry {
                    img = map.image(&img)?;
                    ensure(!img.meets(&v), || format!("step {i} of {source} meets {target}"))?;
                }
                Ok(())
            }
            Coordinate::AbsAltitude => {
                ensure(matches!(map, CatalogMap::Glissorotation { .. }), || format!("{map} does not preserve |t|"))?;
                let lo = altitude_floor(source)
                    .ok_or_else(|| Error::Verification(format!("{source} is not an altitude band")))?;
                let hi = altitude_ceiling(target)
                    .ok_or_else(|| Error::Verification(format!("{target} has no altitude ceiling")))?;
                let band = IntervalUnion::from(Interval::new(Bound::Open(lo.clone()), Bound::Closed(Rat::one())));
                ensure(avoidance.region == band, || format!("band {} does not match {source}", avoidance.region))?;
                ensure(hi <= lo, || format!("{target} reaches altitude {hi} above {lo}"))
            }
        },
        Certificate::PeriodicSet { description, set, avoidance } => match description {
            PeriodicDescription::Region { periodic, .. } => {
                let u = region_of(map, set)?;
                let a = avoidance
                    .as_ref()
                    .ok_or_else(|| Error::Verification("a region description needs an avoidance proof".into()))?;
                check_avoidance(map, a, &u)?;
                ensure(!a.region.meets(&u), || format!("{} meets {set}", a.region))?;
                ensure(!periodic.meets(&u), || format!("{periodic} meets {set}"))
            }
            PeriodicDescription::Empty { .. } => {
                let irrational = map.rotation_angle().is_some_and(|a| !a.is_rational());
                ensure(irrational, || format!("{map} is not an irrational rotation"))
            }
            PeriodicDescription::Points { points } => {
                ensure(matches!(map, CatalogMap::Shift), || format!("{map} is not the shift"))?;
                let space = map.space();
                for p in points {
                    ensure(map.least_period(p, 1)? == Some(1), || format!("{p} is not fixed"))?;
                    ensure(!set.contains(&space, p), || format!("{set} contains {p}"))?;
                }
                Ok(())
            }
        },
        Certificate::PointwiseBound { x, neighborhood, delta, bound, .. } => {
            let space = map.space();
            ensure(neighborhood.contains(&space, x), || format!("{x} is not in {neighborhood}"))?;
            match bound {
                PointwiseKind::Collapse { steps, diameters } => {
                    let dom = map.domain_region().ok_or_else(|| Error::Verification("not a line map".into()))?;
                    let mut img = region_of(map, neighborhood)?.intersect(&dom);
                    for d in diameters {
                        let got = img.diameter().ok_or_else(|| Error::Verification("unbounded image".into()))?;
                        ensure(&got == d && d < delta, || format!("image diameter {got}, claimed {d}"))?;
                        img = map.image(&img)?;
                    }
                    ensure(diameters.len() == *steps as usize && img.as_point().is_some(), || {
                        format!("image after {steps} steps is {img}, not a point")
                    })
                }
                PointwiseKind::ContractionClosedForm { epsilon } => {
                    ensure(matches!(map, CatalogMap::Contraction), || format!("{map} is not the contraction"))?;
                    ensure(x == &PhasePoint::real(0, 1), || format!("closed form is stated at 0, not {x}"))?;
                    let v = region_of(map, neighborhood)?;
                    ensure(v.is_subset(&IntervalUnion::closed(-epsilon, epsilon.clone())), || {
                        format!("{neighborhood} is not within {epsilon} of 0")
                    })?;
                    ensure(epsilon < delta, || format!("{epsilon} is not below {delta}"))
                }
                PointwiseKind::Isometry { bound } => {
                    ensure(map.is_isometry(), || format!("{map} is not an isometry"))?;
                    let v = region_of(map, neighborhood)?;
                    let (lo, hi) = (v.infimum().and_then(Bound::value), v.supremum().and_then(Bound::value));
                    let (Some(lo), Some(hi)) = (lo, hi) else {
                        return Err(Error::Verification(format!("{neighborhood} is unbounded")));
                    };
                    ensure(&(hi - lo) == bound && bound < delta, || format!("diameter {} is not {bound} < {delta}", hi - lo))
                }
                PointwiseKind::IsometryCap { eta } => {
                    ensure(matches!(map, CatalogMap::Glissorotation { .. }), || format!("{map} is not a glissorotation"))?;
                    let expected = SubbasicSet::HalfSpace { normal: [1, 0, 0], offset: Rat::one() - eta.clone() };
                    ensure(neighborhood == &expected, || format!("{neighborhood} is not the cap of width {eta}"))?;
                    ensure(x == &PhasePoint::Cone(ConePoint::new(Rat::zero(), Rat::zero())?), || {
                        format!("{x} is not the base point")
                    })?;
                    ensure((eta * &Rat::int(2)) < (delta * delta), || format!("2·{eta} is not below {delta}²"))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::detect::{check_light_transitivity, check_periodic_density, check_sensitivity, check_transitivity};
    use crate::pl;
    use crate::space::PhaseSpace;
    use crate::subbase::{generate_family, Scheme};

    #[test]
    fn detector_output_replays() {
        let b = Budget::default();
        let tent = CatalogMap::tent();
        for w in check_transitivity(&tent, 4, &b).unwrap().witnesses() {
            replay_witness(&tent, w).unwrap();
        }
        for w in check_periodic_density(&tent, 4, &b).unwrap().witnesses() {
            replay_witness(&tent, w).unwrap();
        }
        let f = CatalogMap::Pl(pl::reflected_truncated_tent());
        let c = CatalogMap::Contraction;
        for (map, v) in [
            (&f, check_transitivity(&f, 8, &b).unwrap()),
            (&f, check_periodic_density(&f, 8, &b).unwrap()),
            (&f, check_sensitivity(&f, &Rat::new(1, 8), &b).unwrap()),
            (&c, check_transitivity(&c, 8, &b).unwrap()),
            (&c, check_periodic_density(&c, 8, &b).unwrap()),
        ] {
            replay_certificate(map, v.certificate().expect("refuted")).unwrap();
        }
        let g = CatalogMap::glissorotation(1, 3).unwrap();
        let fam = generate_family(&PhaseSpace::DoubleCone, &Scheme::HalfSpaces, 1).unwrap();
        let v = check_light_transitivity(&g, &fam, &b).unwrap();
        replay_certificate(&g, v.certificate().unwrap()).unwrap();
    }

    #[test]
    fn tampered_certificates_fail() {
        let f = CatalogMap::Pl(pl::reflected_truncated_tent());
        let bad = Certificate::RangeBound {
            range: IntervalUnion::closed(Rat::new(1, 4), Rat::one()),
            target: SubbasicSet::EndLow { a: Rat::new(1, 4) },
        };
        assert!(replay_certificate(&f, &bad).is_err());
        let w = Witness::Periodic {
            set: SubbasicSet::open_interval(Rat::zero(), Rat::one()),
            point: PhasePoint::real(2, 5),
            period: 1,
        };
        assert!(replay_witness(&CatalogMap::tent(), &w).is_err());
    }
}
