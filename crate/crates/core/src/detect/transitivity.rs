use rayon::prelude::*;

use super::{altitude_ceiling, altitude_floor, check_family, constraints, engine, Engine, LineSystem};
use crate::budget::Budget;
use crate::catalog::CatalogMap;
use crate::error::Result;
use crate::interval::{Bound, Interval, IntervalUnion};
use crate::scalar::{Golden, Rat};
use crate::sequence::{stream_bit, BinarySeq};
use crate::space::{PhasePoint, PhaseSpace};
use crate::subbase::{cone_grid, generate_family, Family, Scheme, SubbasicSet, HALF_SPACE_MARGIN};
use crate::verdict::{aggregate, Avoidance, Certificate, Coordinate, Outcome, Verdict, Witness};

/// Light transitivity over every ordered pair of the family.
pub fn check_light_transitivity(map: &CatalogMap, family: &Family, budget: &Budget) -> Result<Verdict> {
    check_family(map, family)?;
    budget.validate()?;
    let sets: Vec<&SubbasicSet> = family.sets().collect();
    let pairs: Vec<(usize, usize)> = (0..sets.len()).flat_map(|i| (0..sets.len()).map(move |j| (i, j))).collect();
    let deadline = budget.deadline();
    let outcomes: Vec<Outcome> = match engine(map) {
        Engine::Line => {
            let sys = LineSystem::new(map, budget)?;
            let regions: Vec<Option<IntervalUnion>> = sets.iter().map(|s| s.realize(&family.space)).collect();
            let escapes: Vec<Option<usize>> =
                regions.iter().map(|v| v.as_ref().and_then(|v| escape_step(&sys, v))).collect();
            pairs
                .par_iter()
                .map(|&(i, j)| {
                    if deadline.expired() {
                        return Outcome::Open;
                    }
                    match (&regions[i], &regions[j]) {
                        (Some(u), Some(v)) => line_pair(&sys, sets[i], u, sets[j], v, escapes[j]),
                        _ => Outcome::Open,
                    }
                })
                .collect()
        }
        Engine::Circle => {
            let alpha = map.rotation_angle().expect("rotation");
            pairs
                .par_iter()
                .map(|&(i, j)| circle_pair(&family.space, &alpha, sets[i], sets[j], budget.k_max))
                .collect()
        }
        Engine::Shift => pairs
            .par_iter()
            .map(|&(i, j)| shift_pair(sets[i], sets[j], budget))
            .collect(),
        Engine::Cone => {
            let orbits = ConeOrbits::new(map, budget.k_max)?;
            let nets: Vec<Vec<usize>> = sets.iter().map(|s| orbits.net(s)).collect();
            pairs
                .par_iter()
                .map(|&(i, j)| cone_pair(map, &orbits, sets[i], &nets[i], sets[j]))
                .collect()
        }
    };
    Ok(aggregate(outcomes, budget, "ordered pairs without witness or certificate"))
}

/// Transitivity relative to the basic open sets at resolution `r`.
pub fn check_transitivity(map: &CatalogMap, r: u32, budget: &Budget) -> Result<Verdict> {
    let space = map.space();
    let family = generate_family(&space, &Scheme::basic_for(&space), r)?;
    check_light_transitivity(map, &family, budget)
}

/// A witness for `f^k(U) ∩ V ≠ ∅` at exactly the given `k`, for line maps.
pub fn pair_witness_at(map: &CatalogMap, u: &SubbasicSet, v: &SubbasicSet, k: u32) -> Result<Option<Witness>> {
    let budget = Budget::default();
    let sys = LineSystem::new(map, &budget)?;
    let space = map.space();
    let (Some(ur), Some(vr)) = (u.realize(&space), v.realize(&space)) else { return Ok(None) };
    let mut chain = vec![ur.intersect(&sys.domain)];
    for _ in 0..k {
        chain.push(sys.image(chain.last().unwrap()));
    }
    let Some(hit) = hit_at(&sys, &chain, k as usize, &vr) else { return Ok(None) };
    let (point, image) = hit?;
    Ok(Some(transit(u, v, k as usize, point, image)))
}

/// How the orbit of a line region relates to a target region.
pub(crate) enum RegionTransit {
    /// `point ∈ U` with `f^k(point) = image ∈ V`.
    Hit { k: usize, point: Rat, image: Rat },
    /// `f^m(X)` misses `V` and so do the earlier images of `U`.
    Range { m: usize },
    /// The images of `U` cycle inside `region` from step `entry` on, and
    /// no image meets `V`.
    Cycle { entry: usize, region: IntervalUnion },
    Open,
}

/// First range iterate missing `v`, if any.
pub(crate) fn escape_step(sys: &LineSystem<'_>, v: &IntervalUnion) -> Option<usize> {
    sys.ranges().iter().position(|r| !r.meets(v)).map(|m| m + 1)
}

pub(crate) fn region_transit(
    sys: &LineSystem<'_>,
    ur: &IntervalUnion,
    vr: &IntervalUnion,
    escape: Option<usize>,
) -> Result<RegionTransit> {
    let k_max = sys.k_max();
    // from step `escape` on, every image lies in a range iterate missing V
    let horizon = escape.map_or(k_max, |m| (m as u32 - 1).min(k_max));
    let (chain, back) = sys.chain(ur, horizon);
    for k in 1..chain.len() {
        if let Some(hit) = hit_at(sys, &chain, k, vr) {
            let (point, image) = hit?;
            return Ok(RegionTransit::Hit { k, point, image });
        }
    }
    if let Some(entry) = back {
        let region = chain[entry..].iter().fold(IntervalUnion::empty(), |acc, c| acc.union(c));
        return Ok(RegionTransit::Cycle { entry, region });
    }
    Ok(match escape {
        Some(m) if m as u32 <= k_max => RegionTransit::Range { m },
        _ => RegionTransit::Open,
    })
}

fn hit_at(sys: &LineSystem<'_>, chain: &[IntervalUnion], k: usize, vr: &IntervalUnion) -> Option<Result<(Rat, Rat)>> {
    let y = chain[k].intersect(vr).representative()?;
    Some(sys.pullback(chain, k, y).and_then(|q| {
        let image = sys.map.iterate_real(k as u64, &q)?;
        Ok((q, image))
    }))
}

fn transit(u: &SubbasicSet, v: &SubbasicSet, k: usize, point: Rat, image: Rat) -> Witness {
    Witness::Transit {
        source: u.clone(),
        target: v.clone(),
        k: k as u64,
        point: PhasePoint::Real(point),
        image: PhasePoint::Real(image),
    }
}

fn line_pair(
    sys: &LineSystem<'_>,
    u: &SubbasicSet,
    ur: &IntervalUnion,
    v: &SubbasicSet,
    vr: &IntervalUnion,
    escape: Option<usize>,
) -> Outcome {
    let absorbing = |region: IntervalUnion, entry: usize| {
        Outcome::Refuted(Certificate::AbsorbingSet {
            avoidance: Avoidance { coordinate: Coordinate::Value, region, entry: entry as u32 },
            source: u.clone(),
            target: v.clone(),
        })
    };
    match region_transit(sys, ur, vr, escape) {
        Ok(RegionTransit::Hit { k, point, image }) => Outcome::Witnessed(transit(u, v, k, point, image)),
        Ok(RegionTransit::Cycle { entry, region }) => absorbing(region, entry),
        Ok(RegionTransit::Range { m: 1 }) if sys.space.is_compact_interval() => {
            Outcome::Refuted(Certificate::RangeBound { range: sys.ranges()[0].clone(), target: v.clone() })
        }
        Ok(RegionTransit::Range { m }) => absorbing(sys.ranges()[m - 1].clone(), m),
        Ok(RegionTransit::Open) | Err(_) => Outcome::Open,
    }
}

fn circle_pair(
    space: &PhaseSpace,
    alpha: &Golden,
    u: &SubbasicSet,
    v: &SubbasicSet,
    k_max: u32,
) -> Outcome {
    let (Some(ur), Some(vr)) = (u.realize(space), v.realize(space)) else { return Outcome::Open };
    let Some(target) = vr.representative() else { return Outcome::Open };
    for k in 1..=u64::from(k_max) {
        let kk = Rat::int(k as i64);
        let shift = Golden::new(&alpha.rational * &kk, &alpha.golden * &kk);
        let q = (Golden::rational(target.clone()) - shift).frac();
        if ur.contains_by(|e| q.cmp_rat(e)) {
            return Outcome::Witnessed(Witness::Transit {
                source: u.clone(),
                target: v.clone(),
                k,
                point: PhasePoint::Circle(q),
                image: PhasePoint::Circle(Golden::rational(target)),
            });
        }
    }
    Outcome::Open
}

/// Search along the orbit of `s*`: find `m` with `σ^m(s*) ∈ U`, then the
/// least `k` with `σ^{m+k}(s*) ∈ V`.
fn shift_pair(u: &SubbasicSet, v: &SubbasicSet, budget: &Budget) -> Outcome {
    let (Some(cu), Some(cv)) = (constraints(u), constraints(v)) else { return Outcome::Open };
    let holds = |c: &[(u64, bool)], at: u64| c.iter().all(|&(i, b)| stream_bit(at + i) == b);
    for m in 0..budget.lookahead {
        if !holds(&cu, m) {
            continue;
        }
        if let Some(k) = (1..=u64::from(budget.k_max)).find(|&k| holds(&cv, m + k)) {
            return Outcome::Witnessed(Witness::Transit {
                source: u.clone(),
                target: v.clone(),
                k,
                point: PhasePoint::Sequence(BinarySeq::stream(m)),
                image: PhasePoint::Sequence(BinarySeq::stream(m + k)),
            });
        }
    }
    Outcome::Open
}

/// Grid points of the cone with their embedded orbits, shared by all pairs.
struct ConeOrbits {
    points: Vec<PhasePoint>,
    /// `orbits[i][k − 1]` embeds `f^k(points[i])`.
    orbits: Vec<Vec<[f64; 3]>>,
}

impl ConeOrbits {
    fn new(map: &CatalogMap, k_max: u32) -> Result<ConeOrbits> {
        let steps = match map {
            CatalogMap::Glissorotation { q, .. } => u64::from(k_max.min(2 * q)),
            _ => 0,
        };
        let points: Vec<PhasePoint> = cone_grid(8).collect();
        let orbits = points
            .iter()
            .map(|p| {
                (1..=steps)
                    .map(|k| match map.iterate(k, p)? {
                        PhasePoint::Cone(c) => Ok(c.embed()),
                        other => Err(crate::error::Error::Domain(format!("{other} is not a cone point"))),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ConeOrbits { points, orbits })
    }

    fn net(&self, set: &SubbasicSet) -> Vec<usize> {
        let SubbasicSet::HalfSpace { normal, offset } = set else { return Vec::new() };
        (0..self.points.len())
            .filter(|&i| match &self.points[i] {
                PhasePoint::Cone(c) => SubbasicSet::half_space_margin(normal, offset, c) > HALF_SPACE_MARGIN,
                _ => false,
            })
            .collect()
    }
}

fn margin(normal: &[i64; 3], offset: f64, e: &[f64; 3]) -> f64 {
    normal.iter().zip(e).map(|(&n, &x)| n as f64 * x).sum::<f64>() - offset
}

fn cone_pair(map: &CatalogMap, orbits: &ConeOrbits, u: &SubbasicSet, net: &[usize], v: &SubbasicSet) -> Outcome {
    if let (Some(lo), Some(hi)) = (altitude_floor(u), altitude_ceiling(v)) {
        if hi <= lo {
            let region = IntervalUnion::from(Interval::new(Bound::Open(lo), Bound::Closed(Rat::one())));
            return Outcome::Refuted(Certificate::AbsorbingSet {
                avoidance: Avoidance { coordinate: Coordinate::AbsAltitude, region, entry: 1 },
                source: u.clone(),
                target: v.clone(),
            });
        }
    }
    let SubbasicSet::HalfSpace { normal, offset } = v else { return Outcome::Open };
    let off = offset.to_f64();
    let steps = net.first().map_or(0, |&i| orbits.orbits[i].len());
    for k in 1..=steps {
        for &i in net {
            // margins near the threshold are re-checked on the exact image
            if margin(normal, off, &orbits.orbits[i][k - 1]) <= HALF_SPACE_MARGIN {
                continue;
            }
            let p = &orbits.points[i];
            let Ok(img) = map.iterate(k as u64, p) else { continue };
            if v.contains(&map.space(), &img) {
                return Outcome::Witnessed(Witness::Transit {
                    source: u.clone(),
                    target: v.clone(),
                    k: k as u64,
                    point: p.clone(),
                    image: img,
                });
            }
        }
    }
    Outcome::Open
}
