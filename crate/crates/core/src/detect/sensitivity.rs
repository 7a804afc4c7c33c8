use rayon::prelude::*;

use super::{check_family, constraints, engine, Engine, LineSystem};
use crate::budget::Budget;
use crate::catalog::CatalogMap;
use crate::error::{Error, Result};
use crate::interval::IntervalUnion;
use crate::scalar::{Golden, Rat};
use crate::sequence::{BinarySeq, Tail};
use crate::space::{ConePoint, Distance, PhasePoint, PhaseSpace};
use crate::subbase::{Family, Scheme, SubbasicSet};
use crate::verdict::{aggregate, Certificate, Outcome, PointwiseKind, Verdict, Witness};

/// Neighborhood radii used by [`check_sensitivity`].
pub const SENSITIVITY_RADII: [u32; 8] = [3, 4, 5, 6, 7, 8, 9, 10];

const GRID_RESOLUTION: u32 = 8;

/// Light sensitivity with constant `delta` over the family.
pub fn check_light_sensitivity(map: &CatalogMap, family: &Family, delta: &Rat, budget: &Budget) -> Result<Verdict> {
    check_family(map, family)?;
    let refine = matches!(family.scheme, Scheme::BasicIntervals | Scheme::HalfSpaces);
    let sets: Vec<SubbasicSet> = family.sets().cloned().collect();
    run(map, family.resolution, delta, budget, refine, |_| sets.clone())
}

/// Sensitivity over balls of the radii [`SENSITIVITY_RADII`] (basic
/// cylinders for sequence spaces).
pub fn check_sensitivity(map: &CatalogMap, delta: &Rat, budget: &Budget) -> Result<Verdict> {
    run(map, GRID_RESOLUTION, delta, budget, true, balls)
}

fn balls(x: &PhasePoint) -> Vec<SubbasicSet> {
    match x {
        PhasePoint::Real(x) => SENSITIVITY_RADII.iter().map(|&n| ball(x, &Rat::dyadic(n))).collect(),
        PhasePoint::Circle(a) => match a.as_rational() {
            Some(x) => SENSITIVITY_RADII.iter().map(|&n| ball(x, &Rat::dyadic(n))).collect(),
            None => Vec::new(),
        },
        PhasePoint::Sequence(s) => (1..=SENSITIVITY_RADII.len() as u64)
            .map(|n| SubbasicSet::Word { bits: (0..n).map(|i| s.bit(i)).collect() })
            .collect(),
        PhasePoint::Cone(_) => Vec::new(),
    }
}

fn ball(x: &Rat, radius: &Rat) -> SubbasicSet {
    SubbasicSet::open_interval(x - radius, x + radius)
}

fn run(
    map: &CatalogMap,
    r: u32,
    delta: &Rat,
    budget: &Budget,
    refine: bool,
    neighborhoods: impl Fn(&PhasePoint) -> Vec<SubbasicSet> + Sync,
) -> Result<Verdict> {
    budget.validate()?;
    if !delta.is_positive() {
        return Err(Error::Config(format!("sensitivity constant must be positive, got {delta}")));
    }
    let space = map.space();
    let deadline = budget.deadline();
    let outcomes: Vec<Vec<Outcome>> = match engine(map) {
        Engine::Line => {
            let sys = LineSystem::new(map, budget)?;
            let samples = line_samples(&sys, r);
            let sets: Vec<Vec<SubbasicSet>> = samples.iter().map(|x| neighborhoods(&PhasePoint::Real(x.clone()))).collect();
            // certificates first: a refutation makes the separations moot
            let bounds: Vec<Option<Outcome>> = samples
                .par_iter()
                .zip(&sets)
                .map(|(x, sets)| line_certificate(&sys, x, sets, delta, refine))
                .collect();
            if let Some(cert) = bounds.into_iter().flatten().next() {
                vec![vec![cert]]
            } else {
                samples
                    .par_iter()
                    .zip(&sets)
                    .map(|(x, sets)| {
                        if deadline.expired() {
                            return vec![Outcome::Open];
                        }
                        line_separations(&sys, x, sets, delta)
                    })
                    .collect()
            }
        }
        Engine::Circle => circle_samples(r)
            .par_iter()
            .map(|x| {
                let point = PhasePoint::Circle(Golden::rational(x.clone()));
                circle_point(map, &space, x, &neighborhoods(&point), delta, refine)
            })
            .collect(),
        Engine::Shift => shift_samples()
            .par_iter()
            .map(|x| {
                let point = PhasePoint::Sequence(x.clone());
                shift_point(&space, x, &neighborhoods(&point), delta)
            })
            .collect(),
        Engine::Cone => vec![cone_point(map, delta)?],
    };
    Ok(aggregate(outcomes.into_iter().flatten().collect(), budget, "sample neighborhoods without separation"))
}

fn line_samples(sys: &LineSystem<'_>, r: u32) -> Vec<Rat> {
    let (lo, hi, n) = match &sys.space {
        PhaseSpace::Interval { lo, hi } => (lo.clone(), hi.clone(), 4 * r),
        _ => (Rat::int(-2), Rat::int(2), 4 * r),
    };
    let window = IntervalUnion::closed(lo.clone(), hi.clone());
    let mut out: Vec<Rat> = Vec::new();
    for k in 1..=4 {
        let Ok(fixed) = sys.fixed_set(k) else { break };
        for part in fixed.intersect(&window).parts() {
            out.push(part.representative());
        }
    }
    let step = (&hi - &lo) / Rat::int(i64::from(n));
    for i in 0..=n {
        out.push(&lo + &(&step * Rat::int(i64::from(i))));
    }
    let mut seen = std::collections::BTreeSet::new();
    out.retain(|x| seen.insert(x.clone()));
    out
}

fn line_certificate(sys: &LineSystem<'_>, x: &Rat, sets: &[SubbasicSet], delta: &Rat, refine: bool) -> Option<Outcome> {
    let space = &sys.space;
    let mut candidates: Vec<SubbasicSet> = Vec::new();
    if refine {
        candidates.extend([4, 8, 16].map(|d| ball(x, &(delta / &Rat::int(d)))));
    }
    candidates.extend(sets.iter().cloned());
    for v in &candidates {
        let Some(region) = v.realize(space) else { continue };
        let region = region.intersect(&sys.domain);
        if !region.contains(x) || sys.domain.is_subset(&region) {
            continue;
        }
        if let Some(bound) = line_bound(sys, x, &region, delta) {
            return Some(Outcome::Refuted(Certificate::PointwiseBound {
                x: PhasePoint::Real(x.clone()),
                neighborhood: v.clone(),
                delta: delta.clone(),
                bound,
                evidence_only: false,
            }));
        }
    }
    None
}

fn line_separations(sys: &LineSystem<'_>, x: &Rat, sets: &[SubbasicSet], delta: &Rat) -> Vec<Outcome> {
    let space = &sys.space;
    sets.iter()
        .filter_map(|v| {
            let region = v.realize(space)?.intersect(&sys.domain);
            region.contains(x).then(|| line_separation(sys, x, v, &region, delta))
        })
        .collect()
}

fn line_bound(sys: &LineSystem<'_>, x: &Rat, region: &IntervalUnion, delta: &Rat) -> Option<PointwiseKind> {
    let diam = region.diameter()?;
    match sys.map {
        CatalogMap::Contraction if x.is_zero() => {
            let eps = region.endpoints().iter().map(Rat::abs).max()?;
            return (&eps < delta).then_some(PointwiseKind::ContractionClosedForm { epsilon: eps });
        }
        CatalogMap::Negation => return (&diam < delta).then_some(PointwiseKind::Isometry { bound: diam }),
        _ => {}
    }
    let mut diameters = Vec::new();
    let mut img = region.clone();
    for steps in 0..=sys.k_max() {
        let d = img.diameter()?;
        if d.is_zero() {
            return Some(PointwiseKind::Collapse { steps, diameters });
        }
        if &d >= delta {
            return None;
        }
        diameters.push(d);
        img = sys.image(&img);
    }
    None
}

/// Grows `f^j(V)` until part of it lies at least `delta` from `f^j(x)`,
/// then pulls a far point back into `V`.
fn line_separation(sys: &LineSystem<'_>, x: &Rat, v: &SubbasicSet, region: &IntervalUnion, delta: &Rat) -> Outcome {
    let mut chain = vec![region.clone()];
    let mut xj = x.clone();
    for j in 1..=sys.k_max() as usize {
        let next = sys.image(&chain[j - 1]);
        xj = match sys.map.eval_real(&xj) {
            Ok(y) => y,
            Err(_) => return Outcome::Open,
        };
        let near = IntervalUnion::open(&xj - delta, &xj + delta);
        let far = next.difference(&near);
        chain.push(next);
        if let Some(target) = far.representative() {
            let Ok(y) = sys.pullback(&chain, j, target) else { return Outcome::Open };
            let Ok(image) = sys.map.iterate_real(j as u64, &y) else { return Outcome::Open };
            let distance = (&image - &xj).abs();
            if &distance < delta {
                return Outcome::Open;
            }
            return Outcome::Witnessed(Witness::Separation {
                x: PhasePoint::Real(x.clone()),
                neighborhood: v.clone(),
                y: PhasePoint::Real(y),
                k: j as u64,
                distance: Distance::Exact(distance),
            });
        }
    }
    Outcome::Open
}

fn circle_samples(r: u32) -> Vec<Rat> {
    let n = i64::from(4 * r);
    (0..n).map(|i| Rat::new(i, n)).collect()
}

/// Rotations preserve arc length, so a neighborhood of diameter below
/// `delta` is never separated.
fn circle_point(
    map: &CatalogMap,
    space: &PhaseSpace,
    x: &Rat,
    sets: &[SubbasicSet],
    delta: &Rat,
    refine: bool,
) -> Vec<Outcome> {
    let point = PhasePoint::Circle(Golden::rational(x.clone()));
    let mut candidates: Vec<SubbasicSet> = Vec::new();
    if refine {
        candidates.push(ball(x, &(delta / &Rat::int(4))));
    }
    candidates.extend(sets.iter().cloned());
    for v in candidates {
        let Some(region) = v.realize(space) else { continue };
        if !region.contains(x) || !map.is_isometry() {
            continue;
        }
        // a region of the unit angle range that does not wrap
        let (Some(lo), Some(hi)) = (region.infimum().and_then(|b| b.value()), region.supremum().and_then(|b| b.value()))
        else {
            continue;
        };
        let bound = hi - lo;
        if &bound < delta && !(lo.is_zero() && hi == &Rat::one()) {
            return vec![Outcome::Refuted(Certificate::PointwiseBound {
                x: point,
                neighborhood: v,
                delta: delta.clone(),
                bound: PointwiseKind::Isometry { bound },
                evidence_only: false,
            })];
        }
    }
    vec![Outcome::Open]
}

fn shift_samples() -> Vec<BinarySeq> {
    vec![
        BinarySeq::constant(false),
        BinarySeq::constant(true),
        BinarySeq::new(vec![false, true], Tail::Zeros),
        BinarySeq::new(vec![true, false], Tail::Ones),
        BinarySeq::stream(0),
        BinarySeq::stream(5),
    ]
}

/// Flips the first unconstrained coordinate `n`; after `n` shifts the two
/// sequences differ at the first coordinate.
fn shift_point(space: &PhaseSpace, x: &BinarySeq, sets: &[SubbasicSet], delta: &Rat) -> Vec<Outcome> {
    let point = PhasePoint::Sequence(x.clone());
    sets.iter()
        .filter(|v| v.contains(space, &point))
        .map(|v| {
            let Some(bits) = constraints(v) else { return Outcome::Open };
            let n = bits.iter().map(|&(i, _)| i + 1).max().unwrap_or(1).max(1);
            let (len, tail) = match x.tail() {
                Tail::Stream(_) => (n + 1, Tail::Zeros),
                t => ((x.prefix().len() as u64).max(n + 1), t),
            };
            let bits = (0..len).map(|i| x.bit(i) != (i == n)).collect();
            let y = BinarySeq::new(bits, tail);
            let (fx, fy) = (x.shift_by(n), y.shift_by(n));
            match space.metric(&PhasePoint::Sequence(fx), &PhasePoint::Sequence(fy)) {
                Ok(d) if d.at_least(delta) => Outcome::Witnessed(Witness::Separation {
                    x: point.clone(),
                    neighborhood: v.clone(),
                    y: PhasePoint::Sequence(y),
                    k: n,
                    distance: d,
                }),
                _ => Outcome::Open,
            }
        })
        .collect()
}

/// At a point of the base circle, the cap `{u₁ > 1 − η}` is a half-space
/// of the scheme; the map is an isometry of the embedding, so
/// `d(f^k x, f^k y)² = d(x, y)² < 2η`.
fn cone_point(map: &CatalogMap, delta: &Rat) -> Result<Vec<Outcome>> {
    let eta = delta * delta / Rat::int(16);
    let two_eta = &eta * &Rat::int(2);
    if two_eta >= delta * delta || !map.is_isometry() {
        return Ok(vec![Outcome::Open]);
    }
    let x = PhasePoint::Cone(ConePoint::new(Rat::zero(), Rat::zero())?);
    Ok(vec![Outcome::Refuted(Certificate::PointwiseBound {
        x,
        neighborhood: SubbasicSet::HalfSpace { normal: [1, 0, 0], offset: Rat::one() - eta.clone() },
        delta: delta.clone(),
        bound: PointwiseKind::IsometryCap { eta },
        evidence_only: true,
    })])
}
