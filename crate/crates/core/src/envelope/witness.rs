use serde::{Deserialize, Serialize};

use super::{co_parts, EnvelopeSystem, FunctionElement};
use crate::budget::Budget;
use crate::catalog::CatalogMap;
use crate::detect::{check_avoidance, escape_step, region_transit, LineSystem, RegionTransit};
use crate::error::{Error, Result};
use crate::interval::IntervalUnion;
use crate::pl::PLMap;
use crate::scalar::{Golden, Rat};
use crate::space::{PhasePoint, PhaseSpace};
use crate::subbase::SubbasicSet;
use crate::verdict::{Avoidance, Certificate, Coordinate, PeriodicDescription, Witness};

/// Result of an envelope search: an element, a transferred refutation, or
/// nothing decided.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "outcome")]
pub enum Search<T> {
    Found { value: T },
    Refuted { certificate: Certificate },
    Unknown { note: String },
}

impl<T> Search<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Search::Found { value } => Some(value),
            _ => None,
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Search::Refuted { certificate } => Some(certificate),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Search::Found { .. } => "HOLDS",
            Search::Refuted { .. } => "FAILS",
            Search::Unknown { .. } => "UNKNOWN",
        }
    }
}

/// `element ∈ source` and `F_f^k(element) = image ∈ target`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeWitness {
    pub source: SubbasicSet,
    pub target: SubbasicSet,
    pub k: u32,
    pub element: FunctionElement,
    pub image: FunctionElement,
}

impl EnvelopeWitness {
    pub fn replay(&self, env: &EnvelopeSystem) -> Result<()> {
        if self.k == 0 {
            return Err(Error::Verification("envelope exponent must be positive".into()));
        }
        if env.apply_n(&self.element, self.k)? != self.image {
            return Err(Error::Verification(format!("F^{}({}) is not {}", self.k, self.element, self.image)));
        }
        if !env.co_member(&self.element, &self.source)? || !env.co_member(&self.image, &self.target)? {
            return Err(Error::Verification(format!("{} does not connect {} to {}", self.element, self.source, self.target)));
        }
        Ok(())
    }
}

/// `F_f^period(element) = element` and `element ∈ set`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeriodicElement {
    pub set: SubbasicSet,
    pub element: FunctionElement,
    pub period: u32,
}

impl PeriodicElement {
    pub fn replay(&self, env: &EnvelopeSystem) -> Result<()> {
        if !env.co_member(&self.element, &self.set)? {
            return Err(Error::Verification(format!("{} is not in {}", self.element, self.set)));
        }
        if env.apply_n(&self.element, self.period)? != self.element {
            return Err(Error::Verification(format!("{} is not fixed by F^{}", self.element, self.period)));
        }
        let earlier = (1..self.period).find(|&d| env.apply_n(&self.element, d).ok().as_ref() == Some(&self.element));
        match earlier {
            Some(d) => Err(Error::Verification(format!("{} already returns after {d} steps", self.element))),
            None => Ok(()),
        }
    }
}

fn base_region(env: &EnvelopeSystem, open: &IntervalUnion) -> IntervalUnion {
    match env.space.as_region() {
        Some(carrier) => open.intersect(&carrier),
        None => open.clone(),
    }
}

/// A constant `const_q` in `A = [F, U]` whose `k`-th image lies in
/// `B = [C, V]`, found through an exact image chain of `U`.
pub fn transitivity_witness(
    env: &EnvelopeSystem,
    a: &SubbasicSet,
    b: &SubbasicSet,
    budget: &Budget,
) -> Result<Search<EnvelopeWitness>> {
    let (ka, u) = co_parts(a)?;
    let (kb, v) = co_parts(b)?;
    let (u, v) = (base_region(env, u), base_region(env, v));
    if ka.is_empty() || kb.is_empty() || u.is_empty() {
        return Err(Error::Config(format!("{a} or {b} is not a proper function set")));
    }
    let found = |q: PhasePoint, k: u32| -> Result<Search<EnvelopeWitness>> {
        let element = FunctionElement::Constant { value: q };
        let image = env.apply_n(&element, k)?;
        let w = EnvelopeWitness { source: a.clone(), target: b.clone(), k, element, image };
        w.replay(env)?;
        Ok(Search::Found { value: w })
    };
    match &env.map {
        CatalogMap::Rotation(_) => {
            let alpha = env.map.rotation_angle().expect("rotation");
            let Some(target) = v.representative() else {
                return Ok(Search::Unknown { note: format!("{b} is empty on the circle") });
            };
            for k in 1..=budget.k_max {
                let kk = Rat::int(i64::from(k));
                let shift = Golden::new(&alpha.rational * &kk, &alpha.golden * &kk);
                let q = (Golden::rational(target.clone()) - shift).frac();
                if u.contains_by(|e| q.cmp_rat(e)) {
                    return found(PhasePoint::Circle(q), k);
                }
            }
            Ok(Search::Unknown { note: format!("no constant witness with k <= {}", budget.k_max) })
        }
        m if m.is_line() => {
            let sys = LineSystem::new(&env.map, budget)?;
            let escape = escape_step(&sys, &v);
            // a refutation for constants covers every g in A only when
            // g(C) is forced into U, or when it is about the whole range
            let covers = kb.is_subset(&ka);
            Ok(match region_transit(&sys, &u, &v, escape)? {
                RegionTransit::Hit { k, point, .. } => return found(PhasePoint::Real(point), k as u32),
                RegionTransit::Range { m: 1 } if sys.space.is_compact_interval() => Search::Refuted {
                    certificate: Certificate::RangeBound { range: sys.ranges()[0].clone(), target: b.clone() },
                },
                RegionTransit::Range { m } if m == 1 || covers => Search::Refuted {
                    certificate: absorbing(sys.ranges()[m - 1].clone(), m, a, b),
                },
                RegionTransit::Cycle { entry, region } if covers => {
                    Search::Refuted { certificate: absorbing(region, entry, a, b) }
                }
                RegionTransit::Range { .. } | RegionTransit::Cycle { .. } => Search::Unknown {
                    note: format!("constants from {a} never reach {b}, but other maps need not stay in U on C"),
                },
                RegionTransit::Open => Search::Unknown { note: format!("no witness with k <= {}", budget.k_max) },
            })
        }
        other => Err(Error::Domain(format!("no envelope witnesses for {other}"))),
    }
}

fn absorbing(region: IntervalUnion, entry: usize, a: &SubbasicSet, b: &SubbasicSet) -> Certificate {
    Certificate::AbsorbingSet {
        avoidance: Avoidance { coordinate: Coordinate::Value, region, entry: entry as u32 },
        source: a.clone(),
        target: b.clone(),
    }
}

/// A constant periodic element `const_{x0}` in `A = [F, U]`. Absence of
/// periodic points in `U` refutes every element of `A`, since
/// `f^k ∘ g = g` forces `g(F) ⊆ Fix(f^k)`.
pub fn periodic_witness(env: &EnvelopeSystem, a: &SubbasicSet, budget: &Budget) -> Result<Search<PeriodicElement>> {
    let (ka, u) = co_parts(a)?;
    let u = base_region(env, u);
    if ka.is_empty() || u.is_empty() {
        return Err(Error::Config(format!("{a} is not a proper function set")));
    }
    let found = |x: PhasePoint, period: u32| -> Result<Search<PeriodicElement>> {
        let p = PeriodicElement { set: a.clone(), element: FunctionElement::Constant { value: x }, period };
        p.replay(env)?;
        Ok(Search::Found { value: p })
    };
    match &env.map {
        CatalogMap::Rotation(_) => {
            let alpha = env.map.rotation_angle().expect("rotation");
            if !alpha.is_rational() {
                return Ok(Search::Refuted {
                    certificate: Certificate::PeriodicSet {
                        description: PeriodicDescription::Empty {
                            reason: "an irrational rotation has no periodic points".into(),
                        },
                        set: a.clone(),
                        avoidance: None,
                    },
                });
            }
            let x = PhasePoint::Circle(Golden::rational(u.representative().expect("nonempty")));
            match env.map.least_period(&x, budget.p_max)? {
                Some(p) => found(x, p),
                None => Ok(Search::Unknown { note: format!("period exceeds {}", budget.p_max) }),
            }
        }
        m if m.is_line() => {
            let sys = LineSystem::new(&env.map, budget)?;
            if let Some((x, period)) = sys.periodic_in(&u)? {
                return found(PhasePoint::Real(x), period);
            }
            Ok(match sys.avoidance(&u, &u) {
                Some(avoidance) => {
                    let (periodic, up_to) = sys.periodic_hull();
                    Search::Refuted {
                        certificate: Certificate::PeriodicSet {
                            description: PeriodicDescription::Region { periodic, up_to },
                            set: a.clone(),
                            avoidance: Some(avoidance),
                        },
                    }
                }
                None => Search::Unknown { note: format!("no periodic point of period <= {} in {a}", budget.p_max) },
            })
        }
        other => Err(Error::Domain(format!("no envelope witnesses for {other}"))),
    }
}

/// Re-checks a refutation produced by the envelope searches.
pub fn verify_refutation(env: &EnvelopeSystem, certificate: &Certificate) -> Result<()> {
    let fail = |m: String| Err(Error::Verification(m));
    match certificate {
        Certificate::RangeBound { range, target } => {
            let (kb, v) = co_parts(target)?;
            let dom = env.space.as_region().unwrap_or_else(IntervalUnion::full);
            if &env.map.image(&dom)? != range {
                return fail(format!("{range} is not the range of {}", env.map));
            }
            if kb.is_empty() || range.meets(v) {
                return fail(format!("{range} meets the target of {target}"));
            }
            Ok(())
        }
        Certificate::AbsorbingSet { avoidance, source, target } => {
            let (ka, u) = co_parts(source)?;
            let (kb, v) = co_parts(target)?;
            let u = base_region(env, u);
            check_avoidance(&env.map, avoidance, &u)?;
            if avoidance.region.meets(v) {
                return fail(format!("{} meets {v}", avoidance.region));
            }
            let mut img = u;
            for _ in 1..avoidance.entry {
                img = env.map.image(&img)?;
                if img.meets(v) {
                    return fail(format!("an early image of {source} meets {v}"));
                }
            }
            // every g in the source sends C into U, or every image is in J
            let ranged = avoidance.entry == 1
                && env
                    .space
                    .as_region()
                    .is_some_and(|d| env.map.image(&d).is_ok_and(|r| r.is_subset(&avoidance.region)));
            if !(kb.is_subset(&ka) || ranged) {
                return fail(format!("{target} is not controlled by {source}"));
            }
            Ok(())
        }
        Certificate::PeriodicSet { description, set, avoidance } => match description {
            PeriodicDescription::Empty { .. } => match env.map.rotation_angle() {
                Some(a) if !a.is_rational() => Ok(()),
                _ => fail(format!("{} has periodic points", env.map)),
            },
            PeriodicDescription::Region { .. } => {
                let (_, u) = co_parts(set)?;
                let u = base_region(env, u);
                let a = avoidance.as_ref().ok_or_else(|| Error::Verification("missing avoidance".into()))?;
                check_avoidance(&env.map, a, &u)?;
                if a.region.meets(&u) {
                    return fail(format!("{} meets {u}", a.region));
                }
                Ok(())
            }
            PeriodicDescription::Points { .. } => fail("no point description for envelopes".into()),
        },
        Certificate::PointwiseBound { .. } => fail("pointwise bounds do not apply to envelope pairs".into()),
    }
}

/// A non-constant PL map through `(x0, q)`.
fn pl_through(env: &EnvelopeSystem, x0: &Rat, q: &Rat) -> Result<PLMap> {
    let (lo, hi) = env.bounds()?;
    let other = if q == &lo { hi.clone() } else { lo.clone() };
    let knots = if x0 == &lo {
        vec![(lo, q.clone()), (hi, other)]
    } else if x0 == &hi {
        vec![(lo, other), (hi, q.clone())]
    } else {
        vec![(lo, other.clone()), (x0.clone(), q.clone()), (hi, other)]
    };
    PLMap::new(knots)
}

/// Replaces the constant of a point-open witness by a non-constant PL map
/// with the same value at `x0`, and recomputes its image.
pub fn pointwise_lift(env: &EnvelopeSystem, w: &EnvelopeWitness, x0: &Rat) -> Result<EnvelopeWitness> {
    let q = env.eval_real(&w.element, x0)?;
    let element = FunctionElement::pl(pl_through(env, x0, &q)?);
    let image = env.apply_n(&element, w.k)?;
    let lifted = EnvelopeWitness { source: w.source.clone(), target: w.target.clone(), k: w.k, element, image };
    lifted.replay(env)?;
    Ok(lifted)
}

/// The point-open sets `[{x0}, U]` and `[{x0}, V]` of base sets.
pub fn point_open_pair(env: &EnvelopeSystem, u: &SubbasicSet, v: &SubbasicSet, x0: &Rat) -> Result<(SubbasicSet, SubbasicSet)> {
    let realize = |s: &SubbasicSet| {
        s.realize(&env.space).ok_or_else(|| Error::Config(format!("{s} has no region on {}", env.space)))
    };
    Ok((SubbasicSet::po_set(x0.clone(), realize(u)?), SubbasicSet::po_set(x0.clone(), realize(v)?)))
}

/// Reads off the base witness `g(x0) ∈ U`, `f^k(g(x0)) = h(x0) ∈ V` from an
/// envelope witness between `[{x0}, U]` and `[{x0}, V]`.
pub fn base_from_envelope(
    env: &EnvelopeSystem,
    u: &SubbasicSet,
    v: &SubbasicSet,
    x0: &Rat,
    w: &EnvelopeWitness,
) -> Result<Witness> {
    w.replay(env)?;
    let (a, b) = point_open_pair(env, u, v, x0)?;
    if w.source != a || w.target != b {
        return Err(Error::Verification(format!("witness connects {} to {}, not {a} to {b}", w.source, w.target)));
    }
    let x = PhasePoint::Real(x0.clone());
    let point = env.eval(&w.element, &x)?;
    let image = env.eval(&w.image, &x)?;
    let direct = env.map.iterate(u64::from(w.k), &point)?;
    let space: &PhaseSpace = &env.space;
    if direct != image || !u.contains(space, &point) || !v.contains(space, &image) {
        return Err(Error::Verification(format!("f^{}({point}) = {direct} does not match h(x0) = {image}", w.k)));
    }
    Ok(Witness::Transit { source: u.clone(), target: v.clone(), k: u64::from(w.k), point, image })
}
