use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{co_parts, EnvelopeSystem, FunctionElement, Search};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::interval::IntervalUnion;
use crate::pl::PLMap;
use crate::scalar::Rat;
use crate::subbase::SubbasicSet;

/// Whether `g` maps the base onto itself.
pub fn onto_check(env: &EnvelopeSystem, g: &FunctionElement) -> Result<bool> {
    let (lo, hi) = env.bounds()?;
    Ok(env.materialize(g, Budget::default().max_pieces)?.is_onto(&lo, &hi))
}

/// Fraction of sampled knot perturbations of `g`, each within `epsilon`,
/// that remain onto.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OntoProbe {
    pub center: FunctionElement,
    pub epsilon: Rat,
    pub samples: usize,
    pub onto: usize,
}

impl OntoProbe {
    pub fn fraction(&self) -> f64 {
        self.onto as f64 / self.samples as f64
    }
}

pub fn onto_ball_probe(
    env: &EnvelopeSystem,
    g: &FunctionElement,
    epsilon: &Rat,
    samples: usize,
    seed: u64,
) -> Result<OntoProbe> {
    let (lo, hi) = env.bounds()?;
    let shape = env.materialize(g, Budget::default().max_pieces)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let steps = 1i64 << 10;
    let mut onto = 0;
    for _ in 0..samples {
        let knots = shape
            .knots()
            .iter()
            .map(|(x, y)| {
                let t = Rat::new(rng.gen_range(-steps..=steps), steps);
                let y = (y + &(&t * epsilon)).max(lo.clone()).min(hi.clone());
                (x.clone(), y)
            })
            .collect();
        if PLMap::new(knots)?.is_onto(&lo, &hi) {
            onto += 1;
        }
    }
    Ok(OntoProbe { center: g.clone(), epsilon: epsilon.clone(), samples, onto })
}

/// `h` lies in every set of the neighbourhood and `d(F^n g, F^n h) > δ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SensitivityEvidence {
    pub g: FunctionElement,
    pub h: FunctionElement,
    pub y0: Rat,
    pub n: u32,
    pub distance: Rat,
}

impl SensitivityEvidence {
    pub fn replay(&self, env: &EnvelopeSystem, sets: &[SubbasicSet], delta: &Rat) -> Result<()> {
        if !env.co_member_all(&self.g, sets)? || !env.co_member_all(&self.h, sets)? {
            return Err(Error::Verification(format!("{} or {} leaves the neighbourhood", self.g, self.h)));
        }
        let d = env.uniform_distance(&env.apply_n(&self.g, self.n)?, &env.apply_n(&self.h, self.n)?)?;
        if d != self.distance || &d <= delta {
            return Err(Error::Verification(format!("distance recomputes to {d}, claimed {} > {delta}", self.distance)));
        }
        Ok(())
    }
}

/// Hull `[a, b]` of each part.
fn hulls(u: &IntervalUnion) -> Vec<(Rat, Rat)> {
    u.parts()
        .iter()
        .filter_map(|p| Some((p.lo().value()?.clone(), p.hi().value()?.clone())))
        .collect()
}

/// The map equal to `y0` on `k1`, to `g` on `rest`, joined linearly in the
/// gaps and constant beyond the outermost pieces.
fn splice(g: &PLMap, k1: &IntervalUnion, rest: &IntervalUnion, y0: &Rat, lo: &Rat, hi: &Rat) -> Result<PLMap> {
    let mut pinned: Vec<(Rat, Rat, bool)> = hulls(k1).into_iter().map(|(a, b)| (a, b, true)).collect();
    pinned.extend(hulls(rest).into_iter().map(|(a, b)| (a, b, false)));
    pinned.sort_by(|x, y| x.0.cmp(&y.0));
    let mut knots: Vec<(Rat, Rat)> = Vec::new();
    let mut push = |x: Rat, y: Rat| -> Result<()> {
        match knots.last() {
            Some((px, py)) if *px == x && *py != y => Err(Error::Config(format!("conflicting values at {x}"))),
            Some((px, _)) if *px == x => Ok(()),
            _ => {
                knots.push((x, y));
                Ok(())
            }
        }
    };
    for (a, b, flat) in &pinned {
        if *flat {
            push(a.clone(), y0.clone())?;
            push(b.clone(), y0.clone())?;
        } else {
            push(a.clone(), g.eval(a)?)?;
            for (x, y) in g.knots() {
                if x > a && x < b {
                    push(x.clone(), y.clone())?;
                }
            }
            push(b.clone(), g.eval(b)?)?;
        }
    }
    let first = knots.first().map(|k| k.1.clone()).unwrap_or_else(|| y0.clone());
    let last = knots.last().map(|k| k.1.clone()).unwrap_or_else(|| y0.clone());
    if knots.first().is_none_or(|k| &k.0 > lo) {
        knots.insert(0, (lo.clone(), first));
    }
    if knots.last().is_none_or(|k| &k.0 < hi) {
        knots.push((hi.clone(), last));
    }
    PLMap::new(knots)
}

/// Dyadic points of `v`, coarsest first.
fn dyadic_points(v: &IntervalUnion, depth: u32) -> Vec<Rat> {
    let mut out: Vec<Rat> = Vec::new();
    for e in 0..=depth {
        let d = 1i64 << e;
        for p in hulls(v) {
            let (a, b) = (p.0 * Rat::int(d), p.1 * Rat::int(d));
            let mut i = a.floor();
            while i <= b {
                // odd numerators are exactly the points new at this depth
                let fresh = e == 0 || !(&i / Rat::int(2)).is_integer();
                let x = &i / Rat::int(d);
                if fresh && v.contains(&x) && !out.contains(&x) {
                    out.push(x);
                }
                i = i + Rat::one();
            }
        }
    }
    out
}

/// Perturbs `g` on the first compact set of the neighbourhood `sets` into
/// a constant `y0` and searches for an iterate separating the two by more
/// than `delta`. Compact sets other than the first must not meet it.
pub fn envelope_sensitivity_probe(
    env: &EnvelopeSystem,
    g: &FunctionElement,
    sets: &[SubbasicSet],
    delta: &Rat,
    budget: &Budget,
) -> Result<Search<SensitivityEvidence>> {
    let (lo, hi) = env.bounds()?;
    if env.map.is_isometry() {
        return Ok(Search::Unknown { note: format!("{} is an isometry", env.map) });
    }
    let Some((first, others)) = sets.split_first() else {
        return Err(Error::Config("empty neighbourhood".into()));
    };
    if !env.co_member_all(g, sets)? {
        return Err(Error::Config(format!("{g} is not in the neighbourhood")));
    }
    let (k1, v1) = co_parts(first)?;
    let mut rest = IntervalUnion::empty();
    for s in others {
        rest = rest.union(&co_parts(s)?.0);
    }
    if k1.meets(&rest) {
        return Err(Error::Config(format!("{k1} meets the other compact sets")));
    }
    let shape = env.materialize(g, budget.max_pieces)?;
    let x1 = k1.representative().ok_or_else(|| Error::Config("empty compact set".into()))?;
    let c = shape.eval(&x1)?;
    let candidates = dyadic_points(&v1.intersect(&IntervalUnion::closed(lo.clone(), hi.clone())), 8);
    let mut orbit_c = c.clone();
    let mut orbits: Vec<Rat> = candidates.clone();
    for n in 1..=budget.k_max {
        orbit_c = env.map.eval_real(&orbit_c)?;
        for (y0, y) in candidates.iter().zip(orbits.iter_mut()) {
            *y = env.map.eval_real(y)?;
            if &(&*y - &orbit_c).abs() <= delta {
                continue;
            }
            let h = FunctionElement::pl(splice(&shape, &k1, &rest, y0, &lo, &hi)?);
            let distance = match env.uniform_distance(&env.apply_n(g, n)?, &env.apply_n(&h, n)?) {
                Ok(d) => d,
                Err(Error::Budget(m)) => return Ok(Search::Unknown { note: m }),
                Err(e) => return Err(e),
            };
            let ev = SensitivityEvidence { g: g.clone(), h, y0: y0.clone(), n, distance };
            ev.replay(env, sets, delta)?;
            return Ok(Search::Found { value: ev });
        }
    }
    Ok(Search::Unknown { note: format!("no separation above {delta} within {} steps", budget.k_max) })
}
