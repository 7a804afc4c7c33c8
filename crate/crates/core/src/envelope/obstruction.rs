//! Evidence that a given element has no dense orbit under `F_f`, and scans
//! for periodic elements.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{EnvelopeSystem, FunctionElement};
use crate::budget::Budget;
use crate::detect::LineSystem;
use crate::error::{Error, Result};
use crate::interval::IntervalUnion;
use crate::pl::PLMap;
use crate::scalar::Rat;
use crate::space::PhasePoint;
use crate::subbase::SubbasicSet;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Argument {
    /// Every iterate of a constant is constant, and the obstruction holds
    /// no constant although `inhabitant` lies in it.
    NoConstants { inhabitant: PLMap },
    /// `g(preimage)` is the periodic point `periodic`, so every iterate
    /// meets `orbit`, which the obstruction forbids.
    ForbiddenOrbit { periodic: Rat, period: u32, orbit: Vec<Rat>, preimage: Rat },
}

/// A nonempty open set, given as an intersection of function sets, that
/// the orbit of `element` never enters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObstructionEvidence {
    pub element: FunctionElement,
    pub obstruction: Vec<SubbasicSet>,
    /// Iterates `F^0(g), …, F^checked(g)` replayed against the obstruction.
    pub checked: u32,
    pub argument: Argument,
}

fn at(lo: &Rat, hi: &Rat, s: Rat) -> Rat {
    lo + &(&(hi - lo) * &s)
}

/// Builds and replays an obstruction for `g` over `n` iterates.
pub fn no_dense_orbit_evidence(
    env: &EnvelopeSystem,
    g: &FunctionElement,
    n: u32,
    budget: &Budget,
) -> Result<ObstructionEvidence> {
    let (lo, hi) = env.bounds()?;
    let s = |n: i64, d: i64| at(&lo, &hi, Rat::new(n, d));
    let shape = env.materialize(g, budget.max_pieces)?;
    let (min, max) = shape.range();
    let evidence = if min == max {
        let obstruction = vec![
            SubbasicSet::co_set(IntervalUnion::closed(s(0, 1), s(1, 2)), IntervalUnion::open(s(0, 1), s(1, 4))),
            SubbasicSet::co_set(IntervalUnion::point(s(1, 1)), IntervalUnion::open(s(2, 3), s(3, 4))),
        ];
        let inhabitant = PLMap::new(vec![(s(0, 1), s(1, 8)), (s(1, 2), s(1, 8)), (s(1, 1), s(7, 10))])?;
        ObstructionEvidence { element: g.clone(), obstruction, checked: n, argument: Argument::NoConstants { inhabitant } }
    } else {
        let sys = LineSystem::new(&env.map, budget)?;
        let (periodic, period) = sys
            .periodic_in(&IntervalUnion::open(min, max))?
            .ok_or_else(|| Error::Budget(format!("no periodic point of period <= {} in the range of {g}", budget.p_max)))?;
        let orbit = (0..period)
            .map(|j| env.map.iterate_real(u64::from(j), &periodic))
            .collect::<Result<Vec<_>>>()?;
        let preimage = shape
            .preimage_in(&periodic, &IntervalUnion::closed(lo.clone(), hi.clone()))
            .ok_or_else(|| Error::Verification(format!("{periodic} is not attained by {g}")))?;
        let open = IntervalUnion::closed(lo.clone(), hi.clone()).difference(&IntervalUnion::points(orbit.clone()));
        ObstructionEvidence {
            element: g.clone(),
            obstruction: vec![SubbasicSet::co_set(IntervalUnion::closed(lo, hi), open)],
            checked: n,
            argument: Argument::ForbiddenOrbit { periodic, period, orbit, preimage },
        }
    };
    replay_obstruction(env, &evidence)?;
    Ok(evidence)
}

/// Re-checks the argument and the first `checked` iterates.
pub fn replay_obstruction(env: &EnvelopeSystem, ev: &ObstructionEvidence) -> Result<()> {
    let fail = |m: String| Err(Error::Verification(m));
    let (lo, hi) = env.bounds()?;
    match &ev.argument {
        Argument::NoConstants { inhabitant } => {
            if !ev.element.is_constant() {
                return fail(format!("{} is not constant", ev.element));
            }
            let witness = FunctionElement::pl(inhabitant.clone());
            if !env.co_member_all(&witness, &ev.obstruction)? {
                return fail(format!("{inhabitant} is not in the obstruction"));
            }
            // two constraints with disjoint targets and no constant in both
            let opens: Vec<&IntervalUnion> = ev.obstruction.iter().map(|s| super::co_parts(s).map(|p| p.1)).collect::<Result<_>>()?;
            let disjoint = opens.iter().enumerate().any(|(i, a)| opens[i + 1..].iter().any(|b| !a.meets(b)));
            if !disjoint {
                return fail("every pair of targets overlaps, so constants may enter".into());
            }
            let mut x = ev.element.clone();
            for j in 0..=ev.checked {
                if !x.is_constant() || env.co_member_all(&x, &ev.obstruction)? {
                    return fail(format!("F^{j}({}) enters the obstruction", ev.element));
                }
                x = env.apply(&x)?;
            }
            Ok(())
        }
        Argument::ForbiddenOrbit { periodic, period, orbit, preimage } => {
            let full = IntervalUnion::closed(lo, hi);
            let forbidden = IntervalUnion::points(orbit.clone());
            if ev.obstruction != vec![SubbasicSet::co_set(full.clone(), full.difference(&forbidden))] {
                return fail("the obstruction is not the maps avoiding the orbit".into());
            }
            if env.map.iterate_real(u64::from(*period), periodic)? != *periodic || orbit.first() != Some(periodic) {
                return fail(format!("{periodic} does not return after {period} steps"));
            }
            for w in orbit.windows(2) {
                if env.map.eval_real(&w[0])? != w[1] {
                    return fail(format!("{} does not follow {} on the orbit", w[1], w[0]));
                }
            }
            if env.eval_real(&ev.element, preimage)? != *periodic {
                return fail(format!("{} does not send {preimage} to {periodic}", ev.element));
            }
            let outside = full.difference(&forbidden).representative();
            if let Some(c) = outside {
                if !env.co_member_all(&FunctionElement::constant(c), &ev.obstruction)? {
                    return fail("the obstruction is empty".into());
                }
            }
            // the orbit is closed under f, so F^j(g)(preimage) = f^j(periodic)
            // stays on it; spot-check the symbolic iterates at powers of two
            // and at `checked`
            let mut y = periodic.clone();
            for j in 0..=ev.checked {
                if !forbidden.contains(&y) {
                    return fail(format!("f^{j}({periodic}) leaves the orbit"));
                }
                if j.is_power_of_two() || j == 0 || j == ev.checked {
                    let gj = env.apply_n(&ev.element, j)?;
                    if env.eval_real(&gj, preimage)? != y {
                        return fail(format!("F^{j}({}) leaves the orbit at {preimage}", ev.element));
                    }
                }
                y = env.map.eval_real(&y)?;
            }
            Ok(())
        }
    }
}

/// One element of a periodic scan. `period` is the least `k` with
/// `F^k(g) = g`, decided by `g(X) ⊆ Fix(f^k)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub index: usize,
    pub element: FunctionElement,
    pub constant: bool,
    pub image: IntervalUnion,
    pub period: Option<u32>,
    /// Whether the independent cross-check agrees.
    pub verified: bool,
}

/// Looks for periodic elements among `family`, with periods up to `k_max`.
pub fn envelope_periodic_scan(
    env: &EnvelopeSystem,
    family: &[FunctionElement],
    k_max: u32,
    budget: &Budget,
) -> Result<Vec<ScanRecord>> {
    let (lo, hi) = env.bounds()?;
    let budget = budget.clone().with_p_max(k_max.max(1));
    let sys = LineSystem::new(&env.map, &budget)?;
    let fixed = (1..=k_max).map(|k| sys.fixed_set(k)).collect::<Result<Vec<_>>>()?;
    let domain = IntervalUnion::closed(lo, hi);
    family
        .par_iter()
        .enumerate()
        .map(|(index, g)| {
            let image = env.image(g, &domain)?;
            let period = fixed.iter().position(|f| image.is_subset(f)).map(|i| i as u32 + 1);
            let verified = match period {
                Some(k) => cross_check(env, g, k, &budget)?,
                None => (1..=k_max).all(|k| !cross_check(env, g, k, &budget).unwrap_or(false)),
            };
            Ok(ScanRecord { index, element: g.clone(), constant: g.is_constant(), image, period, verified })
        })
        .collect()
}

/// `F^k(g) = g` by graph equality when `f` is PL, else at the knots of `g`.
fn cross_check(env: &EnvelopeSystem, g: &FunctionElement, k: u32, budget: &Budget) -> Result<bool> {
    let shape = env.materialize(g, budget.max_pieces)?;
    if env.map.as_pl().is_some() {
        let iterate = env.materialize(&env.apply_n(g, k)?, budget.max_pieces)?;
        return Ok(iterate.sup_distance(&shape)?.0.is_zero());
    }
    for (x, _) in shape.knots() {
        let y = env.eval_real(g, x)?;
        if env.map.iterate(u64::from(k), &PhasePoint::Real(y.clone()))? != PhasePoint::Real(y) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::CatalogMap;
    use crate::pl;

    #[test]
    fn tent_obstructions() {
        let e = EnvelopeSystem::compact_open(CatalogMap::tent()).unwrap();
        let b = Budget::default();
        let c = no_dense_orbit_evidence(&e, &FunctionElement::constant(Rat::new(1, 3)), 64, &b).unwrap();
        assert!(matches!(c.argument, Argument::NoConstants { .. }));
        let g = FunctionElement::pl(PLMap::new(vec![(Rat::zero(), Rat::new(1, 8)), (Rat::one(), Rat::new(3, 4))]).unwrap());
        let ev = no_dense_orbit_evidence(&e, &g, 64, &b).unwrap();
        let Argument::ForbiddenOrbit { period, orbit, .. } = &ev.argument else { panic!("{:?}", ev.argument) };
        assert_eq!(*period, 1);
        assert_eq!(orbit, &vec![Rat::new(2, 3)]);
    }

    #[test]
    fn tampered_obstruction_fails() {
        let e = EnvelopeSystem::compact_open(CatalogMap::tent()).unwrap();
        let g = FunctionElement::pl(pl::unit_identity());
        let mut ev = no_dense_orbit_evidence(&e, &g, 16, &Budget::default()).unwrap();
        if let Argument::ForbiddenOrbit { preimage, .. } = &mut ev.argument {
            *preimage = Rat::new(1, 7);
        }
        assert!(replay_obstruction(&e, &ev).is_err());
    }

    #[test]
    fn contraction_scan() {
        let e = EnvelopeSystem::compact_open(CatalogMap::Contraction).unwrap();
        let fam = vec![
            FunctionElement::constant(Rat::zero()),
            FunctionElement::constant(Rat::new(1, 2)),
            FunctionElement::pl(pl::negation_pl()),
            FunctionElement::pl(PLMap::constant(Rat::int(-1), Rat::one(), Rat::zero())),
        ];
        let recs = envelope_periodic_scan(&e, &fam, 8, &Budget::default()).unwrap();
        let periods: Vec<_> = recs.iter().map(|r| r.period).collect();
        assert_eq!(periods, vec![Some(1), None, None, Some(1)]);
        assert!(recs.iter().all(|r| r.verified));
    }
}
