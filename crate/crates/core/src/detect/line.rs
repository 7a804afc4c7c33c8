//! Exact image chains, pullbacks and fixed sets for maps of the line.

use std::sync::OnceLock;

use crate::budget::Budget;
use crate::catalog::CatalogMap;
use crate::error::{Error, Result};
use crate::interval::IntervalUnion;
use crate::scalar::Rat;
use crate::space::PhaseSpace;
use crate::verdict::{Avoidance, Coordinate};

pub(crate) struct LineSystem<'a> {
    pub map: &'a CatalogMap,
    pub space: PhaseSpace,
    pub domain: IntervalUnion,
    budget: &'a Budget,
    fixed: Vec<OnceLock<Result<IntervalUnion>>>,
    ranges: OnceLock<Vec<IntervalUnion>>,
}

impl<'a> LineSystem<'a> {
    pub fn new(map: &'a CatalogMap, budget: &'a Budget) -> Result<LineSystem<'a>> {
        let domain = map
            .domain_region()
            .ok_or_else(|| Error::Domain(format!("{map} is not a map of the line")))?;
        Ok(LineSystem {
            map,
            space: map.space(),
            domain,
            budget,
            fixed: (0..budget.p_max).map(|_| OnceLock::new()).collect(),
            ranges: OnceLock::new(),
        })
    }

    pub fn k_max(&self) -> u32 {
        self.budget.k_max
    }

    pub fn image(&self, region: &IntervalUnion) -> IntervalUnion {
        self.map.image(region).expect("line map")
    }

    /// `[U, f(U), …, f^k(U)]`, stopping early once an image is contained in
    /// an earlier one (the chain then cycles inside their union).
    pub fn chain(&self, start: &IntervalUnion, k: u32) -> (Vec<IntervalUnion>, Option<usize>) {
        let mut out = vec![start.intersect(&self.domain)];
        for _ in 0..k {
            let next = self.image(out.last().unwrap());
            let back = out[1..].iter().position(|prev| next.is_subset(prev)).map(|j| j + 1);
            out.push(next);
            if back.is_some() {
                return (out, back);
            }
        }
        (out, None)
    }

    /// Pulls `y ∈ chain[j]` back to a point of `chain[0]`.
    pub fn pullback(&self, chain: &[IntervalUnion], j: usize, y: Rat) -> Result<Rat> {
        let mut y = y;
        for i in (0..j).rev() {
            y = self
                .map
                .preimage_in(&y, &chain[i])
                .ok_or_else(|| Error::Verification(format!("{y} has no preimage in step {i} of the chain")))?;
        }
        Ok(y)
    }

    /// `[f(X), f²(X), …]` until the ranges stabilize or `k_max` is reached.
    pub fn ranges(&self) -> &[IntervalUnion] {
        self.ranges.get_or_init(|| {
            let mut out = vec![self.image(&self.domain)];
            while out.len() < self.budget.k_max as usize {
                let next = self.image(out.last().unwrap());
                if &next == out.last().unwrap() {
                    break;
                }
                out.push(next);
            }
            out
        })
    }

    /// `Fix(f^k)` within the domain.
    pub fn fixed_set(&self, k: u32) -> Result<IntervalUnion> {
        let slot = self
            .fixed
            .get(k as usize - 1)
            .ok_or_else(|| Error::Budget(format!("period {k} exceeds p_max")))?;
        slot.get_or_init(|| match self.map.closed_form_fixed_set(k) {
            Some(f) => Ok(f.intersect(&self.domain)),
            None => Ok(self.map.pl_power(k, self.budget.max_pieces)?.fixed_set()),
        })
        .clone()
    }

    /// Union of `Fix(f^k)` for `k <= p_max`, stopping at the first budget
    /// failure; returns the exponent actually reached.
    pub fn periodic_hull(&self) -> (IntervalUnion, u32) {
        let mut acc = IntervalUnion::empty();
        for k in 1..=self.budget.p_max {
            match self.fixed_set(k) {
                Ok(f) => acc = acc.union(&f),
                Err(_) => return (acc, k - 1),
            }
        }
        (acc, self.budget.p_max)
    }

    /// A point of `region` with least period `<= p_max`.
    pub fn periodic_in(&self, region: &IntervalUnion) -> Result<Option<(Rat, u32)>> {
        for k in 1..=self.budget.p_max {
            let hit = self.fixed_set(k)?.intersect(region);
            if let Some(x) = hit.representative() {
                let period = (1..=k)
                    .find(|d| k % d == 0 && self.fixed_set(*d).map(|f| f.contains(&x)).unwrap_or(false))
                    .unwrap_or(k);
                return Ok(Some((x, period)));
            }
        }
        Ok(None)
    }

    /// An invariant region that the orbit of `set` enters and that misses
    /// `avoid`, from the range iterates or the image chain of `set`.
    pub fn avoidance(&self, set: &IntervalUnion, avoid: &IntervalUnion) -> Option<Avoidance> {
        for (m, r) in self.ranges().iter().enumerate() {
            if !r.meets(avoid) {
                return Some(Avoidance { coordinate: Coordinate::Value, region: r.clone(), entry: m as u32 + 1 });
            }
        }
        let (chain, back) = self.chain(set, self.budget.k_max);
        let j = back?;
        let k = chain.len() - 1;
        let region = chain[j..k].iter().fold(IntervalUnion::empty(), |acc, c| acc.union(c));
        (!region.meets(avoid)).then_some(Avoidance { coordinate: Coordinate::Value, region, entry: j as u32 })
    }
}

/// Checks `f(J) ⊆ J` and `f^entry(set) ⊆ J` exactly.
pub(crate) fn check_avoidance(map: &CatalogMap, a: &Avoidance, set: &IntervalUnion) -> Result<()> {
    if a.coordinate != Coordinate::Value {
        return Err(Error::Verification("not a line region".into()));
    }
    if !map.image(&a.region)?.is_subset(&a.region) {
        return Err(Error::Verification(format!("{} is not forward invariant", a.region)));
    }
    let mut img = set.clone();
    for _ in 0..a.entry {
        img = map.image(&img)?;
    }
    if !img.is_subset(&a.region) {
        return Err(Error::Verification(format!("orbit of {set} does not enter {} after {} steps", a.region, a.entry)));
    }
    Ok(())
}
