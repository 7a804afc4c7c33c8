//! The functional envelope `(S(X), F_f)` with `F_f(g) = f ∘ g`.
//!
//! Elements are constants, piecewise-linear maps, or `f^n ∘ g` kept
//! symbolic when `f` has no piecewise-linear form. Membership in
//! compact-open and point-open sets and the uniform metric are exact.

mod family;
mod obstruction;
mod probe;
mod witness;

pub use family::element_family;
pub use obstruction::{
    envelope_periodic_scan, no_dense_orbit_evidence, replay_obstruction, Argument, ObstructionEvidence, ScanRecord,
};
pub use probe::{envelope_sensitivity_probe, onto_ball_probe, onto_check, OntoProbe, SensitivityEvidence};
pub use witness::{
    base_from_envelope, periodic_witness, point_open_pair, pointwise_lift, transitivity_witness, verify_refutation, EnvelopeWitness,
    PeriodicElement, Search,
};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::catalog::CatalogMap;
use crate::error::{Error, Result};
use crate::interval::IntervalUnion;
use crate::pl::PLMap;
use crate::scalar::Rat;
use crate::space::{PhasePoint, PhaseSpace};
use crate::subbase::SubbasicSet;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum FunctionElement {
    Constant { value: PhasePoint },
    Pl { map: PLMap },
    /// `f^power ∘ base`.
    Composed { base: Box<FunctionElement>, power: u32 },
}

impl FunctionElement {
    pub fn constant(x: Rat) -> FunctionElement {
        FunctionElement::Constant { value: PhasePoint::Real(x) }
    }

    pub fn pl(map: PLMap) -> FunctionElement {
        FunctionElement::Pl { map }
    }

    pub fn is_constant(&self) -> bool {
        match self {
            FunctionElement::Constant { .. } => true,
            FunctionElement::Pl { map } => map.is_constant(),
            FunctionElement::Composed { base, .. } => base.is_constant(),
        }
    }

    pub fn as_constant(&self) -> Option<&PhasePoint> {
        match self {
            FunctionElement::Constant { value } => Some(value),
            _ => None,
        }
    }
}

impl fmt::Display for FunctionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionElement::Constant { value } => write!(f, "const({value})"),
            FunctionElement::Pl { map } => write!(f, "{map}"),
            FunctionElement::Composed { base, power } => write!(f, "f^{power} ∘ {base}"),
        }
    }
}

impl fmt::Debug for FunctionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The element `const_x`; it conjugates `f` to `F_f` isometrically.
pub fn constant_embedding(x: PhasePoint) -> FunctionElement {
    FunctionElement::Constant { value: x }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "tag", content = "points")]
pub enum Topology {
    CompactOpen,
    PointOpen,
    /// Point-open sets based at the listed points only.
    PointOpenOn(Vec<Rat>),
}

impl Topology {
    pub fn admits(&self, set: &SubbasicSet) -> bool {
        match (self, set) {
            (Topology::CompactOpen, SubbasicSet::CoSet { .. } | SubbasicSet::PoSet { .. }) => true,
            (Topology::PointOpen, SubbasicSet::PoSet { .. }) => true,
            (Topology::PointOpenOn(pts), SubbasicSet::PoSet { point, .. }) => pts.contains(point),
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeSystem {
    pub map: CatalogMap,
    pub space: PhaseSpace,
    pub topology: Topology,
}

/// Compact part and open part of a function set.
pub(crate) fn co_parts(set: &SubbasicSet) -> Result<(IntervalUnion, &IntervalUnion)> {
    match set {
        SubbasicSet::CoSet { compact, open } => Ok((compact.clone(), open)),
        SubbasicSet::PoSet { point, open } => Ok((IntervalUnion::point(point.clone()), open)),
        other => Err(Error::Config(format!("{other} is not a set of maps"))),
    }
}

impl EnvelopeSystem {
    pub fn new(map: CatalogMap, topology: Topology) -> Result<EnvelopeSystem> {
        let space = map.space();
        if !matches!(space, PhaseSpace::Interval { .. } | PhaseSpace::RealLine | PhaseSpace::Circle) {
            return Err(Error::Domain(format!("no envelope over {space}")));
        }
        Ok(EnvelopeSystem { map, space, topology })
    }

    pub fn compact_open(map: CatalogMap) -> Result<EnvelopeSystem> {
        EnvelopeSystem::new(map, Topology::CompactOpen)
    }

    /// `[lo, hi]` for interval bases.
    pub fn bounds(&self) -> Result<(Rat, Rat)> {
        match &self.space {
            PhaseSpace::Interval { lo, hi } => Ok((lo.clone(), hi.clone())),
            other => Err(Error::NonCompact(format!(
                "{other} is not a compact interval; use a sampled pseudo-distance instead"
            ))),
        }
    }

    fn check_element(&self, g: &FunctionElement) -> Result<()> {
        match g {
            FunctionElement::Constant { value } if self.space.contains(value) => Ok(()),
            FunctionElement::Constant { value } => Err(Error::Domain(format!("{value} is not in {}", self.space))),
            FunctionElement::Pl { map } => {
                let (lo, hi) = self.bounds()?;
                if map.domain() != (&lo, &hi) {
                    return Err(Error::Domain(format!("{map} is not defined on [{lo}, {hi}]")));
                }
                map.check_codomain(&lo, &hi)
            }
            FunctionElement::Composed { base, .. } => self.check_element(base),
        }
    }

    /// `F_f(g) = f ∘ g`.
    pub fn apply(&self, g: &FunctionElement) -> Result<FunctionElement> {
        self.check_element(g)?;
        Ok(match g {
            FunctionElement::Constant { value } => FunctionElement::Constant { value: self.map.eval(value)? },
            FunctionElement::Pl { map } => match self.map.as_pl() {
                Some(f) => FunctionElement::Pl { map: PLMap::compose(f, map)? },
                None => FunctionElement::Composed { base: Box::new(g.clone()), power: 1 },
            },
            FunctionElement::Composed { base, power } => {
                FunctionElement::Composed { base: base.clone(), power: power + 1 }
            }
        })
    }

    /// `F_f^n(g) = f^n ∘ g`, kept symbolic for non-constant elements.
    pub fn apply_n(&self, g: &FunctionElement, n: u32) -> Result<FunctionElement> {
        self.check_element(g)?;
        if n == 0 {
            return Ok(g.clone());
        }
        Ok(match g {
            FunctionElement::Constant { value } => {
                FunctionElement::Constant { value: self.map.iterate(u64::from(n), value)? }
            }
            FunctionElement::Composed { base, power } => {
                FunctionElement::Composed { base: base.clone(), power: power + n }
            }
            FunctionElement::Pl { .. } => FunctionElement::Composed { base: Box::new(g.clone()), power: n },
        })
    }

    pub fn eval(&self, g: &FunctionElement, x: &PhasePoint) -> Result<PhasePoint> {
        if !self.space.contains(x) {
            return Err(Error::Domain(format!("{x} is not in {}", self.space)));
        }
        match g {
            FunctionElement::Constant { value } => Ok(value.clone()),
            FunctionElement::Pl { map } => Ok(PhasePoint::Real(map.eval(x.expect_real()?)?)),
            FunctionElement::Composed { base, power } => self.map.iterate(u64::from(*power), &self.eval(base, x)?),
        }
    }

    pub fn eval_real(&self, g: &FunctionElement, x: &Rat) -> Result<Rat> {
        Ok(self.eval(g, &PhasePoint::Real(x.clone()))?.expect_real()?.clone())
    }

    /// Exact image `g(K)` on the line, `K` clipped to the base.
    pub fn image(&self, g: &FunctionElement, k: &IntervalUnion) -> Result<IntervalUnion> {
        let carrier = self.space.as_region().unwrap_or_else(IntervalUnion::full);
        let k = k.intersect(&carrier);
        if k.is_empty() {
            return Ok(IntervalUnion::empty());
        }
        match g {
            FunctionElement::Constant { value: PhasePoint::Real(c) } => Ok(IntervalUnion::point(c.clone())),
            FunctionElement::Constant { value } => {
                Err(Error::Domain(format!("{value} has no exact line image; test membership pointwise")))
            }
            FunctionElement::Pl { map } => Ok(map.image(&k)),
            FunctionElement::Composed { base, power } => {
                let mut img = self.image(base, &k)?;
                for _ in 0..*power {
                    img = self.map.image(&img)?;
                }
                Ok(img)
            }
        }
    }

    /// `g` as a single PL graph on the compact base.
    pub fn materialize(&self, g: &FunctionElement, max_pieces: usize) -> Result<PLMap> {
        let (lo, hi) = self.bounds()?;
        match g {
            FunctionElement::Constant { value } => Ok(PLMap::constant(lo, hi, value.expect_real()?.clone())),
            FunctionElement::Pl { map } => Ok(map.clone()),
            FunctionElement::Composed { base, power } => {
                let f = self
                    .map
                    .as_pl()
                    .ok_or_else(|| Error::Domain(format!("{} has no piecewise-linear iterates", self.map)))?;
                let mut acc = self.materialize(base, max_pieces)?;
                for _ in 0..*power {
                    acc = PLMap::compose(f, &acc)?;
                    if acc.pieces() > max_pieces {
                        return Err(Error::Budget(format!("f^{power} ∘ g exceeds {max_pieces} pieces")));
                    }
                }
                Ok(acc)
            }
        }
    }

    /// `sup_x |g(x) − h(x)|`, exact on a compact interval base.
    pub fn uniform_distance(&self, g: &FunctionElement, h: &FunctionElement) -> Result<Rat> {
        if let (Some(a), Some(b)) = (g.as_constant(), h.as_constant()) {
            if let Some(d) = self.space.metric(a, b)?.exact() {
                return Ok(d);
            }
        }
        let cap = crate::budget::Budget::default().max_pieces;
        let (a, b) = (self.materialize(g, cap)?, self.materialize(h, cap)?);
        Ok(a.sup_distance(&b)?.0)
    }

    /// `g ∈ [K, G]` (or `g(x) ∈ G` for point-open sets).
    pub fn co_member(&self, g: &FunctionElement, set: &SubbasicSet) -> Result<bool> {
        if !self.topology.admits(set) {
            return Err(Error::Config(format!("{set} is not a subbasic set of the {:?} topology", self.topology)));
        }
        let (compact, open) = co_parts(set)?;
        if let (Some(PhasePoint::Circle(a)), PhaseSpace::Circle) = (g.as_constant(), &self.space) {
            return Ok(open.contains_by(|e| a.cmp_rat(e)));
        }
        Ok(self.image(g, &compact)?.is_subset(open))
    }

    pub fn co_member_all(&self, g: &FunctionElement, sets: &[SubbasicSet]) -> Result<bool> {
        for s in sets {
            if !self.co_member(g, s)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pl;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    fn tent_env() -> EnvelopeSystem {
        EnvelopeSystem::compact_open(CatalogMap::tent()).unwrap()
    }

    #[test]
    fn apply_examples() {
        let e = tent_env();
        let c = e.apply(&FunctionElement::constant(r(1, 4))).unwrap();
        assert_eq!(c, FunctionElement::constant(r(1, 2)));
        let id = FunctionElement::pl(pl::unit_identity());
        assert_eq!(e.apply(&id).unwrap(), FunctionElement::pl(pl::tent()));
        let t2 = e.apply(&FunctionElement::pl(pl::tent())).unwrap();
        assert_eq!(e.eval_real(&t2, &r(1, 5)).unwrap(), r(4, 5));
    }

    #[test]
    fn composed_normalizes() {
        let e = EnvelopeSystem::compact_open(CatalogMap::Contraction).unwrap();
        let g = FunctionElement::pl(pl::negation_pl());
        let once = e.apply(&g).unwrap();
        let twice = e.apply(&once).unwrap();
        assert_eq!(twice, FunctionElement::Composed { base: Box::new(g.clone()), power: 2 });
        assert_eq!(e.eval_real(&twice, &r(-1, 1)).unwrap(), r(1, 3));
        assert_eq!(e.image(&twice, &IntervalUnion::closed(r(-1, 1), r(1, 1))).unwrap().to_string(), "[-1/3, 1/3]");
    }

    #[test]
    fn uniform_distance_examples() {
        let e = tent_env();
        let zero = FunctionElement::constant(Rat::zero());
        let one = FunctionElement::constant(Rat::one());
        assert_eq!(e.uniform_distance(&zero, &one).unwrap(), Rat::one());
        let id = FunctionElement::pl(pl::unit_identity());
        let t = FunctionElement::pl(pl::tent());
        assert_eq!(e.uniform_distance(&id, &t).unwrap(), Rat::one());
        assert_eq!(e.uniform_distance(&t, &t).unwrap(), Rat::zero());
        let line = EnvelopeSystem::compact_open(CatalogMap::Negation).unwrap();
        assert!(matches!(line.uniform_distance(&id, &t), Err(Error::NonCompact(_))));
    }

    #[test]
    fn membership_examples() {
        let e = tent_env();
        let id = FunctionElement::pl(pl::unit_identity());
        let a = SubbasicSet::co_set(IntervalUnion::closed(r(0, 1), r(1, 2)), IntervalUnion::open(r(0, 1), r(1, 4)));
        let b = SubbasicSet::co_set(IntervalUnion::point(Rat::one()), IntervalUnion::open(r(2, 3), r(3, 4)));
        assert!(!e.co_member(&id, &a).unwrap());
        assert!(!e.co_member(&id, &b).unwrap());
        assert!(e.co_member(&FunctionElement::constant(r(1, 8)), &a).unwrap());
        let po = EnvelopeSystem::new(CatalogMap::tent(), Topology::PointOpen).unwrap();
        assert!(po.co_member(&id, &a).is_err());
    }
}
