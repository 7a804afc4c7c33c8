//! The catalog of transition maps and their exact iteration.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::{Bound, Interval, IntervalUnion};
use crate::pl::{self, PLMap};
use crate::scalar::{Golden, Rat};
use crate::space::{ConePoint, PhasePoint, PhaseSpace};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Angle {
    Rational(Rat),
    /// The golden angle `φ = (√5 − 1)/2`; `kφ` is never an integer.
    Golden,
}

impl Angle {
    fn as_golden(&self) -> Golden {
        match self {
            Angle::Rational(a) => Golden::rational(a.clone()),
            Angle::Golden => Golden::phi(),
        }
    }

    fn times(&self, k: u64) -> Golden {
        let k = Rat::int(k as i64);
        match self {
            Angle::Rational(a) => Golden::rational(a * &k),
            Angle::Golden => Golden::new(Rat::zero(), k),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "tag", content = "param")]
pub enum CatalogMap {
    /// `x ↦ −x` on the line.
    Negation,
    /// `x ↦ |x|` on the line.
    AbsoluteValue,
    /// `x ↦ x/(|x| + 1)` on `[−1, 1]`.
    Contraction,
    Rotation(Angle),
    Shift,
    /// Rotate the double cone by `p/q` turns and negate the altitude.
    Glissorotation { p: u32, q: u32 },
    Pl(PLMap),
}

/// `[p, f(p), …, f^n(p)]` with the first exact repetition, if any.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Orbit {
    pub points: Vec<PhasePoint>,
    /// `(index of first visit, period)` of the cycle reached.
    pub cycle: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicRecord {
    pub point: PhasePoint,
    pub period: u32,
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn monotone_image(region: &IntervalUnion, f: impl Fn(&Rat) -> Rat, increasing: bool) -> IntervalUnion {
    let map = |b: &Bound| match b.value() {
        Some(v) => b.with_value(f(v)),
        None => Bound::Unbounded,
    };
    IntervalUnion::from_parts(region.parts().iter().filter_map(|p| {
        if increasing {
            Interval::new(map(p.lo()), map(p.hi()))
        } else {
            Interval::new(map(p.hi()), map(p.lo()))
        }
    }))
}

fn contract(x: &Rat, k: u64) -> Rat {
    x / &(Rat::int(k as i64) * x.abs() + Rat::one())
}

impl CatalogMap {
    pub fn tent() -> CatalogMap {
        CatalogMap::Pl(pl::tent())
    }

    pub fn golden_rotation() -> CatalogMap {
        CatalogMap::Rotation(Angle::Golden)
    }

    pub fn glissorotation(p: u32, q: u32) -> Result<CatalogMap> {
        if q == 0 || gcd(p, q) != 1 {
            return Err(Error::Config(format!("glissorotation needs coprime p/q, got {p}/{q}")));
        }
        Ok(CatalogMap::Glissorotation { p, q })
    }

    /// Looks up a map by its command-line name.
    pub fn named(name: &str) -> Result<CatalogMap> {
        let (head, arg) = name.split_once(':').unwrap_or((name, ""));
        Ok(match head {
            "negation" => CatalogMap::Negation,
            "absolute_value" | "abs" => CatalogMap::AbsoluteValue,
            "contraction" => CatalogMap::Contraction,
            "golden_rotation" => CatalogMap::golden_rotation(),
            "rotation" => CatalogMap::Rotation(Angle::Rational(arg.parse()?)),
            "shift" => CatalogMap::Shift,
            "glissorotation" => {
                let (p, q) = arg
                    .split_once('/')
                    .ok_or_else(|| Error::Config(format!("expected glissorotation:p/q, got {name}")))?;
                let parse = |s: &str| s.parse::<u32>().map_err(|e| Error::Config(e.to_string()));
                CatalogMap::glissorotation(parse(p)?, parse(q)?)?
            }
            "tent" => CatalogMap::tent(),
            "truncated_tent" => CatalogMap::Pl(pl::truncated_tent()),
            "reflected_truncated_tent" => CatalogMap::Pl(pl::reflected_truncated_tent()),
            "identity" => CatalogMap::Pl(pl::unit_identity()),
            _ => return Err(Error::Config(format!("unknown system {name:?}"))),
        })
    }

    pub fn space(&self) -> PhaseSpace {
        match self {
            CatalogMap::Negation | CatalogMap::AbsoluteValue => PhaseSpace::RealLine,
            CatalogMap::Contraction => PhaseSpace::symmetric_interval(),
            CatalogMap::Rotation(_) => PhaseSpace::Circle,
            CatalogMap::Shift => PhaseSpace::ShiftSubsystem,
            CatalogMap::Glissorotation { .. } => PhaseSpace::DoubleCone,
            CatalogMap::Pl(m) => {
                let (lo, hi) = m.domain();
                PhaseSpace::Interval { lo: lo.clone(), hi: hi.clone() }
            }
        }
    }

    /// Maps whose phase space is a subset of the line.
    pub fn is_line(&self) -> bool {
        matches!(self, CatalogMap::Negation | CatalogMap::AbsoluteValue | CatalogMap::Contraction | CatalogMap::Pl(_))
    }

    pub fn as_pl(&self) -> Option<&PLMap> {
        match self {
            CatalogMap::Pl(m) => Some(m),
            _ => None,
        }
    }

    /// Maps preserving the metric of their space.
    pub fn is_isometry(&self) -> bool {
        matches!(self, CatalogMap::Negation | CatalogMap::Rotation(_) | CatalogMap::Glissorotation { .. })
    }

    pub fn eval(&self, p: &PhasePoint) -> Result<PhasePoint> {
        self.iterate(1, p)
    }

    /// `f^k(p)`, by closed form where one exists.
    pub fn iterate(&self, k: u64, p: &PhasePoint) -> Result<PhasePoint> {
        if !self.space().contains(p) {
            return Err(Error::Domain(format!("{p} is not in the domain {}", self.space())));
        }
        Ok(match (self, p) {
            (_, PhasePoint::Real(x)) => PhasePoint::Real(self.iterate_real(k, x)?),
            (CatalogMap::Rotation(a), PhasePoint::Circle(t)) => PhasePoint::Circle((t.clone() + a.times(k)).frac()),
            (CatalogMap::Shift, PhasePoint::Sequence(s)) => PhasePoint::Sequence(s.shift_by(k)),
            (CatalogMap::Glissorotation { p, q }, PhasePoint::Cone(c)) => {
                let theta = c.theta() + &(Rat::new(*p as i64, *q as i64) * Rat::int(k as i64));
                let t = if k.is_multiple_of(2) { c.altitude().clone() } else { -c.altitude() };
                PhasePoint::Cone(ConePoint::new(theta, t)?)
            }
            _ => unreachable!("membership checked above"),
        })
    }

    pub fn eval_real(&self, x: &Rat) -> Result<Rat> {
        self.iterate_real(1, x)
    }

    pub fn iterate_real(&self, k: u64, x: &Rat) -> Result<Rat> {
        match self {
            CatalogMap::Negation => Ok(if k.is_multiple_of(2) { x.clone() } else { -x }),
            CatalogMap::AbsoluteValue => Ok(if k == 0 { x.clone() } else { x.abs() }),
            CatalogMap::Contraction => {
                if x.abs() > Rat::one() {
                    return Err(Error::Domain(format!("{x} outside [-1, 1]")));
                }
                Ok(contract(x, k))
            }
            CatalogMap::Pl(m) => {
                let mut y = x.clone();
                for _ in 0..k {
                    y = m.eval(&y)?;
                }
                Ok(y)
            }
            _ => Err(Error::Domain(format!("{} is not a map of the line", self.tag()))),
        }
    }

    /// The phase space as a line region, for line maps.
    pub fn domain_region(&self) -> Option<IntervalUnion> {
        self.is_line().then(|| self.space().as_region()).flatten()
    }

    /// Exact image of a line region (clipped to the domain).
    pub fn image(&self, region: &IntervalUnion) -> Result<IntervalUnion> {
        let dom = self
            .domain_region()
            .ok_or_else(|| Error::Domain(format!("{} has no exact interval images", self.tag())))?;
        let region = region.intersect(&dom);
        Ok(match self {
            CatalogMap::Negation => monotone_image(&region, |x| -x, false),
            CatalogMap::AbsoluteValue => {
                let pos = region.intersect(&"[0, +inf)".parse().expect("literal"));
                let neg = region.intersect(&"(-inf, 0]".parse().expect("literal"));
                pos.union(&monotone_image(&neg, |x| -x, false))
            }
            CatalogMap::Contraction => monotone_image(&region, |x| contract(x, 1), true),
            CatalogMap::Pl(m) => m.image(&region),
            _ => unreachable!("line maps only"),
        })
    }

    /// Some point of `within` sent to `y` by one step, if any.
    pub fn preimage_in(&self, y: &Rat, within: &IntervalUnion) -> Option<Rat> {
        let candidates: Vec<Rat> = match self {
            CatalogMap::Negation => vec![-y],
            CatalogMap::AbsoluteValue if !y.is_negative() => vec![y.clone(), -y],
            CatalogMap::AbsoluteValue => vec![],
            CatalogMap::Contraction if y.abs() < Rat::one() => {
                let x = y / &(Rat::one() - y.abs());
                if x.abs() <= Rat::one() { vec![x] } else { vec![] }
            }
            CatalogMap::Contraction => vec![],
            CatalogMap::Pl(m) => return m.preimage_in(y, within),
            _ => vec![],
        };
        candidates.into_iter().find(|x| within.contains(x))
    }

    /// `f^k` as a PL graph, for PL maps.
    pub fn pl_power(&self, k: u32, max_pieces: usize) -> Result<PLMap> {
        match self {
            CatalogMap::Pl(m) => m.power(k, max_pieces),
            _ => Err(Error::Domain(format!("{} has no piecewise-linear iterates", self.tag()))),
        }
    }

    /// Exact fixed-point set of `f^k` for line maps whose iterates are not PL.
    pub fn closed_form_fixed_set(&self, k: u32) -> Option<IntervalUnion> {
        match self {
            CatalogMap::Negation if k.is_multiple_of(2) => Some(IntervalUnion::full()),
            CatalogMap::Negation => Some(IntervalUnion::point(Rat::zero())),
            CatalogMap::AbsoluteValue => Some("[0, +inf)".parse().expect("literal")),
            // x/(k|x|+1) = x forces x = 0
            CatalogMap::Contraction => Some(IntervalUnion::point(Rat::zero())),
            _ => None,
        }
    }

    /// Least period of `p` up to `p_max`.
    pub fn least_period(&self, p: &PhasePoint, p_max: u32) -> Result<Option<u32>> {
        let mut y = p.clone();
        for k in 1..=p_max {
            y = self.eval(&y)?;
            if &y == p {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }

    pub fn orbit(&self, p: &PhasePoint, n: usize) -> Result<Orbit> {
        let mut points = vec![p.clone()];
        let mut seen: HashMap<PhasePoint, usize> = HashMap::from([(p.clone(), 0)]);
        let mut cycle = None;
        for i in 1..=n {
            let next = self.eval(&points[i - 1])?;
            if cycle.is_none() {
                if let Some(&j) = seen.get(&next) {
                    cycle = Some((j, i - j));
                } else {
                    seen.insert(next.clone(), i);
                }
            }
            points.push(next);
        }
        Ok(Orbit { points, cycle })
    }

    pub fn tag(&self) -> String {
        match self {
            CatalogMap::Negation => "negation".into(),
            CatalogMap::AbsoluteValue => "absolute_value".into(),
            CatalogMap::Contraction => "contraction".into(),
            CatalogMap::Rotation(Angle::Golden) => "golden_rotation".into(),
            CatalogMap::Rotation(Angle::Rational(a)) => format!("rotation:{a}"),
            CatalogMap::Shift => "shift".into(),
            CatalogMap::Glissorotation { p, q } => format!("glissorotation:{p}/{q}"),
            CatalogMap::Pl(m) if m == &pl::tent() => "tent".into(),
            CatalogMap::Pl(m) if m == &pl::truncated_tent() => "truncated_tent".into(),
            CatalogMap::Pl(m) if m == &pl::reflected_truncated_tent() => "reflected_truncated_tent".into(),
            CatalogMap::Pl(m) if m == &pl::unit_identity() => "identity".into(),
            CatalogMap::Pl(m) => format!("pl{m}"),
        }
    }

    pub fn rotation_angle(&self) -> Option<Golden> {
        match self {
            CatalogMap::Rotation(a) => Some(a.as_golden()),
            _ => None,
        }
    }
}

impl fmt::Display for CatalogMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

impl fmt::Debug for CatalogMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::BinarySeq;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    fn real(n: i64, d: i64) -> PhasePoint {
        PhasePoint::real(n, d)
    }

    #[test]
    fn closed_form_iterates() {
        let c = CatalogMap::Contraction;
        for k in 1..=16u64 {
            for y in [r(1, 3), r(-1, 1), r(7, 9), r(0, 1)] {
                let expected = &y / &(Rat::int(k as i64) * y.abs() + Rat::one());
                assert_eq!(c.iterate_real(k, &y).unwrap(), expected);
                let mut z = y.clone();
                for _ in 0..k {
                    z = c.eval_real(&z).unwrap();
                }
                assert_eq!(z, expected);
            }
        }
        assert_eq!(CatalogMap::Negation.iterate(2, &real(5, 7)).unwrap(), real(5, 7));
        assert_eq!(CatalogMap::tent().iterate(2, &real(1, 5)).unwrap(), real(4, 5));
    }

    #[test]
    fn orbits_report_cycles() {
        let o = CatalogMap::tent().orbit(&real(1, 3), 3).unwrap();
        assert_eq!(o.points, vec![real(1, 3), real(2, 3), real(2, 3), real(2, 3)]);
        assert_eq!(o.cycle, Some((1, 1)));
        let o = CatalogMap::Negation.orbit(&real(5, 1), 2).unwrap();
        assert_eq!(o.points, vec![real(5, 1), real(-5, 1), real(5, 1)]);
        assert_eq!(o.cycle, Some((0, 2)));
        let f = CatalogMap::named("reflected_truncated_tent").unwrap();
        assert_eq!(f.orbit(&real(0, 1), 2).unwrap().points, vec![real(0, 1), real(1, 1), real(1, 1)]);
    }

    #[test]
    fn line_images() {
        let neg = CatalogMap::Negation;
        assert_eq!(neg.image(&"(-inf, 3/2)".parse().unwrap()).unwrap().to_string(), "(-3/2, +inf)");
        let abs = CatalogMap::AbsoluteValue;
        assert_eq!(abs.image(&IntervalUnion::full()).unwrap().to_string(), "[0, +inf)");
        assert_eq!(abs.image(&"(-inf, -1)".parse().unwrap()).unwrap().to_string(), "(1, +inf)");
        let c = CatalogMap::Contraction;
        assert_eq!(c.image(&IntervalUnion::full()).unwrap().to_string(), "[-1/2, 1/2]");
        assert_eq!(c.preimage_in(&r(1, 3), &IntervalUnion::full()), Some(r(1, 2)));
    }

    #[test]
    fn gliss_points_have_period_dividing_2q() {
        let g = CatalogMap::glissorotation(2, 5).unwrap();
        let p = PhasePoint::Cone(ConePoint::new(r(1, 7), r(1, 3)).unwrap());
        assert_eq!(g.iterate(10, &p).unwrap(), p);
        assert_eq!(g.least_period(&p, 16).unwrap(), Some(10));
        let equator = PhasePoint::Cone(ConePoint::new(r(0, 1), r(0, 1)).unwrap());
        assert_eq!(g.least_period(&equator, 16).unwrap(), Some(5));
        let vertex = PhasePoint::Cone(ConePoint::new(r(0, 1), r(1, 1)).unwrap());
        assert_eq!(g.least_period(&vertex, 16).unwrap(), Some(2));
        assert!(CatalogMap::glissorotation(2, 4).is_err());
    }

    #[test]
    fn golden_rotation_has_no_short_periods() {
        let f = CatalogMap::golden_rotation();
        let p = PhasePoint::Circle(Golden::rational(r(1, 3)));
        assert_eq!(f.least_period(&p, 64).unwrap(), None);
    }

    #[test]
    fn shift_iterates() {
        let s = PhasePoint::Sequence(BinarySeq::stream(0));
        assert_eq!(CatalogMap::Shift.iterate(4, &s).unwrap(), PhasePoint::Sequence(BinarySeq::stream(4)));
        let outside = PhasePoint::Sequence(BinarySeq::parse("1|s0").unwrap());
        assert!(CatalogMap::Shift.eval(&outside).is_err());
    }
}
