//! Phase spaces, their points, and metrics.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::IntervalUnion;
use crate::scalar::{Golden, Rat};
use crate::sequence::BinarySeq;

/// A point of the double cone, by angle `θ ∈ [0, 1)` and altitude
/// `t ∈ [−1, 1]`; the radius is `1 − |t|`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConePoint {
    theta: Rat,
    t: Rat,
}

impl ConePoint {
    pub fn new(theta: Rat, t: Rat) -> Result<ConePoint> {
        if t.abs() > Rat::one() {
            return Err(Error::Domain(format!("altitude {t} outside [-1, 1]")));
        }
        let theta = if t.abs() == Rat::one() { Rat::zero() } else { theta.frac() };
        Ok(ConePoint { theta, t })
    }

    pub fn theta(&self) -> &Rat {
        &self.theta
    }

    pub fn altitude(&self) -> &Rat {
        &self.t
    }

    pub fn radius(&self) -> Rat {
        Rat::one() - self.t.abs()
    }

    pub fn is_vertex(&self) -> bool {
        self.t.abs() == Rat::one()
    }

    pub fn embed(&self) -> [f64; 3] {
        let r = self.radius().to_f64();
        let a = std::f64::consts::TAU * self.theta.to_f64();
        [r * a.cos(), r * a.sin(), self.t.to_f64()]
    }
}

impl fmt::Display for ConePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(θ={}, t={})", self.theta, self.t)
    }
}

impl fmt::Debug for ConePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum PhasePoint {
    Real(Rat),
    /// Angle in `[0, 1)`, in turns.
    Circle(Golden),
    Sequence(BinarySeq),
    Cone(ConePoint),
}

impl PhasePoint {
    pub fn real(n: i64, d: i64) -> PhasePoint {
        PhasePoint::Real(Rat::new(n, d))
    }

    pub fn as_real(&self) -> Option<&Rat> {
        match self {
            PhasePoint::Real(x) => Some(x),
            _ => None,
        }
    }

    pub fn expect_real(&self) -> Result<&Rat> {
        self.as_real().ok_or_else(|| Error::Domain(format!("{self} is not a real point")))
    }
}

impl fmt::Display for PhasePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PhasePoint::Real(x) => write!(f, "{x}"),
            PhasePoint::Circle(a) => write!(f, "∠{a}"),
            PhasePoint::Sequence(s) => write!(f, "{s}"),
            PhasePoint::Cone(c) => write!(f, "{c}"),
        }
    }
}

impl fmt::Debug for PhasePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<Rat> for PhasePoint {
    fn from(x: Rat) -> PhasePoint {
        PhasePoint::Real(x)
    }
}

/// A distance value: exact when the space allows it.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum Distance {
    Exact(Rat),
    Approx(f64),
}

impl Distance {
    pub fn to_f64(&self) -> f64 {
        match self {
            Distance::Exact(r) => r.to_f64(),
            Distance::Approx(x) => *x,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Distance::Exact(_))
    }

    pub fn exact(&self) -> Option<Rat> {
        match self {
            Distance::Exact(r) => Some(r.clone()),
            Distance::Approx(_) => None,
        }
    }

    /// `self >= delta`; approximate values need a margin of `1e-9`.
    pub fn at_least(&self, delta: &Rat) -> bool {
        match self {
            Distance::Exact(r) => r >= delta,
            Distance::Approx(x) => *x >= delta.to_f64() + 1e-9,
        }
    }

    /// `self < delta`; approximate values need a margin of `1e-9`.
    pub fn below(&self, delta: &Rat) -> bool {
        match self {
            Distance::Exact(r) => r < delta,
            Distance::Approx(x) => *x + 1e-9 < delta.to_f64(),
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Exact(r) => write!(f, "{r}"),
            Distance::Approx(x) => write!(f, "~{x:.12}"),
        }
    }
}

impl fmt::Debug for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum PhaseSpace {
    Interval { lo: Rat, hi: Rat },
    RealLine,
    Circle,
    CantorSequences,
    /// Eventually constant sequences together with the shift orbit of `s*`.
    ShiftSubsystem,
    DoubleCone,
}

impl PhaseSpace {
    pub fn unit_interval() -> PhaseSpace {
        PhaseSpace::Interval { lo: Rat::zero(), hi: Rat::one() }
    }

    pub fn symmetric_interval() -> PhaseSpace {
        PhaseSpace::Interval { lo: Rat::int(-1), hi: Rat::one() }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            PhaseSpace::Interval { .. } => "interval",
            PhaseSpace::RealLine => "real_line",
            PhaseSpace::Circle => "circle",
            PhaseSpace::CantorSequences => "cantor",
            PhaseSpace::ShiftSubsystem => "shift_subsystem",
            PhaseSpace::DoubleCone => "double_cone",
        }
    }

    /// The space as a subset of the line (circle: the angle range `[0, 1)`).
    pub fn as_region(&self) -> Option<IntervalUnion> {
        match self {
            PhaseSpace::Interval { lo, hi } => Some(IntervalUnion::closed(lo.clone(), hi.clone())),
            PhaseSpace::RealLine => Some(IntervalUnion::full()),
            PhaseSpace::Circle => Some("[0, 1)".parse().expect("literal")),
            _ => None,
        }
    }

    pub fn is_compact_interval(&self) -> bool {
        matches!(self, PhaseSpace::Interval { .. })
    }

    pub fn contains(&self, p: &PhasePoint) -> bool {
        match (self, p) {
            (PhaseSpace::Interval { lo, hi }, PhasePoint::Real(x)) => lo <= x && x <= hi,
            (PhaseSpace::RealLine, PhasePoint::Real(_)) => true,
            (PhaseSpace::Circle, PhasePoint::Circle(a)) => {
                a.signum() != std::cmp::Ordering::Less && a.cmp_rat(&Rat::one()) == std::cmp::Ordering::Less
            }
            (PhaseSpace::CantorSequences, PhasePoint::Sequence(_)) => true,
            (PhaseSpace::ShiftSubsystem, PhasePoint::Sequence(s)) => s.in_subsystem(),
            (PhaseSpace::DoubleCone, PhasePoint::Cone(_)) => true,
            _ => false,
        }
    }

    pub fn metric(&self, p: &PhasePoint, q: &PhasePoint) -> Result<Distance> {
        self.metric_with(p, q, 1 << 16)
    }

    pub fn metric_with(&self, p: &PhasePoint, q: &PhasePoint, lookahead: u64) -> Result<Distance> {
        if !self.contains(p) || !self.contains(q) {
            return Err(Error::Domain(format!("{p} or {q} is not a point of {}", self.tag())));
        }
        Ok(match (p, q) {
            (PhasePoint::Real(x), PhasePoint::Real(y)) => Distance::Exact((x - y).abs()),
            (PhasePoint::Circle(a), PhasePoint::Circle(b)) => {
                let d = (a.clone() - b.clone()).frac();
                let other = Golden::rational(Rat::one()) - d.clone();
                let arc = d.min(other);
                match arc.as_rational() {
                    Some(r) => Distance::Exact(r.clone()),
                    None => Distance::Approx(arc.to_f64()),
                }
            }
            (PhasePoint::Sequence(s), PhasePoint::Sequence(t)) => match s.first_difference(t, lookahead)? {
                None => Distance::Exact(Rat::zero()),
                Some(n) => Distance::Exact(Rat::dyadic(n as u32)),
            },
            (PhasePoint::Cone(a), PhasePoint::Cone(b)) => {
                if a == b {
                    Distance::Exact(Rat::zero())
                } else {
                    cone_distance(a, b)
                }
            }
            _ => unreachable!("membership checked above"),
        })
    }
}

fn cone_distance(a: &ConePoint, b: &ConePoint) -> Distance {
    let (u, v) = (a.embed(), b.embed());
    let d2: f64 = u.iter().zip(v.iter()).map(|(x, y)| (x - y) * (x - y)).sum();
    Distance::Approx(d2.sqrt())
}

impl fmt::Display for PhaseSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PhaseSpace::Interval { lo, hi } => write!(f, "[{lo}, {hi}]"),
            other => f.write_str(other.tag()),
        }
    }
}

impl fmt::Debug for PhaseSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    #[test]
    fn metric_examples() {
        let cantor = PhaseSpace::CantorSequences;
        let zero = PhasePoint::Sequence(BinarySeq::constant(false));
        let one = PhasePoint::Sequence(BinarySeq::parse("1|0").unwrap());
        assert_eq!(cantor.metric(&zero, &one).unwrap(), Distance::Exact(r(1, 1)));

        let c = PhaseSpace::Circle;
        let a = PhasePoint::Circle(Golden::rational(r(1, 10)));
        let b = PhasePoint::Circle(Golden::rational(r(9, 10)));
        assert_eq!(c.metric(&a, &b).unwrap(), Distance::Exact(r(1, 5)));

        let i = PhaseSpace::unit_interval();
        assert_eq!(i.metric(&PhasePoint::real(1, 4), &PhasePoint::real(3, 4)).unwrap(), Distance::Exact(r(1, 2)));
        assert!(i.metric(&PhasePoint::real(2, 1), &PhasePoint::real(0, 1)).is_err());
    }

    #[test]
    fn cone_vertices_and_embedding() {
        let v = ConePoint::new(r(1, 3), r(1, 1)).unwrap();
        assert_eq!(v.theta(), &Rat::zero());
        let e = ConePoint::new(r(1, 4), r(0, 1)).unwrap().embed();
        assert!(e[0].abs() < 1e-12 && (e[1] - 1.0).abs() < 1e-12);
        let d = PhaseSpace::DoubleCone
            .metric(&PhasePoint::Cone(v), &PhasePoint::Cone(ConePoint::new(r(0, 1), r(-1, 1)).unwrap()))
            .unwrap();
        assert!((d.to_f64() - 2.0).abs() < 1e-12);
        assert!(ConePoint::new(r(0, 1), r(3, 2)).is_err());
    }

    #[test]
    fn golden_arc_distance_is_approximate() {
        let c = PhaseSpace::Circle;
        let d = c
            .metric(&PhasePoint::Circle(Golden::phi()), &PhasePoint::Circle(Golden::rational(Rat::zero())))
            .unwrap();
        assert!(!d.is_exact());
        assert!((d.to_f64() - (1.0 - 0.6180339887498949)).abs() < 1e-12);
    }
}
