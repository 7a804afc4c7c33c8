//! Subbasic open sets, finite families of them, and exact membership.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::{Bound, Interval, IntervalUnion};
use crate::scalar::Rat;
use crate::sequence::{BinarySeq, Tail};
use crate::space::{ConePoint, PhasePoint, PhaseSpace};

/// Margin required before a floating half-space test is trusted.
pub const HALF_SPACE_MARGIN: f64 = 1e-9;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum SubbasicSet {
    /// `(−∞, a)`.
    HalfLineLeft { a: Rat },
    /// `(b, +∞)`.
    HalfLineRight { b: Rat },
    /// `[lo, a)` at the left end of an interval space.
    EndLow { a: Rat },
    /// `(b, hi]` at the right end of an interval space.
    EndHigh { b: Rat },
    /// `(a, b)` relative to the carrier: an endpoint of an interval space
    /// that coincides with `a` or `b` is included.
    OpenInterval { a: Rat, b: Rat },
    /// Sequences with `s[index] = value`.
    Cylinder { index: u64, value: bool },
    /// Sequences starting with the word.
    Word { bits: Vec<bool> },
    /// `{x : normal·x > offset}` in the ambient `ℝ³` of the double cone.
    HalfSpace { normal: [i64; 3], offset: Rat },
    /// Maps `g` with `g(compact) ⊆ open`.
    CoSet { compact: IntervalUnion, open: IntervalUnion },
    /// Maps `g` with `g(point) ∈ open`.
    PoSet { point: Rat, open: IntervalUnion },
}

impl SubbasicSet {
    pub fn half_line_left(a: Rat) -> SubbasicSet {
        SubbasicSet::HalfLineLeft { a }
    }

    pub fn half_line_right(b: Rat) -> SubbasicSet {
        SubbasicSet::HalfLineRight { b }
    }

    pub fn end_low(a: Rat) -> Result<SubbasicSet> {
        if !a.is_positive() || a > Rat::one() {
            return Err(Error::Domain(format!("[0, a) needs 0 < a <= 1, got {a}")));
        }
        Ok(SubbasicSet::EndLow { a })
    }

    pub fn end_high(b: Rat) -> Result<SubbasicSet> {
        if b.is_negative() || b >= Rat::one() {
            return Err(Error::Domain(format!("(b, 1] needs 0 <= b < 1, got {b}")));
        }
        Ok(SubbasicSet::EndHigh { b })
    }

    pub fn open_interval(a: Rat, b: Rat) -> SubbasicSet {
        SubbasicSet::OpenInterval { a, b }
    }

    pub fn word(text: &str) -> SubbasicSet {
        SubbasicSet::Word { bits: text.chars().map(|c| c == '1').collect() }
    }

    pub fn co_set(compact: IntervalUnion, open: IntervalUnion) -> SubbasicSet {
        SubbasicSet::CoSet { compact, open }
    }

    pub fn po_set(point: Rat, open: IntervalUnion) -> SubbasicSet {
        SubbasicSet::PoSet { point, open }
    }

    pub fn is_function_set(&self) -> bool {
        matches!(self, SubbasicSet::CoSet { .. } | SubbasicSet::PoSet { .. })
    }

    /// Exact region on the line (or the angle range of the circle).
    pub fn realize(&self, space: &PhaseSpace) -> Option<IntervalUnion> {
        let carrier = space.as_region()?;
        let ends = match space {
            PhaseSpace::Interval { lo, hi } => Some((lo, hi)),
            _ => None,
        };
        let region = match self {
            SubbasicSet::HalfLineLeft { a } => IntervalUnion::from(Interval::new(Bound::Unbounded, Bound::Open(a.clone()))),
            SubbasicSet::HalfLineRight { b } => IntervalUnion::from(Interval::new(Bound::Open(b.clone()), Bound::Unbounded)),
            SubbasicSet::EndLow { a } => {
                let (lo, _) = ends?;
                IntervalUnion::from(Interval::new(Bound::Closed(lo.clone()), Bound::Open(a.clone())))
            }
            SubbasicSet::EndHigh { b } => {
                let (_, hi) = ends?;
                IntervalUnion::from(Interval::new(Bound::Open(b.clone()), Bound::Closed(hi.clone())))
            }
            SubbasicSet::OpenInterval { a, b } => {
                let lo = match ends {
                    Some((lo, _)) if a <= lo => Bound::Closed(lo.clone()),
                    _ => Bound::Open(a.clone()),
                };
                let hi = match ends {
                    Some((_, hi)) if b >= hi => Bound::Closed(hi.clone()),
                    _ => Bound::Open(b.clone()),
                };
                IntervalUnion::from(Interval::new(lo, hi))
            }
            _ => return None,
        };
        Some(region.intersect(&carrier))
    }

    /// Signed margin `normal·x − offset` of a cone point.
    pub fn half_space_margin(normal: &[i64; 3], offset: &Rat, p: &ConePoint) -> f64 {
        let e = p.embed();
        normal.iter().zip(e.iter()).map(|(&n, &x)| n as f64 * x).sum::<f64>() - offset.to_f64()
    }

    /// Membership of a phase point. Function sets contain no phase points.
    pub fn contains(&self, space: &PhaseSpace, p: &PhasePoint) -> bool {
        if !space.contains(p) {
            return false;
        }
        match (self, p) {
            (SubbasicSet::Cylinder { index, value }, PhasePoint::Sequence(s)) => s.bit(*index) == *value,
            (SubbasicSet::Word { bits }, PhasePoint::Sequence(s)) => s.starts_with(bits),
            (SubbasicSet::HalfSpace { normal, offset }, PhasePoint::Cone(c)) => {
                Self::half_space_margin(normal, offset, c) > 1e-12
            }
            (_, PhasePoint::Real(x)) => self.realize(space).is_some_and(|r| r.contains(x)),
            (_, PhasePoint::Circle(a)) => self.realize(space).is_some_and(|r| r.contains_by(|e| a.cmp_rat(e))),
            _ => false,
        }
    }

    /// Exact intersection test against a line region.
    pub fn meets(&self, space: &PhaseSpace, region: &IntervalUnion) -> Result<bool> {
        let own = self
            .realize(space)
            .ok_or_else(|| Error::Domain(format!("{self} has no exact realization over {space}")))?;
        Ok(own.meets(region))
    }

    /// A finite net for sets without an exact line realization, with the
    /// covering radius: every point of the set lies within `epsilon` of the
    /// net (exact for sequences, grid pitch for the cone).
    pub fn realize_net(&self, space: &PhaseSpace, depth: u32) -> Option<Net> {
        match self {
            SubbasicSet::Cylinder { index, value } => {
                let len = (depth + 1).max(*index as u32 + 1);
                let points = words(len)
                    .filter(|w| w[*index as usize] == *value)
                    .map(|w| PhasePoint::Sequence(BinarySeq::new(w, Tail::Zeros)))
                    .collect();
                Some(Net { points, epsilon: Rat::dyadic(len), exact: true })
            }
            SubbasicSet::Word { bits } => {
                let len = (depth + 1).max(bits.len() as u32);
                let points = words(len)
                    .filter(|w| w.starts_with(bits))
                    .map(|w| PhasePoint::Sequence(BinarySeq::new(w, Tail::Zeros)))
                    .collect();
                Some(Net { points, epsilon: Rat::dyadic(len), exact: true })
            }
            SubbasicSet::HalfSpace { .. } => {
                let n = 1i64 << depth.min(8);
                let points = cone_grid(n)
                    .filter(|p| self.contains(space, p))
                    .collect();
                Some(Net { points, epsilon: Rat::new(1, n), exact: false })
            }
            _ => None,
        }
    }
}

/// A finite sample of a set with its covering radius.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Net {
    pub points: Vec<PhasePoint>,
    pub epsilon: Rat,
    /// Whether the covering radius is proven rather than a grid pitch.
    pub exact: bool,
}

fn words(len: u32) -> impl Iterator<Item = Vec<bool>> {
    (0..(1u64 << len)).map(move |w| (0..len).map(|i| (w >> (len - 1 - i)) & 1 == 1).collect())
}

/// Rational cone points: `θ = j/(4n)`, `t = i/n`.
pub fn cone_grid(n: i64) -> impl Iterator<Item = PhasePoint> {
    (-n..=n).flat_map(move |i| {
        let t = Rat::new(i, n);
        let turns = if i.abs() == n { 1 } else { 4 * n };
        (0..turns).map(move |j| PhasePoint::Cone(ConePoint::new(Rat::new(j, 4 * n), t.clone()).expect("grid point")))
    })
}

impl fmt::Display for SubbasicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubbasicSet::HalfLineLeft { a } => write!(f, "(-inf, {a})"),
            SubbasicSet::HalfLineRight { b } => write!(f, "({b}, +inf)"),
            SubbasicSet::EndLow { a } => write!(f, "[0, {a})"),
            SubbasicSet::EndHigh { b } => write!(f, "({b}, 1]"),
            SubbasicSet::OpenInterval { a, b } => write!(f, "({a}, {b})"),
            SubbasicSet::Cylinder { index, value } => write!(f, "s[{index}]={}", u8::from(*value)),
            SubbasicSet::Word { bits } => {
                f.write_str("[")?;
                for &b in bits {
                    f.write_str(if b { "1" } else { "0" })?;
                }
                f.write_str("]")
            }
            SubbasicSet::HalfSpace { normal: [a, b, c], offset } => write!(f, "{{{a}x + {b}y + {c}z > {offset}}}"),
            SubbasicSet::CoSet { compact, open } => write!(f, "[{compact}, {open}]"),
            SubbasicSet::PoSet { point, open } => write!(f, "[{{{point}}}, {open}]"),
        }
    }
}

impl fmt::Debug for SubbasicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "tag", content = "points")]
pub enum Scheme {
    HalfLines,
    EndpointIntervals,
    BasicIntervals,
    Cylinders,
    BasicCylinders,
    HalfSpaces,
    CompactOpen,
    PointOpen,
    /// Point-open sets `[{x}, G]` with `x` restricted to the listed points.
    PointOpenOn(Vec<Rat>),
}

impl Scheme {
    pub fn tag(&self) -> &'static str {
        match self {
            Scheme::HalfLines => "half_lines",
            Scheme::EndpointIntervals => "endpoint_intervals",
            Scheme::BasicIntervals => "basic_intervals",
            Scheme::Cylinders => "cylinders",
            Scheme::BasicCylinders => "basic_cylinders",
            Scheme::HalfSpaces => "half_spaces",
            Scheme::CompactOpen => "compact_open",
            Scheme::PointOpen => "point_open",
            Scheme::PointOpenOn(_) => "point_open_on",
        }
    }

    /// The scheme of basic open sets used for the unrestricted properties.
    pub fn basic_for(space: &PhaseSpace) -> Scheme {
        match space {
            PhaseSpace::CantorSequences | PhaseSpace::ShiftSubsystem => Scheme::BasicCylinders,
            PhaseSpace::DoubleCone => Scheme::HalfSpaces,
            _ => Scheme::BasicIntervals,
        }
    }

    fn compatible(&self, space: &PhaseSpace) -> bool {
        use PhaseSpace as S;
        match self {
            Scheme::HalfLines => matches!(space, S::RealLine),
            Scheme::EndpointIntervals => matches!(space, S::Interval { .. }),
            Scheme::BasicIntervals => matches!(space, S::Interval { .. } | S::RealLine | S::Circle),
            Scheme::Cylinders | Scheme::BasicCylinders => matches!(space, S::CantorSequences | S::ShiftSubsystem),
            Scheme::HalfSpaces => matches!(space, S::DoubleCone),
            Scheme::CompactOpen | Scheme::PointOpen | Scheme::PointOpenOn(_) => {
                matches!(space, S::Interval { .. } | S::Circle)
            }
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl fmt::Debug for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scheme {
    type Err = Error;
    fn from_str(s: &str) -> Result<Scheme> {
        Ok(match s {
            "half_lines" => Scheme::HalfLines,
            "endpoint_intervals" => Scheme::EndpointIntervals,
            "basic_intervals" => Scheme::BasicIntervals,
            "cylinders" => Scheme::Cylinders,
            "basic_cylinders" => Scheme::BasicCylinders,
            "half_spaces" => Scheme::HalfSpaces,
            "compact_open" => Scheme::CompactOpen,
            "point_open" => Scheme::PointOpen,
            _ => {
                if let Some(list) = s.strip_prefix("point_open_on:") {
                    let pts = list.split(',').map(str::parse).collect::<Result<Vec<Rat>>>()?;
                    return Ok(Scheme::PointOpenOn(pts));
                }
                return Err(Error::Config(format!("unknown scheme {s:?}")));
            }
        })
    }
}

/// A generated set together with a point proving it nonempty. For function
/// sets the witness is the value of a constant map inside the set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Member {
    pub set: SubbasicSet,
    pub witness: PhasePoint,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Family {
    pub space: PhaseSpace,
    pub scheme: Scheme,
    pub resolution: u32,
    pub members: Vec<Member>,
}

impl Family {
    pub fn sets(&self) -> impl Iterator<Item = &SubbasicSet> {
        self.members.iter().map(|m| &m.set)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Whether the member covers the whole space (it can never separate).
    pub fn is_whole_space(&self, set: &SubbasicSet) -> bool {
        match (set.realize(&self.space), self.space.as_region()) {
            (Some(r), Some(all)) => all.is_subset(&r),
            _ => false,
        }
    }
}

fn grid(lo: &Rat, hi: &Rat, r: u32) -> Vec<Rat> {
    let step = (hi - lo) / Rat::int(i64::from(r));
    (0..=r).map(|i| lo + &(&step * Rat::int(i64::from(i)))).collect()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

/// Primitive integer normals with every coordinate in `[−r, r]`, in
/// lexicographic order.
pub fn half_space_normals(r: u32) -> Vec<[i64; 3]> {
    let r = i64::from(r);
    let mut out = Vec::new();
    for a in -r..=r {
        for b in -r..=r {
            for c in -r..=r {
                if (a, b, c) != (0, 0, 0) && gcd(gcd(a, b), c) == 1 {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

/// Finds a rational point of the set, if one exists.
pub fn inhabitant(space: &PhaseSpace, set: &SubbasicSet) -> Option<PhasePoint> {
    match set {
        SubbasicSet::Cylinder { value, .. } => Some(PhasePoint::Sequence(BinarySeq::constant(*value))),
        SubbasicSet::Word { bits } => Some(PhasePoint::Sequence(BinarySeq::new(bits.clone(), Tail::Zeros))),
        SubbasicSet::HalfSpace { normal, offset } => cone_grid(8).find(|p| match p {
            PhasePoint::Cone(c) => SubbasicSet::half_space_margin(normal, offset, c) > HALF_SPACE_MARGIN,
            _ => false,
        }),
        SubbasicSet::CoSet { open, .. } | SubbasicSet::PoSet { open, .. } => {
            let carrier = space.as_region()?;
            let x = open.intersect(&carrier).representative()?;
            Some(point_of(space, x))
        }
        _ => {
            let x = set.realize(space)?.representative()?;
            Some(point_of(space, x))
        }
    }
}

fn point_of(space: &PhaseSpace, x: Rat) -> PhasePoint {
    match space {
        PhaseSpace::Circle => PhasePoint::Circle(crate::scalar::Golden::rational(x)),
        _ => PhasePoint::Real(x),
    }
}

pub fn generate_family(space: &PhaseSpace, scheme: &Scheme, r: u32) -> Result<Family> {
    generate_family_pinned(space, scheme, r, Vec::new())
}

/// Deterministic finite family at resolution `r`; `pinned` sets come first.
pub fn generate_family_pinned(
    space: &PhaseSpace,
    scheme: &Scheme,
    r: u32,
    pinned: Vec<SubbasicSet>,
) -> Result<Family> {
    if r == 0 {
        return Err(Error::Config("resolution must be positive".into()));
    }
    if !scheme.compatible(space) {
        return Err(Error::Config(format!("scheme {scheme} does not apply to {space}")));
    }
    let mut sets = pinned;
    match scheme {
        Scheme::HalfLines => {
            let r = i64::from(r);
            for c in -(r - 1)..=(r - 1) {
                sets.push(SubbasicSet::half_line_left(Rat::int(c)));
                sets.push(SubbasicSet::half_line_right(Rat::int(c)));
            }
        }
        Scheme::EndpointIntervals => {
            let PhaseSpace::Interval { lo, hi } = space else { unreachable!("checked") };
            let g = grid(lo, hi, r);
            sets.extend(g[1..].iter().map(|a| SubbasicSet::EndLow { a: a.clone() }));
            sets.extend(g[..g.len() - 1].iter().map(|b| SubbasicSet::EndHigh { b: b.clone() }));
        }
        Scheme::BasicIntervals => {
            let g = match space {
                PhaseSpace::Interval { lo, hi } => grid(lo, hi, r),
                PhaseSpace::RealLine => grid(&Rat::int(-1), &Rat::one(), 2 * r),
                _ => grid(&Rat::zero(), &Rat::one(), r),
            };
            for i in 0..g.len() {
                for j in i + 1..g.len() {
                    sets.push(SubbasicSet::open_interval(g[i].clone(), g[j].clone()));
                }
            }
        }
        Scheme::Cylinders => {
            for k in 0..u64::from(r) {
                for v in [false, true] {
                    sets.push(SubbasicSet::Cylinder { index: k, value: v });
                }
            }
        }
        Scheme::BasicCylinders => {
            for len in 1..=r {
                sets.extend(words(len).map(|bits| SubbasicSet::Word { bits }));
            }
        }
        Scheme::HalfSpaces => {
            for normal in half_space_normals(r) {
                for offset in [Rat::new(-1, 2), Rat::zero(), Rat::new(1, 2)] {
                    sets.push(SubbasicSet::HalfSpace { normal, offset });
                }
            }
        }
        Scheme::CompactOpen | Scheme::PointOpen | Scheme::PointOpenOn(_) => {
            let (lo, hi) = match space {
                PhaseSpace::Interval { lo, hi } => (lo.clone(), hi.clone()),
                _ => (Rat::zero(), Rat::one()),
            };
            let g = grid(&lo, &hi, r);
            let mut compacts: Vec<IntervalUnion> = match scheme {
                Scheme::PointOpenOn(a) => a.iter().cloned().map(IntervalUnion::point).collect(),
                _ => g.iter().cloned().map(IntervalUnion::point).collect(),
            };
            if matches!(scheme, Scheme::CompactOpen) {
                for i in 0..g.len() {
                    for j in i + 1..g.len() {
                        compacts.push(IntervalUnion::closed(g[i].clone(), g[j].clone()));
                    }
                }
            }
            let opens: Vec<IntervalUnion> = (0..g.len())
                .flat_map(|i| (i + 1..g.len()).map(move |j| (i, j)))
                .filter_map(|(i, j)| SubbasicSet::open_interval(g[i].clone(), g[j].clone()).realize(space))
                .collect();
            for k in &compacts {
                for o in &opens {
                    sets.push(match (scheme, k.as_point()) {
                        (Scheme::CompactOpen, _) | (_, None) => SubbasicSet::co_set(k.clone(), o.clone()),
                        (_, Some(x)) => SubbasicSet::po_set(x.clone(), o.clone()),
                    });
                }
            }
        }
    }
    let mut members: Vec<Member> = Vec::with_capacity(sets.len());
    for set in sets {
        if members.iter().any(|m| m.set == set) {
            continue;
        }
        // emptiness is decided by witness search; a set without one is dropped
        if let Some(witness) = inhabitant(space, &set) {
            members.push(Member { set, witness });
        }
    }
    Ok(Family { space: space.clone(), scheme: scheme.clone(), resolution: r, members })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    #[test]
    fn family_counts() {
        let i = PhaseSpace::unit_interval();
        assert_eq!(generate_family(&i, &Scheme::EndpointIntervals, 4).unwrap().len(), 8);
        assert_eq!(generate_family(&PhaseSpace::CantorSequences, &Scheme::Cylinders, 3).unwrap().len(), 6);
        assert_eq!(generate_family(&PhaseSpace::RealLine, &Scheme::HalfLines, 2).unwrap().len(), 6);
        assert_eq!(generate_family(&i, &Scheme::BasicIntervals, 8).unwrap().len(), 36);
        assert_eq!(generate_family(&PhaseSpace::DoubleCone, &Scheme::HalfSpaces, 1).unwrap().len(), 78);
        assert_eq!(generate_family(&PhaseSpace::CantorSequences, &Scheme::BasicCylinders, 3).unwrap().len(), 14);
        assert!(generate_family(&i, &Scheme::HalfLines, 2).is_err());
    }

    #[test]
    fn pinned_sets_lead_and_dedupe() {
        let pinned = vec![SubbasicSet::half_line_left(r(-1, 1)), SubbasicSet::half_line_right(r(1, 1))];
        let fam = generate_family_pinned(&PhaseSpace::RealLine, &Scheme::HalfLines, 2, pinned.clone()).unwrap();
        assert_eq!(fam.len(), 6);
        assert_eq!(fam.members[0].set, pinned[0]);
        assert_eq!(fam.members[1].set, pinned[1]);
    }

    #[test]
    fn membership_examples() {
        let cantor = PhaseSpace::CantorSequences;
        let zeros = PhasePoint::Sequence(BinarySeq::constant(false));
        assert!(SubbasicSet::Cylinder { index: 3, value: false }.contains(&cantor, &zeros));
        let i = PhaseSpace::unit_interval();
        assert!(!SubbasicSet::end_low(r(1, 4)).unwrap().contains(&i, &PhasePoint::real(1, 4)));
        let cone = PhaseSpace::DoubleCone;
        let top = PhasePoint::Cone(ConePoint::new(r(0, 1), r(1, 1)).unwrap());
        let upper = SubbasicSet::HalfSpace { normal: [0, 0, 1], offset: r(1, 2) };
        assert!(upper.contains(&cone, &top));
    }

    #[test]
    fn realization_and_meets() {
        let i = PhaseSpace::unit_interval();
        assert_eq!(SubbasicSet::end_high(r(3, 4)).unwrap().realize(&i).unwrap().to_string(), "(3/4, 1]");
        let line = PhaseSpace::RealLine;
        assert_eq!(SubbasicSet::half_line_left(r(2, 1)).realize(&line).unwrap().to_string(), "(-inf, 2)");
        let image = IntervalUnion::closed(r(1, 2), r(1, 1));
        assert!(!SubbasicSet::end_low(r(1, 4)).unwrap().meets(&i, &image).unwrap());
        assert!(SubbasicSet::end_high(r(3, 4)).unwrap().meets(&i, &image).unwrap());
        for a in [r(1, 2), r(1, 1), r(2, 1)] {
            let reflected: IntervalUnion = format!("({}, +inf)", -&a).parse().unwrap();
            let left = SubbasicSet::half_line_left(r(-1, 1));
            assert_eq!(left.meets(&line, &reflected).unwrap(), -&a < r(-1, 1));
        }
        let rel = SubbasicSet::open_interval(r(0, 1), r(1, 4)).realize(&i).unwrap();
        assert_eq!(rel.to_string(), "[0, 1/4)");
    }

    #[test]
    fn cylinder_net_covers_prefixes() {
        let net = SubbasicSet::Cylinder { index: 1, value: false }
            .realize_net(&PhaseSpace::CantorSequences, 3)
            .unwrap();
        assert_eq!(net.points.len(), 8);
        assert_eq!(net.epsilon, Rat::dyadic(4));
    }

    #[test]
    fn function_families_use_constant_witnesses() {
        let fam = generate_family(&PhaseSpace::unit_interval(), &Scheme::CompactOpen, 3).unwrap();
        assert_eq!(fam.len(), 60);
        let po = generate_family(&PhaseSpace::unit_interval(), &Scheme::PointOpen, 2).unwrap();
        assert!(po.sets().all(|s| matches!(s, SubbasicSet::PoSet { .. })));
    }
}
