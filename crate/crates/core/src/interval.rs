//! Exact intervals and finite unions of intervals with open/closed endpoints.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Rat;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Bound {
    Unbounded,
    Closed(Rat),
    Open(Rat),
}

impl Bound {
    pub fn value(&self) -> Option<&Rat> {
        match self {
            Bound::Unbounded => None,
            Bound::Closed(x) | Bound::Open(x) => Some(x),
        }
    }

    pub fn is_closed(&self) -> bool {
        matches!(self, Bound::Closed(_))
    }

    fn flip(&self) -> Bound {
        match self {
            Bound::Unbounded => Bound::Unbounded,
            Bound::Closed(x) => Bound::Open(x.clone()),
            Bound::Open(x) => Bound::Closed(x.clone()),
        }
    }

    /// Same closedness, new value.
    pub fn with_value(&self, v: Rat) -> Bound {
        match self {
            Bound::Unbounded => Bound::Unbounded,
            Bound::Closed(_) => Bound::Closed(v),
            Bound::Open(_) => Bound::Open(v),
        }
    }
}

/// Order of two bounds read as left endpoints.
fn cmp_lower(a: &Bound, b: &Bound) -> Ordering {
    match (a, b) {
        (Bound::Unbounded, Bound::Unbounded) => Ordering::Equal,
        (Bound::Unbounded, _) => Ordering::Less,
        (_, Bound::Unbounded) => Ordering::Greater,
        (x, y) => {
            let (xv, yv) = (x.value().unwrap(), y.value().unwrap());
            xv.cmp(yv).then_with(|| match (x.is_closed(), y.is_closed()) {
                (true, false) => Ordering::Less,
                (false, true) => Ordering::Greater,
                _ => Ordering::Equal,
            })
        }
    }
}

/// Order of two bounds read as right endpoints.
fn cmp_upper(a: &Bound, b: &Bound) -> Ordering {
    match (a, b) {
        (Bound::Unbounded, Bound::Unbounded) => Ordering::Equal,
        (Bound::Unbounded, _) => Ordering::Greater,
        (_, Bound::Unbounded) => Ordering::Less,
        (x, y) => {
            let (xv, yv) = (x.value().unwrap(), y.value().unwrap());
            xv.cmp(yv).then_with(|| match (x.is_closed(), y.is_closed()) {
                (true, false) => Ordering::Greater,
                (false, true) => Ordering::Less,
                _ => Ordering::Equal,
            })
        }
    }
}

fn nonempty(lo: &Bound, hi: &Bound) -> bool {
    match (lo.value(), hi.value()) {
        (Some(a), Some(b)) => match a.cmp(b) {
            Ordering::Less => true,
            Ordering::Equal => lo.is_closed() && hi.is_closed(),
            Ordering::Greater => false,
        },
        _ => true,
    }
}

/// A nonempty interval of the extended real line.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Bound,
    hi: Bound,
}

impl Interval {
    pub fn new(lo: Bound, hi: Bound) -> Option<Interval> {
        nonempty(&lo, &hi).then_some(Interval { lo, hi })
    }

    pub fn closed(a: Rat, b: Rat) -> Option<Interval> {
        Interval::new(Bound::Closed(a), Bound::Closed(b))
    }

    pub fn open(a: Rat, b: Rat) -> Option<Interval> {
        Interval::new(Bound::Open(a), Bound::Open(b))
    }

    pub fn point(a: Rat) -> Interval {
        Interval { lo: Bound::Closed(a.clone()), hi: Bound::Closed(a) }
    }

    pub fn full() -> Interval {
        Interval { lo: Bound::Unbounded, hi: Bound::Unbounded }
    }

    pub fn lo(&self) -> &Bound {
        &self.lo
    }

    pub fn hi(&self) -> &Bound {
        &self.hi
    }

    pub fn is_point(&self) -> bool {
        matches!((&self.lo, &self.hi), (Bound::Closed(a), Bound::Closed(b)) if a == b)
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.value().is_some() && self.hi.value().is_some()
    }

    /// Membership decided through `cmp(e) = point.cmp(e)`, so points from
    /// richer number fields can be tested against rational endpoints.
    pub fn contains_by(&self, cmp: impl Fn(&Rat) -> Ordering) -> bool {
        let above_lo = match &self.lo {
            Bound::Unbounded => true,
            Bound::Closed(a) => cmp(a) != Ordering::Less,
            Bound::Open(a) => cmp(a) == Ordering::Greater,
        };
        let below_hi = match &self.hi {
            Bound::Unbounded => true,
            Bound::Closed(b) => cmp(b) != Ordering::Greater,
            Bound::Open(b) => cmp(b) == Ordering::Less,
        };
        above_lo && below_hi
    }

    pub fn contains(&self, x: &Rat) -> bool {
        self.contains_by(|e| x.cmp(e))
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = if cmp_lower(&self.lo, &other.lo) == Ordering::Less { &other.lo } else { &self.lo };
        let hi = if cmp_upper(&self.hi, &other.hi) == Ordering::Greater { &other.hi } else { &self.hi };
        Interval::new(lo.clone(), hi.clone())
    }

    /// A rational point of the interval, deterministic.
    pub fn representative(&self) -> Rat {
        match (self.lo.value(), self.hi.value()) {
            (Some(a), Some(b)) => {
                if a == b {
                    a.clone()
                } else {
                    a.midpoint(b)
                }
            }
            (Some(a), None) => a + Rat::one(),
            (None, Some(b)) => b - Rat::one(),
            (None, None) => Rat::zero(),
        }
    }

    pub fn length(&self) -> Option<Rat> {
        Some(self.hi.value()? - self.lo.value()?)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.lo {
            Bound::Unbounded => write!(f, "(-inf")?,
            Bound::Closed(a) => write!(f, "[{a}")?,
            Bound::Open(a) => write!(f, "({a}")?,
        }
        match &self.hi {
            Bound::Unbounded => write!(f, ", +inf)"),
            Bound::Closed(b) => write!(f, ", {b}]"),
            Bound::Open(b) => write!(f, ", {b})"),
        }
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Interval {
    type Err = Error;

    fn from_str(s: &str) -> Result<Interval> {
        let s = s.trim();
        let bad = || Error::Config(format!("not an interval: {s:?}"));
        let (open_lo, rest) = match s.chars().next() {
            Some('[') => (false, &s[1..]),
            Some('(') => (true, &s[1..]),
            _ => return Err(bad()),
        };
        let (open_hi, body) = match rest.chars().last() {
            Some(']') => (false, &rest[..rest.len() - 1]),
            Some(')') => (true, &rest[..rest.len() - 1]),
            _ => return Err(bad()),
        };
        let (a, b) = body.split_once(',').ok_or_else(bad)?;
        let lo = match a.trim() {
            "-inf" => Bound::Unbounded,
            v if open_lo => Bound::Open(v.parse()?),
            v => Bound::Closed(v.parse()?),
        };
        let hi = match b.trim() {
            "+inf" | "inf" => Bound::Unbounded,
            v if open_hi => Bound::Open(v.parse()?),
            v => Bound::Closed(v.parse()?),
        };
        Interval::new(lo, hi).ok_or_else(bad)
    }
}

/// Sorted union of pairwise disjoint, non-mergeable intervals.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntervalUnion {
    parts: Vec<Interval>,
}

/// Whether `b` (starting no earlier than `a`) overlaps or abuts `a` so the
/// two can be merged into one interval.
fn reaches(a_hi: &Bound, b_lo: &Bound) -> bool {
    match (a_hi.value(), b_lo.value()) {
        (Some(x), Some(y)) => match y.cmp(x) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => a_hi.is_closed() || b_lo.is_closed(),
        },
        _ => true,
    }
}

impl IntervalUnion {
    pub fn empty() -> IntervalUnion {
        IntervalUnion { parts: Vec::new() }
    }

    pub fn full() -> IntervalUnion {
        IntervalUnion { parts: vec![Interval::full()] }
    }

    pub fn from_interval(i: Interval) -> IntervalUnion {
        IntervalUnion { parts: vec![i] }
    }

    pub fn closed(a: Rat, b: Rat) -> IntervalUnion {
        IntervalUnion::from_parts(Interval::closed(a, b))
    }

    pub fn open(a: Rat, b: Rat) -> IntervalUnion {
        IntervalUnion::from_parts(Interval::open(a, b))
    }

    pub fn point(a: Rat) -> IntervalUnion {
        IntervalUnion::from_interval(Interval::point(a))
    }

    pub fn points(pts: impl IntoIterator<Item = Rat>) -> IntervalUnion {
        IntervalUnion::from_parts(pts.into_iter().map(Interval::point))
    }

    pub fn from_parts(parts: impl IntoIterator<Item = Interval>) -> IntervalUnion {
        let mut parts: Vec<Interval> = parts.into_iter().collect();
        parts.sort_by(|a, b| cmp_lower(&a.lo, &b.lo).then_with(|| cmp_upper(&a.hi, &b.hi)));
        let mut merged: Vec<Interval> = Vec::with_capacity(parts.len());
        for p in parts {
            match merged.last_mut() {
                Some(last) if reaches(&last.hi, &p.lo) => {
                    if cmp_upper(&p.hi, &last.hi) == Ordering::Greater {
                        last.hi = p.hi;
                    }
                }
                _ => merged.push(p),
            }
        }
        IntervalUnion { parts: merged }
    }

    pub fn parts(&self) -> &[Interval] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, x: &Rat) -> bool {
        self.parts.iter().any(|p| p.contains(x))
    }

    pub fn contains_by(&self, cmp: impl Fn(&Rat) -> Ordering) -> bool {
        self.parts.iter().any(|p| p.contains_by(&cmp))
    }

    pub fn union(&self, other: &IntervalUnion) -> IntervalUnion {
        IntervalUnion::from_parts(self.parts.iter().chain(other.parts.iter()).cloned())
    }

    pub fn intersect(&self, other: &IntervalUnion) -> IntervalUnion {
        let mut out = Vec::new();
        for a in &self.parts {
            for b in &other.parts {
                if let Some(c) = a.intersect(b) {
                    out.push(c);
                }
            }
        }
        IntervalUnion::from_parts(out)
    }

    pub fn intersect_interval(&self, other: &Interval) -> IntervalUnion {
        IntervalUnion::from_parts(self.parts.iter().filter_map(|a| a.intersect(other)))
    }

    pub fn meets(&self, other: &IntervalUnion) -> bool {
        self.parts.iter().any(|a| other.parts.iter().any(|b| a.intersect(b).is_some()))
    }

    /// Complement in the real line.
    pub fn complement(&self) -> IntervalUnion {
        let mut out = Vec::new();
        let mut lo = Bound::Unbounded;
        for p in &self.parts {
            if !matches!(p.lo, Bound::Unbounded) {
                out.extend(Interval::new(lo.clone(), p.lo.flip()));
            }
            if matches!(p.hi, Bound::Unbounded) {
                return IntervalUnion::from_parts(out);
            }
            lo = p.hi.flip();
        }
        if let Some(i) = Interval::new(lo, Bound::Unbounded) {
            out.push(i);
        }
        IntervalUnion::from_parts(out)
    }

    pub fn complement_within(&self, domain: &IntervalUnion) -> IntervalUnion {
        self.complement().intersect(domain)
    }

    pub fn difference(&self, other: &IntervalUnion) -> IntervalUnion {
        self.intersect(&other.complement())
    }

    pub fn is_subset(&self, other: &IntervalUnion) -> bool {
        self.difference(other).is_empty()
    }

    pub fn representative(&self) -> Option<Rat> {
        self.parts.first().map(Interval::representative)
    }

    pub fn infimum(&self) -> Option<&Bound> {
        self.parts.first().map(|p| &p.lo)
    }

    pub fn supremum(&self) -> Option<&Bound> {
        self.parts.last().map(|p| &p.hi)
    }

    pub fn is_bounded(&self) -> bool {
        match (self.infimum(), self.supremum()) {
            (Some(a), Some(b)) => a.value().is_some() && b.value().is_some(),
            _ => true,
        }
    }

    /// `sup − inf`, or `None` when unbounded or empty.
    pub fn diameter(&self) -> Option<Rat> {
        Some(self.supremum()?.value()? - self.infimum()?.value()?)
    }

    /// Single point when the union is exactly `{x}`.
    pub fn as_point(&self) -> Option<&Rat> {
        match self.parts.as_slice() {
            [p] if p.is_point() => p.lo.value(),
            _ => None,
        }
    }

    /// All finite endpoints, sorted and deduplicated.
    pub fn endpoints(&self) -> Vec<Rat> {
        let mut v: Vec<Rat> = self
            .parts
            .iter()
            .flat_map(|p| [p.lo.value().cloned(), p.hi.value().cloned()])
            .flatten()
            .collect();
        v.sort();
        v.dedup();
        v
    }
}

impl fmt::Display for IntervalUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "{{}}");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, " U ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntervalUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for IntervalUnion {
    type Err = Error;

    fn from_str(s: &str) -> Result<IntervalUnion> {
        let s = s.trim();
        if s == "{}" {
            return Ok(IntervalUnion::empty());
        }
        let parts = s.split(" U ").map(str::parse).collect::<Result<Vec<Interval>>>()?;
        Ok(IntervalUnion::from_parts(parts))
    }
}

impl Serialize for IntervalUnion {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for IntervalUnion {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<IntervalUnion, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

impl From<Interval> for IntervalUnion {
    fn from(i: Interval) -> IntervalUnion {
        IntervalUnion::from_interval(i)
    }
}

impl From<Option<Interval>> for IntervalUnion {
    fn from(i: Option<Interval>) -> IntervalUnion {
        IntervalUnion::from_parts(i)
    }
}
