//! Continuous piecewise-linear self-maps of a closed interval, exact.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::{Bound, Interval, IntervalUnion};
use crate::scalar::Rat;

/// Graph of a continuous piecewise-linear map given by its knots.
///
/// Knot abscissae are strictly increasing; the first and last span the
/// domain. The knot list is kept minimal (no three collinear consecutive
/// knots), so two maps are equal exactly when their graphs are.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<(Rat, Rat)>", into = "Vec<(Rat, Rat)>")]
pub struct PLMap {
    knots: Vec<(Rat, Rat)>,
}

impl TryFrom<Vec<(Rat, Rat)>> for PLMap {
    type Error = Error;
    fn try_from(knots: Vec<(Rat, Rat)>) -> Result<PLMap> {
        PLMap::new(knots)
    }
}

impl From<PLMap> for Vec<(Rat, Rat)> {
    fn from(m: PLMap) -> Vec<(Rat, Rat)> {
        m.knots
    }
}

fn lerp(x: &Rat, (x0, y0): (&Rat, &Rat), (x1, y1): (&Rat, &Rat)) -> Rat {
    if y0 == y1 {
        return y0.clone();
    }
    y0 + &((x - x0) * (y1 - y0) / (x1 - x0))
}

impl PLMap {
    pub fn new(knots: Vec<(Rat, Rat)>) -> Result<PLMap> {
        if knots.len() < 2 {
            return Err(Error::Domain("a piecewise-linear map needs at least two knots".into()));
        }
        if knots.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::Domain("knot abscissae must be strictly increasing".into()));
        }
        let mut m = PLMap { knots };
        m.simplify();
        Ok(m)
    }

    pub fn from_ints(knots: &[(i64, i64, i64)]) -> PLMap {
        // (numerator x, numerator y, common denominator)
        PLMap::new(knots.iter().map(|&(x, y, d)| (Rat::new(x, d), Rat::new(y, d))).collect())
            .expect("valid literal knots")
    }

    pub fn identity(lo: Rat, hi: Rat) -> PLMap {
        PLMap { knots: vec![(lo.clone(), lo), (hi.clone(), hi)] }
    }

    pub fn constant(lo: Rat, hi: Rat, c: Rat) -> PLMap {
        PLMap { knots: vec![(lo, c.clone()), (hi, c)] }
    }

    fn simplify(&mut self) {
        let mut out: Vec<(Rat, Rat)> = Vec::with_capacity(self.knots.len());
        for k in self.knots.drain(..) {
            while out.len() >= 2 {
                let (a, b) = (&out[out.len() - 2], &out[out.len() - 1]);
                let lhs = (&b.1 - &a.1) * (&k.0 - &a.0);
                let rhs = (&k.1 - &a.1) * (&b.0 - &a.0);
                if lhs == rhs {
                    out.pop();
                } else {
                    break;
                }
            }
            out.push(k);
        }
        self.knots = out;
    }

    pub fn knots(&self) -> &[(Rat, Rat)] {
        &self.knots
    }

    pub fn pieces(&self) -> usize {
        self.knots.len() - 1
    }

    pub fn domain(&self) -> (&Rat, &Rat) {
        (&self.knots[0].0, &self.knots[self.knots.len() - 1].0)
    }

    pub fn domain_interval(&self) -> Interval {
        let (a, b) = self.domain();
        Interval::closed(a.clone(), b.clone()).expect("nondegenerate domain")
    }

    pub fn is_constant(&self) -> bool {
        self.knots.len() == 2 && self.knots[0].1 == self.knots[1].1
    }

    fn segments(&self) -> impl Iterator<Item = (&(Rat, Rat), &(Rat, Rat))> {
        self.knots.windows(2).map(|w| (&w[0], &w[1]))
    }

    pub fn eval(&self, x: &Rat) -> Result<Rat> {
        let (lo, hi) = self.domain();
        if x < lo || x > hi {
            return Err(Error::Domain(format!("{x} lies outside [{lo}, {hi}]")));
        }
        // first knot with abscissa >= x
        let i = self.knots.partition_point(|k| &k.0 < x);
        if i < self.knots.len() && &self.knots[i].0 == x {
            return Ok(self.knots[i].1.clone());
        }
        let (a, b) = (&self.knots[i - 1], &self.knots[i]);
        Ok(lerp(x, (&a.0, &a.1), (&b.0, &b.1)))
    }

    /// Smallest and largest value, i.e. the image of the domain.
    pub fn range(&self) -> (Rat, Rat) {
        let lo = self.knots.iter().map(|k| &k.1).min().unwrap().clone();
        let hi = self.knots.iter().map(|k| &k.1).max().unwrap().clone();
        (lo, hi)
    }

    /// Fails unless every value lies in `[lo, hi]`.
    pub fn check_codomain(&self, lo: &Rat, hi: &Rat) -> Result<()> {
        let (a, b) = self.range();
        if &a < lo || &b > hi {
            return Err(Error::Domain(format!("values [{a}, {b}] leave the codomain [{lo}, {hi}]")));
        }
        Ok(())
    }

    /// `outer ∘ inner`.
    pub fn compose(outer: &PLMap, inner: &PLMap) -> Result<PLMap> {
        let (olo, ohi) = outer.domain();
        inner.check_codomain(olo, ohi)?;
        let mut xs: Vec<Rat> = Vec::with_capacity(inner.knots.len() * 2);
        for (a, b) in inner.segments() {
            xs.push(a.0.clone());
            if a.1 == b.1 {
                continue;
            }
            let (ylo, yhi) = if a.1 < b.1 { (&a.1, &b.1) } else { (&b.1, &a.1) };
            let start = outer.knots.partition_point(|k| &k.0 <= ylo);
            let mut cuts: Vec<Rat> = outer.knots[start..]
                .iter()
                .take_while(|k| &k.0 < yhi)
                .map(|k| &a.0 + &((&k.0 - &a.1) * (&b.0 - &a.0) / (&b.1 - &a.1)))
                .collect();
            cuts.sort();
            xs.extend(cuts);
        }
        xs.push(inner.knots[inner.knots.len() - 1].0.clone());
        let mut knots = Vec::with_capacity(xs.len());
        let mut seg = 0usize;
        for x in xs {
            while seg + 1 < inner.knots.len() - 1 && inner.knots[seg + 1].0 <= x {
                seg += 1;
            }
            let (a, b) = (&inner.knots[seg], &inner.knots[seg + 1]);
            let y = lerp(&x, (&a.0, &a.1), (&b.0, &b.1));
            knots.push((x, outer.eval(&y)?));
        }
        PLMap::new(knots)
    }

    /// `self^k` for `k >= 1`, refusing results with more than `max_pieces`.
    pub fn power(&self, k: u32, max_pieces: usize) -> Result<PLMap> {
        if k == 0 {
            return Err(Error::Domain("iterate exponent must be positive".into()));
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = PLMap::compose(self, &acc)?;
            if acc.pieces() > max_pieces {
                return Err(Error::Budget(format!("iterate has {} pieces, cap is {max_pieces}", acc.pieces())));
            }
        }
        Ok(acc)
    }

    /// Exact forward image of a region; the region is clipped to the domain.
    pub fn image(&self, region: &IntervalUnion) -> IntervalUnion {
        let mut out = Vec::new();
        let dom = self.domain_interval();
        for part in region.intersect_interval(&dom).parts() {
            let (plo, phi) = (part.lo().value().unwrap(), part.hi().value().unwrap());
            let first = self.knots.partition_point(|k| &k.0 < plo).saturating_sub(1);
            for w in self.knots[first..].windows(2) {
                let (a, b) = (&w[0], &w[1]);
                if &a.0 > phi {
                    break;
                }
                let seg = Interval::closed(a.0.clone(), b.0.clone()).unwrap();
                let Some(j) = part.intersect(&seg) else { continue };
                if a.1 == b.1 {
                    out.push(Interval::point(a.1.clone()));
                    continue;
                }
                let f = |bd: &Bound| bd.with_value(lerp(bd.value().unwrap(), (&a.0, &a.1), (&b.0, &b.1)));
                let (lo, hi) = if a.1 < b.1 { (f(j.lo()), f(j.hi())) } else { (f(j.hi()), f(j.lo())) };
                out.extend(Interval::new(lo, hi));
            }
        }
        IntervalUnion::from_parts(out)
    }

    /// All preimage pieces of `y`: isolated points plus whole segments where
    /// the map is constantly `y`.
    pub fn preimage(&self, y: &Rat) -> IntervalUnion {
        let mut out = Vec::new();
        for (a, b) in self.segments() {
            if a.1 == b.1 {
                if &a.1 == y {
                    out.extend(Interval::closed(a.0.clone(), b.0.clone()));
                }
                continue;
            }
            let (ylo, yhi) = if a.1 < b.1 { (&a.1, &b.1) } else { (&b.1, &a.1) };
            if y >= ylo && y <= yhi {
                let x = &a.0 + &((y - &a.1) * (&b.0 - &a.0) / (&b.1 - &a.1));
                out.push(Interval::point(x));
            }
        }
        IntervalUnion::from_parts(out)
    }

    /// A point of `within` mapped to `y`, if any.
    pub fn preimage_in(&self, y: &Rat, within: &IntervalUnion) -> Option<Rat> {
        self.preimage(y).intersect(within).representative()
    }

    /// Exact fixed-point set: isolated solutions plus identity segments.
    pub fn fixed_set(&self) -> IntervalUnion {
        let mut out = Vec::new();
        for (a, b) in self.segments() {
            let d0 = &a.1 - &a.0;
            let d1 = &b.1 - &b.0;
            if d0.is_zero() && d1.is_zero() {
                out.extend(Interval::closed(a.0.clone(), b.0.clone()));
            } else if d0.is_zero() {
                out.push(Interval::point(a.0.clone()));
            } else if d1.is_zero() {
                out.push(Interval::point(b.0.clone()));
            } else if d0.is_negative() != d1.is_negative() {
                let x = &a.0 + &(&d0 * (&b.0 - &a.0) / (&d0 - &d1));
                out.push(Interval::point(x));
            }
        }
        IntervalUnion::from_parts(out)
    }

    /// `sup |self − other|` and a point attaining it.
    pub fn sup_distance(&self, other: &PLMap) -> Result<(Rat, Rat)> {
        if self.domain() != other.domain() {
            return Err(Error::Domain("uniform distance needs a common domain".into()));
        }
        let mut xs: Vec<&Rat> = self.knots.iter().chain(other.knots.iter()).map(|k| &k.0).collect();
        xs.sort();
        xs.dedup();
        let mut best = (Rat::zero(), xs[0].clone());
        for x in xs {
            let d = (self.eval(x)? - other.eval(x)?).abs();
            if d > best.0 {
                best = (d, x.clone());
            }
        }
        Ok(best)
    }

    /// Restriction to `[a, b]` within the domain.
    pub fn restrict(&self, a: &Rat, b: &Rat) -> Result<PLMap> {
        let (lo, hi) = self.domain();
        if a < lo || b > hi || a >= b {
            return Err(Error::Domain(format!("[{a}, {b}] is not a subinterval of [{lo}, {hi}]")));
        }
        let mut knots = vec![(a.clone(), self.eval(a)?)];
        knots.extend(self.knots.iter().filter(|k| &k.0 > a && &k.0 < b).cloned());
        knots.push((b.clone(), self.eval(b)?));
        PLMap::new(knots)
    }

    /// Whether the map is onto `[lo, hi]`.
    pub fn is_onto(&self, lo: &Rat, hi: &Rat) -> bool {
        let (a, b) = self.range();
        &a == lo && &b == hi
    }
}

impl fmt::Display for PLMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PL[")?;
        for (i, (x, y)) in self.knots.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({x}, {y})")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for PLMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The full tent map `x ↦ 1 − |2x − 1|` on `[0, 1]`.
pub fn tent() -> PLMap {
    PLMap::from_ints(&[(0, 0, 2), (1, 2, 2), (2, 0, 2)])
}

/// The reflected truncated tent map: `1 − 2x`, then `1/2`, then `2x − 1`.
pub fn reflected_truncated_tent() -> PLMap {
    PLMap::from_ints(&[(0, 4, 4), (1, 2, 4), (3, 2, 4), (4, 4, 4)])
}

/// The truncated tent map: `2x`, then `1/2`, then `2 − 2x`.
pub fn truncated_tent() -> PLMap {
    PLMap::from_ints(&[(0, 0, 4), (1, 2, 4), (3, 2, 4), (4, 0, 4)])
}

pub fn unit_identity() -> PLMap {
    PLMap::identity(Rat::zero(), Rat::one())
}

/// `x ↦ −x` on `[−1, 1]`.
pub fn negation_pl() -> PLMap {
    PLMap::from_ints(&[(-1, 1, 1), (1, -1, 1)])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    #[test]
    fn truncated_tent_plateau() {
        assert_eq!(truncated_tent().eval(&r(1, 2)).unwrap(), r(1, 2));
        assert_eq!(reflected_truncated_tent().eval(&r(0, 1)).unwrap(), r(1, 1));
        assert!(tent().eval(&r(3, 2)).is_err());
    }

    #[test]
    fn compose_involution_and_tent_square() {
        let n = negation_pl();
        assert_eq!(PLMap::compose(&n, &n).unwrap(), PLMap::identity(r(-1, 1), r(1, 1)));
        let t2 = PLMap::compose(&tent(), &tent()).unwrap();
        let xs: Vec<Rat> = t2.knots().iter().map(|k| k.0.clone()).collect();
        assert_eq!(xs, vec![r(0, 1), r(1, 4), r(1, 2), r(3, 4), r(1, 1)]);
        let f = reflected_truncated_tent();
        assert_eq!(PLMap::compose(&f, &f).unwrap().eval(&r(0, 1)).unwrap(), r(1, 1));
    }

    #[test]
    fn compose_range_violation() {
        let wide = PLMap::from_ints(&[(0, 0, 1), (1, 2, 1)]);
        assert!(PLMap::compose(&tent(), &wide).is_err());
    }

    #[test]
    fn images() {
        let f = reflected_truncated_tent();
        assert_eq!(f.image(&IntervalUnion::closed(r(0, 1), r(1, 1))).to_string(), "[1/2, 1]");
        assert_eq!(tent().image(&IntervalUnion::closed(r(0, 1), r(1, 2))).to_string(), "[0, 1]");
        assert_eq!(tent().image(&"(0, 1/4)".parse().unwrap()).to_string(), "(0, 1/2)");
        assert_eq!(tent().image(&"(1/4, 3/4)".parse().unwrap()).to_string(), "(1/2, 1]");
        assert_eq!(f.image(&"(1/4, 1/2)".parse().unwrap()).to_string(), "[1/2, 1/2]");
    }

    #[test]
    fn fixed_sets() {
        assert_eq!(tent().fixed_set().to_string(), "[0, 0] U [2/3, 2/3]");
        assert_eq!(reflected_truncated_tent().fixed_set().to_string(), "[1/2, 1/2] U [1, 1]");
        assert_eq!(unit_identity().fixed_set().to_string(), "[0, 1]");
    }

    #[test]
    fn uniform_distance_identity_tent() {
        let (d, at) = unit_identity().sup_distance(&tent()).unwrap();
        assert_eq!(d, r(1, 1));
        assert_eq!(at, r(1, 1));
    }

    #[test]
    fn restrict_and_preimage() {
        let t = tent();
        let part = t.restrict(&r(1, 4), &r(3, 4)).unwrap();
        assert_eq!(part.knots().len(), 3);
        assert_eq!(t.preimage(&r(1, 2)).to_string(), "[1/4, 1/4] U [3/4, 3/4]");
        let within = IntervalUnion::open(r(1, 2), r(1, 1));
        assert_eq!(t.preimage_in(&r(1, 2), &within), Some(r(3, 4)));
    }
}
