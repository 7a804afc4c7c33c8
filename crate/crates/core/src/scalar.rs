//! Exact scalars.
//!
//! [`Rat`] is an arbitrary-precision rational kept in lowest terms with a
//! positive denominator. [`Golden`] is an element `a + b·φ` of the quadratic
//! field ℚ(φ), with `φ = (√5 − 1)/2`, used for exact irrational rotations.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number in canonical form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(numer: i64, denom: i64) -> Rat {
        assert!(denom != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_big(numer: BigInt, denom: BigInt) -> Result<Rat> {
        if denom.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        Ok(Rat(BigRational::new(numer, denom)))
    }

    pub fn int(n: i64) -> Rat {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Rat {
        Rat(BigRational::zero())
    }

    pub fn one() -> Rat {
        Rat(BigRational::one())
    }

    /// `2^-n`.
    pub fn dyadic(n: u32) -> Rat {
        Rat(BigRational::new(BigInt::one(), BigInt::one() << n))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn floor(&self) -> Rat {
        Rat(self.0.floor())
    }

    pub fn recip(&self) -> Rat {
        Rat(self.0.recip())
    }

    pub fn midpoint(&self, other: &Rat) -> Rat {
        (self + other) / Rat::int(2)
    }

    /// Fractional part in `[0, 1)`.
    pub fn frac(&self) -> Rat {
        self - &self.floor()
    }

    pub fn min(self, other: Rat) -> Rat {
        if other < self { other } else { self }
    }

    pub fn max(self, other: Rat) -> Rat {
        if other > self { other } else { self }
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Bit length of the denominator; used as a growth guard.
    pub fn denom_bits(&self) -> u64 {
        self.0.denom().bits()
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Rat {
    fn from(r: BigRational) -> Rat {
        Rat(r)
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Rat {
        Rat::int(n)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = Error;

    /// Accepts `p`, `p/q` and finite decimals such as `-0.125`.
    fn from_str(s: &str) -> Result<Rat> {
        let s = s.trim();
        let bad = || Error::Config(format!("not a rational number: {s:?}"));
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            return Rat::from_big(n, d).map_err(|_| bad());
        }
        if let Some((whole, frac)) = s.split_once('.') {
            if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            let negative = whole.trim_start().starts_with('-');
            let whole: BigInt = match whole.trim() {
                "" | "-" | "+" => BigInt::zero(),
                w => w.parse().map_err(|_| bad())?,
            };
            let scale = BigInt::from(10u32).pow(frac.len() as u32);
            let frac: BigInt = frac.parse().map_err(|_| bad())?;
            let magnitude = whole.abs() * &scale + frac;
            let numer = if negative { -magnitude } else { magnitude };
            return Rat::from_big(numer, scale);
        }
        let n: BigInt = s.parse().map_err(|_| bad())?;
        Ok(Rat(BigRational::from_integer(n)))
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Rat, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! rat_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &'a Rat) -> Rat {
                Rat(self.0.$method(&rhs.0))
            }
        }
        impl<'a> $trait<Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((&self.0).$method(rhs.0))
            }
        }
        impl<'a, 'b> $trait<&'b Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: &'b Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
    };
}

rat_binop!(Add, add);
rat_binop!(Sub, sub);
rat_binop!(Mul, mul);
rat_binop!(Div, div);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        self.0 -= &rhs.0;
    }
}

/// `a + b·φ` with `φ = (√5 − 1)/2`, an exact element of ℚ(√5).
///
/// Ordering is decided exactly: the value is rewritten as `u + v·√5` and
/// signs are compared through `u²` versus `5v²`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Golden {
    pub rational: Rat,
    pub golden: Rat,
}

impl Golden {
    pub fn new(rational: Rat, golden: Rat) -> Golden {
        Golden { rational, golden }
    }

    pub fn rational(r: Rat) -> Golden {
        Golden { rational: r, golden: Rat::zero() }
    }

    /// φ itself.
    pub fn phi() -> Golden {
        Golden { rational: Rat::zero(), golden: Rat::one() }
    }

    pub fn is_rational(&self) -> bool {
        self.golden.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        self.is_rational().then_some(&self.rational)
    }

    pub fn signum(&self) -> Ordering {
        // a + bφ = (a - b/2) + (b/2)√5
        let u = &self.rational - &(&self.golden / Rat::int(2));
        let v = &self.golden / Rat::int(2);
        let su = u.cmp(&Rat::zero());
        let sv = v.cmp(&Rat::zero());
        match (su, sv) {
            (s, Ordering::Equal) => s,
            (Ordering::Equal, s) => s,
            (a, b) if a == b => a,
            (a, b) => {
                let lhs = &u * &u;
                let rhs = Rat::int(5) * &v * &v;
                match lhs.cmp(&rhs) {
                    Ordering::Greater => a,
                    Ordering::Less => b,
                    // u² = 5v² has no rational solution with v ≠ 0
                    Ordering::Equal => unreachable!("√5 is irrational"),
                }
            }
        }
    }

    pub fn cmp_rat(&self, r: &Rat) -> Ordering {
        Golden::new(&self.rational - r, self.golden.clone()).signum()
    }

    pub fn floor(&self) -> Rat {
        let mut n = Rat::int(self.to_f64().floor() as i64);
        while self.cmp_rat(&n) == Ordering::Less {
            n = n - Rat::one();
        }
        while self.cmp_rat(&(&n + Rat::one())) != Ordering::Less {
            n = n + Rat::one();
        }
        n
    }

    /// Representative in `[0, 1)`.
    pub fn frac(&self) -> Golden {
        let n = self.floor();
        Golden::new(&self.rational - &n, self.golden.clone())
    }

    pub fn abs(&self) -> Golden {
        if self.signum() == Ordering::Less { -self.clone() } else { self.clone() }
    }

    pub fn to_f64(&self) -> f64 {
        let phi = (5f64.sqrt() - 1.0) / 2.0;
        self.rational.to_f64() + self.golden.to_f64() * phi
    }
}

impl PartialOrd for Golden {
    fn partial_cmp(&self, other: &Golden) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Golden {
    fn cmp(&self, other: &Golden) -> Ordering {
        (self.clone() - other.clone()).signum()
    }
}

impl Add for Golden {
    type Output = Golden;
    fn add(self, rhs: Golden) -> Golden {
        Golden::new(self.rational + rhs.rational, self.golden + rhs.golden)
    }
}

impl Sub for Golden {
    type Output = Golden;
    fn sub(self, rhs: Golden) -> Golden {
        Golden::new(self.rational - rhs.rational, self.golden - rhs.golden)
    }
}

impl Neg for Golden {
    type Output = Golden;
    fn neg(self) -> Golden {
        Golden::new(-self.rational, -self.golden)
    }
}

impl fmt::Display for Golden {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.golden.is_zero() {
            write!(f, "{}", self.rational)
        } else {
            write!(f, "{} + {}·φ", self.rational, self.golden)
        }
    }
}

impl fmt::Debug for Golden {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let r = Rat::new(6, -8);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(4));
        assert_eq!(r.to_string(), "-3/4");
    }

    #[test]
    fn parse_forms() {
        assert_eq!("3/4".parse::<Rat>().unwrap(), Rat::new(3, 4));
        assert_eq!("-0.125".parse::<Rat>().unwrap(), Rat::new(-1, 8));
        assert_eq!("-.5".parse::<Rat>().unwrap(), Rat::new(-1, 2));
        assert_eq!("7".parse::<Rat>().unwrap(), Rat::int(7));
        assert!("1/0".parse::<Rat>().is_err());
        assert!("x".parse::<Rat>().is_err());
    }

    #[test]
    fn golden_sign_and_floor() {
        let phi = Golden::phi();
        assert_eq!(phi.cmp_rat(&Rat::new(618, 1000)), Ordering::Greater);
        assert_eq!(phi.cmp_rat(&Rat::new(619, 1000)), Ordering::Less);
        let three_phi = Golden::new(Rat::zero(), Rat::int(3));
        assert_eq!(three_phi.floor(), Rat::int(1));
        let f = three_phi.frac();
        assert!((f.to_f64() - (3.0 * 0.6180339887498949 - 1.0)).abs() < 1e-12);
        // φ² = 1 - φ
        let x = Golden::new(Rat::one(), Rat::int(-1));
        assert_eq!(x.cmp_rat(&Rat::new(381966, 1000000)), Ordering::Greater);
    }

    #[test]
    fn golden_multiples_never_integer() {
        for k in 1..200i64 {
            let g = Golden::new(Rat::zero(), Rat::int(k));
            assert!(!g.frac().is_rational() || !g.frac().rational.is_zero());
            assert_ne!(g.frac().signum(), Ordering::Equal);
        }
    }
}
