//! Exact scalar fields.
//!
//! Everything in the crate is generic over [`Field`]. The workhorse is
//! [`Rational`] (arbitrary precision, always in lowest terms); the quadratic
//! tower [`Quad`](crate::quadratic::Quad) is used where a line meets a conic in
//! points that are not rational.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational, stored in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Maximum number of square roots adjoined on top of the rationals.
pub const MAX_TOWER_DEPTH: usize = 2;

/// An exact field. Operators consume their operands; clone where needed.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Number of square roots adjoined over the rationals.
    const DEPTH: usize;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;
    fn from_rational(q: Rational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.inverse().map(|inv| self.clone() * inv)
    }

    /// Rescales a homogeneous vector to a cheaper representative of the same
    /// projective point. The default leaves it alone.
    fn reduce_vector(_v: &mut [Self]) {}

    /// Rescales a homogeneous vector to the canonical representative:
    /// first nonzero entry equal to one unless the field has something better.
    fn canonicalize_vector(v: &mut [Self]) {
        if let Some(lead) = v.iter().find(|c| !c.is_zero()).cloned() {
            let inv = lead.inverse().expect("nonzero");
            for c in v.iter_mut() {
                *c = c.clone() * inv.clone();
            }
        }
    }
}

/// A field that can decide whether an element is a square and extract the root.
pub trait SqrtField: Field {
    fn sqrt_exact(&self) -> Option<Self>;
}

impl Field for Rational {
    const DEPTH: usize = 0;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rational(q: Rational) -> Self {
        q
    }

    fn reduce_vector(v: &mut [Self]) {
        primitive_integer_vector(v);
    }

    fn canonicalize_vector(v: &mut [Self]) {
        primitive_integer_vector(v);
    }
}

impl SqrtField for Rational {
    fn sqrt_exact(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = isqrt_exact(self.numer())?;
        let d = isqrt_exact(self.denom())?;
        Some(Rational::new(n, d))
    }
}

fn isqrt_exact(n: &BigInt) -> Option<BigInt> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Scales a rational vector to coprime integers with the first nonzero entry positive.
pub fn primitive_integer_vector(v: &mut [Rational]) {
    let Some(lead) = v.iter().find(|c| !Zero::is_zero(*c)) else {
        return;
    };
    let negative = lead.is_negative();
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = v.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let mut gcd = ints.iter().fold(BigInt::zero(), |acc, n| acc.gcd(n));
    if negative {
        gcd = -gcd;
    }
    for (slot, n) in v.iter_mut().zip(ints) {
        *slot = Rational::from_integer(n / &gcd);
    }
}

/// Parses `"p/q"` or a plain integer. Surrounding whitespace is ignored.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let err = || Error::ParseScalar(text.to_string());
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err())?;
    let den: BigInt = den.parse().map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

/// Shorthand for the rational `n/d`. Panics on a zero denominator.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Bits needed for the larger of numerator and denominator.
pub fn bit_size(q: &Rational) -> u64 {
    q.numer().bits().max(q.denom().bits())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering_is_lowest_terms() {
        assert_eq!(ratio(6, -4).to_string(), "-3/2");
        assert_eq!(ratio(8, 4).to_string(), "2");
        assert_eq!(int(0).to_string(), "0");
    }

    #[test]
    fn parse_accepts_fractions_and_integers() {
        assert_eq!(parse_rational(" -5/9 ").unwrap(), ratio(-5, 9));
        assert_eq!(parse_rational("14").unwrap(), int(14));
        assert_eq!(parse_rational("6/-4").unwrap(), ratio(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1.5").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn primitive_vector() {
        let mut v = [ratio(6, 5), ratio(-3, 5), int(1)];
        primitive_integer_vector(&mut v);
        assert_eq!(v, [int(6), int(-3), int(5)]);
        let mut w = [int(0), int(-4), int(6)];
        primitive_integer_vector(&mut w);
        assert_eq!(w, [int(0), int(2), int(-3)]);
    }

    #[test]
    fn rational_square_roots() {
        assert_eq!(ratio(9, 4).sqrt_exact(), Some(ratio(3, 2)));
        assert_eq!(int(2).sqrt_exact(), None);
        assert_eq!(int(-4).sqrt_exact(), None);
        assert_eq!(int(0).sqrt_exact(), Some(int(0)));
    }
}
