//! Quadratic extensions `F(√r)` and towers of them.
//!
//! An element is `base + coeff·√radicand`. Elements that happen to lie in the
//! base field carry no radicand and mix freely with any extension of it.
//! Mixing two different radicands is a programming error and panics.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{Field, Rational, SqrtField, MAX_TOWER_DEPTH};

#[derive(Clone, Debug)]
pub struct Quad<F> {
    base: F,
    coeff: F,
    radicand: Option<F>,
}

impl<F: Field> Quad<F> {
    /// Embeds a base-field element.
    pub fn from_base(x: F) -> Self {
        Quad {
            base: x,
            coeff: F::zero(),
            radicand: None,
        }
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn coeff(&self) -> &F {
        &self.coeff
    }

    pub fn radicand(&self) -> Option<&F> {
        self.radicand.as_ref()
    }

    /// True when the value lies in the base field.
    pub fn is_base(&self) -> bool {
        self.coeff.is_zero()
    }

    /// `base - coeff·√radicand`.
    pub fn conjugate(&self) -> Self {
        Quad {
            base: self.base.clone(),
            coeff: -self.coeff.clone(),
            radicand: self.radicand.clone(),
        }
    }

    fn merged(a: &Option<F>, b: &Option<F>) -> Option<F> {
        match (a, b) {
            (Some(x), Some(y)) => {
                assert!(x == y, "mixing elements of F(√{x}) and F(√{y})");
                Some(x.clone())
            }
            (Some(x), None) | (None, Some(x)) => Some(x.clone()),
            (None, None) => None,
        }
    }
}

impl<F: SqrtField> Quad<F> {
    /// The square root of `d`, collapsing to the base field when `d` is already a square there.
    pub fn sqrt_of(d: &F) -> Result<Self> {
        if Self::DEPTH > MAX_TOWER_DEPTH {
            return Err(Error::TowerTooDeep {
                max: MAX_TOWER_DEPTH,
            });
        }
        Ok(match d.sqrt_exact() {
            Some(s) => Quad::from_base(s),
            None => Quad {
                base: F::zero(),
                coeff: F::one(),
                radicand: Some(d.clone()),
            },
        })
    }

    /// Builds `base + coeff·√radicand`, rejecting radicands that are squares in `F`.
    pub fn new(base: F, coeff: F, radicand: F) -> Result<Self> {
        if Self::DEPTH > MAX_TOWER_DEPTH {
            return Err(Error::TowerTooDeep {
                max: MAX_TOWER_DEPTH,
            });
        }
        if radicand.sqrt_exact().is_some() {
            return Err(Error::ParseScalar(format!(
                "radicand {radicand} is a square in the base field"
            )));
        }
        Ok(Quad {
            base,
            coeff,
            radicand: Some(radicand),
        })
    }
}

impl<F: Field> PartialEq for Quad<F> {
    fn eq(&self, other: &Self) -> bool {
        if self.base != other.base || self.coeff != other.coeff {
            return false;
        }
        self.coeff.is_zero() || self.radicand == other.radicand
    }
}

impl<F: Field> Add for Quad<F> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Quad {
            radicand: Self::merged(&self.radicand, &rhs.radicand),
            base: self.base + rhs.base,
            coeff: self.coeff + rhs.coeff,
        }
    }
}

impl<F: Field> Sub for Quad<F> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<F: Field> Neg for Quad<F> {
    type Output = Self;
    fn neg(self) -> Self {
        Quad {
            base: -self.base,
            coeff: -self.coeff,
            radicand: self.radicand,
        }
    }
}

impl<F: Field> Mul for Quad<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let radicand = Self::merged(&self.radicand, &rhs.radicand);
        let mut base = self.base.clone() * rhs.base.clone();
        if let Some(r) = &radicand {
            if !self.coeff.is_zero() && !rhs.coeff.is_zero() {
                base = base + self.coeff.clone() * rhs.coeff.clone() * r.clone();
            }
        }
        Quad {
            base,
            coeff: self.base * rhs.coeff + self.coeff * rhs.base,
            radicand,
        }
    }
}

impl<F: Field> Field for Quad<F> {
    const DEPTH: usize = F::DEPTH + 1;

    fn zero() -> Self {
        Quad::from_base(F::zero())
    }
    fn one() -> Self {
        Quad::from_base(F::one())
    }
    fn is_zero(&self) -> bool {
        self.base.is_zero() && self.coeff.is_zero()
    }
    fn inverse(&self) -> Option<Self> {
        match &self.radicand {
            Some(r) if !self.coeff.is_zero() => {
                let norm = self.base.clone() * self.base.clone()
                    - self.coeff.clone() * self.coeff.clone() * r.clone();
                let inv = norm.inverse()?;
                Some(Quad {
                    base: self.base.clone() * inv.clone(),
                    coeff: -(self.coeff.clone() * inv),
                    radicand: self.radicand.clone(),
                })
            }
            _ => Some(Quad {
                base: self.base.inverse()?,
                coeff: F::zero(),
                radicand: self.radicand.clone(),
            }),
        }
    }
    fn from_rational(q: Rational) -> Self {
        Quad::from_base(F::from_rational(q))
    }
}

impl<F: SqrtField> SqrtField for Quad<F> {
    fn sqrt_exact(&self) -> Option<Self> {
        let from = |base: F, coeff: F| Quad {
            base,
            coeff,
            radicand: self.radicand.clone(),
        };
        let Some(r) = self.radicand.clone().filter(|_| !self.coeff.is_zero()) else {
            // Pure base element: either a base square or base·r is a square.
            if let Some(s) = self.base.sqrt_exact() {
                return Some(from(s, F::zero()));
            }
            let r = self.radicand.clone()?;
            let t = self.base.checked_div(&r)?.sqrt_exact()?;
            return Some(from(F::zero(), t));
        };
        // (s + t√r)² = p + q√r  ⇔  s² + t²r = p, 2st = q.
        let p = self.base.clone();
        let q = self.coeff.clone();
        let n = (p.clone() * p.clone() - q.clone() * q.clone() * r.clone()).sqrt_exact()?;
        let two = F::from_int(2);
        for cand in [p.clone() + n.clone(), p.clone() - n.clone()] {
            let Some(s2) = cand.checked_div(&two) else { continue };
            let Some(s) = s2.sqrt_exact() else { continue };
            let Some(t) = q.checked_div(&(two.clone() * s.clone())) else { continue };
            let root = from(s, t);
            if root.clone() * root.clone() == *self {
                return Some(root);
            }
        }
        None
    }
}

impl<F: Field> fmt::Display for Quad<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.radicand {
            Some(r) if !self.coeff.is_zero() => {
                write!(f, "({}) + ({})·√({})", self.base, self.coeff, r)
            }
            _ => write!(f, "{}", self.base),
        }
    }
}

/// `Q(√a)`.
pub type Quadratic = Quad<Rational>;
/// `Q(√a)(√b)`, the deepest tower supported.
pub type Biquadratic = Quad<Quad<Rational>>;
