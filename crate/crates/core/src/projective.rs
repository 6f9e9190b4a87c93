//! Points and lines of the projective plane in homogeneous coordinates.
//!
//! A [`Point`] keeps the representative it was built from; brackets are
//! evaluated on exactly that representative. Equality is projective equality
//! (proportional coordinates). Points at infinity (`z = 0`) are ordinary
//! points here and get no special treatment.
//!
//! The circular points `[1 : ±i : 0]` have no runtime representation since
//! inputs are restricted to rationals and real quadratic towers.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::{parse_rational, Field, Rational};

fn cross<F: Field>(a: &[F; 3], b: &[F; 3]) -> [F; 3] {
    [
        a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone(),
        a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone(),
        a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone(),
    ]
}

fn dot<F: Field>(a: &[F; 3], b: &[F; 3]) -> F {
    a[0].clone() * b[0].clone() + a[1].clone() * b[1].clone() + a[2].clone() * b[2].clone()
}

pub(crate) fn det3<F: Field>(a: &[F; 3], b: &[F; 3], c: &[F; 3]) -> F {
    dot(a, &cross(b, c))
}

fn is_zero_triple<F: Field>(v: &[F; 3]) -> bool {
    v.iter().all(Field::is_zero)
}

fn render_triple<F: Field>(v: &[F; 3], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut c = v.clone();
    F::canonicalize_vector(&mut c);
    write!(f, "[{} : {} : {}]", c[0], c[1], c[2])
}

fn parse_triple(kind: &'static str, text: &str) -> Result<[Rational; 3]> {
    let err = || Error::Parse {
        kind,
        text: text.to_string(),
    };
    let inner = text
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(err)?;
    let parts: Vec<&str> = inner.split(':').collect();
    if parts.len() != 3 {
        return Err(err());
    }
    Ok([
        parse_rational(parts[0]).map_err(|_| err())?,
        parse_rational(parts[1]).map_err(|_| err())?,
        parse_rational(parts[2]).map_err(|_| err())?,
    ])
}

macro_rules! homogeneous_triple {
    ($name:ident, $zero_err:expr, $kind:literal) => {
        impl<F: Field> $name<F> {
            /// Fails when every entry is zero.
            pub fn from_coords(coords: [F; 3]) -> Result<Self> {
                if is_zero_triple(&coords) {
                    return Err($zero_err);
                }
                Ok($name { coords })
            }

            pub fn new(a: F, b: F, c: F) -> Result<Self> {
                Self::from_coords([a, b, c])
            }

            /// The representative this value was built from.
            pub fn coords(&self) -> &[F; 3] {
                &self.coords
            }

            /// The canonical representative (a primitive integer triple over the rationals).
            pub fn canonical(&self) -> Self {
                let mut coords = self.coords.clone();
                F::canonicalize_vector(&mut coords);
                $name { coords }
            }

            /// Changes the scalar field, e.g. to embed into an extension.
            pub fn map_field<G: Field>(&self, f: impl Fn(F) -> G) -> $name<G> {
                let [a, b, c] = self.coords.clone();
                $name {
                    coords: [f(a), f(b), f(c)],
                }
            }

            pub(crate) fn reduced(mut coords: [F; 3]) -> Self {
                F::reduce_vector(&mut coords);
                $name { coords }
            }
        }

        impl<F: Field> PartialEq for $name<F> {
            fn eq(&self, other: &Self) -> bool {
                is_zero_triple(&cross(&self.coords, &other.coords))
            }
        }

        impl<F: Field> fmt::Display for $name<F> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                render_triple(&self.coords, f)
            }
        }

        impl FromStr for $name<Rational> {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                Self::from_coords(parse_triple($kind, s)?)
            }
        }

        impl $name<Rational> {
            pub fn from_ints(a: i64, b: i64, c: i64) -> Result<Self> {
                Self::new(crate::scalar::int(a), crate::scalar::int(b), crate::scalar::int(c))
            }
        }
    };
}

/// A point `[x : y : z]`.
#[derive(Clone, Debug)]
pub struct Point<F = Rational> {
    coords: [F; 3],
}

/// The line `a·x + b·y + c·z = 0`, stored as its coefficient triple (a point of the dual plane).
#[derive(Clone, Debug)]
pub struct Line<F = Rational> {
    coords: [F; 3],
}

homogeneous_triple!(Point, Error::InvalidPoint, "point");
homogeneous_triple!(Line, Error::InvalidLine, "line");

impl<F: Field> Point<F> {
    pub fn x(&self) -> &F {
        &self.coords[0]
    }
    pub fn y(&self) -> &F {
        &self.coords[1]
    }
    pub fn z(&self) -> &F {
        &self.coords[2]
    }

    pub fn is_at_infinity(&self) -> bool {
        self.coords[2].is_zero()
    }

    pub fn lies_on(&self, line: &Line<F>) -> bool {
        dot(&self.coords, &line.coords).is_zero()
    }

    /// The affine point `(x, y)`, i.e. `[x : y : 1]`.
    pub fn affine(x: F, y: F) -> Self {
        Point {
            coords: [x, y, F::one()],
        }
    }

    /// Affine coordinates, `None` at infinity.
    pub fn to_affine(&self) -> Option<(F, F)> {
        let inv = self.coords[2].inverse()?;
        Some((
            self.coords[0].clone() * inv.clone(),
            self.coords[1].clone() * inv,
        ))
    }
}

impl<F: Field> Line<F> {
    pub fn contains(&self, p: &Point<F>) -> bool {
        p.lies_on(self)
    }

    /// Reads the coefficient triple as a point of the dual plane.
    pub fn dual_point(&self) -> Point<F> {
        Point {
            coords: self.coords.clone(),
        }
    }

    pub fn from_dual_point(p: &Point<F>) -> Self {
        Line {
            coords: p.coords.clone(),
        }
    }

    /// `z = 0`.
    pub fn at_infinity() -> Self {
        Line {
            coords: [F::zero(), F::zero(), F::one()],
        }
    }
}

/// The unique canonical representative of the point with these coordinates.
pub fn canonicalize<F: Field>(coords: [F; 3]) -> Result<Point<F>> {
    Ok(Point::from_coords(coords)?.canonical())
}

/// The line through two distinct points.
pub fn join<F: Field>(p: &Point<F>, q: &Point<F>) -> Result<Line<F>> {
    let c = cross(&p.coords, &q.coords);
    if is_zero_triple(&c) {
        return Err(Error::DegenerateJoin {
            first: p.to_string(),
            second: q.to_string(),
        });
    }
    Ok(Line::reduced(c))
}

/// The common point of two distinct lines (possibly at infinity).
pub fn meet<F: Field>(l: &Line<F>, m: &Line<F>) -> Result<Point<F>> {
    let c = cross(&l.coords, &m.coords);
    if is_zero_triple(&c) {
        return Err(Error::DegenerateMeet {
            first: l.to_string(),
            second: m.to_string(),
        });
    }
    Ok(Point::reduced(c))
}

/// `[abc]`: the determinant with the three representatives as columns.
pub fn bracket<F: Field>(a: &Point<F>, b: &Point<F>, c: &Point<F>) -> F {
    det3(&a.coords, &b.coords, &c.coords)
}

pub fn collinear<F: Field>(a: &Point<F>, b: &Point<F>, c: &Point<F>) -> bool {
    bracket(a, b, c).is_zero()
}

pub fn concurrent<F: Field>(l: &Line<F>, m: &Line<F>, n: &Line<F>) -> bool {
    det3(&l.coords, &m.coords, &n.coords).is_zero()
}

/// `(A,B;C,D) = [OAC][OBD] / [OAD][OBC]` for collinear `a, b, c, d` seen from `o` off their line.
pub fn cross_ratio<F: Field>(
    a: &Point<F>,
    b: &Point<F>,
    c: &Point<F>,
    d: &Point<F>,
    o: &Point<F>,
) -> Result<F> {
    let pts = [a, b, c, d];
    for (i, j, k) in [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)] {
        if !collinear(pts[i], pts[j], pts[k]) {
            return Err(Error::CrossRatioUndefined(format!(
                "{}, {}, {} are not collinear",
                pts[i], pts[j], pts[k]
            )));
        }
    }
    let den = bracket(o, a, d) * bracket(o, b, c);
    if den.is_zero() {
        let on_line = pts
            .iter()
            .all(|p| pts.iter().all(|q| bracket(o, p, q).is_zero()));
        let reason = if on_line {
            format!("viewpoint {o} lies on the line of the four points")
        } else {
            "a denominator vanishes (A = D or B = C)".to_string()
        };
        return Err(Error::CrossRatioUndefined(reason));
    }
    let num = bracket(o, a, c) * bracket(o, b, d);
    Ok(num.checked_div(&den).expect("nonzero denominator"))
}

/// Point constructor for tests and examples; panics on the zero triple.
pub fn pt(x: Rational, y: Rational, z: Rational) -> Point {
    Point::new(x, y, z).expect("nonzero point")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn p(x: i64, y: i64, z: i64) -> Point {
        Point::from_ints(x, y, z).unwrap()
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(p(2, 4, 6).canonical().coords(), p(1, 2, 3).coords());
        assert_eq!(p(-3, 0, 0).canonical().coords(), p(1, 0, 0).coords());
        let q = pt(ratio(6, 5), ratio(-3, 5), int(1)).canonical();
        assert_eq!(q.coords(), p(6, -3, 5).coords());
        assert_eq!(q.to_string(), "[6 : -3 : 5]");
        assert_eq!(canonicalize([int(0), int(0), int(0)]).unwrap_err(), Error::InvalidPoint);
    }

    #[test]
    fn canonicalize_is_idempotent() {
        let q = pt(ratio(-7, 3), ratio(2, 9), int(0)).canonical();
        assert_eq!(q.canonical().coords(), q.coords());
    }

    #[test]
    fn join_of_axes_points_is_line_at_infinity() {
        let l = join(&p(1, 0, 0), &p(0, 1, 0)).unwrap();
        assert_eq!(l.coords(), Line::<Rational>::at_infinity().coords());
        assert!(matches!(join(&p(1, 2, 3), &p(2, 4, 6)), Err(Error::DegenerateJoin { .. })));
    }

    #[test]
    fn meet_of_axes() {
        let x0 = Line::from_ints(1, 0, 0).unwrap();
        let y0 = Line::from_ints(0, 1, 0).unwrap();
        assert_eq!(meet(&x0, &y0).unwrap().canonical().coords(), p(0, 0, 1).coords());
        assert!(matches!(meet(&x0, &x0), Err(Error::DegenerateMeet { .. })));
    }

    #[test]
    fn example_radical_axes_meet_in_p() {
        let a = Line::from_ints(10, -7, 18).unwrap();
        let b = Line::from_ints(2, -1, 10).unwrap();
        let m = meet(&a, &b).unwrap();
        assert_eq!(m, p(-13, -16, 1));
        assert_eq!(m.to_string(), "[13 : 16 : -1]");
    }

    #[test]
    fn example_join_p1_p2_contains_x() {
        let lp = join(&p(-10, 11, 1), &p(2, 5, 1)).unwrap();
        assert!(pt(ratio(12, 5), ratio(24, 5), int(1)).lies_on(&lp));
    }

    #[test]
    fn brackets() {
        assert_eq!(bracket(&p(1, 0, 0), &p(0, 1, 0), &p(0, 0, 1)), int(1));
        let a = p(3, -1, 2);
        let b = p(5, 7, 1);
        assert!(bracket(&a, &b, &a).is_zero());
        let p2 = p(2, 5, 1);
        let u = pt(ratio(11, 4), ratio(13, 2), int(1));
        let v = pt(ratio(1, 2), int(1), int(0));
        assert!(bracket(&p2, &u, &v).is_zero());
        assert!(collinear(&p2, &u, &v));
    }

    #[test]
    fn collinear_and_concurrent() {
        assert!(collinear(&p(0, 0, 1), &p(1, 1, 1), &p(2, 2, 1)));
        assert!(!collinear(&p(0, 0, 1), &p(1, 1, 1), &p(2, 3, 1)));
        let l = Line::from_ints(1, 0, 0).unwrap();
        let m = Line::from_ints(0, 1, 0).unwrap();
        let n = Line::from_ints(1, 1, 0).unwrap();
        assert!(concurrent(&l, &m, &n));
        assert!(!concurrent(&l, &m, &Line::from_ints(1, 1, 1).unwrap()));
    }

    #[test]
    fn cross_ratio_signed_distance_formula() {
        let o = p(0, 1, 0);
        let cr = cross_ratio(&p(0, 0, 1), &p(1, 0, 1), &p(2, 0, 1), &p(3, 0, 1), &o).unwrap();
        // |AC||BD| / |AD||BC| = (2·2)/(3·1)
        assert_eq!(cr, ratio(4, 3));
    }

    #[test]
    fn harmonic_examples() {
        let o = p(0, 1, 0);
        let x = |v: i64| p(v, 0, 1);
        assert_eq!(cross_ratio(&x(-1), &x(1), &x(3), &p(1, 0, 3), &o).unwrap(), int(-1));
        let inf = p(1, 0, 0);
        assert_eq!(cross_ratio(&x(0), &x(2), &x(1), &inf, &o).unwrap(), int(-1));
    }

    #[test]
    fn cross_ratio_errors() {
        let on_line = p(5, 0, 1);
        let x = |v: i64| p(v, 0, 1);
        assert!(cross_ratio(&x(0), &x(1), &x(2), &x(3), &on_line).is_err());
        assert!(cross_ratio(&x(0), &x(1), &p(2, 1, 1), &x(3), &p(0, 1, 0)).is_err());
        assert!(cross_ratio(&x(0), &x(1), &x(1), &x(3), &p(0, 1, 0)).is_err());
    }

    #[test]
    fn parse_round_trip() {
        let q: Point = "[6 : -3 : 5]".parse().unwrap();
        assert_eq!(q, pt(ratio(6, 5), ratio(-3, 5), int(1)));
        let l: Line = "[2:-1:1]".parse().unwrap();
        assert_eq!(l.to_string(), "[2 : -1 : 1]");
        assert!("[1 : 2]".parse::<Point>().is_err());
        assert!("[0 : 0 : 0]".parse::<Point>().is_err());
    }
}
