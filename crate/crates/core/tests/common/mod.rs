//! Seeded generators shared by the property tests and the acceptance run.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use straightedge::conics::{fit_conic, Conic};
use straightedge::transform::ProjectiveMap;
use straightedge::{collinear, join, Field, Line, Point, Rational};

pub struct Gen(ChaCha8Rng);

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.0.random_range(lo..=hi)
    }

    pub fn nonzero(&mut self, bound: i64) -> i64 {
        loop {
            let n = self.int(-bound, bound);
            if n != 0 {
                return n;
            }
        }
    }

    pub fn rational(&mut self, bound: i64) -> Rational {
        let n = self.int(-bound, bound);
        let d = self.int(1, bound);
        Rational::new(n.into(), d.into())
    }

    /// Finite most of the time, occasionally at infinity.
    pub fn point(&mut self) -> Point {
        let x = self.int(-20, 20);
        let y = self.int(-20, 20);
        let z = if self.int(0, 9) == 0 { 0 } else { self.int(1, 3) };
        Point::from_ints(x, y, z).unwrap_or_else(|_| Point::from_ints(1, 0, 0).unwrap())
    }

    pub fn finite_point(&mut self) -> Point {
        Point::from_ints(self.int(-20, 20), self.int(-20, 20), self.int(1, 3)).unwrap()
    }

    /// `s·a + t·b` with small nonzero `s, t`: a point of line `ab` other than `a` and `b`.
    pub fn on_line(&mut self, a: &Point, b: &Point) -> Option<Point> {
        let (s, t) = (Rational::from_int(self.nonzero(5)), Rational::from_int(self.nonzero(5)));
        let c: [Rational; 3] =
            std::array::from_fn(|i| s.clone() * a.coords()[i].clone() + t.clone() * b.coords()[i].clone());
        Point::from_coords(c).ok().map(|p| p.canonical())
    }

    /// `n` distinct points, no three collinear.
    pub fn general<const N: usize>(&mut self) -> [Point; N] {
        loop {
            let pts: [Point; N] = std::array::from_fn(|_| self.point());
            if in_general_position(&pts) {
                return pts;
            }
        }
    }

    pub fn map(&mut self) -> ProjectiveMap {
        loop {
            let m = std::array::from_fn(|_| std::array::from_fn(|_| self.rational(6)));
            if let Ok(map) = ProjectiveMap::new(m) {
                return map;
            }
        }
    }

    pub fn irreducible_conic(&mut self) -> Conic {
        loop {
            let five: [Point; 5] = self.general();
            if let Ok(c) = fit_conic(&five) {
                if c.is_irreducible() {
                    return c;
                }
            }
        }
    }
}

pub fn in_general_position(pts: &[Point]) -> bool {
    let n = pts.len();
    for i in 0..n {
        for j in i + 1..n {
            if pts[i] == pts[j] {
                return false;
            }
            for k in j + 1..n {
                if collinear(&pts[i], &pts[j], &pts[k]) {
                    return false;
                }
            }
        }
    }
    true
}

/// Second point of `c` on the line through `p ∈ c` and `d`, from
/// `G(p + s·d) = 2s·B(p, d) + s²·G(d)`. Independent of the straightedge code.
pub fn conic_point(c: &Conic, p: &Point, d: &Point) -> Option<Point> {
    let m = c.matrix();
    let (pc, dc) = (p.coords(), d.coords());
    let mut b2 = Rational::zero();
    for i in 0..3 {
        for j in 0..3 {
            b2 += pc[i].clone() * m[i][j].clone() * dc[j].clone();
        }
    }
    let gd = c.evaluate(d);
    // The matrix is doubled, so b2 = 2·B(p, d) and the root is s = -b2 / G(d).
    let coords: [Rational; 3] =
        std::array::from_fn(|i| gd.clone() * pc[i].clone() - b2.clone() * dc[i].clone());
    Point::from_coords(coords).ok().map(|q| q.canonical())
}

/// Two conics through `u, v, a, b` whose defining points avoid `a` and `b`.
pub struct PencilPair {
    pub c1: Conic,
    pub c2: Conic,
    pub u: Point,
    pub v: Point,
    pub axis: Line,
}

pub fn pencil_pair(g: &mut Gen) -> Option<PencilPair> {
    let [u, v, a, b, e1, e2]: [Point; 6] = g.general();
    let refit = |g: &mut Gen, extra: &Point| -> Option<Conic> {
        let full = fit_conic(&[u.clone(), v.clone(), a.clone(), b.clone(), extra.clone()]).ok()?;
        if !full.is_irreducible() {
            return None;
        }
        let x = conic_point(&full, extra, &g.point())?;
        let y = conic_point(&full, extra, &g.point())?;
        let five = [u.clone(), v.clone(), extra.clone(), x, y];
        if !in_general_position(&five) {
            return None;
        }
        fit_conic(&five).ok()
    };
    let c1 = refit(g, &e1)?;
    let c2 = refit(g, &e2)?;
    if c1.same_curve(&c2) || !c1.contains(&a) || !c2.contains(&b) {
        return None;
    }
    let axis = join(&a, &b).ok()?;
    Some(PencilPair { c1, c2, u, v, axis })
}

pub fn zero() -> Rational {
    Rational::zero()
}

/// A triangle with two points on each side, on a common conic when `on` holds.
pub struct CarnotCase {
    pub sides: [Line; 3],
    pub residual: [[Point; 2]; 3],
    pub six: [Point; 6],
}

pub fn carnot_case(g: &mut Gen, on: bool) -> Option<CarnotCase> {
    let [a, b, c] = g.general::<3>();
    let a1 = g.on_line(&b, &c)?;
    let a2 = g.on_line(&b, &c)?;
    let b1 = g.on_line(&c, &a)?;
    let b2 = g.on_line(&c, &a)?;
    let c1 = g.on_line(&a, &b)?;
    let c2 = if on {
        let conic = fit_conic(&[a1.clone(), a2.clone(), b1.clone(), b2.clone(), c1.clone()]).ok()?;
        conic_point(&conic, &c1, &a)?
    } else {
        g.on_line(&a, &b)?
    };
    let six = [a1, a2, b1, b2, c1, c2];
    let vertices = [a.clone(), b.clone(), c.clone()];
    for (i, p) in six.iter().enumerate() {
        if vertices.contains(p) || six[..i].contains(p) {
            return None;
        }
    }
    let sides = [join(&b, &c).ok()?, join(&c, &a).ok()?, join(&a, &b).ok()?];
    let [a1, a2, b1, b2, c1, c2] = six.clone();
    Some(CarnotCase {
        sides,
        residual: [[a1, a2], [b1, b2], [c1, c2]],
        six,
    })
}

/// A triangle and one point on each side (`D ∈ BC, E ∈ CA, F ∈ AB`), collinear when `on` holds.
pub fn menelaus_case(g: &mut Gen, on: bool) -> Option<([Point; 3], [Point; 3])> {
    let [a, b, c] = g.general::<3>();
    let d = g.on_line(&b, &c)?;
    let e = g.on_line(&c, &a)?;
    let f = if on {
        straightedge::meet(&join(&d, &e).ok()?, &join(&a, &b).ok()?).ok()?
    } else {
        g.on_line(&a, &b)?
    };
    let tri = [a, b, c];
    if [&d, &e, &f].iter().any(|p| tri.contains(p)) {
        return None;
    }
    Some((tri, [d, e, f]))
}

/// A circle through a known rational point.
pub fn circle(g: &mut Gen) -> (Conic, Point) {
    loop {
        let (x0, y0) = (g.int(-10, 10), g.int(-10, 10));
        let (dx, dy) = (g.int(-8, 8), g.int(-8, 8));
        if (dx, dy) == (0, 0) {
            continue;
        }
        let r2 = dx * dx + dy * dy;
        let coeffs = [1, 0, 1, -2 * x0, -2 * y0, x0 * x0 + y0 * y0 - r2].map(Rational::from_int);
        let c = Conic::from_coefficients(coeffs).unwrap();
        return (c, Point::from_ints(x0 + dx, y0 + dy, 1).unwrap());
    }
}

/// A finite point and the two rational points where a line through it meets the circle.
pub fn secant(g: &mut Gen, c: &Conic, p0: &Point) -> Option<(Point, Point, Point)> {
    let x = g.finite_point();
    let a = conic_point(c, p0, &g.point())?;
    if a == x {
        return None;
    }
    let b = conic_point(c, &a, &x)?;
    Some((x, a, b))
}
