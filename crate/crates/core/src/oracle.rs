//! Brute-force ground truth, independent of the straightedge code paths.
//!
//! Membership tests are determinants of monomial evaluation matrices. The
//! classical product theorems (Carnot, Menelaus, power of a point) are
//! evaluated with signed ratios in an affine chart.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::conics::{conic_monomials, line_conic_intersections_ext, Conic};
use crate::error::{Error, Result};
use crate::linalg::{determinant, nullspace};
use crate::projective::{collinear, join, meet, Line, Point};
use crate::scalar::{Field, Rational};
use crate::transform::ProjectiveMap;

/// Degree-3 monomials in the order `x³, x²y, x²z, xy², xyz, xz², y³, y²z, yz², z³`.
pub fn cubic_monomials<F: Field>(p: &Point<F>) -> [F; 10] {
    let [x, y, z] = p.coords().clone();
    let m = |a: &F, b: &F, c: &F| a.clone() * b.clone() * c.clone();
    [
        m(&x, &x, &x),
        m(&x, &x, &y),
        m(&x, &x, &z),
        m(&x, &y, &y),
        m(&x, &y, &z),
        m(&x, &z, &z),
        m(&y, &y, &y),
        m(&y, &y, &z),
        m(&y, &z, &z),
        m(&z, &z, &z),
    ]
}

fn check_distinct<F: Field>(points: &[Point<F>]) -> Result<()> {
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[i] == points[j] {
                return Err(Error::DuplicatePoints(i + 1, j + 1));
            }
        }
    }
    Ok(())
}

/// Determinant of the 10×10 monomial matrix; zero exactly when a cubic passes through all ten.
pub fn cubic_det(points: &[Point; 10]) -> Result<Rational> {
    check_distinct(points)?;
    Ok(determinant(
        points.iter().map(|p| cubic_monomials(p).to_vec()).collect(),
    ))
}

/// Determinant of the 6×6 monomial matrix; zero exactly when the six lie on a conic.
pub fn conic_six_det<F: Field>(points: &[Point<F>; 6]) -> Result<F> {
    check_distinct(points)?;
    Ok(determinant(
        points.iter().map(|p| conic_monomials(p).to_vec()).collect(),
    ))
}

#[derive(Clone, Debug, PartialEq)]
pub struct CubicForm {
    coeffs: [Rational; 10],
}

impl CubicForm {
    pub fn new(mut coeffs: [Rational; 10]) -> Result<Self> {
        if coeffs.iter().all(Field::is_zero) {
            return Err(Error::CubicNotUnique);
        }
        Rational::canonicalize_vector(&mut coeffs);
        Ok(CubicForm { coeffs })
    }

    pub fn coefficients(&self) -> &[Rational; 10] {
        &self.coeffs
    }

    pub fn evaluate(&self, p: &Point) -> Rational {
        self.coeffs
            .iter()
            .zip(cubic_monomials(p))
            .fold(Rational::zero(), |acc, (c, m)| acc + c * m)
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.evaluate(p).is_zero()
    }
}

impl fmt::Display for CubicForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const MONOMIALS: [&str; 10] = ["x³", "x²y", "x²z", "xy²", "xyz", "xz²", "y³", "y²z", "yz²", "z³"];
        let mut first = true;
        for (c, m) in self.coeffs.iter().zip(MONOMIALS) {
            if c.is_zero() {
                continue;
            }
            let text = c.to_string();
            match (first, text.strip_prefix('-')) {
                (true, _) => write!(f, "{text}·{m}")?,
                (false, Some(abs)) => write!(f, " - {abs}·{m}")?,
                (false, None) => write!(f, " + {text}·{m}")?,
            }
            first = false;
        }
        write!(f, " = 0")
    }
}

/// The unique cubic through nine points.
pub fn fit_cubic(points: &[Point; 9]) -> Result<CubicForm> {
    check_distinct(points)?;
    let mut basis = nullspace(points.iter().map(|p| cubic_monomials(p).to_vec()).collect(), 10);
    if basis.len() != 1 {
        return Err(Error::CubicNotUnique);
    }
    let v = basis.pop().expect("one vector");
    CubicForm::new(std::array::from_fn(|i| v[i].clone()))
}

/// The third point where the line `ab` meets the cubic. Tangency at `b`
/// returns `b`, tangency at `a` returns `a`.
pub fn third_intersection(cubic: &CubicForm, a: &Point, b: &Point) -> Result<Point> {
    for p in [a, b] {
        if !cubic.contains(p) {
            return Err(Error::NotOnConic(format!("{p} is not on the cubic")));
        }
    }
    let line = join(a, b)?;
    // f(s, t) = F(s·a + t·b) = s t (β s + γ t) since f(1,0) = f(0,1) = 0.
    let f = |s: i64, t: i64| {
        let c: [Rational; 3] = std::array::from_fn(|i| {
            Rational::from_int(s) * a.coords()[i].clone() + Rational::from_int(t) * b.coords()[i].clone()
        });
        cubic.evaluate(&Point::from_coords(c).expect("a ≠ b"))
    };
    let (plus, minus) = (f(1, 1), f(1, -1));
    let two = Rational::from_int(2);
    let beta = (plus.clone() - minus.clone()) / two.clone();
    let gamma = (plus + minus) / two;
    if beta.is_zero() && gamma.is_zero() {
        return Err(Error::LineIsComponent(line.to_string()));
    }
    let c: [Rational; 3] =
        std::array::from_fn(|i| gamma.clone() * a.coords()[i].clone() - beta.clone() * b.coords()[i].clone());
    Point::from_coords(c.clone())?;
    Ok(Point::reduced(c))
}

/// A rational map sending every given point off the line at infinity; the
/// identity if none is at infinity.
pub fn finite_chart<F: Field>(points: &[&Point<F>]) -> Result<ProjectiveMap<F>> {
    for k in 0i64..64 {
        let (a, b) = (k % 8 - 3, k / 8 - 3);
        let (a, b) = if k == 0 { (0, 0) } else { (a, b) };
        let m = ProjectiveMap::new([
            [F::one(), F::zero(), F::zero()],
            [F::zero(), F::one(), F::zero()],
            [F::from_int(a), F::from_int(b), F::one()],
        ])?;
        if points.iter().all(|p| !m.apply(p).is_at_infinity()) {
            return Ok(m);
        }
    }
    Err(Error::ChartFailure)
}

/// Coordinate along a finite line: `x/z` unless the line is vertical, then `y/z`.
fn along<F: Field>(line: &Line<F>, p: &Point<F>) -> F {
    let z = p.z().inverse().expect("finite point");
    if line.coords()[1].is_zero() {
        p.y().clone() * z
    } else {
        p.x().clone() * z
    }
}

/// `|PQ| / |RS|` for four finite points on `line`, as signed displacements.
fn ratio_on<F: Field>(line: &Line<F>, [p, q, r, s]: [&Point<F>; 4]) -> Result<F> {
    let num = along(line, q) - along(line, p);
    let den = along(line, s) - along(line, r);
    num.checked_div(&den)
        .ok_or_else(|| Error::SideAssignment(format!("{r} and {s} coincide")))
}

fn triangle_vertices<F: Field>(sides: &[Line<F>; 3]) -> Result<[Point<F>; 3]> {
    let a = meet(&sides[1], &sides[2])?;
    let b = meet(&sides[2], &sides[0])?;
    let c = meet(&sides[0], &sides[1])?;
    if a == b || b == c || a == c {
        return Err(Error::SideAssignment("the three sides are concurrent".into()));
    }
    Ok([a, b, c])
}

/// Carnot's criterion. `sides[i]` is the side opposite vertex `i` (vertices
/// `A = b∩c`, `B = c∩a`, `C = a∩b`) and `residual[i]` are the two points on it.
/// True when
/// `(Ba₁·Ba₂)/(Ca₁·Ca₂) · (Cb₁·Cb₂)/(Ab₁·Ab₂) · (Ac₁·Ac₂)/(Bc₁·Bc₂) = 1`.
pub fn carnot_check<F: Field>(sides: &[Line<F>; 3], residual: &[[Point<F>; 2]; 3]) -> Result<bool> {
    let vertices = triangle_vertices(sides)?;
    for (i, pair) in residual.iter().enumerate() {
        for p in pair {
            if !sides[i].contains(p) {
                return Err(Error::SideAssignment(format!("{p} is not on side {}", i + 1)));
            }
            if vertices.contains(p) {
                return Err(Error::SideAssignment(format!("{p} is a vertex")));
            }
        }
    }
    let mut all: Vec<&Point<F>> = vertices.iter().collect();
    all.extend(residual.iter().flatten());
    let chart = finite_chart(&all)?;
    let v = vertices.clone().map(|p| chart.apply(&p));
    let s = sides.clone().map(|l| chart.apply_line(&l));
    let r = residual.clone().map(|pair| pair.map(|p| chart.apply(&p)));
    let mut product = F::one();
    // Side i runs from vertex i+1 to vertex i+2.
    for i in 0..3 {
        let (from, to) = (&v[(i + 1) % 3], &v[(i + 2) % 3]);
        for p in &r[i] {
            product = product * ratio_on(&s[i], [from, p, to, p])?;
        }
    }
    Ok(product == F::one())
}

/// Menelaus's criterion for triangle `ABC` and points `D ∈ BC`, `E ∈ CA`, `F ∈ AB`:
/// true when `(BD/DC)(CE/EA)(AF/FB) = -1`.
pub fn menelaus_check<F: Field>(triangle: &[Point<F>; 3], cut: &[Point<F>; 3]) -> Result<bool> {
    let [a, b, c] = triangle;
    if collinear(a, b, c) {
        return Err(Error::SideAssignment("the triangle is degenerate".into()));
    }
    let sides = [join(b, c)?, join(c, a)?, join(a, b)?];
    for (i, p) in cut.iter().enumerate() {
        if !sides[i].contains(p) {
            return Err(Error::SideAssignment(format!("{p} is not on side {}", i + 1)));
        }
        if triangle.contains(p) {
            return Err(Error::SideAssignment(format!("{p} is a vertex")));
        }
    }
    let mut all: Vec<&Point<F>> = triangle.iter().collect();
    all.extend(cut.iter());
    let chart = finite_chart(&all)?;
    let t = triangle.clone().map(|p| chart.apply(&p));
    let d = cut.clone().map(|p| chart.apply(&p));
    let s = sides.map(|l| chart.apply_line(&l));
    let mut product = F::one();
    for i in 0..3 {
        let (from, to) = (&t[(i + 1) % 3], &t[(i + 2) % 3]);
        product = product * ratio_on(&s[i], [from, &d[i], &d[i], to])?;
    }
    Ok(product == -F::one())
}

/// Center `(x₀, y₀)` and squared radius of a circle `(x - x₀z)² + (y - y₀z)² - r²z²`.
pub fn circle_parameters(circle: &Conic) -> Result<(Rational, Rational, Rational)> {
    let [a, b, c, d, e, f] = circle.coefficients().clone();
    if !b.is_zero() || a != c || a.is_zero() {
        return Err(Error::NotACircle(circle.to_string()));
    }
    let two_a = Rational::from_int(2) * a.clone();
    let x0 = -d / two_a.clone();
    let y0 = -e / two_a;
    let r2 = x0.clone() * x0.clone() + y0.clone() * y0.clone() - f / a;
    if r2 <= Rational::zero() {
        return Err(Error::NotACircle(format!("{circle} has no real points")));
    }
    Ok((x0, y0, r2))
}

/// `|XO|² - r²` for a finite point `X` and a circle with center `O`.
pub fn power_of_point(x: &Point, circle: &Conic) -> Result<Rational> {
    let (x0, y0, r2) = circle_parameters(circle)?;
    let (px, py) = x
        .to_affine()
        .ok_or_else(|| Error::NotACircle(format!("{x} is at infinity")))?;
    let (dx, dy) = (px - x0, py - y0);
    Ok(dx.clone() * dx + dy.clone() * dy - r2)
}

fn squared_distance(p: &(Rational, Rational), q: &(Rational, Rational)) -> Rational {
    let (dx, dy) = (q.0.clone() - p.0.clone(), q.1.clone() - p.1.clone());
    dx.clone() * dx + dy.clone() * dy
}

/// Checks `|XA|·|XB| = POP(X)` for a secant through `x` meeting the circle in
/// `a` and `b`: the squared distances multiply to the square of the power, and
/// `A`, `B` lie on the same side of `X` exactly when the power is positive.
pub fn secant_check(x: &Point, circle: &Conic, a: &Point, b: &Point) -> Result<bool> {
    let value = power_of_point(x, circle)?;
    for p in [a, b] {
        if !circle.contains(p) {
            return Err(Error::NotOnConic(p.to_string()));
        }
    }
    if !collinear(x, a, b) {
        return Err(Error::SideAssignment("the secant points are not collinear".into()));
    }
    let affine = |p: &Point| p.to_affine().ok_or(Error::ChartFailure);
    let (xa, aa, ba) = (affine(x)?, affine(a)?, affine(b)?);
    let squared = squared_distance(&xa, &aa) * squared_distance(&xa, &ba);
    // Signed positions along the secant, measured on whichever axis it is not parallel to.
    let line = if a != x { join(x, a)? } else { join(x, b)? };
    let t = |p: &Point| along(&line, p);
    let signed = (t(a) - t(x)) * (t(b) - t(x));
    let sign_ok = match (signed.is_zero(), value.is_zero()) {
        (true, true) => true,
        (false, false) => (signed > Rational::zero()) == (value > Rational::zero()),
        _ => false,
    };
    Ok(squared == value.clone() * value && sign_ok)
}

/// Both points where `line` meets the circle, if they are rational.
pub fn rational_chord(circle: &Conic, line: &Line) -> Result<Option<[Point; 2]>> {
    let pts = line_conic_intersections_ext(circle, line)?;
    let base = |p: &Point<crate::Quad<Rational>>| -> Option<Point> {
        let c = p.coords();
        if c.iter().all(|v| v.is_base()) {
            Point::from_coords(c.clone().map(|v| v.base().clone())).ok()
        } else {
            None
        }
    };
    Ok(match (base(&pts[0]), base(&pts[1])) {
        (Some(a), Some(b)) => Some([a, b]),
        _ => None,
    })
}

const GENERATION_ATTEMPTS: usize = 100;

fn random_point(rng: &mut ChaCha8Rng) -> Point {
    let x: i64 = rng.random_range(-20..=20);
    let y: i64 = rng.random_range(-20..=20);
    Point::from_ints(x, y, 1).expect("z = 1")
}

/// Ten points, either on a common cubic or (with overwhelming likelihood
/// checked by evaluation) not.
pub fn generate_instance(on_cubic: bool, seed: u64) -> Result<[Point; 10]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..GENERATION_ATTEMPTS {
        let mut nine: Vec<Point> = Vec::with_capacity(9);
        while nine.len() < 9 {
            let p = random_point(&mut rng);
            if !nine.contains(&p) {
                nine.push(p);
            }
        }
        let nine: [Point; 9] = nine.try_into().expect("nine");
        let Ok(cubic) = fit_cubic(&nine) else { continue };
        let i = rng.random_range(0..9);
        let j = (i + rng.random_range(1..9)) % 9;
        let Ok(tenth) = third_intersection(&cubic, &nine[i], &nine[j]) else {
            continue;
        };
        if nine.contains(&tenth) {
            continue;
        }
        let tenth = if on_cubic {
            tenth
        } else {
            let p = random_point(&mut rng);
            if nine.contains(&p) || cubic.contains(&p) {
                continue;
            }
            p
        };
        let mut all = nine.to_vec();
        all.push(tenth);
        return Ok(all.try_into().expect("ten"));
    }
    Err(Error::GenerationExhausted(GENERATION_ATTEMPTS))
}
