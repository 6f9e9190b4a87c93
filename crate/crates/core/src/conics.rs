//! Conics `a·x² + b·xy + c·y² + d·xz + e·yz + f·z² = 0`.
//!
//! A fitted conic remembers the points it was fitted through: membership and
//! the oracles use the coefficients, the straightedge constructions only ever
//! use the points.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{determinant, nullspace};
use crate::projective::{collinear, join, meet, Line, Point};
use crate::quadratic::Quad;
use crate::scalar::{Field, Rational, SqrtField};

/// Degree-2 monomials in the coefficient order `x², xy, y², xz, yz, z²`.
pub fn conic_monomials<F: Field>(p: &Point<F>) -> [F; 6] {
    let [x, y, z] = p.coords().clone();
    [
        x.clone() * x.clone(),
        x.clone() * y.clone(),
        y.clone() * y.clone(),
        x * z.clone(),
        y * z.clone(),
        z.clone() * z,
    ]
}

#[derive(Clone, Debug)]
pub struct Conic<F = Rational> {
    coeffs: [F; 6],
    points: Vec<Point<F>>,
}

impl<F: Field> Conic<F> {
    /// A conic given by its equation alone; it has no defining points, so the
    /// straightedge constructions cannot use it.
    pub fn from_coefficients(coeffs: [F; 6]) -> Result<Self> {
        Self::with_points(coeffs, Vec::new())
    }

    /// Equation plus defining points; every point must satisfy the equation.
    pub fn with_points(mut coeffs: [F; 6], points: Vec<Point<F>>) -> Result<Self> {
        if coeffs.iter().all(Field::is_zero) {
            return Err(Error::ZeroConic);
        }
        F::canonicalize_vector(&mut coeffs);
        let conic = Conic { coeffs, points };
        if let Some(p) = conic.points.iter().find(|p| !conic.contains(p)) {
            return Err(Error::NotOnConic(p.to_string()));
        }
        Ok(conic)
    }

    pub fn coefficients(&self) -> &[F; 6] {
        &self.coeffs
    }

    pub fn defining_points(&self) -> &[Point<F>] {
        &self.points
    }

    pub fn evaluate(&self, p: &Point<F>) -> F {
        self.coeffs
            .iter()
            .zip(conic_monomials(p))
            .fold(F::zero(), |acc, (c, m)| acc + c.clone() * m)
    }

    pub fn contains(&self, p: &Point<F>) -> bool {
        self.evaluate(p).is_zero()
    }

    /// Symmetric matrix `S` with `G(v) = vᵀ S v`, scaled by two to stay integral.
    pub fn matrix(&self) -> [[F; 3]; 3] {
        let [a, b, c, d, e, f] = self.coeffs.clone();
        let two = F::from_int(2);
        [
            [two.clone() * a, b.clone(), d.clone()],
            [b, two.clone() * c, e.clone()],
            [d, e, two * f],
        ]
    }

    /// Nonzero determinant of the symmetric matrix: the form does not split into two lines.
    pub fn is_irreducible(&self) -> bool {
        let m = self.matrix();
        !determinant(m.iter().map(|r| r.to_vec()).collect()).is_zero()
    }

    /// Same curve: proportional coefficient vectors.
    pub fn same_curve(&self, other: &Self) -> bool {
        let (a, b) = (&self.coeffs, &other.coeffs);
        (0..6).all(|i| {
            (i + 1..6).all(|j| (a[i].clone() * b[j].clone() - a[j].clone() * b[i].clone()).is_zero())
        })
    }

    /// The polar bilinear form `B(p, q)`, with `B(p, p) = G(p)`, doubled.
    fn polar2(&self, p: &[F; 3], q: &[F; 3]) -> F {
        let m = self.matrix();
        (0..3).fold(F::zero(), |acc, i| {
            (0..3).fold(acc, |acc, j| acc + p[i].clone() * m[i][j].clone() * q[j].clone())
        })
    }

    pub fn map_field<G: Field>(&self, f: impl Fn(F) -> G + Copy) -> Conic<G> {
        Conic {
            coeffs: self.coeffs.clone().map(f),
            points: self.points.iter().map(|p| p.map_field(f)).collect(),
        }
    }
}

/// Same curve and the same defining points in the same order.
impl<F: Field> PartialEq for Conic<F> {
    fn eq(&self, other: &Self) -> bool {
        self.same_curve(other) && self.points == other.points
    }
}

impl<F: Field> fmt::Display for Conic<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const MONOMIALS: [&str; 6] = ["x²", "xy", "y²", "xz", "yz", "z²"];
        for (i, (c, m)) in self.coeffs.iter().zip(MONOMIALS).enumerate() {
            let text = c.to_string();
            match (i, text.strip_prefix('-')) {
                (0, _) => write!(f, "{text}·{m}")?,
                (_, Some(abs)) => write!(f, " - {abs}·{m}")?,
                (_, None) => write!(f, " + {text}·{m}")?,
            }
        }
        write!(f, " = 0")
    }
}

pub fn contains<F: Field>(c: &Conic<F>, p: &Point<F>) -> bool {
    c.contains(p)
}

pub fn is_irreducible<F: Field>(c: &Conic<F>) -> bool {
    c.is_irreducible()
}

fn first_duplicate<F: Field>(points: &[Point<F>]) -> Option<(usize, usize)> {
    (0..points.len())
        .flat_map(|i| (i + 1..points.len()).map(move |j| (i, j)))
        .find(|&(i, j)| points[i] == points[j])
}

/// The unique conic through five points.
pub fn fit_conic<F: Field>(points: &[Point<F>; 5]) -> Result<Conic<F>> {
    if let Some((i, j)) = first_duplicate(points) {
        return Err(Error::DuplicatePoints(i + 1, j + 1));
    }
    let rows = points.iter().map(|p| conic_monomials(p).to_vec()).collect();
    let mut basis = nullspace(rows, 6);
    if basis.len() != 1 {
        return Err(Error::ConicNotUnique(describe_collinear_four(points)));
    }
    let v = basis.pop().expect("one vector");
    let coeffs: [F; 6] = std::array::from_fn(|i| v[i].clone());
    Conic::with_points(coeffs, points.to_vec())
}

fn describe_collinear_four<F: Field>(points: &[Point<F>; 5]) -> String {
    for skip in 0..5 {
        let idx: Vec<usize> = (0..5).filter(|&i| i != skip).collect();
        let four: Vec<&Point<F>> = idx.iter().map(|&i| &points[i]).collect();
        if collinear(four[0], four[1], four[2]) && collinear(four[0], four[1], four[3]) {
            let names: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
            return format!("points {} are collinear", names.join(", "));
        }
    }
    "the five points impose dependent conditions".to_string()
}

/// True when the six points lie on a common conic (6×6 determinant vanishes).
pub fn six_on_conic<F: Field>(points: &[Point<F>; 6]) -> bool {
    let rows = points.iter().map(|p| conic_monomials(p).to_vec()).collect();
    determinant(rows).is_zero()
}

/// One Pascal step on the hexagon `p1 p2 p3 p4 p5 R` with `R` the unknown on `ell`.
fn pascal_step<F: Field>(
    p1: &Point<F>,
    [p2, p3, p4, p5]: [&Point<F>; 4],
    ell: &Line<F>,
) -> Result<Point<F>> {
    let q1 = meet(&join(p1, p2)?, &join(p4, p5)?)?;
    let q2 = meet(&join(p3, p4)?, ell)?;
    let q3 = meet(&join(p2, p3)?, &join(&q1, &q2)?)?;
    meet(&join(p5, &q3)?, ell)
}

/// Ordered k-tuples of distinct indices below n, in lexicographic order.
fn arrangements(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !cur.contains(&i) {
                cur.push(i);
                rec(n, k, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Result of Construction 1 along with the number of rejected labelings.
#[derive(Clone, Debug)]
pub struct SecondIntersection<F = Rational> {
    pub point: Point<F>,
    pub retries: usize,
}

/// The second point where the line `p1 q` meets `c`, found with the straightedge via
/// Pascal's theorem on the conic's defining points. Returns `p1` itself when the
/// line is tangent there.
pub fn second_intersection<F: Field>(c: &Conic<F>, p1: &Point<F>, q: &Point<F>) -> Result<Point<F>> {
    second_intersection_counted(c, p1, q).map(|s| s.point)
}

pub fn second_intersection_counted<F: Field>(
    c: &Conic<F>,
    p1: &Point<F>,
    q: &Point<F>,
) -> Result<SecondIntersection<F>> {
    const STEP: &str = "second intersection";
    if !c.contains(p1) {
        return Err(Error::NotOnConic(p1.to_string()));
    }
    let ell = join(p1, q).map_err(|e| Error::degenerate(STEP, e))?;
    let others: Vec<&Point<F>> = c.defining_points().iter().filter(|p| *p != p1).collect();
    if others.len() < 4 {
        return Err(Error::degenerate(
            STEP,
            "the conic needs four defining points besides the one on the line",
        ));
    }
    // A defining point already on the line is the answer.
    if let Some(hit) = others.iter().find(|p| ell.contains(p)) {
        return Ok(SecondIntersection {
            point: (*hit).clone(),
            retries: 0,
        });
    }
    let mut last = None;
    for (retries, order) in arrangements(others.len(), 4).into_iter().enumerate() {
        let quad = [others[order[0]], others[order[1]], others[order[2]], others[order[3]]];
        match pascal_step(p1, quad, &ell) {
            Ok(point) => return Ok(SecondIntersection { point, retries }),
            Err(e) => last = Some(e),
        }
    }
    Err(Error::degenerate(
        STEP,
        format!(
            "every labeling of the defining points degenerates; last: {}",
            last.expect("at least one labeling")
        ),
    ))
}

/// The three meets of opposite sides of the hexagon and the line through them.
#[derive(Clone, Debug)]
pub struct PascalLine<F = Rational> {
    pub meets: [Point<F>; 3],
    pub line: Line<F>,
}

/// Pascal line of the hexagon `h[0] h[1] … h[5]` (six distinct points on one conic).
pub fn pascal_line<F: Field>(h: &[Point<F>; 6]) -> Result<PascalLine<F>> {
    if let Some((i, j)) = first_duplicate(h) {
        return Err(Error::DuplicatePoints(i + 1, j + 1));
    }
    if !six_on_conic(h) {
        return Err(Error::NotOnConic(h[5].to_string()));
    }
    let side = |i: usize| join(&h[i % 6], &h[(i + 1) % 6]);
    let opposite = |i: usize| -> Result<Point<F>> {
        meet(&side(i)?, &side(i + 3)?).map_err(|e| {
            Error::degenerate(format!("sides {}{} and {}{}", i + 1, i + 2, i + 4, (i + 4) % 6 + 1), e)
        })
    };
    let meets = [opposite(0)?, opposite(1)?, opposite(2)?];
    let line = join(&meets[0], &meets[1])
        .or_else(|_| join(&meets[0], &meets[2]))
        .or_else(|_| join(&meets[1], &meets[2]))
        .map_err(|e| Error::degenerate("Pascal line", e))?;
    Ok(PascalLine { meets, line })
}

/// Two points of the line, spanning it.
fn line_basis<F: Field>(l: &Line<F>) -> (Point<F>, Point<F>) {
    let axes: [Line<F>; 3] = std::array::from_fn(|i| {
        let mut c = [F::zero(), F::zero(), F::zero()];
        c[i] = F::one();
        Line::from_coords(c).expect("axis")
    });
    let pts: Vec<Point<F>> = axes.iter().filter_map(|a| meet(l, a).ok()).collect();
    let first = pts[0].clone();
    let second = pts
        .iter()
        .find(|p| **p != first)
        .cloned()
        .expect("a line meets the coordinate triangle in two distinct points");
    (first, second)
}

/// Both points of `c ∩ l`, exact in `F(√disc)`. A tangent line gives the point twice.
pub fn line_conic_intersections_ext<F: SqrtField>(
    c: &Conic<F>,
    l: &Line<F>,
) -> Result<[Point<Quad<F>>; 2]> {
    let (p0, p1) = line_basis(l);
    // G(s·p0 + t·p1) = γ s² + β s t + α t²
    let gamma = c.evaluate(&p0);
    let alpha = c.evaluate(&p1);
    let beta = c.polar2(p0.coords(), p1.coords());
    if gamma.is_zero() && alpha.is_zero() && beta.is_zero() {
        return Err(Error::LineIsComponent(l.to_string()));
    }
    let lift = |p: &Point<F>| p.map_field(Quad::from_base);
    let combo = |s: Quad<F>, t: Quad<F>| -> Point<Quad<F>> {
        let a = lift(&p0);
        let b = lift(&p1);
        let coords = std::array::from_fn(|i| s.clone() * a.coords()[i].clone() + t.clone() * b.coords()[i].clone());
        Point::from_coords(coords).expect("independent basis")
    };
    if alpha.is_zero() {
        // γ s² + β s t = s (γ s + β t): roots s = 0 (p1) and (s, t) = (β, -γ).
        let second = combo(Quad::from_base(beta), Quad::from_base(-gamma));
        return Ok([lift(&p1), second]);
    }
    // α ≠ 0: set s = 1, α t² + β t + γ = 0.
    let disc = beta.clone() * beta.clone() - F::from_int(4) * alpha.clone() * gamma;
    let root = Quad::sqrt_of(&disc)?;
    let two_alpha = Quad::from_base(F::from_int(2) * alpha);
    let minus_beta = Quad::from_base(-beta);
    let t1 = (minus_beta.clone() + root.clone()).checked_div(&two_alpha).expect("α ≠ 0");
    let t2 = (minus_beta - root).checked_div(&two_alpha).expect("α ≠ 0");
    Ok([combo(Quad::one(), t1), combo(Quad::one(), t2)])
}
