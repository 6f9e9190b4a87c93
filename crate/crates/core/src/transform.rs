//! Projective transformations of the plane.

use crate::error::{Error, Result};
use crate::projective::{bracket, Line, Point};
use crate::scalar::{Field, Rational};

type Matrix<F> = [[F; 3]; 3];

/// An invertible 3×3 matrix acting on homogeneous coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectiveMap<F = Rational> {
    m: Matrix<F>,
}

fn det<F: Field>(m: &Matrix<F>) -> F {
    let col = |j: usize| [m[0][j].clone(), m[1][j].clone(), m[2][j].clone()];
    crate::projective::det3(&col(0), &col(1), &col(2))
}

/// Transposed cofactor matrix: `adj(M)·M = det(M)·I`.
fn adjugate<F: Field>(m: &Matrix<F>) -> Matrix<F> {
    let minor = |r0: usize, r1: usize, c0: usize, c1: usize| {
        m[r0][c0].clone() * m[r1][c1].clone() - m[r0][c1].clone() * m[r1][c0].clone()
    };
    let cof = |i: usize, j: usize| {
        let rows: Vec<usize> = (0..3).filter(|&r| r != i).collect();
        let cols: Vec<usize> = (0..3).filter(|&c| c != j).collect();
        let v = minor(rows[0], rows[1], cols[0], cols[1]);
        if (i + j) % 2 == 1 {
            -v
        } else {
            v
        }
    };
    std::array::from_fn(|i| std::array::from_fn(|j| cof(j, i)))
}

fn mul<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            (0..3).fold(F::zero(), |acc, k| acc + a[i][k].clone() * b[k][j].clone())
        })
    })
}

fn mul_vec<F: Field>(a: &Matrix<F>, v: &[F; 3]) -> [F; 3] {
    std::array::from_fn(|i| (0..3).fold(F::zero(), |acc, k| acc + a[i][k].clone() * v[k].clone()))
}

impl<F: Field> ProjectiveMap<F> {
    pub fn new(m: Matrix<F>) -> Result<Self> {
        if det(&m).is_zero() {
            return Err(Error::SingularMap);
        }
        Ok(ProjectiveMap { m })
    }

    pub fn identity() -> Self {
        ProjectiveMap {
            m: std::array::from_fn(|i| {
                std::array::from_fn(|j| if i == j { F::one() } else { F::zero() })
            }),
        }
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.m
    }

    pub fn determinant(&self) -> F {
        det(&self.m)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        ProjectiveMap {
            m: mul(&self.m, &other.m),
        }
    }

    pub fn inverse(&self) -> Self {
        let inv_det = self.determinant().inverse().expect("invertible");
        let adj = adjugate(&self.m);
        ProjectiveMap {
            m: adj.map(|row| row.map(|x| x * inv_det.clone())),
        }
    }

    /// Image of a point; keeps the raw product as representative.
    pub fn apply(&self, p: &Point<F>) -> Point<F> {
        Point::from_coords(mul_vec(&self.m, p.coords())).expect("invertible map")
    }

    /// Image of a line, via the inverse transpose (up to scale).
    pub fn apply_line(&self, l: &Line<F>) -> Line<F> {
        let adj = adjugate(&self.m);
        let cof: Matrix<F> = std::array::from_fn(|i| std::array::from_fn(|j| adj[j][i].clone()));
        Line::from_coords(mul_vec(&cof, l.coords())).expect("invertible map")
    }

    /// Embeds the map into a larger field.
    pub fn map_field<G: Field>(&self, f: impl Fn(F) -> G) -> ProjectiveMap<G> {
        ProjectiveMap {
            m: self.m.clone().map(|row| row.map(&f)),
        }
    }
}

/// The matrix sending `e1, e2, e3, e1+e2+e3` to the four given points:
/// columns `a·v1, b·v2, c·v3` where `v4 = a·v1 + b·v2 + c·v3`.
fn from_standard_frame<F: Field>(v: &[Point<F>; 4]) -> Result<Matrix<F>> {
    for t in [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]] {
        if bracket(&v[t[0]], &v[t[1]], &v[t[2]]).is_zero() {
            return Err(Error::GeneralPosition(t.map(|i| i + 1)));
        }
    }
    // Cramer's rule, dropping the common denominator [v1 v2 v3].
    let a = bracket(&v[3], &v[1], &v[2]);
    let b = bracket(&v[0], &v[3], &v[2]);
    let c = bracket(&v[0], &v[1], &v[3]);
    let scales = [a, b, c];
    Ok(std::array::from_fn(|i| {
        std::array::from_fn(|j| scales[j].clone() * v[j].coords()[i].clone())
    }))
}

/// The projective map sending `src[i]` to `dst[i]` for each i; neither quadruple may
/// contain three collinear points.
pub fn map_from_four_point_pairs<F: Field>(
    src: &[Point<F>; 4],
    dst: &[Point<F>; 4],
) -> Result<ProjectiveMap<F>> {
    let m = from_standard_frame(src)?;
    let n = from_standard_frame(dst)?;
    let m_inv = adjugate(&m);
    ProjectiveMap::new(mul(&n, &m_inv))
}
