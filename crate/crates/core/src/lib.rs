//! Exact computational projective geometry for deciding, with straightedge
//! constructions only, whether ten points of the plane lie on a cubic curve.
//!
//! * [`scalar`], [`quadratic`]: exact rationals and quadratic towers.
//! * [`projective`], [`transform`]: points, lines, brackets, cross ratios, maps.
//! * [`conics`]: fitting, membership, second intersections via Pascal.
//! * [`constructions`]: fourth intersection of two conics, radical axes, and
//!   the ten-point pipeline.
//! * [`brackets`]: binomial bracket relations and the certificate for the pipeline.
//! * [`oracle`]: determinant tests and classical product theorems used as ground truth.
//! * [`trace`]: the JSON form of a construction trace.

pub mod brackets;
pub mod error;
pub mod linalg;
pub mod oracle;
pub mod projective;
pub mod quadratic;
pub mod scalar;
pub mod trace;
pub mod transform;
pub mod conics;
pub mod constructions;

pub use error::{Error, Result};
pub use projective::{bracket, collinear, concurrent, cross_ratio, join, meet, Line, Point};
pub use quadratic::Quad;
pub use scalar::{Field, Rational, SqrtField};
