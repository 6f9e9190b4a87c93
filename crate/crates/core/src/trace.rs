//! JSON form of a [`ConstructionTrace`].
//!
//! Points and lines are written in canonical `"[a : b : c]"` form, scalars as
//! `"p/q"`, partition indices 1-based. Field by field:
//!
//! | field          | content                                                       |
//! |----------------|---------------------------------------------------------------|
//! | `verdict`      | `ON_CUBIC` or `NOT_ON_CUBIC`; recomputed and checked on load  |
//! | `scheme`       | `s1`, `s2`, `t1`, `t2`: five input indices each               |
//! | `conics`       | `C1`, `C2`, `D1`, `D2`: `equation`, `coefficients`, `points`  |
//! | `points`       | `P1 P2 P Q R G W X Y Z U V`                                   |
//! | `lines`        | `L_P`, `L_Q`, `L_R`                                           |
//! | `auxiliary`    | auxiliary points for `L_Q` then `L_R`                         |
//! | `collinearity` | the bracket `[P2 U V]` of the canonical representatives       |
//! | `retries`      | abandoned schemes with the reason                             |
//! | `bits`         | `max` and `total` bit sizes of canonical coordinates          |

use serde::{Deserialize, Serialize};

use crate::conics::Conic;
use crate::constructions::{BitStats, ConstructionTrace, PartitionScheme, RetryRecord};
use crate::error::{Error, Result};
use crate::projective::{Line, Point};
use crate::scalar::{parse_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeDoc {
    pub s1: [usize; 5],
    pub s2: [usize; 5],
    pub t1: [usize; 5],
    pub t2: [usize; 5],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConicDoc {
    pub equation: String,
    pub coefficients: [String; 6],
    pub points: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConicsDoc {
    #[serde(rename = "C1")]
    pub c1: ConicDoc,
    #[serde(rename = "C2")]
    pub c2: ConicDoc,
    #[serde(rename = "D1")]
    pub d1: ConicDoc,
    #[serde(rename = "D2")]
    pub d2: ConicDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub struct PointsDoc {
    pub p1: String,
    pub p2: String,
    pub p: String,
    pub q: String,
    pub r: String,
    pub g: String,
    pub w: String,
    pub x: String,
    pub y: String,
    pub z: String,
    pub u: String,
    pub v: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinesDoc {
    #[serde(rename = "L_P")]
    pub lp: String,
    #[serde(rename = "L_Q")]
    pub lq: String,
    #[serde(rename = "L_R")]
    pub lr: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RetryDoc {
    pub scheme: String,
    pub reason: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BitsDoc {
    pub max: u64,
    pub total: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceDoc {
    pub verdict: String,
    pub scheme: SchemeDoc,
    pub conics: ConicsDoc,
    pub points: PointsDoc,
    pub lines: LinesDoc,
    pub auxiliary: Vec<String>,
    pub collinearity: String,
    pub retries: Vec<RetryDoc>,
    pub bits: BitsDoc,
}

fn one_based(s: &[usize; 5]) -> [usize; 5] {
    s.map(|i| i + 1)
}

fn conic_doc(c: &Conic) -> ConicDoc {
    ConicDoc {
        equation: c.to_string(),
        coefficients: c.coefficients().clone().map(|x| x.to_string()),
        points: c.defining_points().iter().map(|p| p.to_string()).collect(),
    }
}

impl From<&ConstructionTrace> for TraceDoc {
    fn from(t: &ConstructionTrace) -> Self {
        let s = &t.scheme;
        TraceDoc {
            verdict: t.verdict().token().to_string(),
            scheme: SchemeDoc {
                s1: one_based(&s.s1),
                s2: one_based(&s.s2),
                t1: one_based(&s.t1),
                t2: one_based(&s.t2),
            },
            conics: ConicsDoc {
                c1: conic_doc(&t.c1),
                c2: conic_doc(&t.c2),
                d1: conic_doc(&t.d1),
                d2: conic_doc(&t.d2),
            },
            points: PointsDoc {
                p1: t.p1.to_string(),
                p2: t.p2.to_string(),
                p: t.p.to_string(),
                q: t.q.to_string(),
                r: t.r.to_string(),
                g: t.g.to_string(),
                w: t.w.to_string(),
                x: t.x.to_string(),
                y: t.y.to_string(),
                z: t.z.to_string(),
                u: t.u.to_string(),
                v: t.v.to_string(),
            },
            lines: LinesDoc {
                lp: t.lp.to_string(),
                lq: t.lq.to_string(),
                lr: t.lr.to_string(),
            },
            auxiliary: t.auxiliary.iter().map(|p| p.to_string()).collect(),
            collinearity: t.collinearity.to_string(),
            retries: t
                .retries
                .iter()
                .map(|r| RetryDoc {
                    scheme: r.scheme.to_string(),
                    reason: r.reason.clone(),
                })
                .collect(),
            bits: BitsDoc {
                max: t.bits.max_bits,
                total: t.bits.total_bits,
            },
        }
    }
}

fn point(s: &str) -> Result<Point> {
    s.parse()
}

fn line(s: &str) -> Result<Line> {
    s.parse()
}

fn conic(d: &ConicDoc) -> Result<Conic> {
    let coeffs: Vec<Rational> = d.coefficients.iter().map(|c| parse_rational(c)).collect::<Result<_>>()?;
    let points = d.points.iter().map(|p| point(p)).collect::<Result<_>>()?;
    Conic::with_points(coeffs.try_into().expect("six"), points)
}

fn zero_based(s: &[usize; 5]) -> Result<[usize; 5]> {
    if s.iter().any(|&i| i == 0 || i > 10) {
        return Err(Error::Parse {
            kind: "partition",
            text: format!("{s:?}"),
        });
    }
    Ok(s.map(|i| i - 1))
}

impl TryFrom<&TraceDoc> for ConstructionTrace {
    type Error = Error;

    fn try_from(d: &TraceDoc) -> Result<Self> {
        let scheme = PartitionScheme::new(zero_based(&d.scheme.s1)?, zero_based(&d.scheme.t1)?)?;
        let p = &d.points;
        let trace = ConstructionTrace {
            scheme,
            c1: conic(&d.conics.c1)?,
            c2: conic(&d.conics.c2)?,
            d1: conic(&d.conics.d1)?,
            d2: conic(&d.conics.d2)?,
            p1: point(&p.p1)?,
            p2: point(&p.p2)?,
            p: point(&p.p)?,
            q: point(&p.q)?,
            r: point(&p.r)?,
            g: point(&p.g)?,
            w: point(&p.w)?,
            x: point(&p.x)?,
            y: point(&p.y)?,
            z: point(&p.z)?,
            u: point(&p.u)?,
            v: point(&p.v)?,
            lp: line(&d.lines.lp)?,
            lq: line(&d.lines.lq)?,
            lr: line(&d.lines.lr)?,
            auxiliary: d.auxiliary.iter().map(|a| point(a)).collect::<Result<_>>()?,
            collinearity: parse_rational(&d.collinearity)?,
            retries: d
                .retries
                .iter()
                .map(|r| {
                    Ok(RetryRecord {
                        scheme: r.scheme.parse()?,
                        reason: r.reason.clone(),
                    })
                })
                .collect::<Result<_>>()?,
            bits: BitStats {
                max_bits: d.bits.max,
                total_bits: d.bits.total,
            },
        };
        if trace.verdict().token() != d.verdict {
            return Err(Error::Parse {
                kind: "trace verdict",
                text: d.verdict.clone(),
            });
        }
        Ok(trace)
    }
}

impl Serialize for ConstructionTrace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TraceDoc::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for ConstructionTrace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = TraceDoc::deserialize(d)?;
        ConstructionTrace::try_from(&doc).map_err(serde::de::Error::custom)
    }
}

pub fn to_json(trace: &ConstructionTrace) -> String {
    serde_json::to_string_pretty(trace).expect("trace serializes")
}

pub fn from_json(text: &str) -> Result<ConstructionTrace> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        kind: "trace",
        text: e.to_string(),
    })
}
