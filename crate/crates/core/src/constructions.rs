//! The straightedge pipeline.
//!
//! [`fourth_intersection`] and [`radical_axis`] locate intersections of two
//! conics that share three (resp. two) known points; [`check_ten_on_cubic`]
//! chains them into the decision procedure for ten points.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::conics::{fit_conic, second_intersection, Conic};
use crate::error::{Error, Result};
use crate::projective::{bracket, collinear, join, meet, Line, Point};
use crate::scalar::{bit_size, int, Field, Rational};

fn step<T>(name: &'static str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        e @ Error::ConstructionDegenerate { .. } => e,
        e => Error::degenerate(name, e),
    })
}

/// The line `φ(p)` of the Cremona transformation for the triangle `e1 e2 e3`:
/// the join of `e1p ∩ e2e3` and `e2p ∩ e1e3`.
pub fn cremona_line<F: Field>(p: &Point<F>, e: [&Point<F>; 3]) -> Result<Line<F>> {
    const STEP: &str = "Cremona line";
    if let Some(i) = e.iter().position(|ei| *ei == p) {
        return Err(Error::degenerate(STEP, format!("{p} is the vertex E{}", i + 1)));
    }
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        if collinear(e[i], e[j], p) {
            return Err(Error::degenerate(
                STEP,
                format!("{p} lies on the side E{}E{}", i + 1, j + 1),
            ));
        }
    }
    let a = step(STEP, meet(&join(e[0], p)?, &join(e[1], e[2])?))?;
    let b = step(STEP, meet(&join(e[1], p)?, &join(e[0], e[2])?))?;
    step(STEP, join(&a, &b))
}

/// Defining points of `c` that are not among `shared`.
fn residual_points<'a, F: Field>(c: &'a Conic<F>, shared: &[Point<F>]) -> Vec<&'a Point<F>> {
    c.defining_points()
        .iter()
        .filter(|p| !shared.contains(p))
        .collect()
}

/// The fourth point common to two conics through the three points `shared`.
pub fn fourth_intersection<F: Field>(
    c1: &Conic<F>,
    c2: &Conic<F>,
    shared: &[Point<F>; 3],
) -> Result<Point<F>> {
    const STEP: &str = "fourth intersection";
    for s in shared {
        if !c1.contains(s) || !c2.contains(s) {
            return Err(Error::degenerate(STEP, format!("{s} is not on both conics")));
        }
    }
    let o1 = residual_points(c1, shared);
    let o2 = residual_points(c2, shared);
    if o1.len() != 2 || o2.len() != 2 {
        return Err(Error::degenerate(
            STEP,
            "each conic needs exactly two defining points besides the shared three",
        ));
    }
    let [e1, e2, e3] = [&shared[0], &shared[1], &shared[2]];
    let e = [e1, e2, e3];
    let image = |o: &[&Point<F>]| -> Result<Point<F>> {
        let l1 = cremona_line(o[0], e)?;
        let l2 = cremona_line(o[1], e)?;
        step(STEP, meet(&l1, &l2))
    };
    let phi1 = image(&o1)?;
    let phi2 = image(&o2)?;
    let l = join(&phi1, &phi2)
        .map_err(|_| Error::degenerate(STEP, "the two conics coincide"))?;
    let f = step(STEP, meet(&l, &join(e1, e3)?))?;
    let g = step(STEP, meet(&l, &join(e2, e3)?))?;
    step(STEP, meet(&join(&f, e2)?, &join(&g, e1)?))
}

/// A deterministic stream of auxiliary points for [`radical_axis`].
///
/// Seed 0 walks the integer lattice outward in square rings around the
/// origin; any other seed draws small rationals from a seeded generator.
#[derive(Clone, Debug)]
pub struct AuxiliarySequence {
    seed: u64,
    limit: usize,
}

pub const DEFAULT_AUXILIARY_LIMIT: usize = 32;

impl AuxiliarySequence {
    pub fn new(seed: u64) -> Self {
        AuxiliarySequence {
            seed,
            limit: DEFAULT_AUXILIARY_LIMIT,
        }
    }

    pub fn with_limit(mut self, limit: usize) -> Self {
        self.limit = limit;
        self
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn points(&self) -> Vec<Point> {
        if self.seed == 0 {
            lattice_rings().take(self.limit).collect()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
            (0..self.limit)
                .map(|_| {
                    let x: i64 = rng.random_range(-20..=20);
                    let y: i64 = rng.random_range(-20..=20);
                    let z: i64 = rng.random_range(1..=5);
                    Point::from_ints(x, y, z).expect("z ≠ 0")
                })
                .collect()
        }
    }
}

impl Default for AuxiliarySequence {
    fn default() -> Self {
        AuxiliarySequence::new(0)
    }
}

fn lattice_rings() -> impl Iterator<Item = Point> {
    (1i64..).flat_map(|r| {
        (-r..=r).flat_map(move |x| {
            (-r..=r)
                .filter(move |y| x.abs().max(y.abs()) == r)
                .map(move |y| Point::from_ints(x, y, 1).expect("z = 1"))
        })
    })
}

/// A radical axis together with the auxiliary points that produced it.
#[derive(Clone, Debug)]
pub struct RadicalAxis {
    pub line: Line,
    pub auxiliary: [Point; 2],
    /// Candidates screened out before the two survivors.
    pub rejected: usize,
}

/// `O = CE ∩ DF` for the auxiliary point `p`.
fn radical_point(c1: &Conic, c2: &Conic, u: &Point, v: &Point, p: &Point) -> Result<Point> {
    if c1.contains(p) || c2.contains(p) {
        return Err(Error::degenerate("radical axis", "auxiliary point on a conic"));
    }
    if collinear(u, v, p) {
        return Err(Error::degenerate("radical axis", "auxiliary point on UV"));
    }
    let c = second_intersection(c1, u, p)?;
    let d = second_intersection(c2, u, p)?;
    let e = second_intersection(c1, v, p)?;
    let f = second_intersection(c2, v, p)?;
    meet(&join(&c, &e)?, &join(&d, &f)?)
}

/// The line through the two intersections of `c1` and `c2` other than `u` and `v`.
pub fn radical_axis(c1: &Conic, c2: &Conic, u: &Point, v: &Point) -> Result<Line> {
    radical_axis_with(c1, c2, u, v, &AuxiliarySequence::default()).map(|r| r.line)
}

pub fn radical_axis_with(
    c1: &Conic,
    c2: &Conic,
    u: &Point,
    v: &Point,
    aux: &AuxiliarySequence,
) -> Result<RadicalAxis> {
    const STEP: &str = "radical axis";
    for s in [u, v] {
        if !c1.contains(s) || !c2.contains(s) {
            return Err(Error::degenerate(STEP, format!("{s} is not on both conics")));
        }
    }
    let mut found: Vec<(Point, Point)> = Vec::with_capacity(2);
    let mut rejected = 0;
    for p in aux.points() {
        match radical_point(c1, c2, u, v, &p) {
            Ok(o) if found.iter().all(|(_, prev)| *prev != o) => {
                found.push((p, o));
                if found.len() == 2 {
                    let line = join(&found[0].1, &found[1].1)?;
                    let [(a, _), (b, _)] = [found[0].clone(), found[1].clone()];
                    return Ok(RadicalAxis {
                        line,
                        auxiliary: [a, b],
                        rejected,
                    });
                }
            }
            _ => rejected += 1,
        }
    }
    Err(Error::degenerate(
        STEP,
        format!("auxiliary points exhausted after {} candidates", aux.limit),
    ))
}

/// Index sets `S₁, S₂, T₁, T₂` (0-based, sorted) splitting the ten inputs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartitionScheme {
    pub s1: [usize; 5],
    pub s2: [usize; 5],
    pub t1: [usize; 5],
    pub t2: [usize; 5],
}

fn complement(set: &[usize; 5]) -> [usize; 5] {
    let rest: Vec<usize> = (0..10).filter(|i| !set.contains(i)).collect();
    rest.try_into().expect("five of ten")
}

fn intersect(a: &[usize; 5], b: &[usize; 5]) -> Vec<usize> {
    a.iter().copied().filter(|i| b.contains(i)).collect()
}

impl PartitionScheme {
    /// Builds the scheme from `S₁` and `T₁`; they must share exactly three indices.
    pub fn new(mut s1: [usize; 5], mut t1: [usize; 5]) -> Result<Self> {
        s1.sort_unstable();
        t1.sort_unstable();
        let bad = |why: &str| Error::Parse {
            kind: "partition",
            text: why.to_string(),
        };
        for set in [&s1, &t1] {
            if set.iter().any(|&i| i >= 10) || set.windows(2).any(|w| w[0] == w[1]) {
                return Err(bad("indices must be five distinct values in 1..=10"));
            }
        }
        if intersect(&s1, &t1).len() != 3 {
            return Err(bad("S1 and T1 must share exactly three points"));
        }
        Ok(PartitionScheme {
            s2: complement(&s1),
            t2: complement(&t1),
            s1,
            t1,
        })
    }

    /// `S₁ = {1..5}`, `T₁ = {3..7}`.
    pub fn standard() -> Self {
        PartitionScheme::new([0, 1, 2, 3, 4], [2, 3, 4, 5, 6]).expect("valid")
    }

    /// The standard scheme, then every scheme with `1 ∈ S₁` whose `T₁` swaps two
    /// points of `S₁` for two of `S₂`, in lexicographic order of `(S₁, T₁)`.
    pub fn enumerate() -> impl Iterator<Item = PartitionScheme> {
        let standard = PartitionScheme::standard();
        let rest = combinations(10, 5)
            .into_iter()
            .filter(|s| s[0] == 0)
            .flat_map(|s1| {
                let s1: [usize; 5] = s1.try_into().expect("five");
                let s2 = complement(&s1);
                let mut t1s: Vec<[usize; 5]> = Vec::new();
                for out in combinations(5, 2) {
                    for inn in combinations(5, 2) {
                        let mut t: Vec<usize> = (0..5)
                            .filter(|i| !out.contains(i))
                            .map(|i| s1[i])
                            .chain(inn.iter().map(|&i| s2[i]))
                            .collect();
                        t.sort_unstable();
                        t1s.push(t.try_into().expect("five"));
                    }
                }
                t1s.sort_unstable();
                t1s.into_iter()
                    .map(move |t1| PartitionScheme::new(s1, t1).expect("valid"))
            })
            .filter(move |s| *s != standard);
        std::iter::once(PartitionScheme::standard()).chain(rest)
    }

    fn sets(&self) -> [&[usize; 5]; 4] {
        [&self.s1, &self.s2, &self.t1, &self.t2]
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Renders as `s1=1,2,3,4,5;t1=3,4,5,6,7` with 1-based indices.
impl fmt::Display for PartitionScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |s: &[usize; 5]| {
            s.iter()
                .map(|i| (i + 1).to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "s1={};t1={}", list(&self.s1), list(&self.t1))
    }
}

impl FromStr for PartitionScheme {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let err = || Error::Parse {
            kind: "partition",
            text: text.to_string(),
        };
        let mut s1 = None;
        let mut t1 = None;
        for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, list) = part.split_once('=').ok_or_else(err)?;
            let idx: Vec<usize> = list
                .split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| err())?;
            if idx.contains(&0) {
                return Err(err());
            }
            let arr: [usize; 5] = idx
                .iter()
                .map(|i| i - 1)
                .collect::<Vec<_>>()
                .try_into()
                .map_err(|_| err())?;
            match key.trim() {
                "s1" => s1 = Some(arr),
                "t1" => t1 = Some(arr),
                _ => return Err(err()),
            }
        }
        PartitionScheme::new(s1.ok_or_else(err)?, t1.ok_or_else(err)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    OnCubic,
    NotOnCubic,
    Degenerate(String),
}

impl Verdict {
    pub fn token(&self) -> &'static str {
        match self {
            Verdict::OnCubic => "ON_CUBIC",
            Verdict::NotOnCubic => "NOT_ON_CUBIC",
            Verdict::Degenerate(_) => "DEGENERATE",
        }
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self, Verdict::Degenerate(_))
    }

    /// Exit status used by the command line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::OnCubic => 0,
            Verdict::NotOnCubic => 1,
            Verdict::Degenerate(_) => 2,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Degenerate(reason) => write!(f, "DEGENERATE: {reason}"),
            v => f.write_str(v.token()),
        }
    }
}

/// A scheme that was abandoned, and why.
#[derive(Clone, Debug, PartialEq)]
pub struct RetryRecord {
    pub scheme: PartitionScheme,
    pub reason: String,
}

/// Size of the largest and the sum of all canonical integer coordinates, in bits.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BitStats {
    pub max_bits: u64,
    pub total_bits: u64,
}

/// Everything the pipeline built for one scheme.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstructionTrace {
    pub scheme: PartitionScheme,
    pub c1: Conic,
    pub c2: Conic,
    pub d1: Conic,
    pub d2: Conic,
    pub p1: Point,
    pub p2: Point,
    pub p: Point,
    pub q: Point,
    pub r: Point,
    pub g: Point,
    pub w: Point,
    pub x: Point,
    pub y: Point,
    pub z: Point,
    pub u: Point,
    pub v: Point,
    pub lp: Line,
    pub lq: Line,
    pub lr: Line,
    /// Auxiliary points used for `L_Q` (first two) and `L_R` (last two).
    pub auxiliary: Vec<Point>,
    /// `[P₂ U V]` on the stored (canonical) representatives.
    pub collinearity: Rational,
    pub retries: Vec<RetryRecord>,
    pub bits: BitStats,
}

impl ConstructionTrace {
    pub fn verdict(&self) -> Verdict {
        if self.collinearity.is_zero() {
            Verdict::OnCubic
        } else {
            Verdict::NotOnCubic
        }
    }

    /// Named points in drawing order.
    pub fn labeled_points(&self) -> [(&'static str, &Point); 12] {
        [
            ("P1", &self.p1),
            ("P2", &self.p2),
            ("P", &self.p),
            ("Q", &self.q),
            ("R", &self.r),
            ("G", &self.g),
            ("W", &self.w),
            ("X", &self.x),
            ("Y", &self.y),
            ("Z", &self.z),
            ("U", &self.u),
            ("V", &self.v),
        ]
    }

    /// Every incidence the construction promises, with whether it holds.
    pub fn incidences(&self) -> Vec<(String, bool)> {
        let mut out = Vec::new();
        let mut on_conic = |name: &str, c: &Conic, p: &Point, label: &str| {
            out.push((format!("{label} on {name}"), c.contains(p)));
        };
        for (name, c) in [("C1", &self.c1), ("C2", &self.c2), ("D1", &self.d1), ("D2", &self.d2)] {
            for (i, p) in c.defining_points().iter().enumerate() {
                on_conic(name, c, p, &format!("defining point {}", i + 1));
            }
        }
        on_conic("C1", &self.c1, &self.p1, "P1");
        on_conic("D1", &self.d1, &self.p1, "P1");
        on_conic("C2", &self.c2, &self.p2, "P2");
        on_conic("D2", &self.d2, &self.p2, "P2");
        on_conic("C1", &self.c1, &self.g, "G");
        on_conic("D1", &self.d1, &self.g, "G");
        on_conic("C1", &self.c1, &self.w, "W");
        on_conic("D1", &self.d1, &self.z, "Z");
        on_conic("C1", &self.c1, &self.x, "X");
        on_conic("D1", &self.d1, &self.y, "Y");
        let mut on_line = |name: &str, l: &Line, p: &Point, label: &str| {
            out.push((format!("{label} on {name}"), l.contains(p)));
        };
        on_line("L_P", &self.lp, &self.p1, "P1");
        on_line("L_P", &self.lp, &self.p2, "P2");
        on_line("L_Q", &self.lq, &self.p, "P");
        on_line("L_R", &self.lr, &self.p, "P");
        on_line("L_P", &self.lp, &self.q, "Q");
        on_line("L_R", &self.lr, &self.q, "Q");
        on_line("L_P", &self.lp, &self.r, "R");
        on_line("L_Q", &self.lq, &self.r, "R");
        on_line("L_P", &self.lp, &self.x, "X");
        on_line("L_P", &self.lp, &self.y, "Y");
        on_line("L_Q", &self.lq, &self.u, "U");
        on_line("L_R", &self.lr, &self.v, "V");
        out.push(("P, G, W collinear".into(), collinear(&self.p, &self.g, &self.w)));
        out.push(("P, G, Z collinear".into(), collinear(&self.p, &self.g, &self.z)));
        out.push(("W, X, U collinear".into(), collinear(&self.w, &self.x, &self.u)));
        out.push(("Y, Z, V collinear".into(), collinear(&self.y, &self.z, &self.v)));
        out.push((
            "stored bracket [P2 U V]".into(),
            bracket(&self.p2, &self.u, &self.v) == self.collinearity,
        ));
        out
    }

    pub fn failed_incidences(&self) -> Vec<String> {
        self.incidences()
            .into_iter()
            .filter(|(_, ok)| !ok)
            .map(|(name, _)| name)
            .collect()
    }
}

fn bit_stats<'a>(triples: impl Iterator<Item = &'a [Rational; 3]>) -> BitStats {
    let mut stats = BitStats::default();
    for t in triples {
        let mut c = t.clone();
        Rational::canonicalize_vector(&mut c);
        for x in &c {
            let b = bit_size(x);
            stats.max_bits = stats.max_bits.max(b);
            stats.total_bits += b;
        }
    }
    stats
}

fn pick<const N: usize>(points: &[Point; 10], idx: &[usize; N]) -> [Point; N] {
    idx.map(|i| points[i].clone())
}

fn fit_checked(points: &[Point; 10], idx: &[usize; 5], name: &str) -> Result<Conic> {
    let conic = fit_conic(&pick(points, idx)).map_err(|e| {
        Error::degenerate("fit conics", format!("{name} through {}: {e}", one_based(idx)))
    })?;
    if !conic.is_irreducible() {
        return Err(Error::degenerate(
            "fit conics",
            format!("{name} through {} is a line pair", one_based(idx)),
        ));
    }
    Ok(conic)
}

fn one_based(idx: &[usize]) -> String {
    let names: Vec<String> = idx.iter().map(|i| format!("#{}", i + 1)).collect();
    names.join(" ")
}

fn require_distinct(step_name: &'static str, pairs: &[(&str, &Point, &str, &Point)]) -> Result<()> {
    for (an, a, bn, b) in pairs {
        if a == b {
            return Err(Error::degenerate(step_name, format!("{an} = {bn}")));
        }
    }
    Ok(())
}

/// Runs the construction for one scheme with the default auxiliary sequence.
pub fn build_configuration(points: &[Point; 10], scheme: &PartitionScheme) -> Result<ConstructionTrace> {
    build_configuration_with(points, scheme, &AuxiliarySequence::default())
}

pub fn build_configuration_with(
    points: &[Point; 10],
    scheme: &PartitionScheme,
    aux: &AuxiliarySequence,
) -> Result<ConstructionTrace> {
    let c1 = fit_checked(points, &scheme.s1, "C1")?;
    let c2 = fit_checked(points, &scheme.s2, "C2")?;
    let d1 = fit_checked(points, &scheme.t1, "D1")?;
    let d2 = fit_checked(points, &scheme.t2, "D2")?;
    build_from_conics(points, scheme, [c1, c2, d1, d2], aux)
}

fn build_from_conics(
    points: &[Point; 10],
    scheme: &PartitionScheme,
    [c1, c2, d1, d2]: [Conic; 4],
    aux: &AuxiliarySequence,
) -> Result<ConstructionTrace> {
    let named = [("C1", &c1), ("C2", &c2), ("D1", &d1), ("D2", &d2)];
    for i in 0..4 {
        for j in i + 1..4 {
            if named[i].1.same_curve(named[j].1) {
                return Err(Error::degenerate(
                    "fit conics",
                    format!("{} and {} are the same conic", named[i].0, named[j].0),
                ));
            }
        }
    }
    let shared = |a: &[usize; 5], b: &[usize; 5]| -> Vec<Point> {
        intersect(a, b).into_iter().map(|i| points[i].clone()).collect()
    };
    let s1t1 = shared(&scheme.s1, &scheme.t1);
    let s2t2 = shared(&scheme.s2, &scheme.t2);
    let s1t2 = shared(&scheme.s1, &scheme.t2);
    let s2t1 = shared(&scheme.s2, &scheme.t1);

    let three = |v: &[Point]| -> [Point; 3] { v.to_vec().try_into().expect("three shared") };
    let p1 = step("P1", fourth_intersection(&c1, &d1, &three(&s1t1)))?;
    let p2 = step("P2", fourth_intersection(&c2, &d2, &three(&s2t2)))?;
    let axis_q = step("L_Q", radical_axis_with(&c1, &d2, &s1t2[0], &s1t2[1], aux))?;
    let axis_r = step("L_R", radical_axis_with(&c2, &d1, &s2t1[0], &s2t1[1], aux))?;
    let (lq, lr) = (axis_q.line.clone(), axis_r.line.clone());
    let lp = step("L_P", join(&p1, &p2))?;
    let p = step("P", meet(&lq, &lr))?;
    let q = step("Q", meet(&lp, &lr))?;
    let r = step("R", meet(&lp, &lq))?;
    require_distinct(
        "triangle",
        &[("P", &p, "Q", &q), ("P", &p, "R", &r), ("Q", &q, "R", &r), ("P2", &p2, "Q", &q), ("P2", &p2, "R", &r)],
    )?;

    let pp1 = step("G", join(&p, &p1))?;
    let g = s1t1
        .iter()
        .find(|g| !pp1.contains(g))
        .cloned()
        .ok_or_else(|| Error::degenerate("G", "every point of S1 ∩ T1 lies on P P1"))?;
    let w = step("W", second_intersection(&c1, &g, &p))?;
    let z = step("Z", second_intersection(&d1, &g, &p))?;
    let x = step("X", second_intersection(&c1, &p1, &p2))?;
    let y = step("Y", second_intersection(&d1, &p1, &p2))?;
    let u = step("U", meet(&join(&w, &x)?, &lq))?;
    let v = step("V", meet(&join(&y, &z)?, &lr))?;
    require_distinct(
        "U and V",
        &[("U", &u, "P", &p), ("U", &u, "R", &r), ("V", &v, "P", &p), ("V", &v, "Q", &q)],
    )?;
    // Stored in canonical form so the recorded bracket survives serialization.
    let [p1, p2, p, q, r, g, w, x, y, z, u, v] =
        [p1, p2, p, q, r, g, w, x, y, z, u, v].map(|pt| pt.canonical());
    let [lp, lq, lr] = [lp, lq, lr].map(|l| l.canonical());
    let collinearity = bracket(&p2, &u, &v);

    let pts = [&p1, &p2, &p, &q, &r, &g, &w, &x, &y, &z, &u, &v];
    let lines = [&lp, &lq, &lr];
    let bits = bit_stats(
        pts.iter()
            .map(|p| p.coords())
            .chain(lines.iter().map(|l| l.coords())),
    );
    let auxiliary = axis_q
        .auxiliary
        .iter()
        .chain(axis_r.auxiliary.iter())
        .map(Point::canonical)
        .collect();
    Ok(ConstructionTrace {
        scheme: scheme.clone(),
        c1,
        c2,
        d1,
        d2,
        p1,
        p2,
        p,
        q,
        r,
        g,
        w,
        x,
        y,
        z,
        u,
        v,
        lp,
        lq,
        lr,
        auxiliary,
        collinearity,
        retries: Vec::new(),
        bits,
    })
}

#[derive(Clone, Debug)]
pub struct CheckOptions {
    /// Try this scheme first instead of the standard one.
    pub scheme: Option<PartitionScheme>,
    pub seed: u64,
    /// Schemes actually attempted before giving up on the construction.
    pub max_retries: usize,
}

pub const DEFAULT_MAX_RETRIES: usize = 64;

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            scheme: None,
            seed: 0,
            max_retries: DEFAULT_MAX_RETRIES,
        }
    }
}

/// Seven or more of the points on one irreducible conic.
#[derive(Clone, Debug)]
pub struct ConicFallback {
    pub conic: Conic,
    pub off: Vec<Point>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub verdict: Verdict,
    pub trace: Option<ConstructionTrace>,
    pub retries: Vec<RetryRecord>,
    pub fallback: Option<ConicFallback>,
}

fn first_duplicate(points: &[Point; 10]) -> Option<(usize, usize)> {
    (0..10)
        .flat_map(|i| (i + 1..10).map(move |j| (i, j)))
        .find(|&(i, j)| points[i] == points[j])
}

/// Decides whether the ten points lie on a cubic with the default options.
pub fn check_ten_on_cubic(points: &[Point; 10]) -> Result<CheckOutcome> {
    check_ten_on_cubic_with(points, &CheckOptions::default())
}

pub fn check_ten_on_cubic_with(points: &[Point; 10], opts: &CheckOptions) -> Result<CheckOutcome> {
    if let Some((i, j)) = first_duplicate(points) {
        return Err(Error::DuplicatePoints(i + 1, j + 1));
    }
    let aux = AuxiliarySequence::new(opts.seed);
    let mut fits: HashMap<[usize; 5], std::result::Result<Conic, String>> = HashMap::new();
    let mut retries = Vec::new();
    let schemes = opts
        .scheme
        .iter()
        .cloned()
        .chain(PartitionScheme::enumerate().filter(|s| Some(s) != opts.scheme.as_ref()));
    let mut attempts = 0;
    for scheme in schemes {
        if attempts >= opts.max_retries {
            break;
        }
        // Schemes relying on a five-set already known to be bad are skipped for free.
        if scheme.sets().iter().any(|s| matches!(fits.get(*s), Some(Err(_)))) {
            continue;
        }
        attempts += 1;
        let mut conics = Vec::with_capacity(4);
        let mut failure = None;
        for (set, name) in scheme.sets().into_iter().zip(["C1", "C2", "D1", "D2"]) {
            let fit = fits
                .entry(*set)
                .or_insert_with(|| fit_checked(points, set, name).map_err(|e| e.to_string()));
            match fit {
                Ok(c) => conics.push(c.clone()),
                Err(e) => {
                    failure = Some(e.clone());
                    break;
                }
            }
        }
        let result = match failure {
            Some(reason) => Err(reason),
            None => {
                let four: [Conic; 4] = conics.try_into().expect("four conics");
                build_from_conics(points, &scheme, four, &aux).map_err(|e| e.to_string())
            }
        };
        match result {
            Ok(mut trace) => {
                trace.retries = retries.clone();
                return Ok(CheckOutcome {
                    verdict: trace.verdict(),
                    trace: Some(trace),
                    retries,
                    fallback: None,
                });
            }
            Err(reason) => retries.push(RetryRecord { scheme, reason }),
        }
    }
    if let Some(fb) = find_conic_fallback(points)? {
        return Ok(CheckOutcome {
            verdict: fb.verdict.clone(),
            trace: None,
            retries,
            fallback: Some(fb),
        });
    }
    let last = retries
        .last()
        .map(|r| format!("; last failure ({}): {}", r.scheme, r.reason))
        .unwrap_or_default();
    Ok(CheckOutcome {
        verdict: Verdict::Degenerate(format!(
            "no usable partition among {attempts} attempted and no seven points on a conic{last}"
        )),
        trace: None,
        retries,
        fallback: None,
    })
}

/// Searches for an irreducible conic through at least seven of the points.
pub fn find_conic_fallback(points: &[Point; 10]) -> Result<Option<ConicFallback>> {
    for idx in combinations(10, 5) {
        let idx: [usize; 5] = idx.try_into().expect("five");
        let Ok(conic) = fit_conic(&pick(points, &idx)) else {
            continue;
        };
        if !conic.is_irreducible() {
            continue;
        }
        let (on, off): (Vec<&Point>, Vec<&Point>) = points.iter().partition(|p| conic.contains(p));
        if on.len() >= 7 {
            let off: Vec<Point> = off.into_iter().cloned().collect();
            let verdict = fallback_seven_on_conic(points, &conic, &off)?;
            return Ok(Some(ConicFallback { conic, off, verdict }));
        }
    }
    Ok(None)
}

/// With at least seven of the points on the irreducible conic `conic7`, a cubic
/// through all ten must contain the conic, so the rest must be collinear.
pub fn fallback_seven_on_conic(points: &[Point; 10], conic7: &Conic, off: &[Point]) -> Result<Verdict> {
    if !conic7.is_irreducible() {
        return Err(Error::FallbackHypothesis("the conic is reducible".into()));
    }
    let on = points.iter().filter(|p| conic7.contains(p)).count();
    if on < 7 {
        return Err(Error::FallbackHypothesis(format!(
            "only {on} of the points lie on the conic"
        )));
    }
    let expected: Vec<&Point> = points.iter().filter(|p| !conic7.contains(p)).collect();
    if off.len() != expected.len() || expected.iter().any(|p| !off.contains(p)) {
        return Err(Error::FallbackHypothesis(
            "the listed points are not exactly those off the conic".into(),
        ));
    }
    let collinear_rest = match off {
        [a, b, c] => collinear(a, b, c),
        _ => true,
    };
    Ok(if collinear_rest {
        Verdict::OnCubic
    } else {
        Verdict::NotOnCubic
    })
}

/// The ten points of the worked example on `x³ - xz² - y²z - yz² = 0`.
pub fn example_points() -> [Point; 10] {
    let q = |n: i64, d: i64| Rational::new(n.into(), d.into());
    let p = |x: Rational, y: Rational| Point::new(x, y, int(1)).expect("affine");
    [
        p(int(0), int(0)),
        p(int(6), int(-15)),
        p(int(1), int(0)),
        p(int(2), int(2)),
        p(q(-5, 9), q(8, 27)),
        p(int(2), int(-3)),
        p(q(1, 4), q(-3, 8)),
        p(int(-1), int(0)),
        p(int(-1), int(-1)),
        p(int(6), int(14)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64, z: i64) -> Point {
        Point::from_ints(x, y, z).unwrap()
    }

    #[test]
    fn cremona_of_unit_point() {
        let e = [p(1, 0, 0), p(0, 1, 0), p(0, 0, 1)];
        let l = cremona_line(&p(1, 1, 1), [&e[0], &e[1], &e[2]]).unwrap();
        assert_eq!(l, Line::from_ints(1, 1, -1).unwrap());
        let l = cremona_line(&p(1, 2, 3), [&e[0], &e[1], &e[2]]).unwrap();
        assert_eq!(l, Line::from_ints(6, 3, -2).unwrap());
        assert!(cremona_line(&p(1, 1, 0), [&e[0], &e[1], &e[2]]).is_err());
    }

    #[test]
    fn scheme_text_round_trip() {
        let s: PartitionScheme = "s1=1,2,3,4,5;t1=3,4,5,6,7".parse().unwrap();
        assert_eq!(s, PartitionScheme::standard());
        assert_eq!(s.to_string(), "s1=1,2,3,4,5;t1=3,4,5,6,7");
        assert_eq!(s.t2, [0, 1, 7, 8, 9]);
        assert!("s1=1,2,3,4,5;t1=1,2,3,4,6".parse::<PartitionScheme>().is_err());
        assert!("s1=0,2,3,4,5;t1=3,4,5,6,7".parse::<PartitionScheme>().is_err());
    }

    #[test]
    fn enumeration_starts_with_standard_and_never_repeats() {
        let all: Vec<PartitionScheme> = PartitionScheme::enumerate().collect();
        assert_eq!(all[0], PartitionScheme::standard());
        assert_eq!(all.len(), 126 * 100);
        let unique: std::collections::HashSet<_> = all.iter().collect();
        assert_eq!(unique.len(), all.len());
    }

    #[test]
    fn lattice_sequence_starts_on_first_ring() {
        let pts = AuxiliarySequence::default().points();
        assert_eq!(pts.len(), DEFAULT_AUXILIARY_LIMIT);
        assert_eq!(pts[0], p(-1, -1, 1));
        assert_eq!(pts[8], p(-2, -2, 1));
    }
}
