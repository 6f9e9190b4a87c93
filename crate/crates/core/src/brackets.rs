//! Bracket monomials and binomial relations.
//!
//! `h(D,A,B,C,E)` is the binomial `[ACD][BDE] = [BCD][ADE]`, valid when `A`,
//! `B`, `D` are collinear. `c(A,B,C,D,E,F)` is `[ACE][ABF][CDF][BDE] =
//! [ACF][ABE][CDE][BDF]`, valid when the six points lie on a conic. Multiplying
//! the 25 relations of [`certificate_relations`] side by side and cancelling
//! leaves `h(P2,V,U,P,Y)`, i.e. the collinearity of `P2`, `U`, `V`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::conics::line_conic_intersections_ext;
use crate::constructions::ConstructionTrace;
use crate::error::{Error, Result};
use crate::projective::{bracket, Point};
use crate::quadratic::{Biquadratic, Quad};
use crate::scalar::{Field, Rational};

/// The fourteen points the certificate talks about, in canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Label {
    G,
    P,
    P1,
    P2,
    Q1,
    Q2,
    R1,
    R2,
    U,
    V,
    W,
    X,
    Y,
    Z,
}

impl Label {
    pub const ALL: [Label; 14] = [
        Label::G,
        Label::P,
        Label::P1,
        Label::P2,
        Label::Q1,
        Label::Q2,
        Label::R1,
        Label::R2,
        Label::U,
        Label::V,
        Label::W,
        Label::X,
        Label::Y,
        Label::Z,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Label::G => "G",
            Label::P => "P",
            Label::P1 => "P1",
            Label::P2 => "P2",
            Label::Q1 => "Q1",
            Label::Q2 => "Q2",
            Label::R1 => "R1",
            Label::R2 => "R2",
            Label::U => "U",
            Label::V => "V",
            Label::W => "W",
            Label::X => "X",
            Label::Y => "Y",
            Label::Z => "Z",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Accepts `P2`, `P_2` and `P₂`.
impl FromStr for Label {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let plain: String = text
            .trim()
            .chars()
            .filter(|&c| c != '_')
            .map(|c| match c {
                '₁' => '1',
                '₂' => '2',
                c => c,
            })
            .collect();
        Label::ALL
            .into_iter()
            .find(|l| l.name() == plain)
            .ok_or_else(|| Error::Parse {
                kind: "label",
                text: text.to_string(),
            })
    }
}

/// A bracket with its labels sorted; the permutation sign lives in the monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BracketSymbol([Label; 3]);

impl BracketSymbol {
    /// Sorts the labels, returning the parity sign of the sort.
    pub fn canonical(a: Label, b: Label, c: Label) -> Result<(i8, BracketSymbol)> {
        if a == b || b == c || a == c {
            return Err(Error::RepeatedLabel(format!("[{a},{b},{c}]")));
        }
        let mut l = [a, b, c];
        let mut sign = 1;
        for i in 0..3 {
            for j in 0..2 - i {
                if l[j] > l[j + 1] {
                    l.swap(j, j + 1);
                    sign = -sign;
                }
            }
        }
        Ok((sign, BracketSymbol(l)))
    }

    pub fn labels(&self) -> [Label; 3] {
        self.0
    }
}

impl fmt::Display for BracketSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        write!(f, "[{a},{b},{c}]")
    }
}

/// `sign · ∏ symbols`, the symbols kept sorted so equal multisets compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketMonomial {
    sign: i8,
    symbols: Vec<BracketSymbol>,
}

impl BracketMonomial {
    pub fn one() -> Self {
        BracketMonomial {
            sign: 1,
            symbols: Vec::new(),
        }
    }

    pub fn from_brackets(brackets: &[[Label; 3]]) -> Result<Self> {
        let mut m = BracketMonomial::one();
        for &[a, b, c] in brackets {
            let (s, sym) = BracketSymbol::canonical(a, b, c)?;
            m.sign *= s;
            m.symbols.push(sym);
        }
        m.symbols.sort_unstable();
        Ok(m)
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn symbols(&self) -> &[BracketSymbol] {
        &self.symbols
    }

    pub fn negated(mut self) -> Self {
        self.sign = -self.sign;
        self
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&other.symbols);
        symbols.sort_unstable();
        BracketMonomial {
            sign: self.sign * other.sign,
            symbols,
        }
    }

    /// How many times each label occurs.
    pub fn degrees(&self) -> BTreeMap<Label, usize> {
        let mut d = BTreeMap::new();
        for s in &self.symbols {
            for l in s.0 {
                *d.entry(l).or_insert(0) += 1;
            }
        }
        d
    }

    pub fn evaluate<F: Field>(&self, cfg: &CertificateConfiguration<F>) -> Result<F> {
        let mut v = if self.sign < 0 { -F::one() } else { F::one() };
        for s in &self.symbols {
            v = v * cfg.bracket(*s)?;
        }
        Ok(v)
    }
}

impl fmt::Display for BracketMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            f.write_str("-")?;
        }
        if self.symbols.is_empty() {
            return f.write_str("1");
        }
        for s in &self.symbols {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Parses `-[V,Y,R1][R2,R1,P2]`, the form used in printed tables.
impl FromStr for BracketMonomial {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let err = || Error::Parse {
            kind: "bracket monomial",
            text: text.to_string(),
        };
        let t = text.trim();
        let (neg, mut rest) = match t.strip_prefix(['-', '−']) {
            Some(r) => (true, r.trim()),
            None => (false, t),
        };
        if rest == "1" {
            let one = BracketMonomial::one();
            return Ok(if neg { one.negated() } else { one });
        }
        let mut brackets = Vec::new();
        while !rest.is_empty() {
            let inner_end = rest.find(']').ok_or_else(err)?;
            let inner = rest.strip_prefix('[').ok_or_else(err)?;
            let labels: Vec<Label> = inner[..inner_end - 1]
                .split(',')
                .map(str::parse)
                .collect::<Result<_>>()?;
            brackets.push(<[Label; 3]>::try_from(labels).map_err(|_| err())?);
            rest = rest[inner_end + 1..].trim_start();
        }
        let m = BracketMonomial::from_brackets(&brackets)?;
        Ok(if neg { m.negated() } else { m })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationKind {
    H,
    C,
    /// Result of multiplying and cancelling other relations.
    Product,
}

/// `lhs = rhs`, normalized so the right side carries sign `+1`.
///
/// A relation can be stated either way round; `reversed` records that the
/// sides are swapped relative to the definition of its kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialRelation {
    pub kind: RelationKind,
    pub args: Vec<Label>,
    pub reversed: bool,
    lhs: BracketMonomial,
    rhs: BracketMonomial,
}

impl BinomialRelation {
    pub fn new(kind: RelationKind, args: Vec<Label>, lhs: BracketMonomial, rhs: BracketMonomial) -> Self {
        let mut lhs = lhs;
        let mut rhs = rhs;
        lhs.sign *= rhs.sign;
        rhs.sign = 1;
        BinomialRelation {
            kind,
            args,
            reversed: false,
            lhs,
            rhs,
        }
    }

    /// The same equation with its sides exchanged.
    pub fn reverse(self) -> Self {
        let mut r = BinomialRelation::new(self.kind, self.args, self.rhs, self.lhs);
        r.reversed = !self.reversed;
        r
    }

    pub fn lhs(&self) -> &BracketMonomial {
        &self.lhs
    }

    pub fn rhs(&self) -> &BracketMonomial {
        &self.rhs
    }

    /// Same two sides, ignoring how the relation was generated.
    pub fn same_equation(&self, other: &Self) -> bool {
        self.lhs == other.lhs && self.rhs == other.rhs
    }

    pub fn is_identity(&self) -> bool {
        self.lhs == self.rhs
    }

    /// Each label has the same degree on both sides, so the relation does not
    /// depend on the chosen coordinate representatives.
    pub fn is_homogeneous(&self) -> bool {
        self.lhs.degrees() == self.rhs.degrees()
    }

    /// Both sides evaluated exactly.
    pub fn holds<F: Field>(&self, cfg: &CertificateConfiguration<F>) -> Result<bool> {
        Ok(self.lhs.evaluate(cfg)? == self.rhs.evaluate(cfg)?)
    }

    /// `h(D,A,B,C,E)` / `c(A,B,C,D,E,F)`, prefixed with `~` when reversed; a
    /// product of other relations prints as its equation.
    pub fn generator(&self) -> String {
        let args: Vec<&str> = self.args.iter().map(|l| l.name()).collect();
        let tilde = if self.reversed { "~" } else { "" };
        match self.kind {
            RelationKind::H => format!("{tilde}h({})", args.join(",")),
            RelationKind::C => format!("{tilde}c({})", args.join(",")),
            RelationKind::Product => self.to_string(),
        }
    }
}

impl fmt::Display for BinomialRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// Parses the generator form `h(D,A,B,C,E)` or `c(A,B,C,D,E,F)`, optionally prefixed with `~`.
impl FromStr for BinomialRelation {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let err = || Error::Parse {
            kind: "relation",
            text: text.to_string(),
        };
        let t = text.trim();
        if let Some(rest) = t.strip_prefix('~') {
            return rest.parse::<BinomialRelation>().map(BinomialRelation::reverse);
        }
        let (kind, rest) = if let Some(r) = t.strip_prefix('h') {
            (RelationKind::H, r)
        } else if let Some(r) = t.strip_prefix('c') {
            (RelationKind::C, r)
        } else {
            return Err(err());
        };
        let inner = rest
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(err)?;
        let labels: Vec<Label> = inner.split(',').map(str::parse).collect::<Result<_>>()?;
        match (kind, labels.as_slice()) {
            (RelationKind::H, &[d, a, b, c, e]) => h_relation(d, a, b, c, e),
            (RelationKind::C, &[a, b, c, d, e, f]) => c_relation(a, b, c, d, e, f),
            _ => Err(err()),
        }
    }
}

fn distinct(labels: &[Label]) -> Result<()> {
    for i in 0..labels.len() {
        if labels[i + 1..].contains(&labels[i]) {
            let names: Vec<&str> = labels.iter().map(|l| l.name()).collect();
            return Err(Error::RepeatedLabel(names.join(",")));
        }
    }
    Ok(())
}

/// `[ACD][BDE] = [BCD][ADE]`, from the collinearity of `A`, `B`, `D`.
pub fn h_relation(d: Label, a: Label, b: Label, c: Label, e: Label) -> Result<BinomialRelation> {
    distinct(&[d, a, b, c, e])?;
    Ok(BinomialRelation::new(
        RelationKind::H,
        vec![d, a, b, c, e],
        BracketMonomial::from_brackets(&[[a, c, d], [b, d, e]])?,
        BracketMonomial::from_brackets(&[[b, c, d], [a, d, e]])?,
    ))
}

/// `[ACE][ABF][CDF][BDE] = [ACF][ABE][CDE][BDF]`, from six points on a conic.
pub fn c_relation(a: Label, b: Label, c: Label, d: Label, e: Label, f: Label) -> Result<BinomialRelation> {
    distinct(&[a, b, c, d, e, f])?;
    Ok(BinomialRelation::new(
        RelationKind::C,
        vec![a, b, c, d, e, f],
        BracketMonomial::from_brackets(&[[a, c, e], [a, b, f], [c, d, f], [b, d, e]])?,
        BracketMonomial::from_brackets(&[[a, c, f], [a, b, e], [c, d, e], [b, d, f]])?,
    ))
}

use Label::{G, P, P1, P2, Q1, Q2, R1, R2, U, V, W, X, Y, Z};

// The later rows of each table are printed with their sides exchanged, which
// is what lets the products cancel.
const H_REVERSED_FROM: usize = 10;
const C_REVERSED_FROM: usize = 3;

const H_ROWS: [[Label; 5]; 19] = [
    [R1, V, R2, P2, Y],
    [R2, R1, P, Q1, Z],
    [R1, R2, P, Q2, G],
    [P1, Y, P2, Q2, R2],
    [Y, P2, P1, U, V],
    [P1, X, P2, Q1, R1],
    [U, Q2, P, P2, X],
    [Z, G, P, R2, Y],
    [G, W, P, P1, Q1],
    [Y, V, Z, P, P1],
    [V, R1, P, P2, Y],
    [P1, Y, X, Q2, U],
    [P1, Y, X, R1, G],
    [Q2, U, Q1, P2, X],
    [Q2, Q1, P, R1, W],
    [Q1, Q2, P, R2, G],
    [G, Z, P, P1, R1],
    [W, G, P, Q2, X],
    [X, U, W, P, P1],
];

const C_ROWS: [[Label; 6]; 6] = [
    [G, Z, Y, R2, R1, P1],
    [G, W, Q2, P1, X, Q1],
    [R1, Q1, P2, P1, R2, Q2],
    [G, Z, R1, P1, Y, R2],
    [G, P1, Q2, Q1, X, W],
    [R1, P1, Q2, Q1, R2, P2],
];

/// The 19 collinearity relations followed by the 6 conic relations.
pub fn certificate_relations() -> Vec<BinomialRelation> {
    let orient = |r: BinomialRelation, rev: bool| if rev { r.reverse() } else { r };
    let h = H_ROWS.iter().enumerate().map(|(i, &[d, a, b, c, e])| {
        orient(h_relation(d, a, b, c, e).expect("distinct labels"), i >= H_REVERSED_FROM)
    });
    let c = C_ROWS.iter().enumerate().map(|(i, &[a, b, c, d, e, f])| {
        orient(c_relation(a, b, c, d, e, f).expect("distinct labels"), i >= C_REVERSED_FROM)
    });
    h.chain(c).collect()
}

/// The relation the certificate is meant to produce.
pub fn certificate_conclusion() -> BinomialRelation {
    h_relation(P2, V, U, P, Y).expect("distinct labels")
}

/// Output of [`symbolic_reduce`]: the residual relation and the symbols that cancelled.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub relation: BinomialRelation,
    /// Each cancelled symbol, once per cancellation.
    pub cancelled: Vec<BracketSymbol>,
}

/// Multiplies all left sides and all right sides, then cancels common symbols.
pub fn symbolic_reduce(relations: &[BinomialRelation]) -> Reduction {
    let (lhs, rhs) = relations.iter().fold(
        (BracketMonomial::one(), BracketMonomial::one()),
        |(l, r), rel| (l.mul(&rel.lhs), r.mul(&rel.rhs)),
    );
    let mut left = Vec::new();
    let mut right = Vec::new();
    let mut cancelled = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < lhs.symbols.len() && j < rhs.symbols.len() {
        let (a, b) = (lhs.symbols[i], rhs.symbols[j]);
        if a == b {
            cancelled.push(a);
            i += 1;
            j += 1;
        } else if a < b {
            left.push(a);
            i += 1;
        } else {
            right.push(b);
            j += 1;
        }
    }
    left.extend_from_slice(&lhs.symbols[i..]);
    right.extend_from_slice(&rhs.symbols[j..]);
    let relation = BinomialRelation::new(
        RelationKind::Product,
        Vec::new(),
        BracketMonomial {
            sign: lhs.sign,
            symbols: left,
        },
        BracketMonomial {
            sign: rhs.sign,
            symbols: right,
        },
    );
    Reduction { relation, cancelled }
}

/// One relation per line in generator form; blank lines and `#` comments are skipped.
pub fn parse_relations(text: &str) -> Result<Vec<BinomialRelation>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::parse)
        .collect()
}

pub fn format_relations(relations: &[BinomialRelation]) -> String {
    relations.iter().map(|r| r.generator() + "\n").collect()
}

/// Coordinates for the labels, one fixed representative each.
#[derive(Clone, Debug)]
pub struct CertificateConfiguration<F = Rational> {
    points: BTreeMap<Label, Point<F>>,
}

impl<F: Field> CertificateConfiguration<F> {
    pub fn new(points: BTreeMap<Label, Point<F>>) -> Self {
        CertificateConfiguration { points }
    }

    pub fn get(&self, label: Label) -> Result<&Point<F>> {
        self.points
            .get(&label)
            .ok_or_else(|| Error::UnassignedLabel(label.to_string()))
    }

    pub fn bracket(&self, s: BracketSymbol) -> Result<F> {
        let [a, b, c] = s.0;
        Ok(bracket(self.get(a)?, self.get(b)?, self.get(c)?))
    }
}

/// Checks one relation on the configuration. Relations that are not
/// homogeneous in every label are rejected because their truth would depend
/// on the representatives.
pub fn numeric_check<F: Field>(relation: &BinomialRelation, cfg: &CertificateConfiguration<F>) -> Result<bool> {
    if !relation.is_homogeneous() {
        return Err(Error::Inhomogeneous(relation.to_string()));
    }
    relation.holds(cfg)
}

/// Per-relation results plus the nondegeneracy side conditions.
#[derive(Clone, Debug)]
pub struct CertificateReport {
    pub results: Vec<(BinomialRelation, bool)>,
    pub reduction: Reduction,
    /// Cancelled symbols that evaluate to zero; the cancellation is unjustified for these.
    pub vanishing_cancelled: Vec<BracketSymbol>,
    pub conclusion_holds: bool,
}

impl CertificateReport {
    pub fn passed(&self) -> usize {
        self.results.iter().filter(|(_, ok)| *ok).count()
    }

    pub fn reduces_to_conclusion(&self) -> bool {
        self.reduction.relation.same_equation(&certificate_conclusion())
    }

    /// All relations hold, the reduction is the conclusion, and no cancelled bracket vanishes.
    pub fn is_conclusive(&self) -> bool {
        self.passed() == self.results.len() && self.reduces_to_conclusion() && self.vanishing_cancelled.is_empty()
    }
}

pub fn check_certificate<F: Field>(
    relations: &[BinomialRelation],
    cfg: &CertificateConfiguration<F>,
) -> Result<CertificateReport> {
    let results = relations
        .iter()
        .map(|r| Ok((r.clone(), numeric_check(r, cfg)?)))
        .collect::<Result<Vec<_>>>()?;
    let reduction = symbolic_reduce(relations);
    let mut vanishing_cancelled = Vec::new();
    for s in &reduction.cancelled {
        if cfg.bracket(*s)?.is_zero() && !vanishing_cancelled.contains(s) {
            vanishing_cancelled.push(*s);
        }
    }
    let conclusion_holds = numeric_check(&certificate_conclusion(), cfg)?;
    Ok(CertificateReport {
        results,
        reduction,
        vanishing_cancelled,
        conclusion_holds,
    })
}

/// The trace's points together with `Q1, Q2 = L_Q ∩ C1` and `R1, R2 = L_R ∩ C2`,
/// which generally need two square roots.
pub fn configuration_from_trace(t: &ConstructionTrace) -> Result<CertificateConfiguration<Biquadratic>> {
    let [q1, q2] = line_conic_intersections_ext(&t.c1, &t.lq)?;
    let d1 = q1
        .coords()
        .iter()
        .chain(q2.coords())
        .find_map(|c| c.radicand().cloned());
    // Rationals tagged with √d1 so square roots taken over Q(√d1) see it.
    let tag = |x: Rational| -> Quad<Rational> {
        match &d1 {
            Some(d) => Quad::new(x, Rational::zero(), d.clone()).expect("d1 is not a square"),
            None => Quad::from_base(x),
        }
    };
    let c2 = t.c2.map_field(tag);
    let lr = t.lr.map_field(tag);
    let [r1, r2] = line_conic_intersections_ext(&c2, &lr)?;
    let lift = |p: &Point| p.map_field(|x| Quad::from_base(Quad::from_base(x)));
    let lift_q = |p: &Point<Quad<Rational>>| p.map_field(Quad::from_base);
    let mut points = BTreeMap::new();
    for (label, p) in [
        (G, &t.g),
        (P, &t.p),
        (P1, &t.p1),
        (P2, &t.p2),
        (U, &t.u),
        (V, &t.v),
        (W, &t.w),
        (X, &t.x),
        (Y, &t.y),
        (Z, &t.z),
    ] {
        points.insert(label, lift(p));
    }
    points.insert(Q1, lift_q(&q1));
    points.insert(Q2, lift_q(&q2));
    points.insert(R1, r1);
    points.insert(R2, r2);
    Ok(CertificateConfiguration::new(points))
}
