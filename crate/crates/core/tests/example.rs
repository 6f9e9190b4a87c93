use straightedge::constructions::{build_configuration, check_ten_on_cubic, example_points, PartitionScheme, Verdict};
use straightedge::oracle::cubic_det;
use straightedge::scalar::Rational;
use straightedge::{bracket, Line, Point};

fn pt(s: &str) -> Point {
    s.parse().unwrap()
}

fn affine(x: &str, y: &str) -> Point {
    let x: Rational = x.parse().unwrap();
    let y: Rational = y.parse().unwrap();
    Point::affine(x, y)
}

#[test]
fn golden_values() {
    let t = build_configuration(&example_points(), &PartitionScheme::standard()).unwrap();
    let expected = [
        (&t.p1, affine("-10", "11")),
        (&t.p2, affine("2", "5")),
        (&t.p, affine("-13", "-16")),
        (&t.q, affine("-8/5", "34/5")),
        (&t.r, affine("16/9", "46/9")),
        (&t.x, affine("12/5", "24/5")),
        (&t.y, affine("34/11", "49/11")),
        (&t.w, affine("20/13", "8/13")),
        (&t.z, affine("15/22", "-4/11")),
        (&t.u, affine("11/4", "13/2")),
        (&t.v, pt("[1 : 2 : 0]")),
    ];
    for (got, want) in expected {
        assert_eq!(*got, want);
    }
    assert_eq!(t.lq, "[10 : -7 : 18]".parse::<Line>().unwrap());
    assert_eq!(t.lr, "[2 : -1 : 10]".parse::<Line>().unwrap());
    assert_eq!(t.verdict(), Verdict::OnCubic);
    let l: Line = "[2 : -1 : 1]".parse().unwrap();
    assert!(l.contains(&t.p2) && l.contains(&t.u) && l.contains(&t.v));
}

#[test]
fn canonical_rendering() {
    let t = build_configuration(&example_points(), &PartitionScheme::standard()).unwrap();
    assert_eq!(t.p.to_string(), "[13 : 16 : -1]");
    assert_eq!(t.p1.to_string(), "[10 : -11 : -1]");
    assert_eq!(t.v.to_string(), "[1 : 2 : 0]");
    assert_eq!(t.q.to_string(), "[8 : -34 : -5]");
}

#[test]
fn every_recorded_incidence_holds() {
    let t = build_configuration(&example_points(), &PartitionScheme::standard()).unwrap();
    assert!(t.failed_incidences().is_empty(), "{:?}", t.failed_incidences());
    assert!(t.incidences().len() > 20);
}

#[test]
fn collinearity_bracket_is_zero() {
    let t = build_configuration(&example_points(), &PartitionScheme::standard()).unwrap();
    assert_eq!(bracket(&t.p2, &t.u, &t.v), Rational::from_integer(0.into()));
    assert_eq!(cubic_det(&example_points()).unwrap(), Rational::from_integer(0.into()));
}

#[test]
fn perturbed_last_point_is_off_the_cubic() {
    let mut k = example_points();
    k[9] = pt("[6 : 15 : 1]");
    let out = check_ten_on_cubic(&k).unwrap();
    assert_eq!(out.verdict, Verdict::NotOnCubic);
    assert_ne!(cubic_det(&k).unwrap(), Rational::from_integer(0.into()));
}

#[test]
fn pipeline_uses_standard_scheme_first() {
    let out = check_ten_on_cubic(&example_points()).unwrap();
    assert!(out.retries.is_empty());
    let t = out.trace.unwrap();
    assert_eq!(t.scheme, PartitionScheme::standard());
    assert_eq!(t.scheme.to_string(), "s1=1,2,3,4,5;t1=3,4,5,6,7");
}
