mod common;

use common::{pencil_pair, Gen};
use proptest::prelude::*;
use straightedge::conics::{fit_conic, line_conic_intersections_ext};
use straightedge::constructions::{
    build_configuration, check_ten_on_cubic, check_ten_on_cubic_with, example_points, fourth_intersection,
    radical_axis, radical_axis_with, AuxiliarySequence, CheckOptions, PartitionScheme, Verdict,
};
use straightedge::oracle::{cubic_det, generate_instance};
use straightedge::quadratic::Quad;
use straightedge::{bracket, Field, Point};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn fourth_point_lies_on_both_conics(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let [e1, e2, e3, a1, a2, b1, b2] = g.general::<7>();
        let c1 = fit_conic(&[e1.clone(), e2.clone(), e3.clone(), a1, a2]).unwrap();
        let c2 = fit_conic(&[e1.clone(), e2.clone(), e3.clone(), b1, b2]).unwrap();
        prop_assume!(!c1.same_curve(&c2));
        let shared = [e1, e2, e3];
        let p = fourth_intersection(&c1, &c2, &shared).unwrap();
        prop_assert!(c1.contains(&p) && c2.contains(&p));
    }

    #[test]
    fn radical_axis_passes_through_remaining_intersections(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let Some(pair) = pencil_pair(&mut g) else { return Ok(()) };
        let axis = radical_axis(&pair.c1, &pair.c2, &pair.u, &pair.v).unwrap();
        prop_assert_eq!(axis, pair.axis);
    }

    #[test]
    fn radical_axis_meets_both_conics_in_the_same_points(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let [u, v, a1, a2, a3, b1, b2, b3] = g.general::<8>();
        let c1 = fit_conic(&[u.clone(), v.clone(), a1, a2, a3]).unwrap();
        let c2 = fit_conic(&[u.clone(), v.clone(), b1, b2, b3]).unwrap();
        prop_assume!(!c1.same_curve(&c2));
        let Ok(axis) = radical_axis_with(&c1, &c2, &u, &v, &AuxiliarySequence::new(seed | 1)) else {
            return Ok(());
        };
        let pts = line_conic_intersections_ext(&c1, &axis.line).unwrap();
        let c2q = c2.map_field(Quad::from_base);
        for p in &pts {
            prop_assert!(c2q.contains(p), "{p} off C2");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn example_verdict_survives_projective_maps(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let m = g.map();
        let k = example_points().map(|p| m.apply(&p));
        let out = check_ten_on_cubic(&k).unwrap();
        prop_assert_eq!(&out.verdict, &Verdict::OnCubic);
        if let Some(t) = out.trace {
            prop_assert!(bracket(&t.p2, &t.u, &t.v).is_zero());
        }
    }

    #[test]
    fn verdict_ignores_input_order(seed in any::<u64>(), on in any::<bool>()) {
        let mut g = Gen::new(seed);
        let mut k = generate_instance(on, seed % 1000).unwrap();
        for i in (1..10).rev() {
            k.swap(i, g.int(0, i as i64) as usize);
        }
        let out = check_ten_on_cubic(&k).unwrap();
        prop_assume!(!out.verdict.is_degenerate());
        prop_assert_eq!(out.verdict == Verdict::OnCubic, on);
    }

    #[test]
    fn verdict_matches_determinant(seed in 0u64..5000, on in any::<bool>()) {
        let k = generate_instance(on, seed).unwrap();
        let det_zero = cubic_det(&k).unwrap() == common::zero();
        prop_assert_eq!(det_zero, on);
        let opts = CheckOptions { seed, ..CheckOptions::default() };
        let out = check_ten_on_cubic_with(&k, &opts).unwrap();
        prop_assume!(!out.verdict.is_degenerate());
        prop_assert_eq!(out.verdict == Verdict::OnCubic, det_zero);
        let t = out.trace.unwrap();
        prop_assert!(t.failed_incidences().is_empty(), "{:?}", t.failed_incidences());
    }
}

#[test]
fn duplicate_points_are_rejected() {
    let mut k = example_points();
    k[7] = k[2].clone();
    assert!(check_ten_on_cubic(&k).is_err());
}

#[test]
fn collinear_four_forces_retry() {
    // K1..K4 on the x-axis: every scheme containing them in a conic's five fails.
    let mut k = example_points();
    k[3] = Point::from_ints(5, 0, 1).unwrap();
    let opts = CheckOptions {
        max_retries: 1,
        ..CheckOptions::default()
    };
    let out = check_ten_on_cubic_with(&k, &opts).unwrap();
    assert!(out.verdict.is_degenerate(), "{}", out.verdict);
    assert_eq!(out.retries.len(), 1);
    assert!(out.retries[0].reason.contains("line pair"), "{}", out.retries[0].reason);
    let full = check_ten_on_cubic(&k).unwrap();
    assert!(!full.verdict.is_degenerate());
    let det_zero = cubic_det(&k).unwrap() == common::zero();
    assert_eq!(full.verdict == Verdict::OnCubic, det_zero);
}

#[test]
fn explicit_scheme_is_tried_first() {
    let scheme: PartitionScheme = "s1=1,2,3,4,5;t1=1,2,5,7,8".parse().unwrap();
    let opts = CheckOptions {
        scheme: Some(scheme.clone()),
        ..CheckOptions::default()
    };
    let out = check_ten_on_cubic_with(&example_points(), &opts).unwrap();
    assert_eq!(out.verdict, Verdict::OnCubic);
    assert_eq!(out.trace.unwrap().scheme, scheme);
}

#[test]
fn every_scheme_agrees_on_the_example() {
    let k = example_points();
    // The example has several collinear triples, so most schemes hit a line pair.
    let mut built = 0;
    for scheme in PartitionScheme::enumerate().step_by(7) {
        if let Ok(t) = build_configuration(&k, &scheme) {
            assert_eq!(t.verdict(), Verdict::OnCubic, "{scheme}");
            built += 1;
            if built == 30 {
                return;
            }
        }
    }
    panic!("only {built} schemes built");
}

#[test]
fn auxiliary_seed_does_not_change_the_axis() {
    let mut g = Gen::new(7);
    let pair = loop {
        if let Some(p) = pencil_pair(&mut g) {
            break p;
        }
    };
    for seed in 0..4 {
        let axis = radical_axis_with(&pair.c1, &pair.c2, &pair.u, &pair.v, &AuxiliarySequence::new(seed)).unwrap();
        assert_eq!(axis.line, pair.axis);
    }
}
