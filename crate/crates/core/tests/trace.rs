use straightedge::constructions::{check_ten_on_cubic, check_ten_on_cubic_with, example_points, CheckOptions};
use straightedge::oracle::generate_instance;
use straightedge::trace::{from_json, to_json, TraceDoc};

#[test]
fn example_round_trips() {
    let t = check_ten_on_cubic(&example_points()).unwrap().trace.unwrap();
    let text = to_json(&t);
    let back = from_json(&text).unwrap();
    assert_eq!(back, t);
    assert_eq!(to_json(&back), text);
}

#[test]
fn document_fields() {
    let t = check_ten_on_cubic(&example_points()).unwrap().trace.unwrap();
    let doc = TraceDoc::from(&t);
    assert_eq!(doc.verdict, "ON_CUBIC");
    assert_eq!(doc.scheme.s1, [1, 2, 3, 4, 5]);
    assert_eq!(doc.scheme.t2, [1, 2, 8, 9, 10]);
    assert_eq!(doc.points.p2, "[2 : 5 : 1]");
    assert_eq!(doc.lines.lr, "[2 : -1 : 10]");
    assert_eq!(doc.collinearity, "0");
    assert_eq!(doc.auxiliary.len(), 4);
    let v: serde_json::Value = serde_json::from_str(&to_json(&t)).unwrap();
    assert_eq!(v["points"]["V"], "[1 : 2 : 0]");
    assert_eq!(v["lines"]["L_Q"], "[10 : -7 : 18]");
    assert!(v["conics"]["C1"]["equation"].is_string());
}

#[test]
fn tampered_verdict_is_rejected() {
    let t = check_ten_on_cubic(&example_points()).unwrap().trace.unwrap();
    let text = to_json(&t).replace("\"ON_CUBIC\"", "\"NOT_ON_CUBIC\"");
    assert!(from_json(&text).is_err());
}

#[test]
fn generated_instances_round_trip() {
    for seed in 0..6 {
        for on in [true, false] {
            let k = generate_instance(on, seed).unwrap();
            let opts = CheckOptions { seed, ..CheckOptions::default() };
            if let Some(t) = check_ten_on_cubic_with(&k, &opts).unwrap().trace {
                assert_eq!(from_json(&to_json(&t)).unwrap(), t);
            }
        }
    }
}
