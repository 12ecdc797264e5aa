use dimension::*;
use schottky::{build_group, GroupParams, SchottkyGroup};
use symbolic::{endpoint, SequenceSpec, ENDPOINT_TOL};

fn group() -> SchottkyGroup {
    build_group(GroupParams::default()).unwrap()
}

#[test]
fn case1_continuations_of_members_are_covered() {
    let g = group();
    // c2 above the shadow constant fitted along Case-1 codes (about 1.02)
    let f = cover_family(CoverConfig { n: 2, delta: 0.5, budget: 16.0, c2: 1.5 }, &g).unwrap();
    assert!(!f.empty);
    assert!(!f.members.is_empty());
    let step = (f.members.len() / 300).max(1);
    for m in f.members.iter().step_by(step) {
        let spec: SequenceSpec = format!("prefix:{};case1", m.arc.word).parse().unwrap();
        let xi = endpoint(&spec, &g, ENDPOINT_TOL, 5000).angle;
        assert!(m.arc.contains(xi), "{}", m.arc.word);
        assert!(f.covers(xi));
    }
}

#[test]
fn small_budget_is_flagged_empty() {
    let f = cover_family(CoverConfig { n: 2, delta: 0.1, budget: 5.0, c2: 1.0 }, &group()).unwrap();
    assert!(f.empty);
    assert_eq!(f.power_sum(0.5), 0.0);
}

#[test]
fn power_sums_across_delta() {
    let g = group();
    let budget = 30.0;
    let wide = cover_family(CoverConfig { n: 2, delta: 10.0, budget, c2: 1.0 }, &g).unwrap();
    let narrow = cover_family(CoverConfig { n: 2, delta: 1.0, budget, c2: 1.0 }, &g).unwrap();
    let (a6, b6) = (wide.power_sum(0.6), narrow.power_sum(0.6));
    let (a3, b3) = (wide.power_sum(0.3), narrow.power_sum(0.3));
    println!("s = 0.6: {a6:.4} -> {b6:.4}\ns = 0.3: {a3:.4} -> {b3:.4}");
    assert!(b6 < a6);
    assert!(b3 >= a3);
}

#[test]
fn exports() {
    let f = cover_family(CoverConfig { n: 2, delta: 1.0, budget: 12.0, c2: 1.0 }, &group()).unwrap();
    let json: serde_json::Value = serde_json::from_str(&f.to_json().unwrap()).unwrap();
    assert_eq!(json["members"].as_array().unwrap().len(), f.members.len());
    assert!(json["members"][0]["arc"]["word"].is_string());
    let mut buf = Vec::new();
    f.write_annuli_csv(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert!(text.starts_with("t,members,omegas,parabolics\n"));
    assert_eq!(text.lines().count(), 1 + 12);
}
