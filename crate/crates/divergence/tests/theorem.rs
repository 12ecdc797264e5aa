use divergence::{
    a3_pairs, criterion_ratio, criterion_table, denominator_gap, doa_test, length_bounds, write_tables_csv, DoaConfig,
    Verdict,
};
use excursions::{time_average_grid, trace_ray, RayTarget};
use proptest::prelude::*;
use schottky::{build_group, GroupParams, SchottkyGroup};
use symbolic::SequenceSpec;

fn group() -> SchottkyGroup {
    build_group(GroupParams::default()).unwrap()
}

fn spec(s: &str) -> SequenceSpec {
    s.parse().unwrap()
}

#[test]
fn case1_ratio_decays() {
    let g = group();
    let t = criterion_table(&spec("case1"), 2, &[100, 1000, 10_000], &g).unwrap();
    let r: Vec<f64> = t.rows.iter().map(|r| r.ratio).collect();
    println!("case1 N=2 ratios {r:?}");
    assert!(r[1] < r[0] && r[2] < r[1]);
    assert!(r[2] < 0.5 * r[0]);
    // the printed approximation q l(h) / sum 2 ln i, with r_i = i + 1 at N = 2
    for row in &t.rows {
        let den: f64 = (2..=row.q + 1).map(|i| 2.0 * (i as f64).ln()).sum();
        assert!((row.den - den).abs() < 1e-6 * den);
        let approx = row.q as f64 * g.translation_length() / den;
        assert!((row.ratio / approx - 1.0).abs() < 0.05, "{} vs {approx}", row.ratio);
    }
}

#[test]
fn case2_ratio_grows() {
    let g = group();
    let a = criterion_ratio(&spec("case2"), 2, 100, &g).unwrap();
    let b = criterion_ratio(&spec("case2"), 2, 200, &g).unwrap();
    let growth = b.ratio / a.ratio;
    // prediction from the sums sum i l(h) / sum 2 ln i, with omega_i = h^{i+1}
    let predict = |q: usize| {
        let num: f64 = (1..=q).map(|i| (i + 1) as f64).sum::<f64>() * g.translation_length();
        let den: f64 = (2..=q + 1).map(|i| 2.0 * (i as f64).ln()).sum();
        num / den
    };
    let predicted = predict(200) / predict(100);
    println!("case2 growth {growth}, predicted {predicted}");
    assert!(growth >= 1.6);
    assert!((growth / predicted - 1.0).abs() < 0.25);
}

#[test]
fn periodic_ratio_is_flat() {
    let g = group();
    let want = g.translation_length() / (2.0 * 5f64.ln());
    let t = criterion_table(&spec("periodic:hp^5"), 3, &[1, 7, 50, 400], &g).unwrap();
    for r in &t.rows {
        assert!((r.ratio - want).abs() < 1e-9);
    }
}

#[test]
fn verdicts() {
    let g = group();
    let c = DoaConfig::default();
    let cases = [("case1", Verdict::DivergingOnAverage), ("case2", Verdict::Not), ("periodic:hp", Verdict::Not)];
    for (text, want) in cases {
        let report = doa_test(&spec(text), &[2, 3], 2000, &g, &c).unwrap();
        for cut in &report.cutoffs {
            println!("{text} N={} slope {:.3} tail_min {:.3} {}", cut.n, cut.slope, cut.tail_min, cut.verdict);
        }
        assert_eq!(report.verdict, want, "{text}");
        let json = report.to_json().unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["verdict"], want.to_string());
    }
}

#[test]
fn tables_export_as_csv() {
    let g = group();
    let a = criterion_table(&spec("case1"), 2, &[1, 2, 3], &g).unwrap();
    let b = criterion_table(&spec("case1"), 3, &[1, 2], &g).unwrap();
    let mut buf = Vec::new();
    write_tables_csv(&[&a, &b], &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "N,q,num,den,ratio");
    assert_eq!(lines.len(), 6);
    assert!(lines[4].starts_with("3,1,"));
}

#[test]
fn denominators_agree_asymptotically() {
    let g = group();
    let pairs = a3_pairs(&spec("case1"), 2, 5000).unwrap();
    let gaps: Vec<f64> = [50, 500, 5000].iter().map(|&q| denominator_gap(&g, &pairs[..q])).collect();
    println!("denominator gaps {gaps:?}");
    assert!(gaps[1] < gaps[0] && gaps[2] < gaps[1]);
}

#[test]
fn length_bounds_on_the_examples() {
    let g = group();
    for text in ["case1", "case2", "periodic:hp^5", "formula:1:2*i^1"] {
        let pairs = a3_pairs(&spec(text), 2, 300).unwrap();
        for q in [1, 10, 100, 300] {
            let b = length_bounds(&g, &pairs[..q]);
            assert!(b.upper_ok(), "{text} q={q}: {b:?}");
            assert!(b.lower_ok(), "{text} q={q}: {b:?}");
        }
    }
}

#[test]
fn criterion_and_flow_agree() {
    let g = group();
    let t = criterion_table(&spec("case1"), 2, &[5, 20, 60], &g).unwrap();
    assert!(t.rows.windows(2).all(|w| w[1].ratio < w[0].ratio));
    for k in [2.0, 3.0] {
        let tr = trace_ray(&g, &RayTarget::Code(spec("case1")), 1000.0, k).unwrap();
        let avg = time_average_grid(&tr, &[100.0, 300.0, 1000.0]);
        assert!(avg.windows(2).all(|w| w[1].1 < w[0].1), "k={k}: {avg:?}");
    }
}

fn a3_code() -> impl Strategy<Value = String> {
    // omega blocks with small parabolics, then a large parabolic power
    let pair = (1i64..4, any::<bool>(), 0i64..2, 2i64..40, any::<bool>());
    prop::collection::vec(pair, 1..30).prop_map(|v| {
        let mut s = String::new();
        for (a, neg_a, small, r, neg_r) in v {
            let a = if neg_a { -a } else { a };
            if small == 1 {
                s.push_str(&format!("h^{a} p h^{a} "));
            } else {
                s.push_str(&format!("h^{a} "));
            }
            s.push_str(&format!("p^{} ", if neg_r { -r } else { r }));
        }
        s
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn upper_bound_never_fails(code in a3_code()) {
        let g = group();
        let word: symbolic::WordA2 = code.parse().unwrap();
        let (a3, _) = symbolic::reblock(&word, 2).unwrap();
        let pairs = a3.pairs();
        let b = length_bounds(&g, pairs);
        prop_assert!(b.upper_ok(), "{:?}", b);
        prop_assert!(b.lower_ok(), "{:?}", b);
    }
}
