use dimension::*;
use schottky::{build_group, GroupParams, SchottkyGroup};

fn group() -> SchottkyGroup {
    build_group(GroupParams::default()).unwrap()
}

fn harmonic(n: usize, a: f64) -> f64 {
    (1..=n).map(|k| (k as f64).powf(-a)).sum()
}

#[test]
fn parabolic_series_converges_at_one() {
    let sample = orbit_sample(&group(), Source::Parabolic, 30.0);
    let p = poincare_partial(&sample, 1.0);
    let (t20, t25, t30) = (p.total_below(20.0), p.total_below(25.0), p.total_below(30.0));
    // terms ~ n^-2 with n ~ e^{d/2}: each 5 units of budget cuts the tail by e^{-5/2}
    let r = (t30 - t25) / (t25 - t20);
    assert!(r < 0.15, "tail ratio {r}");
    assert!(t30 - t25 < 1e-3 * t30);
}

#[test]
fn parabolic_series_diverges_below_half() {
    let s = 0.4;
    let short = orbit_sample(&group(), Source::Parabolic, 15.0);
    let long = orbit_sample(&group(), Source::Parabolic, 30.0);
    let growth = poincare_partial(&long, s).total() / poincare_partial(&short, s).total();
    // the orbit holds p^{±n} for n up to len/2, with terms ~ n^{-2s}
    let oracle = harmonic(long.len() / 2, 2.0 * s) / harmonic(short.len() / 2, 2.0 * s);
    assert!(growth > 1.5, "{growth}");
    assert!((growth / oracle - 1.0).abs() < 0.2, "growth {growth} oracle {oracle}");
    // no saturation: the last doubling still adds a comparable share
    let mid = orbit_sample(&group(), Source::Parabolic, 22.5);
    let t_mid = poincare_partial(&mid, s).total();
    let t_long = poincare_partial(&long, s).total();
    let t_short = poincare_partial(&short, s).total();
    assert!(t_long - t_mid > 0.5 * (t_mid - t_short));
}

#[test]
fn full_group_series_is_bounded_at_one() {
    let g = group();
    let a = poincare_partial(&orbit_sample(&g, Source::Full, 12.0), 1.0).total();
    let b = poincare_partial(&orbit_sample(&g, Source::Full, 14.0), 1.0).total();
    assert!(b / a < 1.05, "{a} -> {b}");
}

#[test]
fn parabolic_exponent_is_one_half() {
    let sample = orbit_sample(&group(), Source::Parabolic, 30.0);
    let e = critical_exponent(&sample, &ExponentConfig::default()).unwrap();
    assert!(!e.flagged, "{e:?}");
    assert!((e.value - 0.5).abs() <= 0.02, "{e:?}");
}

#[test]
fn trivial_group_exponent_is_zero() {
    let sample = orbit_sample(&group(), Source::Trivial, 30.0);
    let e = critical_exponent(&sample, &ExponentConfig::default()).unwrap();
    assert_eq!(e.value, 0.0);
    assert!(e.uncertainty > 0.0);
}

#[test]
fn tree_source_exponent_exceeds_one_half() {
    let sample = orbit_sample(&group(), Source::GammaE, 14.0);
    let e = critical_exponent(&sample, &ExponentConfig::default()).unwrap();
    assert!(e.value >= 0.48, "{e:?}");
}

#[test]
fn tree_source_counts_keep_setting_records() {
    let sample = orbit_sample(&group(), Source::GammaE, 14.0);
    let counts = sample.annulus_counts();
    let records = count_records(&counts, 0.5 - 0.1);
    println!("counts {counts:?}\nrecords {records:?}");
    assert!(records.iter().filter(|&&n| n > 5).count() >= 3, "{records:?}");
}

#[test]
fn partial_sums_export() {
    let sample = orbit_sample(&group(), Source::Parabolic, 8.0);
    let p = poincare_partial(&sample, 0.5);
    let mut buf = Vec::new();
    p.write_csv(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert!(text.starts_with("n,count,sum,cumulative\n"));
    assert_eq!(text.lines().count(), 1 + 8);
    let counted: usize = p.annuli.iter().map(|a| a.count).sum();
    assert_eq!(counted, sample.len());
}
