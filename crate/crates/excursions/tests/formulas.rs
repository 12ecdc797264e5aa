use excursions::{excursion_length, horoball_chord, sandwich_check, Excursion, Geodesic, Horoball};
use hyperbolic::{half_plane_dist, Complex64};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Length of the arc of the semicircle |z - c| = r above height k, by
/// Simpson's rule on ds = d(theta) / sin(theta).
fn chord_by_quadrature(r: f64, k: f64) -> f64 {
    let t0 = (k / r).asin();
    let t1 = std::f64::consts::PI - t0;
    let n = 20_000;
    let h = (t1 - t0) / n as f64;
    let f = |t: f64| 1.0 / t.sin();
    let mut s = f(t0) + f(t1);
    for i in 1..n {
        s += f(t0 + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, ..ProptestConfig::default() })]

    #[test]
    fn excursion_length_is_the_distance(x in -3.0f64..3.0, y in 0.2f64..10.0, n in 1i64..2000, neg in any::<bool>()) {
        let z = Complex64::new(x, y);
        let n = if neg { -n } else { n };
        let l = excursion_length(z, n).unwrap();
        prop_assert!((l - half_plane_dist(z, z + n as f64)).abs() < 1e-12);
    }

    #[test]
    fn chord_is_translation_invariant(c in -50.0f64..50.0, r in 1.0f64..40.0, k in 0.5f64..1.0, shift in -100i64..100) {
        let a = Geodesic::Circle { center: c, radius: r, forward: true }.above(k);
        let b = Geodesic::Circle { center: c + shift as f64, radius: r, forward: true }.above(k);
        prop_assert_eq!(a, b);
        prop_assert!((a.1 - a.0 - horoball_chord(r, k).unwrap()).abs() < 1e-12);
    }
}

#[test]
fn asymptotic_ratio() {
    let l = excursion_length(Complex64::new(0.0, 1.0), 1_000_000).unwrap();
    let ratio = l / (2.0 * 1e6f64.ln());
    assert!((ratio - 1.0).abs() < 0.01, "{ratio}");
}

#[test]
fn chord_against_quadrature() {
    for (r, k) in [(2.0, 1.0), (4.0, 2.0), (10.0, 1.0), (1.2, 1.0)] {
        let want = chord_by_quadrature(r, k);
        assert!((horoball_chord(r, k).unwrap() - want).abs() < 1e-8, "{r} {k}");
    }
    assert!((horoball_chord(2.0, 1.0).unwrap() - 2.6339157938496336).abs() < 1e-12);
}

#[test]
fn horoball_basics() {
    let h = Horoball::new(2.0).unwrap();
    assert_eq!(h.boundary_length(), 0.5);
    assert!(h.contains(Complex64::new(0.0, 2.5)));
    assert!(!h.contains(Complex64::new(0.0, 1.5)));
    assert!(Horoball::new(0.0).is_err());
}

#[test]
fn sandwich_over_random_excursions() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut violations = 0;
    let mut checked = 0;
    for k in [1.0, 2.0, 5.0] {
        let horocycle = Horoball::new(k).unwrap().boundary_length();
        for _ in 0..500 {
            // apex heights spread over several orders of magnitude above k
            let apex = k * (1.0 + rng.gen_range(0.0f64..9.0).exp());
            let ex = Excursion::from_chord(apex, k, 0.0).unwrap();
            let report = sandwich_check(&ex, horocycle);
            // the two sides evaluated directly
            let w = ex.winding as f64;
            let lower = (horocycle * w / 2.0).asinh() <= ex.length / 2.0 + 1e-12;
            let upper = ex.length / 2.0 < (horocycle * w / 2.0 + 1.0).asinh();
            assert_eq!(report.ok, lower && upper);
            if !report.ok {
                violations += 1;
            }
            checked += 1;
        }
    }
    assert_eq!(checked, 1500);
    assert_eq!(violations, 0);
}
