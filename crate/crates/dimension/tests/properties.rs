use std::f64::consts::TAU;

use dimension::*;
use proptest::prelude::*;
use schottky::{build_group, GroupParams};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn measure_additivity_for_any_exponent(s in 0.01f64..0.99) {
        let g = build_group(GroupParams::default()).unwrap();
        let mut tree = build_tree(&g, TreeConfig::new(8.0)).unwrap();
        tree.assign_measure(s);
        prop_assert!(tree.additivity_error() <= 1e-12);
        prop_assert_eq!(tree.root().measure, 1.0);
    }

    #[test]
    fn visual_distance_is_a_bounded_symmetric_gap(a in -10.0f64..10.0, b in -10.0f64..10.0) {
        let d = d0(a, b);
        prop_assert!((0.0..=1.0).contains(&d));
        prop_assert!((d - d0(b, a)).abs() < 1e-15);
        prop_assert!((d - d0(a + TAU, b)).abs() < 1e-12);
    }

    #[test]
    fn occupied_cells_grow_with_resolution(
        points in prop::collection::vec(0.0f64..TAU, 1..200),
        k in 1u64..12,
    ) {
        let input = BoxInput::Points(points.clone());
        let coarse = occupied_cells(&input, 1 << k);
        let fine = occupied_cells(&input, 1 << (k + 1));
        prop_assert!(coarse <= fine && fine <= 2 * coarse);
        prop_assert!(fine <= points.len() as u64);
    }

    #[test]
    fn estimates_stay_in_the_unit_interval(points in prop::collection::vec(0.0f64..TAU, 1..300)) {
        let e = box_count(&BoxInput::Points(points), &cell_grid(8, 1 << 12, 10)).unwrap();
        prop_assert!((0.0..=1.0).contains(&e.value));
        prop_assert!(e.uncertainty > 0.0);
    }

    #[test]
    fn records_strictly_increase(counts in prop::collection::vec(0usize..1000, 1..40), s in 0.0f64..1.0) {
        let r = count_records(&counts, s);
        prop_assert_eq!(r[0], 0);
        for w in r.windows(2) {
            let v = |n: usize| counts[n] as f64 * (-(n as f64) * s).exp();
            prop_assert!(w[0] < w[1] && v(w[0]) < v(w[1]));
        }
    }

    #[test]
    fn partial_sums_are_monotone_in_s(s in 0.05f64..1.5, ds in 0.01f64..0.5) {
        let g = build_group(GroupParams::default()).unwrap();
        let sample = orbit_sample(&g, Source::Parabolic, 16.0);
        let a = poincare_partial(&sample, s);
        let b = poincare_partial(&sample, s + ds);
        prop_assert!(b.total() <= a.total());
        for w in a.annuli.windows(2) {
            prop_assert!(w[1].cumulative >= w[0].cumulative);
        }
    }
}
