use std::f64::consts::PI;

use hyperbolic::{Complex64, LogMatrix};
use proptest::prelude::*;
use schottky::{build_group, geometry_constants, lemma_constant, Base, GroupParams, Letter, SchottkyError};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(1000))]

    // Law of cosines gives the third side; the lemma bounds it from below.
    #[test]
    fn reverse_triangle_inequality(
        a in 0.0f64..15.0,
        b in 0.0f64..15.0,
        theta in 0.05f64..PI,
        extra in 0.0f64..1.0,
    ) {
        let gamma = theta + (PI - theta) * extra;
        let cosh_c = a.cosh() * b.cosh() - a.sinh() * b.sinh() * gamma.cos();
        let c = cosh_c.max(1.0).acosh();
        prop_assert!(c <= a + b + 1e-9);
        prop_assert!(a + b - lemma_constant(theta) <= c + 1e-9, "a={a} b={b} theta={theta} c={c}");
    }

    #[test]
    fn corollary_for_distinct_leading_letters(
        first in prop::sample::subsequence(vec![Letter::H, Letter::HInv, Letter::P], 2),
        tails in prop::collection::vec(prop::collection::vec((1i64..6, any::<bool>()), 0..6), 2),
        heads in prop::collection::vec(1i64..6, 2),
    ) {
        let g = build_group(GroupParams::default()).unwrap();
        let k = geometry_constants(&g);
        let words: Vec<LogMatrix> = (0..2)
            .map(|i| word(&g, first[i], heads[i], &tails[i]))
            .collect();
        let d1 = words[0].base_displacement();
        let d2 = words[1].base_displacement();
        let d12 = words[0].inverse().mul(&words[1]).base_displacement();
        prop_assert!(d12 >= d1 + d2 - k.c_theta0 - 1e-9, "{d12} vs {d1} + {d2}");
    }

    #[test]
    fn generators_map_opposite_region_to_exterior(
        letter in prop::sample::select(Letter::ALL.to_vec()),
        r in 0.0f64..1.0,
        s in 0.0f64..1.0,
    ) {
        let g = build_group(GroupParams::default()).unwrap();
        let src = g.region(letter.inverse());
        let dst = g.region(letter);
        // a point of D(g^-1): interpolate between the bisector and its arc
        let (x, y) = src.endpoints();
        let on = hyperbolic::geodesic_point(x, y, 6.0 * (2.0 * s - 1.0));
        let z = on + (Complex64::from_polar(1.0, src.arc.center()) - on) * (0.95 * r);
        prop_assume!(src.contains(z) && z.norm() < 1.0);
        let w = g.generator(letter).apply_complex(z);
        prop_assert!((w - dst.center).norm() >= dst.radius - 1e-9);
    }
}

/// Reduced word starting with `lead^head`, blocks alternating between the two
/// generators afterwards.
fn word(g: &schottky::SchottkyGroup, lead: Letter, head: i64, tail: &[(i64, bool)]) -> LogMatrix {
    let mut base = lead.base();
    let mut m = g.power_log(base, head * lead.sign());
    for &(e, pos) in tail {
        base = match base {
            Base::H => Base::P,
            Base::P => Base::H,
        };
        m = m.mul(&g.power_log(base, if pos { e } else { -e }));
    }
    m
}

#[test]
fn short_translation_names_an_h_p_pair() {
    let err = build_group(GroupParams { translation_length: 0.01, ..GroupParams::default() }).unwrap_err();
    match err {
        SchottkyError::Violation { a, b, gap } => {
            assert!(gap < 0.0);
            assert_ne!(a.base(), b.base(), "{a} {b}");
        }
        other => panic!("{other}"),
    }
}

#[test]
fn base_point_lies_outside_every_region() {
    let g = build_group(GroupParams::default()).unwrap();
    for l in Letter::ALL {
        assert!(!g.region(l).contains(Complex64::new(0.0, 0.0)));
    }
}
