use std::f64::consts::{FRAC_PI_2, TAU};

use serde::{Deserialize, Serialize};

use crate::group::SchottkyGroup;
use crate::letter::Letter;

/// Angles between the boundary arcs of the four regions as seen from 0, the
/// reverse-triangle constant at the smallest of them, and the minimal orbit
/// separation of the generators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeometryConstants {
    /// Gap between D(h) and D(h^-1).
    pub theta1: f64,
    /// Gap between D(h) and the neighbouring parabolic region.
    pub theta2: f64,
    /// Gap between D(h^-1) and the neighbouring parabolic region.
    pub theta3: f64,
    pub theta0: f64,
    pub c_theta0: f64,
    pub q_min: f64,
    pub l_h: f64,
}

/// C(theta) such that c >= a + b - C(theta) whenever the angle opposite c is
/// at least theta.
pub fn lemma_constant(theta: f64) -> f64 {
    if theta >= FRAC_PI_2 {
        2f64.acosh()
    } else {
        (2.0 / (1.0 - theta.cos())).acosh()
    }
}

pub fn geometry_constants(group: &SchottkyGroup) -> GeometryConstants {
    let mut arcs: Vec<(Letter, f64, f64)> = Letter::ALL
        .iter()
        .map(|&l| {
            let (s, e) = group.region(l).endpoints();
            (l, s, e)
        })
        .collect();
    arcs.sort_by(|x, y| x.1.total_cmp(&y.1));

    let (mut theta1, mut theta2, mut theta3) = (f64::NAN, f64::NAN, f64::NAN);
    for i in 0..4 {
        let (l1, _, end) = arcs[i];
        let (l2, start, _) = arcs[(i + 1) % 4];
        let gap = (start - end).rem_euclid(TAU);
        let has = |l: Letter| l1 == l || l2 == l;
        match (has(Letter::H), has(Letter::HInv)) {
            (true, true) => theta1 = gap,
            (true, false) => theta2 = gap,
            (false, true) => theta3 = gap,
            // the two parabolic regions touch at the cusp
            (false, false) => {}
        }
    }
    let theta0 = theta1.min(theta2).min(theta3);

    let mut q_min = f64::INFINITY;
    for (i, &a) in Letter::ALL.iter().enumerate() {
        for &b in &Letter::ALL[i + 1..] {
            let m = group.generator(a).inverse() * group.generator(b);
            q_min = q_min.min(m.base_displacement());
        }
    }

    GeometryConstants {
        theta1,
        theta2,
        theta3,
        theta0,
        c_theta0: lemma_constant(theta0),
        q_min,
        l_h: group.translation_length(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{build_group, GroupParams};
    use std::f64::consts::PI;

    #[test]
    fn lemma_constant_branches() {
        assert!((lemma_constant(FRAC_PI_2) - 1.3169578969248166).abs() < 1e-12);
        assert!((lemma_constant(2.5) - 2f64.acosh()).abs() < 1e-15);
        assert!((lemma_constant(PI / 3.0) - 4f64.acosh()).abs() < 1e-12);
        assert!((lemma_constant(PI / 3.0) - 2.0634370688955608).abs() < 1e-12);
    }

    #[test]
    fn default_constants() {
        let g = build_group(GroupParams::default()).unwrap();
        let k = geometry_constants(&g);
        assert!(k.theta0 > 0.0);
        assert!((k.theta2 - k.theta3).abs() < 1e-12, "{k:?}");
        assert_eq!(k.theta0, k.theta2.min(k.theta3));
        assert!(k.theta1 > k.theta0);
        // angles around the circle: three gaps plus the four arc lengths
        let arcs: f64 = Letter::ALL.iter().map(|&l| 2.0 * g.region(l).arc.radius()).sum();
        assert!((arcs + k.theta1 + k.theta2 + k.theta3 - TAU).abs() < 1e-12);
        // the closest pair is p, p^-1: d(0, p^2 0) = 2 asinh(1 / y0)
        assert!((k.q_min - 2.0 * 4f64.asinh()).abs() < 1e-12);
        let hh = (g.generator(Letter::H).inverse() * g.generator(Letter::HInv)).base_displacement();
        assert!(k.q_min <= hh);
        assert!((hh - 2.0 * k.l_h).abs() < 1e-9);
    }
}
