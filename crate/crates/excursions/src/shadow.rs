use hyperbolic::{normalize_angle, Complex64, LogMatrix};

use schottky::SchottkyGroup;
use symbolic::{endpoint_of, SequenceSpec, ENDPOINT_TOL};

/// Beyond this orbit distance the point g^-1(0) is replaced by its direction.
const INTERIOR_MAX: f64 = 20.0;

/// Distance from 0 to the geodesic ray that starts at the point at distance
/// `d` from 0 in direction `psi` and heads to the boundary angle `eta`.
pub fn distance_to_ray(d: f64, psi: f64, eta: f64) -> f64 {
    // move the start to 0; the ray becomes a radius and 0 goes to -p
    let p = Complex64::from_polar((d / 2.0).tanh(), psi);
    let one = Complex64::new(1.0, 0.0);
    let e = Complex64::from_polar(1.0, eta);
    let dir = (e - p) / (one - p.conj() * e);
    let w = -p * dir.conj() / dir.norm();
    if w.re >= 0.0 {
        // 1 - |w|^2 without cancellation
        (2.0 * w.im.abs() * (d / 2.0).cosh().powi(2)).asinh()
    } else {
        d
    }
}

/// Distance from 0 to the full geodesic joining two boundary angles.
pub fn distance_to_geodesic(zeta: f64, eta: f64) -> f64 {
    let gap = normalize_angle(zeta - eta).abs();
    let gap = gap.min(2.0 * std::f64::consts::PI - gap);
    (1.0 / (gap / 4.0).tan()).ln()
}

/// d(gamma_q 0, [0, xi)) for q = 1..=count block prefixes gamma_q of the code.
///
/// Pulling back by gamma_q^-1 turns this into the distance from 0 to the ray
/// from gamma_q^-1(0) to the endpoint of the remaining code, which keeps
/// everything at unit scale.
pub fn shadowing_distances(group: &SchottkyGroup, spec: &SequenceSpec, count: usize) -> Vec<f64> {
    let blocks: Vec<_> = spec.blocks().take(count).collect();
    let mut m = LogMatrix::identity();
    let mut out = Vec::with_capacity(blocks.len());
    for (q, b) in blocks.iter().enumerate() {
        m = m.mul(&group.power_log(b.base, b.exp));
        let inv = m.inverse();
        let eta = endpoint_of(spec.blocks().skip(q + 1), spec.tail(), group, ENDPOINT_TOL, 2000).angle;
        let d = inv.base_displacement();
        let dir = inv.base_direction();
        let dq = if d < INTERIOR_MAX { distance_to_ray(d, dir, eta) } else { distance_to_geodesic(dir, eta) };
        out.push(dq);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use hyperbolic::disc_dist;
    use std::f64::consts::PI;

    #[test]
    fn ray_distance_cases() {
        // a diameter through 0
        assert!(distance_to_ray(1.0, PI, 0.0) < 1e-15);
        // the ray points away from 0: nearest point is its start
        let p = Complex64::new(0.5, 0.0);
        let d = disc_dist(Complex64::new(0.0, 0.0), p);
        assert!((distance_to_ray(d, 0.0, 0.0) - d).abs() < 1e-12);
        for (d, psi, eta) in [(2.0, 0.3, PI), (4.0, PI / 2.0, 0.0), (1.5, -1.0, 2.5), (3.0, 0.2, 0.1)] {
            let want = sampled_ray_distance(d, psi, eta);
            assert!((distance_to_ray(d, psi, eta) - want).abs() < 1e-9, "{d} {psi} {eta}");
        }
        // geodesic with endpoints 90 degrees apart
        let d = distance_to_geodesic(0.0, PI / 2.0);
        assert!((d - (1.0 / (PI / 8.0).tan()).ln()).abs() < 1e-15);
        assert!(distance_to_geodesic(0.0, PI) < 1e-15);
    }

    /// Brute minimum of d(0, .) along the ray, walked in arclength steps.
    fn sampled_ray_distance(d: f64, psi: f64, eta: f64) -> f64 {
        let p = Complex64::from_polar((d / 2.0).tanh(), psi);
        let one = Complex64::new(1.0, 0.0);
        let e = Complex64::from_polar(1.0, eta);
        let u = (e - p) / (one - p.conj() * e);
        let at = |s: f64| {
            let v = u * (s / 2.0).tanh();
            (v + p) / (one + p.conj() * v)
        };
        let o = Complex64::new(0.0, 0.0);
        let f = |s: f64| disc_dist(o, at(s));
        let n = 4000;
        let (mut best, mut arg) = (f(0.0), 0.0);
        for i in 1..=n {
            let s = 20.0 * i as f64 / n as f64;
            if f(s) < best {
                best = f(s);
                arg = s;
            }
        }
        let (mut lo, mut hi) = ((arg - 0.01f64).max(0.0), arg + 0.01);
        for _ in 0..100 {
            let (a, b) = (lo + (hi - lo) / 3.0, hi - (hi - lo) / 3.0);
            if f(a) <= f(b) {
                hi = b;
            } else {
                lo = a;
            }
        }
        best.min(f((lo + hi) / 2.0))
    }

    #[test]
    fn far_start_agrees_with_direction() {
        let a = distance_to_ray(19.0, 1.0, -0.7);
        let b = distance_to_geodesic(1.0, -0.7);
        assert!((a - b).abs() < 1e-8);
    }
}
