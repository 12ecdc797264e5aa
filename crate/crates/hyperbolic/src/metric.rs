use std::f64::consts::PI;

use num_complex::Complex64;

use crate::moebius::Model;
use crate::point::{angle_gap, normalize_angle, BoundaryPoint, PlanePoint};
use crate::{HyperbolicError, Result};

/// Disc distance, 2 artanh |(z - w)/(1 - conj(z) w)|.
pub fn disc_dist(z: Complex64, w: Complex64) -> f64 {
    let r = ((z - w) / (Complex64::new(1.0, 0.0) - z.conj() * w)).norm();
    2.0 * r.min(1.0).atanh()
}

/// Half-plane distance, 2 arcsinh(|z - w| / (2 sqrt(Im z Im w))).
pub fn half_plane_dist(z: Complex64, w: Complex64) -> f64 {
    2.0 * ((z - w).norm() / (2.0 * (z.im * w.im).sqrt())).asinh()
}

pub fn dist(z: &PlanePoint, w: &PlanePoint) -> Result<f64> {
    if z.model() != w.model() {
        return Err(HyperbolicError::ModelMismatch { left: z.model(), right: w.model() });
    }
    Ok(match z.model() {
        Model::Disc => disc_dist(z.z(), w.z()),
        Model::HalfPlane => half_plane_dist(z.z(), w.z()),
    })
}

/// arccosh(e^L) for possibly huge L.
pub fn dist_from_log_cosh(log_cosh: f64) -> f64 {
    if log_cosh < 20.0 {
        log_cosh.exp().max(1.0).acosh()
    } else {
        log_cosh + (1.0 + (1.0 - (-2.0 * log_cosh).exp()).sqrt()).ln()
    }
}

/// Arc of the circle at infinity cut out by the bisector of [0, w] where w is
/// at distance `d` from 0 in direction `dir`. Returns (center, half-width); the
/// half-width is the angle of parallelism at distance d/2.
pub fn bisector_arc(d: f64, dir: f64) -> (f64, f64) {
    (normalize_angle(dir), 2.0 * (-d / 2.0).exp().atan())
}

fn log_poisson(xi: &BoundaryPoint, z: Complex64) -> Result<f64> {
    match xi {
        BoundaryPoint::Angle(t) => {
            let r = z.norm();
            let e = Complex64::from_polar(1.0, *t);
            Ok(((1.0 - r) * (1.0 + r)).ln() - 2.0 * (e - z).norm().ln())
        }
        BoundaryPoint::Real(x) => Ok(z.im.ln() - 2.0 * (z - x).norm().ln()),
        BoundaryPoint::Infinity => Ok(z.im.ln()),
    }
}

/// Busemann cocycle beta_xi(z, z2) = lim d(z, xi_t) - d(z2, xi_t); positive when
/// z2 is closer to xi than z.
pub fn busemann(xi: &BoundaryPoint, z: &PlanePoint, z2: &PlanePoint) -> Result<f64> {
    if z.model() != z2.model() {
        return Err(HyperbolicError::ModelMismatch { left: z.model(), right: z2.model() });
    }
    if xi.model() != z.model() {
        return Err(HyperbolicError::ModelMismatch { left: xi.model(), right: z.model() });
    }
    Ok(log_poisson(xi, z2.z())? - log_poisson(xi, z.z())?)
}

/// Point at signed distance `t` from the foot of the perpendicular from 0 on
/// the geodesic with endpoints at angles `xi` and `eta`.
pub fn geodesic_point(xi: f64, eta: f64, t: f64) -> Complex64 {
    let gap = angle_gap(xi, eta);
    let forward = normalize_angle(eta - xi) <= PI;
    let mid = if forward { xi + gap / 2.0 } else { eta + gap / 2.0 };
    let tau = (PI / 4.0 - gap / 4.0).tan();
    let w = Complex64::new(0.0, (t / 2.0).tanh());
    let moved = (w + tau) / (Complex64::new(1.0, 0.0) + tau * w);
    Complex64::from_polar(1.0, mid) * moved
}

/// Gromov product based at 0, evaluated with the point z on the geodesic (xi, eta).
pub fn gromov_product(xi: f64, eta: f64) -> f64 {
    if angle_gap(xi, eta) == 0.0 {
        return f64::INFINITY;
    }
    gromov_via(xi, eta, geodesic_point(xi, eta, 0.0))
}

fn gromov_via(xi: f64, eta: f64, z: Complex64) -> f64 {
    let zero = Complex64::new(0.0, 0.0);
    let b = |t: f64| {
        log_poisson(&BoundaryPoint::Angle(t), z).unwrap() - log_poisson(&BoundaryPoint::Angle(t), zero).unwrap()
    };
    0.5 * (b(xi) + b(eta))
}

/// Visual distance d0 = exp(-<xi, eta>_0) between two disc boundary angles.
pub fn visual_dist(xi: f64, eta: f64) -> f64 {
    (-gromov_product(xi, eta)).exp()
}

/// Same quantity evaluated with a caller-chosen point z on the geodesic.
pub fn visual_dist_via(xi: f64, eta: f64, z: Complex64) -> f64 {
    (-gromov_via(xi, eta, z)).exp()
}
