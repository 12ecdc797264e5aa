use hyperbolic::{half_plane_dist, Complex64};

/// An oriented geodesic of the upper half-plane with an arclength parameter.
///
/// On a semicircle the parameter is zero at the apex; on a vertical line it is
/// the log of the height. In both cases it increases in the direction of travel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Geodesic {
    Circle { center: f64, radius: f64, forward: bool },
    Vertical { x: f64, up: bool },
}

impl Geodesic {
    /// The geodesic through `z` heading to the boundary point `target`
    /// (`None` is infinity).
    pub fn towards(z: Complex64, target: Option<f64>) -> Self {
        let Some(x) = target else {
            return Geodesic::Vertical { x: z.re, up: true };
        };
        let dx = z.re - x;
        if dx.abs() < 1e-12 * z.im {
            return Geodesic::Vertical { x: z.re, up: false };
        }
        let center = (z.re + x) / 2.0 + z.im * z.im / (2.0 * dx);
        let radius = (z - center).norm();
        Geodesic::Circle { center, radius, forward: x > center }
    }

    pub fn point(&self, s: f64) -> Complex64 {
        match *self {
            Geodesic::Circle { center, radius, forward } => {
                let t = if forward { s } else { -s };
                Complex64::new(center + radius * t.tanh(), radius / t.cosh())
            }
            Geodesic::Vertical { x, up } => Complex64::new(x, if up { s.exp() } else { (-s).exp() }),
        }
    }

    /// Arclength parameter of a point on the geodesic.
    pub fn param(&self, z: Complex64) -> f64 {
        match *self {
            Geodesic::Circle { center, radius, forward } => {
                let u = z.re - center;
                // e^t = (R + u) / y = y / (R - u); pick the form without cancellation
                let t = if u >= 0.0 { ((radius + u) / z.im).ln() } else { (z.im / (radius - u)).ln() };
                if forward {
                    t
                } else {
                    -t
                }
            }
            Geodesic::Vertical { up, .. } => {
                if up {
                    z.im.ln()
                } else {
                    -z.im.ln()
                }
            }
        }
    }

    /// Parameter interval spent above height k, possibly empty or unbounded.
    pub fn above(&self, k: f64) -> (f64, f64) {
        match *self {
            Geodesic::Circle { radius, .. } => {
                if radius > k {
                    let a = (radius / k).acosh();
                    (-a, a)
                } else {
                    (0.0, 0.0)
                }
            }
            Geodesic::Vertical { up: true, .. } => (k.ln(), f64::INFINITY),
            Geodesic::Vertical { up: false, .. } => (f64::NEG_INFINITY, -k.ln()),
        }
    }

    /// Where the geodesic meets the vertical line Re z = x0, if it does.
    pub fn meet_line(&self, x0: f64) -> Option<Complex64> {
        match *self {
            Geodesic::Circle { center, radius, .. } => {
                let u = x0 - center;
                let y2 = radius * radius - u * u;
                (y2 > 0.0).then(|| Complex64::new(x0, y2.sqrt()))
            }
            Geodesic::Vertical { .. } => None,
        }
    }

    /// Where the geodesic meets the semicircle of center c2 and radius r2.
    pub fn meet_circle(&self, c2: f64, r2: f64) -> Option<Complex64> {
        let (x, y2) = match *self {
            Geodesic::Circle { center, radius, .. } => {
                if (c2 - center).abs() < f64::EPSILON * (1.0 + c2.abs()) {
                    return None;
                }
                let x = (radius * radius - r2 * r2 + c2 * c2 - center * center) / (2.0 * (c2 - center));
                let u = x - center;
                (x, radius * radius - u * u)
            }
            Geodesic::Vertical { x, .. } => (x, r2 * r2 - (x - c2) * (x - c2)),
        };
        (y2 > 0.0).then(|| Complex64::new(x, y2.sqrt()))
    }

    /// Closest approach to `o` over the parameter interval [a, b]. Distance
    /// to a point is convex along a geodesic, so a ternary search suffices.
    pub fn min_distance(&self, o: Complex64, a: f64, b: f64) -> f64 {
        let f = |s: f64| half_plane_dist(o, self.point(s));
        if !(b > a) || !b.is_finite() || !a.is_finite() {
            return if a.is_finite() { f(a) } else { f64::INFINITY };
        }
        let (mut lo, mut hi) = (a, b);
        for _ in 0..80 {
            let m1 = lo + (hi - lo) / 3.0;
            let m2 = hi - (hi - lo) / 3.0;
            if f(m1) <= f(m2) {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        f(a).min(f(b)).min(f((lo + hi) / 2.0))
    }
}
