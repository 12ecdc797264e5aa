use num_complex::Complex64;

use crate::metric::dist_from_log_cosh;
use crate::moebius::{apply_angle, su11, MoebiusMap};
use crate::point::normalize_angle;

/// A unimodular matrix kept as `exp(log_scale) * m` with max |m_ij| = 1, so that
/// products of thousands of group elements neither overflow nor lose the
/// quantities that depend only on the projective class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogMatrix {
    m: [f64; 4],
    log_scale: f64,
}

impl LogMatrix {
    pub fn identity() -> Self {
        Self { m: [1.0, 0.0, 0.0, 1.0], log_scale: 0.0 }
    }

    pub fn from_map(g: &MoebiusMap) -> Self {
        Self::from_parts(g.entries(), 0.0)
    }

    /// Build from entries and an extra log factor; the determinant of
    /// `exp(log_scale) * m` is assumed to be 1.
    pub fn from_parts(m: [f64; 4], log_scale: f64) -> Self {
        let mut out = Self { m, log_scale };
        out.renormalize();
        out
    }

    fn renormalize(&mut self) {
        let s = self.m.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
        if s > 0.0 && s.is_finite() {
            for x in &mut self.m {
                *x /= s;
            }
            self.log_scale += s.ln();
        }
    }

    pub fn entries(&self) -> [f64; 4] {
        self.m
    }

    pub fn log_scale(&self) -> f64 {
        self.log_scale
    }

    pub fn mul(&self, o: &LogMatrix) -> LogMatrix {
        let [a, b, c, d] = self.m;
        let [e, f, g, h] = o.m;
        Self::from_parts([a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h], self.log_scale + o.log_scale)
    }

    pub fn mul_map(&self, g: &MoebiusMap) -> LogMatrix {
        self.mul(&LogMatrix::from_map(g))
    }

    pub fn inverse(&self) -> LogMatrix {
        let [a, b, c, d] = self.m;
        Self { m: [d, -b, -c, a], log_scale: self.log_scale }
    }

    /// Back to a plain map when the entries fit in a double.
    pub fn to_map(&self, model: crate::Model) -> Option<MoebiusMap> {
        if self.log_scale > 300.0 {
            return None;
        }
        let k = self.log_scale.exp();
        let [a, b, c, d] = self.m;
        MoebiusMap::new(a * k, b * k, c * k, d * k, model).ok()
    }

    /// d(0, g 0) from ln cosh d = 2 log_scale + ln(|m|^2 / 2).
    pub fn base_displacement(&self) -> f64 {
        let n2: f64 = self.m.iter().map(|x| x * x).sum();
        dist_from_log_cosh(2.0 * self.log_scale + (n2 / 2.0).ln())
    }

    /// Disc coefficients up to the common factor exp(log_scale).
    pub fn su11_scaled(&self) -> (Complex64, Complex64) {
        let [a, b, c, d] = self.m;
        su11(a, b, c, d)
    }

    /// Disc angle of the direction of g(0).
    pub fn base_direction(&self) -> f64 {
        let (al, be) = self.su11_scaled();
        normalize_angle(be.arg() + al.arg())
    }

    /// Disc image of g(0); its modulus may round to 1 for long words.
    pub fn base_image_disc(&self) -> Complex64 {
        let (al, be) = self.su11_scaled();
        be / al.conj()
    }

    pub fn apply_angle(&self, t: f64) -> f64 {
        let (al, be) = self.su11_scaled();
        apply_angle(al, be, t)
    }

    /// Half-plane action on a real boundary point; `None` stands for infinity.
    pub fn apply_real(&self, x: Option<f64>) -> Option<f64> {
        let [a, b, c, d] = self.m;
        match x {
            None => {
                if c == 0.0 {
                    None
                } else {
                    Some(a / c)
                }
            }
            Some(x) => {
                let den = c * x + d;
                if den == 0.0 {
                    None
                } else {
                    Some((a * x + b) / den)
                }
            }
        }
    }

    /// Half-plane action on an interior point (scale-free).
    pub fn apply_complex(&self, z: Complex64) -> Complex64 {
        let [a, b, c, d] = self.m;
        (a * z + b) / (c * z + d)
    }

    /// Log of the disc conformal factor |g'(e^{it})| = 1/|conj(beta) e^{it} + conj(alpha)|^2.
    pub fn log_boundary_derivative(&self, t: f64) -> f64 {
        let (al, be) = self.su11_scaled();
        let u = Complex64::from_polar(1.0, t);
        -2.0 * ((be.conj() * u + al.conj()).norm().ln() + self.log_scale)
    }
}
