use std::f64::consts::PI;

use hyperbolic::{normalize_angle, LogMatrix};
use schottky::SchottkyGroup;
use serde::Serialize;
use symbolic::{endpoint_of, Evaluate, SequenceSpec, WordA2, ENDPOINT_TOL};

/// The boundary ball B(xi_{0, gamma 0}, c e^{-d(0, gamma 0)}) in the visual
/// metric d0 = sin(|angle gap| / 2).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShadowArc {
    #[serde(serialize_with = "word_as_text")]
    pub word: WordA2,
    pub direction: f64,
    pub distance: f64,
    pub radius: f64,
    pub c: f64,
}

fn word_as_text<S: serde::Serializer>(w: &WordA2, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(w)
}

/// Visual distance from 0 between two boundary angles.
pub fn d0(a: f64, b: f64) -> f64 {
    (normalize_angle(a - b).abs() / 2.0).sin()
}

impl ShadowArc {
    pub fn from_matrix(word: WordA2, m: &LogMatrix, c: f64) -> Self {
        let distance = m.base_displacement();
        Self { word, direction: m.base_direction(), distance, radius: c * (-distance).exp(), c }
    }

    pub fn contains(&self, angle: f64) -> bool {
        d0(angle, self.direction) < self.radius
    }

    /// Half-width of the arc as an angle.
    pub fn half_angle(&self) -> f64 {
        if self.radius >= 1.0 {
            PI
        } else {
            2.0 * self.radius.asin()
        }
    }

    /// d0-diameter, 2 c e^{-d}, capped at the diameter of the circle.
    pub fn diameter(&self) -> f64 {
        (2.0 * self.radius).min(1.0)
    }
}

pub fn shadow_arc(word: &WordA2, c: f64, group: &SchottkyGroup) -> ShadowArc {
    ShadowArc::from_matrix(word.clone(), &word.evaluate_log(group), c)
}

/// ln d0(gamma eta, xi_{0, gamma 0}) computed at unit scale.
///
/// gamma^-1 sends the direction of gamma 0 to the far end of the ray from
/// gamma^-1 0 through 0, and d0 picks up the square roots of the boundary
/// conformal factors: d0(g a, g b)^2 = |g'(a)| |g'(b)| d0(a, b)^2.
pub fn log_offset_from_direction(m: &LogMatrix, eta: f64) -> f64 {
    let inv = m.inverse();
    let back = normalize_angle(inv.base_direction() + PI);
    0.5 * (m.log_boundary_derivative(eta) + m.log_boundary_derivative(back)) + d0(eta, back).ln()
}

/// d0(xi, xi_{0, gamma_q 0}) e^{d(0, gamma_q 0)} for the first `count` block
/// prefixes gamma_q of the code, where xi is the endpoint of the code. The
/// smallest c whose arcs all contain xi is the maximum of these.
pub fn shadow_constants(group: &SchottkyGroup, spec: &SequenceSpec, count: usize) -> Vec<f64> {
    let blocks: Vec<_> = spec.blocks().take(count).collect();
    let mut m = LogMatrix::identity();
    let mut out = Vec::with_capacity(blocks.len());
    for (q, b) in blocks.iter().enumerate() {
        m = m.mul(&group.power_log(b.base, b.exp));
        let eta = endpoint_of(spec.blocks().skip(q + 1), spec.tail(), group, ENDPOINT_TOL, 2000).angle;
        out.push((log_offset_from_direction(&m, eta) + m.base_displacement()).exp());
    }
    out
}

/// Half-angle of the geometric shadow O(x, r): boundary points whose ray
/// from 0 meets the ball of radius r about a point x at distance d from 0.
/// A ray at angle a from the direction of x passes at distance
/// asinh(sinh d sin a) from it when a ≤ pi/2.
pub fn geometric_shadow_half_angle(d: f64, r: f64) -> f64 {
    if d <= r {
        PI
    } else {
        (r.sinh() / d.sinh()).asin()
    }
}
