use hyperbolic::LogMatrix;
use schottky::{geometry_constants, SchottkyGroup};
use serde::Serialize;
use symbolic::{A3Pair, Evaluate};

use crate::criterion::parabolic_distance;

/// Both sides of the length estimate for d(0, gamma_q(0)), where gamma_q is
/// the product of the first q pairs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LengthBounds {
    pub q: usize,
    pub value: f64,
    /// Sum of d(0, omega_i 0) + d(0, p^{r_i} 0).
    pub upper: f64,
    /// Sum of d(0, omega_i 0) + 2 ln|r_i|.
    pub core: f64,
    /// C(theta_0).
    pub c_theta0: f64,
    /// Largest |d(0, p^r 0) - 2 ln|r|| over the pairs.
    pub offset: f64,
    /// core - 2 q C - q offset.
    pub lower: f64,
    /// (core - value) / q: the per-pair loss actually observed.
    pub loss_per_pair: f64,
}

impl LengthBounds {
    pub fn upper_ok(&self) -> bool {
        self.value <= self.upper * (1.0 + 1e-12) + 1e-9
    }

    pub fn lower_ok(&self) -> bool {
        self.value >= self.lower
    }
}

pub fn length_bounds(group: &SchottkyGroup, pairs: &[A3Pair]) -> LengthBounds {
    let c_theta0 = geometry_constants(group).c_theta0;
    let mut m = LogMatrix::identity();
    let (mut upper, mut core, mut offset) = (0.0, 0.0, 0.0f64);
    for pair in pairs {
        let om = pair.omega.evaluate_log(group);
        let pr = group.power_log(schottky::Base::P, pair.r);
        m = m.mul(&om).mul(&pr);
        let d_omega = om.base_displacement();
        let d_p = pr.base_displacement();
        let ln2 = 2.0 * (pair.r.unsigned_abs() as f64).ln();
        upper += d_omega + d_p;
        core += d_omega + ln2;
        offset = offset.max((d_p - ln2).abs());
    }
    let q = pairs.len();
    let value = m.base_displacement();
    let lower = core - 2.0 * q as f64 * c_theta0 - q as f64 * offset;
    LengthBounds {
        q,
        value,
        upper,
        core,
        c_theta0,
        offset,
        lower,
        loss_per_pair: if q > 0 { (core - value) / q as f64 } else { 0.0 },
    }
}

/// Relative gap between the two candidate denominators,
/// |sum d(0, p^{r_i} 0) - sum 2 ln|r_i|| / sum 2 ln|r_i|.
pub fn denominator_gap(group: &SchottkyGroup, pairs: &[A3Pair]) -> f64 {
    let (mut dist, mut logs) = (0.0, 0.0);
    for pair in pairs {
        dist += parabolic_distance(group, pair.r);
        logs += 2.0 * (pair.r.unsigned_abs() as f64).ln();
    }
    (dist - logs).abs() / logs
}
