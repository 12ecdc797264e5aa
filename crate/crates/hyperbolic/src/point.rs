use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::moebius::Model;
use crate::{HyperbolicError, Result};

/// Reduce an angle to [0, 2pi).
pub fn normalize_angle(t: f64) -> f64 {
    let r = t.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Unsigned angular separation in [0, pi].
pub fn angle_gap(s: f64, t: f64) -> f64 {
    let d = normalize_angle(s - t);
    if d > PI {
        TAU - d
    } else {
        d
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanePoint {
    z: Complex64,
    model: Model,
}

impl PlanePoint {
    pub fn new(z: Complex64, model: Model) -> Result<Self> {
        let ok = match model {
            Model::Disc => z.norm() < 1.0,
            Model::HalfPlane => z.im > 0.0,
        };
        if !ok || !z.re.is_finite() || !z.im.is_finite() {
            return Err(HyperbolicError::OutsideModel(format!("{z}")));
        }
        Ok(Self { z, model })
    }

    pub fn disc(z: Complex64) -> Result<Self> {
        Self::new(z, Model::Disc)
    }

    pub fn half_plane(z: Complex64) -> Result<Self> {
        Self::new(z, Model::HalfPlane)
    }

    /// 0 in the disc or i in the half-plane.
    pub fn base(model: Model) -> Self {
        let z = match model {
            Model::Disc => Complex64::new(0.0, 0.0),
            Model::HalfPlane => Complex64::i(),
        };
        Self { z, model }
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    pub fn model(&self) -> Model {
        self.model
    }
}

/// A point at infinity: an angle on the unit circle for the disc, a real
/// number or the point at infinity for the half-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryPoint {
    Angle(f64),
    Real(f64),
    Infinity,
}

impl BoundaryPoint {
    pub fn angle(t: f64) -> Self {
        BoundaryPoint::Angle(normalize_angle(t))
    }

    pub fn model(&self) -> Model {
        match self {
            BoundaryPoint::Angle(_) => Model::Disc,
            _ => Model::HalfPlane,
        }
    }

    pub fn as_angle(&self) -> Option<f64> {
        match self {
            BoundaryPoint::Angle(t) => Some(*t),
            _ => None,
        }
    }
}

/// Ball B(center, radius) on the unit circle for the visual metric based at 0,
/// where d0(x, y) = |sin((x - y)/2)|.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryCircleArc {
    center: f64,
    radius: f64,
}

impl BoundaryCircleArc {
    pub fn new(center: f64, radius: f64) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(HyperbolicError::Degenerate("arc radius must be positive"));
        }
        Ok(Self { center: normalize_angle(center), radius })
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Angular half-width; the whole circle once the radius reaches 1.
    pub fn half_angle(&self) -> f64 {
        if self.radius >= 1.0 {
            PI
        } else {
            2.0 * self.radius.asin()
        }
    }

    /// Euclidean arc length on the unit circle.
    pub fn length(&self) -> f64 {
        2.0 * self.half_angle()
    }

    pub fn contains(&self, t: f64) -> bool {
        angle_gap(t, self.center) <= self.half_angle()
    }
}
