use num_complex::Complex64;

use crate::moebius::{standard_to_angle, Model, MoebiusMap};
use crate::point::{BoundaryPoint, PlanePoint};
use crate::{HyperbolicError, Result};

/// An isometry phi from the disc to the half-plane, phi = A o K^-1 where K is
/// the standard Cayley map and A a real unimodular matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    a: MoebiusMap,
}

impl Frame {
    pub fn standard() -> Self {
        Self { a: MoebiusMap::identity(Model::HalfPlane) }
    }

    pub fn new(a: MoebiusMap) -> Self {
        Self { a: a.with_model(Model::HalfPlane) }
    }

    pub fn matrix(&self) -> MoebiusMap {
        self.a
    }

    pub fn disc_to_half_plane(&self, w: Complex64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        let z = Complex64::i() * (one + w) / (one - w);
        self.a.apply_complex(z)
    }

    pub fn half_plane_to_disc(&self, z: Complex64) -> Complex64 {
        let u = self.a.inverse().apply_complex(z);
        (u - Complex64::i()) / (u + Complex64::i())
    }

    pub fn angle_to_half_plane(&self, t: f64) -> BoundaryPoint {
        let (s, c) = (t / 2.0).sin_cos();
        let x = if s == 0.0 { BoundaryPoint::Infinity } else { BoundaryPoint::Real(-c / s) };
        self.a.apply_boundary(&x).expect("half-plane frame")
    }

    pub fn half_plane_to_angle(&self, x: &BoundaryPoint) -> Result<f64> {
        if x.model() != Model::HalfPlane {
            return Err(HyperbolicError::ModelMismatch { left: Model::HalfPlane, right: x.model() });
        }
        let u = self.a.inverse().apply_boundary(x)?;
        Ok(standard_to_angle(u))
    }

    /// Move a point to the other model.
    pub fn convert_point(&self, p: &PlanePoint) -> Result<PlanePoint> {
        match p.model() {
            Model::Disc => PlanePoint::half_plane(self.disc_to_half_plane(p.z())),
            Model::HalfPlane => PlanePoint::disc(self.half_plane_to_disc(p.z())),
        }
    }

    pub fn convert_boundary(&self, x: &BoundaryPoint) -> Result<BoundaryPoint> {
        match x {
            BoundaryPoint::Angle(t) => Ok(self.angle_to_half_plane(*t)),
            _ => Ok(BoundaryPoint::angle(self.half_plane_to_angle(x)?)),
        }
    }

    /// Conjugate a map to the other model: g -> phi g phi^-1 or back.
    pub fn convert_map(&self, g: &MoebiusMap) -> MoebiusMap {
        let m = g.with_model(Model::HalfPlane);
        match g.model() {
            Model::Disc => self.a * m * self.a.inverse(),
            Model::HalfPlane => (self.a.inverse() * m * self.a).with_model(Model::Disc),
        }
    }
}
