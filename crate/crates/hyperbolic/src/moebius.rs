use std::ops::Mul;

use num_complex::Complex64;

use crate::metric::bisector_arc;
use crate::point::{normalize_angle, BoundaryPoint, PlanePoint};
use crate::{HyperbolicError, Result, TRACE_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Model {
    Disc,
    HalfPlane,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    Identity,
    Hyperbolic,
    Parabolic,
    Elliptic,
}

/// An orientation-preserving isometry, stored as a matrix in SL(2,R).
///
/// In the half-plane model the matrix acts by z -> (az+b)/(cz+d). In the disc
/// model the same matrix acts through the standard Cayley transform
/// K(z) = (z-i)/(z+i), so that i in the half-plane corresponds to 0 in the
/// disc and the two tags describe the same abstract group element.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoebiusMap {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    model: Model,
}

impl MoebiusMap {
    pub fn new(a: f64, b: f64, c: f64, d: f64, model: Model) -> Result<Self> {
        let det = a * d - b * c;
        if !(det > 0.0) || !det.is_finite() {
            return Err(HyperbolicError::BadDeterminant(det));
        }
        Ok(Self::normalized(a, b, c, d, model))
    }

    fn normalized(a: f64, b: f64, c: f64, d: f64, model: Model) -> Self {
        // For large entries the computed determinant is dominated by rounding;
        // dividing by it would inject that error into every entry.
        let det = a * d - b * c;
        let noise = 8.0 * f64::EPSILON * ((a * d).abs() + (b * c).abs());
        let s = if (det - 1.0).abs() <= noise { 1.0 } else { det.sqrt() };
        let (mut a, mut b, mut c, mut d) = (a / s, b / s, c / s, d / s);
        let first = [a, b, c, d].into_iter().find(|x| *x != 0.0).unwrap_or(1.0);
        if first < 0.0 {
            a = -a;
            b = -b;
            c = -c;
            d = -d;
        }
        Self { a, b, c, d, model }
    }

    pub fn identity(model: Model) -> Self {
        Self { a: 1.0, b: 0.0, c: 0.0, d: 1.0, model }
    }

    /// Half-plane translation z -> z + t.
    pub fn translation(t: f64) -> Self {
        Self::normalized(1.0, t, 0.0, 1.0, Model::HalfPlane)
    }

    /// Half-plane dilation z -> lambda z.
    pub fn dilation(lambda: f64) -> Self {
        let r = lambda.sqrt();
        Self::normalized(r, 0.0, 0.0, 1.0 / r, Model::HalfPlane)
    }

    /// Rotation by `theta` about i in the half-plane, equivalently about 0 in the disc.
    pub fn rotation(theta: f64, model: Model) -> Self {
        let (s, c) = (theta / 2.0).sin_cos();
        Self::normalized(c, s, -s, c, model)
    }

    pub fn entries(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn model(&self) -> Model {
        self.model
    }

    /// Same matrix, read in the other model. The abstract isometry does not
    /// change: this only switches which coordinates `apply` expects.
    pub fn with_model(self, model: Model) -> Self {
        Self { model, ..self }
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn inverse(&self) -> Self {
        Self::normalized(self.d, -self.b, -self.c, self.a, self.model)
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.model != other.model {
            return Err(HyperbolicError::ModelMismatch { left: self.model, right: other.model });
        }
        Ok(self.mul_raw(other))
    }

    fn mul_raw(&self, o: &Self) -> Self {
        Self::normalized(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
            self.model,
        )
    }

    /// Coefficients (alpha, beta) of the disc action w -> (alpha w + beta)/(conj(beta) w + conj(alpha)).
    pub fn su11(&self) -> (Complex64, Complex64) {
        su11(self.a, self.b, self.c, self.d)
    }

    /// Action on raw coordinates of the map's own model.
    pub fn apply_complex(&self, z: Complex64) -> Complex64 {
        match self.model {
            Model::HalfPlane => (self.a * z + self.b) / (self.c * z + self.d),
            Model::Disc => {
                let (al, be) = self.su11();
                (al * z + be) / (be.conj() * z + al.conj())
            }
        }
    }

    pub fn apply(&self, z: &PlanePoint) -> Result<PlanePoint> {
        self.check(z.model())?;
        PlanePoint::new(self.apply_complex(z.z()), self.model)
    }

    pub fn apply_boundary(&self, x: &BoundaryPoint) -> Result<BoundaryPoint> {
        match (*x, self.model) {
            (BoundaryPoint::Angle(t), Model::Disc) => {
                let (al, be) = self.su11();
                Ok(BoundaryPoint::Angle(apply_angle(al, be, t)))
            }
            (BoundaryPoint::Real(x), Model::HalfPlane) => {
                let den = self.c * x + self.d;
                if den == 0.0 {
                    Ok(BoundaryPoint::Infinity)
                } else {
                    Ok(BoundaryPoint::Real((self.a * x + self.b) / den))
                }
            }
            (BoundaryPoint::Infinity, Model::HalfPlane) => {
                if self.c == 0.0 {
                    Ok(BoundaryPoint::Infinity)
                } else {
                    Ok(BoundaryPoint::Real(self.a / self.c))
                }
            }
            (p, m) => Err(HyperbolicError::ModelMismatch { left: m, right: p.model() }),
        }
    }

    fn check(&self, m: Model) -> Result<()> {
        if m != self.model {
            return Err(HyperbolicError::ModelMismatch { left: self.model, right: m });
        }
        Ok(())
    }

    /// Image of the base point (0 in the disc, i in the half-plane).
    pub fn base_image(&self) -> Complex64 {
        match self.model {
            Model::Disc => {
                let (al, be) = self.su11();
                be / al.conj()
            }
            Model::HalfPlane => self.apply_complex(Complex64::i()),
        }
    }

    /// Distance from the base point to its image, from cosh d = |M|^2 / 2.
    pub fn base_displacement(&self) -> f64 {
        let n2 = self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d;
        (n2 / 2.0).max(1.0).acosh()
    }

    /// Disc angle of the ray from 0 through the image of 0.
    pub fn base_direction(&self) -> f64 {
        let (al, be) = self.su11();
        normalize_angle(be.arg() + al.arg())
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        (self.a - 1.0).abs() < tol && self.b.abs() < tol && self.c.abs() < tol && (self.d - 1.0).abs() < tol
    }

    /// Trace classification. Identity is detected first.
    pub fn classify(&self) -> Classification {
        if self.is_identity(1e-12) {
            return Classification::Identity;
        }
        let t = self.trace().abs();
        if (t - 2.0).abs() <= TRACE_TOL {
            Classification::Parabolic
        } else if t > 2.0 {
            Classification::Hyperbolic
        } else {
            Classification::Elliptic
        }
    }

    /// Classification from the relative position of the bisectors of
    /// [0, g(0)] and [0, g^-1(0)]: crossing means elliptic, a common point at
    /// infinity means parabolic, disjoint means hyperbolic. Returns `None` when
    /// g fixes the base point.
    pub fn classify_by_bisectors(&self) -> Option<Classification> {
        if self.is_identity(1e-12) {
            return Some(Classification::Identity);
        }
        let d = self.base_displacement();
        if d < 1e-9 {
            return None;
        }
        let inv = self.inverse();
        let (c1, w1) = bisector_arc(d, self.base_direction());
        let (c2, w2) = bisector_arc(d, inv.base_direction());
        let ends1 = [c1 - w1, c1 + w1];
        let ends2 = [c2 - w2, c2 + w2];
        let tol = 1e-7;
        for e in ends1 {
            for f in ends2 {
                if crate::point::angle_gap(e, f) < tol {
                    return Some(Classification::Parabolic);
                }
            }
        }
        let inside = ends2.iter().filter(|&&e| crate::point::angle_gap(e, c1) < w1).count();
        Some(if inside == 1 { Classification::Elliptic } else { Classification::Hyperbolic })
    }

    /// l(m) = 2 arccosh(|tr m| / 2).
    pub fn translation_length(&self) -> Result<f64> {
        match self.classify() {
            Classification::Hyperbolic => Ok(2.0 * (self.trace().abs() / 2.0).acosh()),
            c => Err(HyperbolicError::NotHyperbolic(c)),
        }
    }

    /// Fixed points on the boundary of the map's model.
    pub fn boundary_fixed_points(&self) -> Vec<BoundaryPoint> {
        let hp: Vec<BoundaryPoint> = {
            let (a, b, c, d) = (self.a, self.b, self.c, self.d);
            if c.abs() < 1e-300 {
                let mut v = vec![BoundaryPoint::Infinity];
                if (a - d).abs() > 1e-15 {
                    v.push(BoundaryPoint::Real(b / (d - a)));
                }
                v
            } else {
                let disc = (a + d) * (a + d) - 4.0;
                if disc < -1e-15 {
                    vec![]
                } else {
                    let r = disc.max(0.0).sqrt();
                    let mut v = vec![BoundaryPoint::Real((a - d + r) / (2.0 * c))];
                    if r > 0.0 {
                        v.push(BoundaryPoint::Real((a - d - r) / (2.0 * c)));
                    }
                    v
                }
            }
        };
        match self.model {
            Model::HalfPlane => hp,
            Model::Disc => hp.into_iter().map(|p| BoundaryPoint::Angle(standard_to_angle(p))).collect(),
        }
    }
}

impl Mul for MoebiusMap {
    type Output = MoebiusMap;

    /// Panics on mixed models; use `compose` for a fallible product.
    fn mul(self, rhs: MoebiusMap) -> MoebiusMap {
        self.compose(&rhs).expect("model mismatch in product")
    }
}

pub(crate) fn su11(a: f64, b: f64, c: f64, d: f64) -> (Complex64, Complex64) {
    (Complex64::new(a + d, b - c) / 2.0, Complex64::new(a - d, -(b + c)) / 2.0)
}

/// Image of e^{it} under the disc action with coefficients (alpha, beta).
pub(crate) fn apply_angle(al: Complex64, be: Complex64, t: f64) -> f64 {
    let u = Complex64::from_polar(1.0, t);
    normalize_angle(2.0 * (al * u + be).arg() - t)
}

/// Standard Cayley image of a half-plane boundary point, as a disc angle.
pub(crate) fn standard_to_angle(p: BoundaryPoint) -> f64 {
    match p {
        BoundaryPoint::Infinity => 0.0,
        BoundaryPoint::Real(x) => normalize_angle(-2.0 * 1f64.atan2(x)),
        BoundaryPoint::Angle(t) => t,
    }
}
