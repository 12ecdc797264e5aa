use std::f64::consts::{FRAC_PI_2, PI};

use hyperbolic::{angle_gap, Classification, Frame, LogMatrix, Model, MoebiusMap};
use serde::{Deserialize, Serialize};

use crate::letter::{Base, Letter};
use crate::region::{bisector, validate_ping_pong, HalfPlaneRegion};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SchottkyError {
    #[error("invalid parameter {field}: {reason}")]
    InvalidParams { field: &'static str, reason: String },
    #[error("degenerate placement: {0}")]
    Degenerate(&'static str),
    #[error("generator {letter} is {found:?}, expected {expected:?}")]
    WrongType { letter: Letter, found: Classification, expected: Classification },
    #[error("bisector of {0} is undefined: the map fixes 0")]
    DegenerateBisector(Letter),
    #[error("ping-pong violation: D({a}) and D({b}) overlap (gap {gap:.3e})")]
    Violation { a: Letter, b: Letter, gap: f64 },
}

/// Parameters of the reference construction.
///
/// h translates by `translation_length` along the diameter at disc angle
/// `axis_angle`, attracting towards that angle. p is parabolic with fixed point
/// at disc angle `cusp_angle`; in the cusp frame phi it is z -> z + 1 and the
/// base point 0 sits at phi(0) = i * `cusp_height`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroupParams {
    pub translation_length: f64,
    pub cusp_height: f64,
    pub cusp_angle: f64,
    pub axis_angle: f64,
}

impl Default for GroupParams {
    fn default() -> Self {
        Self { translation_length: 4.0, cusp_height: 0.25, cusp_angle: FRAC_PI_2, axis_angle: 0.0 }
    }
}

#[derive(Debug, Clone)]
pub struct SchottkyGroup {
    params: GroupParams,
    h: MoebiusMap,
    p: MoebiusMap,
    axis: MoebiusMap,
    frame: Frame,
    regions: [HalfPlaneRegion; 4],
}

pub fn build_group(params: GroupParams) -> Result<SchottkyGroup, SchottkyError> {
    let positive = |field: &'static str, v: f64| {
        if v > 0.0 && v.is_finite() {
            Ok(())
        } else {
            Err(SchottkyError::InvalidParams { field, reason: format!("must be positive, got {v}") })
        }
    };
    positive("translation_length", params.translation_length)?;
    positive("cusp_height", params.cusp_height)?;
    if !params.cusp_angle.is_finite() || !params.axis_angle.is_finite() {
        return Err(SchottkyError::InvalidParams { field: "angles", reason: "must be finite".into() });
    }
    let off_axis =
        angle_gap(params.cusp_angle, params.axis_angle).min(angle_gap(params.cusp_angle, params.axis_angle + PI));
    if off_axis < 1e-9 {
        return Err(SchottkyError::Degenerate("parabolic fixed point coincides with a fixed point of h"));
    }

    let axis = MoebiusMap::rotation(params.axis_angle, Model::HalfPlane);
    let e = (params.translation_length / 2.0).exp();
    let diag = MoebiusMap::new(e, 0.0, 0.0, 1.0 / e, Model::HalfPlane).expect("unimodular");
    let h = (axis * diag * axis.inverse()).with_model(Model::Disc);

    let frame = Frame::new(cusp_matrix(params));
    let p = frame.convert_map(&MoebiusMap::translation(1.0));
    SchottkyGroup::assemble(params, h, p, axis, frame)
}

fn cusp_matrix(params: GroupParams) -> MoebiusMap {
    let s = params.cusp_height.sqrt();
    let scale = MoebiusMap::new(s, 0.0, 0.0, 1.0 / s, Model::HalfPlane).expect("unimodular");
    scale * MoebiusMap::rotation(-params.cusp_angle, Model::HalfPlane)
}

impl SchottkyGroup {
    fn assemble(
        params: GroupParams,
        h: MoebiusMap,
        p: MoebiusMap,
        axis: MoebiusMap,
        frame: Frame,
    ) -> Result<Self, SchottkyError> {
        check_type(Letter::H, &h, Classification::Hyperbolic)?;
        check_type(Letter::P, &p, Classification::Parabolic)?;
        let regions = [
            bisector(&h, Letter::H)?,
            bisector(&h.inverse(), Letter::HInv)?,
            bisector(&p, Letter::P)?,
            bisector(&p.inverse(), Letter::PInv)?,
        ];
        let report = validate_ping_pong(&regions);
        if !report.ok {
            let worst = report.worst_pair().expect("a failing pair");
            return Err(SchottkyError::Violation { a: worst.a, b: worst.b, gap: worst.gap });
        }
        Ok(Self { params, h, p, axis, frame, regions })
    }

    /// Group from explicit generators; the frame is the standard Cayley map.
    /// Useful for probing validation with arbitrary matrices.
    pub fn from_generators(h: MoebiusMap, p: MoebiusMap) -> Result<Self, SchottkyError> {
        let h = h.with_model(Model::Disc);
        let p = p.with_model(Model::Disc);
        let l = h.translation_length().map_err(|_| SchottkyError::WrongType {
            letter: Letter::H,
            found: h.classify(),
            expected: Classification::Hyperbolic,
        })?;
        let params =
            GroupParams { translation_length: l, cusp_height: f64::NAN, cusp_angle: f64::NAN, axis_angle: f64::NAN };
        Self::assemble(params, h, p, MoebiusMap::identity(Model::HalfPlane), Frame::standard())
    }

    pub fn params(&self) -> &GroupParams {
        &self.params
    }

    pub fn generator(&self, letter: Letter) -> MoebiusMap {
        match letter {
            Letter::H => self.h,
            Letter::HInv => self.h.inverse(),
            Letter::P => self.p,
            Letter::PInv => self.p.inverse(),
        }
    }

    pub fn region(&self, letter: Letter) -> &HalfPlaneRegion {
        &self.regions[Letter::ALL.iter().position(|l| *l == letter).unwrap()]
    }

    pub fn regions(&self) -> &[HalfPlaneRegion; 4] {
        &self.regions
    }

    /// The cusp frame phi: p becomes z -> z + 1 and p+ goes to infinity.
    pub fn cusp_frame(&self) -> &Frame {
        &self.frame
    }

    pub fn translation_length(&self) -> f64 {
        self.h.translation_length().expect("h is hyperbolic")
    }

    /// Disc angle of the parabolic fixed point p+.
    pub fn cusp_point(&self) -> f64 {
        self.frame.half_plane_to_angle(&hyperbolic::BoundaryPoint::Infinity).expect("half-plane point")
    }

    /// Attracting and repelling fixed points of h as disc angles.
    pub fn h_fixed_points(&self) -> (f64, f64) {
        let d = self.h.base_direction();
        (d, hyperbolic::normalize_angle(d + PI))
    }

    /// Exact power of a generator. Powers of p are exact matrices; powers of h
    /// use the diagonal form, so large exponents should go through `power_log`.
    pub fn power(&self, base: Base, exp: i64) -> MoebiusMap {
        match base {
            Base::P => self.frame.convert_map(&MoebiusMap::translation(exp as f64)),
            Base::H => self.power_log(base, exp).to_map(Model::Disc).expect("power of h too large for a plain matrix"),
        }
    }

    pub fn power_log(&self, base: Base, exp: i64) -> LogMatrix {
        match base {
            Base::P => LogMatrix::from_map(&self.power(Base::P, exp)),
            Base::H => {
                let l = self.translation_length();
                let k = exp.unsigned_abs() as f64 * l;
                let (x, y) = if exp >= 0 { (1.0, (-k).exp()) } else { ((-k).exp(), 1.0) };
                let [c, s, _, _] = self.axis.entries();
                let m = [c * c * x + s * s * y, -c * s * x + s * c * y, -s * c * x + c * s * y, s * s * x + c * c * y];
                LogMatrix::from_parts(m, k / 2.0)
            }
        }
    }

    /// The generator as it acts in the cusp frame.
    pub fn generator_in_cusp_frame(&self, letter: Letter) -> MoebiusMap {
        self.frame.convert_map(&self.generator(letter))
    }
}

fn check_type(letter: Letter, g: &MoebiusMap, expected: Classification) -> Result<(), SchottkyError> {
    let found = g.classify();
    if found != expected {
        return Err(SchottkyError::WrongType { letter, found, expected });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use hyperbolic::{BoundaryPoint, Complex64};

    #[test]
    fn default_group_is_valid() {
        let g = build_group(GroupParams::default()).unwrap();
        assert!((g.translation_length() - 4.0).abs() < 1e-12);
        assert!(angle_gap(g.cusp_point(), FRAC_PI_2) < 1e-12);
        assert_eq!(g.h_fixed_points().0, 0.0);
    }

    #[test]
    fn p_is_unit_translation_in_cusp_frame() {
        let g = build_group(GroupParams::default()).unwrap();
        let t = g.generator_in_cusp_frame(Letter::P);
        let e = t.entries();
        for (x, y) in e.iter().zip([1.0, 1.0, 0.0, 1.0]) {
            assert!((x - y).abs() < 1e-12, "{e:?}");
        }
        let base = g.cusp_frame().disc_to_half_plane(Complex64::new(0.0, 0.0));
        assert!((base - Complex64::new(0.0, 0.25)).norm() < 1e-12);
        let pp = g.cusp_frame().convert_boundary(&BoundaryPoint::angle(FRAC_PI_2)).unwrap();
        assert_eq!(pp, BoundaryPoint::Infinity);
    }

    #[test]
    fn powers_are_consistent() {
        let g = build_group(GroupParams { axis_angle: 0.3, ..GroupParams::default() }).unwrap();
        for (base, letter) in [(Base::H, Letter::H), (Base::P, Letter::P)] {
            let mut acc = MoebiusMap::identity(Model::Disc);
            for _ in 0..3 {
                acc = acc * g.generator(letter);
            }
            let direct = g.power(base, 3);
            for (x, y) in acc.entries().iter().zip(direct.entries()) {
                assert!((x - y).abs() < 1e-9 * (1.0 + x.abs()), "{base:?}");
            }
            let inv = g.power(base, -3) * direct;
            assert!(inv.is_identity(1e-9));
        }
        let big = g.power_log(Base::H, 1000);
        assert!((big.base_displacement() - 4000.0).abs() < 1e-9);
        assert!(angle_gap(big.base_direction(), 0.3) < 1e-12);
    }

    #[test]
    fn degenerate_inputs() {
        let bad = GroupParams { cusp_angle: 0.0, ..GroupParams::default() };
        assert!(matches!(build_group(bad), Err(SchottkyError::Degenerate(_))));
        let bad = GroupParams { cusp_angle: PI, ..GroupParams::default() };
        assert!(matches!(build_group(bad), Err(SchottkyError::Degenerate(_))));
        let bad = GroupParams { translation_length: -1.0, ..GroupParams::default() };
        assert!(matches!(build_group(bad), Err(SchottkyError::InvalidParams { .. })));
        let g = build_group(GroupParams::default()).unwrap();
        let err = SchottkyGroup::from_generators(g.generator(Letter::H), MoebiusMap::identity(Model::Disc));
        assert!(matches!(err, Err(SchottkyError::WrongType { letter: Letter::P, .. })));
    }

    #[test]
    fn short_translation_violates_ping_pong() {
        let bad = GroupParams { translation_length: 0.01, ..GroupParams::default() };
        match build_group(bad) {
            Err(SchottkyError::Violation { a, b, gap }) => {
                assert!(gap < 0.0);
                assert!(a.base() != b.base() || a == b.inverse());
            }
            other => panic!("{other:?}"),
        }
    }
}
