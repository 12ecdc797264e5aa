use hyperbolic::{normalize_angle, BoundaryPoint, Complex64, LogMatrix};
use schottky::{Base, Letter, SchottkyGroup};

use crate::spec::{SequenceSpec, Tail};
use crate::word::Block;

pub const ENDPOINT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EndpointReport {
    /// Disc angle of the limit point.
    pub angle: f64,
    pub converged: bool,
    /// Number of power blocks multiplied in.
    pub blocks_used: usize,
    /// Euclidean distance between the last two orbit points.
    pub last_step: f64,
}

/// Disc angle of the attracting fixed point of a letter.
pub fn fixed_angle(group: &SchottkyGroup, l: Letter) -> f64 {
    match l {
        Letter::P | Letter::PInv => group.cusp_point(),
        Letter::H => group.h_fixed_points().0,
        Letter::HInv => group.h_fixed_points().1,
    }
}

pub fn endpoint(spec: &SequenceSpec, group: &SchottkyGroup, tol: f64, max_blocks: usize) -> EndpointReport {
    endpoint_of(spec.blocks(), spec.tail(), group, tol, max_blocks)
}

/// Follows gamma_m(0) block by block until consecutive points are within
/// `tol`. A constant tail is resolved exactly through the fixed point.
pub fn endpoint_of(
    blocks: impl Iterator<Item = Block>,
    tail: Tail,
    group: &SchottkyGroup,
    tol: f64,
    max_blocks: usize,
) -> EndpointReport {
    let mut m = LogMatrix::identity();
    let mut prev = Complex64::new(0.0, 0.0);
    let mut last_step = f64::INFINITY;
    let mut used = 0;
    let mut exhausted = true;
    for b in blocks {
        if used == max_blocks {
            exhausted = false;
            break;
        }
        m = m.mul(&group.power_log(b.base, b.exp));
        used += 1;
        let z = Complex64::from_polar((m.base_displacement() / 2.0).tanh(), m.base_direction());
        last_step = (z - prev).norm();
        prev = z;
        if last_step < tol && tail != Tail::End {
            return EndpointReport { angle: m.base_direction(), converged: true, blocks_used: used, last_step };
        }
    }
    match tail {
        Tail::Constant(l) if exhausted => EndpointReport {
            angle: normalize_angle(m.apply_angle(fixed_angle(group, l))),
            converged: true,
            blocks_used: used,
            last_step: 0.0,
        },
        _ => EndpointReport { angle: m.base_direction(), converged: false, blocks_used: used, last_step },
    }
}

/// Limit point in the cusp frame, where p is z -> z + 1; `None` is infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CuspFrameEndpoint {
    pub x: Option<f64>,
    pub converged: bool,
    pub blocks_used: usize,
}

/// Same limit as `endpoint_of`, evaluated through A gamma A^-1 applied to the
/// base point of the cusp frame. This keeps full relative accuracy for limit
/// points close to the cusp.
pub fn endpoint_in_cusp_frame(
    blocks: impl Iterator<Item = Block>,
    tail: Tail,
    group: &SchottkyGroup,
    tol: f64,
    max_blocks: usize,
) -> CuspFrameEndpoint {
    let frame = group.cusp_frame();
    let a = frame.matrix();
    let base = frame.disc_to_half_plane(Complex64::new(0.0, 0.0));
    let mut m = LogMatrix::from_map(&a);
    let a_inv = LogMatrix::from_map(&a.inverse());
    let mut prev = base;
    let mut used = 0;
    let mut exhausted = true;
    for b in blocks {
        if used == max_blocks {
            exhausted = false;
            break;
        }
        m = m.mul(&group.power_log(b.base, b.exp));
        used += 1;
        let z = m.mul(&a_inv).apply_complex(base);
        let step = (z - prev).norm();
        prev = z;
        if step < tol * (1.0 + z.norm()) && tail != Tail::End {
            return CuspFrameEndpoint { x: Some(z.re), converged: true, blocks_used: used };
        }
    }
    match tail {
        Tail::Constant(l) if exhausted => {
            let fixed = match l.base() {
                Base::P => None,
                Base::H => match frame.angle_to_half_plane(fixed_angle(group, l)) {
                    BoundaryPoint::Real(x) => Some(x),
                    _ => None,
                },
            };
            CuspFrameEndpoint { x: m.mul(&a_inv).apply_real(fixed), converged: true, blocks_used: used }
        }
        _ => CuspFrameEndpoint { x: Some(prev.re), converged: false, blocks_used: used },
    }
}

/// Map a cusp-frame point back to a disc angle.
pub fn cusp_frame_to_angle(group: &SchottkyGroup, x: Option<f64>) -> f64 {
    let p = match x {
        Some(x) => BoundaryPoint::Real(x),
        None => BoundaryPoint::Infinity,
    };
    group.cusp_frame().half_plane_to_angle(&p).expect("half-plane point")
}
