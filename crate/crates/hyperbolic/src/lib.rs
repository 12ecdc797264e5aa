//! Hyperbolic plane primitives: the Poincare disc and upper half-plane,
//! orientation-preserving isometries as real unimodular matrices, and the
//! metric structure at infinity seen from the origin of the disc.

mod error;
mod frame;
mod logmat;
mod metric;
mod moebius;
mod point;

pub use error::HyperbolicError;
pub use frame::Frame;
pub use logmat::LogMatrix;
pub use metric::{
    bisector_arc, busemann, disc_dist, dist, dist_from_log_cosh, geodesic_point, gromov_product, half_plane_dist,
    visual_dist, visual_dist_via,
};
pub use moebius::{Classification, Model, MoebiusMap};
pub use point::{angle_gap, normalize_angle, BoundaryCircleArc, BoundaryPoint, PlanePoint};

pub use num_complex::Complex64;

pub type Result<T> = std::result::Result<T, HyperbolicError>;

/// Tolerance on |trace| - 2 used to call a map parabolic.
pub const TRACE_TOL: f64 = 1e-9;
