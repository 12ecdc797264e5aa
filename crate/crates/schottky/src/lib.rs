//! The Schottky group generated by a hyperbolic isometry h and a parabolic
//! isometry p, its Dirichlet domain at 0, and the constants that control
//! angles between orbit points.

mod constants;
mod group;
mod letter;
mod region;

pub use constants::{geometry_constants, lemma_constant, GeometryConstants};
pub use group::{build_group, GroupParams, SchottkyError, SchottkyGroup};
pub use letter::{Base, Letter};
pub use region::{bisector, validate_ping_pong, HalfPlaneRegion, PairGap, PingPongReport};

/// Minimal Euclidean gap required between closed ping-pong discs.
pub const GAP_THRESHOLD: f64 = 1e-6;
