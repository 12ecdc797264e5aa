//! Numerical probes of the dimension of the uniformly radial limit set:
//! critical exponents of orbit series, shadow arcs and the delta-cover,
//! box counting, and a Frostman measure on a tree of orbit points.

mod boxcount;
mod cover;
mod error;
mod estimate;
mod exponent;
mod frostman;
mod orbit;
mod shadow;
mod tree;

pub use boxcount::{box_count, cell_grid, occupied_cells, BoxInput};
pub use cover::{cover_family, CoverAnnulus, CoverConfig, CoverFamily, CoverMember};
pub use error::DimensionError;
pub use estimate::{DimensionEstimate, Method};
pub use exponent::{critical_exponent, growth_indicator, ExponentConfig};
pub use frostman::{
    exhaustive_ball_constant, frostman_check, frostman_constant, FrostmanConfig, FrostmanFit, FrostmanReport,
};
pub use orbit::{orbit_sample, poincare_partial, Alphabet, AnnulusSum, OrbitSample, PoincarePartial, Source};
pub use shadow::{d0, geometric_shadow_half_angle, log_offset_from_direction, shadow_arc, shadow_constants, ShadowArc};
pub use tree::{build_tree, letter_separation, resolve_crossings, CodeTree, TreeConfig, Vertex};

/// Annulus counts c_n of an orbit sample, scaled by e^{-n s}, and the
/// indices n where the scaled count sets a new record.
pub fn count_records(counts: &[usize], s: f64) -> Vec<usize> {
    let mut best = f64::NEG_INFINITY;
    let mut out = Vec::new();
    for (n, &c) in counts.iter().enumerate() {
        let v = c as f64 * (-(n as f64) * s).exp();
        if v > best {
            best = v;
            out.push(n);
        }
    }
    out
}
