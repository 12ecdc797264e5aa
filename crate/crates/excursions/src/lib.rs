//! Horoball geometry at the cusp, excursion lengths and winding numbers, and
//! a cutting-sequence tracer that splits a geodesic ray between the cusp and
//! its complement.

mod error;
mod formulas;
mod geodesic;
mod shadow;
mod trace;

pub use error::ExcursionError;
pub use formulas::{excursion_length, horoball_chord, sandwich_check, Excursion, Horoball, SandwichReport};
pub use geodesic::Geodesic;
pub use shadow::{distance_to_geodesic, distance_to_ray, shadowing_distances};
pub use trace::{
    time_average, time_average_grid, trace_ray, LedgerRow, RayStep, RayTarget, RayTrace, Region, Termination,
};
