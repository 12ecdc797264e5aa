//! The divergence-on-average criterion: partial sums of d(0, omega_i(0))
//! against 2 ln|r_i| over the A3 coding of a code, heuristic verdicts from
//! finite tables, and the length bounds behind the criterion.

mod bounds;
mod criterion;
mod error;
mod verdict;

pub use bounds::{denominator_gap, length_bounds, LengthBounds};
pub use criterion::{
    a3_pairs, criterion_ratio, criterion_table, generate, parabolic_distance, CriterionRow, CriterionTable,
    MAX_PREFIX_BLOCKS,
};
pub use error::DivergenceError;
pub use verdict::{doa_test, judge, q_grid, write_tables_csv, CutoffResult, DoaConfig, DoaReport, Verdict};
