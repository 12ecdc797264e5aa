//! Words in the generators of the Schottky group at three levels of grouping,
//! infinite codes given by rules, their limit points, and their classes.

mod a3;
mod classify;
mod endpoint;
mod error;
mod eval;
mod spec;
mod word;

pub use a3::{reblock, A3Pair, WordA3};
pub use classify::{classify_code, classify_window, ClassKind, CodeClass};
pub use endpoint::{
    cusp_frame_to_angle, endpoint, endpoint_in_cusp_frame, endpoint_of, fixed_angle, CuspFrameEndpoint, EndpointReport,
    ENDPOINT_TOL,
};
pub use error::SymbolicError;
pub use eval::{evaluate_blocks, Evaluate};
pub use spec::{BlockIter, Declared, Monomial, SequenceSpec, Tail};
pub use word::{reduce, Block, WordA1, WordA2};
