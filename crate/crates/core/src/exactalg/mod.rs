//! Exact scalars over Q and prime fields, and dense linear algebra on them.
//!
//! Every higher-level computation (cohomology of point sets, Steiner
//! presentations, unstable-hyperplane tests) reduces to rank, kernel and
//! cokernel computations here.

mod field;
mod mat;

pub use field::{Field, FieldElem, PRIME_BOUND};
pub use mat::{CokernelProjection, Mat};
