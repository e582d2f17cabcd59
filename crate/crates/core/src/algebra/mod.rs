//! Exact arithmetic backends: scalars in Z[1/√2] and Q(√d), a
//! negative-definite Clifford algebra, and quaternions.

pub mod clifford;
pub mod quaternion;
pub mod scalar;

pub use clifford::{CliffordElement, CliffordError, MAX_RANK};
pub use quaternion::Quaternion;
pub use scalar::{DyadicRootTwo, QuadraticScalar, ScalarError};
