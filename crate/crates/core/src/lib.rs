//! dualspin: exact combinatorial spin and spin-c structures on triangulated
//! closed PL manifolds.
//!
//! The library represents triangulations as unordered delta complexes,
//! carries out all framing calculus in the binary symmetric group Σ̃ₙ⁻
//! (backed by an exact Clifford algebra over Z[1/√2]), and decides
//! orientability (ω₁), the second Stiefel-Whitney obstruction (ω₂), the full
//! set of spin structures as an H¹(N;Z₂)-torsor, and spin-c structures via
//! integral lifts of ω₂.

pub mod algebra;
pub mod complex;
pub mod corpus;
pub mod cover;
pub mod gf2;
pub mod homology;
pub mod intmat;
pub mod models;
pub mod perm;
pub mod runner;
pub mod spin;
pub mod spinc;
pub mod util;

pub use algebra::{CliffordElement, DyadicRootTwo, QuadraticScalar, Quaternion};
pub use cover::{CentralSign, LiftedPermutation};
pub use perm::Permutation;
