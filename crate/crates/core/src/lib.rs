//! Exact computation with the polychromatic Ewens sampling formula.
//!
//! The crate is organised bottom-up:
//!
//! - [`partition`]: colored partitions, their enumeration and multinomial
//!   coefficients.
//! - [`cycle_index`]: permutations, the coloring map from permutations to
//!   colored partitions, and the refined cycle index polynomial evaluated at
//!   rational points (with brute-force oracles over the symmetric group).
//! - [`moments`]: multivariate Dirichlet and Gamma moments, computed three
//!   independent ways, plus Monte Carlo validators.
//! - [`esf`]: the polychromatic ESF as an exact distribution, conditioning,
//!   aggregation of colors and the consistency kernels.
//! - [`samplers`]: urn, restaurant and permutation samplers.
//! - [`necklaces`]: colored necklaces and the necklace form of the
//!   multinomial coefficient.
//! - [`verify`]: the cross-module identity checks behind `polyesf verify`.
//!
//! Every exact quantity is a [`BigRational`].

pub mod cycle_index;
pub mod error;
pub mod esf;
pub mod json;
pub mod limits;
pub mod moments;
pub mod necklaces;
pub mod partition;
pub mod random;
pub mod rational;
pub mod samplers;
pub mod verify;

pub use num_rational::BigRational;

pub use crate::error::{Error, Result};
pub use crate::limits::Limits;
