//! Exact Gale transforms of labeled point configurations in projective space,
//! together with the certificates that rest on them: self-association,
//! arithmetic Gorenstein-ness, rational normal curves through `r+3` points,
//! duality of generalized Reed–Solomon codes, stability, and the Gale duality
//! of determinantal point sets.
//!
//! All arithmetic is exact, over ℚ or a prime field `GF(p)`.

pub mod codes;
pub mod curves;
pub mod demo;
pub mod detnl;
pub mod error;
pub mod field;
pub mod format;
pub mod gale;
pub mod generic;
pub mod matrix;
pub mod pointconfig;
pub mod sample;
pub mod scan;
pub mod selfassoc;

pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
pub use gale::{gale_transform, GaleResult};
pub use generic::Verdict;
pub use matrix::{ExactMatrix, Rref};
pub use pointconfig::{Equivalence, PointConfiguration, SubsetSelector};
