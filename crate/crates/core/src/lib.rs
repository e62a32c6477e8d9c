#![no_std]
//! Exact computations with modules over triangular matrix algebras
//! `Λ = [[A, M], [0, B]]`.
//!
//! Λ-modules are handled as triples `(X, Y, φ: M ⊗_B Y → X)`. The crate
//! provides the eight functors relating `Λ`-mod to `A`-mod and `B`-mod,
//! checkers for the recollement axioms, Gorenstein-projectivity tests and
//! the stable category of Gorenstein-projective `Λ`-modules.
//!
//! Everything is exact: arithmetic runs over `Q` or a prime field `GF(p)`.

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod error;
pub mod exactlin;
pub mod gorenstein;
pub mod modrep;
pub mod report;
pub mod stablecat;
pub mod recollement;
pub mod triplecat;

pub use error::{Error, Result};
