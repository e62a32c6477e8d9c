//! The eight functors relating `A`-mod, `Λ`-mod and `B`-mod, their
//! adjunctions, and a sample-based checker for the recollement axioms.

mod adjunction;
mod check;
mod functors;
mod witnesses;

pub use adjunction::{
    counit, naturality, triangle_identities, unit, AdjointPair, Adjunction, AdjunctionIso, TriangleIdentities,
};
pub(crate) use check::Tally;
pub use check::{check_abelian_recollement, random_monic_triple, random_small_module, random_triple, Samples};
pub use functors::{hom, Category, CoinducedTriple, FunctorTag, Functors, HomSp, KernelOfAlpha, Mor, Obj};
pub use witnesses::upper_symmetry_witnesses;

#[cfg(test)]
mod tests;
