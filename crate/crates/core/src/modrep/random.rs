use alloc::sync::Arc;
use alloc::vec::Vec;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_core::RngCore;

use super::{free_module, Module, ModuleMap};
use crate::algebra::Algebra;
use crate::exactlin::Field;

/// The generator used for every seeded computation.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A vector whose entries are zero half of the time, so that generated
/// submodules are not always the whole free module.
fn sparse_vector<F: Field, R: RngCore + ?Sized>(f: &F, n: usize, rng: &mut R) -> Vec<F::Elem> {
    (0..n)
        .map(|_| if rng.next_u32() & 1 == 0 { f.zero() } else { f.random(rng) })
        .collect()
}

/// `random_module(a, g, rng)`: the submodule of `A^g` generated by `g`
/// random vectors, with its inclusion.
pub fn random_module<F: Field, R: RngCore + ?Sized>(
    a: &Arc<Algebra<F>>,
    generators: usize,
    rng: &mut R,
) -> (Module<F>, ModuleMap<F>) {
    let free = free_module(a, generators);
    let f = a.field();
    let gens: Vec<Vec<F::Elem>> = (0..generators).map(|_| sparse_vector(f, free.dim(), rng)).collect();
    let sub = free.generated_subspace(&gens);
    free.submodule(&sub).expect("generated subspaces are submodules")
}

/// `A^g` modulo the submodule generated by `relations` random vectors,
/// with the projection.
pub fn random_quotient_module<F: Field, R: RngCore + ?Sized>(
    a: &Arc<Algebra<F>>,
    generators: usize,
    relations: usize,
    rng: &mut R,
) -> (Module<F>, ModuleMap<F>) {
    let free = free_module(a, generators);
    let f = a.field();
    let rels: Vec<Vec<F::Elem>> = (0..relations).map(|_| sparse_vector(f, free.dim(), rng)).collect();
    let sub = free.generated_subspace(&rels);
    let (m, p, _) = free.quotient(&sub).expect("generated subspaces are submodules");
    (m, p)
}
