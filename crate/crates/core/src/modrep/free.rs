use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{direct_sum, hom_space, Module, ModuleMap};
use crate::algebra::{regular_module, Algebra};
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix, Subspace};

/// `A^r`, with basis `(t, s) ↦ t·dim A + s`.
pub fn free_module<F: Field>(a: &Arc<Algebra<F>>, rank: usize) -> Module<F> {
    let r = regular_module(a);
    let copies: Vec<Module<F>> = (0..rank).map(|_| r.clone()).collect();
    direct_sum(a, &copies).expect("copies share the algebra").module
}

/// The map `A^r → x` sending the unit of copy `t` to `generators[t]`.
pub fn map_from_free<F: Field>(x: &Module<F>, generators: &[Vec<F::Elem>]) -> ModuleMap<F> {
    let a = x.algebra();
    let n = a.dim();
    let free = free_module(a, generators.len());
    let mut cols = Vec::with_capacity(n * generators.len());
    for g in generators {
        for s in 0..n {
            cols.push(x.action(s).mul_vec(g));
        }
    }
    let mat = Matrix::from_columns(x.field(), x.dim(), &cols);
    ModuleMap::new_unchecked(free, x.clone(), mat)
}

/// Generators chosen greedily among the standard basis vectors: a vector
/// is kept when it is not already in the submodule generated so far.
pub fn greedy_generators<F: Field>(x: &Module<F>) -> Vec<Vec<F::Elem>> {
    let f = x.field();
    let mut span = Subspace::zero(f, x.dim());
    let mut gens = Vec::new();
    for j in 0..x.dim() {
        if span.dim() == x.dim() {
            break;
        }
        let mut e = alloc::vec![f.zero(); x.dim()];
        e[j] = f.one();
        if span.contains(&e) {
            continue;
        }
        span = span.sum(&x.generated_subspace(core::slice::from_ref(&e)));
        gens.push(e);
    }
    gens
}

/// An epimorphism from a free module.
#[derive(Debug, Clone)]
pub struct FreeCover<F: Field> {
    pub rank: usize,
    pub generators: Vec<Vec<F::Elem>>,
    pub epi: ModuleMap<F>,
}

impl<F: Field> FreeCover<F> {
    pub fn free(&self) -> &Module<F> {
        self.epi.source()
    }
}

pub fn free_cover<F: Field>(x: &Module<F>) -> FreeCover<F> {
    free_cover_with(x, greedy_generators(x)).expect("greedy generators generate")
}

/// A free cover on caller-chosen generators.
pub fn free_cover_with<F: Field>(x: &Module<F>, generators: Vec<Vec<F::Elem>>) -> Result<FreeCover<F>> {
    let epi = map_from_free(x, &generators);
    if !epi.is_surjective() {
        return Err(Error::Validation("vectors do not generate the module".into()));
    }
    Ok(FreeCover { rank: generators.len(), generators, epi })
}

/// Result of a projectivity test.
#[derive(Debug, Clone)]
pub struct Projectivity<F: Field> {
    pub projective: bool,
    pub cover: FreeCover<F>,
    /// A module-map section of the cover, when one exists.
    pub section: Option<ModuleMap<F>>,
}

/// Decides projectivity by looking for a section of a free cover.
pub fn is_projective<F: Field>(x: &Module<F>) -> Projectivity<F> {
    let cover = free_cover(x);
    let section = split_epi(&cover.epi);
    Projectivity { projective: section.is_some(), cover, section }
}

/// A module map `s` with `e ∘ s = id`, if there is one.
pub fn split_epi<F: Field>(e: &ModuleMap<F>) -> Option<ModuleMap<F>> {
    let x = e.target();
    let h = hom_space(x, e.source()).ok()?;
    h.solve(Some(e.matrix()), None, &Matrix::identity(x.field(), x.dim()))
}

/// A module map `r` with `r ∘ m = id`, if there is one.
pub fn split_mono<F: Field>(m: &ModuleMap<F>) -> Option<ModuleMap<F>> {
    let x = m.source();
    let h = hom_space(m.target(), x).ok()?;
    h.solve(None, Some(m.matrix()), &Matrix::identity(x.field(), x.dim()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Rationals;
    use alloc::vec;

    #[test]
    fn projectivity_over_dual_numbers() {
        let q = Rationals;
        let d = Arc::new(Algebra::truncated_polynomial(&q, 2));
        let r = regular_module(&d);
        let p = is_projective(&r);
        assert!(p.projective);
        let s = p.section.unwrap();
        assert!(p.cover.epi.compose(&s).unwrap().matrix().is_identity());
        let k = Module::new(d.clone(), vec![Matrix::identity(&q, 1), Matrix::zeros(&q, 1, 1)]).unwrap();
        assert!(!is_projective(&k).projective);
        assert!(is_projective(&Module::zero(&d)).projective);
    }

    #[test]
    fn semisimple_modules_are_projective() {
        let q = Rationals;
        let k = Arc::new(Algebra::ground(&q));
        let x = free_module(&k, 3);
        let p = is_projective(&x);
        assert!(p.projective);
        assert_eq!(p.cover.rank, 3);
    }

    #[test]
    fn greedy_cover_of_free_module_has_minimal_rank() {
        let q = Rationals;
        let d = Arc::new(Algebra::truncated_polynomial(&q, 3));
        let x = free_module(&d, 2);
        assert_eq!(free_cover(&x).rank, 2);
    }
}
