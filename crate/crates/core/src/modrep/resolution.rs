use alloc::vec::Vec;

use super::{free_cover, free_module, Module, ModuleMap};
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix, Subspace};

/// Caps on resolution size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest dimension of a single free module.
    pub max_dim: usize,
    /// Largest number of stages.
    pub max_length: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_dim: 4096, max_length: 16 }
    }
}

/// One stage `d_i: F_i → F_{i-1}` (or `F_0 → x` for `i = 0`).
#[derive(Debug, Clone)]
pub struct ResolutionStage<F: Field> {
    pub rank: usize,
    pub differential: ModuleMap<F>,
}

/// A free resolution `F_L → … → F_0 → x`.
///
/// Stages are exact where computed; the resolution is complete when the
/// last kernel vanished.
#[derive(Debug, Clone)]
pub struct FreeResolution<F: Field> {
    pub module: Module<F>,
    pub stages: Vec<ResolutionStage<F>>,
    pub complete: bool,
}

impl<F: Field> FreeResolution<F> {
    pub fn ranks(&self) -> Vec<usize> {
        self.stages.iter().map(|s| s.rank).collect()
    }

    /// Checks `d_{i-1} d_i = 0` and `Im d_i = Ker d_{i-1}` at every stage.
    pub fn is_exact(&self) -> bool {
        if let Some(s) = self.stages.first() {
            if !s.differential.is_surjective() {
                return false;
            }
        }
        self.stages.windows(2).all(|w| {
            let (prev, cur) = (&w[0].differential, &w[1].differential);
            prev.matrix().mul(cur.matrix()).is_zero() && cur.matrix().image() == prev.matrix().kernel()
        })
    }
}

/// `free_resolution(x, length)`: stages `0..=length`.
pub fn free_resolution<F: Field>(x: &Module<F>, length: usize, limits: &Limits) -> Result<FreeResolution<F>> {
    if length >= limits.max_length {
        return Err(Error::ResourceCap { what: "resolution length", limit: limits.max_length, needed: length + 1 });
    }
    let a = x.algebra();
    let mut stages: Vec<ResolutionStage<F>> = Vec::new();
    // the module to cover next, with its inclusion into the previous free module
    let mut current: Module<F> = x.clone();
    let mut incl: Matrix<F> = Matrix::identity(x.field(), x.dim());
    let mut prev: Module<F> = x.clone();
    for _ in 0..=length {
        if current.dim() == 0 {
            break;
        }
        let cover = free_cover(&current);
        let needed = cover.rank * a.dim();
        if needed > limits.max_dim {
            return Err(Error::ResourceCap { what: "free module dimension", limit: limits.max_dim, needed });
        }
        let d = incl.mul(cover.epi.matrix());
        let free = free_module(a, cover.rank);
        let differential = ModuleMap::new_unchecked(free.clone(), prev.clone(), d);
        let ker: Subspace<F> = differential.matrix().kernel();
        let (k, ki) = free.submodule(&ker)?;
        stages.push(ResolutionStage { rank: cover.rank, differential });
        current = k;
        incl = ki.matrix().clone();
        prev = free;
    }
    Ok(FreeResolution { module: x.clone(), stages, complete: current.dim() == 0 })
}

/// `Ext^i(x, w)` as cocycles modulo coboundaries inside `Hom(F_i, w) ≅ w^{r_i}`.
#[derive(Debug, Clone)]
pub struct ExtGroup<F: Field> {
    pub degree: usize,
    pub dim: usize,
    pub cocycles: Subspace<F>,
    pub coboundaries: Subspace<F>,
}

impl<F: Field> ExtGroup<F> {
    /// Cocycle representatives of a basis.
    pub fn basis(&self) -> Vec<Vec<F::Elem>> {
        let q = self.coboundaries.quotient();
        // complement of the coboundaries restricted to the cocycles
        let proj_cocycles = Subspace::from_rows(&self.cocycles.basis().mul(&q.projection.transpose()));
        proj_cocycles.basis_vectors().into_iter().map(|v| q.lift.mul_vec(&v)).collect()
    }
}

/// Matrix of `h ↦ h ∘ d` for `d: A^{r} → A^{r'}` on `w^{r'} → w^{r}`.
fn pullback<F: Field>(d: &ModuleMap<F>, w: &Module<F>) -> Matrix<F> {
    let a = d.source().algebra();
    let f = w.field();
    let n = a.dim();
    let (r, rp) = (d.source().dim() / n.max(1), d.target().dim() / n.max(1));
    let dw = w.dim();
    let mut out = Matrix::zeros(f, r * dw, rp * dw);
    let unit = a.unit();
    for j in 0..r {
        // d(1_j) = Σ_s u_s d(e_s at slot j)
        let mut image = alloc::vec![f.zero(); d.target().dim()];
        for (s, us) in unit.iter().enumerate() {
            if f.is_zero(us) {
                continue;
            }
            for (row, v) in image.iter_mut().enumerate() {
                f.mul_add_assign(v, us, d.matrix().get(row, j * n + s));
            }
        }
        for k in 0..rp {
            let block = w.act(&image[k * n..(k + 1) * n]);
            out.set_block(j * dw, k * dw, &block);
        }
    }
    out
}

/// `Ext^i(x, w)` for every `i` in `degrees`, from one resolution.
pub fn ext_range<F: Field>(
    x: &Module<F>,
    w: &Module<F>,
    degrees: core::ops::RangeInclusive<usize>,
    limits: &Limits,
) -> Result<Vec<ExtGroup<F>>> {
    if !x.same_algebra(w) {
        return Err(Error::AlgebraMismatch);
    }
    let top = *degrees.end();
    let res = free_resolution(x, top + 1, limits)?;
    let f = w.field();
    let hom_dim = |i: usize| res.stages.get(i).map_or(0, |s| s.rank * w.dim());
    let mut out = Vec::new();
    for i in degrees {
        let n = hom_dim(i);
        // d_{i+1}^*: Hom(F_i, w) → Hom(F_{i+1}, w)
        let cocycles = match res.stages.get(i + 1) {
            Some(s) => pullback(&s.differential, w).kernel(),
            None => Subspace::full(f, n),
        };
        let coboundaries = match (i, res.stages.get(i)) {
            (0, _) | (_, None) => Subspace::zero(f, n),
            (_, Some(s)) => pullback(&s.differential, w).image(),
        };
        let dim = cocycles.dim() - coboundaries.dim();
        out.push(ExtGroup { degree: i, dim, cocycles, coboundaries });
    }
    Ok(out)
}

/// `ext(x, w, i)`.
pub fn ext<F: Field>(x: &Module<F>, w: &Module<F>, i: usize, limits: &Limits) -> Result<ExtGroup<F>> {
    Ok(ext_range(x, w, i..=i, limits)?.pop().expect("one degree requested"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{regular_module, Algebra};
    use crate::exactlin::{PrimeField, Rationals};
    use crate::modrep::hom_space;
    use alloc::sync::Arc;
    use alloc::vec;

    fn dual_and_simple() -> (Arc<Algebra<Rationals>>, Module<Rationals>) {
        let q = Rationals;
        let d = Arc::new(Algebra::truncated_polynomial(&q, 2));
        let k = Module::new(d.clone(), vec![Matrix::identity(&q, 1), Matrix::zeros(&q, 1, 1)]).unwrap();
        (d, k)
    }

    #[test]
    fn resolution_of_simple_is_periodic() {
        let (d, k) = dual_and_simple();
        let res = free_resolution(&k, 4, &Limits::default()).unwrap();
        assert_eq!(res.ranks(), vec![1, 1, 1, 1, 1]);
        assert!(res.is_exact());
        assert!(!res.complete);
        let free = free_resolution(&regular_module(&d), 3, &Limits::default()).unwrap();
        assert_eq!(free.ranks(), vec![1]);
        assert!(free.complete);
        let zero = free_resolution(&Module::zero(&d), 3, &Limits::default()).unwrap();
        assert!(zero.stages.is_empty());
    }

    #[test]
    fn ext_over_dual_numbers() {
        let (d, k) = dual_and_simple();
        let r = regular_module(&d);
        let l = Limits::default();
        assert_eq!(ext(&k, &k, 1, &l).unwrap().dim, 1);
        assert_eq!(ext(&k, &k, 2, &l).unwrap().dim, 1);
        assert_eq!(ext(&k, &r, 1, &l).unwrap().dim, 0);
        assert_eq!(ext(&r, &k, 1, &l).unwrap().dim, 0);
        assert_eq!(ext(&k, &r, 0, &l).unwrap().dim, hom_space(&k, &r).unwrap().dim());
        assert_eq!(ext(&k, &k, 1, &l).unwrap().basis().len(), 1);
    }

    #[test]
    fn caps_are_enforced() {
        let (_, k) = dual_and_simple();
        let tight = Limits { max_dim: 1, max_length: 16 };
        assert!(matches!(free_resolution(&k, 2, &tight), Err(Error::ResourceCap { .. })));
        let short = Limits { max_dim: 4096, max_length: 2 };
        assert!(matches!(free_resolution(&k, 2, &short), Err(Error::ResourceCap { .. })));
    }

    #[test]
    fn ext_zero_matches_hom_over_prime_field() {
        let p = PrimeField::new(5).unwrap();
        let d = Arc::new(Algebra::truncated_polynomial(&p, 3));
        let r = regular_module(&d);
        let (x, _) = r.submodule(&r.generated_subspace(&[vec![0, 1, 0]])).unwrap();
        let l = Limits::default();
        for w in [&r, &x] {
            assert_eq!(ext(&x, w, 0, &l).unwrap().dim, hom_space(&x, w).unwrap().dim());
        }
        // k[x]/(x^3) is self-injective
        assert_eq!(ext(&x, &r, 1, &l).unwrap().dim, 0);
        assert_eq!(ext(&x, &r, 2, &l).unwrap().dim, 0);
    }
}
