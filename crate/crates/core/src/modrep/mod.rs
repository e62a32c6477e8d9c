//! Modules as matrix representations, module maps, and the standard
//! constructions on them.

mod bimodule;
mod free;
mod hom;
mod iso;
mod random;
mod resolution;
mod tensor;

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

pub use bimodule::Bimodule;
pub use free::{
    free_cover, free_cover_with, free_module, greedy_generators, is_projective, map_from_free, split_epi,
    split_mono, FreeCover, Projectivity,
};
pub use hom::{hom_space, HomSpace};
pub use iso::{find_isomorphism, IsoVerdict, DEFAULT_ISO_BUDGET};
pub use random::{random_module, random_quotient_module, seeded_rng};
pub use resolution::{ext, ext_range, free_resolution, ExtGroup, FreeResolution, Limits, ResolutionStage};
pub use tensor::{hom_module, hom_module_map, tensor_map, tensor_over, HomModule, TensorProduct};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix, Quotient, Subspace};

/// A left module given by the matrices `L(e_i)` of the basis elements of
/// its algebra.
#[derive(Debug, Clone)]
pub struct Module<F: Field> {
    algebra: Arc<Algebra<F>>,
    dim: usize,
    action: Arc<[Matrix<F>]>,
}

impl<F: Field> PartialEq for Module<F> {
    fn eq(&self, other: &Self) -> bool {
        self.same_algebra(other) && self.dim == other.dim && self.action == other.action
    }
}
impl<F: Field> Eq for Module<F> {}

impl<F: Field> Module<F> {
    /// Builds a module and checks that the action respects the structure
    /// constants and the unit.
    pub fn new(algebra: Arc<Algebra<F>>, action: Vec<Matrix<F>>) -> Result<Self> {
        let m = Self::new_unchecked(algebra, action);
        m.validate()?;
        Ok(m)
    }

    pub fn new_unchecked(algebra: Arc<Algebra<F>>, action: Vec<Matrix<F>>) -> Self {
        assert_eq!(action.len(), algebra.dim(), "one action matrix per basis element");
        let dim = action.first().map_or(0, |m| m.rows());
        Module { algebra, dim, action: action.into() }
    }

    pub fn zero(algebra: &Arc<Algebra<F>>) -> Self {
        let action = (0..algebra.dim()).map(|_| Matrix::zeros(algebra.field(), 0, 0)).collect();
        Module::new_unchecked(algebra.clone(), action)
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.algebra
    }
    pub fn field(&self) -> &F {
        self.algebra.field()
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn action(&self, i: usize) -> &Matrix<F> {
        &self.action[i]
    }
    pub fn actions(&self) -> &[Matrix<F>] {
        &self.action
    }

    pub fn same_algebra(&self, other: &Self) -> bool {
        crate::algebra::same_algebra(&self.algebra, &other.algebra)
    }

    /// `L(a)` for an algebra element in coordinates.
    pub fn act(&self, a: &[F::Elem]) -> Matrix<F> {
        let f = self.field();
        let mut out = Matrix::zeros(f, self.dim, self.dim);
        for (ai, li) in a.iter().zip(self.action.iter()) {
            if !f.is_zero(ai) {
                out = out.add(&li.scale(ai));
            }
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        let a = &self.algebra;
        let n = a.dim();
        for l in self.action.iter() {
            if l.shape() != (self.dim, self.dim) {
                return Err(Error::Shape { expected: (self.dim, self.dim), found: l.shape() });
            }
            if l.field() != a.field() {
                return Err(Error::FieldMismatch);
            }
        }
        for i in 0..n {
            for j in 0..n {
                let lhs = self.action[i].mul(&self.action[j]);
                let rhs = self.act(&a.basis_product(i, j));
                if lhs != rhs {
                    return Err(Error::Validation(format!(
                        "action does not respect e_{i} e_{j}"
                    )));
                }
            }
        }
        if !self.act(a.unit()).is_identity() && self.dim > 0 {
            return Err(Error::Validation("unit does not act as the identity".into()));
        }
        Ok(())
    }

    /// The submodule generated by `vectors`: the span of all `e_i · v`.
    pub fn generated_subspace(&self, vectors: &[Vec<F::Elem>]) -> Subspace<F> {
        let mut all = Vec::with_capacity(vectors.len() * self.action.len());
        for v in vectors {
            for l in self.action.iter() {
                all.push(l.mul_vec(v));
            }
        }
        Subspace::span(self.field(), self.dim, all)
    }

    pub fn is_submodule(&self, sub: &Subspace<F>) -> bool {
        sub.basis_vectors()
            .iter()
            .all(|v| self.action.iter().all(|l| sub.contains(&l.mul_vec(v))))
    }

    /// The submodule carried by an invariant subspace, with its inclusion.
    pub fn submodule(&self, sub: &Subspace<F>) -> Result<(Module<F>, ModuleMap<F>)> {
        let incl = sub.inclusion();
        let mut action = Vec::with_capacity(self.action.len());
        for l in self.action.iter() {
            let cols: Vec<Vec<F::Elem>> = sub
                .basis_vectors()
                .iter()
                .map(|v| {
                    sub.coords(&l.mul_vec(v))
                        .ok_or_else(|| Error::Validation("subspace is not a submodule".into()))
                })
                .collect::<Result<_>>()?;
            action.push(Matrix::from_columns(self.field(), sub.dim(), &cols));
        }
        let m = Module::new_unchecked(self.algebra.clone(), action);
        let inclusion = ModuleMap::new_unchecked(m.clone(), self.clone(), incl);
        Ok((m, inclusion))
    }

    /// The quotient by an invariant subspace, with the canonical projection
    /// and the chosen complement.
    pub fn quotient(&self, sub: &Subspace<F>) -> Result<(Module<F>, ModuleMap<F>, Quotient<F>)> {
        if !self.is_submodule(sub) {
            return Err(Error::Validation("subspace is not a submodule".into()));
        }
        let q = sub.quotient();
        let action = self.action.iter().map(|l| q.projection.mul(l).mul(&q.lift)).collect();
        let m = Module::new_unchecked(self.algebra.clone(), action);
        let proj = ModuleMap::new_unchecked(self.clone(), m.clone(), q.projection.clone());
        Ok((m, proj, q))
    }
}

/// A module homomorphism, stored as a `target.dim × source.dim` matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleMap<F: Field> {
    source: Module<F>,
    target: Module<F>,
    matrix: Matrix<F>,
}

impl<F: Field> ModuleMap<F> {
    /// Builds a map and checks that it intertwines the actions.
    pub fn new(source: Module<F>, target: Module<F>, matrix: Matrix<F>) -> Result<Self> {
        if !source.same_algebra(&target) {
            return Err(Error::AlgebraMismatch);
        }
        if matrix.shape() != (target.dim(), source.dim()) {
            return Err(Error::Shape { expected: (target.dim(), source.dim()), found: matrix.shape() });
        }
        let map = ModuleMap { source, target, matrix };
        if !map.intertwines() {
            return Err(Error::Validation("matrix does not intertwine the actions".into()));
        }
        Ok(map)
    }

    pub fn new_unchecked(source: Module<F>, target: Module<F>, matrix: Matrix<F>) -> Self {
        debug_assert_eq!(matrix.shape(), (target.dim(), source.dim()));
        ModuleMap { source, target, matrix }
    }

    pub fn identity(m: &Module<F>) -> Self {
        ModuleMap::new_unchecked(m.clone(), m.clone(), Matrix::identity(m.field(), m.dim()))
    }

    pub fn zero(source: &Module<F>, target: &Module<F>) -> Self {
        let z = Matrix::zeros(source.field(), target.dim(), source.dim());
        ModuleMap::new_unchecked(source.clone(), target.clone(), z)
    }

    pub fn source(&self) -> &Module<F> {
        &self.source
    }
    pub fn target(&self) -> &Module<F> {
        &self.target
    }
    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }
    pub fn field(&self) -> &F {
        self.source.field()
    }

    pub fn intertwines(&self) -> bool {
        self.source
            .actions()
            .iter()
            .zip(self.target.actions())
            .all(|(ls, lt)| lt.mul(&self.matrix) == self.matrix.mul(ls))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ModuleMap<F>) -> Result<Self> {
        if other.target.dim() != self.source.dim() || !other.target.same_algebra(&self.source) {
            return Err(Error::DomainMismatch("composable module maps"));
        }
        Ok(ModuleMap::new_unchecked(
            other.source.clone(),
            self.target.clone(),
            self.matrix.mul(&other.matrix),
        ))
    }

    pub fn add(&self, other: &ModuleMap<F>) -> Self {
        ModuleMap::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.add(&other.matrix))
    }
    pub fn sub(&self, other: &ModuleMap<F>) -> Self {
        ModuleMap::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.sub(&other.matrix))
    }
    pub fn scale(&self, s: &F::Elem) -> Self {
        ModuleMap::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.scale(s))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim()
    }
    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim()
    }
    pub fn is_isomorphism(&self) -> bool {
        self.source.dim() == self.target.dim() && self.is_injective()
    }

    pub fn inverse(&self) -> Option<Self> {
        let inv = self.matrix.inverse()?;
        Some(ModuleMap::new_unchecked(self.target.clone(), self.source.clone(), inv))
    }

    /// Matrix entries in row-major order.
    pub fn flatten(&self) -> Vec<F::Elem> {
        self.matrix.data().to_vec()
    }
}

/// `kernel_module(f)`: the kernel as a module with its inclusion.
pub fn kernel_module<F: Field>(f: &ModuleMap<F>) -> (Module<F>, ModuleMap<F>) {
    f.source().submodule(&f.matrix().kernel()).expect("kernels are submodules")
}

/// `image_module(f)`: the image as a submodule of the target.
pub fn image_module<F: Field>(f: &ModuleMap<F>) -> (Module<F>, ModuleMap<F>) {
    f.target().submodule(&f.matrix().image()).expect("images are submodules")
}

/// Cokernel of a module map.
#[derive(Debug, Clone)]
pub struct Cokernel<F: Field> {
    pub module: Module<F>,
    pub projection: ModuleMap<F>,
    /// Linear section of the projection (not a module map in general).
    pub lift: Matrix<F>,
}

/// `cokernel_module(f)`: the cokernel with the canonical projection.
pub fn cokernel_module<F: Field>(f: &ModuleMap<F>) -> Cokernel<F> {
    let (module, projection, q) = f.target().quotient(&f.matrix().image()).expect("images are submodules");
    Cokernel { module, projection, lift: q.lift }
}

/// A direct sum with its structure maps.
#[derive(Debug, Clone)]
pub struct DirectSum<F: Field> {
    pub module: Module<F>,
    pub injections: Vec<ModuleMap<F>>,
    pub projections: Vec<ModuleMap<F>>,
}

pub fn direct_sum<F: Field>(algebra: &Arc<Algebra<F>>, xs: &[Module<F>]) -> Result<DirectSum<F>> {
    if xs.iter().any(|x| !crate::algebra::same_algebra(x.algebra(), algebra)) {
        return Err(Error::AlgebraMismatch);
    }
    let f = algebra.field();
    let action = (0..algebra.dim())
        .map(|i| {
            let blocks: Vec<&Matrix<F>> = xs.iter().map(|x| x.action(i)).collect();
            Matrix::block_diag(f, &blocks)
        })
        .collect();
    let module = Module::new_unchecked(algebra.clone(), action);
    let total = module.dim();
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    let mut offset = 0;
    for x in xs {
        let mut inj = Matrix::zeros(f, total, x.dim());
        inj.set_block(offset, 0, &Matrix::identity(f, x.dim()));
        projections.push(ModuleMap::new_unchecked(module.clone(), x.clone(), inj.transpose()));
        injections.push(ModuleMap::new_unchecked(x.clone(), module.clone(), inj));
        offset += x.dim();
    }
    Ok(DirectSum { module, injections, projections })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_triangular, regular_module};
    use crate::exactlin::Rationals;
    use alloc::vec;

    fn dual_numbers() -> Arc<Algebra<Rationals>> {
        Arc::new(Algebra::truncated_polynomial(&Rationals, 2))
    }

    /// The simple module `k` over `k[x]/(x^2)`.
    fn simple(d: &Arc<Algebra<Rationals>>) -> Module<Rationals> {
        let q = Rationals;
        Module::new(d.clone(), vec![Matrix::identity(&q, 1), Matrix::zeros(&q, 1, 1)]).unwrap()
    }

    #[test]
    fn identity_and_zero_maps() {
        let d = dual_numbers();
        let r = regular_module(&d);
        let id = ModuleMap::identity(&r);
        assert_eq!(kernel_module(&id).0.dim(), 0);
        assert_eq!(cokernel_module(&id).module.dim(), 0);
        let s = simple(&d);
        let z = ModuleMap::zero(&s, &r);
        assert_eq!(kernel_module(&z).0.dim(), 1);
        assert_eq!(cokernel_module(&z).module.dim(), 2);
    }

    #[test]
    fn socle_cokernel_is_simple() {
        let q = Rationals;
        let d = dual_numbers();
        let r = regular_module(&d);
        let s = simple(&d);
        let socle = ModuleMap::new(s.clone(), r.clone(), Matrix::from_i64(&q, 2, 1, &[0, 1])).unwrap();
        let c = cokernel_module(&socle);
        assert_eq!(c.module.dim(), 1);
        assert!(c.module.validate().is_ok());
        assert_eq!(c.module, s);
        // exactness: image = kernel of the cokernel projection
        assert_eq!(socle.matrix().image(), c.projection.matrix().kernel());
        assert!(ModuleMap::new(r.clone(), s.clone(), Matrix::from_i64(&q, 1, 2, &[0, 1])).is_err());
    }

    #[test]
    fn direct_sums() {
        let q = Rationals;
        let k = Arc::new(Algebra::ground(&q));
        let kk = direct_sum(&k, &[regular_module(&k), regular_module(&k)]).unwrap();
        assert_eq!(kk.module.dim(), 2);
        let d = dual_numbers();
        let r = regular_module(&d);
        let with_zero = direct_sum(&d, &[r.clone(), Module::zero(&d)]).unwrap();
        assert_eq!(with_zero.module, r);
        for (i, p) in with_zero.injections.iter().zip(&with_zero.projections) {
            assert!(p.compose(i).unwrap().matrix().is_identity());
        }

        // Peirce decomposition of T2(k): Λe_A has dim 1, Λe_B has dim 2
        let t2 = build_triangular(&k, &k, &Bimodule::regular(&k)).unwrap();
        let reg = regular_module(&t2.lambda);
        let pa = reg.generated_subspace(&[t2.idempotent_a()]);
        let pb = reg.generated_subspace(&[t2.idempotent_b()]);
        assert_eq!((pa.dim(), pb.dim()), (1, 2));
        let sum = direct_sum(
            &t2.lambda,
            &[reg.submodule(&pa).unwrap().0, reg.submodule(&pb).unwrap().0],
        )
        .unwrap();
        assert_eq!(sum.module.dim(), reg.dim());
    }
}
