use alloc::vec::Vec;

use super::{hom_space, Bimodule, HomSpace, Module, ModuleMap};
use crate::algebra::same_algebra;
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix, Subspace};

/// `M ⊗_B Y` as a left `A`-module.
///
/// Raw tensors live in `M ⊗_k Y` with `m_i ⊗ y_j` at index `i·dim Y + j`.
#[derive(Debug, Clone)]
pub struct TensorProduct<F: Field> {
    pub module: Module<F>,
    /// `M ⊗_k Y → M ⊗_B Y`.
    pub projection: Matrix<F>,
    /// Linear section of the projection.
    pub lift: Matrix<F>,
    /// The balancing relations `mb ⊗ y − m ⊗ by`.
    pub relations: Subspace<F>,
    y_dim: usize,
}

impl<F: Field> TensorProduct<F> {
    /// Class of `m ⊗ y`.
    pub fn elementary(&self, m: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.module.field();
        let mut raw = Vec::with_capacity(m.len() * y.len());
        for a in m {
            for b in y {
                raw.push(f.mul(a, b));
            }
        }
        self.projection.mul_vec(&raw)
    }

    /// Dimension of the right-hand factor `Y`.
    pub fn y_dim(&self) -> usize {
        self.y_dim
    }

    /// Class of the basis tensor `m_i ⊗ y_j`.
    pub fn basis_tensor(&self, i: usize, j: usize) -> Vec<F::Elem> {
        self.projection.col(i * self.y_dim + j)
    }
}

/// `tensor_over(m, y)`: `M ⊗_B Y` with its projection from `M ⊗_k Y`.
pub fn tensor_over<F: Field>(m: &Bimodule<F>, y: &Module<F>) -> Result<TensorProduct<F>> {
    if !same_algebra(y.algebra(), m.right_algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let f = m.field();
    let (dm, dy) = (m.dim(), y.dim());
    let raw = dm * dy;
    let id_m = Matrix::identity(f, dm);
    let id_y = Matrix::identity(f, dy);
    let mut gens: Vec<Vec<F::Elem>> = Vec::new();
    for (r, l) in m.right_actions().iter().zip(y.actions()) {
        let rel = r.kron(&id_y).sub(&id_m.kron(l));
        for c in 0..raw {
            let v = rel.col(c);
            if v.iter().any(|e| !f.is_zero(e)) {
                gens.push(v);
            }
        }
    }
    let relations = Subspace::span(f, raw, gens);
    let q = relations.quotient();
    let action = m
        .left_actions()
        .iter()
        .map(|l| q.projection.mul(&l.kron(&id_y)).mul(&q.lift))
        .collect();
    let module = Module::new_unchecked(m.left_algebra().clone(), action);
    Ok(TensorProduct { module, projection: q.projection, lift: q.lift, relations, y_dim: dy })
}

/// `Id_M ⊗ g` between two tensor products built by [`tensor_over`].
pub fn tensor_map<F: Field>(
    m: &Bimodule<F>,
    source: &TensorProduct<F>,
    target: &TensorProduct<F>,
    g: &ModuleMap<F>,
) -> ModuleMap<F> {
    let id_m = Matrix::identity(m.field(), m.dim());
    let raw = id_m.kron(g.matrix());
    let mat = target.projection.mul(&raw).mul(&source.lift);
    ModuleMap::new_unchecked(source.module.clone(), target.module.clone(), mat)
}

/// `Hom_A(M, X)` as a left `B`-module via `(b·f)(m) = f(mb)`.
#[derive(Debug, Clone)]
pub struct HomModule<F: Field> {
    pub module: Module<F>,
    pub space: HomSpace<F>,
}

impl<F: Field> HomModule<F> {
    /// The map `M → X` with the given coordinates.
    pub fn map_of(&self, coords: &[F::Elem]) -> Matrix<F> {
        self.space.combine(coords).matrix().clone()
    }
}

pub fn hom_module<F: Field>(m: &Bimodule<F>, x: &Module<F>) -> Result<HomModule<F>> {
    if !same_algebra(x.algebra(), m.left_algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let f = m.field();
    let left = Module::new_unchecked(x.algebra().clone(), m.left_actions().to_vec());
    let space = hom_space(&left, x)?;
    let basis = space.basis();
    let action = m
        .right_actions()
        .iter()
        .map(|r| {
            let cols: Vec<Vec<F::Elem>> = basis
                .iter()
                .map(|b| space.coords(&b.matrix().mul(r)).expect("Hom_A(M, X) is a B-module"))
                .collect();
            Matrix::from_columns(f, space.dim(), &cols)
        })
        .collect();
    let module = Module::new_unchecked(m.right_algebra().clone(), action);
    Ok(HomModule { module, space })
}

/// `Hom_A(M, f)`: post-composition with an `A`-map `f: X → X'`.
pub fn hom_module_map<F: Field>(source: &HomModule<F>, target: &HomModule<F>, f: &ModuleMap<F>) -> ModuleMap<F> {
    let cols: Vec<Vec<F::Elem>> = source
        .space
        .basis()
        .iter()
        .map(|b| target.space.coords(&f.matrix().mul(b.matrix())).expect("composite is A-linear"))
        .collect();
    let mat = Matrix::from_columns(f.field(), target.module.dim(), &cols);
    ModuleMap::new_unchecked(source.module.clone(), target.module.clone(), mat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{regular_module, Algebra};
    use crate::exactlin::Rationals;
    use crate::modrep::find_isomorphism;
    use alloc::sync::Arc;
    use alloc::vec;

    fn simple(d: &Arc<Algebra<Rationals>>) -> Module<Rationals> {
        let q = Rationals;
        Module::new(d.clone(), vec![Matrix::identity(&q, 1), Matrix::zeros(&q, 1, 1)]).unwrap()
    }

    #[test]
    fn over_the_ground_field_there_are_no_relations() {
        let q = Rationals;
        let k = Arc::new(Algebra::ground(&q));
        let d = Arc::new(Algebra::truncated_polynomial(&q, 2));
        // M = k[x]/(x^2) as a (D, k)-bimodule
        let m = Bimodule::new(
            d.clone(),
            k.clone(),
            regular_module(&d).actions().to_vec(),
            vec![Matrix::identity(&q, 2)],
        )
        .unwrap();
        let y = crate::modrep::direct_sum(&k, &[regular_module(&k), regular_module(&k), regular_module(&k)])
            .unwrap()
            .module;
        let t = tensor_over(&m, &y).unwrap();
        assert_eq!(t.module.dim(), 6);
        assert!(t.module.validate().is_ok());
    }

    #[test]
    fn regular_bimodule_is_a_unit() {
        let q = Rationals;
        let d = Arc::new(Algebra::truncated_polynomial(&q, 2));
        let m = Bimodule::regular(&d);
        let r = regular_module(&d);
        let t = tensor_over(&m, &r).unwrap();
        assert_eq!(t.module.dim(), 2);
        let mut rng = crate::modrep::seeded_rng(1);
        assert!(find_isomorphism(&t.module, &r, &mut rng, 16).is_isomorphic());
        let s = simple(&d);
        let ts = tensor_over(&m, &s).unwrap();
        assert_eq!(ts.module.dim(), 1);
        // x ⊗ 1 = 1 ⊗ x·1 = 0
        assert!(ts.elementary(&[q.zero(), q.one()], &[q.one()]).iter().all(|e| q.is_zero(e)));
    }

    #[test]
    fn hom_from_regular_is_evaluation() {
        let q = Rationals;
        let d = Arc::new(Algebra::truncated_polynomial(&q, 2));
        let m = Bimodule::regular(&d);
        let s = simple(&d);
        let h = hom_module(&m, &s).unwrap();
        assert_eq!(h.module.dim(), 1);
        assert!(h.module.validate().is_ok());
        assert_eq!(h.module, s);
        assert_eq!(hom_module(&m, &Module::zero(&d)).unwrap().module.dim(), 0);
        let k = Arc::new(Algebra::ground(&q));
        let kk = Bimodule::regular(&k);
        assert_eq!(hom_module(&kk, &regular_module(&k)).unwrap().module.dim(), 1);
    }
}
