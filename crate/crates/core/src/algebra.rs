//! Finite-dimensional associative unital algebras given by structure
//! constants, and the triangular matrix algebra construction.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix};
use crate::modrep::{Bimodule, Module};
use crate::report::{CheckRecord, CheckReport, Status, WitnessValue};

/// An algebra with basis `e_0, …, e_{n-1}` and products
/// `e_i e_j = Σ_k c[i][j][k] e_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra<F: Field> {
    field: F,
    dim: usize,
    /// `c[i][j][k]` at index `(i * n + j) * n + k`.
    structure: Vec<F::Elem>,
    unit: Vec<F::Elem>,
}

/// First violated algebra axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraViolation {
    Associativity { i: usize, j: usize, k: usize },
    LeftUnit { j: usize },
    RightUnit { j: usize },
}

impl<F: Field> Algebra<F> {
    /// Builds and validates an algebra.
    pub fn new(field: &F, dim: usize, structure: Vec<F::Elem>, unit: Vec<F::Elem>) -> Result<Self> {
        let a = Self::new_unchecked(field, dim, structure, unit)?;
        if let Some(v) = a.first_violation() {
            return Err(Error::Validation(format!("algebra axiom violated: {v:?}")));
        }
        Ok(a)
    }

    /// Builds an algebra checking only the shapes of the data.
    pub fn new_unchecked(
        field: &F,
        dim: usize,
        structure: Vec<F::Elem>,
        unit: Vec<F::Elem>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Validation("algebra dimension must be at least 1".into()));
        }
        if structure.len() != dim * dim * dim || unit.len() != dim {
            return Err(Error::Validation("structure constant table has the wrong size".into()));
        }
        Ok(Algebra { field: field.clone(), dim, structure, unit })
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground(field: &F) -> Self {
        Algebra { field: field.clone(), dim: 1, structure: vec![field.one()], unit: vec![field.one()] }
    }

    /// `k[x]/(x^n)` with basis `1, x, …, x^{n-1}`.
    pub fn truncated_polynomial(field: &F, n: usize) -> Self {
        assert!(n >= 1);
        let mut s = vec![field.zero(); n * n * n];
        for i in 0..n {
            for j in 0..n {
                if i + j < n {
                    s[(i * n + j) * n + i + j] = field.one();
                }
            }
        }
        let mut unit = vec![field.zero(); n];
        unit[0] = field.one();
        Algebra { field: field.clone(), dim: n, structure: s, unit }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn unit(&self) -> &[F::Elem] {
        &self.unit
    }
    pub fn structure(&self) -> &[F::Elem] {
        &self.structure
    }

    #[inline]
    pub fn constant(&self, i: usize, j: usize, k: usize) -> &F::Elem {
        &self.structure[(i * self.dim + j) * self.dim + k]
    }

    /// Coordinate vector of the basis element `e_i`.
    pub fn basis_element(&self, i: usize) -> Vec<F::Elem> {
        let mut v = vec![self.field.zero(); self.dim];
        v[i] = self.field.one();
        v
    }

    /// Product `e_i e_j` as a coordinate vector.
    pub fn basis_product(&self, i: usize, j: usize) -> Vec<F::Elem> {
        let n = self.dim;
        self.structure[(i * n + j) * n..(i * n + j + 1) * n].to_vec()
    }

    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let n = self.dim;
        let mut out = vec![f.zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if f.is_zero(yj) {
                    continue;
                }
                let c = f.mul(xi, yj);
                for (k, o) in out.iter_mut().enumerate() {
                    f.mul_add_assign(o, &c, self.constant(i, j, k));
                }
            }
        }
        out
    }

    /// Matrix of `v ↦ x·v` on the basis.
    pub fn left_mult_matrix(&self, x: &[F::Elem]) -> Matrix<F> {
        let cols: Vec<_> = (0..self.dim).map(|j| self.mul(x, &self.basis_element(j))).collect();
        Matrix::from_columns(&self.field, self.dim, &cols)
    }

    /// Matrix of `v ↦ v·x` on the basis.
    pub fn right_mult_matrix(&self, x: &[F::Elem]) -> Matrix<F> {
        let cols: Vec<_> = (0..self.dim).map(|j| self.mul(&self.basis_element(j), x)).collect();
        Matrix::from_columns(&self.field, self.dim, &cols)
    }

    pub fn first_violation(&self) -> Option<AlgebraViolation> {
        let n = self.dim;
        for i in 0..n {
            let ei = self.basis_element(i);
            for j in 0..n {
                let eij = self.basis_product(i, j);
                for k in 0..n {
                    let ek = self.basis_element(k);
                    let lhs = self.mul(&eij, &ek);
                    let rhs = self.mul(&ei, &self.basis_product(j, k));
                    if lhs != rhs {
                        return Some(AlgebraViolation::Associativity { i, j, k });
                    }
                }
            }
        }
        for j in 0..n {
            let ej = self.basis_element(j);
            if self.mul(&self.unit, &ej) != ej {
                return Some(AlgebraViolation::LeftUnit { j });
            }
            if self.mul(&ej, &self.unit) != ej {
                return Some(AlgebraViolation::RightUnit { j });
            }
        }
        None
    }

    /// The algebra with reversed multiplication.
    pub fn opposite(&self) -> Self {
        let n = self.dim;
        let mut s = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                s.extend_from_slice(&self.structure[(j * n + i) * n..(j * n + i + 1) * n]);
            }
        }
        Algebra { field: self.field.clone(), dim: n, structure: s, unit: self.unit.clone() }
    }

    /// Direct product `self × other` with block basis.
    pub fn product(&self, other: &Self) -> Self {
        let (p, q) = (self.dim, other.dim);
        let n = p + q;
        let f = &self.field;
        let mut s = vec![f.zero(); n * n * n];
        for i in 0..p {
            for j in 0..p {
                for k in 0..p {
                    s[(i * n + j) * n + k] = self.constant(i, j, k).clone();
                }
            }
        }
        for i in 0..q {
            for j in 0..q {
                for k in 0..q {
                    s[((p + i) * n + p + j) * n + p + k] = other.constant(i, j, k).clone();
                }
            }
        }
        let mut unit = self.unit.clone();
        unit.extend_from_slice(&other.unit);
        Algebra { field: f.clone(), dim: n, structure: s, unit }
    }
}

/// Validates associativity and the unit laws.
pub fn validate_algebra<F: Field>(a: &Algebra<F>) -> CheckReport {
    let mut report = CheckReport::new(None);
    let record = match a.first_violation() {
        None => CheckRecord::new("algebra.axioms", "associative with two-sided unit", Status::Pass),
        Some(v) => {
            let (kind, idx) = match v {
                AlgebraViolation::Associativity { i, j, k } => ("associativity", vec![i, j, k]),
                AlgebraViolation::LeftUnit { j } => ("left-unit", vec![j]),
                AlgebraViolation::RightUnit { j } => ("right-unit", vec![j]),
            };
            CheckRecord::new("algebra.axioms", "associative with two-sided unit", Status::Fail)
                .with("violated", WitnessValue::Text(kind.into()))
                .with("basis-indices", WitnessValue::dims(&idx))
        }
    };
    report.push(record);
    report
}

/// Pointer equality with a structural fallback.
pub fn same_algebra<F: Field>(a: &Arc<Algebra<F>>, b: &Arc<Algebra<F>>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub fn opposite<F: Field>(a: &Algebra<F>) -> Algebra<F> {
    a.opposite()
}

/// The left regular module `A_A`, acting by left multiplication.
pub fn regular_module<F: Field>(a: &Arc<Algebra<F>>) -> Module<F> {
    let action = (0..a.dim()).map(|i| a.left_mult_matrix(&a.basis_element(i))).collect();
    Module::new_unchecked(a.clone(), action)
}

/// `Λ = [[A, M], [0, B]]` with its block decomposition.
///
/// The basis of `Λ` is ordered as the basis of `A`, then `M`, then `B`.
/// Modules over `lambda` can be converted to triples only through this
/// context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangular<F: Field> {
    pub a: Arc<Algebra<F>>,
    pub b: Arc<Algebra<F>>,
    pub m: Bimodule<F>,
    pub lambda: Arc<Algebra<F>>,
}

impl<F: Field> Triangular<F> {
    pub fn field(&self) -> &F {
        self.lambda.field()
    }
    pub fn a_block(&self) -> Range<usize> {
        0..self.a.dim()
    }
    pub fn m_block(&self) -> Range<usize> {
        self.a.dim()..self.a.dim() + self.m.dim()
    }
    pub fn b_block(&self) -> Range<usize> {
        self.a.dim() + self.m.dim()..self.lambda.dim()
    }

    /// Embeds an element of `A` into `Λ`.
    pub fn embed_a(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        let mut v = vec![self.field().zero(); self.lambda.dim()];
        v[self.a_block()].clone_from_slice(x);
        v
    }
    pub fn embed_m(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        let mut v = vec![self.field().zero(); self.lambda.dim()];
        v[self.m_block()].clone_from_slice(x);
        v
    }
    pub fn embed_b(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        let mut v = vec![self.field().zero(); self.lambda.dim()];
        v[self.b_block()].clone_from_slice(x);
        v
    }

    /// The idempotent `e_A = (1_A, 0, 0)`.
    pub fn idempotent_a(&self) -> Vec<F::Elem> {
        self.embed_a(self.a.unit())
    }
    /// The idempotent `e_B = (0, 0, 1_B)`.
    pub fn idempotent_b(&self) -> Vec<F::Elem> {
        self.embed_b(self.b.unit())
    }
}

/// Builds the triangular matrix algebra of an `A`-`B`-bimodule.
pub fn build_triangular<F: Field>(
    a: &Arc<Algebra<F>>,
    b: &Arc<Algebra<F>>,
    m: &Bimodule<F>,
) -> Result<Triangular<F>> {
    if a.field() != b.field() || a.field() != m.field() {
        return Err(Error::FieldMismatch);
    }
    if **m.left_algebra() != **a || **m.right_algebra() != **b {
        return Err(Error::AlgebraMismatch);
    }
    let f = a.field();
    let (p, q, r) = (a.dim(), m.dim(), b.dim());
    let n = p + q + r;
    let mut s = vec![f.zero(); n * n * n];
    let idx = |i: usize, j: usize, k: usize| (i * n + j) * n + k;
    for i in 0..p {
        for j in 0..p {
            for k in 0..p {
                s[idx(i, j, k)] = a.constant(i, j, k).clone();
            }
        }
        // e_i · m_j = Σ_t L(e_i)[t][j] m_t
        let l = m.left_action(i);
        for j in 0..q {
            for t in 0..q {
                s[idx(i, p + j, p + t)] = l.get(t, j).clone();
            }
        }
    }
    for j in 0..r {
        // m_i · e_j = Σ_t R(e_j)[t][i] m_t
        let rm = m.right_action(j);
        for i in 0..q {
            for t in 0..q {
                s[idx(p + i, p + q + j, p + t)] = rm.get(t, i).clone();
            }
        }
    }
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                s[idx(p + q + i, p + q + j, p + q + k)] = b.constant(i, j, k).clone();
            }
        }
    }
    let mut unit = a.unit().to_vec();
    unit.extend(core::iter::repeat_n(f.zero(), q));
    unit.extend_from_slice(b.unit());
    let lambda = Algebra::new_unchecked(f, n, s, unit)?;
    Ok(Triangular { a: a.clone(), b: b.clone(), m: m.clone(), lambda: Arc::new(lambda) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{PrimeField, Rationals};

    #[test]
    fn ground_and_dual_numbers_validate() {
        let q = Rationals;
        assert!(validate_algebra(&Algebra::ground(&q)).all_pass());
        let d = Algebra::truncated_polynomial(&q, 2);
        assert!(validate_algebra(&d).all_pass());
        assert_eq!(d.opposite(), d);
    }

    #[test]
    fn broken_unit_is_reported() {
        let q = Rationals;
        // basis {e0, e1}: e1 e1 = e0, e0 acts as identity, but the declared unit is e1
        let mut s = vec![q.zero(); 8];
        let set = |s: &mut Vec<_>, i: usize, j: usize, k: usize| s[(i * 2 + j) * 2 + k] = q.one();
        set(&mut s, 0, 0, 0);
        set(&mut s, 0, 1, 1);
        set(&mut s, 1, 0, 1);
        set(&mut s, 1, 1, 0);
        let good = Algebra::new(&q, 2, s.clone(), vec![q.one(), q.zero()]);
        assert!(good.is_ok());
        let bad = Algebra::new_unchecked(&q, 2, s, vec![q.zero(), q.one()]).unwrap();
        let rep = validate_algebra(&bad);
        assert!(rep.has_failures());
        assert_eq!(
            rep.records[0].witnesses[0].1,
            WitnessValue::Text("left-unit".into())
        );
    }

    #[test]
    fn upper_triangular_two_by_two_opposite() {
        let f = PrimeField::new(7).unwrap();
        let k = Arc::new(Algebra::ground(&f));
        let m = Bimodule::regular(&k);
        let t2 = build_triangular(&k, &k, &m).unwrap();
        let op = t2.lambda.opposite();
        assert_ne!(op, *t2.lambda);
        assert_eq!(op.opposite(), *t2.lambda);
        // (e_A e_M)^op = e_M e_A = 0 while e_A e_M = e_M
        assert_eq!(t2.lambda.basis_product(0, 1), vec![0, 1, 0]);
        assert_eq!(op.basis_product(0, 1), vec![0, 0, 0]);
    }

    #[test]
    fn triangular_algebras() {
        let q = Rationals;
        let k = Arc::new(Algebra::ground(&q));
        let t2 = build_triangular(&k, &k, &Bimodule::regular(&k)).unwrap();
        assert_eq!(t2.lambda.dim(), 3);
        assert!(validate_algebra(&t2.lambda).all_pass());

        let d = Arc::new(Algebra::truncated_polynomial(&q, 2));
        let t2d = build_triangular(&d, &d, &Bimodule::regular(&d)).unwrap();
        assert_eq!(t2d.lambda.dim(), 6);
        assert!(validate_algebra(&t2d.lambda).all_pass());

        let split = build_triangular(&k, &d, &Bimodule::zero(&k, &d)).unwrap();
        let l = &split.lambda;
        assert!(validate_algebra(l).all_pass());
        let (ea, eb) = (split.idempotent_a(), split.idempotent_b());
        assert_eq!(l.mul(&ea, &ea), ea);
        assert_eq!(l.mul(&eb, &eb), eb);
        assert!(l.mul(&ea, &eb).iter().all(|x| q.is_zero(x)));
        let sum: Vec<_> = ea.iter().zip(&eb).map(|(x, y)| q.add(x, y)).collect();
        assert_eq!(sum, l.unit());
    }

    #[test]
    fn regular_modules() {
        let q = Rationals;
        let k = Arc::new(Algebra::ground(&q));
        assert_eq!(regular_module(&k).dim(), 1);
        let d = Arc::new(Algebra::truncated_polynomial(&q, 2));
        let r = regular_module(&d);
        assert!(r.validate().is_ok());
        let lx = r.action(1);
        assert!(!lx.is_zero());
        assert!(lx.mul(lx).is_zero());
        let t2 = build_triangular(&k, &k, &Bimodule::regular(&k)).unwrap();
        let reg = regular_module(&t2.lambda);
        assert_eq!(reg.dim(), 3);
        assert!(reg.validate().is_ok());
    }
}
