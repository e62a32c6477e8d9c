use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::Module;
use crate::algebra::{regular_module, Algebra};
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix};

/// An `A`-`B`-bimodule.
///
/// The right action is stored as matrices `R(b_j)` with `m·b_j = R(b_j) m`,
/// which makes `M` a left module over the opposite algebra of `B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bimodule<F: Field> {
    left: Arc<Algebra<F>>,
    right: Arc<Algebra<F>>,
    dim: usize,
    left_action: Vec<Matrix<F>>,
    right_action: Vec<Matrix<F>>,
}

impl<F: Field> Bimodule<F> {
    pub fn new(
        left: Arc<Algebra<F>>,
        right: Arc<Algebra<F>>,
        left_action: Vec<Matrix<F>>,
        right_action: Vec<Matrix<F>>,
    ) -> Result<Self> {
        let m = Self::new_unchecked(left, right, left_action, right_action)?;
        m.validate()?;
        Ok(m)
    }

    pub fn new_unchecked(
        left: Arc<Algebra<F>>,
        right: Arc<Algebra<F>>,
        left_action: Vec<Matrix<F>>,
        right_action: Vec<Matrix<F>>,
    ) -> Result<Self> {
        if left.field() != right.field() {
            return Err(Error::FieldMismatch);
        }
        if left_action.len() != left.dim() || right_action.len() != right.dim() {
            return Err(Error::Validation("one action matrix per basis element".into()));
        }
        let dim = left_action.first().map_or(0, |m| m.rows());
        Ok(Bimodule { left, right, dim, left_action, right_action })
    }

    /// `A` as an `A`-`A`-bimodule.
    pub fn regular(a: &Arc<Algebra<F>>) -> Self {
        let left = (0..a.dim()).map(|i| a.left_mult_matrix(&a.basis_element(i))).collect();
        let right = (0..a.dim()).map(|i| a.right_mult_matrix(&a.basis_element(i))).collect();
        Bimodule { left: a.clone(), right: a.clone(), dim: a.dim(), left_action: left, right_action: right }
    }

    pub fn zero(a: &Arc<Algebra<F>>, b: &Arc<Algebra<F>>) -> Self {
        let f = a.field();
        Bimodule {
            left: a.clone(),
            right: b.clone(),
            dim: 0,
            left_action: (0..a.dim()).map(|_| Matrix::zeros(f, 0, 0)).collect(),
            right_action: (0..b.dim()).map(|_| Matrix::zeros(f, 0, 0)).collect(),
        }
    }

    pub fn field(&self) -> &F {
        self.left.field()
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn left_algebra(&self) -> &Arc<Algebra<F>> {
        &self.left
    }
    pub fn right_algebra(&self) -> &Arc<Algebra<F>> {
        &self.right
    }
    pub fn left_action(&self, i: usize) -> &Matrix<F> {
        &self.left_action[i]
    }
    pub fn right_action(&self, j: usize) -> &Matrix<F> {
        &self.right_action[j]
    }
    pub fn left_actions(&self) -> &[Matrix<F>] {
        &self.left_action
    }
    pub fn right_actions(&self) -> &[Matrix<F>] {
        &self.right_action
    }

    /// `_A M`.
    pub fn left_module(&self) -> Module<F> {
        Module::new_unchecked(self.left.clone(), self.left_action.clone())
    }

    /// `M_B` as a left module over the opposite algebra of `B`.
    pub fn right_module(&self) -> Module<F> {
        Module::new_unchecked(Arc::new(self.right.opposite()), self.right_action.clone())
    }

    pub fn validate(&self) -> Result<()> {
        self.left_module().validate()?;
        self.right_module().validate()?;
        for (i, l) in self.left_action.iter().enumerate() {
            for (j, r) in self.right_action.iter().enumerate() {
                if l.mul(r) != r.mul(l) {
                    return Err(Error::Validation(format!(
                        "left action of a_{i} does not commute with right action of b_{j}"
                    )));
                }
            }
        }
        Ok(())
    }
}

impl<F: Field> Bimodule<F> {
    /// The regular left module of the left algebra, for convenience in tests
    /// that compare `M` with `A`.
    pub fn left_regular(&self) -> Module<F> {
        regular_module(&self.left)
    }
}
