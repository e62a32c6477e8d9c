use alloc::vec::Vec;

use super::{Module, ModuleMap};
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix, Subspace};

/// `Hom(x, y)` as a subspace of `dim y × dim x` matrices, flattened row-major.
#[derive(Debug, Clone)]
pub struct HomSpace<F: Field> {
    source: Module<F>,
    target: Module<F>,
    space: Subspace<F>,
}

/// The intertwining condition `L_y(e_i) F = F L_x(e_i)` as a linear map on
/// row-major flattened `F`.
fn intertwining_equations<F: Field>(lx: &Matrix<F>, ly: &Matrix<F>) -> Matrix<F> {
    let f = lx.field();
    let (nx, ny) = (lx.rows(), ly.rows());
    let n = nx * ny;
    let mut e = Matrix::zeros(f, n, n);
    for r in 0..ny {
        for c in 0..nx {
            let row = r * nx + c;
            // (L_y F)_{rc} = Σ_s L_y[r][s] F[s][c]
            for s in 0..ny {
                let v = ly.get(r, s);
                if !f.is_zero(v) {
                    let col = s * nx + c;
                    let cur = f.add(e.get(row, col), v);
                    e.set(row, col, cur);
                }
            }
            // (F L_x)_{rc} = Σ_s F[r][s] L_x[s][c]
            for s in 0..nx {
                let v = lx.get(s, c);
                if !f.is_zero(v) {
                    let col = r * nx + s;
                    let cur = f.sub(e.get(row, col), v);
                    e.set(row, col, cur);
                }
            }
        }
    }
    e
}

/// `hom_space(x, y)`: all module maps `x → y`.
pub fn hom_space<F: Field>(x: &Module<F>, y: &Module<F>) -> Result<HomSpace<F>> {
    if !x.same_algebra(y) {
        return Err(Error::AlgebraMismatch);
    }
    let f = x.field();
    let n = x.dim() * y.dim();
    // Cut the solution space down one basis element at a time; the running
    // kernel shrinks quickly, which keeps the systems small.
    let mut basis = Matrix::identity(f, n);
    for (lx, ly) in x.actions().iter().zip(y.actions()) {
        if basis.cols() == 0 {
            break;
        }
        if lx.is_identity() && ly.is_identity() {
            continue;
        }
        let eq = intertwining_equations(lx, ly).mul(&basis);
        let k = eq.kernel();
        basis = basis.mul(&k.inclusion());
    }
    let space = Subspace::from_rows(&basis.transpose());
    Ok(HomSpace { source: x.clone(), target: y.clone(), space })
}

impl<F: Field> HomSpace<F> {
    pub fn source(&self) -> &Module<F> {
        &self.source
    }
    pub fn target(&self) -> &Module<F> {
        &self.target
    }
    pub fn dim(&self) -> usize {
        self.space.dim()
    }
    pub fn subspace(&self) -> &Subspace<F> {
        &self.space
    }

    fn to_matrix(&self, flat: Vec<F::Elem>) -> Matrix<F> {
        Matrix::from_vec(self.source.field(), self.target.dim(), self.source.dim(), flat)
    }

    pub fn basis(&self) -> Vec<ModuleMap<F>> {
        self.space
            .basis_vectors()
            .into_iter()
            .map(|v| ModuleMap::new_unchecked(self.source.clone(), self.target.clone(), self.to_matrix(v)))
            .collect()
    }

    /// Coordinates of a matrix in the basis, or `None` if it is not a module map.
    pub fn coords(&self, m: &Matrix<F>) -> Option<Vec<F::Elem>> {
        if m.shape() != (self.target.dim(), self.source.dim()) {
            return None;
        }
        self.space.coords(m.data())
    }

    pub fn combine(&self, coords: &[F::Elem]) -> ModuleMap<F> {
        let m = self.to_matrix(self.space.combine(coords));
        ModuleMap::new_unchecked(self.source.clone(), self.target.clone(), m)
    }

    /// Some `h` in the space with `left · h · right = target`; a missing
    /// factor is the identity.
    pub fn solve(&self, left: Option<&Matrix<F>>, right: Option<&Matrix<F>>, target: &Matrix<F>) -> Option<ModuleMap<F>> {
        let f = self.source.field();
        let apply = |h: &Matrix<F>| {
            let h = left.map_or_else(|| h.clone(), |l| l.mul(h));
            right.map_or(h.clone(), |r| h.mul(r))
        };
        if self.dim() == 0 {
            return target.is_zero().then(|| self.combine(&[]));
        }
        let cols: Vec<Vec<F::Elem>> = self.basis().iter().map(|b| apply(b.matrix()).into_data()).collect();
        let sys = Matrix::from_columns(f, target.rows() * target.cols(), &cols);
        let c = sys.solve_vec(target.data()).ok()?;
        Some(self.combine(&c))
    }

    /// A map with seeded-random coordinates.
    pub fn random<R: rand_core::RngCore + ?Sized>(&self, rng: &mut R) -> ModuleMap<F> {
        let f = self.source.field();
        let c: Vec<F::Elem> = (0..self.dim()).map(|_| f.random(rng)).collect();
        self.combine(&c)
    }
}
