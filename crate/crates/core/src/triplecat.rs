//! Λ-modules as triples `(X, Y, φ: M ⊗_B Y → X)` and morphisms as pairs
//! `(f, g)` with `φ'(Id ⊗ g) = f φ`.

use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec::Vec;

use rand_core::RngCore;

use crate::algebra::{same_algebra, Triangular};
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix, Subspace};
use crate::modrep::{
    cokernel_module, hom_module, hom_space, tensor_map, tensor_over, HomModule, HomSpace, Module, ModuleMap,
    TensorProduct,
};
use crate::report::{CheckRecord, CheckReport, Status, WitnessValue};

/// A Λ-module `(X, Y, φ)`; `φ` is stored on the canonical basis of `M ⊗_B Y`.
#[derive(Debug, Clone)]
pub struct Triple<F: Field> {
    ctx: Arc<Triangular<F>>,
    x: Module<F>,
    y: Module<F>,
    tensor: Arc<TensorProduct<F>>,
    phi: ModuleMap<F>,
}

impl<F: Field> PartialEq for Triple<F> {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx)
            && self.x == other.x
            && self.y == other.y
            && self.phi.matrix() == other.phi.matrix()
    }
}
impl<F: Field> Eq for Triple<F> {}

impl<F: Field> Triple<F> {
    /// Builds a triple, checking that `φ` is `A`-linear.
    pub fn new(ctx: &Arc<Triangular<F>>, x: Module<F>, y: Module<F>, phi: Matrix<F>) -> Result<Self> {
        if !same_algebra(x.algebra(), &ctx.a) || !same_algebra(y.algebra(), &ctx.b) {
            return Err(Error::ContextMismatch);
        }
        let tensor = Arc::new(tensor_over(&ctx.m, &y)?);
        let phi = ModuleMap::new(tensor.module.clone(), x.clone(), phi)?;
        Ok(Triple { ctx: ctx.clone(), x, y, tensor, phi })
    }

    pub(crate) fn from_parts(
        ctx: &Arc<Triangular<F>>,
        x: Module<F>,
        y: Module<F>,
        tensor: Arc<TensorProduct<F>>,
        phi: Matrix<F>,
    ) -> Self {
        let phi = ModuleMap::new_unchecked(tensor.module.clone(), x.clone(), phi);
        Triple { ctx: ctx.clone(), x, y, tensor, phi }
    }

    /// Like [`Triple::new`] without the linearity check on `φ`.
    pub fn new_unchecked(ctx: &Arc<Triangular<F>>, x: Module<F>, y: Module<F>, phi: Matrix<F>) -> Result<Self> {
        let tensor = Arc::new(tensor_over(&ctx.m, &y)?);
        let expected = (x.dim(), tensor.module.dim());
        if phi.shape() != expected {
            return Err(Error::Shape { expected, found: phi.shape() });
        }
        Ok(Self::from_parts(ctx, x, y, tensor, phi))
    }

    pub fn zero(ctx: &Arc<Triangular<F>>) -> Self {
        let x = Module::zero(&ctx.a);
        let y = Module::zero(&ctx.b);
        let phi = Matrix::zeros(ctx.field(), 0, 0);
        Self::new_unchecked(ctx, x, y, phi).expect("zero module is over B")
    }

    pub fn context(&self) -> &Arc<Triangular<F>> {
        &self.ctx
    }
    pub fn field(&self) -> &F {
        self.ctx.field()
    }
    pub fn x(&self) -> &Module<F> {
        &self.x
    }
    pub fn y(&self) -> &Module<F> {
        &self.y
    }
    pub fn phi(&self) -> &ModuleMap<F> {
        &self.phi
    }
    /// `M ⊗_B Y`.
    pub fn tensor(&self) -> &Arc<TensorProduct<F>> {
        &self.tensor
    }
    pub fn dim(&self) -> usize {
        self.x.dim() + self.y.dim()
    }
    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn validate(&self) -> Result<()> {
        self.x.validate()?;
        self.y.validate()?;
        if !self.phi.intertwines() {
            return Err(Error::Validation("φ is not A-linear".to_string()));
        }
        Ok(())
    }
}

/// A morphism of triples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleMap<F: Field> {
    source: Triple<F>,
    target: Triple<F>,
    f: ModuleMap<F>,
    g: ModuleMap<F>,
}

impl<F: Field> TripleMap<F> {
    /// Builds a morphism, checking `A`- and `B`-linearity and the square.
    pub fn new(source: &Triple<F>, target: &Triple<F>, f: Matrix<F>, g: Matrix<F>) -> Result<Self> {
        let f = ModuleMap::new(source.x.clone(), target.x.clone(), f)?;
        let g = ModuleMap::new(source.y.clone(), target.y.clone(), g)?;
        let tm = TripleMap { source: source.clone(), target: target.clone(), f, g };
        if !tm.residual().is_zero() {
            return Err(Error::Validation("φ'(Id⊗g) ≠ fφ".to_string()));
        }
        Ok(tm)
    }

    pub fn new_unchecked(source: &Triple<F>, target: &Triple<F>, f: Matrix<F>, g: Matrix<F>) -> Self {
        let f = ModuleMap::new_unchecked(source.x.clone(), target.x.clone(), f);
        let g = ModuleMap::new_unchecked(source.y.clone(), target.y.clone(), g);
        TripleMap { source: source.clone(), target: target.clone(), f, g }
    }

    pub fn identity(t: &Triple<F>) -> Self {
        let fld = t.field();
        Self::new_unchecked(t, t, Matrix::identity(fld, t.x.dim()), Matrix::identity(fld, t.y.dim()))
    }

    pub fn zero(source: &Triple<F>, target: &Triple<F>) -> Self {
        let fld = source.field();
        Self::new_unchecked(
            source,
            target,
            Matrix::zeros(fld, target.x.dim(), source.x.dim()),
            Matrix::zeros(fld, target.y.dim(), source.y.dim()),
        )
    }

    pub fn source(&self) -> &Triple<F> {
        &self.source
    }
    pub fn target(&self) -> &Triple<F> {
        &self.target
    }
    pub fn f(&self) -> &ModuleMap<F> {
        &self.f
    }
    pub fn g(&self) -> &ModuleMap<F> {
        &self.g
    }

    /// `Id_M ⊗ g: M ⊗ Y → M ⊗ Y'`.
    pub fn tensor_g(&self) -> ModuleMap<F> {
        tensor_map(&self.source.ctx.m, &self.source.tensor, &self.target.tensor, &self.g)
    }

    /// `φ'(Id ⊗ g) − f φ`.
    pub fn residual(&self) -> Matrix<F> {
        let lhs = self.target.phi.matrix().mul(self.tensor_g().matrix());
        let rhs = self.f.matrix().mul(self.source.phi.matrix());
        lhs.sub(&rhs)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &TripleMap<F>) -> Result<Self> {
        if other.target.dim() != self.source.dim() {
            return Err(Error::DomainMismatch("composable triple maps"));
        }
        Ok(Self::new_unchecked(
            &other.source,
            &self.target,
            self.f.matrix().mul(other.f.matrix()),
            self.g.matrix().mul(other.g.matrix()),
        ))
    }

    pub fn add(&self, other: &TripleMap<F>) -> Self {
        Self::new_unchecked(
            &self.source,
            &self.target,
            self.f.matrix().add(other.f.matrix()),
            self.g.matrix().add(other.g.matrix()),
        )
    }
    pub fn sub(&self, other: &TripleMap<F>) -> Self {
        Self::new_unchecked(
            &self.source,
            &self.target,
            self.f.matrix().sub(other.f.matrix()),
            self.g.matrix().sub(other.g.matrix()),
        )
    }
    pub fn scale(&self, s: &F::Elem) -> Self {
        Self::new_unchecked(&self.source, &self.target, self.f.matrix().scale(s), self.g.matrix().scale(s))
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero() && self.g.is_zero()
    }
    pub fn is_injective(&self) -> bool {
        self.f.is_injective() && self.g.is_injective()
    }
    pub fn is_surjective(&self) -> bool {
        self.f.is_surjective() && self.g.is_surjective()
    }
    pub fn is_isomorphism(&self) -> bool {
        self.f.is_isomorphism() && self.g.is_isomorphism()
    }

    /// `diag(f, g)` on `X ⊕ Y`.
    pub fn total_matrix(&self) -> Matrix<F> {
        Matrix::block_diag(self.source.field(), &[self.f.matrix(), self.g.matrix()])
    }
}

/// `validate_triple_map(tm)`: the compatibility square, with the residual
/// matrix as witness on failure.
pub fn validate_triple_map<F: Field>(tm: &TripleMap<F>) -> CheckReport {
    let mut report = CheckReport::new(None);
    let r = tm.residual();
    let linear = tm.f.intertwines() && tm.g.intertwines();
    let mut rec = CheckRecord::new("triple.morphism", "φ'(Id⊗g) = fφ", Status::from_bool(r.is_zero() && linear));
    if !r.is_zero() {
        rec.witness("residual", WitnessValue::matrix(&r));
    }
    if !linear {
        rec.witness("linear", WitnessValue::Bool(false));
    }
    report.push(rec);
    report
}

/// The matrix of `l` on an `l`-stable subspace, in its echelon basis.
fn restrict<F: Field>(sub: &Subspace<F>, l: &Matrix<F>) -> Matrix<F> {
    let cols: Vec<Vec<F::Elem>> = sub
        .basis_vectors()
        .iter()
        .map(|v| sub.coords(&l.mul_vec(v)).expect("subspace is stable"))
        .collect();
    Matrix::from_columns(l.field(), sub.dim(), &cols)
}

/// `from_triple(t)`: the Λ-module on `X ⊕ Y`.
pub fn from_triple<F: Field>(t: &Triple<F>) -> Module<F> {
    let ctx = &t.ctx;
    let fld = ctx.field();
    let (dx, dy) = (t.x.dim(), t.y.dim());
    let n = dx + dy;
    let mut action = Vec::with_capacity(ctx.lambda.dim());
    for i in 0..ctx.a.dim() {
        let mut l = Matrix::zeros(fld, n, n);
        l.set_block(0, 0, t.x.action(i));
        action.push(l);
    }
    for i in 0..ctx.m.dim() {
        // y ↦ φ(m_i ⊗ y)
        let cols: Vec<Vec<F::Elem>> =
            (0..dy).map(|j| t.phi.matrix().mul_vec(&t.tensor.basis_tensor(i, j))).collect();
        let mut l = Matrix::zeros(fld, n, n);
        l.set_block(0, dx, &Matrix::from_columns(fld, dx, &cols));
        action.push(l);
    }
    for j in 0..ctx.b.dim() {
        let mut l = Matrix::zeros(fld, n, n);
        l.set_block(dx, dx, t.y.action(j));
        action.push(l);
    }
    Module::new_unchecked(ctx.lambda.clone(), action)
}

/// `diag(f, g)` as a Λ-module map.
pub fn from_triple_map<F: Field>(tm: &TripleMap<F>) -> ModuleMap<F> {
    ModuleMap::new_unchecked(from_triple(&tm.source), from_triple(&tm.target), tm.total_matrix())
}

/// Cokernel of a triple map with its projection.
#[derive(Debug, Clone)]
pub struct TripleCokernel<F: Field> {
    pub triple: Triple<F>,
    pub projection: TripleMap<F>,
}

/// Componentwise cokernel; `φ` descends because `M ⊗_B −` is right exact.
pub fn triple_cokernel<F: Field>(u: &TripleMap<F>) -> Result<TripleCokernel<F>> {
    let ctx = u.target.context();
    let cf = cokernel_module(&u.f);
    let cg = cokernel_module(&u.g);
    let tensor = Arc::new(tensor_over(&ctx.m, &cg.module)?);
    let t_g = tensor_map(&ctx.m, &u.target.tensor, &tensor, &cg.projection);
    // φ_C (1 ⊗ π_g) = π_f φ, and 1 ⊗ π_g is onto
    let section = t_g.matrix().solve(&Matrix::identity(ctx.field(), tensor.module.dim()))?.particular;
    let phi = cf.projection.matrix().mul(u.target.phi.matrix()).mul(&section);
    let triple = Triple::new(ctx, cf.module, cg.module, phi)?;
    let projection = TripleMap::new_unchecked(
        &u.target,
        &triple,
        cf.projection.matrix().clone(),
        cg.projection.matrix().clone(),
    );
    Ok(TripleCokernel { triple, projection })
}

/// A triple with the comparison isomorphism `from_triple(t) → z`.
#[derive(Debug, Clone)]
pub struct Sliced<F: Field> {
    pub triple: Triple<F>,
    pub comparison: ModuleMap<F>,
    x_part: Subspace<F>,
    y_part: Subspace<F>,
}

/// `to_triple(z)` with its comparison isomorphism.
pub fn to_triple_with_iso<F: Field>(ctx: &Arc<Triangular<F>>, z: &Module<F>) -> Result<Sliced<F>> {
    if !same_algebra(z.algebra(), &ctx.lambda) {
        return Err(Error::ContextMismatch);
    }
    let fld = ctx.field();
    let x_part = z.act(&ctx.idempotent_a()).image();
    let y_part = z.act(&ctx.idempotent_b()).image();
    let x_action = (0..ctx.a.dim())
        .map(|i| restrict(&x_part, &z.act(&ctx.embed_a(&ctx.a.basis_element(i)))))
        .collect();
    let y_action = (0..ctx.b.dim())
        .map(|j| restrict(&y_part, &z.act(&ctx.embed_b(&ctx.b.basis_element(j)))))
        .collect();
    let x = Module::new_unchecked(ctx.a.clone(), x_action);
    let y = Module::new_unchecked(ctx.b.clone(), y_action);
    let tensor = Arc::new(tensor_over(&ctx.m, &y)?);
    let mut raw = Vec::with_capacity(ctx.m.dim() * y.dim());
    let mut unit_m = alloc::vec![fld.zero(); ctx.m.dim()];
    let y_basis = y_part.basis_vectors();
    for i in 0..ctx.m.dim() {
        unit_m[i] = fld.one();
        let l = z.act(&ctx.embed_m(&unit_m));
        unit_m[i] = fld.zero();
        for yb in &y_basis {
            let v = x_part
                .coords(&l.mul_vec(yb))
                .ok_or_else(|| Error::Validation("M·Y is not inside e_A Z".to_string()))?;
            raw.push(v);
        }
    }
    let raw = Matrix::from_columns(fld, x.dim(), &raw);
    if !raw.mul(&tensor.relations.inclusion()).is_zero() {
        return Err(Error::Validation("multiplication is not B-balanced".to_string()));
    }
    let phi = raw.mul(&tensor.lift);
    let triple = Triple::from_parts(ctx, x, y, tensor, phi);
    let comparison = ModuleMap::new_unchecked(
        from_triple(&triple),
        z.clone(),
        x_part.inclusion().hstack(&y_part.inclusion()),
    );
    Ok(Sliced { triple, comparison, x_part, y_part })
}

/// `to_triple(z)`: `X = e_A Z`, `Y = e_B Z`, `φ(m ⊗ y) = m·y`.
pub fn to_triple<F: Field>(ctx: &Arc<Triangular<F>>, z: &Module<F>) -> Result<Triple<F>> {
    Ok(to_triple_with_iso(ctx, z)?.triple)
}

/// The triple map induced by a Λ-map `h: z → z'`.
pub fn to_triple_map<F: Field>(ctx: &Arc<Triangular<F>>, h: &ModuleMap<F>) -> Result<TripleMap<F>> {
    let s = to_triple_with_iso(ctx, h.source())?;
    let t = to_triple_with_iso(ctx, h.target())?;
    let fld = ctx.field();
    let part = |from: &Subspace<F>, to: &Subspace<F>| -> Result<Matrix<F>> {
        let cols = from
            .basis_vectors()
            .iter()
            .map(|v| to.coords(&h.matrix().mul_vec(v)).ok_or(Error::AlgebraMismatch))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_columns(fld, to.dim(), &cols))
    };
    let f = part(&s.x_part, &t.x_part)?;
    let g = part(&s.y_part, &t.y_part)?;
    Ok(TripleMap::new_unchecked(&s.triple, &t.triple, f, g))
}

/// `Hom_Λ(t, t')` with its basis expressed as pairs `(f, g)`.
#[derive(Debug, Clone)]
pub struct TripleHomSpace<F: Field> {
    pub source: Triple<F>,
    pub target: Triple<F>,
    pub space: HomSpace<F>,
}

pub fn triple_hom<F: Field>(s: &Triple<F>, t: &Triple<F>) -> Result<TripleHomSpace<F>> {
    let space = hom_space(&from_triple(s), &from_triple(t))?;
    Ok(TripleHomSpace { source: s.clone(), target: t.clone(), space })
}

impl<F: Field> TripleHomSpace<F> {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    fn split(&self, m: &Matrix<F>) -> TripleMap<F> {
        let (sx, sy) = (self.source.x.dim(), self.source.y.dim());
        let (tx, ty) = (self.target.x.dim(), self.target.y.dim());
        TripleMap::new_unchecked(&self.source, &self.target, m.block(0, 0, tx, sx), m.block(tx, sx, ty, sy))
    }

    pub fn basis(&self) -> Vec<TripleMap<F>> {
        self.space.basis().iter().map(|b| self.split(b.matrix())).collect()
    }
    pub fn coords(&self, tm: &TripleMap<F>) -> Option<Vec<F::Elem>> {
        self.space.coords(&tm.total_matrix())
    }
    pub fn combine(&self, c: &[F::Elem]) -> TripleMap<F> {
        self.split(self.space.combine(c).matrix())
    }
    pub fn random<R: RngCore + ?Sized>(&self, rng: &mut R) -> TripleMap<F> {
        self.split(self.space.random(rng).matrix())
    }
}

/// The bijection `Hom_A(M ⊗_B Y, X) ≅ Hom_B(Y, Hom_A(M, X))`.
#[derive(Debug, Clone)]
pub struct Alpha<F: Field> {
    pub tensor: Arc<TensorProduct<F>>,
    pub hom: Arc<HomModule<F>>,
    /// `Hom_A(M ⊗ Y, X)`.
    pub left: HomSpace<F>,
    /// `Hom_B(Y, Hom_A(M, X))`.
    pub right: HomSpace<F>,
    /// Matrix of `α` from `left` coordinates to `right` coordinates.
    pub forward: Matrix<F>,
    /// Matrix of `α⁻¹`.
    pub inverse: Matrix<F>,
}

/// `α(φ)(y)(m) = φ(m ⊗ y)`, as a `dim Hom(M,X) × dim Y` matrix.
pub fn alpha_apply<F: Field>(tensor: &TensorProduct<F>, hom: &HomModule<F>, phi: &Matrix<F>) -> Matrix<F> {
    let fld = phi.field();
    let dm = hom.space.source().dim();
    let dy = tensor.y_dim();
    let dx = phi.rows();
    let cols: Vec<Vec<F::Elem>> = (0..dy)
        .map(|j| {
            let m_cols: Vec<Vec<F::Elem>> = (0..dm).map(|i| phi.mul_vec(&tensor.basis_tensor(i, j))).collect();
            let map = Matrix::from_columns(fld, dx, &m_cols);
            hom.space.coords(&map).expect("φ is A-linear")
        })
        .collect();
    Matrix::from_columns(fld, hom.module.dim(), &cols)
}

/// `α⁻¹(g)(m ⊗ y) = g(y)(m)`.
pub fn alpha_inverse_apply<F: Field>(tensor: &TensorProduct<F>, hom: &HomModule<F>, g: &Matrix<F>) -> Matrix<F> {
    let fld = g.field();
    let dm = hom.space.source().dim();
    let dx = hom.space.target().dim();
    let dy = g.cols();
    let maps: Vec<Matrix<F>> = (0..dy).map(|j| hom.map_of(&g.col(j))).collect();
    let mut raw = Vec::with_capacity(dm * dy);
    for i in 0..dm {
        for map in &maps {
            raw.push(map.col(i));
        }
    }
    Matrix::from_columns(fld, dx, &raw).mul(&tensor.lift)
}

/// `alpha(x, y, m)`: both hom spaces and the mutually inverse matrices.
pub fn alpha<F: Field>(ctx: &Triangular<F>, x: &Module<F>, y: &Module<F>) -> Result<Alpha<F>> {
    let tensor = Arc::new(tensor_over(&ctx.m, y)?);
    let hom = Arc::new(hom_module(&ctx.m, x)?);
    alpha_with(tensor, hom, x, y)
}

pub(crate) fn alpha_with<F: Field>(
    tensor: Arc<TensorProduct<F>>,
    hom: Arc<HomModule<F>>,
    x: &Module<F>,
    y: &Module<F>,
) -> Result<Alpha<F>> {
    let fld = x.field();
    let left = hom_space(&tensor.module, x)?;
    let right = hom_space(y, &hom.module)?;
    let fwd: Vec<Vec<F::Elem>> = left
        .basis()
        .iter()
        .map(|b| {
            let g = alpha_apply(&tensor, &hom, b.matrix());
            right.coords(&g).ok_or(Error::Validation("α(φ) is not B-linear".to_string()))
        })
        .collect::<Result<_>>()?;
    let inv: Vec<Vec<F::Elem>> = right
        .basis()
        .iter()
        .map(|b| {
            let phi = alpha_inverse_apply(&tensor, &hom, b.matrix());
            left.coords(&phi).ok_or(Error::Validation("α⁻¹(g) is not A-linear".to_string()))
        })
        .collect::<Result<_>>()?;
    let forward = Matrix::from_columns(fld, right.dim(), &fwd);
    let inverse = Matrix::from_columns(fld, left.dim(), &inv);
    Ok(Alpha { tensor, hom, left, right, forward, inverse })
}

impl<F: Field> Alpha<F> {
    pub fn is_bijection(&self) -> bool {
        self.forward.mul(&self.inverse).is_identity() && self.inverse.mul(&self.forward).is_identity()
    }
}

/// The evaluation `ψ_X: M ⊗_B Hom_A(M, X) → X`, `m ⊗ f ↦ f(m)`.
#[derive(Debug, Clone)]
pub struct Psi<F: Field> {
    pub hom: Arc<HomModule<F>>,
    pub tensor: Arc<TensorProduct<F>>,
    pub map: ModuleMap<F>,
}

pub fn psi<F: Field>(ctx: &Triangular<F>, x: &Module<F>) -> Result<Psi<F>> {
    let hom = Arc::new(hom_module(&ctx.m, x)?);
    let tensor = Arc::new(tensor_over(&ctx.m, &hom.module)?);
    let fld = x.field();
    let basis = hom.space.basis();
    let mut raw = Vec::with_capacity(ctx.m.dim() * basis.len());
    for i in 0..ctx.m.dim() {
        for b in &basis {
            raw.push(b.matrix().col(i));
        }
    }
    let mat = Matrix::from_columns(fld, x.dim(), &raw).mul(&tensor.lift);
    let map = ModuleMap::new_unchecked(tensor.module.clone(), x.clone(), mat);
    Ok(Psi { hom, tensor, map })
}
