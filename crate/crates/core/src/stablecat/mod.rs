//! Stable categories of Gorenstein-projective modules modulo projectives,
//! the six stable functors between them and a checker for the stable
//! recollement.

mod check;

use alloc::sync::Arc;
use alloc::vec::Vec;

use rand_core::RngCore;

use crate::algebra::{regular_module, same_algebra, Triangular};
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix, Subspace};
use crate::gorenstein::{
    cosyzygy_embed, cosyzygy_embed_with, dual_module, is_gproj_perp, is_gproj_triple, m_projective, Embedding,
    GorensteinContext,
};
use crate::modrep::{
    cokernel_module, free_module, greedy_generators, hom_space, tensor_map, tensor_over, HomSpace, Module, ModuleMap,
    TensorProduct,
};
use crate::recollement::{Category, FunctorTag, Functors, Mor, Obj};
use crate::triplecat::{from_triple, Triple, TripleMap};

pub use check::{check_stable_recollement, StableSamples};

/// A value that passed a Gorenstein-projectivity test.
///
/// Only the certification functions of this module construct it.
#[derive(Debug, Clone, PartialEq)]
pub struct Certified<T> {
    value: T,
    conditional: bool,
}

impl<T> Certified<T> {
    pub fn value(&self) -> &T {
        &self.value
    }
    pub fn into_inner(self) -> T {
        self.value
    }
    /// True when the certificate rests on a declared injective dimension.
    pub fn is_conditional(&self) -> bool {
        self.conditional
    }
}

impl<T> core::ops::Deref for Certified<T> {
    type Target = T;
    fn deref(&self) -> &T {
        &self.value
    }
}

/// A triangular algebra with Gorenstein contexts for `A` and `B`.
#[derive(Debug, Clone)]
pub struct StableContext<F: Field> {
    pub tri: Arc<Triangular<F>>,
    pub ga: GorensteinContext<F>,
    pub gb: GorensteinContext<F>,
    /// `_A M` and `M_B` projective.
    pub m_projective: (bool, bool),
    pub functors: Functors<F>,
}

impl<F: Field> StableContext<F> {
    pub fn new(tri: &Arc<Triangular<F>>, ga: GorensteinContext<F>, gb: GorensteinContext<F>) -> Result<Self> {
        if !same_algebra(&ga.algebra, &tri.a) || !same_algebra(&gb.algebra, &tri.b) {
            return Err(Error::ContextMismatch);
        }
        Ok(StableContext { tri: tri.clone(), ga, gb, m_projective: m_projective(tri), functors: Functors::new(tri) })
    }
}

pub fn certify_module<F: Field>(x: &Module<F>, ctx: &GorensteinContext<F>) -> Result<Certified<Module<F>>> {
    let v = is_gproj_perp(x, ctx)?;
    if !v.gproj {
        return Err(Error::NotGorensteinProjective);
    }
    Ok(Certified { value: x.clone(), conditional: v.conditional })
}

pub fn certify_triple<F: Field>(t: &Triple<F>, sc: &StableContext<F>) -> Result<Certified<Triple<F>>> {
    let v = is_gproj_triple(t, &sc.ga, &sc.gb)?;
    if !v.gproj {
        return Err(Error::NotGorensteinProjective);
    }
    Ok(Certified { value: t.clone(), conditional: v.x.conditional || v.y.conditional })
}

/// A certified object of `A`-Gproj, `B`-Gproj or `Λ`-Gproj.
#[derive(Debug, Clone, PartialEq)]
pub enum StableObj<F: Field> {
    A(Certified<Module<F>>),
    B(Certified<Module<F>>),
    Lambda(Certified<Triple<F>>),
}

impl<F: Field> StableObj<F> {
    pub fn certify(sc: &StableContext<F>, o: &Obj<F>) -> Result<Self> {
        Ok(match o {
            Obj::A(x) => StableObj::A(certify_module(x, &sc.ga)?),
            Obj::B(y) => StableObj::B(certify_module(y, &sc.gb)?),
            Obj::Lambda(t) => StableObj::Lambda(certify_triple(t, sc)?),
        })
    }

    pub fn category(&self) -> Category {
        match self {
            StableObj::A(_) => Category::A,
            StableObj::B(_) => Category::B,
            StableObj::Lambda(_) => Category::Lambda,
        }
    }

    pub fn obj(&self) -> Obj<F> {
        match self {
            StableObj::A(x) => Obj::A(x.value().clone()),
            StableObj::B(y) => Obj::B(y.value().clone()),
            StableObj::Lambda(t) => Obj::Lambda(t.value().clone()),
        }
    }

    /// The underlying module (`from_triple` for triples).
    pub fn module(&self) -> Module<F> {
        match self {
            StableObj::A(x) | StableObj::B(x) => x.value().clone(),
            StableObj::Lambda(t) => from_triple(t),
        }
    }

    pub fn dim(&self) -> usize {
        self.obj().dim()
    }
}

/// A morphism of the underlying category with the given matrix.
pub fn mor_of<F: Field>(source: &Obj<F>, target: &Obj<F>, m: &Matrix<F>) -> Result<Mor<F>> {
    Ok(match (source, target) {
        (Obj::A(x), Obj::A(y)) => Mor::A(ModuleMap::new_unchecked(x.clone(), y.clone(), m.clone())),
        (Obj::B(x), Obj::B(y)) => Mor::B(ModuleMap::new_unchecked(x.clone(), y.clone(), m.clone())),
        (Obj::Lambda(s), Obj::Lambda(t)) => {
            let (sx, sy) = (s.x().dim(), s.y().dim());
            let (tx, ty) = (t.x().dim(), t.y().dim());
            Mor::Lambda(TripleMap::new_unchecked(s, t, m.block(0, 0, tx, sx), m.block(tx, sx, ty, sy)))
        }
        _ => return Err(Error::DomainMismatch("source and target in different categories")),
    })
}

/// `ε_t: A → y`, `a ↦ a·g`.
fn generator_map<F: Field>(y: &Module<F>, g: &[F::Elem]) -> Matrix<F> {
    let n = y.algebra().dim();
    let cols: Vec<Vec<F::Elem>> = (0..n).map(|s| y.action(s).mul_vec(g)).collect();
    Matrix::from_columns(y.field(), y.dim(), &cols)
}

/// The maps `x → y` factoring through the free cover of `y` on
/// `generators`, as a subspace of the coordinates of `hom`.
///
/// Every map through a projective lifts along any epimorphism from a
/// projective, so the result does not depend on the generators.
pub fn projective_factoring<F: Field>(
    hom: &HomSpace<F>,
    generators: &[Vec<F::Elem>],
) -> Result<Subspace<F>> {
    let (x, y) = (hom.source(), hom.target());
    let hx = hom_space(x, &regular_module(x.algebra()))?;
    let hx_basis = hx.basis();
    let mut vectors = Vec::new();
    for g in generators {
        let e = generator_map(y, g);
        for h in &hx_basis {
            let c = hom.coords(&e.mul(h.matrix())).ok_or(Error::LiftingFailure("composite through A"))?;
            vectors.push(c);
        }
    }
    Ok(Subspace::span(x.field(), hom.dim(), vectors))
}

/// `Hom(x, y)` modulo the maps factoring through a projective.
#[derive(Debug, Clone)]
pub struct StableHomSpace<F: Field> {
    pub hom: HomSpace<F>,
    /// `P(x, y)` in the coordinates of `hom`.
    pub projective: Subspace<F>,
}

impl<F: Field> StableHomSpace<F> {
    pub fn new(x: &Module<F>, y: &Module<F>) -> Result<Self> {
        let hom = hom_space(x, y)?;
        let projective = projective_factoring(&hom, &greedy_generators(y))?;
        Ok(StableHomSpace { hom, projective })
    }

    pub fn dim(&self) -> usize {
        self.hom.dim() - self.projective.dim()
    }
    pub fn hom_dim(&self) -> usize {
        self.hom.dim()
    }
    pub fn projective_dim(&self) -> usize {
        self.projective.dim()
    }

    /// Whether `m` is a module map factoring through a projective.
    pub fn is_null(&self, m: &Matrix<F>) -> bool {
        self.hom.coords(m).is_some_and(|c| self.projective.contains(&c))
    }

    /// Coordinates of the stable class of `m`.
    pub fn class(&self, m: &Matrix<F>) -> Option<Vec<F::Elem>> {
        let c = self.hom.coords(m)?;
        Some(self.projective.quotient().projection.mul_vec(&c))
    }

    /// Representatives of a basis of the stable space.
    pub fn stable_basis(&self) -> Vec<Matrix<F>> {
        let q = self.projective.quotient();
        let f = self.hom.source().field();
        (0..q.dim())
            .map(|j| {
                let mut c = alloc::vec![f.zero(); self.hom.dim()];
                c[q.complement[j]] = f.one();
                self.hom.combine(&c).matrix().clone()
            })
            .collect()
    }

    /// Maps spanning `P(x, y)`.
    pub fn projective_basis(&self) -> Vec<Matrix<F>> {
        self.projective.basis_vectors().iter().map(|c| self.hom.combine(c).matrix().clone()).collect()
    }
}

/// `stable_hom(x, y)` for certified objects of one category.
pub fn stable_hom<F: Field>(x: &StableObj<F>, y: &StableObj<F>) -> Result<StableHomSpace<F>> {
    if x.category() != y.category() {
        return Err(Error::DomainMismatch("stable Hom across categories"));
    }
    StableHomSpace::new(&x.module(), &y.module())
}

/// `f = cover ∘ lift` with `lift: x → A^r`.
#[derive(Debug, Clone)]
pub struct Factorization<F: Field> {
    pub lift: ModuleMap<F>,
    pub cover: ModuleMap<F>,
}

/// `factors_through_projective(f)`, with the factorization through the free
/// cover of the target when it exists.
pub fn factors_through_projective<F: Field>(f: &ModuleMap<F>) -> Result<Option<Factorization<F>>> {
    let (x, y) = (f.source(), f.target());
    let a = x.algebra();
    let fld = x.field();
    let gens = greedy_generators(y);
    let hx = hom_space(x, &regular_module(a))?;
    let hx_basis = hx.basis();
    let maps: Vec<Matrix<F>> = gens.iter().map(|g| generator_map(y, g)).collect();
    let mut cols = Vec::new();
    for e in &maps {
        for h in &hx_basis {
            cols.push(e.mul(h.matrix()).into_data());
        }
    }
    let cover = crate::modrep::map_from_free(y, &gens);
    let free = free_module(a, gens.len());
    if cols.is_empty() {
        return Ok(f.is_zero().then(|| Factorization {
            lift: ModuleMap::zero(x, &free),
            cover: cover.clone(),
        }));
    }
    let sys = Matrix::from_columns(fld, y.dim() * x.dim(), &cols);
    let Ok(c) = sys.solve_vec(f.matrix().data()) else {
        return Ok(None);
    };
    let n = a.dim();
    let k = hx_basis.len();
    let mut lift = Matrix::zeros(fld, gens.len() * n, x.dim());
    for t in 0..gens.len() {
        let block = hx.combine(&c[t * k..(t + 1) * k]);
        lift.set_block(t * n, 0, block.matrix());
    }
    let lift = ModuleMap::new(x.clone(), free, lift)?;
    debug_assert_eq!(cover.matrix().mul(lift.matrix()), *f.matrix());
    Ok(Some(Factorization { lift, cover }))
}

/// A `v: y → x` with `vu ≡ id_x` and `uv ≡ id_y` modulo projectives.
pub fn stable_inverse<F: Field>(x: &Module<F>, y: &Module<F>, u: &Matrix<F>) -> Result<Option<Matrix<F>>> {
    let sxx = StableHomSpace::new(x, x)?;
    let syy = StableHomSpace::new(y, y)?;
    let hyx = hom_space(y, x)?;
    Ok(stable_inverse_in(&sxx, &syy, &hyx, u))
}

fn stable_inverse_in<F: Field>(
    sxx: &StableHomSpace<F>,
    syy: &StableHomSpace<F>,
    hyx: &HomSpace<F>,
    u: &Matrix<F>,
) -> Option<Matrix<F>> {
    let x = sxx.hom.source();
    let f = x.field();
    // Σ c_k V_k u − Σ p_l P_l = id_x
    let mut cols: Vec<Vec<F::Elem>> = hyx.basis().iter().map(|v| v.matrix().mul(u).into_data()).collect();
    let nv = cols.len();
    cols.extend(sxx.projective_basis().iter().map(|p| p.neg().into_data()));
    let id_x = Matrix::identity(f, x.dim());
    let v = if cols.is_empty() {
        id_x.is_zero().then(|| Matrix::zeros(f, x.dim(), syy.hom.source().dim()))?
    } else {
        let sys = Matrix::from_columns(f, x.dim() * x.dim(), &cols);
        let c = sys.solve_vec(id_x.data()).ok()?;
        hyx.combine(&c[..nv]).matrix().clone()
    };
    let y_dim = syy.hom.source().dim();
    syy.is_null(&u.mul(&v).sub(&Matrix::identity(f, y_dim))).then_some(v)
}

/// Outcome of [`stable_iso_check`].
#[derive(Debug, Clone, PartialEq)]
pub enum StableIsoVerdict<F: Field> {
    /// `u: x → y`, `v: y → x` inverse to each other modulo projectives.
    Yes { u: Matrix<F>, v: Matrix<F> },
    /// Stable dimensions of `(x,y)`, `(y,x)`, `(x,x)`, `(y,y)` differ.
    No { dims: [usize; 4] },
    Unknown,
}

impl<F: Field> StableIsoVerdict<F> {
    pub fn is_yes(&self) -> bool {
        matches!(self, StableIsoVerdict::Yes { .. })
    }
}

/// `stable_iso_check(x, y)`: tries the identity when `x = y`, a basis of
/// the stable space, then `budget` random maps.
pub fn stable_iso_check<F: Field, R: RngCore + ?Sized>(
    x: &StableObj<F>,
    y: &StableObj<F>,
    rng: &mut R,
    budget: usize,
) -> Result<StableIsoVerdict<F>> {
    if x.category() != y.category() {
        return Err(Error::DomainMismatch("stable isomorphism across categories"));
    }
    modules_stably_isomorphic(&x.module(), &y.module(), rng, budget)
}

pub(crate) fn modules_stably_isomorphic<F: Field, R: RngCore + ?Sized>(
    x: &Module<F>,
    y: &Module<F>,
    rng: &mut R,
    budget: usize,
) -> Result<StableIsoVerdict<F>> {
    let sxy = StableHomSpace::new(x, y)?;
    let syx = StableHomSpace::new(y, x)?;
    let sxx = StableHomSpace::new(x, x)?;
    let syy = StableHomSpace::new(y, y)?;
    let dims = [sxy.dim(), syx.dim(), sxx.dim(), syy.dim()];
    if dims.iter().any(|&d| d != dims[0]) {
        return Ok(StableIsoVerdict::No { dims });
    }
    let f = x.field();
    let mut candidates: Vec<Matrix<F>> = Vec::new();
    if x == y {
        candidates.push(Matrix::identity(f, x.dim()));
    }
    if sxy.dim() == 0 {
        candidates.push(Matrix::zeros(f, y.dim(), x.dim()));
    }
    candidates.extend(sxy.stable_basis());
    let try_u = |u: &Matrix<F>| stable_inverse_in(&sxx, &syy, &syx.hom, u).map(|v| (u.clone(), v));
    for u in &candidates {
        if let Some((u, v)) = try_u(u) {
            return Ok(StableIsoVerdict::Yes { u, v });
        }
    }
    for _ in 0..budget {
        let u = sxy.hom.random(rng).matrix().clone();
        if let Some((u, v)) = try_u(&u) {
            return Ok(StableIsoVerdict::Yes { u, v });
        }
    }
    Ok(StableIsoVerdict::Unknown)
}

/// Which generators of `g*` define the embedding into a free module.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Presentation {
    /// Greedy generators (the default).
    Greedy,
    /// Every basis vector of `g*`.
    Full,
}

/// `g[1] = Coker(σ: g ↪ P)`.
#[derive(Debug, Clone)]
pub struct Shift<F: Field> {
    pub embedding: Embedding<F>,
    pub module: Certified<Module<F>>,
}

pub fn embed_with<F: Field>(g: &Module<F>, ctx: &GorensteinContext<F>, p: Presentation) -> Result<Embedding<F>> {
    match p {
        Presentation::Greedy => cosyzygy_embed(g, ctx),
        Presentation::Full => {
            let dual = dual_module(g, &ctx.opposite)?;
            let f = g.field();
            let n = dual.module.dim();
            let gens: Vec<Vec<F::Elem>> = (0..n)
                .map(|i| {
                    let mut e = alloc::vec![f.zero(); n];
                    e[i] = f.one();
                    e
                })
                .collect();
            cosyzygy_embed_with(g, ctx, &dual, &gens)
        }
    }
}

/// `shift(g)`.
pub fn shift<F: Field>(g: &Certified<Module<F>>, ctx: &GorensteinContext<F>, p: Presentation) -> Result<Shift<F>> {
    let embedding = embed_with(g, ctx, p)?;
    let module = Certified {
        value: embedding.cokernel.module.clone(),
        conditional: embedding.certificate.conditional,
    };
    Ok(Shift { embedding, module })
}

/// `j_*(Y) = (P, Y, σ)` for an embedding `σ: M ⊗ Y ↪ P` with
/// Gorenstein-projective cokernel.
#[derive(Debug, Clone)]
pub struct StableJStar<F: Field> {
    pub triple: Certified<Triple<F>>,
    pub embedding: Embedding<F>,
}

impl<F: Field> StableJStar<F> {
    pub fn tensor(&self) -> &Arc<TensorProduct<F>> {
        self.triple.tensor()
    }
}

pub fn stable_j_star<F: Field>(
    sc: &StableContext<F>,
    y: &Certified<Module<F>>,
    p: Presentation,
) -> Result<StableJStar<F>> {
    let tensor = tensor_over(&sc.tri.m, y)?;
    let embedding = embed_with(&tensor.module, &sc.ga, p)?;
    let t = Triple::new(&sc.tri, embedding.free().clone(), y.value().clone(), embedding.sigma.matrix().clone())?;
    let triple = certify_triple(&t, sc).map_err(|_| Error::LiftingFailure("j_* image is not certified"))?;
    Ok(StableJStar { triple, embedding })
}

/// `j_*(g) = (f, g)` with `f σ = σ'(1 ⊗ g)`.
pub fn stable_j_star_map<F: Field>(
    sc: &StableContext<F>,
    source: &StableJStar<F>,
    target: &StableJStar<F>,
    g: &ModuleMap<F>,
) -> Result<TripleMap<F>> {
    j_star_extend(sc, &source.triple, target, g)
}

/// The map `(f, h): T → j_*Y'` with `f φ = σ'(1 ⊗ h)` for `h: Y → Y'`.
///
/// `f` exists because `φ` is monic with Gorenstein-projective cokernel and
/// `P'` is projective; it is unique up to maps through `Coker φ → P'`.
pub fn j_star_extend<F: Field>(
    sc: &StableContext<F>,
    t: &Triple<F>,
    target: &StableJStar<F>,
    h: &ModuleMap<F>,
) -> Result<TripleMap<F>> {
    let one_h = tensor_map(&sc.tri.m, t.tensor(), target.tensor(), h);
    let rhs = target.embedding.sigma.matrix().mul(one_h.matrix());
    let f = hom_space(t.x(), target.embedding.free())?
        .solve(None, Some(t.phi().matrix()), &rhs)
        .ok_or(Error::LiftingFailure("f φ = σ'(1 ⊗ h)"))?;
    TripleMap::new(t, &target.triple, f.matrix().clone(), h.matrix().clone())
}

fn stable_tag(tag: FunctorTag) -> Result<()> {
    match tag {
        FunctorTag::JQuestion | FunctorTag::IQuestion => {
            Err(Error::DomainMismatch("no stable formula for j_? or i_?"))
        }
        _ => Ok(()),
    }
}

/// `stable_apply(tag, x)`: the six functors of the stable recollement.
pub fn stable_apply<F: Field>(sc: &StableContext<F>, tag: FunctorTag, x: &StableObj<F>) -> Result<StableObj<F>> {
    stable_tag(tag)?;
    if tag.domain() != x.category() {
        return Err(Error::DomainMismatch("input outside the functor's domain"));
    }
    match (tag, x) {
        (FunctorTag::JStarLower, StableObj::B(y)) => {
            Ok(StableObj::Lambda(stable_j_star(sc, y, Presentation::Greedy)?.triple))
        }
        _ => {
            let out = sc.functors.apply(tag, &x.obj())?;
            StableObj::certify(sc, &out).map_err(|e| match e {
                Error::NotGorensteinProjective => Error::LiftingFailure("functor image is not certified"),
                e => e,
            })
        }
    }
}

/// `stable_apply_map(tag, u)` on a representative.
pub fn stable_apply_map<F: Field>(sc: &StableContext<F>, tag: FunctorTag, u: &Mor<F>) -> Result<Mor<F>> {
    stable_tag(tag)?;
    match (tag, u) {
        (FunctorTag::JStarLower, Mor::B(g)) => {
            let s = stable_j_star(sc, &certify_module(g.source(), &sc.gb)?, Presentation::Greedy)?;
            let t = stable_j_star(sc, &certify_module(g.target(), &sc.gb)?, Presentation::Greedy)?;
            Ok(Mor::Lambda(stable_j_star_map(sc, &s, &t, g)?))
        }
        _ => sc.functors.apply_map(tag, u),
    }
}

/// `0 → j_!j^*T → T → i_*i^*T → 0`.
#[derive(Debug, Clone)]
pub struct FirstTriangle<F: Field> {
    pub left: Certified<Triple<F>>,
    pub middle: Certified<Triple<F>>,
    pub right: Certified<Triple<F>>,
    /// `(φ, id)`.
    pub u: TripleMap<F>,
    /// `(π, 0)`.
    pub v: TripleMap<F>,
}

impl<F: Field> FirstTriangle<F> {
    pub fn is_exact(&self) -> bool {
        let (u, v) = (self.u.total_matrix(), self.v.total_matrix());
        self.u.is_injective() && self.v.is_surjective() && v.mul(&u).is_zero() && u.image() == v.kernel()
    }
}

pub fn first_triangle<F: Field>(sc: &StableContext<F>, t: &Certified<Triple<F>>) -> Result<FirstTriangle<F>> {
    let fld = sc.tri.field();
    let left = sc.functors.j_lower_shriek(t.y())?;
    let coker = cokernel_module(t.phi());
    let right = sc.functors.i_star_lower(&coker.module);
    let u = TripleMap::new(&left, t, t.phi().matrix().clone(), Matrix::identity(fld, t.y().dim()))?;
    let v = TripleMap::new(t, &right, coker.projection.matrix().clone(), Matrix::zeros(fld, 0, t.y().dim()))?;
    Ok(FirstTriangle {
        left: certify_triple(&left, sc)?,
        middle: t.clone(),
        right: certify_triple(&right, sc)?,
        u,
        v,
    })
}

#[cfg(test)]
mod tests;
