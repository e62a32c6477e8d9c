//! Gorenstein data: injective dimension of the regular module, the two
//! Gorenstein-projectivity tests, duality, cosyzygy embeddings and the
//! coresolution of a Gorenstein-projective triple by projective triples.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::algebra::{opposite, regular_module, same_algebra, Algebra, Triangular};
use crate::error::{Error, Result};
use crate::exactlin::{Field, FieldSpec, Matrix, Subspace};
use crate::modrep::{
    cokernel_module, direct_sum, ext_range, free_module, greedy_generators, hom_space, is_projective, tensor_map,
    tensor_over, Cokernel, HomSpace, Limits, Module, ModuleMap,
};
use crate::triplecat::{from_triple, triple_cokernel, Triple, TripleMap};

/// Largest degree probed by [`injective_dimension`] unless told otherwise.
pub const DEFAULT_INJDIM_CAP: usize = 4;

/// The Jacobson radical (as a subspace of `A`) and the simple modules.
#[derive(Debug, Clone)]
pub struct RadicalData<F: Field> {
    pub radical: Subspace<F>,
    /// `A / rad A` as a left module.
    pub top: Module<F>,
    pub simples: Vec<Module<F>>,
}

/// Trace form `Tr(L(e_i) L(e_j))`; its kernel is the radical when the
/// characteristic is 0 or exceeds `dim A`.
fn trace_form<F: Field>(a: &Algebra<F>) -> Matrix<F> {
    let f = a.field();
    let n = a.dim();
    let ls: Vec<Matrix<F>> = (0..n).map(|i| a.left_mult_matrix(&a.basis_element(i))).collect();
    Matrix::from_fn(f, n, n, |i, j| {
        let p = ls[i].mul(&ls[j]);
        let mut t = f.zero();
        for k in 0..n {
            t = f.add(&t, p.get(k, k));
        }
        t
    })
}

fn check_characteristic<F: Field>(a: &Algebra<F>) -> Result<()> {
    match a.field().spec() {
        FieldSpec::PrimeField(p) if (p as usize) <= a.dim() => {
            Err(Error::UnsupportedCharacteristic { p, dim: a.dim() })
        }
        _ => Ok(()),
    }
}

/// A proper nonzero submodule of `u`, if one is found.
///
/// Tries the submodules generated by single basis vectors, then kernels of
/// endomorphisms. For semisimple `u` the search only fails on simple
/// modules when every endomorphism tried is invertible.
fn proper_submodule<F: Field>(u: &Module<F>) -> Option<Subspace<F>> {
    let f = u.field();
    let n = u.dim();
    let proper = |s: &Subspace<F>| s.dim() > 0 && s.dim() < n;
    for j in 0..n {
        let mut e = alloc::vec![f.zero(); n];
        e[j] = f.one();
        let s = u.generated_subspace(&[e]);
        if proper(&s) {
            return Some(s);
        }
    }
    let end = hom_space(u, u).ok()?;
    let basis = end.basis();
    let mut candidates: Vec<Matrix<F>> = basis.iter().map(|b| b.matrix().clone()).collect();
    for x in &basis {
        for y in &basis {
            candidates.push(x.matrix().mul(y.matrix()));
        }
    }
    candidates.into_iter().map(|h| h.kernel()).find(|k| proper(k))
}

fn composition_factors<F: Field>(u: &Module<F>, out: &mut Vec<Module<F>>) -> Result<()> {
    if u.dim() == 0 {
        return Ok(());
    }
    match proper_submodule(u) {
        None => out.push(u.clone()),
        Some(s) => {
            let (sub, _) = u.submodule(&s)?;
            let (quot, _, _) = u.quotient(&s)?;
            composition_factors(&sub, out)?;
            composition_factors(&quot, out)?;
        }
    }
    Ok(())
}

/// `radical_and_simples(a)`: the radical as the kernel of the trace form
/// and the composition factors of `A / rad A`, one per isomorphism class.
pub fn radical_and_simples<F: Field>(a: &Arc<Algebra<F>>) -> Result<RadicalData<F>> {
    check_characteristic(a)?;
    let radical = trace_form(a).kernel();
    let (top, _, _) = regular_module(a).quotient(&radical)?;
    let mut factors = Vec::new();
    composition_factors(&top, &mut factors)?;
    let mut simples: Vec<Module<F>> = Vec::new();
    for s in factors {
        let mut seen = false;
        for t in &simples {
            if t.dim() == s.dim() && hom_space(t, &s)?.dim() > 0 {
                seen = true;
                break;
            }
        }
        if !seen {
            simples.push(s);
        }
    }
    Ok(RadicalData { radical, top, simples })
}

/// How an injective dimension was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InjDim {
    Computed(usize),
    UserDeclared(usize),
    /// `Ext^i(A/rad, A)` was still nonzero at every degree up to `cap + 1`.
    Inconclusive { cap: usize },
}

impl InjDim {
    pub fn value(&self) -> Option<usize> {
        match *self {
            InjDim::Computed(d) | InjDim::UserDeclared(d) => Some(d),
            InjDim::Inconclusive { .. } => None,
        }
    }
}

/// An algebra with the injective dimension of `_A A` (left) and `A_A`
/// (right).
#[derive(Debug, Clone)]
pub struct GorensteinContext<F: Field> {
    pub algebra: Arc<Algebra<F>>,
    pub opposite: Arc<Algebra<F>>,
    pub left: InjDim,
    pub right: InjDim,
    pub limits: Limits,
}

impl<F: Field> GorensteinContext<F> {
    pub fn declared(a: &Arc<Algebra<F>>, d: usize) -> Self {
        GorensteinContext {
            algebra: a.clone(),
            opposite: Arc::new(opposite(a)),
            left: InjDim::UserDeclared(d),
            right: InjDim::UserDeclared(d),
            limits: Limits::default(),
        }
    }

    /// The degree up to which Ext-vanishing has to be checked.
    pub fn d(&self) -> Result<usize> {
        match (self.left.value(), self.right.value()) {
            (Some(l), Some(r)) => Ok(l.max(r)),
            _ => Err(Error::InconclusiveContext),
        }
    }

    /// True when the dimension rests on a user declaration.
    pub fn is_conditional(&self) -> bool {
        matches!(self.left, InjDim::UserDeclared(_)) || matches!(self.right, InjDim::UserDeclared(_))
    }

    pub fn is_gorenstein(&self) -> bool {
        self.d().is_ok()
    }
}

/// Smallest `n ≤ cap` with `Ext^{n+1}(A/rad, A) = 0`.
fn one_side<F: Field>(a: &Arc<Algebra<F>>, cap: usize, limits: &Limits) -> Result<InjDim> {
    check_characteristic(a)?;
    let radical = trace_form(a).kernel();
    let reg = regular_module(a);
    let (top, _, _) = reg.quotient(&radical)?;
    for n in 0..=cap {
        let e = ext_range(&top, &reg, n + 1..=n + 1, limits)?;
        if e[0].dim == 0 {
            return Ok(InjDim::Computed(n));
        }
    }
    Ok(InjDim::Inconclusive { cap })
}

/// `injective_dimension(a)` on both sides, probing degrees up to `cap + 1`.
pub fn injective_dimension<F: Field>(a: &Arc<Algebra<F>>, cap: usize, limits: &Limits) -> Result<GorensteinContext<F>> {
    let op = Arc::new(opposite(a));
    let left = one_side(a, cap, limits)?;
    let right = one_side(&op, cap, limits)?;
    Ok(GorensteinContext { algebra: a.clone(), opposite: op, left, right, limits: *limits })
}

/// Outcome of the `Ext^i(g, A) = 0` test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerpVerdict {
    pub gproj: bool,
    /// `dim Ext^i(g, A)` for `i = 1..=d`.
    pub ext_dims: Vec<usize>,
    pub conditional: bool,
}

/// `is_gproj_perp(g)`: `Ext^i(g, A) = 0` for `1 ≤ i ≤ d`.
pub fn is_gproj_perp<F: Field>(g: &Module<F>, ctx: &GorensteinContext<F>) -> Result<PerpVerdict> {
    let d = ctx.d()?;
    if !same_algebra(g.algebra(), &ctx.algebra) {
        return Err(Error::AlgebraMismatch);
    }
    let conditional = ctx.is_conditional();
    if d == 0 || g.dim() == 0 {
        return Ok(PerpVerdict { gproj: true, ext_dims: alloc::vec![0; d], conditional });
    }
    let ext = ext_range(g, &regular_module(g.algebra()), 1..=d, &ctx.limits)?;
    let ext_dims: Vec<usize> = ext.iter().map(|e| e.dim).collect();
    Ok(PerpVerdict { gproj: ext_dims.iter().all(|&e| e == 0), ext_dims, conditional })
}

/// The sub-verdicts of the triple criterion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleVerdict {
    pub gproj: bool,
    pub phi_monic: bool,
    pub x: PerpVerdict,
    pub coker_phi: PerpVerdict,
    pub y: PerpVerdict,
    /// The consequence `M ⊗ Y` Gorenstein-projective.
    pub tensor: PerpVerdict,
    /// `_A M` and `M_B` projective; the criterion assumes both.
    pub m_projective: (bool, bool),
}

/// Whether `M` is projective as a left `A`- and as a right `B`-module.
pub fn m_projective<F: Field>(ctx: &Triangular<F>) -> (bool, bool) {
    (is_projective(&ctx.m.left_module()).projective, is_projective(&ctx.m.right_module()).projective)
}

/// `is_gproj_triple(t)`: `φ` monic, `X` and `Coker φ` Gorenstein-projective
/// over `A`, `Y` Gorenstein-projective over `B`.
pub fn is_gproj_triple<F: Field>(
    t: &Triple<F>,
    ga: &GorensteinContext<F>,
    gb: &GorensteinContext<F>,
) -> Result<TripleVerdict> {
    let phi_monic = t.phi().is_injective();
    let x = is_gproj_perp(t.x(), ga)?;
    let coker_phi = is_gproj_perp(&cokernel_module(t.phi()).module, ga)?;
    let y = is_gproj_perp(t.y(), gb)?;
    let tensor = is_gproj_perp(&t.tensor().module, ga)?;
    let gproj = phi_monic && x.gproj && coker_phi.gproj && y.gproj;
    Ok(TripleVerdict { gproj, phi_monic, x, coker_phi, y, tensor, m_projective: m_projective(t.context()) })
}

/// `Hom_C(n, C)` as a left module over `C^op`.
#[derive(Debug, Clone)]
pub struct DualModule<F: Field> {
    pub module: Module<F>,
    pub space: HomSpace<F>,
}

/// `n* = Hom_C(n, C)` with `(f·c)(x) = f(x)c`, over `op` = `C^op`.
pub fn dual_module<F: Field>(n: &Module<F>, op: &Arc<Algebra<F>>) -> Result<DualModule<F>> {
    let c = n.algebra();
    if c.dim() != op.dim() {
        return Err(Error::AlgebraMismatch);
    }
    let f = n.field();
    let space = hom_space(n, &regular_module(c))?;
    let basis = space.basis();
    let action = (0..c.dim())
        .map(|i| {
            let r = c.right_mult_matrix(&c.basis_element(i));
            let cols: Vec<Vec<F::Elem>> = basis
                .iter()
                .map(|b| space.coords(&r.mul(b.matrix())).expect("right multiplication is left linear"))
                .collect();
            Matrix::from_columns(f, space.dim(), &cols)
        })
        .collect();
    let module = Module::new(op.clone(), action)?;
    Ok(DualModule { module, space })
}

/// `g*` together with the evaluation map `g → g**`.
#[derive(Debug, Clone)]
pub struct Duality<F: Field> {
    pub dual: DualModule<F>,
    pub double_dual: DualModule<F>,
    pub evaluation: ModuleMap<F>,
}

impl<F: Field> Duality<F> {
    pub fn is_reflexive(&self) -> bool {
        self.evaluation.is_isomorphism()
    }
}

/// `dual_and_reflexivity(g)`: `ev(x)(f) = f(x)`.
pub fn dual_and_reflexivity<F: Field>(g: &Module<F>, ctx: &GorensteinContext<F>) -> Result<Duality<F>> {
    if !same_algebra(g.algebra(), &ctx.algebra) {
        return Err(Error::AlgebraMismatch);
    }
    let f = g.field();
    let dual = dual_module(g, &ctx.opposite)?;
    let double_dual = dual_module(&dual.module, g.algebra())?;
    let basis = dual.space.basis();
    let n = g.algebra().dim();
    let mut cols = Vec::with_capacity(g.dim());
    for j in 0..g.dim() {
        // column k of ev(e_j) is f_k(e_j)
        let vals: Vec<Vec<F::Elem>> = basis.iter().map(|b| b.matrix().col(j)).collect();
        let m = Matrix::from_columns(f, n, &vals);
        cols.push(double_dual.space.coords(&m).ok_or(Error::ReflexivityFailure)?);
    }
    let mat = Matrix::from_columns(f, double_dual.space.dim(), &cols);
    let evaluation = ModuleMap::new(g.clone(), double_dual.module.clone(), mat)?;
    Ok(Duality { dual, double_dual, evaluation })
}

/// `0 → g →σ P → C → 0` with `P` free and `C` Gorenstein-projective.
#[derive(Debug, Clone)]
pub struct Embedding<F: Field> {
    pub sigma: ModuleMap<F>,
    pub cokernel: Cokernel<F>,
    pub certificate: PerpVerdict,
}

impl<F: Field> Embedding<F> {
    pub fn source(&self) -> &Module<F> {
        self.sigma.source()
    }
    pub fn free(&self) -> &Module<F> {
        self.sigma.target()
    }
    pub fn rank(&self) -> usize {
        self.free().dim() / self.free().algebra().dim().max(1)
    }
    /// `σ` injective, `C = Coker σ` and `π σ = 0`.
    pub fn is_exact(&self) -> bool {
        let p = self.cokernel.projection.matrix();
        self.sigma.is_injective()
            && p.mul(self.sigma.matrix()).is_zero()
            && p.rank() == self.free().dim() - self.sigma.rank()
    }
}

/// `cosyzygy_embed(g)`: `σ = (f_1, …, f_r): g → A^r` for generators `f_t`
/// of `g*`. This is the dual of the free cover `A^r ↠ g*` composed with
/// `g ≅ g**`.
pub fn cosyzygy_embed<F: Field>(g: &Module<F>, ctx: &GorensteinContext<F>) -> Result<Embedding<F>> {
    let dual = dual_module(g, &ctx.opposite)?;
    let gens = greedy_generators(&dual.module);
    cosyzygy_embed_with(g, ctx, &dual, &gens)
}

/// Like [`cosyzygy_embed`] on caller-chosen generators of `g*`, given in
/// the coordinates of `dual.space`.
pub fn cosyzygy_embed_with<F: Field>(
    g: &Module<F>,
    ctx: &GorensteinContext<F>,
    dual: &DualModule<F>,
    generators: &[Vec<F::Elem>],
) -> Result<Embedding<F>> {
    if !is_gproj_perp(g, ctx)?.gproj {
        return Err(Error::NotGorensteinProjective);
    }
    let a = g.algebra();
    let f = g.field();
    let n = a.dim();
    let spanned = generators.iter().fold(Subspace::zero(f, dual.module.dim()), |s, v| {
        s.sum(&dual.module.generated_subspace(core::slice::from_ref(v)))
    });
    if spanned.dim() != dual.module.dim() {
        return Err(Error::Validation("vectors do not generate the dual".into()));
    }
    let free = free_module(a, generators.len());
    let mut sigma = Matrix::zeros(f, generators.len() * n, g.dim());
    for (t, c) in generators.iter().enumerate() {
        sigma.set_block(t * n, 0, dual.space.combine(c).matrix());
    }
    let sigma = ModuleMap::new(g.clone(), free, sigma)?;
    if !sigma.is_injective() {
        return Err(Error::ReflexivityFailure);
    }
    let cokernel = cokernel_module(&sigma);
    let certificate = is_gproj_perp(&cokernel.module, ctx)?;
    if !certificate.gproj {
        return Err(Error::ReflexivityFailure);
    }
    Ok(Embedding { sigma, cokernel, certificate })
}

/// One step `Z_i ↪ E_i ↠ Z_{i+1}` of a coresolution.
#[derive(Debug, Clone)]
pub struct CoresolutionStage<F: Field> {
    /// `E_i = (P ⊕ M⊗Q, Q)` with structure map `(0, Id)`.
    pub term: Triple<F>,
    pub embedding: TripleMap<F>,
    pub projection: TripleMap<F>,
    pub p_rank: usize,
    pub q_rank: usize,
}

/// `0 → t → E_0 → E_1 → …` by projective triples.
#[derive(Debug, Clone)]
pub struct LambdaCoresolution<F: Field> {
    pub triple: Triple<F>,
    pub stages: Vec<CoresolutionStage<F>>,
    /// `E_i → E_{i+1}`.
    pub differentials: Vec<TripleMap<F>>,
    /// The coresolution reached a zero cokernel.
    pub complete: bool,
    pub exact: bool,
    /// Every stage restricts to the chosen coresolutions of `Y` and of
    /// `Coker φ`.
    pub commutes: bool,
}

impl<F: Field> LambdaCoresolution<F> {
    pub fn len(&self) -> usize {
        self.stages.len()
    }
    pub fn is_empty(&self) -> bool {
        self.stages.is_empty()
    }
}

/// Embeds a Gorenstein-projective `z` into `(P ⊕ M⊗Q, Q)`, gluing the
/// embeddings of `Y` and `Coker φ`.
fn embed_stage<F: Field>(
    z: &Triple<F>,
    ga: &GorensteinContext<F>,
    gb: &GorensteinContext<F>,
) -> Result<(CoresolutionStage<F>, bool)> {
    let ctx = z.context();
    let ey = cosyzygy_embed(z.y(), gb)?;
    let coker = cokernel_module(z.phi());
    let ec = cosyzygy_embed(&coker.module, ga)?;
    let q = ey.free().clone();
    let tq = Arc::new(tensor_over(&ctx.m, &q)?);
    let sum = direct_sum(&ctx.a, &[ec.free().clone(), tq.module.clone()])?;
    let phi_e = sum.injections[1].matrix().clone();
    let term = Triple::new(ctx, sum.module.clone(), q.clone(), phi_e)?;
    // h φ = 1 ⊗ σ_Y, solvable since M ⊗ Q is projective and Coker φ is
    // Gorenstein-projective
    let one_sigma = tensor_map(&ctx.m, z.tensor(), &tq, &ey.sigma);
    let h = hom_space(z.x(), &tq.module)?
        .solve(None, Some(z.phi().matrix()), one_sigma.matrix())
        .ok_or(Error::LiftingFailure("extension of 1 ⊗ σ along φ"))?;
    let top = ec.sigma.matrix().mul(coker.projection.matrix());
    let f = top.vstack(h.matrix());
    let embedding = TripleMap::new(z, &term, f, ey.sigma.matrix().clone())?;
    let commutes = h.matrix().mul(z.phi().matrix()) == *one_sigma.matrix()
        && embedding.f().matrix().block(0, 0, ec.free().dim(), z.x().dim()) == top;
    let c = triple_cokernel(&embedding)?;
    let stage = CoresolutionStage {
        term,
        embedding,
        projection: c.projection,
        p_rank: ec.rank(),
        q_rank: ey.rank(),
    };
    Ok((stage, commutes))
}

/// `lambda_coresolution(t, length)`: at most `length + 1` terms.
///
/// A projective `t` gets the one-term coresolution `t = t`.
pub fn lambda_coresolution<F: Field>(
    t: &Triple<F>,
    ga: &GorensteinContext<F>,
    gb: &GorensteinContext<F>,
    length: usize,
) -> Result<LambdaCoresolution<F>> {
    if !is_gproj_triple(t, ga, gb)?.gproj {
        return Err(Error::NotGorensteinProjective);
    }
    let mut out = LambdaCoresolution {
        triple: t.clone(),
        stages: Vec::new(),
        differentials: Vec::new(),
        complete: t.is_zero(),
        exact: true,
        commutes: true,
    };
    if t.is_zero() {
        return Ok(out);
    }
    if is_projective(&from_triple(t)).projective {
        let id = TripleMap::identity(t);
        let zero = Triple::zero(t.context());
        let projection = TripleMap::zero(t, &zero);
        out.stages.push(CoresolutionStage { term: t.clone(), embedding: id, projection, p_rank: 0, q_rank: 0 });
        out.complete = true;
        return Ok(out);
    }
    let mut z = t.clone();
    for _ in 0..=length {
        let (stage, commutes) = embed_stage(&z, ga, gb)?;
        out.commutes &= commutes;
        let next = stage.projection.target().clone();
        if let Some(prev) = out.stages.last() {
            out.differentials.push(stage.embedding.compose(&prev.projection)?);
        }
        out.stages.push(stage);
        if next.is_zero() {
            out.complete = true;
            break;
        }
        z = next;
    }
    out.exact = coresolution_is_exact(&out);
    Ok(out)
}

fn coresolution_is_exact<F: Field>(c: &LambdaCoresolution<F>) -> bool {
    let Some(first) = c.stages.first() else {
        return true;
    };
    if !first.embedding.is_injective() {
        return false;
    }
    let mut maps: Vec<Matrix<F>> = alloc::vec![first.embedding.total_matrix()];
    maps.extend(c.differentials.iter().map(|d| d.total_matrix()));
    let chain_ok = maps.windows(2).all(|w| {
        let (d0, d1) = (&w[0], &w[1]);
        d1.mul(d0).is_zero() && d0.image() == d1.kernel()
    });
    // the last stage maps onto its cokernel
    let last = c.stages.last().expect("nonempty");
    chain_ok && last.projection.is_surjective() && last.projection.total_matrix().kernel() == maps.last().unwrap().image()
}

#[cfg(test)]
mod tests;
