use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand_core::RngCore;

use crate::algebra::Triangular;
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix, Subspace};
use crate::modrep::{
    cokernel_module, hom_module_map, hom_space, tensor_map, tensor_over, Cokernel, HomModule, HomSpace, Module,
    ModuleMap,
};
use crate::triplecat::{alpha_apply, psi, triple_hom, Triple, TripleHomSpace, TripleMap};

/// The three categories `A`-mod, `B`-mod and `Λ`-mod.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Category {
    A,
    B,
    Lambda,
}

/// The eight functors between `A`-mod, `Λ`-mod and `B`-mod.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FunctorTag {
    /// `i^*(X, Y, φ) = Coker φ`
    IStarUpper,
    /// `i_*(X) = (X, 0, 0)`
    IStarLower,
    /// `i^!(X, Y, φ) = X`
    IShriek,
    /// `j_!(Y) = (M ⊗ Y, Y, Id)`
    JLowerShriek,
    /// `j^*(X, Y, φ) = Y`
    JStarUpper,
    /// `j_*(Y) = (0, Y, 0)`
    JStarLower,
    /// `j_?(X, Y, φ) = Ker α(φ)`
    JQuestion,
    /// `i_?(X) = (X, Hom_A(M, X), ψ_X)`
    IQuestion,
}

impl FunctorTag {
    pub const ALL: [FunctorTag; 8] = [
        FunctorTag::IStarUpper,
        FunctorTag::IStarLower,
        FunctorTag::IShriek,
        FunctorTag::JLowerShriek,
        FunctorTag::JStarUpper,
        FunctorTag::JStarLower,
        FunctorTag::JQuestion,
        FunctorTag::IQuestion,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            FunctorTag::IStarUpper => "i_star_upper",
            FunctorTag::IStarLower => "i_star_lower",
            FunctorTag::IShriek => "i_shriek",
            FunctorTag::JLowerShriek => "j_lower_shriek",
            FunctorTag::JStarUpper => "j_star_upper",
            FunctorTag::JStarLower => "j_star_lower",
            FunctorTag::JQuestion => "j_question",
            FunctorTag::IQuestion => "i_question",
        }
    }

    /// Conventional notation, e.g. `i^*`.
    pub fn symbol(&self) -> &'static str {
        match self {
            FunctorTag::IStarUpper => "i^*",
            FunctorTag::IStarLower => "i_*",
            FunctorTag::IShriek => "i^!",
            FunctorTag::JLowerShriek => "j_!",
            FunctorTag::JStarUpper => "j^*",
            FunctorTag::JStarLower => "j_*",
            FunctorTag::JQuestion => "j_?",
            FunctorTag::IQuestion => "i_?",
        }
    }

    pub fn domain(&self) -> Category {
        match self {
            FunctorTag::IStarUpper | FunctorTag::IShriek | FunctorTag::JStarUpper | FunctorTag::JQuestion => {
                Category::Lambda
            }
            FunctorTag::IStarLower | FunctorTag::IQuestion => Category::A,
            FunctorTag::JLowerShriek | FunctorTag::JStarLower => Category::B,
        }
    }

    pub fn codomain(&self) -> Category {
        match self {
            FunctorTag::IStarUpper | FunctorTag::IShriek => Category::A,
            FunctorTag::JStarUpper | FunctorTag::JQuestion => Category::B,
            _ => Category::Lambda,
        }
    }
}

impl fmt::Display for FunctorTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FunctorTag {
    type Err = String;

    fn from_str(s: &str) -> core::result::Result<Self, String> {
        let t = match s {
            "i_star_upper" | "i^*" => FunctorTag::IStarUpper,
            "i_star_lower" | "i_*" => FunctorTag::IStarLower,
            "i_shriek" | "i^!" => FunctorTag::IShriek,
            "j_lower_shriek" | "j_shriek" | "j_!" => FunctorTag::JLowerShriek,
            "j_star_upper" | "j^*" => FunctorTag::JStarUpper,
            "j_star_lower" | "j_*" => FunctorTag::JStarLower,
            "j_question" | "j_?" => FunctorTag::JQuestion,
            "i_question" | "i_?" => FunctorTag::IQuestion,
            _ => return Err(alloc::format!("unknown functor `{s}`")),
        };
        Ok(t)
    }
}

/// An object of one of the three categories.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obj<F: Field> {
    A(Module<F>),
    B(Module<F>),
    Lambda(Triple<F>),
}

impl<F: Field> Obj<F> {
    pub fn category(&self) -> Category {
        match self {
            Obj::A(_) => Category::A,
            Obj::B(_) => Category::B,
            Obj::Lambda(_) => Category::Lambda,
        }
    }
    pub fn dim(&self) -> usize {
        match self {
            Obj::A(m) | Obj::B(m) => m.dim(),
            Obj::Lambda(t) => t.dim(),
        }
    }
    pub fn as_module(&self) -> Option<&Module<F>> {
        match self {
            Obj::A(m) | Obj::B(m) => Some(m),
            Obj::Lambda(_) => None,
        }
    }
    pub fn as_triple(&self) -> Option<&Triple<F>> {
        match self {
            Obj::Lambda(t) => Some(t),
            _ => None,
        }
    }
}

/// A morphism of one of the three categories.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mor<F: Field> {
    A(ModuleMap<F>),
    B(ModuleMap<F>),
    Lambda(TripleMap<F>),
}

impl<F: Field> Mor<F> {
    pub fn category(&self) -> Category {
        match self {
            Mor::A(_) => Category::A,
            Mor::B(_) => Category::B,
            Mor::Lambda(_) => Category::Lambda,
        }
    }

    pub fn source(&self) -> Obj<F> {
        match self {
            Mor::A(m) => Obj::A(m.source().clone()),
            Mor::B(m) => Obj::B(m.source().clone()),
            Mor::Lambda(t) => Obj::Lambda(t.source().clone()),
        }
    }

    pub fn target(&self) -> Obj<F> {
        match self {
            Mor::A(m) => Obj::A(m.target().clone()),
            Mor::B(m) => Obj::B(m.target().clone()),
            Mor::Lambda(t) => Obj::Lambda(t.target().clone()),
        }
    }

    pub fn identity(o: &Obj<F>) -> Self {
        match o {
            Obj::A(m) => Mor::A(ModuleMap::identity(m)),
            Obj::B(m) => Mor::B(ModuleMap::identity(m)),
            Obj::Lambda(t) => Mor::Lambda(TripleMap::identity(t)),
        }
    }

    /// The underlying matrix; block diagonal `diag(f, g)` for triples.
    pub fn total_matrix(&self) -> Matrix<F> {
        match self {
            Mor::A(m) | Mor::B(m) => m.matrix().clone(),
            Mor::Lambda(t) => t.total_matrix(),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Mor<F>) -> Result<Self> {
        match (self, other) {
            (Mor::A(a), Mor::A(b)) => Ok(Mor::A(a.compose(b)?)),
            (Mor::B(a), Mor::B(b)) => Ok(Mor::B(a.compose(b)?)),
            (Mor::Lambda(a), Mor::Lambda(b)) => Ok(Mor::Lambda(a.compose(b)?)),
            _ => Err(Error::DomainMismatch("morphisms in different categories")),
        }
    }

    pub fn is_isomorphism(&self) -> bool {
        match self {
            Mor::A(m) | Mor::B(m) => m.is_isomorphism(),
            Mor::Lambda(t) => t.is_isomorphism(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.total_matrix().is_identity()
    }

    /// Whether this is a genuine morphism (linear, and compatible for triples).
    pub fn is_valid(&self) -> bool {
        match self {
            Mor::A(m) | Mor::B(m) => m.intertwines(),
            Mor::Lambda(t) => t.f().intertwines() && t.g().intertwines() && t.residual().is_zero(),
        }
    }
}

/// A hom space in one of the three categories.
#[derive(Debug, Clone)]
pub enum HomSp<F: Field> {
    A(HomSpace<F>),
    B(HomSpace<F>),
    Lambda(TripleHomSpace<F>),
}

impl<F: Field> HomSp<F> {
    pub fn dim(&self) -> usize {
        match self {
            HomSp::A(h) | HomSp::B(h) => h.dim(),
            HomSp::Lambda(h) => h.dim(),
        }
    }

    pub fn basis(&self) -> Vec<Mor<F>> {
        match self {
            HomSp::A(h) => h.basis().into_iter().map(Mor::A).collect(),
            HomSp::B(h) => h.basis().into_iter().map(Mor::B).collect(),
            HomSp::Lambda(h) => h.basis().into_iter().map(Mor::Lambda).collect(),
        }
    }

    pub fn coords(&self, m: &Mor<F>) -> Option<Vec<F::Elem>> {
        match (self, m) {
            (HomSp::A(h), Mor::A(x)) | (HomSp::B(h), Mor::B(x)) => h.coords(x.matrix()),
            (HomSp::Lambda(h), Mor::Lambda(t)) => h.coords(t),
            _ => None,
        }
    }

    pub fn random<R: RngCore + ?Sized>(&self, rng: &mut R) -> Mor<F> {
        match self {
            HomSp::A(h) => Mor::A(h.random(rng)),
            HomSp::B(h) => Mor::B(h.random(rng)),
            HomSp::Lambda(h) => Mor::Lambda(h.random(rng)),
        }
    }
}

pub fn hom<F: Field>(x: &Obj<F>, y: &Obj<F>) -> Result<HomSp<F>> {
    match (x, y) {
        (Obj::A(a), Obj::A(b)) => Ok(HomSp::A(hom_space(a, b)?)),
        (Obj::B(a), Obj::B(b)) => Ok(HomSp::B(hom_space(a, b)?)),
        (Obj::Lambda(s), Obj::Lambda(t)) => Ok(HomSp::Lambda(triple_hom(s, t)?)),
        _ => Err(Error::DomainMismatch("objects in different categories")),
    }
}

/// `j_?(T)` with the data needed for its morphism map.
#[derive(Debug, Clone)]
pub struct KernelOfAlpha<F: Field> {
    pub module: Module<F>,
    pub inclusion: ModuleMap<F>,
    pub kernel: Subspace<F>,
    /// `α(φ): Y → Hom_A(M, X)`.
    pub alpha_phi: Matrix<F>,
}

/// `i_?(X)` with its hom module.
#[derive(Debug, Clone)]
pub struct CoinducedTriple<F: Field> {
    pub triple: Triple<F>,
    pub hom: Arc<HomModule<F>>,
}

/// Evaluates the eight functors over one triangular context.
#[derive(Debug, Clone)]
pub struct Functors<F: Field> {
    pub ctx: Arc<Triangular<F>>,
}

impl<F: Field> Functors<F> {
    pub fn new(ctx: &Arc<Triangular<F>>) -> Self {
        Functors { ctx: ctx.clone() }
    }

    fn field(&self) -> &F {
        self.ctx.field()
    }

    /// `Coker φ` with projection and section.
    pub fn coker_phi(&self, t: &Triple<F>) -> Cokernel<F> {
        cokernel_module(t.phi())
    }

    pub fn i_star_lower(&self, x: &Module<F>) -> Triple<F> {
        let y = Module::zero(&self.ctx.b);
        Triple::new_unchecked(&self.ctx, x.clone(), y, Matrix::zeros(self.field(), x.dim(), 0))
            .expect("zero module is over B")
    }

    pub fn j_lower_shriek(&self, y: &Module<F>) -> Result<Triple<F>> {
        let t = tensor_over(&self.ctx.m, y)?;
        let n = t.module.dim();
        Triple::new_unchecked(&self.ctx, t.module, y.clone(), Matrix::identity(self.field(), n))
    }

    pub fn j_star_lower(&self, y: &Module<F>) -> Result<Triple<F>> {
        let x = Module::zero(&self.ctx.a);
        // φ: M ⊗ Y → 0
        let t = Arc::new(tensor_over(&self.ctx.m, y)?);
        let phi = Matrix::zeros(self.field(), 0, t.module.dim());
        Ok(Triple::from_parts(&self.ctx, x, y.clone(), t, phi))
    }

    pub fn j_question(&self, t: &Triple<F>) -> Result<KernelOfAlpha<F>> {
        let hom = crate::modrep::hom_module(&self.ctx.m, t.x())?;
        let alpha_phi = alpha_apply(t.tensor(), &hom, t.phi().matrix());
        let kernel = alpha_phi.kernel();
        let (module, inclusion) = t.y().submodule(&kernel)?;
        Ok(KernelOfAlpha { module, inclusion, kernel, alpha_phi })
    }

    pub fn i_question(&self, x: &Module<F>) -> Result<CoinducedTriple<F>> {
        let p = psi(&self.ctx, x)?;
        let triple = Triple::from_parts(&self.ctx, x.clone(), p.hom.module.clone(), p.tensor.clone(), p.map.matrix().clone());
        Ok(CoinducedTriple { triple, hom: p.hom })
    }

    fn expect_triple<'a>(&self, o: &'a Obj<F>) -> Result<&'a Triple<F>> {
        o.as_triple().ok_or(Error::DomainMismatch("expected a Λ-module"))
    }
    fn expect_a<'a>(&self, o: &'a Obj<F>) -> Result<&'a Module<F>> {
        match o {
            Obj::A(m) => Ok(m),
            _ => Err(Error::DomainMismatch("expected an A-module")),
        }
    }
    fn expect_b<'a>(&self, o: &'a Obj<F>) -> Result<&'a Module<F>> {
        match o {
            Obj::B(m) => Ok(m),
            _ => Err(Error::DomainMismatch("expected a B-module")),
        }
    }

    /// `apply(tag, object)`.
    pub fn apply(&self, tag: FunctorTag, o: &Obj<F>) -> Result<Obj<F>> {
        Ok(match tag {
            FunctorTag::IStarUpper => Obj::A(self.coker_phi(self.expect_triple(o)?).module),
            FunctorTag::IStarLower => Obj::Lambda(self.i_star_lower(self.expect_a(o)?)),
            FunctorTag::IShriek => Obj::A(self.expect_triple(o)?.x().clone()),
            FunctorTag::JLowerShriek => Obj::Lambda(self.j_lower_shriek(self.expect_b(o)?)?),
            FunctorTag::JStarUpper => Obj::B(self.expect_triple(o)?.y().clone()),
            FunctorTag::JStarLower => Obj::Lambda(self.j_star_lower(self.expect_b(o)?)?),
            FunctorTag::JQuestion => Obj::B(self.j_question(self.expect_triple(o)?)?.module),
            FunctorTag::IQuestion => Obj::Lambda(self.i_question(self.expect_a(o)?)?.triple),
        })
    }

    /// `apply_map(tag, morphism)`.
    pub fn apply_map(&self, tag: FunctorTag, m: &Mor<F>) -> Result<Mor<F>> {
        let fld = self.field();
        let triple_map = |m: &Mor<F>| -> Result<TripleMap<F>> {
            match m {
                Mor::Lambda(t) => Ok(t.clone()),
                _ => Err(Error::DomainMismatch("expected a Λ-morphism")),
            }
        };
        let module_map = |m: &Mor<F>, c: Category| -> Result<ModuleMap<F>> {
            match (m, c) {
                (Mor::A(x), Category::A) | (Mor::B(x), Category::B) => Ok(x.clone()),
                _ => Err(Error::DomainMismatch("morphism in the wrong category")),
            }
        };
        Ok(match tag {
            FunctorTag::IStarUpper => {
                let t = triple_map(m)?;
                let s = self.coker_phi(t.source());
                let d = self.coker_phi(t.target());
                let mat = d.projection.matrix().mul(t.f().matrix()).mul(&s.lift);
                Mor::A(ModuleMap::new_unchecked(s.module, d.module, mat))
            }
            FunctorTag::IStarLower => {
                let f = module_map(m, Category::A)?;
                let s = self.i_star_lower(f.source());
                let t = self.i_star_lower(f.target());
                Mor::Lambda(TripleMap::new_unchecked(&s, &t, f.matrix().clone(), Matrix::zeros(fld, 0, 0)))
            }
            FunctorTag::IShriek => Mor::A(triple_map(m)?.f().clone()),
            FunctorTag::JLowerShriek => {
                let g = module_map(m, Category::B)?;
                let s = self.j_lower_shriek(g.source())?;
                let t = self.j_lower_shriek(g.target())?;
                let tg = tensor_map(&self.ctx.m, s.tensor(), t.tensor(), &g);
                Mor::Lambda(TripleMap::new_unchecked(&s, &t, tg.matrix().clone(), g.matrix().clone()))
            }
            FunctorTag::JStarUpper => Mor::B(triple_map(m)?.g().clone()),
            FunctorTag::JStarLower => {
                let g = module_map(m, Category::B)?;
                let s = self.j_star_lower(g.source())?;
                let t = self.j_star_lower(g.target())?;
                Mor::Lambda(TripleMap::new_unchecked(&s, &t, Matrix::zeros(fld, 0, 0), g.matrix().clone()))
            }
            FunctorTag::JQuestion => {
                let t = triple_map(m)?;
                let s = self.j_question(t.source())?;
                let d = self.j_question(t.target())?;
                let cols = s
                    .kernel
                    .basis_vectors()
                    .iter()
                    .map(|v| {
                        d.kernel
                            .coords(&t.g().matrix().mul_vec(v))
                            .ok_or(Error::Validation("g does not preserve Ker α(φ)".to_string()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let mat = Matrix::from_columns(fld, d.module.dim(), &cols);
                Mor::B(ModuleMap::new_unchecked(s.module, d.module, mat))
            }
            FunctorTag::IQuestion => {
                let f = module_map(m, Category::A)?;
                let s = self.i_question(f.source())?;
                let t = self.i_question(f.target())?;
                let h = hom_module_map(&s.hom, &t.hom, &f);
                Mor::Lambda(TripleMap::new_unchecked(&s.triple, &t.triple, f.matrix().clone(), h.matrix().clone()))
            }
        })
    }
}
