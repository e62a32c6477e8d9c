use alloc::vec::Vec;
use core::fmt;

use super::functors::{hom, FunctorTag, Functors, HomSp, Mor, Obj};
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix};
use crate::modrep::{tensor_map, HomModule, ModuleMap};
use crate::triplecat::{alpha_apply, TripleMap};

const BAD: Error = Error::DomainMismatch("morphism does not match the adjunction");

/// The six adjoint pairs `F ⊣ G`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AdjointPair {
    /// `(i^*, i_*)`
    IStar,
    /// `(i_*, i^!)`
    IShriek,
    /// `(j_!, j^*)`
    JShriek,
    /// `(j^*, j_*)`
    JStar,
    /// `(j_*, j_?)`
    JQuestion,
    /// `(i^!, i_?)`
    IQuestion,
}

impl AdjointPair {
    pub const ALL: [AdjointPair; 6] = [
        AdjointPair::IStar,
        AdjointPair::IShriek,
        AdjointPair::JShriek,
        AdjointPair::JStar,
        AdjointPair::JQuestion,
        AdjointPair::IQuestion,
    ];

    /// The four pairs of the recollement itself.
    pub const RECOLLEMENT: [AdjointPair; 4] =
        [AdjointPair::IStar, AdjointPair::IShriek, AdjointPair::JShriek, AdjointPair::JStar];

    pub fn left(&self) -> FunctorTag {
        match self {
            AdjointPair::IStar => FunctorTag::IStarUpper,
            AdjointPair::IShriek => FunctorTag::IStarLower,
            AdjointPair::JShriek => FunctorTag::JLowerShriek,
            AdjointPair::JStar => FunctorTag::JStarUpper,
            AdjointPair::JQuestion => FunctorTag::JStarLower,
            AdjointPair::IQuestion => FunctorTag::IShriek,
        }
    }

    pub fn right(&self) -> FunctorTag {
        match self {
            AdjointPair::IStar => FunctorTag::IStarLower,
            AdjointPair::IShriek => FunctorTag::IShriek,
            AdjointPair::JShriek => FunctorTag::JStarUpper,
            AdjointPair::JStar => FunctorTag::JStarLower,
            AdjointPair::JQuestion => FunctorTag::JQuestion,
            AdjointPair::IQuestion => FunctorTag::IQuestion,
        }
    }

    /// Short label such as `i^*-i_*`.
    pub fn label(&self) -> &'static str {
        match self {
            AdjointPair::IStar => "i_star_upper-i_star_lower",
            AdjointPair::IShriek => "i_star_lower-i_shriek",
            AdjointPair::JShriek => "j_lower_shriek-j_star_upper",
            AdjointPair::JStar => "j_star_upper-j_star_lower",
            AdjointPair::JQuestion => "j_star_lower-j_question",
            AdjointPair::IQuestion => "i_shriek-i_question",
        }
    }

    /// The hom-set bijection in conventional notation.
    pub fn statement(&self) -> &'static str {
        match self {
            AdjointPair::IStar => "Hom_A(i^*T, X') ≅ Hom_Λ(T, i_*X') via f ↦ (fπ, 0)",
            AdjointPair::IShriek => "Hom_Λ(i_*X, T) ≅ Hom_A(X, i^!T) via (f, 0) ↦ f",
            AdjointPair::JShriek => "Hom_Λ(j_!Y, T) ≅ Hom_B(Y, j^*T) via (φ(Id⊗g), g) ↦ g",
            AdjointPair::JStar => "Hom_B(j^*T, Y') ≅ Hom_Λ(T, j_*Y') via g ↦ (0, g)",
            AdjointPair::JQuestion => "Hom_Λ(j_*Y, T) ≅ Hom_B(Y, j_?T) via (0, g) ↦ g",
            AdjointPair::IQuestion => "Hom_A(i^!T, X') ≅ Hom_Λ(T, i_?X') via f ↦ (f, α(fφ))",
        }
    }
}

impl fmt::Display for AdjointPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.left().symbol(), self.right().symbol())
    }
}

/// `θ: Hom(Fc, d) → Hom(c, Gd)` for one pair of objects, with its inverse.
#[derive(Debug, Clone)]
pub struct Adjunction<F: Field> {
    pub pair: AdjointPair,
    pub c: Obj<F>,
    pub d: Obj<F>,
    pub fc: Obj<F>,
    pub gd: Obj<F>,
    /// `Hom(Fc, d)`.
    pub left: HomSp<F>,
    /// `Hom(c, Gd)`.
    pub right: HomSp<F>,
    functors: Functors<F>,
    /// `Hom_A(M, X')` behind `i_?X'`, for the pair `(i^!, i_?)`.
    coinduced: Option<alloc::sync::Arc<HomModule<F>>>,
}

/// Matrices of `θ` and `θ⁻¹` in the hom-space bases.
#[derive(Debug, Clone)]
pub struct AdjunctionIso<F: Field> {
    pub forward: Matrix<F>,
    pub inverse: Matrix<F>,
}

impl<F: Field> AdjunctionIso<F> {
    pub fn is_bijection(&self) -> bool {
        self.forward.mul(&self.inverse).is_identity() && self.inverse.mul(&self.forward).is_identity()
    }
}

impl<F: Field> Adjunction<F> {
    pub fn new(functors: &Functors<F>, pair: AdjointPair, c: &Obj<F>, d: &Obj<F>) -> Result<Self> {
        let fc = functors.apply(pair.left(), c)?;
        let (gd, coinduced) = match (pair, d) {
            (AdjointPair::IQuestion, Obj::A(x)) => {
                let ci = functors.i_question(x)?;
                (Obj::Lambda(ci.triple), Some(ci.hom))
            }
            _ => (functors.apply(pair.right(), d)?, None),
        };
        let left = hom(&fc, d)?;
        let right = hom(c, &gd)?;
        Ok(Adjunction {
            pair,
            c: c.clone(),
            d: d.clone(),
            fc,
            gd,
            left,
            right,
            functors: functors.clone(),
            coinduced,
        })
    }

    fn field(&self) -> &F {
        self.functors.ctx.field()
    }

    /// `θ(h)` for `h: Fc → d`.
    pub fn forward(&self, h: &Mor<F>) -> Result<Mor<F>> {
        let fld = self.field();
        Ok(match (self.pair, h) {
            (AdjointPair::IStar, Mor::A(f)) => {
                let t = self.c.as_triple().ok_or(BAD)?;
                let gd = self.gd.as_triple().ok_or(BAD)?;
                let pi = self.functors.coker_phi(t).projection;
                let y = Matrix::zeros(fld, 0, t.y().dim());
                Mor::Lambda(TripleMap::new_unchecked(t, gd, f.matrix().mul(pi.matrix()), y))
            }
            (AdjointPair::IShriek, Mor::Lambda(tm)) => Mor::A(tm.f().clone()),
            (AdjointPair::JShriek, Mor::Lambda(tm)) => Mor::B(tm.g().clone()),
            (AdjointPair::JStar, Mor::B(g)) => {
                let t = self.c.as_triple().ok_or(BAD)?;
                let gd = self.gd.as_triple().ok_or(BAD)?;
                let x = Matrix::zeros(fld, 0, t.x().dim());
                Mor::Lambda(TripleMap::new_unchecked(t, gd, x, g.matrix().clone()))
            }
            (AdjointPair::JQuestion, Mor::Lambda(tm)) => {
                let t = self.d.as_triple().ok_or(BAD)?;
                let k = self.functors.j_question(t)?;
                let y = self.c.as_module().ok_or(BAD)?;
                let cols = (0..y.dim())
                    .map(|j| k.kernel.coords(&tm.g().matrix().col(j)).ok_or(Error::Validation(
                        "image does not lie in Ker α(φ)".into(),
                    )))
                    .collect::<Result<Vec<_>>>()?;
                let m = Matrix::from_columns(fld, k.module.dim(), &cols);
                Mor::B(ModuleMap::new_unchecked(y.clone(), k.module, m))
            }
            (AdjointPair::IQuestion, Mor::A(f)) => {
                let t = self.c.as_triple().ok_or(BAD)?;
                let gd = self.gd.as_triple().ok_or(BAD)?;
                let hm = self.coinduced.as_ref().ok_or(BAD)?;
                let g = alpha_apply(t.tensor(), hm, &f.matrix().mul(t.phi().matrix()));
                Mor::Lambda(TripleMap::new_unchecked(t, gd, f.matrix().clone(), g))
            }
            _ => return Err(BAD),
        })
    }

    /// `θ⁻¹(k)` for `k: c → Gd`.
    pub fn inverse(&self, k: &Mor<F>) -> Result<Mor<F>> {
        let fld = self.field();
        Ok(match (self.pair, k) {
            (AdjointPair::IStar, Mor::Lambda(tm)) => {
                let t = self.c.as_triple().ok_or(BAD)?;
                let ck = self.functors.coker_phi(t);
                let x = self.d.as_module().ok_or(BAD)?;
                Mor::A(ModuleMap::new_unchecked(ck.module, x.clone(), tm.f().matrix().mul(&ck.lift)))
            }
            (AdjointPair::IShriek, Mor::A(f)) => {
                let fc = self.fc.as_triple().ok_or(BAD)?;
                let t = self.d.as_triple().ok_or(BAD)?;
                let g = Matrix::zeros(fld, t.y().dim(), 0);
                Mor::Lambda(TripleMap::new_unchecked(fc, t, f.matrix().clone(), g))
            }
            (AdjointPair::JShriek, Mor::B(g)) => {
                let fc = self.fc.as_triple().ok_or(BAD)?;
                let t = self.d.as_triple().ok_or(BAD)?;
                let tg = tensor_map(&self.functors.ctx.m, fc.tensor(), t.tensor(), g);
                let f = t.phi().matrix().mul(tg.matrix());
                Mor::Lambda(TripleMap::new_unchecked(fc, t, f, g.matrix().clone()))
            }
            (AdjointPair::JStar, Mor::Lambda(tm)) => {
                let t = self.c.as_triple().ok_or(BAD)?;
                let y = self.d.as_module().ok_or(BAD)?;
                Mor::B(ModuleMap::new_unchecked(t.y().clone(), y.clone(), tm.g().matrix().clone()))
            }
            (AdjointPair::JQuestion, Mor::B(h)) => {
                let fc = self.fc.as_triple().ok_or(BAD)?;
                let t = self.d.as_triple().ok_or(BAD)?;
                let kq = self.functors.j_question(t)?;
                let g = kq.inclusion.matrix().mul(h.matrix());
                Mor::Lambda(TripleMap::new_unchecked(fc, t, Matrix::zeros(fld, t.x().dim(), 0), g))
            }
            (AdjointPair::IQuestion, Mor::Lambda(tm)) => {
                let t = self.c.as_triple().ok_or(BAD)?;
                let x = self.d.as_module().ok_or(BAD)?;
                Mor::A(ModuleMap::new_unchecked(t.x().clone(), x.clone(), tm.f().matrix().clone()))
            }
            _ => return Err(BAD),
        })
    }

    /// `adjunction_iso(pair, c, d)`: matrices of `θ` and `θ⁻¹`.
    ///
    /// Fails when an image is not a morphism of the expected hom space.
    pub fn iso(&self) -> Result<AdjunctionIso<F>> {
        let fld = self.field();
        let fwd = self
            .left
            .basis()
            .iter()
            .map(|b| {
                let k = self.forward(b)?;
                self.right.coords(&k).ok_or(Error::Validation("θ(h) is not a morphism".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let inv = self
            .right
            .basis()
            .iter()
            .map(|b| {
                let h = self.inverse(b)?;
                self.left.coords(&h).ok_or(Error::Validation("θ⁻¹(k) is not a morphism".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(AdjunctionIso {
            forward: Matrix::from_columns(fld, self.right.dim(), &fwd),
            inverse: Matrix::from_columns(fld, self.left.dim(), &inv),
        })
    }
}

/// The unit `η_c = θ(id_{Fc}): c → GFc`.
pub fn unit<F: Field>(functors: &Functors<F>, pair: AdjointPair, c: &Obj<F>) -> Result<Mor<F>> {
    let fc = functors.apply(pair.left(), c)?;
    let adj = Adjunction::new(functors, pair, c, &fc)?;
    adj.forward(&Mor::identity(&fc))
}

/// The counit `ε_d = θ⁻¹(id_{Gd}): FGd → d`.
pub fn counit<F: Field>(functors: &Functors<F>, pair: AdjointPair, d: &Obj<F>) -> Result<Mor<F>> {
    let gd = functors.apply(pair.right(), d)?;
    let adj = Adjunction::new(functors, pair, &gd, d)?;
    adj.inverse(&Mor::identity(&adj.gd))
}

/// Outcome of the two triangle identities at a pair of objects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TriangleIdentities {
    /// `G(ε_d) ∘ η_{Gd} = id_{Gd}`
    pub right: bool,
    /// `ε_{Fc} ∘ F(η_c) = id_{Fc}`
    pub left: bool,
}

pub fn triangle_identities<F: Field>(
    functors: &Functors<F>,
    pair: AdjointPair,
    c: &Obj<F>,
    d: &Obj<F>,
) -> Result<TriangleIdentities> {
    let gd = functors.apply(pair.right(), d)?;
    let eta_gd = unit(functors, pair, &gd)?;
    let g_eps = functors.apply_map(pair.right(), &counit(functors, pair, d)?)?;
    let right = g_eps.compose(&eta_gd)?.is_identity();
    let fc = functors.apply(pair.left(), c)?;
    let f_eta = functors.apply_map(pair.left(), &unit(functors, pair, c)?)?;
    let eps_fc = counit(functors, pair, &fc)?;
    let left = eps_fc.compose(&f_eta)?.is_identity();
    Ok(TriangleIdentities { right, left })
}

/// Naturality of `θ`: `θ(v ∘ h ∘ F(u)) = G(v) ∘ θ(h) ∘ u` for every basis
/// element `h` of `Hom(Fc, d)`, with `u: c' → c` and `v: d → d'`.
pub fn naturality<F: Field>(
    functors: &Functors<F>,
    pair: AdjointPair,
    u: &Mor<F>,
    v: &Mor<F>,
) -> Result<bool> {
    let (c1, c) = (u.source(), u.target());
    let (d, d1) = (v.source(), v.target());
    let adj = Adjunction::new(functors, pair, &c, &d)?;
    let adj1 = Adjunction::new(functors, pair, &c1, &d1)?;
    let fu = functors.apply_map(pair.left(), u)?;
    let gv = functors.apply_map(pair.right(), v)?;
    for h in adj.left.basis() {
        let lhs = adj1.forward(&v.compose(&h)?.compose(&fu)?)?;
        let rhs = gv.compose(&adj.forward(&h)?)?.compose(u)?;
        if lhs.total_matrix() != rhs.total_matrix() {
            return Ok(false);
        }
    }
    Ok(true)
}
