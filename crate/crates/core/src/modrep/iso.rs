use rand_core::RngCore;

use super::{hom_space, Module, ModuleMap};
use crate::exactlin::Field;

/// Random attempts made by default before giving up.
pub const DEFAULT_ISO_BUDGET: usize = 64;

#[derive(Debug, Clone)]
pub enum IsoVerdict<F: Field> {
    Isomorphic(ModuleMap<F>),
    NotIsomorphic,
    Inconclusive,
}

impl<F: Field> IsoVerdict<F> {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoVerdict::Isomorphic(_))
    }
}

/// Looks for an isomorphism `x → y` among random combinations of a basis
/// of `Hom(x, y)`.
///
/// Dimension mismatches of `x`, `y`, `Hom(x, y)`, `Hom(y, x)` and the
/// endomorphism rings are certificates of non-isomorphism.
pub fn find_isomorphism<F: Field, R: RngCore + ?Sized>(
    x: &Module<F>,
    y: &Module<F>,
    rng: &mut R,
    budget: usize,
) -> IsoVerdict<F> {
    if !x.same_algebra(y) || x.dim() != y.dim() {
        return IsoVerdict::NotIsomorphic;
    }
    let (Ok(hxy), Ok(hyx), Ok(hxx), Ok(hyy)) = (hom_space(x, y), hom_space(y, x), hom_space(x, x), hom_space(y, y))
    else {
        return IsoVerdict::NotIsomorphic;
    };
    let d = hxx.dim();
    if hxy.dim() != d || hyx.dim() != d || hyy.dim() != d {
        return IsoVerdict::NotIsomorphic;
    }
    if x.dim() == 0 {
        return IsoVerdict::Isomorphic(ModuleMap::zero(x, y));
    }
    let basis = hxy.basis();
    // try the basis elements first, they are often already invertible
    for b in &basis {
        if b.is_isomorphism() {
            return IsoVerdict::Isomorphic(b.clone());
        }
    }
    for _ in 0..budget {
        let m = hxy.random(rng);
        if m.is_isomorphism() {
            return IsoVerdict::Isomorphic(m);
        }
    }
    IsoVerdict::Inconclusive
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{regular_module, Algebra};
    use crate::exactlin::{Matrix, Rationals};
    use crate::modrep::seeded_rng;
    use alloc::sync::Arc;
    use alloc::vec;

    #[test]
    fn regular_versus_simple() {
        let q = Rationals;
        let d = Arc::new(Algebra::truncated_polynomial(&q, 2));
        let r = regular_module(&d);
        let mut rng = seeded_rng(0);
        assert!(find_isomorphism(&r, &r, &mut rng, 8).is_isomorphic());
        let k = Module::new(d.clone(), vec![Matrix::identity(&q, 1), Matrix::zeros(&q, 1, 1)]).unwrap();
        let kk = crate::modrep::direct_sum(&d, &[k.clone(), k.clone()]).unwrap().module;
        assert!(matches!(find_isomorphism(&r, &kk, &mut rng, 8), IsoVerdict::NotIsomorphic));
        // a change of basis is found
        let p = Matrix::from_i64(&q, 2, 2, &[1, 1, 0, 1]);
        let pinv = p.inverse().unwrap();
        let conj: vec::Vec<_> = r.actions().iter().map(|l| p.mul(l).mul(&pinv)).collect();
        let r2 = Module::new(d.clone(), conj).unwrap();
        match find_isomorphism(&r, &r2, &mut rng, 8) {
            IsoVerdict::Isomorphic(m) => assert!(m.intertwines()),
            v => panic!("{v:?}"),
        }
    }
}
