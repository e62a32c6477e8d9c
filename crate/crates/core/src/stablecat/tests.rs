use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::algebra::{build_triangular, Algebra};
use crate::exactlin::{PrimeField, Rationals};
use crate::gorenstein::{injective_dimension, DEFAULT_INJDIM_CAP};
use crate::modrep::{direct_sum, seeded_rng, Bimodule, Limits};
use crate::report::{NoClock, Status};

fn f101() -> PrimeField {
    PrimeField::new(101).unwrap()
}

fn dual_numbers<F: Field>(f: &F) -> Arc<Algebra<F>> {
    Arc::new(Algebra::truncated_polynomial(f, 2))
}

fn t2<F: Field>(a: &Arc<Algebra<F>>) -> Arc<Triangular<F>> {
    Arc::new(build_triangular(a, a, &Bimodule::regular(a)).unwrap())
}

fn simple_k<F: Field>(a: &Arc<Algebra<F>>) -> Module<F> {
    let f = a.field();
    Module::new(a.clone(), vec![Matrix::identity(f, 1), Matrix::zeros(f, 1, 1)]).unwrap()
}

fn ctx_of<F: Field>(a: &Arc<Algebra<F>>) -> GorensteinContext<F> {
    injective_dimension(a, DEFAULT_INJDIM_CAP, &Limits::default()).unwrap()
}

fn stable_ctx<F: Field>(tri: &Arc<Triangular<F>>) -> StableContext<F> {
    StableContext::new(tri, ctx_of(&tri.a), ctx_of(&tri.b)).unwrap()
}

fn socle_triple<F: Field>(tri: &Arc<Triangular<F>>) -> Triple<F> {
    let phi = Matrix::from_i64(tri.field(), 2, 1, &[0, 1]);
    Triple::new(tri, regular_module(&tri.a), simple_k(&tri.b), phi).unwrap()
}

/// `(k ⊕ M ⊗ B, B, (0, Id))`, which is `i_*(k) ⊕ j_!(B)`.
fn split_sum<F: Field>(tri: &Arc<Triangular<F>>) -> Triple<F> {
    let fun = Functors::new(tri);
    let jb = fun.j_lower_shriek(&regular_module(&tri.b)).unwrap();
    let s = direct_sum(&tri.a, &[simple_k(&tri.a), jb.x().clone()]).unwrap();
    Triple::new(tri, s.module, jb.y().clone(), s.injections[1].matrix().mul(jb.phi().matrix())).unwrap()
}

#[test]
fn stable_homs_over_dual_numbers() {
    let a = dual_numbers(&f101());
    let ctx = ctx_of(&a);
    let k = StableObj::A(certify_module(&simple_k(&a), &ctx).unwrap());
    let s = stable_hom(&k, &k).unwrap();
    assert_eq!((s.hom_dim(), s.projective_dim(), s.dim()), (1, 0, 1));
    let kk = simple_k(&a);
    assert!(factors_through_projective(&ModuleMap::zero(&kk, &kk)).unwrap().is_some());
    assert!(factors_through_projective(&ModuleMap::identity(&kk)).unwrap().is_none());
    // k → A → k is zero, x·: A → A factors through A itself
    let reg = regular_module(&a);
    let x = reg.action(1).clone();
    let fac = factors_through_projective(&ModuleMap::new(reg.clone(), reg.clone(), x.clone()).unwrap()).unwrap().unwrap();
    assert_eq!(fac.cover.matrix().mul(fac.lift.matrix()), x);
    let r = StableObj::A(certify_module(&reg, &ctx).unwrap());
    assert_eq!(stable_hom(&r, &r).unwrap().dim(), 0);
    assert_eq!(stable_hom(&k, &r).unwrap().dim(), 0);
}

#[test]
fn certification_rejects_non_gproj() {
    let q = Rationals;
    let k = Arc::new(Algebra::ground(&q));
    let tri = t2(&k);
    let sc = stable_ctx(&tri);
    // S = (0, k, 0) is not Gorenstein-projective over T₂
    let s = Functors::new(&tri).j_star_lower(&regular_module(&k)).unwrap();
    assert_eq!(certify_triple(&s, &sc).unwrap_err(), Error::NotGorensteinProjective);
    assert!(certify_triple(&socle_like_t2(&tri), &sc).is_ok());
}

fn socle_like_t2(tri: &Arc<Triangular<Rationals>>) -> Triple<Rationals> {
    Functors::new(tri).j_lower_shriek(&regular_module(&tri.b)).unwrap()
}

#[test]
fn hereditary_stable_homs_vanish() {
    let q = Rationals;
    let k = Arc::new(Algebra::ground(&q));
    let tri = t2(&k);
    let sc = stable_ctx(&tri);
    let mut rng = seeded_rng(5);
    let samples = StableSamples::generate(&sc, vec![], 8, 0, &mut rng).unwrap();
    for x in &samples.triples {
        for y in &samples.triples {
            let s = stable_hom(&StableObj::Lambda(x.clone()), &StableObj::Lambda(y.clone())).unwrap();
            assert_eq!(s.dim(), 0);
        }
    }
}

#[test]
fn shift_of_k_is_k() {
    let a = dual_numbers(&f101());
    let ctx = ctx_of(&a);
    let k = certify_module(&simple_k(&a), &ctx).unwrap();
    let mut rng = seeded_rng(1);
    for p in [Presentation::Greedy, Presentation::Full] {
        let s = shift(&k, &ctx, p).unwrap();
        assert!(s.embedding.is_exact());
        let v = stable_iso_check(&StableObj::A(k.clone()), &StableObj::A(s.module.clone()), &mut rng, 8).unwrap();
        assert!(v.is_yes(), "{p:?}");
    }
    let r = certify_module(&regular_module(&a), &ctx).unwrap();
    let v = stable_iso_check(&StableObj::A(k.clone()), &StableObj::A(r), &mut rng, 8).unwrap();
    assert!(matches!(v, StableIsoVerdict::No { .. }));
}

#[test]
fn j_star_of_k_is_the_socle_triple() {
    let tri = t2(&dual_numbers(&f101()));
    let sc = stable_ctx(&tri);
    let k = certify_module(&simple_k(&tri.b), &sc.gb).unwrap();
    let js = stable_j_star(&sc, &k, Presentation::Greedy).unwrap();
    assert!(js.embedding.certificate.gproj);
    assert_eq!(js.embedding.rank(), 1);
    let soc = certify_triple(&socle_triple(&tri), &sc).unwrap();
    let mut rng = seeded_rng(2);
    let v = stable_iso_check(&StableObj::Lambda(js.triple.clone()), &StableObj::Lambda(soc), &mut rng, 16).unwrap();
    assert!(v.is_yes());
    let out = stable_apply(&sc, FunctorTag::JStarLower, &StableObj::B(k.clone())).unwrap();
    assert_eq!(out, StableObj::Lambda(js.triple.clone()));
    assert!(matches!(
        stable_apply(&sc, FunctorTag::JQuestion, &StableObj::Lambda(js.triple.clone())),
        Err(Error::DomainMismatch(_))
    ));
    // j_*(id) is the identity up to projectives
    let id = stable_j_star_map(&sc, &js, &js, &ModuleMap::identity(&k)).unwrap();
    let m = from_triple(&js.triple);
    let s = StableHomSpace::new(&m, &m).unwrap();
    assert!(s.is_null(&id.total_matrix().sub(&Matrix::identity(m.field(), m.dim()))));
}

#[test]
fn cover_independence() {
    let tri = t2(&dual_numbers(&f101()));
    let sc = stable_ctx(&tri);
    let mut rng = seeded_rng(9);
    let samples = StableSamples::generate(&sc, vec![socle_triple(&tri)], 4, 0, &mut rng).unwrap();
    for x in &samples.triples {
        for y in &samples.triples {
            let (mx, my) = (from_triple(x), from_triple(y));
            let h = hom_space(&mx, &my).unwrap();
            let g = greedy_generators(&my);
            let doubled: Vec<_> = g.iter().chain(g.iter()).cloned().collect();
            let mut all = doubled.clone();
            let n = my.dim();
            all.extend((0..n).map(|i| {
                let mut e = vec![my.field().zero(); n];
                e[i] = my.field().one();
                e
            }));
            let p = projective_factoring(&h, &g).unwrap();
            assert_eq!(p, projective_factoring(&h, &doubled).unwrap());
            assert_eq!(p, projective_factoring(&h, &all).unwrap());
        }
    }
}

#[test]
fn stable_inverse_round_trip() {
    let tri = t2(&dual_numbers(&f101()));
    let sc = stable_ctx(&tri);
    let t = certify_triple(&split_sum(&tri), &sc).unwrap();
    let ik = certify_triple(&sc.functors.i_star_lower(&simple_k(&tri.a)), &sc).unwrap();
    let mut rng = seeded_rng(4);
    let v = stable_iso_check(&StableObj::Lambda(t), &StableObj::Lambda(ik), &mut rng, 16).unwrap();
    let StableIsoVerdict::Yes { u, v } = v else { panic!("expected a stable isomorphism") };
    let x = from_triple(&split_sum(&tri));
    let y = from_triple(&sc.functors.i_star_lower(&simple_k(&tri.a)));
    assert!(stable_inverse(&x, &y, &u).unwrap().is_some());
    assert!(stable_inverse(&y, &x, &v).unwrap().is_some());
}

#[test]
fn first_triangle_of_the_socle_triple() {
    let tri = t2(&dual_numbers(&f101()));
    let sc = stable_ctx(&tri);
    let t = certify_triple(&socle_triple(&tri), &sc).unwrap();
    let ft = first_triangle(&sc, &t).unwrap();
    assert!(ft.is_exact());
    assert_eq!((ft.left.x().dim(), ft.right.x().dim()), (1, 1));
}

#[test]
fn flagship_stable_recollement_passes() {
    let tri = t2(&dual_numbers(&f101()));
    let sc = stable_ctx(&tri);
    let fun = &sc.functors;
    let a = regular_module(&tri.a);
    let curated = vec![
        socle_triple(&tri),
        fun.j_lower_shriek(&regular_module(&tri.b)).unwrap(),
        fun.i_star_lower(&simple_k(&tri.a)),
        fun.i_star_lower(&a),
        split_sum(&tri),
    ];
    let mut rng = seeded_rng(11);
    let samples = StableSamples::generate(&sc, curated, 6, 6, &mut rng).unwrap();
    let report = check_stable_recollement(&sc, &samples, Some(11), &NoClock);
    for r in &report.records {
        assert_eq!(r.status, Status::Pass, "{} {:?}", r.name, r.witnesses);
    }
    assert!(report.records.len() > 20);
    assert_eq!(report.notes.len(), 2);
}

#[test]
fn hereditary_and_split_contexts_pass() {
    let q = Rationals;
    let k = Arc::new(Algebra::ground(&q));
    let tri = t2(&k);
    let sc = stable_ctx(&tri);
    let mut rng = seeded_rng(3);
    let samples = StableSamples::generate(&sc, vec![], 6, 6, &mut rng).unwrap();
    let report = check_stable_recollement(&sc, &samples, None, &NoClock);
    assert!(report.all_pass(), "{:?}", report.failures().map(|r| &r.name).collect::<Vec<_>>());
    let zero = Arc::new(build_triangular(&k, &k, &Bimodule::zero(&k, &k)).unwrap());
    let sc = stable_ctx(&zero);
    let samples = StableSamples::generate(&sc, vec![], 4, 4, &mut rng).unwrap();
    assert!(check_stable_recollement(&sc, &samples, None, &NoClock).all_pass());
}
