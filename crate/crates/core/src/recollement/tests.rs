use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::algebra::{build_triangular, regular_module, Algebra, Triangular};
use crate::exactlin::{Matrix, Rationals};
use crate::modrep::{seeded_rng, Bimodule};
use crate::report::{NoClock, Status};
use crate::triplecat::Triple;

fn t2() -> Arc<Triangular<Rationals>> {
    let k = Arc::new(Algebra::ground(&Rationals));
    Arc::new(build_triangular(&k, &k, &Bimodule::regular(&k)).unwrap())
}

fn split() -> Arc<Triangular<Rationals>> {
    let k = Arc::new(Algebra::ground(&Rationals));
    Arc::new(build_triangular(&k, &k, &Bimodule::zero(&k, &k)).unwrap())
}

fn t2_dual() -> Arc<Triangular<Rationals>> {
    let d = Arc::new(Algebra::truncated_polynomial(&Rationals, 2));
    Arc::new(build_triangular(&d, &d, &Bimodule::regular(&d)).unwrap())
}

/// `(k, 0, 0)`, `(0, k, 0)` and `(k, k, Id)`.
fn indecomposables(ctx: &Arc<Triangular<Rationals>>) -> Vec<Triple<Rationals>> {
    let fun = Functors::new(ctx);
    let ka = regular_module(&ctx.a);
    let kb = regular_module(&ctx.b);
    vec![
        fun.i_star_lower(&ka),
        fun.j_star_lower(&kb).unwrap(),
        fun.j_lower_shriek(&kb).unwrap(),
    ]
}

#[test]
fn functor_examples() {
    let ctx = t2();
    let fun = Functors::new(&ctx);
    let q = Rationals;
    let kb = regular_module(&ctx.b);
    // i^* of a projective (M⊗Q, Q, Id) vanishes
    let p = fun.j_lower_shriek(&kb).unwrap();
    assert_eq!(fun.apply(FunctorTag::IStarUpper, &Obj::Lambda(p.clone())).unwrap().dim(), 0);
    // j_?(j_* Y) = Y
    let jy = fun.j_star_lower(&kb).unwrap();
    assert_eq!(fun.apply(FunctorTag::JQuestion, &Obj::Lambda(jy)).unwrap(), Obj::B(kb.clone()));
    // i_?(k) = (k, k, Id) over T2(k)
    let ka = regular_module(&ctx.a);
    let iq = fun.i_question(&ka).unwrap().triple;
    assert_eq!((iq.x().dim(), iq.y().dim()), (1, 1));
    assert_eq!(iq.phi().matrix(), &Matrix::identity(&q, 1));
    assert!(matches!(
        fun.apply(FunctorTag::IShriek, &Obj::A(ka)),
        Err(crate::Error::DomainMismatch(_))
    ));
    assert_eq!("j_shriek".parse::<FunctorTag>(), Ok(FunctorTag::JLowerShriek));
}

#[test]
fn adjunction_examples() {
    let ctx = t2();
    let fun = Functors::new(&ctx);
    let kb = Obj::B(regular_module(&ctx.b));
    let ka = Obj::A(regular_module(&ctx.a));
    let p = Obj::Lambda(fun.j_lower_shriek(&regular_module(&ctx.b)).unwrap());
    let a = Adjunction::new(&fun, AdjointPair::JShriek, &kb, &p).unwrap();
    assert_eq!((a.left.dim(), a.right.dim()), (1, 1));
    assert!(a.iso().unwrap().is_bijection());
    let a = Adjunction::new(&fun, AdjointPair::IStar, &p, &ka).unwrap();
    assert_eq!((a.left.dim(), a.right.dim()), (0, 0));
    assert!(a.iso().unwrap().is_bijection());
    let zero = Obj::Lambda(Triple::zero(&ctx));
    for pair in AdjointPair::ALL {
        let c = match pair.left().domain() {
            Category::A => ka.clone(),
            Category::B => kb.clone(),
            Category::Lambda => zero.clone(),
        };
        let d = match pair.right().domain() {
            Category::A => ka.clone(),
            Category::B => kb.clone(),
            Category::Lambda => p.clone(),
        };
        let adj = Adjunction::new(&fun, pair, &c, &d).unwrap();
        assert!(adj.iso().unwrap().is_bijection(), "{pair}");
        let tri = triangle_identities(&fun, pair, &c, &d).unwrap();
        assert!(tri.left && tri.right, "{pair}");
    }
}

#[test]
fn units_and_counits() {
    let ctx = t2();
    let fun = Functors::new(&ctx);
    let ka = Obj::A(regular_module(&ctx.a));
    let kb = Obj::B(regular_module(&ctx.b));
    assert!(counit(&fun, AdjointPair::IStar, &ka).unwrap().is_isomorphism());
    let u = unit(&fun, AdjointPair::JShriek, &kb).unwrap();
    assert!(u.is_identity());
    assert!(unit(&fun, AdjointPair::JQuestion, &kb).unwrap().is_isomorphism());
}

#[test]
fn indecomposables_of_t2_pass() {
    let ctx = t2();
    let mut rng = seeded_rng(11);
    let samples = Samples::generate(&ctx, indecomposables(&ctx), 6, 8, &mut rng).unwrap();
    let report = check_abelian_recollement(&ctx, &samples, Some(11), &NoClock);
    for r in &report.records {
        assert_eq!(r.status, Status::Pass, "{r:?}");
    }
    assert!(report.records.len() > 20);
}

#[test]
fn split_and_dual_contexts_pass() {
    for (seed, ctx) in [(1, split()), (2, t2_dual())] {
        let mut rng = seeded_rng(seed);
        let samples = Samples::generate(&ctx, vec![], 5, 5, &mut rng).unwrap();
        let report = check_abelian_recollement(&ctx, &samples, Some(seed), &NoClock);
        assert!(report.all_pass(), "{:?}", report.failures().collect::<Vec<_>>());
    }
}

#[test]
fn witnesses_exist_exactly_when_m_is_nonzero() {
    let report = upper_symmetry_witnesses(&t2(), &[]);
    assert!(report.records.iter().all(|r| r.status == Status::Pass), "{report:?}");
    let first = &report.records[0];
    assert_eq!(first.witnesses[0].1, crate::report::WitnessValue::dims(&[0, 1]));
    let report = upper_symmetry_witnesses(&split(), &[]);
    assert!(report.records.iter().all(|r| r.status == Status::NoWitness));
}

#[test]
fn a_broken_adjunction_formula_is_detected() {
    // a triple map that violates the square is not in the hom space
    let ctx = t2();
    let fun = Functors::new(&ctx);
    let p = fun.j_lower_shriek(&regular_module(&ctx.b)).unwrap();
    let q = Rationals;
    let bad = crate::triplecat::TripleMap::new_unchecked(&p, &p, Matrix::from_i64(&q, 1, 1, &[2]), Matrix::identity(&q, 1));
    assert!(!Mor::Lambda(bad).is_valid());
}
