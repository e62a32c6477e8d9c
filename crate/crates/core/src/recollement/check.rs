use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use rand_core::RngCore;

use super::adjunction::{counit, naturality, triangle_identities, unit, AdjointPair, Adjunction};
use super::functors::{FunctorTag, Functors, Mor, Obj};
use crate::algebra::Triangular;
use crate::error::Result;
use crate::exactlin::{Field, Matrix};
use crate::modrep::{hom_space, random_module, random_quotient_module, tensor_over, Module};
use crate::report::{CheckRecord, CheckReport, Clock, Status, WitnessValue};
use crate::triplecat::{triple_hom, Triple, TripleMap};

/// Objects and morphisms the axioms are checked on.
///
/// `maps[i]` goes from `triples[i]` to `triples[(i + 1) % n]`, so consecutive
/// maps compose.
#[derive(Debug, Clone)]
pub struct Samples<F: Field> {
    pub triples: Vec<Triple<F>>,
    pub maps: Vec<TripleMap<F>>,
}

/// A random `A`- or `B`-module: a submodule or a quotient of a small free module.
pub fn random_small_module<F: Field, R: RngCore + ?Sized>(
    a: &Arc<crate::algebra::Algebra<F>>,
    rng: &mut R,
) -> Module<F> {
    let gens = 1 + (rng.next_u32() % 2) as usize;
    if rng.next_u32() % 2 == 0 {
        random_module(a, gens, rng).0
    } else {
        random_quotient_module(a, gens, 1, rng).0
    }
}

/// A random triple `(X, Y, φ)` with `φ` a random element of `Hom_A(M ⊗ Y, X)`.
pub fn random_triple<F: Field, R: RngCore + ?Sized>(ctx: &Arc<Triangular<F>>, rng: &mut R) -> Result<Triple<F>> {
    let x = random_small_module(&ctx.a, rng);
    let y = random_small_module(&ctx.b, rng);
    let tensor = Arc::new(tensor_over(&ctx.m, &y)?);
    let phi = hom_space(&tensor.module, &x)?.random(rng);
    Ok(Triple::from_parts(ctx, x, y, tensor, phi.matrix().clone()))
}

/// A random triple with `φ` injective: `X = (M ⊗ Y) ⊕ Z` and `φ` the
/// inclusion plus a random map into `Z`.
pub fn random_monic_triple<F: Field, R: RngCore + ?Sized>(
    ctx: &Arc<Triangular<F>>,
    rng: &mut R,
) -> Result<Triple<F>> {
    let y = random_small_module(&ctx.b, rng);
    let z = random_small_module(&ctx.a, rng);
    let tensor = Arc::new(tensor_over(&ctx.m, &y)?);
    let h = hom_space(&tensor.module, &z)?.random(rng);
    let sum = crate::modrep::direct_sum(&ctx.a, &[tensor.module.clone(), z])?;
    let phi = sum.injections[0].matrix().add(&sum.injections[1].matrix().mul(h.matrix()));
    Ok(Triple::from_parts(ctx, sum.module, y, tensor, phi))
}

impl<F: Field> Samples<F> {
    /// `curated` followed by `random` random triples, and `maps` random
    /// morphisms along the cycle of objects.
    pub fn generate<R: RngCore + ?Sized>(
        ctx: &Arc<Triangular<F>>,
        curated: Vec<Triple<F>>,
        random: usize,
        maps: usize,
        rng: &mut R,
    ) -> Result<Self> {
        let mut triples = curated;
        for _ in 0..random {
            triples.push(random_triple(ctx, rng)?);
        }
        let n = triples.len();
        let mut ms = Vec::with_capacity(maps);
        if n > 0 {
            for i in 0..maps {
                let (s, t) = (&triples[i % n], &triples[(i + 1) % n]);
                ms.push(triple_hom(s, t)?.random(rng));
            }
        }
        Ok(Samples { triples, maps: ms })
    }

    fn objects(&self, tag_domain: super::functors::Category) -> Vec<Obj<F>> {
        use super::functors::Category;
        self.triples
            .iter()
            .map(|t| match tag_domain {
                Category::A => Obj::A(t.x().clone()),
                Category::B => Obj::B(t.y().clone()),
                Category::Lambda => Obj::Lambda(t.clone()),
            })
            .collect()
    }

    fn morphisms(&self, cat: super::functors::Category) -> Vec<Mor<F>> {
        use super::functors::Category;
        self.maps
            .iter()
            .map(|m| match cat {
                Category::A => Mor::A(m.f().clone()),
                Category::B => Mor::B(m.g().clone()),
                Category::Lambda => Mor::Lambda(m.clone()),
            })
            .collect()
    }
}

/// Accumulates one check over many samples into a single record.
pub(crate) struct Tally {
    name: String,
    anchor: String,
    checked: usize,
    failure: Option<(usize, String)>,
}

impl Tally {
    pub(crate) fn new(name: impl Into<String>, anchor: impl Into<String>) -> Self {
        Tally { name: name.into(), anchor: anchor.into(), checked: 0, failure: None }
    }

    pub(crate) fn observe(&mut self, index: usize, outcome: Result<bool>, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if self.failure.is_some() {
            return;
        }
        match outcome {
            Ok(true) => {}
            Ok(false) => self.failure = Some((index, detail())),
            Err(e) => self.failure = Some((index, e.to_string())),
        }
    }

    pub(crate) fn record(self) -> CheckRecord {
        let status = Status::from_bool(self.failure.is_none());
        let mut rec =
            CheckRecord::new(self.name, self.anchor, status).with("samples", WitnessValue::Int(self.checked as i64));
        if let Some((i, d)) = self.failure {
            rec.witness("first_failure", WitnessValue::Int(i as i64));
            rec.witness("detail", WitnessValue::Text(d));
        }
        rec
    }
}

fn is_exact_at<F: Field>(incoming: &Matrix<F>, outgoing: &Matrix<F>) -> bool {
    outgoing.mul(incoming).is_zero() && incoming.image() == outgoing.kernel()
}

/// `check_abelian_recollement(ctx, samples)`.
///
/// Covers the six adjunction bijections with naturality and triangle
/// identities, full faithfulness of `i_*`, `j_!`, `j_*`, `i_?`, the
/// condition `Im i_* = Ker j^*`, the two exact sequences of units and
/// counits, `i^*j_! = 0`, `i^!j_* = 0` and functoriality of all eight functors.
pub fn check_abelian_recollement<F: Field>(
    ctx: &Arc<Triangular<F>>,
    samples: &Samples<F>,
    seed: Option<u64>,
    clock: &dyn Clock,
) -> CheckReport {
    let fun = Functors::new(ctx);
    let mut report = CheckReport::new(seed);
    report.add_samples("triples", samples.triples.len());
    report.add_samples("morphisms", samples.maps.len());
    let n = samples.triples.len();

    for pair in AdjointPair::ALL {
        let cs = samples.objects(pair.left().domain());
        let ds = samples.objects(pair.right().domain());
        report.timed(clock, || {
            let mut t = Tally::new(format!("R1.adjunction.{}.bijection", pair.label()), pair.statement());
            for i in 0..n {
                let (c, d) = (&cs[i], &ds[(3 * i + 1) % n]);
                let out = Adjunction::new(&fun, pair, c, d).and_then(|a| {
                    let iso = a.iso()?;
                    Ok(a.left.dim() == a.right.dim() && iso.is_bijection())
                });
                t.observe(i, out, || format!("dims ({}, {})", c.dim(), d.dim()));
            }
            t.record()
        });
        report.timed(clock, || {
            let mut t =
                Tally::new(format!("R1.adjunction.{}.triangle", pair.label()), "Gε ∘ ηG = id and εF ∘ Fη = id");
            for i in 0..n {
                let out = triangle_identities(&fun, pair, &cs[i], &ds[i]).map(|r| r.left && r.right);
                t.observe(i, out, || "triangle identity fails".to_string());
            }
            t.record()
        });
        let us = samples.morphisms(pair.left().domain());
        let vs = samples.morphisms(pair.right().domain());
        let m = us.len();
        report.timed(clock, || {
            let mut t = Tally::new(
                format!("R1.adjunction.{}.naturality", pair.label()),
                "θ(v ∘ h ∘ F(u)) = G(v) ∘ θ(h) ∘ u",
            );
            for i in 0..m {
                let out = naturality(&fun, pair, &us[i], &vs[(i + 1) % m]);
                t.observe(i, out, || "naturality square does not commute".to_string());
            }
            t.record()
        });
    }

    // full faithfulness via invertible units and counits
    let ff: [(&str, &str, AdjointPair, bool, super::functors::Category); 6] = [
        ("R2.fully_faithful.i_star_lower", "counit i^*i_*X → X is invertible", AdjointPair::IStar, false, super::functors::Category::A),
        ("R2.fully_faithful.i_star_lower.unit", "unit X → i^!i_*X is invertible", AdjointPair::IShriek, true, super::functors::Category::A),
        ("R2.fully_faithful.j_lower_shriek", "unit Y → j^*j_!Y is invertible", AdjointPair::JShriek, true, super::functors::Category::B),
        ("R2.fully_faithful.j_star_lower", "counit j^*j_*Y → Y is invertible", AdjointPair::JStar, false, super::functors::Category::B),
        ("R2.fully_faithful.j_star_lower.unit", "unit Y → j_?j_*Y is invertible", AdjointPair::JQuestion, true, super::functors::Category::B),
        ("R2.fully_faithful.i_question", "counit i^!i_?X → X is invertible", AdjointPair::IQuestion, false, super::functors::Category::A),
    ];
    for (name, anchor, pair, is_unit, cat) in ff {
        let objs = samples.objects(cat);
        report.timed(clock, || {
            let mut t = Tally::new(name, anchor);
            for (i, o) in objs.iter().enumerate() {
                let m = if is_unit { unit(&fun, pair, o) } else { counit(&fun, pair, o) };
                t.observe(i, m.map(|m| m.is_isomorphism() && m.is_valid()), || format!("dim {}", o.dim()));
            }
            t.record()
        });
    }

    report.timed(clock, || {
        let mut t = Tally::new("R5.image_equals_kernel", "Im i_* = Ker j^*: j^*T = 0 ⟺ T ≅ i_*i^!T");
        for (i, tr) in samples.triples.iter().enumerate() {
            let o = Obj::Lambda(tr.clone());
            let out = counit(&fun, AdjointPair::IShriek, &o).map(|c| (tr.y().dim() == 0) == c.is_isomorphism());
            t.observe(i, out, || format!("dim Y = {}", tr.y().dim()));
            let x = Obj::A(tr.x().clone());
            let out = fun
                .apply(FunctorTag::IStarLower, &x)
                .and_then(|t| fun.apply(FunctorTag::JStarUpper, &t))
                .map(|y| y.dim() == 0);
            t.observe(i, out, || "j^*i_*X ≠ 0".to_string());
        }
        t.record()
    });

    report.timed(clock, || {
        let mut t = Tally::new("sequence.left", "j_!j^*T → T → i_*i^*T → 0 is exact");
        for (i, tr) in samples.triples.iter().enumerate() {
            let o = Obj::Lambda(tr.clone());
            let out = (|| {
                let eps = counit(&fun, AdjointPair::JShriek, &o)?.total_matrix();
                let eta = unit(&fun, AdjointPair::IStar, &o)?.total_matrix();
                Ok(is_exact_at(&eps, &eta) && eta.rank() == eta.rows())
            })();
            t.observe(i, out, || "not exact".to_string());
        }
        t.record()
    });
    report.timed(clock, || {
        let mut t = Tally::new("sequence.right", "0 → i_*i^!T → T → j_*j^*T is exact");
        for (i, tr) in samples.triples.iter().enumerate() {
            let o = Obj::Lambda(tr.clone());
            let out = (|| {
                let eps = counit(&fun, AdjointPair::IShriek, &o)?.total_matrix();
                let eta = unit(&fun, AdjointPair::JStar, &o)?.total_matrix();
                Ok(is_exact_at(&eps, &eta) && eps.rank() == eps.cols())
            })();
            t.observe(i, out, || "not exact".to_string());
        }
        t.record()
    });

    for (name, anchor, first, second) in [
        ("vanishing.i_star_upper_j_lower_shriek", "i^*j_! = 0", FunctorTag::JLowerShriek, FunctorTag::IStarUpper),
        ("vanishing.i_shriek_j_star_lower", "i^!j_* = 0", FunctorTag::JStarLower, FunctorTag::IShriek),
    ] {
        let objs = samples.objects(super::functors::Category::B);
        report.timed(clock, || {
            let mut t = Tally::new(name, anchor);
            for (i, y) in objs.iter().enumerate() {
                let out = fun.apply(first, y).and_then(|o| fun.apply(second, &o)).map(|o| o.dim() == 0);
                t.observe(i, out, || format!("dim Y = {}", y.dim()));
            }
            t.record()
        });
    }

    for tag in FunctorTag::ALL {
        let objs = samples.objects(tag.domain());
        let maps = samples.morphisms(tag.domain());
        report.timed(clock, || {
            let mut t = Tally::new(format!("functor.{}", tag.as_str()), "F(id) = id and F(u∘v) = F(u)∘F(v)");
            for (i, o) in objs.iter().enumerate() {
                let out = fun.apply_map(tag, &Mor::identity(o)).map(|m| m.is_identity());
                t.observe(i, out, || "F(id) ≠ id".to_string());
            }
            for i in 0..maps.len().saturating_sub(1) {
                let (v, u) = (&maps[i], &maps[i + 1]);
                let out = (|| {
                    let composite = fun.apply_map(tag, &u.compose(v)?)?;
                    let fu = fun.apply_map(tag, u)?;
                    let fv = fun.apply_map(tag, v)?;
                    Ok(composite.is_valid() && composite.total_matrix() == fu.compose(&fv)?.total_matrix())
                })();
                t.observe(i, out, || "F(u∘v) ≠ F(u)∘F(v)".to_string());
            }
            t.record()
        });
    }
    report
}
