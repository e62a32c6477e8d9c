use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::adjunction::{counit, AdjointPair};
use super::functors::{FunctorTag, Functors, Obj};
use crate::algebra::{regular_module, Triangular};
use crate::exactlin::Field;
use crate::modrep::{greedy_generators, Module};
use crate::report::{CheckRecord, CheckReport, Status, WitnessValue};

/// Candidate `B`-modules, smallest first: simple tops of the regular
/// module's cyclic pieces, then the regular module itself.
fn candidates<F: Field>(ctx: &Triangular<F>, extra: &[Module<F>]) -> Vec<Module<F>> {
    let reg = regular_module(&ctx.b);
    let mut out: Vec<Module<F>> = extra.to_vec();
    // cyclic submodules generated by single basis vectors
    for g in greedy_generators(&reg) {
        let sub = reg.generated_subspace(&[g]);
        if let Ok((m, _)) = reg.submodule(&sub) {
            out.push(m);
        }
    }
    out.push(reg);
    out.sort_by_key(|m| m.dim());
    out
}

/// Counterexamples to the statements that fail for this recollement in
/// general: `Ker i^* ⊆ Im j_!`, `i^!j_! = 0`, and injectivity of the
/// counit `j_!j^*T → T`.
///
/// All three are witnessed by a triple `(0, Y, 0)` with `M ⊗ Y ≠ 0`.
pub fn upper_symmetry_witnesses<F: Field>(ctx: &Arc<Triangular<F>>, extra: &[Module<F>]) -> CheckReport {
    let fun = Functors::new(ctx);
    let mut report = CheckReport::new(None);
    let found = candidates(ctx, extra).into_iter().find_map(|y| {
        let t = fun.j_star_lower(&y).ok()?;
        (t.tensor().module.dim() > 0).then_some((y, t))
    });
    let Some((y, t)) = found else {
        for (name, anchor) in [
            ("witness.kernel_not_image", "Ker i^* ⊄ Im j_!"),
            ("witness.i_shriek_j_lower_shriek", "i^!j_! ≠ 0"),
            ("witness.counit_not_monic", "j_!j^*T → T not monic"),
        ] {
            report.push(
                CheckRecord::new(name, anchor, Status::NoWitness)
                    .with("reason", WitnessValue::Text("M ⊗_B Y = 0 for every candidate Y".into())),
            );
        }
        return report;
    };
    let obj = Obj::Lambda(t.clone());
    // (1) i^*(0, Y, 0) = 0 but φ: M ⊗ Y → 0 is not invertible
    let istar = fun.apply(FunctorTag::IStarUpper, &obj).map(|o| o.dim()).unwrap_or(usize::MAX);
    let in_kernel = istar == 0;
    let phi_invertible = t.phi().is_isomorphism();
    let mut rec = CheckRecord::new(
        "witness.kernel_not_image",
        "Ker i^* ⊄ Im j_!",
        Status::from_bool(in_kernel && !phi_invertible),
    )
    .with("triple_dims", WitnessValue::dims(&[t.x().dim(), t.y().dim()]))
    .with("tensor_dim", WitnessValue::Int(t.tensor().module.dim() as i64))
    .with("dim_i_star_upper", WitnessValue::Int(istar as i64));
    // the object (0, Y, 0) itself
    for (i, m) in y.actions().iter().enumerate() {
        rec.witness(&format!("y_action_{i}"), WitnessValue::matrix(m));
    }
    report.push(rec);
    // (2) i^!j_!(Y) = M ⊗ Y
    let ijy = fun
        .apply(FunctorTag::JLowerShriek, &Obj::B(y.clone()))
        .and_then(|o| fun.apply(FunctorTag::IShriek, &o))
        .map(|o| o.dim())
        .unwrap_or(0);
    report.push(
        CheckRecord::new("witness.i_shriek_j_lower_shriek", "i^!j_! ≠ 0", Status::from_bool(ijy > 0))
            .with("dim_y", WitnessValue::Int(y.dim() as i64))
            .with("dim_i_shriek_j_lower_shriek", WitnessValue::Int(ijy as i64)),
    );
    // (3) the counit j_!j^*T → T has a kernel
    let kernel = counit(&fun, AdjointPair::JShriek, &obj).map(|m| {
        let mat = m.total_matrix();
        mat.cols() - mat.rank()
    });
    let k = kernel.unwrap_or(0);
    report.push(
        CheckRecord::new("witness.counit_not_monic", "j_!j^*T → T not monic", Status::from_bool(k > 0))
            .with("kernel_dim", WitnessValue::Int(k as i64)),
    );
    report
}
