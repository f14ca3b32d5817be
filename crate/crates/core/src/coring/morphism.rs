//! Morphisms of corings `(θ:γ): (𝒞:A) → (𝒟:B)`.

use super::CoringOverA;
use crate::linalg::{DenseMatrix, Scalar};
use crate::validation::ValidationReport;

/// `theta` is `dim 𝒟 × dim 𝒞`, `gamma` is `dim B × dim A`. The actions of
/// `A` on `𝒟` are those of `B` pulled back along `γ`.
pub fn check_coring_morphism(
    theta: &DenseMatrix,
    gamma: &DenseMatrix,
    source: &CoringOverA,
    target: &CoringOverA,
) -> ValidationReport {
    let mut report = ValidationReport::new();
    let (a, b) = (source.algebra(), target.algebra());
    let (mc, md) = (source.dim(), target.dim());
    if theta.rows() != md || theta.cols() != mc || gamma.rows() != b.dim() || gamma.cols() != a.dim() {
        report.push("shape", Some(vec![theta.rows(), theta.cols(), gamma.rows(), gamma.cols()]));
        return report;
    }
    let g = |v: &[Scalar]| gamma.mul_vec(v).expect("length dim A");

    let mut w = None;
    'mul: for i in 0..a.dim() {
        for j in 0..a.dim() {
            let (ei, ej) = (a.basis_vector(i), a.basis_vector(j));
            if g(&a.product(&ei, &ej)) != b.product(&g(&ei), &g(&ej)) {
                w = Some(vec![i, j]);
                break 'mul;
            }
        }
    }
    report.push("gamma_multiplicative", w);
    let unital = match (a.unit(), b.unit()) {
        (Some(u), Some(v)) => g(u) == v,
        _ => false,
    };
    report.push("gamma_unital", (!unital).then(Vec::new));

    for (name, on_left) in [("theta_left_linear", true), ("theta_right_linear", false)] {
        let mut w = None;
        'lin: for i in 0..a.dim() {
            let src_act = if on_left { &source.carrier().left[i] } else { &source.carrier().right[i] };
            let gi = g(&a.basis_vector(i));
            let tgt_act = if on_left {
                target.carrier().left_matrix(&gi)
            } else {
                target.carrier().right_matrix(&gi)
            };
            let lhs = theta.mul(src_act).expect("shapes");
            let rhs = tgt_act.mul(theta).expect("shapes");
            if lhs != rhs {
                let c = (0..mc).find(|&c| lhs.column(c) != rhs.column(c)).unwrap_or(0);
                w = Some(vec![i, c]);
                break 'lin;
            }
        }
        report.push(name, w);
    }

    let pair = target.pair_tensor();
    let w = crate::validation::first_failing(mc, |c| {
        let mut diff = Vec::new();
        for (i, r) in source.delta_terms(c) {
            let (j, k) = (i / mc, i % mc);
            for p in 0..md {
                let tp = theta.get(p, j);
                if tp.is_zero() {
                    continue;
                }
                for q in 0..md {
                    let tq = theta.get(q, k);
                    if !tq.is_zero() {
                        diff.push((p * md + q, &(r * tp) * tq));
                    }
                }
            }
        }
        for p in 0..md {
            let tp = theta.get(p, c);
            if !tp.is_zero() {
                diff.extend(target.delta_terms(p).iter().map(|(i, v)| (*i, -(tp * v))));
            }
        }
        pair.is_zero_class(diff)
    });
    report.push("comultiplication", w);

    if let (Some(es), Some(et)) = (source.counit(), target.counit()) {
        let lhs = et.mul(theta).expect("shapes");
        let rhs = gamma.mul(es).expect("shapes");
        report.push("counit", (lhs != rhs).then(Vec::new));
    }
    report
}
