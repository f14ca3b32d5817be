//! The algebra structure `μ(c⊗c') = ε^l(c)⇀c'` induced by a left counit of
//! `(C:C•)`, with `Δ` as a separability section, and the measuring pairing
//! `κ: C^op → C*`.

use serde::Serialize;

use super::cointegral::solve_cointegral;
use crate::algebra::FinDimAlgebra;
use crate::coalgebra::Coalgebra;
use crate::coring::{induce_coring, verify_counit, CounitSolution, Side};
use crate::dual::dual_convolution_algebra;
use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, Scalar};
use crate::validation::{first_failing, ValidationReport};

/// A section `δ: A → A⊗A` of the multiplication (`n² × n`, index `i·n + j`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeparabilityCertificate {
    pub section: DenseMatrix,
    pub provenance: String,
}

#[derive(Clone, Debug)]
pub struct InducedAlgebra {
    pub algebra: FinDimAlgebra,
    pub certificate: SeparabilityCertificate,
    pub report: ValidationReport,
}

fn checked_counit(c: &Coalgebra, eps_l: &CounitSolution) -> Result<()> {
    if eps_l.side != Side::Left {
        return Err(Error::InvalidParameter("a left counit is required".into()));
    }
    let cr = induce_coring(c)?;
    match verify_counit(&cr, Side::Left, &eps_l.map).first_failure() {
        Some(chk) => Err(Error::InvariantFailure(format!("left counit fails {}", chk.name))),
        None => Ok(()),
    }
}

/// `μ[i][j][k] = Σ_a ε^l(e_i)_a d[j][a][k]`.
fn multiplication(c: &Coalgebra, map: &DenseMatrix) -> FinDimAlgebra {
    let n = c.dim();
    let f = c.field();
    let mut mult = vec![f.zero(); n * n * n];
    for i in 0..n {
        for j in 0..n {
            for (a, k, v) in c.terms(j) {
                let x = map.get(*a, i);
                if !x.is_zero() {
                    mult[(i * n + j) * n + k] += &(x * v);
                }
            }
        }
    }
    FinDimAlgebra::new(f, n, mult, None).expect("n³ constants")
}

fn tensor_products(alg: &FinDimAlgebra, section: &DenseMatrix, b: usize, left: bool) -> Vec<Vec<Scalar>> {
    // columns x ↦ b·δ(x) (left) or δ(x)·b (right)
    let n = alg.dim();
    let f = alg.field();
    (0..n)
        .map(|x| {
            let mut out = vec![f.zero(); n * n];
            for (idx, v) in section.column(x).iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let (p, q) = (idx / n, idx % n);
                if left {
                    for (r, w) in alg.basis_product(b, p) {
                        out[r * n + q] += &(v * w);
                    }
                } else {
                    for (r, w) in alg.basis_product(q, b) {
                        out[p * n + r] += &(v * w);
                    }
                }
            }
            out
        })
        .collect()
}

/// `μ∘δ = id` and `δ(xy) = xδ(y) = δ(x)y` on basis elements.
pub fn check_section(alg: &FinDimAlgebra, section: &DenseMatrix) -> ValidationReport {
    let n = alg.dim();
    let f = alg.field();
    let mut report = ValidationReport::new();
    let w = first_failing(n, |x| {
        let mut out = vec![f.zero(); n];
        for (idx, v) in section.column(x).iter().enumerate() {
            for (k, w) in alg.basis_product(idx / n, idx % n) {
                out[*k] += &(v * w);
            }
        }
        out == alg.basis_vector(x)
    });
    report.push("section", w);
    let delta_of = |v: &[Scalar]| section.mul_vec(v).expect("length n");
    let lefts: Vec<_> = (0..n).map(|x| tensor_products(alg, section, x, true)).collect();
    let rights: Vec<_> = (0..n).map(|y| tensor_products(alg, section, y, false)).collect();
    let mut lw = None;
    let mut rw = None;
    for x in 0..n {
        for y in 0..n {
            let xy = alg.product(&alg.basis_vector(x), &alg.basis_vector(y));
            let d = delta_of(&xy);
            if lw.is_none() && d != lefts[x][y] {
                lw = Some(vec![x, y]);
            }
            if rw.is_none() && d != rights[y][x] {
                rw = Some(vec![x, y]);
            }
        }
    }
    report.push("section_left_linear", lw);
    report.push("section_right_linear", rw);
    report
}

/// Builds `μ_C` from a verified left counit and checks associativity and
/// that `Δ` is a bilinear section of it.
pub fn induced_multiplication(c: &Coalgebra, eps_l: &CounitSolution) -> Result<InducedAlgebra> {
    checked_counit(c, eps_l)?;
    let algebra = multiplication(c, &eps_l.map);
    let section = c.delta_matrix();
    let mut report = algebra.validate();
    report.extend_prefixed("delta", check_section(&algebra, &section));
    Ok(InducedAlgebra {
        algebra,
        certificate: SeparabilityCertificate {
            section,
            provenance: "comultiplication of the coalgebra".into(),
        },
        report,
    })
}

/// `κ(c) = ε^l(c)` is multiplicative from `C^op` to `C*`, `C^op` is
/// separable with section `τ∘Δ`, and `C` is coseparable.
pub fn measuring_pairing_check(c: &Coalgebra, eps_l: &CounitSolution) -> ValidationReport {
    let mut report = ValidationReport::new();
    if let Err(e) = checked_counit(c, eps_l) {
        report.fail("precondition", e.to_string());
        return report;
    }
    let n = c.dim();
    let mu = multiplication(c, &eps_l.map);
    let star = dual_convolution_algebra(c);
    let kappa = |v: &[Scalar]| eps_l.map.mul_vec(v).expect("length n");
    let mut w = None;
    'k: for i in 0..n {
        for j in 0..n {
            // c •^op c' = μ(c'⊗c)
            let op = mu.product(&mu.basis_vector(j), &mu.basis_vector(i));
            let lhs = kappa(&op);
            let rhs = star.product(&eps_l.map.column(i), &eps_l.map.column(j));
            if lhs != rhs {
                w = Some(vec![i, j]);
                break 'k;
            }
        }
    }
    report.push("kappa_multiplicative", w);

    let op = mu.opposite();
    let delta = c.delta_matrix();
    let mut twisted = DenseMatrix::zeros(c.field(), n * n, n);
    for x in 0..n {
        for j in 0..n {
            for k in 0..n {
                twisted.set(k * n + j, x, delta.get(j * n + k, x).clone());
            }
        }
    }
    report.extend_prefixed("op_separable", check_section(&op, &twisted));
    match solve_cointegral(c) {
        Ok(out) => report.push("coseparable", (!out.is_feasible()).then(Vec::new)),
        Err(e) => report.fail("coseparable", e.to_string()),
    }
    report
}
