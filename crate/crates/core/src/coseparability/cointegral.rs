//! Cointegrals `δ: C⊗C → R`, retractions `π: C⊗C → C` of `Δ`, and the
//! correspondence `π ↦ ε∘π`, `δ ↦ [c⊗c' ↦ Σ c₁δ(c₂⊗c')]`.

use serde::Serialize;

use crate::coalgebra::Coalgebra;
use crate::error::{Error, Result};
use crate::linalg::{AffineSolutionSet, DenseMatrix, LinearSystem, Scalar};
use crate::validation::ValidationReport;

/// `form[a][b] = δ(e_a⊗e_b)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cointegral {
    pub form: DenseMatrix,
}

/// `map` is `n × n²`; column `a·n + b` is `π(e_a⊗e_b)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Retraction {
    pub map: DenseMatrix,
}

#[derive(Clone, Debug)]
pub enum CointegralOutcome {
    Feasible {
        cointegral: Cointegral,
        certificate: AffineSolutionSet,
    },
    Infeasible(AffineSolutionSet),
}

impl CointegralOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, CointegralOutcome::Feasible { .. })
    }

    pub fn cointegral(&self) -> Option<&Cointegral> {
        match self {
            CointegralOutcome::Feasible { cointegral, .. } => Some(cointegral),
            CointegralOutcome::Infeasible(_) => None,
        }
    }

    pub fn certificate(&self) -> &AffineSolutionSet {
        match self {
            CointegralOutcome::Feasible { certificate, .. } => certificate,
            CointegralOutcome::Infeasible(c) => c,
        }
    }

    /// Particular solution and one shifted point per free direction.
    pub fn sample_cointegrals(&self) -> Vec<Cointegral> {
        let cert = self.certificate();
        let n = (0..=cert.unknowns).find(|k| k * k >= cert.unknowns).unwrap_or(0);
        cert.sample_points()
            .into_iter()
            .map(|x| Cointegral {
                form: DenseMatrix::from_entries(x[0].field(), n, n, x).expect("n² unknowns"),
            })
            .collect()
    }
}

/// Solves `δ∘Δ = ε` together with `Σ c₁δ(c₂⊗c') = Σ δ(c⊗c'₁)c'₂` over
/// the `n²` unknowns `δ(e_a⊗e_b)` (index `a·n + b`).
pub fn solve_cointegral(c: &Coalgebra) -> Result<CointegralOutcome> {
    let eps = c.require_epsilon()?;
    let n = c.dim();
    let f = c.field();
    let var = |a: usize, b: usize| a * n + b;
    let mut sys = LinearSystem::new(f, n * n);
    for i in 0..n {
        let row = c.terms(i).iter().map(|(j, k, v)| (var(*j, *k), v.clone()));
        sys.add_equation(row, eps[i].clone());
    }
    for a in 0..n {
        for b in 0..n {
            let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n];
            for (k, j, v) in c.terms(a) {
                rows[*k].push((var(*j, b), v.clone()));
            }
            for (i, k, v) in c.terms(b) {
                rows[*k].push((var(a, *i), -v));
            }
            for row in rows {
                if !row.is_empty() {
                    sys.add_equation(row, f.zero());
                }
            }
        }
    }
    let certificate = sys.solve();
    Ok(match &certificate.particular {
        Some(x) => CointegralOutcome::Feasible {
            cointegral: Cointegral {
                form: DenseMatrix::from_entries(f, n, n, x.clone())?,
            },
            certificate,
        },
        None => CointegralOutcome::Infeasible(certificate),
    })
}

/// Direct evaluation of both cointegral identities on basis elements.
pub fn verify_cointegral(c: &Coalgebra, g: &Cointegral) -> ValidationReport {
    let n = c.dim();
    let f = c.field();
    let mut report = ValidationReport::new();
    let Some(eps) = c.epsilon() else {
        report.fail("counit", "coalgebra has no counit");
        return report;
    };
    if g.form.rows() != n || g.form.cols() != n {
        report.push("shape", Some(vec![g.form.rows(), g.form.cols()]));
        return report;
    }
    let gm = |a: usize, b: usize| g.form.get(a, b);
    let w = (0..n).find(|&i| {
        let mut s = f.zero();
        for j in 0..n {
            for k in 0..n {
                s += &(c.delta(i, j, k) * gm(j, k));
            }
        }
        s != eps[i]
    });
    report.push("normalization", w.map(|i| vec![i]));
    let mut w = None;
    'outer: for a in 0..n {
        for b in 0..n {
            for k in 0..n {
                let mut lhs = f.zero();
                let mut rhs = f.zero();
                for j in 0..n {
                    lhs += &(c.delta(a, k, j) * gm(j, b));
                    rhs += &(c.delta(b, j, k) * gm(a, j));
                }
                if lhs != rhs {
                    w = Some(vec![a, b, k]);
                    break 'outer;
                }
            }
        }
    }
    report.push("casimir", w);
    report
}

fn delta_of_vector(c: &Coalgebra, v: &[Scalar]) -> Vec<Scalar> {
    let n = c.dim();
    let mut out = vec![c.field().zero(); n * n];
    for (i, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, k, d) in c.terms(i) {
            out[j * n + k] += &(x * d);
        }
    }
    out
}

/// `π∘Δ = id` and `(id⊗π)(Δ⊗id) = Δ∘π = (π⊗id)(id⊗Δ)` on basis pairs.
pub fn verify_retraction(c: &Coalgebra, p: &Retraction) -> ValidationReport {
    let n = c.dim();
    let f = c.field();
    let mut report = ValidationReport::new();
    if p.map.rows() != n || p.map.cols() != n * n {
        report.push("shape", Some(vec![p.map.rows(), p.map.cols()]));
        return report;
    }
    let w = (0..n).find(|&i| {
        let mut out = vec![f.zero(); n];
        for (j, k, v) in c.terms(i) {
            for (o, x) in out.iter_mut().zip(p.map.column(j * n + k)) {
                *o += &(v * &x);
            }
        }
        out.iter().enumerate().any(|(r, x)| if r == i { !x.is_one() } else { !x.is_zero() })
    });
    report.push("section", w.map(|i| vec![i]));

    let mut left_w = None;
    let mut right_w = None;
    for a in 0..n {
        for b in 0..n {
            let middle = delta_of_vector(c, &p.map.column(a * n + b));
            if left_w.is_none() {
                let mut lhs = vec![f.zero(); n * n];
                for (i, j, v) in c.terms(a) {
                    for (k, x) in p.map.column(j * n + b).iter().enumerate() {
                        lhs[i * n + k] += &(v * x);
                    }
                }
                if lhs != middle {
                    left_w = Some(vec![a, b]);
                }
            }
            if right_w.is_none() {
                let mut rhs = vec![f.zero(); n * n];
                for (i, j, v) in c.terms(b) {
                    for (k, x) in p.map.column(a * n + i).iter().enumerate() {
                        rhs[k * n + j] += &(v * x);
                    }
                }
                if rhs != middle {
                    right_w = Some(vec![a, b]);
                }
            }
        }
    }
    report.push("left_colinear", left_w);
    report.push("right_colinear", right_w);
    report
}

fn require(report: ValidationReport, what: &str) -> Result<()> {
    match report.first_failure() {
        Some(chk) => Err(Error::InvariantFailure(format!("{what} fails {}", chk.name))),
        None => Ok(()),
    }
}

/// `π ↦ ε∘π`.
pub fn retraction_to_cointegral(p: &Retraction, c: &Coalgebra) -> Result<Cointegral> {
    let eps = c.require_epsilon()?;
    require(verify_retraction(c, p), "retraction")?;
    let n = c.dim();
    let e = DenseMatrix::from_entries(c.field(), 1, n, eps.to_vec())?;
    let flat = e.mul(&p.map)?;
    Ok(Cointegral {
        form: DenseMatrix::from_entries(c.field(), n, n, flat.row(0).to_vec())?,
    })
}

/// `δ ↦ [c⊗c' ↦ Σ c₁δ(c₂⊗c')]`.
pub fn cointegral_to_retraction(g: &Cointegral, c: &Coalgebra) -> Result<Retraction> {
    c.require_epsilon()?;
    require(verify_cointegral(c, g), "cointegral")?;
    let n = c.dim();
    let mut map = DenseMatrix::zeros(c.field(), n, n * n);
    for a in 0..n {
        for (k, j, v) in c.terms(a) {
            for b in 0..n {
                let x = g.form.get(*j, b);
                if !x.is_zero() {
                    map.add_to(*k, a * n + b, &(v * x));
                }
            }
        }
    }
    Ok(Retraction { map })
}
