//! One-sided counits of a coring as solutions of a linear system.
//!
//! A map `ε: 𝒞 → A` is a `dim A × m` matrix whose column `c` is `ε(e_c)`.
//! The unknowns are its entries, `x[c][a]` at index `c·dim A + a`.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{sparse_columns, CoringOverA};
use crate::linalg::{AffineSolutionSet, DenseMatrix, LinearSystem, Scalar, SparseRow};
use crate::validation::ValidationReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn parse(s: &str) -> Option<Side> {
        match s {
            "left" => Some(Side::Left),
            "right" => Some(Side::Right),
            _ => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }

    pub fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CounitSolution {
    pub side: Side,
    pub map: DenseMatrix,
    pub certificate: AffineSolutionSet,
}

impl CounitSolution {
    /// The particular solution and one shifted point per nullspace direction.
    pub fn sample_maps(&self) -> Vec<DenseMatrix> {
        let da = self.map.rows();
        let m = self.map.cols();
        self.certificate.sample_points().iter().map(|x| unknowns_to_map(x, da, m)).collect()
    }
}

#[derive(Clone, Debug)]
pub enum CounitOutcome {
    Feasible(CounitSolution),
    Infeasible(AffineSolutionSet),
}

impl CounitOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, CounitOutcome::Feasible(_))
    }

    pub fn solution(&self) -> Option<&CounitSolution> {
        match self {
            CounitOutcome::Feasible(s) => Some(s),
            CounitOutcome::Infeasible(_) => None,
        }
    }

    pub fn certificate(&self) -> &AffineSolutionSet {
        match self {
            CounitOutcome::Feasible(s) => &s.certificate,
            CounitOutcome::Infeasible(c) => c,
        }
    }
}

fn unknowns_to_map(x: &[Scalar], da: usize, m: usize) -> DenseMatrix {
    let mut map = DenseMatrix::zeros(x[0].field(), da, m);
    for c in 0..m {
        for a in 0..da {
            map.set(a, c, x[c * da + a].clone());
        }
    }
    map
}

/// Assembles and solves the system for a left counit (right `A`-linear,
/// `Σ ε(c₁)c₂ = c`) or a right counit (left `A`-linear, `Σ c₁ε(c₂) = c`).
pub fn solve_counit(cr: &CoringOverA, side: Side) -> CounitOutcome {
    let f = cr.field();
    let m = cr.dim();
    let alg = cr.algebra();
    let da = alg.dim();
    let carrier = cr.carrier();
    let var = |c: usize, a: usize| c * da + a;
    let mut sys = LinearSystem::new(f, m * da);

    // Linearity on the side opposite to the counit identity.
    let linear_side = match side {
        Side::Left => &carrier.right,
        Side::Right => &carrier.left,
    };
    for a in 0..da {
        let cols = sparse_columns(&linear_side[a]);
        for c in 0..m {
            let mut eqs: BTreeMap<usize, SparseRow> = BTreeMap::new();
            for b in 0..da {
                eqs.insert(b, cols[c].iter().map(|(c2, v)| (var(*c2, b), v.clone())).collect());
            }
            for a2 in 0..da {
                let prod = match side {
                    Side::Left => alg.basis_product(a2, a),
                    Side::Right => alg.basis_product(a, a2),
                };
                for (b, v) in prod {
                    eqs.get_mut(b).expect("b < dim A").push((var(c, a2), -v));
                }
            }
            for (_, row) in eqs {
                sys.add_equation(row, f.zero());
            }
        }
    }

    // Counit identity, one equation per output coordinate.
    let acting = match side {
        Side::Left => &carrier.left,
        Side::Right => &carrier.right,
    };
    let acting_cols: Vec<Vec<SparseRow>> = acting.iter().map(sparse_columns).collect();
    for c in 0..m {
        let mut eqs: BTreeMap<usize, SparseRow> = (0..m).map(|r| (r, Vec::new())).collect();
        for (i, r) in cr.delta_terms(c) {
            let (j, k) = (i / m, i % m);
            // left: ε(e_j)·e_k; right: e_j·ε(e_k)
            let (counit_at, moved) = match side {
                Side::Left => (j, k),
                Side::Right => (k, j),
            };
            for (a, cols) in acting_cols.iter().enumerate() {
                for (row, w) in &cols[moved] {
                    eqs.get_mut(row).expect("row < m").push((var(counit_at, a), r * w));
                }
            }
        }
        for (row, coeffs) in eqs {
            let rhs = if row == c { f.one() } else { f.zero() };
            sys.add_equation(coeffs, rhs);
        }
    }

    let certificate = sys.solve();
    match &certificate.particular {
        Some(x) if m * da > 0 => CounitOutcome::Feasible(CounitSolution {
            side,
            map: unknowns_to_map(x, da, m),
            certificate,
        }),
        Some(_) => CounitOutcome::Feasible(CounitSolution {
            side,
            map: DenseMatrix::zeros(f, da, m),
            certificate,
        }),
        None => CounitOutcome::Infeasible(certificate),
    }
}

/// Re-checks a candidate counit by direct evaluation on basis elements.
pub fn verify_counit(cr: &CoringOverA, side: Side, map: &DenseMatrix) -> ValidationReport {
    let mut report = ValidationReport::new();
    let (da, m) = (cr.algebra().dim(), cr.dim());
    if map.rows() != da || map.cols() != m {
        report.push("shape", Some(vec![map.rows(), map.cols()]));
        return report;
    }
    let linear = side.other();
    report.push(format!("{}_linear", linear.label()), linearity_witness(cr, linear, map));
    report.push("counit_identity", identity_witness(cr, side, map));
    report
}

/// First basis pair `(c, a)` where `map` fails to be A-linear for the
/// action on `side`: `ε(e_a·c) = e_a·ε(c)` (left) or `ε(c·e_a) = ε(c)·e_a`
/// (right). `map` must be `dim A × dim C`.
pub fn linearity_witness(cr: &CoringOverA, side: Side, map: &DenseMatrix) -> Option<Vec<usize>> {
    let alg = cr.algebra();
    let carrier = cr.carrier();
    let eps = |v: &[Scalar]| map.mul_vec(v).expect("length m");
    for c in 0..cr.dim() {
        for a in 0..alg.dim() {
            let ea = alg.basis_vector(a);
            let (lhs, rhs) = match side {
                Side::Right => (eps(&carrier.right[a].column(c)), alg.product(&map.column(c), &ea)),
                Side::Left => (eps(&carrier.left[a].column(c)), alg.product(&ea, &map.column(c))),
            };
            if lhs != rhs {
                return Some(vec![c, a]);
            }
        }
    }
    None
}

/// First basis element where `Σ ε(c₁)·c₂ = c` (left) or `Σ c₁·ε(c₂) = c`
/// (right) fails, evaluated in the carrier.
pub fn identity_witness(cr: &CoringOverA, side: Side, map: &DenseMatrix) -> Option<Vec<usize>> {
    let m = cr.dim();
    let f = cr.field();
    let carrier = cr.carrier();
    crate::validation::first_failing(m, |c| {
        let mut total = vec![f.zero(); m];
        for (i, r) in cr.delta_terms(c) {
            let (j, k) = (i / m, i % m);
            let image = match side {
                Side::Left => carrier.left_matrix(&map.column(j)).column(k),
                Side::Right => carrier.right_matrix(&map.column(k)).column(j),
            };
            for (t, v) in total.iter_mut().zip(&image) {
                *t += &(r * v);
            }
        }
        total.iter().enumerate().all(|(i, v)| if i == c { v.is_one() } else { v.is_zero() })
    })
}
