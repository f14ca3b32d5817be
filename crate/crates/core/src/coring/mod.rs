//! Corings over finite-dimensional algebras.
//!
//! A coring stores its comultiplication as a representative in the plain
//! tensor square of the carrier (index `j·m + k`). The balanced quotients
//! `𝒞⊗_A𝒞` and `𝒞⊗_A𝒞⊗_A𝒞` are built on first use.

mod counit;
mod dual_ring;
mod morphism;
mod tensor;

pub use counit::{identity_witness, linearity_witness, solve_counit, verify_counit, CounitOutcome, CounitSolution, Side};
pub use dual_ring::{dual_ring_product, unity_check, DualRing, DualRingVariant};
pub use morphism::check_coring_morphism;
pub use tensor::{tensor_over_algebra, TensorChain, TensorOverA};
pub(crate) use tensor::sparse_columns;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::algebra::{Bimodule, FinDimAlgebra};
use crate::coalgebra::{validate_coalgebra, Coalgebra};
use crate::dual::{build_actions, opposite_dual_algebra};
use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, Field, Scalar, SparseRow};
use crate::validation::ValidationReport;

#[derive(Clone, Debug)]
pub struct CoringOverA {
    name: String,
    algebra: FinDimAlgebra,
    carrier: Bimodule,
    delta: Vec<SparseRow>,
    counit: Option<DenseMatrix>,
    pair: OnceLock<TensorOverA>,
    triple: OnceLock<TensorOverA>,
}

impl CoringOverA {
    /// `delta[c]` lists `(j·m + k, coefficient)` terms of a representative of
    /// `Δ(e_c)`; `counit`, when given, is the `dim A × m` matrix of a
    /// two-sided counit.
    pub fn new(
        name: impl Into<String>,
        algebra: FinDimAlgebra,
        carrier: Bimodule,
        delta: Vec<SparseRow>,
        counit: Option<DenseMatrix>,
    ) -> Result<Self> {
        let m = carrier.dim;
        let da = algebra.dim();
        if delta.len() != m {
            return Err(Error::DimensionMismatch {
                context: "comultiplication rows",
                expected: m,
                found: delta.len(),
            });
        }
        for (what, list) in [("left action", &carrier.left), ("right action", &carrier.right)] {
            if list.len() != da {
                return Err(Error::InvalidParameter(format!("{what} needs one matrix per algebra basis element")));
            }
            if list.iter().any(|a| a.rows() != m || a.cols() != m) {
                return Err(Error::InvalidParameter(format!("{what} matrices must be {m}×{m}")));
            }
        }
        if let Some(&(idx, _)) = delta.iter().flatten().find(|(i, _)| *i >= m * m) {
            return Err(Error::IndexOutOfRange {
                what: "comultiplication term",
                index: idx,
                dim: m * m,
            });
        }
        if let Some(e) = &counit {
            if e.rows() != da || e.cols() != m {
                return Err(Error::DimensionMismatch {
                    context: "counit matrix",
                    expected: da * m,
                    found: e.rows() * e.cols(),
                });
            }
        }
        Ok(CoringOverA {
            name: name.into(),
            algebra,
            carrier,
            delta,
            counit,
            pair: OnceLock::new(),
            triple: OnceLock::new(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn algebra(&self) -> &FinDimAlgebra {
        &self.algebra
    }

    pub fn carrier(&self) -> &Bimodule {
        &self.carrier
    }

    /// Carrier dimension.
    pub fn dim(&self) -> usize {
        self.carrier.dim
    }

    pub fn delta_terms(&self, c: usize) -> &[(usize, Scalar)] {
        &self.delta[c]
    }

    pub fn counit(&self) -> Option<&DenseMatrix> {
        self.counit.as_ref()
    }

    /// Representative of `Δ` as an `m² × m` matrix.
    pub fn delta_representative(&self) -> DenseMatrix {
        let m = self.dim();
        let mut out = DenseMatrix::zeros(self.field(), m * m, m);
        for (c, terms) in self.delta.iter().enumerate() {
            for (i, v) in terms {
                out.add_to(*i, c, v);
            }
        }
        out
    }

    /// `𝒞 ⊗_A 𝒞`.
    pub fn pair_tensor(&self) -> &TensorOverA {
        self.pair
            .get_or_init(|| tensor_over_algebra(&self.carrier, &self.carrier).expect("carrier checked in new"))
    }

    /// `(𝒞 ⊗_A 𝒞) ⊗_A 𝒞`, indexed by pair-quotient coordinate times `m`
    /// plus the last factor.
    pub fn triple_tensor(&self) -> &TensorOverA {
        self.triple.get_or_init(|| {
            tensor_over_algebra(&self.pair_tensor().as_bimodule(), &self.carrier).expect("same algebra")
        })
    }

    /// `χ∘Δ` as a `dim(𝒞⊗_A𝒞) × m` matrix.
    pub fn delta_quotient(&self) -> DenseMatrix {
        let pair = self.pair_tensor();
        let cols: Vec<Vec<Scalar>> = self.delta.iter().map(|t| pair.project(t.iter().cloned())).collect();
        DenseMatrix::from_columns(self.field(), pair.dim(), &cols)
    }

    /// Projects a vector of `𝒞⊗𝒞⊗𝒞`, given by `(a, b, c, coefficient)`
    /// terms, into the triple quotient.
    pub fn project_triple(&self, terms: impl IntoIterator<Item = (usize, usize, usize, Scalar)>) -> Vec<Scalar> {
        let m = self.dim();
        let pair = self.pair_tensor();
        let mut by_last: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for (a, b, c, v) in terms {
            by_last.entry(c).or_default().push((a * m + b, v));
        }
        let mut ambient: SparseRow = Vec::new();
        for (c, row) in by_last {
            for (i, v) in pair.project(row).into_iter().enumerate() {
                if !v.is_zero() {
                    ambient.push((i * m + c, v));
                }
            }
        }
        self.triple_tensor().project(ambient)
    }

    /// Replaces the stored counit.
    pub fn with_counit(self, counit: Option<DenseMatrix>) -> Result<Self> {
        let CoringOverA {
            name,
            algebra,
            carrier,
            delta,
            ..
        } = self;
        CoringOverA::new(name, algebra, carrier, delta, counit)
    }
}

/// `(C:R)`: the coalgebra as a coring over its ground field.
pub fn over_ground_field(c: &Coalgebra) -> CoringOverA {
    let f = c.field();
    let n = c.dim();
    let delta = (0..n).map(|i| c.terms(i).iter().map(|(j, k, v)| (j * n + k, v.clone())).collect()).collect();
    let counit = c.epsilon().map(|e| DenseMatrix::from_entries(f, 1, n, e.to_vec()).expect("n entries"));
    CoringOverA::new(
        format!("({}:R)", c.name()),
        FinDimAlgebra::ground_field(f),
        Bimodule::over_ground_field(f, n),
        delta,
        counit,
    )
    .expect("shapes follow the coalgebra")
}

/// `(C:C•)`: `C` as a `C•`-coring with `Δ` followed by the projection onto
/// `C ⊗_{C•} C`. The induced coring carries no counit.
pub fn induce_coring(c: &Coalgebra) -> Result<CoringOverA> {
    if let Some(chk) = validate_coalgebra(c).first_failure() {
        return Err(Error::InvalidCoalgebra {
            check: chk.name.clone(),
            witness: chk.witness.clone().unwrap_or_default(),
        });
    }
    let carrier = build_actions(c)?;
    let base = over_ground_field(c);
    Ok(CoringOverA {
        name: format!("({}:C•)", c.name()),
        algebra: opposite_dual_algebra(c),
        carrier,
        delta: base.delta,
        counit: None,
        pair: OnceLock::new(),
        triple: OnceLock::new(),
    })
}

fn apply(mat_cols: &[SparseRow], terms: &[(usize, Scalar)], m: usize, on_left: bool) -> SparseRow {
    let mut out = Vec::new();
    for (i, v) in terms {
        let (j, k) = (i / m, i % m);
        if on_left {
            out.extend(mat_cols[j].iter().map(|(j2, w)| (j2 * m + k, v * w)));
        } else {
            out.extend(mat_cols[k].iter().map(|(k2, w)| (j * m + k2, v * w)));
        }
    }
    out
}

fn scaled(terms: &[(usize, Scalar)], by: &Scalar) -> SparseRow {
    terms.iter().map(|(i, v)| (*i, v * by)).collect()
}

/// Bimodule axioms of the carrier, `(A,A)`-bilinearity of `Δ`, and
/// coassociativity inside `𝒞⊗_A𝒞⊗_A𝒞`. A stored counit is checked on both
/// sides.
pub fn validate_coring(cr: &CoringOverA) -> ValidationReport {
    let m = cr.dim();
    let da = cr.algebra.dim();
    let mut report = ValidationReport::new();
    report.extend_prefixed("carrier", cr.carrier.validate(&cr.algebra));
    let pair = cr.pair_tensor();

    for (name, mats, on_left) in [
        ("delta_left_linear", &cr.carrier.left, true),
        ("delta_right_linear", &cr.carrier.right, false),
    ] {
        let mut w = None;
        'outer: for a in 0..da {
            let cols = sparse_columns(&mats[a]);
            for c in 0..m {
                // Δ(a·c) − a·Δ(c), or the right-hand mirror
                let mut diff: SparseRow = Vec::new();
                for (c2, v) in &cols[c] {
                    diff.extend(scaled(&cr.delta[*c2], v));
                }
                let moved = apply(&cols, &cr.delta[c], m, on_left);
                diff.extend(moved.into_iter().map(|(i, v)| (i, -v)));
                if !pair.is_zero_class(diff) {
                    w = Some(vec![a, c]);
                    break 'outer;
                }
            }
        }
        report.push(name, w);
    }

    let w = crate::validation::first_failing(m, |c| {
        let mut terms = Vec::new();
        for (i, v) in &cr.delta[c] {
            let (j, k) = (i / m, i % m);
            for (i2, w) in &cr.delta[j] {
                terms.push((i2 / m, i2 % m, k, v * w));
            }
            for (i2, w) in &cr.delta[k] {
                terms.push((j, i2 / m, i2 % m, -(v * w)));
            }
        }
        crate::linalg::all_zero(&cr.project_triple(terms))
    });
    report.push("coassociativity", w);
    if pair.dim() > 0 && (0..m).all(|c| pair.is_zero_class(cr.delta[c].iter().cloned())) {
        report.note("zero_comultiplication", "Δ vanishes in the balanced tensor square");
    }

    if let Some(e) = &cr.counit {
        report.extend_prefixed("counit_left", verify_counit(cr, Side::Left, e));
        report.extend_prefixed("counit_right", verify_counit(cr, Side::Right, e));
    }
    report
}
