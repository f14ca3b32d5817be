//! Finite-dimensional associative algebras and their modules.

use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, Field, Scalar};
use crate::validation::ValidationReport;

/// Algebra given by structure constants `e_i·e_j = Σ_k m[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinDimAlgebra {
    field: Field,
    dim: usize,
    mult: Vec<Scalar>,
    // nonzero (k, m[i][j][k]) per flattened pair i·dim + j
    products: Vec<Vec<(usize, Scalar)>>,
    unit: Option<Vec<Scalar>>,
}

impl FinDimAlgebra {
    pub fn new(field: Field, dim: usize, mult: Vec<Scalar>, unit: Option<Vec<Scalar>>) -> Result<Self> {
        if mult.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch {
                context: "multiplication constants",
                expected: dim * dim * dim,
                found: mult.len(),
            });
        }
        if let Some(u) = &unit {
            if u.len() != dim {
                return Err(Error::DimensionMismatch {
                    context: "unit vector",
                    expected: dim,
                    found: u.len(),
                });
            }
        }
        let products = (0..dim * dim)
            .map(|ij| {
                (0..dim)
                    .filter_map(|k| {
                        let v = &mult[ij * dim + k];
                        (!v.is_zero()).then(|| (k, v.clone()))
                    })
                    .collect()
            })
            .collect();
        Ok(FinDimAlgebra {
            field,
            dim,
            mult,
            products,
            unit,
        })
    }

    /// The ground field as a one-dimensional unital algebra.
    pub fn ground_field(field: Field) -> Self {
        Self::new(field, 1, vec![field.one()], Some(vec![field.one()])).expect("1-dim")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mult(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.mult[(i * self.dim + j) * self.dim + k]
    }

    pub fn unit(&self) -> Option<&[Scalar]> {
        self.unit.as_deref()
    }

    pub fn require_unit(&self) -> Result<&[Scalar]> {
        self.unit().ok_or(Error::NotUnital)
    }

    /// Nonzero coordinates of `e_i·e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.products[i * self.dim + j]
    }

    pub fn product(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (k, m) in self.basis_product(i, j) {
                    out[*k] += &(&c * m);
                }
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim];
        v[i] = self.field.one();
        v
    }

    pub fn opposite(&self) -> Self {
        let d = self.dim;
        let mut mult = vec![self.field.zero(); d * d * d];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    mult[(i * d + j) * d + k] = self.mult(j, i, k).clone();
                }
            }
        }
        Self::new(self.field, d, mult, self.unit.clone()).expect("same shape")
    }

    /// Associativity on basis triples, and the unit laws when a unit is set.
    pub fn validate(&self) -> ValidationReport {
        let d = self.dim;
        let mut report = ValidationReport::new();
        let mut witness = None;
        'outer: for i in 0..d {
            for j in 0..d {
                let ij = self.product(&self.basis_vector(i), &self.basis_vector(j));
                for k in 0..d {
                    let ek = self.basis_vector(k);
                    let jk = self.product(&self.basis_vector(j), &ek);
                    if self.product(&ij, &ek) != self.product(&self.basis_vector(i), &jk) {
                        witness = Some(vec![i, j, k]);
                        break 'outer;
                    }
                }
            }
        }
        report.push("associativity", witness);
        if let Some(u) = self.unit() {
            report.push(
                "unit",
                (0..d)
                    .find(|&i| {
                        let e = self.basis_vector(i);
                        self.product(u, &e) != e || self.product(&e, u) != e
                    })
                    .map(|i| vec![i]),
            );
        }
        report
    }

    /// Matrix of `y ↦ x·y`.
    pub fn left_multiplication(&self, x: &[Scalar]) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(self.field, self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.product(x, &self.basis_vector(j));
            for (k, v) in col.into_iter().enumerate() {
                m.set(k, j, v);
            }
        }
        m
    }

    /// Matrix of `y ↦ y·x`.
    pub fn right_multiplication(&self, x: &[Scalar]) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(self.field, self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.product(&self.basis_vector(j), x);
            for (k, v) in col.into_iter().enumerate() {
                m.set(k, j, v);
            }
        }
        m
    }
}

/// A vector space with left and/or right actions of a finite-dimensional
/// algebra, one matrix per algebra basis element. A side with no actions is
/// an empty list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    pub field: Field,
    pub dim: usize,
    /// `left[a]` has column `x` equal to `e_a·e_x`.
    pub left: Vec<DenseMatrix>,
    /// `right[a]` has column `x` equal to `e_x·e_a`.
    pub right: Vec<DenseMatrix>,
}

impl Bimodule {
    /// Scalar actions of the ground field (as a one-dimensional algebra).
    pub fn over_ground_field(field: Field, dim: usize) -> Self {
        let id = DenseMatrix::identity(field, dim);
        Bimodule {
            field,
            dim,
            left: vec![id.clone()],
            right: vec![id],
        }
    }

    /// Regular bimodule of an algebra.
    pub fn regular(algebra: &FinDimAlgebra) -> Self {
        let d = algebra.dim();
        Bimodule {
            field: algebra.field(),
            dim: d,
            left: (0..d).map(|a| algebra.left_multiplication(&algebra.basis_vector(a))).collect(),
            right: (0..d).map(|a| algebra.right_multiplication(&algebra.basis_vector(a))).collect(),
        }
    }

    pub fn zero(field: Field, algebra_dim: usize) -> Self {
        let z = DenseMatrix::zeros(field, 0, 0);
        Bimodule {
            field,
            dim: 0,
            left: vec![z.clone(); algebra_dim],
            right: vec![z; algebra_dim],
        }
    }

    /// Keeps only the right action.
    pub fn right_only(&self) -> Self {
        Bimodule { left: Vec::new(), ..self.clone() }
    }

    /// Keeps only the left action.
    pub fn left_only(&self) -> Self {
        Bimodule { right: Vec::new(), ..self.clone() }
    }

    /// Matrix of `x ↦ α·x` for an algebra element `α`.
    pub fn left_matrix(&self, alpha: &[Scalar]) -> DenseMatrix {
        combine(self.field, self.dim, &self.left, alpha)
    }

    /// Matrix of `x ↦ x·α`.
    pub fn right_matrix(&self, alpha: &[Scalar]) -> DenseMatrix {
        combine(self.field, self.dim, &self.right, alpha)
    }

    /// Checks that the actions are module actions of `algebra`, that they
    /// commute, and that a unit of the algebra acts as the identity.
    pub fn validate(&self, algebra: &FinDimAlgebra) -> ValidationReport {
        let d = algebra.dim();
        let mut report = ValidationReport::new();
        let has_left = !self.left.is_empty();
        let has_right = !self.right.is_empty();
        if has_left {
            let mut w = None;
            'l: for a in 0..d {
                for b in 0..d {
                    let ab = algebra.product(&algebra.basis_vector(a), &algebra.basis_vector(b));
                    if self.left_matrix(&ab) != self.left[a].mul(&self.left[b]).expect("square") {
                        w = Some(vec![a, b]);
                        break 'l;
                    }
                }
            }
            report.push("left_action", w);
        }
        if has_right {
            let mut w = None;
            'r: for a in 0..d {
                for b in 0..d {
                    let ab = algebra.product(&algebra.basis_vector(a), &algebra.basis_vector(b));
                    if self.right_matrix(&ab) != self.right[b].mul(&self.right[a]).expect("square") {
                        w = Some(vec![a, b]);
                        break 'r;
                    }
                }
            }
            report.push("right_action", w);
        }
        if has_left && has_right {
            let mut w = None;
            'c: for a in 0..d {
                for b in 0..d {
                    if self.right[b].mul(&self.left[a]).expect("square")
                        != self.left[a].mul(&self.right[b]).expect("square")
                    {
                        w = Some(vec![a, b]);
                        break 'c;
                    }
                }
            }
            report.push("actions_commute", w);
        }
        if let Some(u) = algebra.unit() {
            let id = DenseMatrix::identity(self.field, self.dim);
            let ok = (!has_left || self.left_matrix(u) == id) && (!has_right || self.right_matrix(u) == id);
            report.push("unitary", (!ok).then(Vec::new));
        }
        report
    }
}

fn combine(field: Field, dim: usize, mats: &[DenseMatrix], alpha: &[Scalar]) -> DenseMatrix {
    assert_eq!(mats.len(), alpha.len(), "algebra element length");
    let mut out = DenseMatrix::zeros(field, dim, dim);
    for (m, a) in mats.iter().zip(alpha) {
        if a.is_zero() {
            continue;
        }
        for r in 0..dim {
            for c in 0..dim {
                let v = m.get(r, c);
                if !v.is_zero() {
                    out.add_to(r, c, &(a * v));
                }
            }
        }
    }
    out
}
