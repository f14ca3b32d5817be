//! The dual rings `(*𝒞, ∗_l)`, `(𝒞*, ∗_r)` and `(*𝒞*, ∗)` of a coring.

use serde::Serialize;

use super::{sparse_columns, CoringOverA};
use crate::algebra::FinDimAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, LinearSystem, Scalar};
use crate::validation::ValidationReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DualRingVariant {
    /// Left `A`-linear maps with `(f∗_l g)(c) = Σ g(c₁f(c₂))`.
    Left,
    /// Right `A`-linear maps with `(f∗_r g)(c) = Σ f(g(c₁)c₂)`.
    Right,
    /// Bilinear maps with `(f∗g)(c) = Σ g(c₁)f(c₂)`.
    TwoSided,
}

/// A dual ring as an algebra on an explicit basis of the space of maps.
#[derive(Clone, Debug)]
pub struct DualRing {
    pub variant: DualRingVariant,
    /// Basis maps, each `dim A × m`.
    pub basis: Vec<DenseMatrix>,
    pub algebra: FinDimAlgebra,
    free_columns: Vec<usize>,
}

impl DualRing {
    /// Coordinates of a map in the basis, or `None` if it is not in the space.
    pub fn coordinates(&self, map: &DenseMatrix) -> Option<Vec<Scalar>> {
        let da = map.rows();
        let flat = |mp: &DenseMatrix, i: usize| mp.get(i % da, i / da).clone();
        let coords: Vec<Scalar> = self.free_columns.iter().map(|&i| flat(map, i)).collect();
        let f = map.field();
        let mut rebuilt = DenseMatrix::zeros(f, da, map.cols());
        for (t, b) in coords.iter().zip(&self.basis) {
            for r in 0..da {
                for c in 0..map.cols() {
                    rebuilt.add_to(r, c, &(t * b.get(r, c)));
                }
            }
        }
        (&rebuilt == map).then_some(coords)
    }
}

/// Product of two maps `𝒞 → A` in the given dual ring.
pub fn map_product(cr: &CoringOverA, variant: DualRingVariant, f: &DenseMatrix, g: &DenseMatrix) -> DenseMatrix {
    let m = cr.dim();
    let alg = cr.algebra();
    let carrier = cr.carrier();
    let field = cr.field();
    let mut out = DenseMatrix::zeros(field, alg.dim(), m);
    for c in 0..m {
        let mut acc = vec![field.zero(); alg.dim()];
        for (i, r) in cr.delta_terms(c) {
            let (j, k) = (i / m, i % m);
            let value = match variant {
                DualRingVariant::Left => {
                    let moved = carrier.right_matrix(&f.column(k)).column(j);
                    g.mul_vec(&moved).expect("length m")
                }
                DualRingVariant::Right => {
                    let moved = carrier.left_matrix(&g.column(j)).column(k);
                    f.mul_vec(&moved).expect("length m")
                }
                DualRingVariant::TwoSided => alg.product(&g.column(j), &f.column(k)),
            };
            for (a, v) in acc.iter_mut().zip(&value) {
                *a += &(r * v);
            }
        }
        for (a, v) in acc.into_iter().enumerate() {
            out.set(a, c, v);
        }
    }
    out
}

/// Builds the dual ring and verifies associativity of its product table.
pub fn dual_ring_product(cr: &CoringOverA, variant: DualRingVariant) -> Result<DualRing> {
    let field = cr.field();
    let m = cr.dim();
    let alg = cr.algebra();
    let da = alg.dim();
    let carrier = cr.carrier();
    let var = |c: usize, a: usize| c * da + a;
    let mut sys = LinearSystem::new(field, m * da);
    let left_linear = matches!(variant, DualRingVariant::Left | DualRingVariant::TwoSided);
    let right_linear = matches!(variant, DualRingVariant::Right | DualRingVariant::TwoSided);
    for (active, mats, on_left) in [(left_linear, &carrier.left, true), (right_linear, &carrier.right, false)] {
        if !active {
            continue;
        }
        for a in 0..da {
            let cols = sparse_columns(&mats[a]);
            for c in 0..m {
                for b in 0..da {
                    let mut row: Vec<(usize, Scalar)> = cols[c].iter().map(|(c2, v)| (var(*c2, b), v.clone())).collect();
                    for a2 in 0..da {
                        let v = if on_left { alg.mult(a, a2, b) } else { alg.mult(a2, a, b) };
                        if !v.is_zero() {
                            row.push((var(c, a2), -v));
                        }
                    }
                    sys.add_equation(row, field.zero());
                }
            }
        }
    }
    let space = sys.solve();
    let basis: Vec<DenseMatrix> = space
        .nullspace_basis
        .iter()
        .map(|v| {
            let mut mp = DenseMatrix::zeros(field, da, m);
            for c in 0..m {
                for a in 0..da {
                    mp.set(a, c, v[var(c, a)].clone());
                }
            }
            mp
        })
        .collect();
    let mut ring = DualRing {
        variant,
        basis,
        algebra: FinDimAlgebra::ground_field(field),
        free_columns: space.free_columns,
    };
    let d = ring.basis.len();
    let mut mult = vec![field.zero(); d * d * d];
    for i in 0..d {
        for j in 0..d {
            let p = map_product(cr, variant, &ring.basis[i], &ring.basis[j]);
            let coords = ring
                .coordinates(&p)
                .ok_or_else(|| Error::Internal(format!("{variant:?} dual ring product leaves the space")))?;
            for (k, v) in coords.into_iter().enumerate() {
                mult[(i * d + j) * d + k] = v;
            }
        }
    }
    ring.algebra = FinDimAlgebra::new(field, d, mult, None)?;
    if let Some(chk) = ring.algebra.validate().first_failure() {
        return Err(Error::Internal(format!("dual ring fails {} at {:?}", chk.name, chk.witness)));
    }
    Ok(ring)
}

/// Checks whether `e` is a left unity (`e∗g = g`) and a right unity
/// (`g∗e = g`) on every basis map `g`.
pub fn unity_check(cr: &CoringOverA, ring: &DualRing, e: &DenseMatrix) -> ValidationReport {
    let mut report = ValidationReport::new();
    report.push("in_space", ring.coordinates(e).is_none().then(Vec::new));
    let n = ring.basis.len();
    let left = crate::validation::first_failing(n, |i| map_product(cr, ring.variant, e, &ring.basis[i]) == ring.basis[i]);
    report.push("left_unity", left);
    let right = crate::validation::first_failing(n, |i| map_product(cr, ring.variant, &ring.basis[i], e) == ring.basis[i]);
    report.push("right_unity", right);
    report
}
