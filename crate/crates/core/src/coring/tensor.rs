//! Balanced tensor products `M ⊗_A N` as explicit quotient spaces.

use std::collections::BTreeMap;

use crate::algebra::Bimodule;
use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, Echelon, Field, Quotient, Scalar, SparseRow};

/// Nonzero entries of every column of `m`.
pub(crate) fn sparse_columns(m: &DenseMatrix) -> Vec<SparseRow> {
    (0..m.cols())
        .map(|c| {
            (0..m.rows())
                .filter_map(|r| {
                    let v = m.get(r, c);
                    (!v.is_zero()).then(|| (r, v.clone()))
                })
                .collect()
        })
        .collect()
}

/// `M ⊗_A N`: the flattened `M ⊗ N` (index `x·dim N + y`) modulo the span of
/// `(x·a)⊗y − x⊗(a·y)` over basis elements `x`, `a`, `y`.
#[derive(Clone, Debug)]
pub struct TensorOverA {
    left_module: Bimodule,
    right_module: Bimodule,
    quotient: Quotient,
}

/// Builds `m ⊗_A n` from the right action on `m` and the left action on `n`.
pub fn tensor_over_algebra(m: &Bimodule, n: &Bimodule) -> Result<TensorOverA> {
    if m.right.len() != n.left.len() {
        return Err(Error::DimensionMismatch {
            context: "algebra acting on both tensor factors",
            expected: m.right.len(),
            found: n.left.len(),
        });
    }
    if m.field != n.field {
        return Err(Error::InvalidParameter("tensor factors over different fields".into()));
    }
    let (dm, dn) = (m.dim, n.dim);
    let mut ech = Echelon::new(m.field, dm * dn);
    for (ra, la) in m.right.iter().zip(&n.left) {
        let rcols = sparse_columns(ra);
        let lcols = sparse_columns(la);
        for x in 0..dm {
            for y in 0..dn {
                let plus = rcols[x].iter().map(|(x2, v)| (x2 * dn + y, v.clone()));
                let minus = lcols[y].iter().map(|(y2, v)| (x * dn + y2, -v));
                ech.insert(plus.chain(minus));
            }
        }
    }
    Ok(TensorOverA {
        left_module: m.clone(),
        right_module: n.clone(),
        quotient: Quotient::from_echelon(ech),
    })
}

impl TensorOverA {
    pub fn left_module(&self) -> &Bimodule {
        &self.left_module
    }

    pub fn right_module(&self) -> &Bimodule {
        &self.right_module
    }

    pub fn quotient(&self) -> &Quotient {
        &self.quotient
    }

    pub fn ambient_dim(&self) -> usize {
        self.quotient.ambient_dim()
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn index(&self, x: usize, y: usize) -> usize {
        x * self.right_module.dim + y
    }

    /// `χ`: ambient coordinates to quotient coordinates.
    pub fn project(&self, entries: impl IntoIterator<Item = (usize, Scalar)>) -> Vec<Scalar> {
        self.quotient.project_sparse(entries)
    }

    pub fn is_zero_class(&self, entries: impl IntoIterator<Item = (usize, Scalar)>) -> bool {
        self.quotient.is_zero_class(entries)
    }

    /// Quotient with the outer actions (left from the first factor, right from
    /// the second) so it can serve as a factor of a longer tensor product.
    pub fn as_bimodule(&self) -> Bimodule {
        let f = self.quotient.field();
        let q = self.dim();
        let dn = self.right_module.dim;
        let reps: Vec<(usize, usize)> = self.quotient.complement().iter().map(|&c| (c / dn, c % dn)).collect();
        let act = |mats: &[DenseMatrix], on_left: bool| -> Vec<DenseMatrix> {
            mats.iter()
                .map(|mat| {
                    let cols = sparse_columns(mat);
                    let mut out = DenseMatrix::zeros(f, q, q);
                    for (i, &(x, y)) in reps.iter().enumerate() {
                        let image: SparseRow = if on_left {
                            cols[x].iter().map(|(x2, v)| (x2 * dn + y, v.clone())).collect()
                        } else {
                            cols[y].iter().map(|(y2, v)| (x * dn + y2, v.clone())).collect()
                        };
                        for (r, v) in self.project(image).into_iter().enumerate() {
                            out.set(r, i, v);
                        }
                    }
                    out
                })
                .collect()
        };
        Bimodule {
            field: f,
            dim: q,
            left: act(&self.left_module.left, true),
            right: act(&self.right_module.right, false),
        }
    }
}

/// Iterated balanced tensor product `F₀ ⊗_A F₁ ⊗_A … ⊗_A F_r`, built as
/// `((F₀ ⊗_A F₁) ⊗_A F₂) ⊗_A …`.
#[derive(Clone, Debug)]
pub struct TensorChain {
    field: Field,
    factor_dims: Vec<usize>,
    stages: Vec<TensorOverA>,
}

impl TensorChain {
    pub fn new(factors: &[&Bimodule]) -> Result<Self> {
        let Some((first, rest)) = factors.split_first() else {
            return Err(Error::InvalidParameter("empty tensor chain".into()));
        };
        let mut stages: Vec<TensorOverA> = Vec::with_capacity(rest.len());
        let mut acc = (*first).clone();
        for f in rest {
            let t = tensor_over_algebra(&acc, f)?;
            acc = t.as_bimodule();
            stages.push(t);
        }
        Ok(TensorChain {
            field: first.field,
            factor_dims: factors.iter().map(|f| f.dim).collect(),
            stages,
        })
    }

    pub fn dim(&self) -> usize {
        self.stages.last().map_or(self.factor_dims[0], TensorOverA::dim)
    }

    pub fn len(&self) -> usize {
        self.factor_dims.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Projects `Σ v·e_{i₀}⊗…⊗e_{i_r}` into the iterated quotient.
    pub fn project(&self, terms: impl IntoIterator<Item = (Vec<usize>, Scalar)>) -> Vec<Scalar> {
        // rows of the current stage quotient, keyed by the not yet absorbed indices
        let mut current: BTreeMap<Vec<usize>, SparseRow> = BTreeMap::new();
        for (idx, v) in terms {
            assert_eq!(idx.len(), self.len(), "one index per factor");
            current.entry(idx[1..].to_vec()).or_default().push((idx[0], v));
        }
        for (step, stage) in self.stages.iter().enumerate() {
            let dn = self.factor_dims[step + 1];
            let mut grouped: BTreeMap<Vec<usize>, SparseRow> = BTreeMap::new();
            for (key, row) in current {
                let entry = grouped.entry(key[1..].to_vec()).or_default();
                entry.extend(row.into_iter().map(|(q, v)| (q * dn + key[0], v)));
            }
            current = grouped
                .into_iter()
                .map(|(key, row)| {
                    let q: SparseRow = stage
                        .project(row)
                        .into_iter()
                        .enumerate()
                        .filter(|(_, v)| !v.is_zero())
                        .collect();
                    (key, q)
                })
                .collect();
        }
        let mut out = vec![self.field.zero(); self.dim()];
        for (_, row) in current {
            for (q, v) in row {
                out[q] += &v;
            }
        }
        out
    }

    pub fn is_zero_class(&self, terms: impl IntoIterator<Item = (Vec<usize>, Scalar)>) -> bool {
        self.project(terms).iter().all(Scalar::is_zero)
    }
}
