use serde::Serialize;

use super::echelon::Echelon;
use super::matrix::{vec_to_strings, DenseMatrix};
use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// Exact solution set of a linear system `A·x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolutionSet {
    pub feasible: bool,
    pub particular: Option<Vec<Scalar>>,
    pub nullspace_basis: Vec<Vec<Scalar>>,
    /// Free unknown of each basis vector; `nullspace_basis[i]` is 1 there
    /// and 0 at every other free unknown.
    pub free_columns: Vec<usize>,
    pub dimension: usize,
    pub unknowns: usize,
    pub equations: usize,
    pub rank: usize,
    pub augmented_rank: usize,
}

impl AffineSolutionSet {
    /// `particular + Σ tᵢ·basisᵢ`
    pub fn point(&self, coefficients: &[Scalar]) -> Option<Vec<Scalar>> {
        let p = self.particular.as_ref()?;
        assert_eq!(coefficients.len(), self.nullspace_basis.len());
        let mut x = p.clone();
        for (t, b) in coefficients.iter().zip(&self.nullspace_basis) {
            if t.is_zero() {
                continue;
            }
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi += &(t * bi);
            }
        }
        Some(x)
    }

    /// The particular solution followed by `particular + basisᵢ` for each i.
    pub fn sample_points(&self) -> Vec<Vec<Scalar>> {
        let Some(p) = &self.particular else {
            return Vec::new();
        };
        let mut pts = vec![p.clone()];
        for b in &self.nullspace_basis {
            pts.push(p.iter().zip(b).map(|(x, y)| x + y).collect());
        }
        pts
    }
}

#[derive(Serialize)]
struct SolutionSummary {
    feasible: bool,
    dimension: usize,
    unknowns: usize,
    equations: usize,
    rank: usize,
    augmented_rank: usize,
    particular: Option<Vec<String>>,
}

impl Serialize for AffineSolutionSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SolutionSummary {
            feasible: self.feasible,
            dimension: self.dimension,
            unknowns: self.unknowns,
            equations: self.equations,
            rank: self.rank,
            augmented_rank: self.augmented_rank,
            particular: self.particular.as_deref().map(vec_to_strings),
        }
        .serialize(s)
    }
}

/// Sparse linear system assembled one equation at a time.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    field: Field,
    unknowns: usize,
    equations: usize,
    // Augmented rows: column `unknowns` holds the right-hand side.
    echelon: Echelon,
}

impl LinearSystem {
    pub fn new(field: Field, unknowns: usize) -> Self {
        LinearSystem {
            field,
            unknowns,
            equations: 0,
            echelon: Echelon::new(field, unknowns + 1),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn equations(&self) -> usize {
        self.equations
    }

    /// Adds `Σ coeff·x[idx] = rhs`; repeated indices are summed.
    pub fn add_equation(&mut self, coeffs: impl IntoIterator<Item = (usize, Scalar)>, rhs: Scalar) {
        let n = self.unknowns;
        self.equations += 1;
        let row = coeffs
            .into_iter()
            .inspect(|(i, _)| assert!(*i < n, "unknown index {i} out of range"))
            .chain(std::iter::once((n, rhs)));
        self.echelon.insert(row);
    }

    pub fn solve(&self) -> AffineSolutionSet {
        let n = self.unknowns;
        let inconsistent = self.echelon.is_pivot(n);
        let rank = self.echelon.rank() - usize::from(inconsistent);
        let augmented_rank = self.echelon.rank();
        if inconsistent {
            return AffineSolutionSet {
                feasible: false,
                particular: None,
                nullspace_basis: Vec::new(),
                free_columns: Vec::new(),
                dimension: 0,
                unknowns: n,
                equations: self.equations,
                rank,
                augmented_rank,
            };
        }
        let reduced = self.echelon.reduced_rows();
        let zero = self.field.zero();
        let mut particular = vec![zero.clone(); n];
        for (&p, row) in &reduced {
            if let Some(v) = row.get(&n) {
                particular[p] = v.clone();
            }
        }
        let free: Vec<usize> = (0..n).filter(|&c| !self.echelon.is_pivot(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![zero.clone(); n];
            v[f] = self.field.one();
            for (&p, row) in &reduced {
                if let Some(x) = row.get(&f) {
                    v[p] = -x;
                }
            }
            basis.push(v);
        }
        AffineSolutionSet {
            feasible: true,
            particular: Some(particular),
            dimension: basis.len(),
            nullspace_basis: basis,
            free_columns: free,
            unknowns: n,
            equations: self.equations,
            rank,
            augmented_rank,
        }
    }
}

/// Solves `a·x = b` exactly.
pub fn solve_affine(a: &DenseMatrix, b: &[Scalar]) -> Result<AffineSolutionSet> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch {
            context: "right-hand side",
            expected: a.rows(),
            found: b.len(),
        });
    }
    let mut sys = LinearSystem::new(a.field(), a.cols());
    for (r, rhs) in b.iter().enumerate() {
        sys.add_equation(a.row(r).iter().cloned().enumerate(), rhs.clone());
    }
    Ok(sys.solve())
}
