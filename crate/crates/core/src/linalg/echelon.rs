//! Incremental sparse row echelon forms and quotient spaces.
//!
//! Rows are kept with their pivot at the leftmost nonzero column, so the
//! pivot set is the same as that of the reduced row echelon form of the
//! span, independent of insertion order.

use std::collections::BTreeMap;

use super::matrix::DenseMatrix;
use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

pub type SparseRow = Vec<(usize, Scalar)>;
type Work = BTreeMap<usize, Scalar>;

fn accumulate(field: Field, entries: impl IntoIterator<Item = (usize, Scalar)>) -> Work {
    let mut w = Work::new();
    for (c, v) in entries {
        if v.is_zero() {
            continue;
        }
        let e = w.entry(c).or_insert_with(|| field.zero());
        *e += &v;
        if e.is_zero() {
            w.remove(&c);
        }
    }
    w
}

/// `w -= factor * row`
fn axpy(w: &mut Work, factor: &Scalar, row: &[(usize, Scalar)]) {
    for (c, v) in row {
        let d = factor * v;
        match w.get_mut(c) {
            Some(e) => {
                *e -= &d;
                if e.is_zero() {
                    w.remove(c);
                }
            }
            None => {
                w.insert(*c, -d);
            }
        }
    }
}

/// A subspace of `field^ncols` held as echelon rows keyed by pivot column.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    ncols: usize,
    rows: Vec<Option<SparseRow>>,
    rank: usize,
}

impl Echelon {
    pub fn new(field: Field, ncols: usize) -> Self {
        Echelon {
            field,
            ncols,
            rows: vec![None; ncols],
            rank: 0,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows[col].is_some()
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| self.is_pivot(c)).collect()
    }

    /// Echelon rows in increasing pivot order; each starts with `(pivot, 1)`.
    pub fn rows(&self) -> impl Iterator<Item = (usize, &SparseRow)> {
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(c, r)| r.as_ref().map(|r| (c, r)))
    }

    fn reduce_leading(&self, w: &mut Work) {
        while let Some((&c, v)) = w.iter().next() {
            let Some(row) = &self.rows[c] else { break };
            let factor = v.clone();
            axpy(w, &factor, row);
        }
    }

    fn reduce_full(&self, w: &mut Work) {
        let mut cursor = 0;
        while let Some((&c, v)) = w.range(cursor..).next() {
            if let Some(row) = &self.rows[c] {
                let factor = v.clone();
                axpy(w, &factor, row);
            }
            cursor = c + 1;
        }
    }

    /// Adds a vector to the span. Returns `true` when the rank grows.
    pub fn insert(&mut self, entries: impl IntoIterator<Item = (usize, Scalar)>) -> bool {
        let mut w = accumulate(self.field, entries);
        debug_assert!(w.keys().all(|&c| c < self.ncols));
        self.reduce_leading(&mut w);
        let Some((&lead, lv)) = w.iter().next() else {
            return false;
        };
        let inv = lv.inv().expect("nonzero leading entry");
        let row: SparseRow = w.into_iter().map(|(c, v)| (c, &v * &inv)).collect();
        self.rows[lead] = Some(row);
        self.rank += 1;
        true
    }

    pub fn insert_dense(&mut self, v: &[Scalar]) -> bool {
        self.insert(v.iter().cloned().enumerate())
    }

    pub fn contains(&self, entries: impl IntoIterator<Item = (usize, Scalar)>) -> bool {
        let mut w = accumulate(self.field, entries);
        self.reduce_leading(&mut w);
        w.is_empty()
    }

    /// Normal form: the unique representative of `v + span` supported off the
    /// pivot columns.
    pub fn normal_form(&self, entries: impl IntoIterator<Item = (usize, Scalar)>) -> BTreeMap<usize, Scalar> {
        let mut w = accumulate(self.field, entries);
        self.reduce_full(&mut w);
        w
    }

    /// Fully reduced rows (zeros in every other pivot column), by pivot.
    pub fn reduced_rows(&self) -> BTreeMap<usize, BTreeMap<usize, Scalar>> {
        let mut out: BTreeMap<usize, BTreeMap<usize, Scalar>> = BTreeMap::new();
        for pivot in (0..self.ncols).rev() {
            let Some(row) = &self.rows[pivot] else { continue };
            let mut w: Work = row.iter().skip(1).cloned().collect();
            let mut cursor = 0;
            while let Some((&c, v)) = w.range(cursor..).next() {
                if let Some(done) = out.get(&c) {
                    let factor = v.clone();
                    let tail: SparseRow = done.iter().map(|(k, x)| (*k, x.clone())).collect();
                    axpy(&mut w, &factor, &tail);
                }
                cursor = c + 1;
            }
            w.insert(pivot, self.field.one());
            out.insert(pivot, w);
        }
        out
    }
}

/// Quotient of `field^ambient` by a subspace, with the non-pivot coordinates
/// as quotient basis.
#[derive(Clone, Debug)]
pub struct Quotient {
    relations: Echelon,
    complement: Vec<usize>,
    position: Vec<Option<usize>>,
}

impl Quotient {
    pub fn from_echelon(relations: Echelon) -> Self {
        let n = relations.ncols();
        let complement: Vec<usize> = (0..n).filter(|&c| !relations.is_pivot(c)).collect();
        let mut position = vec![None; n];
        for (i, &c) in complement.iter().enumerate() {
            position[c] = Some(i);
        }
        Quotient {
            relations,
            complement,
            position,
        }
    }

    pub fn field(&self) -> Field {
        self.relations.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.relations.ncols()
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    /// Ambient coordinates that index the quotient basis.
    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    pub fn relations(&self) -> &Echelon {
        &self.relations
    }

    pub fn project_sparse(&self, entries: impl IntoIterator<Item = (usize, Scalar)>) -> Vec<Scalar> {
        let mut out = vec![self.field().zero(); self.dim()];
        for (c, v) in self.relations.normal_form(entries) {
            let i = self.position[c].expect("normal form lives on complement");
            out[i] = v;
        }
        out
    }

    pub fn project(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient_dim(), "ambient vector length");
        self.project_sparse(v.iter().cloned().enumerate())
    }

    /// `true` when the ambient vector lies in the relation span.
    pub fn is_zero_class(&self, entries: impl IntoIterator<Item = (usize, Scalar)>) -> bool {
        self.relations.contains(entries)
    }

    /// Canonical representative of a quotient vector.
    pub fn lift(&self, q: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field().zero(); self.ambient_dim()];
        for (i, &c) in self.complement.iter().enumerate() {
            out[c] = q[i].clone();
        }
        out
    }

    /// Matrix of the projection, `dim × ambient_dim`.
    pub fn projection_matrix(&self) -> DenseMatrix {
        let f = self.field();
        let mut p = DenseMatrix::zeros(f, self.dim(), self.ambient_dim());
        let reduced = self.relations.reduced_rows();
        for j in 0..self.ambient_dim() {
            match self.position[j] {
                Some(i) => p.set(i, j, f.one()),
                None => {
                    for (c, v) in &reduced[&j] {
                        if let Some(i) = self.position[*c] {
                            p.set(i, j, -v);
                        }
                    }
                }
            }
        }
        p
    }
}

/// Quotient of `field^ambient_dim` by the span of `relations`.
pub fn quotient_basis(field: Field, ambient_dim: usize, relations: &[Vec<Scalar>]) -> Result<Quotient> {
    let mut ech = Echelon::new(field, ambient_dim);
    for r in relations {
        if r.len() != ambient_dim {
            return Err(Error::DimensionMismatch {
                context: "relation vector",
                expected: ambient_dim,
                found: r.len(),
            });
        }
        ech.insert_dense(r);
    }
    Ok(Quotient::from_echelon(ech))
}
