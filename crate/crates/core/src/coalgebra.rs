//! Finite-dimensional coalgebras given by structure constants.
//!
//! `Δ(e_i) = Σ_{j,k} d[i][j][k] e_j⊗e_k`, and `e_j⊗e_k` is flattened to
//! `j·n + k` everywhere in the crate.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, Field, Scalar};
use crate::validation::{first_failing, ValidationReport};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coalgebra {
    name: String,
    field: Field,
    basis: Vec<String>,
    delta: Vec<Scalar>,
    terms: Vec<Vec<(usize, usize, Scalar)>>,
    epsilon: Option<Vec<Scalar>>,
}

impl Coalgebra {
    /// Builds a coalgebra from a dense `n×n×n` structure-constant array.
    /// Only shapes are checked; see [`validate_coalgebra`] for the axioms.
    pub fn new(
        name: impl Into<String>,
        field: Field,
        basis: Vec<String>,
        delta: Vec<Scalar>,
        epsilon: Option<Vec<Scalar>>,
    ) -> Result<Self> {
        let n = basis.len();
        if delta.len() != n * n * n {
            return Err(Error::DimensionMismatch {
                context: "comultiplication constants",
                expected: n * n * n,
                found: delta.len(),
            });
        }
        if let Some(e) = &epsilon {
            if e.len() != n {
                return Err(Error::DimensionMismatch {
                    context: "counit vector",
                    expected: n,
                    found: e.len(),
                });
            }
        }
        let terms = (0..n)
            .map(|i| {
                let mut t = Vec::new();
                for j in 0..n {
                    for k in 0..n {
                        let v = &delta[(i * n + j) * n + k];
                        if !v.is_zero() {
                            t.push((j, k, v.clone()));
                        }
                    }
                }
                t
            })
            .collect();
        Ok(Coalgebra {
            name: name.into(),
            field,
            basis,
            delta,
            terms,
            epsilon,
        })
    }

    /// Builds from sparse `(from, left, right, coeff)` entries; duplicates add up.
    pub fn from_terms(
        name: impl Into<String>,
        field: Field,
        basis: Vec<String>,
        entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
        epsilon: Option<Vec<Scalar>>,
    ) -> Result<Self> {
        let n = basis.len();
        let mut delta = vec![field.zero(); n * n * n];
        for (i, j, k, v) in entries {
            for idx in [i, j, k] {
                if idx >= n {
                    return Err(Error::IndexOutOfRange {
                        what: "comultiplication entry",
                        index: idx,
                        dim: n,
                    });
                }
            }
            delta[(i * n + j) * n + k] += &v;
        }
        Self::new(name, field, basis, delta, epsilon)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    #[inline]
    pub fn delta(&self, i: usize, j: usize, k: usize) -> &Scalar {
        let n = self.dim();
        &self.delta[(i * n + j) * n + k]
    }

    /// Nonzero terms `(j, k, d[i][j][k])` of `Δ(e_i)`.
    pub fn terms(&self, i: usize) -> &[(usize, usize, Scalar)] {
        &self.terms[i]
    }

    pub fn epsilon(&self) -> Option<&[Scalar]> {
        self.epsilon.as_deref()
    }

    pub fn require_epsilon(&self) -> Result<&[Scalar]> {
        self.epsilon().ok_or(Error::MissingCounit)
    }

    /// `n² × n` matrix whose column `i` is `Δ(e_i)` flattened.
    pub fn delta_matrix(&self) -> DenseMatrix {
        let n = self.dim();
        let mut m = DenseMatrix::zeros(self.field, n * n, n);
        for i in 0..n {
            for (j, k, v) in self.terms(i) {
                m.set(j * n + k, i, v.clone());
            }
        }
        m
    }

    pub(crate) fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

impl fmt::Display for Coalgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {} over {})", self.name, self.dim(), self.field)
    }
}

fn tensor3_left(c: &Coalgebra, i: usize) -> Vec<Scalar> {
    // (Δ⊗id)Δ(e_i)
    let n = c.dim();
    let mut out = vec![c.field.zero(); n * n * n];
    for (j, k, v) in c.terms(i) {
        for (a, b, w) in c.terms(*j) {
            out[(a * n + b) * n + k] += &(v * w);
        }
    }
    out
}

fn tensor3_right(c: &Coalgebra, i: usize) -> Vec<Scalar> {
    // (id⊗Δ)Δ(e_i)
    let n = c.dim();
    let mut out = vec![c.field.zero(); n * n * n];
    for (j, k, v) in c.terms(i) {
        for (a, b, w) in c.terms(*k) {
            out[(j * n + a) * n + b] += &(v * w);
        }
    }
    out
}

fn unit_vector(field: Field, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

/// Checks coassociativity and, when a counit is present, both counit laws.
pub fn validate_coalgebra(c: &Coalgebra) -> ValidationReport {
    let n = c.dim();
    let f = c.field();
    let mut report = ValidationReport::new();
    report.push(
        "coassociativity",
        first_failing(n, |i| tensor3_left(c, i) == tensor3_right(c, i)),
    );
    if let Some(eps) = c.epsilon() {
        report.push(
            "left_counit",
            first_failing(n, |i| {
                let mut out = vec![f.zero(); n];
                for (j, k, v) in c.terms(i) {
                    out[*k] += &(v * &eps[*j]);
                }
                out == unit_vector(f, n, i)
            }),
        );
        report.push(
            "right_counit",
            first_failing(n, |i| {
                let mut out = vec![f.zero(); n];
                for (j, k, v) in c.terms(i) {
                    out[*j] += &(v * &eps[*k]);
                }
                out == unit_vector(f, n, i)
            }),
        );
    }
    report
}

/// Returns the coalgebra unchanged if it validates, else the first failure.
pub fn ensure_valid(c: Coalgebra) -> Result<Coalgebra> {
    let report = validate_coalgebra(&c);
    match report.first_failure() {
        None => Ok(c),
        Some(chk) => Err(Error::InvalidCoalgebra {
            check: chk.name.clone(),
            witness: chk.witness.clone().unwrap_or_default(),
        }),
    }
}

/// Co-opposite coalgebra: `Δ^tw = τ∘Δ`, same counit.
pub fn coopposite(c: &Coalgebra) -> Coalgebra {
    let n = c.dim();
    let mut delta = vec![c.field.zero(); n * n * n];
    for i in 0..n {
        for (j, k, v) in c.terms(i) {
            delta[(i * n + k) * n + j] = v.clone();
        }
    }
    let name = match c.name.strip_suffix("^cop") {
        Some(base) => base.to_string(),
        None => format!("{}^cop", c.name),
    };
    Coalgebra::new(name, c.field, c.basis.clone(), delta, c.epsilon.clone())
        .expect("co-opposite keeps shape")
}

/// Direct sum: block-diagonal comultiplication and concatenated counits
/// (the sum has a counit only when every summand does).
pub fn direct_sum(parts: &[Coalgebra]) -> Result<Coalgebra> {
    let Some(first) = parts.first() else {
        return Err(Error::InvalidParameter("direct sum of no summands".into()));
    };
    let field = first.field;
    if let Some(p) = parts.iter().find(|p| p.field != field) {
        return Err(Error::InvalidParameter(format!(
            "summand `{}` is over {}, expected {field}",
            p.name, p.field
        )));
    }
    let mut basis = Vec::new();
    let mut entries = Vec::new();
    let mut eps = Some(Vec::new());
    for (s, p) in parts.iter().enumerate() {
        let off = basis.len();
        basis.extend(p.basis.iter().map(|b| format!("s{s}.{b}")));
        for i in 0..p.dim() {
            for (j, k, v) in p.terms(i) {
                entries.push((off + i, off + j, off + k, v.clone()));
            }
        }
        eps = match (eps, p.epsilon()) {
            (Some(mut acc), Some(e)) => {
                acc.extend_from_slice(e);
                Some(acc)
            }
            _ => None,
        };
    }
    let name = parts.iter().map(|p| p.name.as_str()).collect::<Vec<_>>().join(" + ");
    Coalgebra::from_terms(format!("({name})"), field, basis, entries, eps)
}

/// Built-in example coalgebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Corpus {
    Trivial,
    Grouplike(usize),
    Matrix(usize),
    DualNumbers,
}

impl Corpus {
    /// Parses a corpus name; `n` is required for `grouplike` and `matrix`.
    pub fn parse(name: &str, n: Option<usize>) -> Result<Corpus> {
        let need_n = || {
            n.ok_or_else(|| Error::InvalidParameter(format!("corpus `{name}` needs a size")))
        };
        match name {
            "trivial" => Ok(Corpus::Trivial),
            "dualnumbers" => Ok(Corpus::DualNumbers),
            "grouplike" => Ok(Corpus::Grouplike(need_n()?)),
            "matrix" => Ok(Corpus::Matrix(need_n()?)),
            other => Err(Error::UnknownCorpus(other.to_string())),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Corpus::Trivial => "trivial".into(),
            Corpus::Grouplike(n) => format!("grouplike({n})"),
            Corpus::Matrix(n) => format!("matrix({n})"),
            Corpus::DualNumbers => "dualnumbers".into(),
        }
    }

    pub fn build(&self, field: Field) -> Result<Coalgebra> {
        let one = field.one();
        match *self {
            Corpus::Trivial => Coalgebra::from_terms(
                "trivial",
                field,
                vec!["e".into()],
                [(0, 0, 0, one.clone())],
                Some(vec![one]),
            ),
            Corpus::Grouplike(n) => {
                if n == 0 {
                    return Err(Error::InvalidParameter("grouplike(n) needs n >= 1".into()));
                }
                Coalgebra::from_terms(
                    self.label(),
                    field,
                    (1..=n).map(|i| format!("g{i}")).collect(),
                    (0..n).map(|i| (i, i, i, one.clone())),
                    Some(vec![one.clone(); n]),
                )
            }
            Corpus::Matrix(n) => {
                if n == 0 {
                    return Err(Error::InvalidParameter("matrix(n) needs n >= 1".into()));
                }
                let idx = |i: usize, j: usize| i * n + j;
                let mut entries = Vec::new();
                for i in 0..n {
                    for j in 0..n {
                        for k in 0..n {
                            entries.push((idx(i, j), idx(i, k), idx(k, j), one.clone()));
                        }
                    }
                }
                let mut eps = vec![field.zero(); n * n];
                for i in 0..n {
                    eps[idx(i, i)] = one.clone();
                }
                let basis = (0..n)
                    .flat_map(|i| (0..n).map(move |j| format!("e{}{}", i + 1, j + 1)))
                    .collect();
                Coalgebra::from_terms(self.label(), field, basis, entries, Some(eps))
            }
            Corpus::DualNumbers => Coalgebra::from_terms(
                "dualnumbers",
                field,
                vec!["g".into(), "x".into()],
                [
                    (0, 0, 0, one.clone()),
                    (1, 0, 1, one.clone()),
                    (1, 1, 0, one.clone()),
                ],
                Some(vec![one, field.zero()]),
            ),
        }
    }
}

/// `build_corpus("matrix", Some(2), field)` and friends.
pub fn build_corpus(name: &str, n: Option<usize>, field: Field) -> Result<Coalgebra> {
    let c = Corpus::parse(name, n)?.build(field)?;
    Ok(c.with_name(Corpus::parse(name, n)?.label()))
}
