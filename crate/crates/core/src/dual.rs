//! The dual convolution algebra `C*`, its opposite `C•`, and the actions
//! `f⇀c = Σ f(c₁)c₂`, `c↼g = Σ c₁g(c₂)` making `C` a `(C•,C•)`-bimodule.
//!
//! Elements of `C*` and `C•` are written in the dual basis `e^i` of the
//! coalgebra basis.

use crate::algebra::{Bimodule, FinDimAlgebra};
use crate::coalgebra::Coalgebra;
use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, Scalar};

/// The actions of `C•` on `C`; `left[a]` is `e^a⇀−`, `right[a]` is `−↼e^a`.
pub type BimoduleActions = Bimodule;

/// `C*` with `(f∗g)(c) = Σ f(c₁)g(c₂)`, i.e. `m[i][j][k] = d[k][i][j]`.
pub fn dual_convolution_algebra(c: &Coalgebra) -> FinDimAlgebra {
    let n = c.dim();
    let mut mult = vec![c.field().zero(); n * n * n];
    for k in 0..n {
        for (i, j, v) in c.terms(k) {
            mult[(i * n + j) * n + k] = v.clone();
        }
    }
    FinDimAlgebra::new(c.field(), n, mult, c.epsilon().map(<[Scalar]>::to_vec)).expect("n³ constants")
}

/// `C• = (C*)^op` with `(f•g)(c) = Σ g(c₁)f(c₂)`.
pub fn opposite_dual_algebra(c: &Coalgebra) -> FinDimAlgebra {
    dual_convolution_algebra(c).opposite()
}

/// `η(1) = ε` as an element of `C•`.
pub fn unit_map_eta(c: &Coalgebra) -> Result<Vec<Scalar>> {
    Ok(c.require_epsilon()?.to_vec())
}

/// Action matrices computed from `Δ`, checked against the `C•` product.
pub fn build_actions(c: &Coalgebra) -> Result<BimoduleActions> {
    let n = c.dim();
    let f = c.field();
    let mut left = vec![DenseMatrix::zeros(f, n, n); n];
    let mut right = vec![DenseMatrix::zeros(f, n, n); n];
    for x in 0..n {
        for (j, k, v) in c.terms(x) {
            // e^j ⇀ e_x picks up v·e_k; e_x ↼ e^k picks up v·e_j
            left[*j].add_to(*k, x, v);
            right[*k].add_to(*j, x, v);
        }
    }
    let actions = Bimodule {
        field: f,
        dim: n,
        left,
        right,
    };
    let bullet = opposite_dual_algebra(c);
    let report = actions.validate(&bullet);
    if let Some(chk) = report.first_failure() {
        return Err(Error::BimoduleAxiom(chk.name.clone()));
    }
    Ok(actions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalgebra::Corpus;
    use crate::linalg::Field;

    const Q: Field = Field::Rational;

    fn oracle_convolution(c: &Coalgebra, f: &[Scalar], g: &[Scalar]) -> Vec<Scalar> {
        let n = c.dim();
        (0..n)
            .map(|k| {
                let mut s = Q.zero();
                for i in 0..n {
                    for j in 0..n {
                        s += &(&(c.delta(k, i, j) * &f[i]) * &g[j]);
                    }
                }
                s
            })
            .collect()
    }

    #[test]
    fn convolution_matches_direct_evaluation() {
        for entry in [Corpus::Grouplike(2), Corpus::Matrix(2), Corpus::DualNumbers] {
            let c = entry.build(Q).unwrap();
            let a = dual_convolution_algebra(&c);
            assert!(a.validate().passed());
            for i in 0..c.dim() {
                for j in 0..c.dim() {
                    let (ei, ej) = (a.basis_vector(i), a.basis_vector(j));
                    assert_eq!(a.product(&ei, &ej), oracle_convolution(&c, &ei, &ej));
                }
            }
        }
    }

    #[test]
    fn trivial_dual_is_the_field() {
        let a = dual_convolution_algebra(&Corpus::Trivial.build(Q).unwrap());
        assert_eq!(a, FinDimAlgebra::ground_field(Q));
    }

    #[test]
    fn grouplike_dual_idempotents() {
        let a = dual_convolution_algebra(&Corpus::Grouplike(2).build(Q).unwrap());
        for i in 0..2 {
            for j in 0..2 {
                let p = a.product(&a.basis_vector(i), &a.basis_vector(j));
                let expect = if i == j { a.basis_vector(i) } else { vec![Q.zero(); 2] };
                assert_eq!(p, expect);
            }
        }
        assert_eq!(a.unit().unwrap(), &[Q.one(), Q.one()]);
        assert_eq!(opposite_dual_algebra(&Corpus::Grouplike(2).build(Q).unwrap()), a);
    }

    #[test]
    fn matrix_dual_is_matrix_algebra() {
        let c = Corpus::Matrix(2).build(Q).unwrap();
        let a = dual_convolution_algebra(&c);
        let idx = |i: usize, j: usize| i * 2 + j;
        for (i, j, k, l) in (0..16).map(|t| (t >> 3 & 1, t >> 2 & 1, t >> 1 & 1, t & 1)) {
            let p = a.product(&a.basis_vector(idx(i, j)), &a.basis_vector(idx(k, l)));
            let expect = if j == k { a.basis_vector(idx(i, l)) } else { vec![Q.zero(); 4] };
            assert_eq!(p, expect);
        }
        let b = opposite_dual_algebra(&c);
        assert!(b.validate().passed());
        assert_ne!(a, b);
    }

    #[test]
    fn eta_is_counit() {
        let m = Corpus::Matrix(2).build(Q).unwrap();
        let e: Vec<String> = unit_map_eta(&m).unwrap().iter().map(|s| s.to_string()).collect();
        assert_eq!(e, ["1", "0", "0", "1"]);
        let g = Corpus::Grouplike(2).build(Q).unwrap();
        assert_eq!(unit_map_eta(&g).unwrap(), vec![Q.one(), Q.one()]);
        let nc = Coalgebra::new("nc", Q, vec!["e".into()], vec![Q.one()], None).unwrap();
        assert!(matches!(unit_map_eta(&nc), Err(Error::MissingCounit)));
    }

    #[test]
    fn action_examples() {
        let g = Corpus::Grouplike(2).build(Q).unwrap();
        let act = build_actions(&g).unwrap();
        assert_eq!(act.left[0].column(0), vec![Q.one(), Q.zero()]);
        assert_eq!(act.left[0].column(1), vec![Q.zero(), Q.zero()]);

        let d = Corpus::DualNumbers.build(Q).unwrap();
        let act = build_actions(&d).unwrap();
        // x*⇀x = g
        assert_eq!(act.left[1].column(1), vec![Q.one(), Q.zero()]);
        let eps = d.epsilon().unwrap();
        let id = DenseMatrix::identity(Q, 2);
        assert_eq!(act.left_matrix(eps), id);
        assert_eq!(act.right_matrix(eps), id);
    }
}
