//! Balanced bilinear forms `⟨c,d⟩` on a coalgebra and the five equivalent
//! conditions for `C•`-balancedness; the non-linearity of `ε̄`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Bimodule, FinDimAlgebra};
use crate::coalgebra::Coalgebra;
use crate::coring::induce_coring;
use crate::dual::{build_actions, opposite_dual_algebra};
use crate::error::Result;
use crate::linalg::{DenseMatrix, Scalar, SparseRow};

pub const DEFAULT_SEED: u64 = 20_061_101;

/// `COALG_SEED` when set to an integer, else `default`.
pub fn seed_from_env(default: u64) -> u64 {
    std::env::var("COALG_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(default)
}

/// `form[c][d] = ⟨e_c, e_d⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BalancedForm {
    pub form: DenseMatrix,
}

impl BalancedForm {
    pub fn zero(c: &Coalgebra) -> Self {
        BalancedForm {
            form: DenseMatrix::zeros(c.field(), c.dim(), c.dim()),
        }
    }

    pub fn pairing(&self, c: &[Scalar], d: &[Scalar]) -> Scalar {
        let v = self.form.mul_vec(d).expect("length n");
        let mut s = self.form.field().zero();
        for (x, y) in c.iter().zip(&v) {
            s += &(x * y);
        }
        s
    }

    /// `γ̃` on the flattened `C⊗C` (index `c·n + d`).
    pub fn tilde(&self) -> Vec<Scalar> {
        self.form.entries().to_vec()
    }

    /// `γ^l(e_d) = ⟨−, e_d⟩` in the dual basis.
    pub fn gamma_l(&self, d: usize) -> Vec<Scalar> {
        self.form.column(d)
    }

    /// `γ^r(e_c) = ⟨e_c, −⟩`.
    pub fn gamma_r(&self, c: usize) -> Vec<Scalar> {
        self.form.row(c).to_vec()
    }
}

/// Outcome of each of the five conditions, in order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BalancedConditions {
    /// `⟨c↼f, d⟩ = ⟨c, f⇀d⟩`
    pub balanced: bool,
    /// `γ^l(f⇀d) = f•γ^l(d)`
    pub gamma_l_linear: bool,
    /// `γ^r(c↼f) = γ^r(c)•f`
    pub gamma_r_linear: bool,
    /// `γ̃` vanishes on the relations of `C ⊗_{C•} C`
    pub factors_through_tensor: bool,
    /// `Σ⟨c₁,d⟩c₂ = Σ⟨c,d₂⟩d₁`
    pub twisted_compatibility: bool,
}

impl BalancedConditions {
    pub fn as_array(&self) -> [bool; 5] {
        [
            self.balanced,
            self.gamma_l_linear,
            self.gamma_r_linear,
            self.factors_through_tensor,
            self.twisted_compatibility,
        ]
    }

    pub fn agree(&self) -> bool {
        let a = self.as_array();
        a.iter().all(|&x| x == a[0])
    }
}

/// Data shared by every form on one coalgebra.
pub struct BalancedContext<'a> {
    coalgebra: &'a Coalgebra,
    actions: Bimodule,
    bullet: FinDimAlgebra,
    relations: Vec<SparseRow>,
    quotient_projection: DenseMatrix,
}

impl<'a> BalancedContext<'a> {
    pub fn new(c: &'a Coalgebra) -> Result<Self> {
        let cr = induce_coring(c)?;
        let pair = cr.pair_tensor();
        let relations = pair.quotient().relations().rows().map(|(_, r)| r.clone()).collect();
        Ok(BalancedContext {
            coalgebra: c,
            actions: build_actions(c)?,
            bullet: opposite_dual_algebra(c),
            relations,
            quotient_projection: pair.quotient().projection_matrix(),
        })
    }

    pub fn conditions(&self, g: &BalancedForm) -> BalancedConditions {
        let c = self.coalgebra;
        let n = c.dim();
        let f = c.field();
        let basis = |i: usize| self.bullet.basis_vector(i);
        let act = &self.actions;

        let balanced = (0..n).all(|fi| {
            (0..n).all(|ci| {
                (0..n).all(|di| {
                    g.pairing(&act.right[fi].column(ci), &basis(di))
                        == g.pairing(&basis(ci), &act.left[fi].column(di))
                })
            })
        });

        let gamma_l_linear = (0..n).all(|fi| {
            (0..n).all(|di| {
                let moved = act.left[fi].column(di);
                let lhs = g.form.mul_vec(&moved).expect("length n");
                lhs == self.bullet.product(&basis(fi), &g.gamma_l(di))
            })
        });

        let gamma_r_linear = (0..n).all(|fi| {
            (0..n).all(|ci| {
                let moved = act.right[fi].column(ci);
                let lhs = g.form.transpose().mul_vec(&moved).expect("length n");
                lhs == self.bullet.product(&g.gamma_r(ci), &basis(fi))
            })
        });

        let tilde = g.tilde();
        let factors_through_tensor = self.relations.iter().all(|row| {
            let mut s = f.zero();
            for (i, v) in row {
                s += &(v * &tilde[*i]);
            }
            s.is_zero()
        });

        let twisted_compatibility = (0..n).all(|ci| {
            (0..n).all(|di| {
                let mut lhs = vec![f.zero(); n];
                for (j, k, v) in c.terms(ci) {
                    lhs[*k] += &(v * g.form.get(*j, di));
                }
                let mut rhs = vec![f.zero(); n];
                for (j, k, v) in c.terms(di) {
                    rhs[*j] += &(v * g.form.get(ci, *k));
                }
                lhs == rhs
            })
        });

        BalancedConditions {
            balanced,
            gamma_l_linear,
            gamma_r_linear,
            factors_through_tensor,
            twisted_compatibility,
        }
    }

    /// A form that factors through `C ⊗_{C•} C`, from quotient coordinates.
    pub fn form_from_quotient(&self, phi: &[Scalar]) -> BalancedForm {
        let n = self.coalgebra.dim();
        let row = DenseMatrix::from_entries(self.coalgebra.field(), 1, phi.len(), phi.to_vec()).expect("1 row");
        let flat = row.mul(&self.quotient_projection).expect("quotient dim");
        BalancedForm {
            form: DenseMatrix::from_entries(self.coalgebra.field(), n, n, flat.row(0).to_vec()).expect("n²"),
        }
    }

    pub fn quotient_dim(&self) -> usize {
        self.quotient_projection.rows()
    }
}

pub fn balanced_conditions(g: &BalancedForm, c: &Coalgebra) -> Result<BalancedConditions> {
    Ok(BalancedContext::new(c)?.conditions(g))
}

#[derive(Clone, Debug, Serialize)]
pub struct BatteryReport {
    pub seed: u64,
    pub trials: usize,
    pub outcomes: Vec<BalancedConditions>,
    pub all_agree: bool,
    pub true_count: usize,
    pub false_count: usize,
}

/// Evaluates the five conditions on `trials` pseudo-random forms. Half of
/// the draws (by coin flip) are pulled back from random functionals on
/// `C ⊗_{C•} C`, the rest have independent entries in `-2..=2`.
pub fn balanced_battery(c: &Coalgebra, trials: usize, seed: u64) -> Result<BatteryReport> {
    let ctx = BalancedContext::new(c)?;
    let f = c.field();
    let n = c.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut outcomes = Vec::with_capacity(trials);
    for _ in 0..trials {
        let g = if rng.gen_bool(0.5) {
            let phi: Vec<Scalar> = (0..ctx.quotient_dim()).map(|_| f.from_i64(rng.gen_range(-3..=3))).collect();
            ctx.form_from_quotient(&phi)
        } else {
            let entries = (0..n * n).map(|_| f.from_i64(rng.gen_range(-2..=2))).collect();
            BalancedForm {
                form: DenseMatrix::from_entries(f, n, n, entries)?,
            }
        };
        outcomes.push(ctx.conditions(&g));
    }
    let true_count = outcomes.iter().filter(|o| o.balanced).count();
    Ok(BatteryReport {
        seed,
        trials,
        all_agree: outcomes.iter().all(BalancedConditions::agree),
        true_count,
        false_count: trials - true_count,
        outcomes,
    })
}

/// Basis triple `(f, c, d)` with `f(c)ε(d) ≠ ε(c)f(d)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EpsilonBarWitness {
    pub f: usize,
    pub c: usize,
    pub d: usize,
    pub lhs: String,
    pub rhs: String,
}

/// Searches for a witness that `ε̄(c) = ε(c)ε(−)` is not left `C•`-linear,
/// preferring one where `f(c)ε(d)` is nonzero.
pub fn epsilon_bar_check(c: &Coalgebra) -> Result<Option<EpsilonBarWitness>> {
    let eps = c.require_epsilon()?;
    let n = c.dim();
    let one = c.field().one();
    let zero = c.field().zero();
    let dual = |i: usize, j: usize| if i == j { &one } else { &zero };
    let mut fallback = None;
    for f in 0..n {
        for ci in 0..n {
            for d in 0..n {
                let lhs = dual(f, ci) * &eps[d];
                let rhs = &eps[ci] * dual(f, d);
                if lhs != rhs {
                    let w = EpsilonBarWitness {
                        f,
                        c: ci,
                        d,
                        lhs: lhs.to_string(),
                        rhs: rhs.to_string(),
                    };
                    if !lhs.is_zero() {
                        return Ok(Some(w));
                    }
                    fallback.get_or_insert(w);
                }
            }
        }
    }
    Ok(fallback)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalgebra::Corpus;
    use crate::linalg::Field;

    const Q: Field = Field::Rational;

    #[test]
    fn zero_form_satisfies_everything() {
        let c = Corpus::DualNumbers.build(Q).unwrap();
        let r = balanced_conditions(&BalancedForm::zero(&c), &c).unwrap();
        assert_eq!(r.as_array(), [true; 5]);
    }

    #[test]
    fn grouplike_identity_and_all_ones() {
        let c = Corpus::Grouplike(2).build(Q).unwrap();
        let id = BalancedForm {
            form: DenseMatrix::identity(Q, 2),
        };
        assert_eq!(balanced_conditions(&id, &c).unwrap().as_array(), [true; 5]);
        let ones = BalancedForm {
            form: DenseMatrix::from_i64_rows(Q, &[&[1, 1], &[1, 1]]),
        };
        assert_eq!(balanced_conditions(&ones, &c).unwrap().as_array(), [false; 5]);
    }

    #[test]
    fn battery_agrees_on_matrix() {
        let c = Corpus::Matrix(2).build(Q).unwrap();
        let r = balanced_battery(&c, 20, DEFAULT_SEED).unwrap();
        assert!(r.all_agree);
        assert!(r.true_count > 0 && r.false_count > 0);
    }

    #[test]
    fn epsilon_bar_witnesses() {
        let t = Corpus::Trivial.build(Q).unwrap();
        assert_eq!(epsilon_bar_check(&t).unwrap(), None);
        let d = Corpus::DualNumbers.build(Q).unwrap();
        let w = epsilon_bar_check(&d).unwrap().unwrap();
        assert_eq!((w.f, w.c, w.d), (1, 1, 0));
        assert_eq!((w.lhs.as_str(), w.rhs.as_str()), ("1", "0"));
        let g = Corpus::Grouplike(2).build(Q).unwrap();
        let w = epsilon_bar_check(&g).unwrap().unwrap();
        assert_eq!((w.f, w.c, w.d), (0, 0, 1));
    }
}
