mod common;

use coalg_core::coalgebra::{coopposite, direct_sum, validate_coalgebra, Coalgebra, Corpus};
use coalg_core::dual::{build_actions, dual_convolution_algebra, opposite_dual_algebra};
use coalg_core::format::{canonical_hash, emit_spec, parse_spec};
use coalg_core::linalg::{Field, Scalar};
use common::{config, corpus, fields, scalars};
use proptest::prelude::*;

fn dense(c: &Coalgebra) -> Vec<Scalar> {
    let n = c.dim();
    let mut d = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                d.push(c.delta(i, j, k).clone());
            }
        }
    }
    d
}

/// Triple-loop evaluation of coassociativity and the counit laws, returning
/// the first failing basis index of each.
fn oracle(c: &Coalgebra) -> (Option<usize>, Option<(Option<usize>, Option<usize>)>) {
    let n = c.dim();
    let f = c.field();
    let d = |i: usize, j: usize, k: usize| c.delta(i, j, k).clone();
    let coassoc = (0..n).find(|&i| {
        (0..n).any(|a| {
            (0..n).any(|b| {
                (0..n).any(|e| {
                    let mut l = f.zero();
                    let mut r = f.zero();
                    for m in 0..n {
                        l += &(&d(i, m, e) * &d(m, a, b));
                        r += &(&d(i, a, m) * &d(m, b, e));
                    }
                    l != r
                })
            })
        })
    });
    let counit = c.epsilon().map(|eps| {
        let law = |left: bool| {
            (0..n).find(|&i| {
                (0..n).any(|t| {
                    let mut s = f.zero();
                    for m in 0..n {
                        s += &if left { &eps[m] * &d(i, m, t) } else { &d(i, t, m) * &eps[m] };
                    }
                    if t == i { !s.is_one() } else { !s.is_zero() }
                })
            })
        };
        (law(true), law(false))
    });
    (coassoc, counit)
}

fn witness(c: &Coalgebra, name: &str) -> Option<usize> {
    validate_coalgebra(c).get(name).and_then(|chk| chk.witness.as_ref().map(|w| w[0]))
}

fn random_coalgebra() -> impl Strategy<Value = Coalgebra> {
    (fields(), 1usize..=3, prop::collection::vec(-1i64..=1, 27), prop::option::of(prop::collection::vec(0i64..=1, 3)))
        .prop_map(|(f, n, xs, eps)| {
            let basis = (0..n).map(|i| format!("b{i}")).collect();
            let eps = eps.map(|e| scalars(f, &e[..n]));
            Coalgebra::new("random", f, basis, scalars(f, &xs[..n * n * n]), eps).unwrap()
        })
}

fn perturbed_corpus() -> impl Strategy<Value = Coalgebra> {
    (corpus(), fields(), any::<prop::sample::Index>(), -1i64..=1).prop_map(|(k, f, at, by)| {
        let c = k.build(f).unwrap();
        let mut d = dense(&c);
        let i = at.index(d.len());
        d[i] += &f.from_i64(by);
        Coalgebra::new("perturbed", f, c.basis_names().to_vec(), d, c.epsilon().map(<[Scalar]>::to_vec)).unwrap()
    })
}

fn assert_matches_oracle(c: &Coalgebra) -> Result<(), TestCaseError> {
    let (coassoc, counit) = oracle(c);
    prop_assert_eq!(witness(c, "coassociativity"), coassoc);
    prop_assert_eq!(validate_coalgebra(c).check_passed("coassociativity"), coassoc.is_none());
    if let Some((l, r)) = counit {
        prop_assert_eq!(witness(c, "left_counit"), l);
        prop_assert_eq!(witness(c, "right_counit"), r);
    } else {
        prop_assert!(validate_coalgebra(c).get("left_counit").is_none());
    }
    Ok(())
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn validator_matches_brute_force_on_random_tables(c in random_coalgebra()) {
        assert_matches_oracle(&c)?;
    }

    #[test]
    fn validator_matches_brute_force_on_perturbed_corpus(c in perturbed_corpus()) {
        assert_matches_oracle(&c)?;
    }

    #[test]
    fn coopposite_is_an_involution(k in corpus(), f in fields()) {
        let c = k.build(f).unwrap();
        let back = coopposite(&coopposite(&c));
        prop_assert_eq!(&back, &c);
        prop_assert!(validate_coalgebra(&coopposite(&c)).passed());
    }

    #[test]
    fn convolution_matches_direct_evaluation(
        k in corpus(),
        f in fields(),
        xs in prop::collection::vec(-3i64..=3, 9),
        ys in prop::collection::vec(-3i64..=3, 9),
    ) {
        let c = k.build(f).unwrap();
        let n = c.dim();
        let (u, v) = (scalars(f, &xs[..n]), scalars(f, &ys[..n]));
        // (u∗v)(e_i) = Σ d[i][j][k] u(e_j) v(e_k)
        let expected: Vec<Scalar> = (0..n)
            .map(|i| {
                let mut s = f.zero();
                for (j, k, d) in c.terms(i) {
                    s += &(&(d * &u[*j]) * &v[*k]);
                }
                s
            })
            .collect();
        prop_assert_eq!(dual_convolution_algebra(&c).product(&u, &v), expected.clone());
        prop_assert_eq!(opposite_dual_algebra(&c).product(&v, &u), expected);
    }

    #[test]
    fn actions_match_direct_evaluation(
        k in corpus(),
        f in fields(),
        xs in prop::collection::vec(-3i64..=3, 9),
        ys in prop::collection::vec(-3i64..=3, 9),
        x in 0usize..9,
    ) {
        let c = k.build(f).unwrap();
        let n = c.dim();
        let x = x % n;
        let (g, h) = (scalars(f, &xs[..n]), scalars(f, &ys[..n]));
        let acts = build_actions(&c).unwrap();
        // g⇀e_x = Σ g(x₁)x₂ and e_x↼g = Σ x₁g(x₂)
        let mut hit = vec![f.zero(); n];
        let mut rhit = vec![f.zero(); n];
        for (j, k, d) in c.terms(x) {
            hit[*k] += &(d * &g[*j]);
            rhit[*j] += &(d * &g[*k]);
        }
        prop_assert_eq!(acts.left_matrix(&g).column(x), hit);
        prop_assert_eq!(acts.right_matrix(&g).column(x), rhit);
        let bullet = opposite_dual_algebra(&c);
        let gh = bullet.product(&g, &h);
        prop_assert_eq!(
            acts.left_matrix(&gh),
            acts.left_matrix(&g).mul(&acts.left_matrix(&h)).unwrap()
        );
        prop_assert_eq!(
            acts.right_matrix(&gh),
            acts.right_matrix(&h).mul(&acts.right_matrix(&g)).unwrap()
        );
    }

    #[test]
    fn emit_then_parse_round_trips(parts in prop::collection::vec(corpus(), 1..=3), f in fields()) {
        let built: Vec<Coalgebra> = parts.iter().map(|k| k.build(f).unwrap()).collect();
        let c = if built.len() == 1 { built[0].clone() } else { direct_sum(&built).unwrap() };
        let parsed = parse_spec(&emit_spec(&c)).unwrap();
        prop_assert_eq!(canonical_hash(&parsed), canonical_hash(&c));
        prop_assert_eq!(parsed, c);
    }
}

#[test]
fn corpus_parses_back_from_files() {
    for k in common::ALL {
        for f in [Field::Rational, Field::Prime(5)] {
            let c = k.build(f).unwrap();
            assert_eq!(parse_spec(&emit_spec(&c)).unwrap(), c, "{}", k.label());
        }
    }
}

#[test]
fn matrix_corpus_is_valid_for_each_size() {
    for n in 1..=4 {
        assert!(validate_coalgebra(&Corpus::Matrix(n).build(Field::Rational).unwrap()).passed());
    }
}
