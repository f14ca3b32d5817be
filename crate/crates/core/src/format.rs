//! JSON presentation of a coalgebra.
//!
//! ```json
//! {"name": "dualnumbers", "field": "Q", "dim": 2, "basis": ["g", "x"],
//!  "delta": [{"from": 0, "left": 0, "right": 0, "coeff": "1"}, ...],
//!  "epsilon": [{"at": 0, "coeff": 1}]}
//! ```
//!
//! Coefficients are integers or strings holding an integer or `a/b`.
//! Malformed coefficients are reported as syntax errors at their position.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize};
use sha2::{Digest, Sha256};

use crate::coalgebra::{ensure_valid, Coalgebra};
use crate::error::{Error, Result};
use crate::linalg::{Field, Scalar};

/// An exact coefficient as written in the file, before reduction into a field.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Coeff {
    num: BigInt,
    den: BigInt,
}

impl Coeff {
    fn parse(text: &str) -> Option<Coeff> {
        let t = text.trim();
        let (num, den) = match t.split_once('/') {
            Some((a, b)) => (a.trim().parse().ok()?, b.trim().parse().ok()?),
            None => (t.parse().ok()?, BigInt::one()),
        };
        (!BigInt::is_zero(&den)).then_some(Coeff { num, den })
    }
}

impl<'de> Deserialize<'de> for Coeff {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct CoeffVisitor;

        impl Visitor<'_> for CoeffVisitor {
            type Value = Coeff;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a string `a` or `a/b` with b nonzero")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Coeff, E> {
                Ok(Coeff { num: v.into(), den: BigInt::one() })
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Coeff, E> {
                Ok(Coeff { num: v.into(), den: BigInt::one() })
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Coeff, E> {
                Coeff::parse(v).ok_or_else(|| E::custom(format!("malformed coefficient `{v}`")))
            }
        }

        d.deserialize_any(CoeffVisitor)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DeltaRecord {
    from: usize,
    left: usize,
    right: usize,
    coeff: Coeff,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EpsilonRecord {
    at: usize,
    coeff: Coeff,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecFile {
    name: String,
    field: String,
    dim: usize,
    basis: Vec<String>,
    delta: Vec<DeltaRecord>,
    #[serde(default)]
    epsilon: Option<Vec<EpsilonRecord>>,
}

#[derive(Serialize)]
struct DeltaOut {
    from: usize,
    left: usize,
    right: usize,
    coeff: String,
}

#[derive(Serialize)]
struct EpsilonOut {
    at: usize,
    coeff: String,
}

#[derive(Serialize)]
struct SpecOut<'a> {
    name: &'a str,
    field: String,
    dim: usize,
    basis: &'a [String],
    delta: Vec<DeltaOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    epsilon: Option<Vec<EpsilonOut>>,
}

fn reduce(field: Field, c: &Coeff) -> Result<Scalar> {
    field
        .fraction(&c.num, &c.den)
        .ok_or_else(|| Error::InvalidParameter(format!("coefficient {}/{} is undefined in {field}", c.num, c.den)))
}

/// Parses and validates a coalgebra presentation.
pub fn parse_spec(text: &str) -> Result<Coalgebra> {
    ensure_valid(parse_spec_unchecked(text)?)
}

/// Parses a presentation without checking the coalgebra axioms.
pub fn parse_spec_unchecked(text: &str) -> Result<Coalgebra> {
    let spec: SpecFile = serde_json::from_str(text).map_err(|e| Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let field = Field::parse(&spec.field)?;
    if spec.basis.len() != spec.dim {
        return Err(Error::DimensionMismatch {
            context: "basis labels",
            expected: spec.dim,
            found: spec.basis.len(),
        });
    }
    let n = spec.dim;
    let entries = spec
        .delta
        .iter()
        .map(|r| Ok((r.from, r.left, r.right, reduce(field, &r.coeff)?)))
        .collect::<Result<Vec<_>>>()?;
    let epsilon = match &spec.epsilon {
        None => None,
        Some(records) => {
            let mut eps = vec![field.zero(); n];
            for r in records {
                if r.at >= n {
                    return Err(Error::IndexOutOfRange {
                        what: "counit entry",
                        index: r.at,
                        dim: n,
                    });
                }
                eps[r.at] += &reduce(field, &r.coeff)?;
            }
            Some(eps)
        }
    };
    Coalgebra::from_terms(spec.name, field, spec.basis, entries, epsilon)
}

fn spec_out(c: &Coalgebra) -> SpecOut<'_> {
    let mut delta = Vec::new();
    for i in 0..c.dim() {
        for (j, k, v) in c.terms(i) {
            delta.push(DeltaOut {
                from: i,
                left: *j,
                right: *k,
                coeff: v.to_exact_string(),
            });
        }
    }
    let epsilon = c.epsilon().map(|e| {
        e.iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(at, v)| EpsilonOut { at, coeff: v.to_exact_string() })
            .collect()
    });
    SpecOut {
        name: c.name(),
        field: c.field().to_string(),
        dim: c.dim(),
        basis: c.basis_names(),
        delta,
        epsilon,
    }
}

/// Canonical presentation: nonzero entries only, sorted, coefficients as
/// strings.
pub fn emit_spec(c: &Coalgebra) -> String {
    serde_json::to_string_pretty(&spec_out(c)).expect("plain data serializes")
}

/// SHA-256 (hex) of the compact canonical presentation. Two files that
/// parse to the same coalgebra have the same hash.
pub fn canonical_hash(c: &Coalgebra) -> String {
    let text = serde_json::to_string(&spec_out(c)).expect("plain data serializes");
    hex::encode(Sha256::digest(text.as_bytes()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalgebra::Corpus;

    const TRIVIAL: &str = r#"{"name": "trivial", "field": "Q", "dim": 1, "basis": ["e"],
        "delta": [{"from": 0, "left": 0, "right": 0, "coeff": 1}],
        "epsilon": [{"at": 0, "coeff": "1"}]}"#;

    #[test]
    fn trivial_spec() {
        let c = parse_spec(TRIVIAL).unwrap();
        assert_eq!(c, Corpus::Trivial.build(Field::Rational).unwrap());
    }

    #[test]
    fn dualnumbers_round_trip() {
        let built = Corpus::DualNumbers.build(Field::Rational).unwrap();
        let parsed = parse_spec(&emit_spec(&built)).unwrap();
        assert_eq!(parsed, built);
        assert_eq!(canonical_hash(&parsed), canonical_hash(&built));
    }

    #[test]
    fn zero_denominator_is_a_syntax_error() {
        let text = TRIVIAL.replace("\"coeff\": 1", "\"coeff\": \"1/0\"");
        match parse_spec(&text) {
            Err(Error::Syntax { line, column, .. }) => assert!(line >= 1 && column >= 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn broken_json_reports_position() {
        let err = parse_spec("{\n  \"name\": ").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 2, .. }), "{err}");
    }

    #[test]
    fn duplicates_are_summed() {
        let text = r#"{"name": "t", "field": "Q", "dim": 1, "basis": ["e"],
            "delta": [{"from": 0, "left": 0, "right": 0, "coeff": "1/2"},
                      {"from": 0, "left": 0, "right": 0, "coeff": "1/2"}],
            "epsilon": [{"at": 0, "coeff": 1}]}"#;
        assert_eq!(parse_spec(text).unwrap().delta(0, 0, 0), &Field::Rational.one());
    }

    #[test]
    fn index_out_of_range() {
        let text = TRIVIAL.replace("\"right\": 0", "\"right\": 3");
        assert!(matches!(parse_spec(&text), Err(Error::IndexOutOfRange { index: 3, .. })));
    }

    #[test]
    fn non_prime_modulus() {
        let text = TRIVIAL.replace("\"Q\"", "\"Fp:6\"");
        assert!(matches!(parse_spec(&text), Err(Error::NotPrime(6))));
    }

    #[test]
    fn non_coassociative_input_is_rejected_with_witness() {
        // Δ(x) = x⊗g + g⊗g
        let text = r#"{"name": "bad", "field": "Q", "dim": 2, "basis": ["g", "x"],
            "delta": [{"from": 0, "left": 0, "right": 0, "coeff": 1},
                      {"from": 1, "left": 1, "right": 0, "coeff": 1},
                      {"from": 1, "left": 0, "right": 0, "coeff": 1}]}"#;
        match parse_spec(text) {
            Err(Error::InvalidCoalgebra { check, witness }) => {
                assert_eq!(check, "coassociativity");
                assert_eq!(witness, vec![1]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn denominator_divisible_by_p_is_rejected() {
        let text = TRIVIAL.replace("\"Q\"", "\"Fp:5\"").replace("\"coeff\": 1", "\"coeff\": \"1/5\"");
        assert!(matches!(parse_spec(&text), Err(Error::InvalidParameter(_))));
    }
}
