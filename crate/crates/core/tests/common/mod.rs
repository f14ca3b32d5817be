#![allow(dead_code)]

use coalg_core::coalgebra::Corpus;
use coalg_core::coseparability::{seed_from_env, DEFAULT_SEED};
use coalg_core::linalg::{Field, Scalar};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

/// Fixed-seed config; `COALG_SEED` overrides the seed.
pub fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(seed_from_env(DEFAULT_SEED)),
        failure_persistence: None,
        ..Config::default()
    }
}

pub fn fields() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::Rational),
        Just(Field::Prime(2)),
        Just(Field::Prime(3)),
        Just(Field::Prime(5)),
        Just(Field::Prime(7)),
    ]
}

pub fn corpus() -> impl Strategy<Value = Corpus> {
    prop_oneof![
        Just(Corpus::Trivial),
        (1usize..=3).prop_map(Corpus::Grouplike),
        (1usize..=3).prop_map(Corpus::Matrix),
        Just(Corpus::DualNumbers),
    ]
}

pub fn scalars(field: Field, xs: &[i64]) -> Vec<Scalar> {
    xs.iter().map(|&x| field.from_i64(x)).collect()
}

pub const ALL: [Corpus; 6] = [
    Corpus::Trivial,
    Corpus::Grouplike(2),
    Corpus::Grouplike(3),
    Corpus::Matrix(2),
    Corpus::Matrix(3),
    Corpus::DualNumbers,
];
