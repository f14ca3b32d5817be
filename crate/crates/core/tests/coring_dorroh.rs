mod common;

use coalg_core::coalgebra::Corpus;
use coalg_core::coring::{
    check_coring_morphism, dual_ring_product, induce_coring, over_ground_field, solve_counit, unity_check,
    validate_coring, DualRingVariant, Side,
};
use coalg_core::coseparability::random_direct_sum;
use coalg_core::dorroh::{
    build_dorroh, check_coideal_embedding, forget, lift_bicomodule, lift_left_comodule, lift_right_comodule,
    validate_bicomodule, validate_comodule, validate_dorroh, Bicomodule, ComoduleOverCoring,
};
use coalg_core::dual::unit_map_eta;
use coalg_core::linalg::{DenseMatrix, Field};
use common::{config, corpus, ALL};
use proptest::prelude::*;

const Q: Field = Field::Rational;

fn dorroh_round_trip(k_or_sum: coalg_core::coalgebra::Coalgebra) -> Result<(), TestCaseError> {
    let cr = induce_coring(&k_or_sum).unwrap();
    let d = build_dorroh(&cr).unwrap();
    prop_assert!(validate_dorroh(&d).passed(), "{:?}", validate_dorroh(&d));
    prop_assert!(check_coideal_embedding(&d).passed());
    for side in [Side::Left, Side::Right] {
        let reg = ComoduleOverCoring::regular(&cr, side);
        let lifted = match side {
            Side::Left => lift_left_comodule(&d, &reg).unwrap(),
            Side::Right => lift_right_comodule(&d, &reg).unwrap(),
        };
        prop_assert!(validate_comodule(&d.coring, &lifted).passed());
        prop_assert_eq!(forget(&d, &lifted), reg);
    }
    Ok(())
}

proptest! {
    #![proptest_config(config(16))]

    #[test]
    fn dorroh_of_corpus_is_counital(k in corpus(), rational in any::<bool>()) {
        dorroh_round_trip(k.build(if rational { Q } else { Field::Prime(5) }).unwrap())?;
    }

    #[test]
    fn dorroh_of_small_direct_sums(seed in any::<u64>()) {
        let (c, _) = random_direct_sum(seed, Q).unwrap();
        prop_assume!(c.dim() <= 10);
        dorroh_round_trip(c)?;
    }
}

#[test]
fn induced_corings_validate() {
    for k in ALL {
        for f in [Q, Field::Prime(5)] {
            let c = k.build(f).unwrap();
            assert!(validate_coring(&induce_coring(&c).unwrap()).passed(), "{}", k.label());
            assert!(validate_coring(&over_ground_field(&c)).passed(), "{}", k.label());
        }
    }
}

#[test]
fn identity_eta_is_a_coring_morphism_for_every_counital_member() {
    for k in ALL {
        let c = k.build(Q).unwrap();
        let eta = DenseMatrix::from_columns(Q, c.dim(), &[unit_map_eta(&c).unwrap()]);
        let r = check_coring_morphism(
            &DenseMatrix::identity(Q, c.dim()),
            &eta,
            &over_ground_field(&c),
            &induce_coring(&c).unwrap(),
        );
        assert!(r.passed(), "{}: {r:?}", k.label());
    }
}

#[test]
fn bicomodule_lift_of_regular_bicomodule() {
    let c = Corpus::Grouplike(2).build(Q).unwrap();
    let cr = induce_coring(&c).unwrap();
    let d = build_dorroh(&cr).unwrap();
    let b = Bicomodule::regular(&cr);
    assert!(validate_bicomodule(&cr, &cr, &b).passed());
    let lifted = lift_bicomodule(&d, &d, &b).unwrap();
    assert!(validate_bicomodule(&d.coring, &d.coring, &lifted).passed());
}

#[test]
fn counits_are_unities_of_the_dual_rings() {
    for k in [Corpus::Grouplike(2), Corpus::Matrix(2)] {
        let c = k.build(Q).unwrap();
        let cr = induce_coring(&c).unwrap();
        let right = solve_counit(&cr, Side::Right).solution().unwrap().map.clone();
        let left = solve_counit(&cr, Side::Left).solution().unwrap().map.clone();
        let ring_l = dual_ring_product(&cr, DualRingVariant::Left).unwrap();
        assert!(unity_check(&cr, &ring_l, &right).check_passed("left_unity"));
        let ring_r = dual_ring_product(&cr, DualRingVariant::Right).unwrap();
        assert!(unity_check(&cr, &ring_r, &left).check_passed("right_unity"));
    }
}
