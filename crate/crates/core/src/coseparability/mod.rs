//! Coseparability: cointegrals, retractions, balanced forms, the induced
//! separable algebra, and the four-way equivalence with counitality.

pub mod balanced;
pub mod cointegral;
pub mod pipeline;
pub mod separable;

pub use balanced::{
    balanced_battery, balanced_conditions, epsilon_bar_check, seed_from_env, BalancedConditions, BalancedContext,
    BalancedForm, BatteryReport, EpsilonBarWitness, DEFAULT_SEED,
};
pub use cointegral::{
    cointegral_to_retraction, retraction_to_cointegral, solve_cointegral, verify_cointegral, verify_retraction,
    Cointegral, CointegralOutcome, Retraction,
};
pub use pipeline::{random_direct_sum, sum_components, theorem_pipeline, CrossChecks, Leg, TheoremReport, Verdicts};
pub use separable::{
    check_section, induced_multiplication, measuring_pairing_check, InducedAlgebra, SeparabilityCertificate,
};
