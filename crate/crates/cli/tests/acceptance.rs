//! Acceptance matrix: every claim the toolkit is built to check, one test
//! per criterion, exercising the same code paths as `hlnet reproduce`.

use hlnet_cli::reproduce::{self, CriterionOutcome};
use hlnet_core::Budget;

fn expect_pass(outcome: CriterionOutcome) {
    println!(
        "{} {}: {}",
        if outcome.pass { "ok  " } else { "FAIL" },
        outcome.name,
        outcome.details
    );
    assert!(outcome.pass, "{}: {}", outcome.name, outcome.details);
}

#[test]
fn exact_tolerance_matches_formula_at_dimension_3() {
    expect_pass(reproduce::exact_tolerance_dimension_3(&Budget::default()));
}

#[test]
fn exact_tolerance_matches_formula_at_dimension_4() {
    expect_pass(reproduce::exact_tolerance_dimension_4(&Budget::default()));
}

#[test]
fn extremal_witness_certifies_across_dimensions_3_to_10() {
    expect_pass(reproduce::witness_sweep());
}

#[test]
fn induced_edge_formula_matches_brute_force() {
    expect_pass(reproduce::induced_edge_oracle(&Budget::default()));
}

#[test]
fn boundary_arithmetic_holds_through_dimension_20() {
    expect_pass(reproduce::arithmetic_sweeps());
}

#[test]
fn bounded_faults_leave_a_giant_component() {
    expect_pass(reproduce::giant_component(&Budget::default()));
}

#[test]
fn disjoint_paths_match_certified_cuts_on_random_instances() {
    expect_pass(reproduce::flow_duality());
}

#[test]
fn dimension_3_compositions_fall_into_two_classes() {
    expect_pass(reproduce::dimension_3_classification());
}
