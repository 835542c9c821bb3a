mod common;

use common::props;

#[test]
fn rank_nullity() {
    props::rank_nullity().unwrap();
}

#[test]
fn solve_brute_force() {
    props::solve_brute_force().unwrap();
}

#[test]
fn adem_idempotent() {
    props::adem_idempotent().unwrap();
}

#[test]
fn associativity() {
    props::associativity().unwrap();
}

#[test]
fn algebra_dimensions() {
    props::algebra_dimensions().unwrap();
}

#[test]
fn composition_associative() {
    props::composition_associative().unwrap();
}

#[test]
fn chart_round_trip() {
    props::chart_round_trip().unwrap();
}

#[test]
fn criterion_monotone() {
    props::criterion_monotone().unwrap();
}

#[test]
fn cover_properties() {
    props::cover_properties().unwrap();
}
