//! Runs every acceptance property over the fixture battery and prints one
//! pass/fail line per property.

use std::time::Instant;

use monofib::fixtures::full_battery;
use monofib::homsearch::DEFAULT_HOM_CAP;
use monofib::lemmas::{self, contexts_for, ConventionChoice, Context, ReportLine};

fn report(line: &ReportLine, started: Instant) {
    println!("{}  [{:.2?}]", line.text(), started.elapsed());
}

fn contexts() -> &'static [Context] {
    use std::sync::OnceLock;
    static CONTEXTS: OnceLock<Vec<Context>> = OnceLock::new();
    CONTEXTS.get_or_init(|| contexts_for(full_battery(), DEFAULT_HOM_CAP))
}

fn run(check: impl FnOnce(&[Context]) -> ReportLine) {
    let ctx = contexts();
    let started = Instant::now();
    let line = check(ctx);
    report(&line, started);
    assert!(line.passed(), "{}", line.text());
}

#[test]
fn criterion_01_validators_match_oracles() {
    run(lemmas::check_validators);
}

#[test]
fn criterion_02_category_laws() {
    run(lemmas::check_category_laws);
}

#[test]
fn criterion_03_partial_order_and_contiguity() {
    run(lemmas::check_order_and_contiguity);
}

#[test]
fn criterion_04_refinement_chains() {
    run(lemmas::check_refine_chain);
}

#[test]
fn criterion_05_composition_respects_homotopy() {
    run(lemmas::check_composition_respects_homotopy);
}

#[test]
fn criterion_06_iota_identities() {
    run(lemmas::check_iota_identities);
}

#[test]
fn criterion_07_sigma_and_pi() {
    run(lemmas::check_sigma_pi);
}

#[test]
fn criterion_08_realization() {
    run(|c| lemmas::check_realization(c, ConventionChoice::Auto));
}

#[test]
fn criterion_09_trivial_group() {
    run(lemmas::check_trivial_group);
}

#[test]
fn criterion_10_oracle_cross_check() {
    run(lemmas::check_oracles);
}
