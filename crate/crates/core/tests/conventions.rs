//! The realization checks distinguish the two candidate group-part
//! conventions: only the inverse one survives a nonabelian battery.

use std::sync::Arc;

use monofib::fixtures::battery;
use monofib::group::Group;
use monofib::homsearch::DEFAULT_HOM_CAP;
use monofib::lemmas::{check_realization, contexts_for, ConventionChoice};
use monofib::realization::{select_convention, Convention};

#[test]
fn plain_fails_and_inverse_passes_over_s3() {
    let contexts = contexts_for(vec![battery(Arc::new(Group::symmetric3()))], DEFAULT_HOM_CAP);
    let plain = check_realization(&contexts, ConventionChoice::Fixed(Convention::Plain));
    assert!(!plain.passed());
    assert!(!plain.witnesses.is_empty());
    let inverse = check_realization(&contexts, ConventionChoice::Fixed(Convention::Inverse));
    assert!(inverse.passed(), "{}", inverse.text());
    let auto = check_realization(&contexts, ConventionChoice::Auto);
    assert!(auto.passed(), "{}", auto.text());
}

#[test]
fn probe_selects_inverse_with_witnesses_against_plain() {
    let probe = select_convention();
    assert_eq!(probe.chosen, Some(Convention::Inverse));
    assert!(probe.witnesses.contains_key(&Convention::Plain));
    assert!(!probe.witnesses.contains_key(&Convention::Inverse));
}
