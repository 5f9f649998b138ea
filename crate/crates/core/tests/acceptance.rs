//! Acceptance gate: one test per criterion, each printing a pass/fail line.
//! Windows and instance counts are pinned here; the same checks back the
//! CLI's suite subcommand.

use dpd_core::complex::ChainComplex;
use dpd_core::ding::{dpd_complex, dpd_module, replay_certificate, DpdValue, ModuleDetail};
use dpd_core::fixtures::*;
use dpd_core::oracle::ext_dims_via_free;
use dpd_core::rep::{is_isomorphic, Representation};
use dpd_core::suite;

const SEED: u64 = 0;

fn report(criterion: &str, pass: bool, detail: &str) {
    println!(
        "ACCEPTANCE {criterion}: {} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} failed: {detail}");
}

#[test]
fn criterion_01_fixture_verdicts() {
    // independent re-derivations first: the point module over the dual
    // numbers has a period-one syzygy and vanishing Ext into the regular
    // module through the free-resolution oracle
    let dn = dual_numbers();
    let k = Representation::simple(dn.clone(), 0);
    let om = dpd_core::rep::syzygy(&k);
    assert!(is_isomorphic(&om, &k).unwrap().is_some());
    let reg = Representation::regular(&dn);
    let oracle = ext_dims_via_free(&k, &reg, 3).unwrap();
    assert_eq!(&oracle[1..], &[0, 0, 0]);

    // the A2 simple has projective first syzygy and a nonzero Ext^1 into A
    let s0 = Representation::simple(a2(), 0);
    let om = dpd_core::rep::syzygy(&s0);
    assert!(dpd_core::rep::is_projective(&om));
    let rega2 = Representation::regular(&a2());
    assert_eq!(ext_dims_via_free(&s0, &rega2, 1).unwrap()[1], 1);

    // the loop simple repeats with a nonzero obstruction forever
    let s1 = Representation::simple(arrow_loop(), 1);
    let om = dpd_core::rep::syzygy(&s1);
    assert!(is_isomorphic(&om, &s1).unwrap().is_some());
    let regal = Representation::regular(&arrow_loop());
    assert_eq!(ext_dims_via_free(&s1, &regal, 1).unwrap()[1], 1);

    let v = dpd_module(&k, 8).unwrap();
    assert_eq!(v.value, DpdValue::Finite(0));
    if let ModuleDetail::Finite { certificate, .. } = &v.detail {
        replay_certificate(certificate).unwrap();
    }
    let v = dpd_module(&s0, 8).unwrap();
    assert_eq!(v.value, DpdValue::Finite(1));
    let v = dpd_module(&s1, 8).unwrap();
    assert_eq!(v.value, DpdValue::PosInf);
    let ModuleDetail::Infinite { iso, obstructions, .. } = &v.detail else {
        panic!("expected a replayable cycle certificate");
    };
    assert!(iso.is_isomorphism());
    assert!(!obstructions.is_empty());
    let v = dpd_complex(&rad_inclusion_complex(), 8).unwrap();
    assert_eq!(v.value, DpdValue::Finite(1));
    let v = dpd_complex(&ChainComplex::zero(a2()), 8).unwrap();
    assert_eq!(v.value, DpdValue::NegInf);
    report("01-fixture-verdicts", true, "five pinned verdicts with certificates");
}

#[test]
fn criterion_02_functorial_agreement() {
    let c = suite::check_functorial_agreement(SEED, 5, 50).unwrap();
    report("02-functorial-agreement", c.pass, &c.detail);
}

#[test]
fn criterion_03a_suspension_law() {
    let c = suite::check_suspension_law(SEED, 5, 50).unwrap();
    report("03a-suspension-law", c.pass, &c.detail);
}

#[test]
fn criterion_03b_direct_sum_law() {
    let c = suite::check_direct_sum_law(SEED, 5, 50).unwrap();
    report("03b-direct-sum-law", c.pass, &c.detail);
}

#[test]
fn criterion_03c_stalk_compatibility() {
    let c = suite::check_stalk_compatibility(SEED, 5, 50).unwrap();
    report("03c-stalk-compatibility", c.pass, &c.detail);
}

#[test]
fn criterion_03d_projective_sandwich() {
    let c = suite::check_projective_sandwich(SEED, 5, 50).unwrap();
    report("03d-projective-sandwich", c.pass, &c.detail);
}

#[test]
fn criterion_04_splice_verification_window_8() {
    let c = suite::check_splice_verification(8).unwrap();
    report("04-splice-verification", c.pass, &c.detail);
}

#[test]
fn criterion_05_lift_and_surjectivization() {
    let lifts = suite::check_lift_and_homotopy(SEED, 6).unwrap();
    report("05a-lift-extension-homotopy", lifts.pass, &lifts.detail);
    let surj = suite::check_surjectivization(6).unwrap();
    report("05b-surjectivization-identities", surj.pass, &surj.detail);
}

#[test]
fn criterion_06_rhom_ext_identity() {
    let c = suite::check_rhom_ext_identity(6).unwrap();
    report("06-rhom-ext-degree-identity", c.pass, &c.detail);
}

#[test]
fn criterion_07_ext_oracle() {
    let c = suite::check_ext_oracle(SEED, 100).unwrap();
    report("07-ext-oracle-equivalence", c.pass, &c.detail);
}

#[test]
fn criterion_08_two_of_three() {
    let c = suite::check_two_of_three(SEED, 5, 20).unwrap();
    report("08-two-of-three", c.pass, &c.detail);
}

#[test]
fn criterion_09_derived_bounds() {
    let c = suite::check_derived_bounds(SEED, 5, 20).unwrap();
    report("09-derived-bounds", c.pass, &c.detail);
}

#[test]
fn criterion_10_honest_undetermined() {
    let c = suite::check_honest_undetermined(8).unwrap();
    report("10-honest-undetermined", c.pass, &c.detail);
}
