//! The `verify` subcommand: recomputes everything the engine claims through
//! independent routes and reports named pass/fail checks.
//!
//! Two failure classes are distinguished. Consistency checks (staircase
//! structure, barcode oracle agreement) failing mean the engine itself is
//! inconsistent; verification checks failing mean the engine disagrees with
//! a published closed form.

use upsilon_torsion::alexander::{
    alexander_twisted_closed, alexander_twisted_morton, KnotSpec,
};
use upsilon_torsion::closedform::{closed_orders, upsilon_closed_form};
use upsilon_torsion::persistence::{barcode_at, barcode_by_ranks};
use upsilon_torsion::rational::rat_int;
use upsilon_torsion::rng::SplitMix64;
use upsilon_torsion::staircase::{
    staircase_from_gaps, validate_staircase, validate_twisted_staircase, StaircaseComplex,
};
use upsilon_torsion::upsilon::{ord_from_longest_gap, PiecewiseLinear, TorsionOrders};

use crate::output::Check;

/// Deterministic seed for the random parameters, so runs are reproducible.
const VERIFY_SEED: u64 = 0x7e57_0b5e;
const ORACLE_SAMPLES: usize = 5;

pub struct VerifyReport {
    pub checks: Vec<Check>,
    pub consistency_failure: bool,
    pub mismatch: bool,
}

pub fn run_checks(
    spec: &KnotSpec,
    complex: &StaircaseComplex,
    upsilon: &PiecewiseLinear,
    orders: &TorsionOrders,
) -> VerifyReport {
    let mut checks = Vec::new();
    let mut consistency_failure = false;
    let mut mismatch = false;

    let mut consistency = |checks: &mut Vec<Check>, name: &str, pass: bool, detail: Option<String>| {
        if !pass {
            consistency_failure = true;
        }
        checks.push(Check::new(name, pass, detail));
    };
    let mut verification = |checks: &mut Vec<Check>, name: &str, pass: bool, detail: Option<String>| {
        if !pass {
            mismatch = true;
        }
        checks.push(Check::new(name, pass, detail));
    };

    // structural validity of the staircase itself
    let violations = match spec {
        KnotSpec::Twisted { p, k } => validate_twisted_staircase(complex, *p, *k),
        _ => validate_staircase(complex),
    };
    consistency(
        &mut checks,
        "staircase_valid",
        violations.is_empty(),
        (!violations.is_empty()).then(|| violations.join("; ")),
    );

    // barcode reduction against the rank oracle at random parameters
    let mut rng = SplitMix64::new(VERIFY_SEED);
    let mut oracle_ok = true;
    let mut oracle_detail = None;
    for _ in 0..ORACLE_SAMPLES {
        let t = rng.rational_in_0_2(97);
        let bc = barcode_at(complex, &t).expect("t in range");
        let vb = barcode_by_ranks(complex, &t).expect("t in range");
        if bc.value_multiset() != vb.finite || bc.survivor_birth != vb.survivor_birth {
            oracle_ok = false;
            oracle_detail = Some(format!("bar multisets differ at t = {t}"));
            break;
        }
    }
    consistency(&mut checks, "barcode_oracle_agreement", oracle_ok, oracle_detail);

    // Ord through the longest gap, independent of the sweep
    let gaps = spec.gaps().expect("validated spec has gaps");
    let longest = ord_from_longest_gap(&gaps);
    verification(
        &mut checks,
        "ord_vs_longest_gap",
        orders.ord == longest,
        (orders.ord != longest).then(|| format!("slope gives {}, longest gap {longest}", orders.ord)),
    );

    match spec {
        KnotSpec::Twisted { p, k } => {
            if *p >= 3 {
                let agree = alexander_twisted_closed(*p, *k) == alexander_twisted_morton(*p, *k);
                verification(
                    &mut checks,
                    "alexander_dual_derivation",
                    agree,
                    (!agree).then(|| "quotient and closed-form polynomials differ".to_string()),
                );
            }
            if *p == 2 || *p >= 4 {
                let closed = upsilon_closed_form(*p).expect("closed form exists");
                let agree = *upsilon == closed;
                verification(
                    &mut checks,
                    "closed_form_upsilon",
                    agree,
                    (!agree).then(|| "engine upsilon differs from the closed form".to_string()),
                );
            }
            let expected = closed_orders(*p).expect("p >= 2");
            let ord_ok = orders.ord == expected.ord;
            let ord_prime_ok = match expected.ord_prime {
                Some(v) => orders.ord_prime == rat_int(v as i64),
                None => true,
            };
            verification(
                &mut checks,
                "torsion_orders_closed_form",
                ord_ok && ord_prime_ok,
                (!(ord_ok && ord_prime_ok)).then(|| {
                    format!(
                        "engine gives ({}, {}), closed form ({}, {:?})",
                        orders.ord, orders.ord_prime, expected.ord, expected.ord_prime
                    )
                }),
            );
        }
        KnotSpec::Torus { p, q } => {
            let expected = (*p - 1) as u64;
            let pass = orders.ord == expected && longest == expected;
            verification(
                &mut checks,
                "torus_ord",
                pass,
                (!pass).then(|| format!("expected ord = {expected}, got {}", orders.ord)),
            );
            if *q == *p + 1 {
                let expected = rat_int((*p / 2) as i64);
                let pass = orders.ord_prime == expected;
                verification(
                    &mut checks,
                    "torus_ord_prime_floor_half",
                    pass,
                    (!pass).then(|| {
                        format!("expected ord' = {expected}, got {}", orders.ord_prime)
                    }),
                );
            }
        }
        _ => {}
    }

    VerifyReport {
        checks,
        consistency_failure,
        mismatch,
    }
}

/// Round-trip helper used by `verify`: the staircase rebuilt from the gaps
/// the knot spec reports.
pub fn staircase_of(spec: &KnotSpec) -> StaircaseComplex {
    staircase_from_gaps(&spec.gaps().expect("validated spec has gaps"))
}
