use stringalg::fixtures;
use stringalg::oracle::{oracle_successor, prime_band_completeness, run_all_checks, OracleBudget};
use stringalg::Side;

fn all_checks_pass(name: &str) {
    let a = fixtures::by_name(name).unwrap();
    let reports = run_all_checks(&a, &OracleBudget::default());
    let failed: Vec<_> = reports.iter().filter(|r| !r.passed()).collect();
    assert!(failed.is_empty(), "{name}: {failed:#?}");
}

#[test]
fn gp23() {
    all_checks_pass("gp23");
}

#[test]
fn lambda2() {
    all_checks_pass("lambda2");
}

#[test]
fn not_torsion_free() {
    all_checks_pass("not_torsion_free");
}

#[test]
fn negative_power() {
    all_checks_pass("negative_power");
}

#[test]
fn stable_omega() {
    all_checks_pass("stable_omega");
}

#[test]
fn stable_omega_plus_one() {
    all_checks_pass("stable_omega_plus_one");
}

#[test]
fn stable_omega_plus_two() {
    all_checks_pass("stable_omega_plus_two");
}

#[test]
fn check_order_is_fixed() {
    let a = fixtures::lambda2();
    let names: Vec<String> = run_all_checks(&a, &OracleBudget::capped(6))
        .into_iter()
        .map(|r| r.check)
        .collect();
    assert_eq!(names.first().map(String::as_str), Some("validate"));
    assert_eq!(names.last().map(String::as_str), Some("omega-periodicity"));
    assert_eq!(names.len(), 19);
}

#[test]
fn right_hammock_successor() {
    let l = fixtures::lambda2();
    let u = l.parse_word("a' c' e'").unwrap();
    let h = l.right_hammock_of(&u);
    assert_eq!(h.side, Side::R);
    assert_eq!(l.successor(&u, h).unwrap(), oracle_successor(&l, &u, h, 10));
}

#[test]
fn lowered_bound_misses_bands() {
    for name in ["stable_omega", "stable_omega_plus_one"] {
        let a = fixtures::by_name(name).unwrap();
        let longest = a.prime_bands().iter().map(|b| b.length).max().unwrap();
        assert!(prime_band_completeness(&a, longest, longest).passed());
        assert!(
            !prime_band_completeness(&a, longest - 1, longest).passed(),
            "{name}"
        );
    }
}
