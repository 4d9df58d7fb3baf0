//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line per check. Run with `cargo test --test acceptance -- --nocapture`
//! to see the table.

use convexmod::verify;

const SEED: u64 = 20240806;

fn report(checks: &[verify::CheckResult]) -> bool {
    let mut all = true;
    for c in checks {
        println!(
            "[{}] {} | expected {} | actual {} | tol {}",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.expected,
            c.actual,
            c.tolerance
        );
        all &= c.pass;
    }
    all
}

#[test]
fn acceptance_01_t1_constant_n2_disk() {
    let checks = verify::criterion_1_disk_constant(SEED).unwrap();
    assert!(report(&checks), "criterion 1 failed");
}

#[test]
fn acceptance_02_t1_constant_n3_ball() {
    let checks = verify::criterion_2_ball3_constant(SEED).unwrap();
    assert!(report(&checks), "criterion 2 failed");
}

#[test]
fn acceptance_03_ellipsoid_closed_form() {
    let checks = verify::criterion_3_ellipsoid_closed_form(SEED).unwrap();
    assert!(report(&checks), "criterion 3 failed");
}

#[test]
fn acceptance_04_workhorse_sandwich() {
    let checks = verify::criterion_4_workhorse(100, SEED).unwrap();
    assert!(report(&checks), "criterion 4 failed");
}

#[test]
fn acceptance_05_t2_sandwich() {
    let checks = verify::criterion_5_t2_sandwich(SEED).unwrap();
    assert!(report(&checks), "criterion 5 failed");
}

#[test]
fn acceptance_06_slice_identity() {
    let checks = verify::criterion_6_slice_identity(50, SEED).unwrap();
    assert!(report(&checks), "criterion 6 failed");
}

#[test]
fn acceptance_07_affine_and_compare() {
    let mut checks = verify::criterion_7_affine(100, SEED).unwrap();
    checks.extend(verify::criterion_7_compare(100, SEED).unwrap());
    assert!(report(&checks), "criterion 7 failed");
}

#[test]
fn acceptance_08_power_law_exponent() {
    let checks = verify::criterion_8_cor1(SEED).unwrap();
    assert!(report(&checks), "criterion 8 failed");
}

#[test]
fn acceptance_09_graph_domain_sandwich() {
    let checks = verify::criterion_9_graph_domains(SEED).unwrap();
    assert!(report(&checks), "criterion 9 failed");
}

#[test]
fn acceptance_10_section_asymptotics() {
    let checks = verify::criterion_10_section_asymptotics(SEED).unwrap();
    assert!(report(&checks), "criterion 10 failed");
}

#[test]
fn acceptance_11_flat_spots() {
    let checks = verify::criterion_11_flat_spots(SEED).unwrap();
    assert!(report(&checks), "criterion 11 failed");
}

#[test]
fn acceptance_12_equality_case_and_seminorm() {
    let checks = verify::criterion_12_equality_and_seminorm(20, SEED).unwrap();
    assert!(report(&checks), "criterion 12 failed");
}

#[test]
fn acceptance_13_parabola() {
    let checks = verify::criterion_13_parabola(SEED).unwrap();
    assert!(report(&checks), "criterion 13 failed");
}

#[test]
fn acceptance_14_mahler() {
    let checks = verify::criterion_14_mahler(SEED).unwrap();
    assert!(report(&checks), "criterion 14 failed");
}
