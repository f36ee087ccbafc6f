//! Acceptance suite: one test per criterion, each printing a pass line.
//! Criterion 11 (byte-identical CLI reports) lives in the CLI crate's
//! acceptance target next to the binary.

mod common;

use std::f64::consts::TAU;

use depol::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 42;

fn hwp_qwp(m1: i32, m2: i32) -> CascadeTemplate {
    CascadeTemplate::from_kinds_and_m(&[PlateKind::Half, PlateKind::Quarter], &[m1, m2]).unwrap()
}

fn spec_for(template: &CascadeTemplate, xi: &[f64], zeta: &[f64]) -> CascadeSpec {
    template.instantiate(xi, zeta).unwrap()
}

fn random_zetas(rng: &mut ChaCha8Rng, count: usize, plates: usize) -> Vec<Vec<f64>> {
    (0..count)
        .map(|_| (0..plates).map(|_| rng.gen_range(0.0..TAU)).collect())
        .collect()
}

#[test]
fn criterion_01_zero_mean_ideal_cascade() {
    let template = hwp_qwp(1, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut zetas = vec![vec![0.0, 0.0]];
    zetas.extend(random_zetas(&mut rng, 8, 2));
    for zeta in &zetas {
        let dop = residual_dop_max(&spec_for(&template, &[0.0, 0.0], zeta));
        assert!(dop < 1e-12, "ideal cascade dop = {dop:e} at zeta {zeta:?}");
    }
    println!("acceptance 01 zero-mean ideal cascade: PASS");
}

#[test]
fn criterion_02_two_plate_linear_law() {
    let template = hwp_qwp(1, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut zetas = vec![vec![0.0, 0.0]];
    zetas.extend(random_zetas(&mut rng, 8, 2));
    for &xi2 in &[0.005, 0.01, 0.02] {
        for &xi1 in &[0.0, 0.02, -0.02] {
            for zeta in &zetas {
                let dop = residual_dop_max(&spec_for(&template, &[xi1, xi2], zeta));
                assert!(
                    (dop - xi2).abs() <= 0.15 * xi2,
                    "dop {dop} vs |xi2| {xi2} at xi1 {xi1}, zeta {zeta:?}"
                );
            }
        }
    }
    let grid = GeometricGrid {
        lo: 1e-3,
        hi: 10f64.powf(-1.5),
        points: 6,
    };
    let fit = scaling_exponent(&template, &grid, 8, &XiPlan::corners_and_axes(), SEED).unwrap();
    assert!(
        (0.9..=1.1).contains(&fit.slope),
        "linear-law slope = {}",
        fit.slope
    );
    println!(
        "acceptance 02 two-plate linear law (slope {:.4}): PASS",
        fit.slope
    );
}

#[test]
fn criterion_03_counter_rotating_law() {
    let template = hwp_qwp(1, -1);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for &(xi1, xi2) in &[(0.02_f64, 0.005_f64), (0.01, 0.02), (0.02, 0.01)] {
        let expected = (xi1 / 2.0).abs().max(xi2.abs());
        for zeta in random_zetas(&mut rng, 8, 2) {
            let dop = residual_dop_max(&spec_for(&template, &[xi1, xi2], &zeta));
            assert!(
                (dop - expected).abs() <= 0.15 * expected,
                "dop {dop} vs {expected} for xi ({xi1}, {xi2}), zeta {zeta:?}"
            );
        }
    }
    println!("acceptance 03 counter-rotating law: PASS");
}

#[test]
fn criterion_04_half_harmonic_discrepancy_resolved() {
    let cert = certify_half_harmonic(0.01, 0.01, 8, SEED).unwrap();
    assert!(
        cert.discriminates(0.10),
        "no unique candidate within 10%: printed err {}, column err {}",
        cert.printed_rel_err,
        cert.column_norm_rel_err
    );
    assert!(cert.winner_rel_err() <= 0.10);
    println!(
        "acceptance 04 half-harmonic winner = {} (numeric {:.6e}, err {:.2e} vs loser {:.2e}): PASS",
        cert.winner().label(),
        cert.numeric_dop,
        cert.winner_rel_err(),
        cert.printed_rel_err.max(cert.column_norm_rel_err)
    );
}

#[test]
fn criterion_05_table1_quadratic_law() {
    let ebox = ErrorBox::new(0.02).unwrap();
    let report = verify_table1(ebox, &QuadraticCriteria::strict(), SEED).unwrap();
    for row in &report.rows {
        let r = &row.result;
        assert!(
            r.ideal_dop < 1e-10,
            "{} {:?}: ideal dop {:e}",
            row.arrangement.label(),
            row.m,
            r.ideal_dop
        );
        assert!(
            r.box_dop <= 3.0 * 0.02 * 0.02,
            "{} {:?}: box dop {:e}",
            row.arrangement.label(),
            row.m,
            r.box_dop
        );
        let slope = r.slope.expect("sweep above floor");
        assert!(
            (1.8..=2.2).contains(&slope),
            "{} {:?}: slope {}",
            row.arrangement.label(),
            row.m,
            slope
        );
        assert!(row.pass);
    }
    assert!(report.all_pass());
    assert_eq!(report.rows.len(), 25);
    println!("acceptance 05 quadratic law on all 25 table rows: PASS");
}

#[test]
fn criterion_06_minimal_frequency_claims() {
    let ebox = ErrorBox::new(0.02).unwrap();
    let claims = minimal_frequency_claims(5, ebox, &QuadraticCriteria::survey(), SEED).unwrap();
    for c in [&claims.hqq, &claims.qhq] {
        assert_eq!(
            c.quadratic_with_max_abs_leq_2,
            0,
            "{}: quadratic combos below max|m| = 3",
            c.arrangement.label()
        );
        assert_eq!(c.min_max_abs_m, Some(3), "{}", c.arrangement.label());
        assert_eq!(c.min_sum_abs_m, Some(6), "{}", c.arrangement.label());
        assert!(c.reference_combo_quadratic, "{}", c.arrangement.label());
    }
    println!(
        "acceptance 06 minimal-frequency claims (hqq {} / qhq {} quadratic combos): PASS",
        claims.hqq.quadratic_count, claims.qhq.quadratic_count
    );
}

#[test]
fn criterion_07_symmetry_properties() {
    let ebox = ErrorBox::new(0.02).unwrap();
    for (arrangement, rows) in [
        (Arrangement::Hqq, table1_rows(Arrangement::Hqq)),
        (Arrangement::Qhq, table1_rows(Arrangement::Qhq)),
    ] {
        for (index, &m) in rows.iter().enumerate() {
            let eq = equivalence_check(arrangement, m, ebox, 32, SEED).unwrap();
            assert!(
                eq.negation_max_diff < 1e-10,
                "{} {m:?}: negation diff {:e}",
                arrangement.label(),
                eq.negation_max_diff
            );
            assert!(
                eq.inversion_max_diff < 1e-10,
                "{} {m:?}: inversion diff {:e}",
                arrangement.label(),
                eq.inversion_max_diff
            );
            let template = arrangement.template(m).unwrap();
            let spread =
                phase_spread(&template, ebox, 32, derive_seed(SEED, index as u64)).unwrap();
            assert!(
                spread.relative_spread() < 0.10,
                "{} {m:?}: phase spread {}",
                arrangement.label(),
                spread.relative_spread()
            );
        }
    }
    println!("acceptance 07 symmetry properties on all 25 table rows: PASS");
}

#[test]
fn criterion_08_averaging_exactness() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..100 {
        let spec = common::random_cascade(&mut rng, 4, 6);
        let nyquist = 2 * spec.harmonic_bound() as usize + 2;
        let fast = time_average_with_samples(&spec, nyquist);
        let dense = time_average_with_samples(&spec, 10_000);
        let diff = fast.max_abs_diff(&dense);
        assert!(diff <= 1e-12, "averaging mismatch {diff:e} for {spec:?}");
    }
    println!("acceptance 08 averaging exactness over 100 random cascades: PASS");
}

#[test]
fn criterion_09_singular_value_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for case in 0..1000 {
        let m = common::random_matrix(&mut rng);
        let got = m.singular_values();
        let want = common::power_iteration_sigmas(&m);
        for k in 0..3 {
            assert!(
                (got[k] - want[k]).abs() <= 1e-8,
                "case {case}: sigma{k} {} vs oracle {}",
                got[k],
                want[k]
            );
        }
        for _ in 0..1000 {
            let s = common::random_unit(&mut rng);
            let reached = (m * s).norm();
            assert!(
                reached <= got[0] + 1e-9,
                "case {case}: |M s| = {reached} exceeds sigma1 = {}",
                got[0]
            );
        }
    }
    println!("acceptance 09 singular-value oracle over 1000 matrices: PASS");
}

#[test]
fn criterion_10_uniform_chain() {
    for (m, expected) in [
        (vec![1], 1.0 / 3.0),
        (vec![1, 3], 1.0 / 9.0),
        (vec![1, 3, 9], 1.0 / 27.0),
    ] {
        let dop = uniform_chain_dop(&m).unwrap();
        assert!(
            (dop - expected).abs() <= 1e-9,
            "chain {m:?}: dop {dop} vs {expected}"
        );
    }
    let report = uniform_chain_report(&[1, 2]).unwrap();
    assert!(report.collision.is_some(), "collision in [1,2] not flagged");
    assert!(matches!(
        uniform_chain_dop(&[1, 2]),
        Err(Error::FrequencyCollision { .. })
    ));
    assert!(
        (report.dop_max - 1.0 / 9.0).abs() > 0.05 / 9.0,
        "colliding chain dop {} does not deviate from 1/9",
        report.dop_max
    );
    println!(
        "acceptance 10 uniform chain (colliding [1,2] at {:.4}): PASS",
        report.dop_max
    );
}
