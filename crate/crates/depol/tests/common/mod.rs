//! Shared test oracles, independent of the library's implementation
//! paths.

// each integration test target compiles this module and uses a subset
#![allow(dead_code)]

use std::f64::consts::TAU;

use depol::{CascadeSpec, Matrix3, PlateKind, PlateSpec, StokesVector};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Singular values via power iteration with deflation on M^T M. This is
/// the reference the Jacobi implementation is checked against, so it
/// works on plain arrays and never calls into the library's linear
/// algebra.
pub fn power_iteration_sigmas(m: &Matrix3) -> [f64; 3] {
    let e = m.entries();
    let mut a = [[0.0_f64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for row in e {
                a[i][j] += row[i] * row[j];
            }
        }
    }
    let mut sigmas = [0.0_f64; 3];
    for slot in &mut sigmas {
        let (lambda, v) = dominant_eigenpair(&a);
        *slot = lambda.max(0.0).sqrt();
        for i in 0..3 {
            for j in 0..3 {
                a[i][j] -= lambda * v[i] * v[j];
            }
        }
    }
    sigmas.sort_unstable_by(|x, y| y.partial_cmp(x).unwrap());
    sigmas
}

fn mat_vec(a: &[[f64; 3]; 3], v: &[f64; 3]) -> [f64; 3] {
    [
        a[0][0] * v[0] + a[0][1] * v[1] + a[0][2] * v[2],
        a[1][0] * v[0] + a[1][1] * v[1] + a[1][2] * v[2],
        a[2][0] * v[0] + a[2][1] * v[1] + a[2][2] * v[2],
    ]
}

fn dominant_eigenpair(a: &[[f64; 3]; 3]) -> (f64, [f64; 3]) {
    // deterministic start vector with no special alignment
    let mut v = [0.531_902_417_3_f64, 0.627_183_904_1, 0.714_906_315_7];
    let norm0 = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    for x in &mut v {
        *x /= norm0;
    }
    let mut lambda = 0.0_f64;
    for iter in 0..200_000 {
        let w = mat_vec(a, &v);
        let n = (w[0] * w[0] + w[1] * w[1] + w[2] * w[2]).sqrt();
        if n < 1e-280 {
            return (0.0, v);
        }
        v = [w[0] / n, w[1] / n, w[2] / n];
        let av = mat_vec(a, &v);
        let next = v[0] * av[0] + v[1] * av[1] + v[2] * av[2];
        if iter > 2 && (next - lambda).abs() <= 1e-15 * lambda.abs().max(1e-30) {
            return (next, v);
        }
        lambda = next;
    }
    (lambda, v)
}

pub fn random_matrix(rng: &mut ChaCha8Rng) -> Matrix3 {
    let mut entries = [[0.0; 3]; 3];
    for row in &mut entries {
        for v in row {
            *v = rng.gen_range(-1.0..1.0);
        }
    }
    Matrix3::new(entries)
}

pub fn random_unit(rng: &mut ChaCha8Rng) -> StokesVector {
    loop {
        let s = StokesVector::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        let n = s.norm();
        if n > 1e-3 && n <= 1.0 {
            return StokesVector::new(s.s1 / n, s.s2 / n, s.s3 / n);
        }
    }
}

pub fn random_cascade(rng: &mut ChaCha8Rng, max_plates: usize, max_m: i32) -> CascadeSpec {
    let plates = (0..rng.gen_range(1..=max_plates))
        .map(|_| {
            let kind = match rng.gen_range(0..3) {
                0 => PlateKind::Half,
                1 => PlateKind::Quarter,
                _ => PlateKind::Custom(rng.gen_range(0.0..TAU)),
            };
            let m = loop {
                let m = rng.gen_range(-max_m..=max_m);
                if m != 0 {
                    break m;
                }
            };
            PlateSpec {
                kind,
                xi: rng.gen_range(-0.3..0.3),
                m,
                zeta: rng.gen_range(0.0..TAU),
            }
        })
        .collect();
    CascadeSpec::new(plates).expect("valid random cascade")
}
