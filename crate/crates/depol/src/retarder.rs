//! Rotation matrices of linear retarders on the Poincaré sphere.
//!
//! A waveplate with retardation `delta` and eigenmode azimuth `psi` on the
//! equator rotates Stokes space by `delta` about the axis
//! `(cos psi, sin psi, 0)`. The entries mix `psi` and `2 psi` harmonics, so
//! everything here is 2π-periodic in both arguments.

use crate::matrix::Matrix3;

/// Linear retarder: retardation `delta` and equatorial eigenmode azimuth
/// `psi`, both in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Retarder {
    pub delta: f64,
    pub psi: f64,
}

impl Retarder {
    pub fn new(delta: f64, psi: f64) -> Self {
        Retarder { delta, psi }
    }

    pub fn matrix(&self) -> Matrix3 {
        retarder_matrix(self.delta, self.psi)
    }
}

/// Exact rotation by `delta` about the equatorial axis at azimuth `psi`.
pub fn retarder_matrix(delta: f64, psi: f64) -> Matrix3 {
    let (sd, cd) = delta.sin_cos();
    let (sp, cp) = psi.sin_cos();
    let (s2p, c2p) = (2.0 * psi).sin_cos();
    let half_sum = (1.0 + cd) / 2.0;
    let half_diff = (1.0 - cd) / 2.0;
    Matrix3::new([
        [half_sum + c2p * half_diff, s2p * half_diff, sp * sd],
        [s2p * half_diff, half_sum - c2p * half_diff, -cp * sd],
        [-sp * sd, cp * sd, cd],
    ])
}

/// First-order matrix of a nonideal quarterwave plate with retardation
/// `pi/2 + xi`. Valid for |xi| << 1; entrywise error is O(xi^2).
pub fn qwp_approx_matrix(xi: f64, psi: f64) -> Matrix3 {
    let (sp, cp) = psi.sin_cos();
    let (s2p, c2p) = (2.0 * psi).sin_cos();
    let lo = (1.0 - xi) / 2.0;
    let hi = (1.0 + xi) / 2.0;
    Matrix3::new([
        [lo + c2p * hi, s2p * hi, sp],
        [s2p * hi, lo - c2p * hi, -cp],
        [-sp, cp, -xi],
    ])
}

/// First-order matrix of a nonideal halfwave plate with retardation
/// `pi + xi`. Valid for |xi| << 1; entrywise error is O(xi^2).
pub fn hwp_approx_matrix(xi: f64, psi: f64) -> Matrix3 {
    let (sp, cp) = psi.sin_cos();
    let (s2p, c2p) = (2.0 * psi).sin_cos();
    Matrix3::new([
        [c2p, s2p, -xi * sp],
        [s2p, -c2p, xi * cp],
        [xi * sp, -xi * cp, -1.0],
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix3;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn assert_matrix_eq(a: &Matrix3, b: &Matrix3, tol: f64) {
        assert!(
            a.max_abs_diff(b) <= tol,
            "matrices differ by {:e} > {:e}\n{:?}\nvs\n{:?}",
            a.max_abs_diff(b),
            tol,
            a,
            b
        );
    }

    #[test]
    fn zero_retardation_is_identity() {
        for psi in [0.0, 0.3, -1.7, 4.0] {
            assert_matrix_eq(&retarder_matrix(0.0, psi), &Matrix3::identity(), 1e-15);
        }
    }

    #[test]
    fn ideal_hwp_at_zero_azimuth() {
        assert_matrix_eq(
            &retarder_matrix(PI, 0.0),
            &Matrix3::diagonal(1.0, -1.0, -1.0),
            1e-15,
        );
    }

    #[test]
    fn ideal_qwp_at_quarter_azimuth() {
        let expected = Matrix3::new([[0.0, 0.0, 1.0], [0.0, 1.0, 0.0], [-1.0, 0.0, 0.0]]);
        assert_matrix_eq(&retarder_matrix(PI / 2.0, PI / 2.0), &expected, 1e-15);
    }

    #[test]
    fn qwp_approx_agrees_with_exact_to_second_order() {
        // exact vs linearized at xi = 1e-3, tolerance 5e-7
        let xi = 1e-3;
        for k in 0..32 {
            let psi = 2.0 * PI * k as f64 / 32.0;
            let exact = retarder_matrix(PI / 2.0 + xi, psi);
            let approx = qwp_approx_matrix(xi, psi);
            assert!(exact.max_abs_diff(&approx) <= 5e-7);
        }
        // entry error stays below xi^2 up to |xi| = 0.1
        for &xi in &[0.02_f64, -0.05, 0.1, -0.1] {
            for k in 0..32 {
                let psi = 2.0 * PI * k as f64 / 32.0 + 0.123;
                let exact = retarder_matrix(PI / 2.0 + xi, psi);
                let approx = qwp_approx_matrix(xi, psi);
                assert!(exact.max_abs_diff(&approx) <= xi * xi);
            }
        }
    }

    #[test]
    fn hwp_approx_agrees_with_exact_to_second_order() {
        for &xi in &[1e-3_f64, 0.02, -0.05, 0.1, -0.1] {
            for k in 0..32 {
                let psi = 2.0 * PI * k as f64 / 32.0 + 0.321;
                let exact = retarder_matrix(PI + xi, psi);
                let approx = hwp_approx_matrix(xi, psi);
                assert!(exact.max_abs_diff(&approx) <= xi * xi);
            }
        }
    }

    #[test]
    fn qwp_approx_ideal_entries() {
        let expected = Matrix3::new([[1.0, 0.0, 0.0], [0.0, 0.0, -1.0], [0.0, 1.0, 0.0]]);
        assert_matrix_eq(&qwp_approx_matrix(0.0, 0.0), &expected, 1e-15);
        // bottom-right entry is exactly -xi
        assert_eq!(qwp_approx_matrix(0.01, PI / 4.0)[(2, 2)], -0.01);
    }

    #[test]
    fn hwp_approx_ideal_and_error_entries() {
        assert_matrix_eq(
            &hwp_approx_matrix(0.0, 0.0),
            &Matrix3::diagonal(1.0, -1.0, -1.0),
            1e-15,
        );
        let m = hwp_approx_matrix(0.02, PI / 2.0);
        assert_abs_diff_eq!(m[(0, 2)], -0.02, epsilon = 1e-15);
        assert_abs_diff_eq!(m[(2, 0)], 0.02, epsilon = 1e-15);
    }

    proptest! {
        #[test]
        fn retarder_is_special_orthogonal(delta in -10.0..10.0f64, psi in -10.0..10.0f64) {
            let r = retarder_matrix(delta, psi);
            let gram = r.transpose() * r;
            prop_assert!(gram.max_abs_diff(&Matrix3::identity()) <= 1e-12);
            prop_assert!((r.determinant() - 1.0).abs() <= 1e-12);
        }

        #[test]
        fn same_axis_rotations_compose(
            d1 in -6.0..6.0f64,
            d2 in -6.0..6.0f64,
            psi in -6.0..6.0f64,
        ) {
            let composed = retarder_matrix(d1, psi) * retarder_matrix(d2, psi);
            prop_assert!(composed.max_abs_diff(&retarder_matrix(d1 + d2, psi)) <= 1e-12);
        }

        #[test]
        fn transpose_negates_retardation(delta in -6.0..6.0f64, psi in -6.0..6.0f64) {
            let diff = retarder_matrix(delta, psi)
                .transpose()
                .max_abs_diff(&retarder_matrix(-delta, psi));
            prop_assert!(diff <= 1e-12);
        }
    }
}
