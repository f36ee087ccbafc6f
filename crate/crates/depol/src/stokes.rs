//! Normalized Stokes vectors and their transformation by 3x3 matrices.

use std::ops::Mul;

use crate::error::{Error, Result};
use crate::matrix::Matrix3;

/// Point on (or, for time averages, inside) the Poincaré sphere.
///
/// Fully polarized states have unit norm; time-averaged outputs may land
/// anywhere inside the sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StokesVector {
    pub s1: f64,
    pub s2: f64,
    pub s3: f64,
}

impl StokesVector {
    pub fn new(s1: f64, s2: f64, s3: f64) -> Self {
        StokesVector { s1, s2, s3 }
    }

    pub fn norm(&self) -> f64 {
        (self.s1 * self.s1 + self.s2 * self.s2 + self.s3 * self.s3).sqrt()
    }

    pub fn dot(&self, other: &StokesVector) -> f64 {
        self.s1 * other.s1 + self.s2 * other.s2 + self.s3 * other.s3
    }

    pub fn is_unit(&self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol
    }

    /// The six cardinal polarizations ±S1, ±S2, ±S3.
    pub fn cardinal_inputs() -> [(&'static str, StokesVector); 6] {
        [
            ("+S1", StokesVector::new(1.0, 0.0, 0.0)),
            ("-S1", StokesVector::new(-1.0, 0.0, 0.0)),
            ("+S2", StokesVector::new(0.0, 1.0, 0.0)),
            ("-S2", StokesVector::new(0.0, -1.0, 0.0)),
            ("+S3", StokesVector::new(0.0, 0.0, 1.0)),
            ("-S3", StokesVector::new(0.0, 0.0, -1.0)),
        ]
    }
}

impl Mul<StokesVector> for Matrix3 {
    type Output = StokesVector;

    fn mul(self, s: StokesVector) -> StokesVector {
        let e = self.entries();
        StokesVector::new(
            e[0][0] * s.s1 + e[0][1] * s.s2 + e[0][2] * s.s3,
            e[1][0] * s.s1 + e[1][1] * s.s2 + e[1][2] * s.s3,
            e[2][0] * s.s1 + e[2][1] * s.s2 + e[2][2] * s.s3,
        )
    }
}

/// Matrix-vector product `m * s`.
pub fn apply(m: &Matrix3, s: StokesVector) -> StokesVector {
    *m * s
}

/// Residual degree of polarization for one fully polarized input:
/// the norm of `mean_m * s_in`.
///
/// Rejects inputs whose norm deviates from 1 by more than 1e-9.
pub fn dop_for_input(mean_m: &Matrix3, s_in: StokesVector) -> Result<f64> {
    if !s_in.is_unit(1e-9) {
        return Err(Error::NonUnitStokes { norm: s_in.norm() });
    }
    Ok((*mean_m * s_in).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn identity_fixes_cardinal_input() {
        let s = apply(&Matrix3::identity(), StokesVector::new(1.0, 0.0, 0.0));
        assert_eq!(s, StokesVector::new(1.0, 0.0, 0.0));
    }

    #[test]
    fn dop_of_zero_matrix_is_zero() {
        for (_, s) in StokesVector::cardinal_inputs() {
            assert_eq!(dop_for_input(&Matrix3::ZERO, s).unwrap(), 0.0);
        }
    }

    #[test]
    fn retarders_rotate_cardinal_states_as_expected() {
        use crate::retarder::retarder_matrix;
        use std::f64::consts::PI;
        // quarter-wave at psi = 0 sends S2 to S3
        let s = apply(
            &retarder_matrix(PI / 2.0, 0.0),
            StokesVector::new(0.0, 1.0, 0.0),
        );
        assert!(s.s1.abs() <= 1e-15 && s.s2.abs() <= 1e-15);
        assert_abs_diff_eq!(s.s3, 1.0, epsilon = 1e-15);
        // half-wave at psi = 0 flips circular polarization
        let s = apply(&retarder_matrix(PI, 0.0), StokesVector::new(0.0, 0.0, 1.0));
        assert_abs_diff_eq!(s.s3, -1.0, epsilon = 1e-15);
    }

    #[test]
    fn dop_picks_out_the_live_axis() {
        let m = Matrix3::diagonal(0.0, 0.0, 0.01);
        let circular = StokesVector::new(0.0, 0.0, 1.0);
        let linear = StokesVector::new(1.0, 0.0, 0.0);
        assert_abs_diff_eq!(dop_for_input(&m, circular).unwrap(), 0.01, epsilon = 1e-15);
        assert_eq!(dop_for_input(&m, linear).unwrap(), 0.0);
    }

    #[test]
    fn dop_rejects_non_unit_input() {
        let err = dop_for_input(&Matrix3::identity(), StokesVector::new(0.5, 0.0, 0.0));
        assert!(matches!(
            err,
            Err(crate::error::Error::NonUnitStokes { .. })
        ));
    }
}
