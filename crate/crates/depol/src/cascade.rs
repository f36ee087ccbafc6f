//! Cascades of rotating waveplates and their exact time averages.
//!
//! Plate `i` is driven so that its eigenmode azimuth advances as
//! `psi_i(tau) = 2*pi*m_i*tau + zeta_i` over the normalized depolarization
//! interval `tau = t/T` in [0, 1). Light traverses plate 0 first, so the
//! cascade matrix multiplies the last plate leftmost.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::matrix::Matrix3;
use crate::retarder::retarder_matrix;
use crate::stokes::{dop_for_input, StokesVector};

/// Nominal plate type. `Custom` carries the nominal retardation in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PlateKind {
    Half,
    Quarter,
    Custom(f64),
}

impl PlateKind {
    pub fn nominal_retardation(&self) -> f64 {
        match self {
            PlateKind::Half => PI,
            PlateKind::Quarter => PI / 2.0,
            PlateKind::Custom(delta0) => *delta0,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            PlateKind::Half => "h",
            PlateKind::Quarter => "q",
            PlateKind::Custom(_) => "c",
        }
    }
}

/// One rotating waveplate: nominal kind, retardation error `xi`
/// (actual retardation = nominal + xi), integer relative drive
/// frequency `m` and start phase `zeta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlateSpec {
    pub kind: PlateKind,
    pub xi: f64,
    pub m: i32,
    pub zeta: f64,
}

impl PlateSpec {
    fn validate(&self, index: usize) -> Result<()> {
        if self.m == 0 {
            return Err(Error::ZeroFrequency { index });
        }
        if self.xi.abs() > 0.5 || self.xi.is_nan() {
            return Err(Error::XiOutOfRange { index, xi: self.xi });
        }
        if let PlateKind::Custom(delta0) = self.kind {
            if !delta0.is_finite() {
                return Err(Error::NonFiniteRetardation { index });
            }
        }
        Ok(())
    }
}

/// Ordered plate sequence. Index 0 is hit by the light first.
#[derive(Debug, Clone, PartialEq)]
pub struct CascadeSpec {
    plates: Vec<PlateSpec>,
}

impl CascadeSpec {
    pub fn new(plates: Vec<PlateSpec>) -> Result<Self> {
        if plates.is_empty() {
            return Err(Error::EmptyCascade);
        }
        for (index, plate) in plates.iter().enumerate() {
            plate.validate(index)?;
        }
        Ok(CascadeSpec { plates })
    }

    pub fn plates(&self) -> &[PlateSpec] {
        &self.plates
    }

    pub fn len(&self) -> usize {
        self.plates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.plates.is_empty()
    }

    /// Bound on the harmonic content of the cascade matrix entries:
    /// each plate contributes at most its `2 psi_i` harmonic, so no entry
    /// oscillates faster than `2 * sum(|m_i|)` cycles per interval.
    pub fn harmonic_bound(&self) -> u64 {
        self.plates
            .iter()
            .map(|p| 2 * p.m.unsigned_abs() as u64)
            .sum()
    }

    /// Same plates in reversed order (each keeps kind, xi, m, zeta).
    pub fn reversed(&self) -> CascadeSpec {
        let mut plates = self.plates.clone();
        plates.reverse();
        CascadeSpec { plates }
    }

    /// Same plates with every drive frequency negated.
    pub fn negated(&self) -> CascadeSpec {
        let plates = self
            .plates
            .iter()
            .map(|p| PlateSpec { m: -p.m, ..*p })
            .collect();
        CascadeSpec { plates }
    }
}

/// Cascade rotation matrix at normalized time `tau`.
pub fn cascade_matrix_at(spec: &CascadeSpec, tau: f64) -> Matrix3 {
    spec.plates.iter().fold(Matrix3::identity(), |acc, p| {
        let psi = TAU * p.m as f64 * tau + p.zeta;
        let delta = p.kind.nominal_retardation() + p.xi;
        retarder_matrix(delta, psi) * acc
    })
}

/// Exact time average of the cascade matrix over one depolarization
/// interval.
///
/// Every entry is a trigonometric polynomial with harmonics bounded by
/// `H = harmonic_bound()`. Uniform sampling at `N > H` points recovers the
/// DC component exactly (discrete orthogonality: a nonzero harmonic
/// `|h| <= H < N` never aliases onto DC). The default uses `N = 2H + 2`
/// for margin.
pub fn time_average(spec: &CascadeSpec) -> Matrix3 {
    let n = 2 * spec.harmonic_bound() + 2;
    time_average_with_samples(spec, n as usize)
}

/// Time average from `n` uniform samples. Exact whenever
/// `n > harmonic_bound()`; exposed for convergence checks.
pub fn time_average_with_samples(spec: &CascadeSpec, n: usize) -> Matrix3 {
    assert!(n > 0, "need at least one sample");
    // Kahan-compensated sums keep the entrywise roundoff near machine
    // epsilon even for dense (1e4-point) sampling.
    let mut sum = [[0.0_f64; 3]; 3];
    let mut comp = [[0.0_f64; 3]; 3];
    for k in 0..n {
        let m = cascade_matrix_at(spec, k as f64 / n as f64);
        let e = m.entries();
        for i in 0..3 {
            for j in 0..3 {
                let y = e[i][j] - comp[i][j];
                let t = sum[i][j] + y;
                comp[i][j] = (t - sum[i][j]) - y;
                sum[i][j] = t;
            }
        }
    }
    let inv = 1.0 / n as f64;
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = sum[i][j] * inv;
        }
    }
    Matrix3::new(out)
}

/// Worst-case residual DOP of the cascade: the largest singular value of
/// its time-averaged rotation matrix.
pub fn residual_dop_max(spec: &CascadeSpec) -> f64 {
    time_average(spec).singular_values()[0]
}

/// Residual DOP for one fully polarized input.
pub fn residual_dop_for_input(spec: &CascadeSpec, s_in: StokesVector) -> Result<f64> {
    dop_for_input(&time_average(spec), s_in)
}

/// Plate with its error and phase left open: what a design search varies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlateTemplate {
    pub kind: PlateKind,
    pub m: i32,
}

/// Cascade with per-plate `xi` and `zeta` left open.
#[derive(Debug, Clone, PartialEq)]
pub struct CascadeTemplate {
    plates: Vec<PlateTemplate>,
}

impl CascadeTemplate {
    pub fn new(plates: Vec<PlateTemplate>) -> Result<Self> {
        if plates.is_empty() {
            return Err(Error::EmptyCascade);
        }
        for (index, plate) in plates.iter().enumerate() {
            if plate.m == 0 {
                return Err(Error::ZeroFrequency { index });
            }
        }
        Ok(CascadeTemplate { plates })
    }

    pub fn from_kinds_and_m(kinds: &[PlateKind], m: &[i32]) -> Result<Self> {
        if kinds.len() != m.len() {
            return Err(Error::LengthMismatch {
                what: "drive frequencies",
                expected: kinds.len(),
                got: m.len(),
            });
        }
        CascadeTemplate::new(
            kinds
                .iter()
                .zip(m.iter())
                .map(|(&kind, &m)| PlateTemplate { kind, m })
                .collect(),
        )
    }

    pub fn plates(&self) -> &[PlateTemplate] {
        &self.plates
    }

    pub fn len(&self) -> usize {
        self.plates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.plates.is_empty()
    }

    pub fn instantiate(&self, xi: &[f64], zeta: &[f64]) -> Result<CascadeSpec> {
        if xi.len() != self.plates.len() {
            return Err(Error::LengthMismatch {
                what: "retardation errors",
                expected: self.plates.len(),
                got: xi.len(),
            });
        }
        if zeta.len() != self.plates.len() {
            return Err(Error::LengthMismatch {
                what: "start phases",
                expected: self.plates.len(),
                got: zeta.len(),
            });
        }
        CascadeSpec::new(
            self.plates
                .iter()
                .zip(xi.iter().zip(zeta.iter()))
                .map(|(p, (&xi, &zeta))| PlateSpec {
                    kind: p.kind,
                    xi,
                    m: p.m,
                    zeta,
                })
                .collect(),
        )
    }

    pub fn reversed(&self) -> CascadeTemplate {
        let mut plates = self.plates.clone();
        plates.reverse();
        CascadeTemplate { plates }
    }

    pub fn negated(&self) -> CascadeTemplate {
        CascadeTemplate {
            plates: self
                .plates
                .iter()
                .map(|p| PlateTemplate { m: -p.m, ..*p })
                .collect(),
        }
    }
}
